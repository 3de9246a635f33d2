use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use wedgekernel::ffelim;
use wedgekernel::{Int, IntMatrix};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| {
            let rows = v
                .chunks(c)
                .map(|ch| ch.iter().map(|&x| Int::from(x)).collect())
                .collect();
            IntMatrix::from_rows(rows)
        })
    })
}

fn square_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
            let rows = v
                .chunks(n)
                .map(|ch| ch.iter().map(|&x| Int::from(x)).collect())
                .collect();
            IntMatrix::from_rows(rows)
        })
    })
}

proptest! {
    // Bareiss elimination is an independent rank oracle for HNF-based rank.
    #[test]
    fn rank_agrees_with_bareiss(m in small_matrix()) {
        prop_assert_eq!(m.rank(), ffelim::rank(&m));
    }

    // the transform satisfies U M = H with |det U| = 1
    #[test]
    fn hnf_transform_is_unimodular(m in small_matrix()) {
        let (h, u) = m.hnf();
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(ffelim::is_unimodular(&u));
        // row echelon: pivots strictly right of the previous ones
        let mut last: i64 = -1;
        for i in 0..h.rows() {
            let piv = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
            if let Some(j) = piv {
                prop_assert!((j as i64) > last);
                prop_assert!(h[(i, j)].is_positive());
                last = j as i64;
            } else {
                // all later rows must be zero too
                for k in i..h.rows() {
                    for j in 0..h.cols() {
                        prop_assert!(h[(k, j)].is_zero());
                    }
                }
                break;
            }
        }
    }

    #[test]
    fn snf_diagonalizes_with_divisibility(m in small_matrix()) {
        let (d, u, v) = m.snf();
        prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
        prop_assert!(ffelim::is_unimodular(&u));
        prop_assert!(ffelim::is_unimodular(&v));
        let k = d.rows().min(d.cols());
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    prop_assert!(d[(i, j)].is_zero());
                }
            }
        }
        let mut prev: Option<Int> = None;
        for i in 0..k {
            let x = d[(i, i)].clone();
            prop_assert!(!x.is_negative());
            if let Some(p) = &prev {
                if p.is_zero() {
                    prop_assert!(x.is_zero());
                } else {
                    prop_assert!((&x % p).is_zero());
                }
            }
            prev = Some(x);
        }
    }

    // det of a square matrix: Bareiss against the SNF diagonal up to sign
    #[test]
    fn det_agrees_up_to_sign(m in square_matrix()) {
        let det = ffelim::det(&m);
        let (d, _, _) = m.snf();
        let mut prod = Int::one();
        for i in 0..d.rows() {
            prod *= &d[(i, i)];
        }
        prop_assert_eq!(det.abs(), prod.abs());
    }

    // M * kernel_basis = 0, rank(kernel) = cols - rank(M), and the kernel
    // lattice is saturated (invariant factors all 1)
    #[test]
    fn kernel_is_exact_and_saturated(m in small_matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.cols(), m.cols() - m.rank());
        let z = m.mul(&k);
        for i in 0..z.rows() {
            for j in 0..z.cols() {
                prop_assert!(z[(i, j)].is_zero());
            }
        }
        if k.cols() > 0 {
            prop_assert!(k.invariant_factors().iter().all(|f| f.is_one()));
        }
    }

    // invariant factors of M against SNF diagonal of M
    #[test]
    fn invariant_factors_match_snf(m in small_matrix()) {
        let (d, _, _) = m.snf();
        let from_snf: Vec<Int> = (0..d.rows().min(d.cols()))
            .map(|i| d[(i, i)].clone())
            .filter(|x| !x.is_zero())
            .collect();
        prop_assert_eq!(m.invariant_factors(), from_snf);
    }
}
