//! Bracket kernel on the exterior square and its certified generation by
//! decomposable commuting pairs.
//!
//! The span comparison never trusts a generator: every emitted pair is
//! re-verified to commute exactly at construction, and its wedge is checked
//! to be annihilated by the bracket map before entering the span matrix.

use std::collections::BTreeMap;
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::chevalley::{ChevalleyAlgebra, LieAlgebraData};
use crate::matrix::{Matrix, MatrixError};
use crate::ring::SLocalRing;
use crate::roots::RootSystem;
use crate::{Int, IntMatrix, Rat, RatMatrix};

#[derive(Debug, thiserror::Error)]
pub enum WedgeError {
    #[error("certificate pair does not commute ({provenance}: {params})")]
    NonCommuting { provenance: String, params: String },
    #[error("certificate wedge is outside the bracket kernel ({provenance}: {params})")]
    OutsideKernel { provenance: String, params: String },
    #[error("2 and 3 must be invertible in {0}")]
    NeedsTwoThree(SLocalRing),
    #[error("no dual element over {0} for the constraint {1}")]
    NoDualElement(SLocalRing, String),
    #[error("no admissible ordering of a decomposition pair: {0}")]
    NoOrdering(String),
    #[error("structure constants must be integral for the brute-force oracle")]
    NonIntegralData,
    #[error("brute-force budget exceeded: dim {0} at modulus {1}")]
    BudgetExceeded(usize, u64),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

pub fn wedge_dim(d: usize) -> usize {
    d * (d - 1) / 2
}

/// Lexicographic position of the pair `(i, j)`, `i < j`, among the basis
/// wedges of a `d`-dimensional algebra.
pub fn wedge_index(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < d);
    i * d - i * (i + 1) / 2 + (j - i - 1)
}

/// `x` wedge `y` in lexicographic pair coordinates.
pub fn wedge_of(x: &[Rat], y: &[Rat]) -> Vec<Rat> {
    let d = x.len();
    let mut out = vec![Rat::zero(); wedge_dim(d)];
    for i in 0..d {
        for j in i + 1..d {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if !c.is_zero() {
                out[wedge_index(d, i, j)] = c;
            }
        }
    }
    out
}

/// The bracket as a matrix `wedge^2 L -> L`: column `(i,j)` holds the
/// coordinates of `[b_i, b_j]`.
pub fn bracket_matrix(data: &LieAlgebraData) -> RatMatrix {
    let d = data.dim();
    let mut m = RatMatrix::zero(d, wedge_dim(d));
    for i in 0..d {
        for j in i + 1..d {
            let col = wedge_index(d, i, j);
            for (k, c) in data.bracket_basis(i, j) {
                m[(k, col)] = c;
            }
        }
    }
    m
}

/// Integer bracket matrix after clearing one global denominator; the kernel
/// lattice is unchanged by the global scaling.
pub fn bracket_matrix_int(data: &LieAlgebraData) -> IntMatrix {
    let m = bracket_matrix(data);
    let mut l = Int::one();
    for (_, _, _, c) in data.constants() {
        l = l.lcm(c.denom());
    }
    let lf = Rat::from_integer(l);
    let mut out = IntMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let s = &m[(i, j)] * &lf;
            debug_assert!(s.denom().is_one());
            out[(i, j)] = s.numer().clone();
        }
    }
    out
}

/// Saturated integral basis of the bracket kernel, as columns.
pub fn kernel_basis(data: &LieAlgebraData) -> IntMatrix {
    bracket_matrix_int(data).kernel_basis()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Fact1Cartan,
    Fact2NonRoot,
    Fact4KernelOfAlpha,
    Cong1CaseI,
    Cong1CaseII,
    Cong1CaseIII,
    Cong2,
    NilpMixedPair,
    NilpSameSign,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Provenance::Fact1Cartan => "fact1-cartan",
            Provenance::Fact2NonRoot => "fact2-nonroot",
            Provenance::Fact4KernelOfAlpha => "fact4-ker-alpha",
            Provenance::Cong1CaseI => "cong1-case-I",
            Provenance::Cong1CaseII => "cong1-case-II",
            Provenance::Cong1CaseIII => "cong1-case-III",
            Provenance::Cong2 => "cong2",
            Provenance::NilpMixedPair => "nilp-mixed",
            Provenance::NilpSameSign => "nilp-same-sign",
        };
        f.write_str(s)
    }
}

/// A decomposable commuting pair with its wedge; construction verifies the
/// commutation exactly and never emits an unverified certificate.
#[derive(Debug, Clone)]
pub struct GeneratorCertificate {
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
    pub wedge: Vec<Rat>,
    pub provenance: Provenance,
    pub params: String,
}

impl GeneratorCertificate {
    pub fn new(
        data: &LieAlgebraData,
        a: Vec<Rat>,
        b: Vec<Rat>,
        provenance: Provenance,
        params: String,
    ) -> Result<Self, WedgeError> {
        let br = data.bracket_vectors(&a, &b);
        if br.iter().any(|q| !q.is_zero()) {
            return Err(WedgeError::NonCommuting {
                provenance: provenance.to_string(),
                params,
            });
        }
        let wedge = wedge_of(&a, &b);
        Ok(GeneratorCertificate { a, b, wedge, provenance, params })
    }
}

fn unit_vec(d: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); d];
    v[i] = Rat::one();
    v
}

fn root_label(rs: &RootSystem, a: usize) -> String {
    let v: Vec<String> = rs.root(a).iter().map(|x| x.to_string()).collect();
    format!("({})", v.join(","))
}

/// Cartan element with prescribed root pairings, as full algebra
/// coordinates of the Chevalley basis.
fn dual_cartan_vector(
    g: &ChevalleyAlgebra,
    constraints: &[(usize, Rat)],
    ring: &SLocalRing,
) -> Result<Vec<Rat>, WedgeError> {
    let x = g
        .rs
        .dual_element(constraints, ring)
        .expect("valid constraint set")
        .ok_or_else(|| {
            WedgeError::NoDualElement(ring.clone(), format!("{constraints:?}"))
        })?;
    // coweight coordinates of sum x_j H_{alpha_j}
    let qb = g.rs.coroot_basis().to_rational();
    let mut w = qb.mul_vec(&x);
    w.resize(g.cartan_dim, Rat::zero());
    // lattice coordinates
    let lb = g.lattice_basis.to_rational();
    let target = Matrix::from_cols(vec![w]);
    let y = RatMatrix::solve_columns(&lb, &target).expect("lattice basis nonsingular");
    Ok(g.cartan_vector(&(0..g.cartan_dim).map(|i| y[(i, 0)].clone()).collect::<Vec<_>>()))
}

/// The generator families of the reductive case.
pub fn generators_reductive(
    g: &ChevalleyAlgebra,
    ring: &SLocalRing,
) -> Result<Vec<GeneratorCertificate>, WedgeError> {
    if !ring.has_two_and_three() {
        return Err(WedgeError::NeedsTwoThree(ring.clone()));
    }
    let rs = &g.rs;
    let d = g.dim();
    let c = g.cartan_dim;
    let data = &g.data;
    let mut out = Vec::new();

    // (1) Cartan pairs
    for i in 0..c {
        for j in i + 1..c {
            out.push(GeneratorCertificate::new(
                data,
                unit_vec(d, i),
                unit_vec(d, j),
                Provenance::Fact1Cartan,
                format!("h{} ^ h{}", i + 1, j + 1),
            )?);
        }
    }

    // (2) non-composable root pairs
    for a in 0..rs.num_roots() {
        for b in a + 1..rs.num_roots() {
            if b == rs.neg(a) || rs.sum_index(a, b).is_some() {
                continue;
            }
            out.push(GeneratorCertificate::new(
                data,
                unit_vec(d, g.x_index(a)),
                unit_vec(d, g.x_index(b)),
                Provenance::Fact2NonRoot,
                format!("X{} ^ X{}", root_label(rs, a), root_label(rs, b)),
            )?);
        }
    }

    // (3) kernel of alpha inside the Cartan lattice
    for a in 0..rs.num_roots() {
        let row: Vec<Int> = (0..c).map(|i| g.root_on_basis(a, i)).collect();
        let m = Matrix::from_rows(vec![row]);
        let ker = m.kernel_basis();
        for k in 0..ker.cols() {
            let h: Vec<Rat> = (0..c)
                .map(|i| Rat::from_integer(ker[(i, k)].clone()))
                .collect();
            out.push(GeneratorCertificate::new(
                data,
                g.cartan_vector(&h),
                unit_vec(d, g.x_index(a)),
                Provenance::Fact4KernelOfAlpha,
                format!("ker{}[{}]", root_label(rs, a), k),
            )?);
        }
    }

    // (4) Lemma congruence1 pairs, one per unordered composable pair
    for a in 0..rs.num_roots() {
        for b in a + 1..rs.num_roots() {
            let Some(gamma) = rs.sum_index(a, b) else { continue };
            if b == rs.neg(a) {
                continue;
            }
            let _ = gamma;
            out.push(cong1_pair(g, ring, a, b)?);
        }
    }

    // (5) Lemma congruence2 pairs, one per composable unordered pair of
    // positive roots
    for a in rs.positive_indices() {
        for b in rs.positive_indices() {
            if a < b && rs.sum_index(a, b).is_some() {
                out.push(cong2_pair(g, ring, a, b)?);
            }
        }
    }

    Ok(out)
}

/// The `(X_a + h) ^ (X_b + X_g + r' X_{g'} + r'' X_{g''})` pair.
fn cong1_pair(
    g: &ChevalleyAlgebra,
    ring: &SLocalRing,
    a: usize,
    b: usize,
) -> Result<GeneratorCertificate, WedgeError> {
    let rs = &g.rs;
    let d = g.dim();
    let gamma = rs.sum_index(a, b).expect("composable pair");
    let n_ab = Rat::from_integer(Int::from(g.n_constant(a, b)));
    let h = dual_cartan_vector(g, &[(a, -n_ab.clone()), (b, Rat::zero())], ring)?;

    let mut av = h;
    av[g.x_index(a)] += Rat::one();
    let mut bv = unit_vec(d, g.x_index(b));
    bv[g.x_index(gamma)] = Rat::one();

    let two_a_b: Vec<i64> = rs
        .root(a)
        .iter()
        .zip(rs.root(b))
        .map(|(x, y)| 2 * x + y)
        .collect();
    let three_a_b: Vec<i64> = rs
        .root(a)
        .iter()
        .zip(rs.root(b))
        .map(|(x, y)| 3 * x + y)
        .collect();
    let provenance = match (rs.index_of(&two_a_b), rs.index_of(&three_a_b)) {
        (None, _) => Provenance::Cong1CaseI,
        (Some(gp), None) => {
            let n_ag = Rat::from_integer(Int::from(g.n_constant(a, gamma)));
            let rp = n_ag / (Rat::from_integer(Int::from(2)) * &n_ab);
            bv[g.x_index(gp)] = rp;
            Provenance::Cong1CaseII
        }
        (Some(gp), Some(gpp)) => {
            let n_ag = Rat::from_integer(Int::from(g.n_constant(a, gamma)));
            let n_agp = Rat::from_integer(Int::from(g.n_constant(a, gp)));
            let rp = n_ag / (Rat::from_integer(Int::from(2)) * &n_ab);
            let rpp = &rp * n_agp / (Rat::from_integer(Int::from(3)) * &n_ab);
            bv[g.x_index(gp)] = rp;
            bv[g.x_index(gpp)] = rpp;
            Provenance::Cong1CaseIII
        }
    };
    GeneratorCertificate::new(
        &g.data,
        av,
        bv,
        provenance,
        format!("a={} b={}", root_label(rs, a), root_label(rs, b)),
    )
}

/// The long `(A, B)` pair reducing `X_g ^ X_{-g}` to the simple-root wedges.
fn cong2_pair(
    g: &ChevalleyAlgebra,
    ring: &SLocalRing,
    a: usize,
    b: usize,
) -> Result<GeneratorCertificate, WedgeError> {
    let rs = &g.rs;
    let d = g.dim();
    let gamma = rs.sum_index(a, b).expect("composable pair");
    let n = |x: usize, y: usize| Rat::from_integer(Int::from(g.n_constant(x, y)));
    let fr = |k: i64| Rat::from_integer(Int::from(k));

    // subscript combination x - k*y as a root index, if a root
    let comb = |x: usize, y: usize, k: i64| -> Option<usize> {
        let v: Vec<i64> = rs
            .root(x)
            .iter()
            .zip(rs.root(y))
            .map(|(p, q)| p - k * q)
            .collect();
        rs.index_of(&v)
    };
    // composite constants N_{x,-k*y} with the zero convention
    let n_comp = |x: usize, y: usize, k: i64| -> Rat {
        let mut acc = Rat::one();
        let mut cur = x;
        for _ in 0..k {
            let Some(nx) = rs.sum_index(cur, rs.neg(y)) else {
                return Rat::zero();
            };
            acc = acc * n(cur, rs.neg(y));
            cur = nx;
        }
        acc
    };

    let t = -n(rs.neg(a), gamma) * n(rs.neg(b), gamma) / n(a, b);
    let h = dual_cartan_vector(g, &[(a, t.clone()), (b, -t.clone())], ring)?;

    let mut av = vec![Rat::zero(); d];
    av[g.x_index(gamma)] = Rat::one();
    av[g.x_index(a)] = Rat::one();
    av[g.x_index(b)] = Rat::one();
    let mut add_tail = |x: usize, y: usize| {
        // + N_{x,-y}/(2 N_{gamma,-y}) X_{x-y}
        // + N_{x,-2y}/(6 N_{gamma,-y}^2) X_{x-2y}
        // + N_{x,-3y}/(24 N_{gamma,-y}^3) X_{x-3y}
        let ng = n(gamma, rs.neg(y));
        for (k, denom) in [(1i64, 2i64), (2, 6), (3, 24)] {
            if let Some(idx) = comb(x, y, k) {
                let coeff = n_comp(x, y, k)
                    / (fr(denom) * (0..k).map(|_| ng.clone()).product::<Rat>());
                if !coeff.is_zero() {
                    av[g.x_index(idx)] = coeff;
                }
            }
        }
    };
    add_tail(a, b);
    add_tail(b, a);
    // coefficient of h in A
    let mixed = if comb(b, a, 1).is_some() {
        n(b, rs.neg(a)) * n(comb(b, a, 1).unwrap(), rs.neg(b))
    } else {
        Rat::zero()
    };
    let ch = n(a, b) * n(a, b) / (n(rs.neg(a), gamma) * n(rs.neg(b), gamma))
        * (Rat::one() - mixed / (fr(2) * n(a, b) * n(rs.neg(b), gamma)));
    for (i, x) in h.iter().enumerate() {
        if !x.is_zero() {
            av[i] = &av[i] + &ch * x;
        }
    }

    let mut bv = h;
    bv[g.x_index(rs.neg(gamma))] = Rat::one();
    bv[g.x_index(rs.neg(a))] = n(rs.neg(b), gamma) / n(b, a);
    bv[g.x_index(rs.neg(b))] = n(rs.neg(a), gamma) / n(a, b);

    GeneratorCertificate::new(
        &g.data,
        av,
        bv,
        Provenance::Cong2,
        format!("a={} b={}", root_label(rs, a), root_label(rs, b)),
    )
}

/// Generator families of the nilpotent case (positive-root subalgebra).
pub fn generators_nilpotent(
    n_data: &LieAlgebraData,
    rs: &RootSystem,
    g: &ChevalleyAlgebra,
) -> Result<Vec<GeneratorCertificate>, WedgeError> {
    let np = rs.num_positive();
    assert_eq!(n_data.dim(), np);
    let mut out = Vec::new();

    // fact-2 pairs inside the positive system
    for a in 0..np {
        for b in a + 1..np {
            if rs.sum_index(a, b).is_none() {
                out.push(GeneratorCertificate::new(
                    n_data,
                    unit_vec(np, a),
                    unit_vec(np, b),
                    Provenance::Fact2NonRoot,
                    format!("X{} ^ X{}", root_label(rs, a), root_label(rs, b)),
                )?);
            }
        }
    }

    // per multiply-decomposable positive root: the three-pair families
    for gamma in 0..np {
        let mut decomps: Vec<(usize, usize)> = Vec::new();
        for a in 0..np {
            for b in a..np {
                if rs.sum_index(a, b) == Some(gamma) {
                    decomps.push((a, b));
                }
            }
        }
        if decomps.len() < 2 {
            continue;
        }
        let (a0, b0) = decomps[0];
        let n0 = Rat::from_integer(Int::from(g.n_constant(a0, b0)));
        for &(x, y) in decomps.iter().skip(1) {
            // order (alpha, beta) so that a0 + alpha and b0 + beta are
            // non-roots
            let ok = |al: usize, be: usize| {
                rs.sum_index(a0, al).is_none() && rs.sum_index(b0, be).is_none()
            };
            let (al, be) = if ok(x, y) {
                (x, y)
            } else if ok(y, x) {
                (y, x)
            } else {
                return Err(WedgeError::NoOrdering(format!(
                    "gamma={} pair=({}, {})",
                    root_label(rs, gamma),
                    root_label(rs, x),
                    root_label(rs, y)
                )));
            };
            let nab = Rat::from_integer(Int::from(g.n_constant(al, be)));
            let mut av = unit_vec(np, b0);
            av[al] = Rat::one() / &nab;
            let mut bv = unit_vec(np, be);
            bv[a0] = Rat::one() / &n0;
            let label = format!(
                "gamma={} alt=({},{})",
                root_label(rs, gamma),
                root_label(rs, al),
                root_label(rs, be)
            );
            out.push(GeneratorCertificate::new(
                n_data,
                av,
                bv,
                Provenance::NilpMixedPair,
                label.clone(),
            )?);
            out.push(GeneratorCertificate::new(
                n_data,
                unit_vec(np, al),
                unit_vec(np, a0),
                Provenance::NilpSameSign,
                format!("{label} same-sign-a"),
            )?);
            out.push(GeneratorCertificate::new(
                n_data,
                unit_vec(np, be),
                unit_vec(np, b0),
                Provenance::NilpSameSign,
                format!("{label} same-sign-b"),
            )?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    ProperSubmodule { rank_deficit: usize, offending_factors: Vec<Int> },
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub ring: SLocalRing,
    pub kernel_rank: usize,
    pub span_rank: usize,
    pub relative_factors: Vec<Int>,
    pub verdict: Verdict,
    pub census: BTreeMap<String, usize>,
    pub millis: u128,
}

impl VerificationReport {
    pub fn is_equal(&self) -> bool {
        self.verdict == Verdict::Equal
    }
}

/// Decide whether the certificate span equals the bracket kernel over `R`.
///
/// `kernel` must be the saturated kernel basis of the bracket matrix of
/// `data` (as produced by [`kernel_basis`]); saturation makes the relative
/// invariant factors of the certificate span equal to its plain invariant
/// factors, which avoids the coordinate solve.
pub fn certify(
    data: &LieAlgebraData,
    kernel: &IntMatrix,
    certs: &[GeneratorCertificate],
    ring: &SLocalRing,
) -> Result<VerificationReport, WedgeError> {
    let start = Instant::now();
    let d = data.dim();
    assert_eq!(kernel.rows(), wedge_dim(d));

    // soundness gate: re-verify commutation and kernel membership
    let mut census: BTreeMap<String, usize> = BTreeMap::new();
    for cert in certs {
        let br = data.bracket_vectors(&cert.a, &cert.b);
        if br.iter().any(|q| !q.is_zero()) {
            return Err(WedgeError::NonCommuting {
                provenance: cert.provenance.to_string(),
                params: cert.params.clone(),
            });
        }
        // [,](wedge) = sum_{i<j} w_ij [b_i, b_j] must vanish
        let mut img = vec![Rat::zero(); d];
        for i in 0..d {
            for j in i + 1..d {
                let w = &cert.wedge[wedge_index(d, i, j)];
                if w.is_zero() {
                    continue;
                }
                for (k, c) in data.bracket_basis(i, j) {
                    img[k] += w * &c;
                }
            }
        }
        if img.iter().any(|q| !q.is_zero()) {
            return Err(WedgeError::OutsideKernel {
                provenance: cert.provenance.to_string(),
                params: cert.params.clone(),
            });
        }
        *census.entry(cert.provenance.to_string()).or_insert(0) += 1;
    }

    // clear denominators per certificate (unit scaling over R does not move
    // the R-span; over smaller rings the factors report the scaling
    // honestly), dropping exact duplicates
    let mut cols: Vec<Vec<Int>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for cert in certs {
        let mut den = Int::one();
        for q in &cert.wedge {
            den = den.lcm(q.denom());
        }
        let df = Rat::from_integer(den);
        let col: Vec<Int> = cert
            .wedge
            .iter()
            .map(|q| {
                let s = q * &df;
                debug_assert!(s.denom().is_one());
                s.numer().clone()
            })
            .collect();
        if col.iter().all(|x| x.is_zero()) {
            continue;
        }
        if seen.insert(col.clone()) {
            cols.push(col);
        }
    }
    let span = if cols.is_empty() {
        IntMatrix::zero(wedge_dim(d), 0)
    } else {
        Matrix::from_cols(cols)
    };

    let kernel_rank = kernel.cols();
    let mut factors = span.invariant_factors();
    let span_rank = factors.len();
    debug_assert!(span_rank <= kernel_rank, "span escapes the kernel");
    while factors.len() < kernel_rank {
        factors.push(Int::zero());
    }
    let offending: Vec<Int> = factors
        .iter()
        .filter(|f| f.is_zero() || !ring.is_unit(f))
        .cloned()
        .collect();
    let verdict = if offending.is_empty() {
        Verdict::Equal
    } else {
        Verdict::ProperSubmodule {
            rank_deficit: kernel_rank - span_rank,
            offending_factors: offending,
        }
    };
    Ok(VerificationReport {
        ring: ring.clone(),
        kernel_rank,
        span_rank,
        relative_factors: factors,
        verdict,
        census,
        millis: start.elapsed().as_millis(),
    })
}

/// Exhaustive span of commuting wedges modulo a small prime power;
/// independent oracle for the certificate machinery.
pub fn brute_force_span(data: &LieAlgebraData, q: u64) -> Result<IntMatrix, WedgeError> {
    if !data.is_integral() {
        return Err(WedgeError::NonIntegralData);
    }
    let d = data.dim();
    if (d as f64) * (q as f64).log2() > 13.5 {
        return Err(WedgeError::BudgetExceeded(d, q));
    }
    let qi = Int::from(q);
    let total = (q as u128).pow(d as u32);
    let decode = |mut idx: u128| -> Vec<Rat> {
        let mut v = Vec::with_capacity(d);
        for _ in 0..d {
            v.push(Rat::from_integer(Int::from((idx % q as u128) as u64)));
            idx /= q as u128;
        }
        v
    };
    let wd = wedge_dim(d);
    let mut basis = IntMatrix::zero(wd, 0);
    for xi in 0..total {
        let x = decode(xi);
        for yi in xi + 1..total {
            let y = decode(yi);
            let br = data.bracket_vectors(&x, &y);
            if br
                .iter()
                .any(|v| !(v.numer() % &qi).is_zero())
            {
                continue;
            }
            let w: Vec<Int> = wedge_of(&x, &y)
                .into_iter()
                .map(|v| v.numer().mod_floor(&qi))
                .collect();
            if w.iter().all(|v| v.is_zero()) {
                continue;
            }
            if !span_contains_mod(&basis, &w, &qi) {
                let mut cols: Vec<Vec<Int>> =
                    (0..basis.cols()).map(|j| basis.column(j)).collect();
                cols.push(w);
                basis = canonical_span_mod(Matrix::from_cols(cols), &qi);
            }
        }
    }
    Ok(basis)
}

/// Canonical basis (columns) of the span of `m`'s columns modulo `q`.
pub fn canonical_span_mod(m: IntMatrix, q: &Int) -> IntMatrix {
    let rows = m.rows();
    let mut cols: Vec<Vec<Int>> = (0..m.cols()).map(|j| m.column(j)).collect();
    for i in 0..rows {
        let mut v = vec![Int::zero(); rows];
        v[i] = q.clone();
        cols.push(v);
    }
    let h = Matrix::from_cols(cols).transpose().hnf_no_transform();
    let mut out: Vec<Vec<Int>> = Vec::new();
    for i in 0..h.rows() {
        let mut row = h.row(i);
        for x in row.iter_mut() {
            *x = x.mod_floor(q);
        }
        if row.iter().any(|x| !x.is_zero()) {
            out.push(row);
        }
    }
    if out.is_empty() {
        IntMatrix::zero(rows, 0)
    } else {
        Matrix::from_cols(out)
    }
}

fn span_contains_mod(basis: &IntMatrix, v: &[Int], q: &Int) -> bool {
    if basis.cols() == 0 {
        return v.iter().all(|x| x.is_zero());
    }
    let mut cols: Vec<Vec<Int>> = (0..basis.cols()).map(|j| basis.column(j)).collect();
    let n = basis.rows();
    for i in 0..n {
        let mut e = vec![Int::zero(); n];
        e[i] = q.clone();
        cols.push(e);
    }
    Matrix::from_cols(cols).contains_in_column_span(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{build_chevalley, nilradical, LatticeChoice};
    use num_traits::Signed;
    use crate::roots::RootSystemType;

    fn chev(s: &str, lat: LatticeChoice) -> ChevalleyAlgebra {
        let t = RootSystemType::parse(s).unwrap();
        let rs = RootSystem::build(&t).unwrap();
        build_chevalley(&rs, &lat).unwrap()
    }

    fn verify_reductive(s: &str, lat: LatticeChoice, ring: &SLocalRing) -> VerificationReport {
        let g = chev(s, lat);
        let kernel = kernel_basis(&g.data);
        let certs = generators_reductive(&g, ring).unwrap();
        certify(&g.data, &kernel, &certs, ring).unwrap()
    }

    #[test]
    fn sl2_bracket_matrix() {
        let g = chev("A1", LatticeChoice::Coroot);
        let m = bracket_matrix_int(&g.data);
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(m.rank(), 3);
        assert_eq!(crate::ffelim::det(&m).abs(), Int::from(4));
        assert_eq!(kernel_basis(&g.data).cols(), 0);
    }

    #[test]
    fn abelian_bracket_matrix_zero() {
        let a = LieAlgebraData::abelian("ab", 2);
        let m = bracket_matrix_int(&a);
        assert_eq!((m.rows(), m.cols()), (2, 1));
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn a2_bracket_rank() {
        let g = chev("A2", LatticeChoice::Coroot);
        let m = bracket_matrix_int(&g.data);
        assert_eq!((m.rows(), m.cols()), (8, 28));
        assert_eq!(m.rank(), 8);
        assert_eq!(kernel_basis(&g.data).cols(), 20);
    }

    #[test]
    fn sl2_verdict_trivially_equal() {
        let rep = verify_reductive("A1", LatticeChoice::Coroot, &SLocalRing::z_one_sixth());
        assert_eq!(rep.kernel_rank, 0);
        assert!(rep.is_equal());
    }

    #[test]
    fn a2_theorem_instance() {
        let r = SLocalRing::z_one_sixth();
        let rep = verify_reductive("A2", LatticeChoice::Coroot, &r);
        assert_eq!(rep.kernel_rank, 20);
        assert!(rep.is_equal(), "{:?}", rep.relative_factors);
        for f in &rep.relative_factors {
            assert!(r.is_unit(f));
        }
    }

    #[test]
    fn a2_census() {
        let g = chev("A2", LatticeChoice::Coroot);
        let r = SLocalRing::z_one_sixth();
        let certs = generators_reductive(&g, &r).unwrap();
        let count = |p: Provenance| certs.iter().filter(|c| c.provenance == p).count();
        // 18 non-composable unordered root pairs in A2 minus opposite pairs
        assert_eq!(count(Provenance::Fact2NonRoot), 6);
        assert_eq!(
            count(Provenance::Cong1CaseI) + count(Provenance::Cong1CaseII),
            6
        );
        assert_eq!(count(Provenance::Cong1CaseIII), 0);
        assert_eq!(count(Provenance::Cong2), 1);
        assert_eq!(count(Provenance::Fact1Cartan), 1);
    }

    #[test]
    fn g2_has_case_three() {
        let g = chev("G2", LatticeChoice::Coroot);
        let r = SLocalRing::z_one_sixth();
        let certs = generators_reductive(&g, &r).unwrap();
        assert!(certs.iter().any(|c| c.provenance == Provenance::Cong1CaseIII));
    }

    #[test]
    fn b2_and_g2_theorem_instances() {
        let r = SLocalRing::z_one_sixth();
        for s in ["B2", "G2"] {
            for lat in [LatticeChoice::Coroot, LatticeChoice::Coweight] {
                let rep = verify_reductive(s, lat, &r);
                assert!(rep.is_equal(), "{s}: {:?}", rep.relative_factors);
            }
        }
    }

    #[test]
    fn certificate_denominators_are_s_units() {
        let g = chev("G2", LatticeChoice::Coroot);
        let r = SLocalRing::z_one_sixth();
        for cert in generators_reductive(&g, &r).unwrap() {
            for q in cert.a.iter().chain(&cert.b) {
                assert!(r.is_unit(q.denom()), "{:?}", q);
            }
        }
    }

    #[test]
    fn inclusion_in_kernel() {
        // certificate wedges are annihilated by the bracket matrix exactly
        let g = chev("B2", LatticeChoice::Coroot);
        let r = SLocalRing::z_one_sixth();
        let m = bracket_matrix(&g.data);
        for cert in generators_reductive(&g, &r).unwrap() {
            let img = m.mul_vec(&cert.wedge);
            assert!(img.iter().all(|q| q.is_zero()));
        }
    }

    #[test]
    fn kernel_rank_formula() {
        for s in ["A1", "A2", "B2"] {
            let g = chev(s, LatticeChoice::Coroot);
            let d = g.dim();
            assert_eq!(kernel_basis(&g.data).cols(), wedge_dim(d) - d, "{s}");
        }
    }

    #[test]
    fn certify_invariances() {
        let g = chev("A2", LatticeChoice::Coroot);
        let r = SLocalRing::z_one_sixth();
        let kernel = kernel_basis(&g.data);
        let mut certs = generators_reductive(&g, &r).unwrap();
        let base = certify(&g.data, &kernel, &certs, &r).unwrap();
        certs.reverse();
        // scale one certificate by the unit -2/3
        let u = Rat::new(Int::from(-2), Int::from(3));
        for q in certs[0].wedge.iter_mut() {
            *q = &*q * &u;
        }
        let permuted = certify(&g.data, &kernel, &certs, &r).unwrap();
        assert_eq!(base.verdict, permuted.verdict);
        assert_eq!(base.kernel_rank, permuted.kernel_rank);
        assert_eq!(base.span_rank, permuted.span_rank);
    }

    #[test]
    fn nilpotent_a2_over_z() {
        let g = chev("A2", LatticeChoice::Coroot);
        let n = nilradical(&g);
        let z = SLocalRing::integers();
        let kernel = kernel_basis(&n);
        let certs = generators_nilpotent(&n, &g.rs, &g).unwrap();
        assert_eq!(certs.len(), 2);
        let rep = certify(&n, &kernel, &certs, &z).unwrap();
        assert!(rep.is_equal(), "{:?}", rep.relative_factors);
        assert!(rep.relative_factors.iter().all(|f| f.is_one()));
    }

    #[test]
    fn nilpotent_a3_over_z() {
        let g = chev("A3", LatticeChoice::Coroot);
        let n = nilradical(&g);
        let z = SLocalRing::integers();
        let kernel = kernel_basis(&n);
        let certs = generators_nilpotent(&n, &g.rs, &g).unwrap();
        let rep = certify(&n, &kernel, &certs, &z).unwrap();
        assert!(rep.is_equal(), "{:?}", rep.relative_factors);
        assert!(rep.relative_factors.iter().all(|f| f.is_one()));
    }

    #[test]
    fn nilpotent_b3_over_z_one_sixth() {
        let g = chev("B3", LatticeChoice::Coroot);
        let n = nilradical(&g);
        let r = SLocalRing::z_one_sixth();
        let kernel = kernel_basis(&n);
        let certs = generators_nilpotent(&n, &g.rs, &g).unwrap();
        // the 4-decomposition family of the highest short root shows up
        let fams = certs
            .iter()
            .filter(|c| c.provenance == Provenance::NilpMixedPair)
            .count();
        assert!(fams >= 1);
        let rep = certify(&n, &kernel, &certs, &r).unwrap();
        assert!(rep.is_equal(), "{:?}", rep.relative_factors);
    }

    #[test]
    fn brute_force_oracles() {
        // rank-2 abelian mod 3: everything commutes, full wedge square
        let ab = LieAlgebraData::abelian("ab", 2);
        let s = brute_force_span(&ab, 3).unwrap();
        assert_eq!(s.cols(), 1);

        // Heisenberg mod 3 agrees with the certificate span mod 3
        let g = chev("A2", LatticeChoice::Coroot);
        let n = nilradical(&g);
        let bf = brute_force_span(&n, 3).unwrap();
        let certs = generators_nilpotent(&n, &g.rs, &g).unwrap();
        let cols: Vec<Vec<Int>> = certs
            .iter()
            .map(|c| c.wedge.iter().map(|q| q.numer().clone()).collect())
            .collect();
        let cert_span =
            canonical_span_mod(Matrix::from_cols(cols), &Int::from(3));
        assert_eq!(bf.cols(), 2);
        assert_eq!(bf, cert_span);

        // budget guard
        assert!(brute_force_span(&LieAlgebraData::abelian("big", 20), 3).is_err());
    }

    #[test]
    fn sl2_mod5_commuting_span_misses_kernel() {
        let g = chev("A1", LatticeChoice::Coroot);
        // the bracket map is bijective mod 5 (det = ±4), so every commuting
        // wedge already vanishes mod 5
        let bf = brute_force_span(&g.data, 5).unwrap();
        assert_eq!(bf.cols(), 0);
        // kernel mod 5 of the bracket matrix is zero (det = ±4)
        let m = bracket_matrix_int(&g.data);
        let k = canonical_span_mod(m.kernel_basis(), &Int::from(5));
        assert_eq!(k.cols(), 0);
    }

    #[test]
    fn soundness_gate_rejects_noncommuting() {
        let g = chev("A1", LatticeChoice::Coroot);
        let bad = GeneratorCertificate {
            a: unit_vec(3, 1),
            b: unit_vec(3, 2),
            wedge: wedge_of(&unit_vec(3, 1), &unit_vec(3, 2)),
            provenance: Provenance::Fact2NonRoot,
            params: "forged".into(),
        };
        let kernel = kernel_basis(&g.data);
        let r = SLocalRing::z_one_sixth();
        assert!(certify(&g.data, &kernel, &[bad], &r).is_err());
        assert!(GeneratorCertificate::new(
            &g.data,
            unit_vec(3, 1),
            unit_vec(3, 2),
            Provenance::Fact2NonRoot,
            "xy".into()
        )
        .is_err());
    }
}

#[cfg(test)]
mod perf_tests {
    use super::*;
    use crate::chevalley::{build_chevalley, LatticeChoice};
    use crate::roots::{RootSystem, RootSystemType};

    #[test]
    #[ignore]
    fn f4_full_timing() {
        let t = RootSystemType::parse("F4").unwrap();
        let rs = RootSystem::build(&t).unwrap();
        let g = build_chevalley(&rs, &LatticeChoice::Coroot).unwrap();
        let r = SLocalRing::z_one_sixth();
        let t0 = std::time::Instant::now();
        let kernel = kernel_basis(&g.data);
        eprintln!("kernel: {:?} rank {}", t0.elapsed(), kernel.cols());
        let t1 = std::time::Instant::now();
        let certs = generators_reductive(&g, &r).unwrap();
        eprintln!("gens: {:?} count {}", t1.elapsed(), certs.len());
        let t2 = std::time::Instant::now();
        let rep = certify(&g.data, &kernel, &certs, &r).unwrap();
        eprintln!("certify: {:?} verdict {:?}", t2.elapsed(), rep.verdict);
        assert!(rep.is_equal(), "{:?}", rep.relative_factors);
    }
}
