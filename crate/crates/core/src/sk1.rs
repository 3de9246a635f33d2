//! Powerful-lattice layer: congruence-subgroup algebras, the vanishing
//! criterion, and the rank-9 counterexample with its nonvanishing witness.
//!
//! The criterion is applied purely on the Lie side: a verdict of
//! `Vanishes` is backed by a certified span equality over the local ring
//! at p, and `NonVanishing` by an exact kernel element whose line contains
//! no nonzero decomposable (the Pluecker condition on a rank-4 space).
//! Everything else is `Unknown` — the tool never guesses.

use num_traits::{One, Zero};

use crate::chevalley::{
    build_chevalley, ChevalleyAlgebra, ChevalleyError, LatticeChoice, LieAlgebraData,
};
use crate::ring::SLocalRing;
use crate::roots::{RootSystem, RootSystemType};
use crate::wedge::{
    bracket_matrix, certify, generators_reductive, kernel_basis, wedge_dim,
    wedge_index, GeneratorCertificate, Provenance, VerificationReport, WedgeError,
};
use crate::{Int, IntMatrix, Rat};

#[derive(Debug, thiserror::Error)]
pub enum SK1Error {
    #[error("the standing hypothesis requires a prime p >= 5, got {0}")]
    BadPrime(u64),
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),
    #[error("scaling exponent must be >= 1")]
    BadExponent,
    #[error("lattice is not powerful for p = {0}")]
    NotPowerful(u64),
    #[error("structure constants must be integral")]
    NonIntegral,
    #[error("dimension {0} is out of the semisimple domain (needs d >= 3)")]
    DimensionOutOfDomain(usize),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    Wedge(#[from] WedgeError),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `[L, L] <= pL`: every structure constant divisible by p.
pub fn is_powerful(data: &LieAlgebraData, p: u64) -> Result<bool, SK1Error> {
    if !data.is_integral() {
        return Err(SK1Error::NonIntegral);
    }
    let pi = Int::from(p);
    Ok(data
        .constants()
        .all(|(_, _, _, c)| (c.numer() % &pi).is_zero()))
}

/// A 2-step presentation: bracket factors through `wedge^2 V -> W`.
#[derive(Debug, Clone)]
pub struct TwoStepNilpotentPresentation {
    pub v_rank: usize,
    pub w_rank: usize,
    /// `w_rank x C(v_rank, 2)` matrix of the quotient map.
    pub partial: IntMatrix,
    pub scaling_exponent: u32,
}

/// Free integral Lie lattice tagged with the prime and its origin.
#[derive(Debug, Clone)]
pub struct UniformLieLattice {
    pub data: LieAlgebraData,
    pub p: u64,
    pub scaling_exponent: u32,
    pub powerful: bool,
    /// Unscaled source algebra when built from a Chevalley order.
    pub chevalley: Option<ChevalleyAlgebra>,
    pub presentation: Option<TwoStepNilpotentPresentation>,
}

/// `p^n * Lie(G_Z)`: the Lie lattice of the n-th congruence subgroup.
pub fn build_congruence_algebra(
    t: &RootSystemType,
    lat: &LatticeChoice,
    p: u64,
    n: u32,
) -> Result<UniformLieLattice, SK1Error> {
    if p < 5 || !is_prime(p) {
        return Err(SK1Error::BadPrime(p));
    }
    if n < 1 {
        return Err(SK1Error::BadExponent);
    }
    let rs = RootSystem::build(t).map_err(|_| SK1Error::BadPrime(p)).unwrap();
    let g = build_chevalley(&rs, lat)?;
    let scale = Int::from(p).pow(n);
    let data = g.data.scale(&scale)?;
    let powerful = is_powerful(&data, p)?;
    debug_assert!(powerful);
    Ok(UniformLieLattice {
        data,
        p,
        scaling_exponent: n,
        powerful,
        chevalley: Some(g),
        presentation: None,
    })
}

#[derive(Debug)]
pub enum SK1Outcome {
    Vanishes {
        report: VerificationReport,
    },
    NonVanishing {
        /// Exact kernel element outside the decomposable span, in the
        /// lexicographic wedge coordinates of the lattice basis.
        witness: Vec<Rat>,
        /// Why no decomposable combination can reach the witness.
        certificate: String,
        /// Span comparison against the commuting-pair generators.
        report: VerificationReport,
    },
    Unknown {
        reason: String,
    },
}

#[derive(Debug)]
pub struct SK1Verdict {
    pub p: u64,
    pub path: &'static str,
    pub outcome: SK1Outcome,
}

/// Certificates for every pair of basis vectors that already commutes.
pub fn commuting_basis_pairs(
    data: &LieAlgebraData,
) -> Result<Vec<GeneratorCertificate>, WedgeError> {
    let d = data.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if data.bracket_basis(i, j).is_empty() {
                let mut a = vec![Rat::zero(); d];
                a[i] = Rat::one();
                let mut b = vec![Rat::zero(); d];
                b[j] = Rat::one();
                out.push(GeneratorCertificate::new(
                    data,
                    a,
                    b,
                    Provenance::Fact2NonRoot,
                    format!("{} ^ {}", data.basis[i], data.basis[j]),
                )?);
            }
        }
    }
    Ok(out)
}

/// Decide the criterion `ker [,] <= span of decomposable commuting pairs`.
pub fn sk1_check(latt: &UniformLieLattice) -> Result<SK1Verdict, SK1Error> {
    if !latt.powerful {
        return Err(SK1Error::NotPowerful(latt.p));
    }
    let ring = SLocalRing::LocalAt(latt.p);

    if let Some(g) = &latt.chevalley {
        // Chevalley path: verify on the unscaled order; the verdict
        // transports along the scaling square.
        let kernel = kernel_basis(&g.data);
        let certs = generators_reductive(g, &ring)?;
        let report = certify(&g.data, &kernel, &certs, &ring)?;
        let outcome = if report.is_equal() {
            SK1Outcome::Vanishes { report }
        } else {
            SK1Outcome::Unknown {
                reason: "certificate span is proper; no conclusion".into(),
            }
        };
        return Ok(SK1Verdict { p: latt.p, path: "chevalley", outcome });
    }

    if let Some(pres) = &latt.presentation {
        if pres.v_rank == 4 {
            let ker = pres.partial.kernel_basis();
            if ker.cols() == 1 {
                let omega: Vec<Int> = ker.column(0);
                // Pluecker: omega ^ omega = 2(c12 c34 - c13 c24 + c14 c23)
                let quad = &omega[0] * &omega[5] - &omega[1] * &omega[4]
                    + &omega[2] * &omega[3];
                if !quad.is_zero() {
                    // witness: omega placed on the V-block of the lattice
                    let d = latt.data.dim();
                    let mut witness = vec![Rat::zero(); wedge_dim(d)];
                    let mut pos = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            witness[wedge_index(d, i, j)] =
                                Rat::from_integer(omega[pos].clone());
                            pos += 1;
                        }
                    }
                    // exactness gate: the witness is in the bracket kernel
                    let img = bracket_matrix(&latt.data).mul_vec(&witness);
                    assert!(
                        img.iter().all(|q| q.is_zero()),
                        "witness escaped the kernel"
                    );
                    let kernel = kernel_basis(&latt.data);
                    let certs = commuting_basis_pairs(&latt.data)?;
                    let report = certify(&latt.data, &kernel, &certs, &ring)?;
                    let certificate = format!(
                        "ker(partial) is the line through ({}); omega^omega = \
                         2*({}) e1234 != 0, so the only decomposable element \
                         of the line is 0 and the witness cannot lie in the \
                         span of decomposable commuting pairs",
                        omega
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(","),
                        quad
                    );
                    return Ok(SK1Verdict {
                        p: latt.p,
                        path: "two-step-nilpotent",
                        outcome: SK1Outcome::NonVanishing {
                            witness,
                            certificate,
                            report,
                        },
                    });
                }
            }
        }
        return Ok(SK1Verdict {
            p: latt.p,
            path: "two-step-nilpotent",
            outcome: SK1Outcome::Unknown {
                reason: "presentation outside the rank-4 / rank-1-kernel case"
                    .into(),
            },
        });
    }

    Ok(SK1Verdict {
        p: latt.p,
        path: "none",
        outcome: SK1Outcome::Unknown {
            reason: "no decision path applies to a bare powerful lattice".into(),
        },
    })
}

/// The rank-9 counterexample `p * (V + wedge^2 V / (e12 + e34))`, with the
/// generators-and-relations table as a documentation artifact.
pub fn build_counterexample(
    p: u64,
) -> Result<(UniformLieLattice, TwoStepNilpotentPresentation, String), SK1Error> {
    if p < 5 || !is_prime(p) {
        return Err(SK1Error::BadPrime(p));
    }
    // W basis f1..f5 = classes of e12, e13, e14, e23, e24; e34 = -e12 in W
    let mut partial = IntMatrix::zero(5, 6);
    for k in 0..5 {
        partial[(k, k)] = Int::one();
    }
    partial[(0, 5)] = -Int::one();

    let mut basis: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
    basis.extend((1..=5).map(|k| format!("y{k}")));
    let mut data = LieAlgebraData::new(format!("counterexample p={p}"), basis);
    let pi = Rat::from_integer(Int::from(p));
    let mut col = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            let mut v = Vec::new();
            for k in 0..5 {
                let c = &partial[(k, col)];
                if !c.is_zero() {
                    v.push((4 + k, Rat::from_integer(c.clone()) * &pi));
                }
            }
            data.set_bracket(i, j, v).unwrap();
            col += 1;
        }
    }
    let powerful = is_powerful(&data, p)?;
    debug_assert!(powerful);

    let pres = TwoStepNilpotentPresentation {
        v_rank: 4,
        w_rank: 5,
        partial,
        scaling_exponent: 1,
    };
    let latt = UniformLieLattice {
        data,
        p,
        scaling_exponent: 1,
        powerful,
        chevalley: None,
        presentation: Some(pres.clone()),
    };
    let table = [
        ("(1,2)", format!("y1^-{p}")),
        ("(1,3)", format!("y1^{p}")),
        ("(1,4)", format!("y2^{p}")),
        ("(2,3)", format!("y3^{p}")),
        ("(2,4)", format!("y4^{p}")),
        ("(3,4)", format!("y5^{p}")),
    ]
    .iter()
    .map(|(ij, v)| format!("[xi,xj] = {v}, if (i,j) = {ij}"))
    .collect::<Vec<_>>()
    .join("\n");
    Ok((latt, pres, table))
}

/// `C(d,2) - d`, the torsion-free rank of the second cohomology in the
/// semisimple case.
pub fn h2_torsion_dim(d: usize) -> Result<usize, SK1Error> {
    if d < 3 {
        return Err(SK1Error::DimensionOutOfDomain(d));
    }
    Ok(d * (d - 1) / 2 - d)
}

/// Direct sum with componentwise bracket.
pub fn product(a: &LieAlgebraData, b: &LieAlgebraData) -> LieAlgebraData {
    a.product(b)
}

/// Certificates for a product: embedded factor certificates plus all
/// cross-factor basis pairs (which commute componentwise and span the
/// middle summand of the product kernel).
pub fn product_certificates(
    prod: &LieAlgebraData,
    d1: usize,
    certs1: &[GeneratorCertificate],
    certs2: &[GeneratorCertificate],
) -> Result<Vec<GeneratorCertificate>, WedgeError> {
    let d = prod.dim();
    let embed = |v: &[Rat], offset: usize| {
        let mut out = vec![Rat::zero(); d];
        out[offset..offset + v.len()].clone_from_slice(v);
        out
    };
    let mut out = Vec::new();
    for c in certs1 {
        out.push(GeneratorCertificate::new(
            prod,
            embed(&c.a, 0),
            embed(&c.b, 0),
            c.provenance,
            format!("left {}", c.params),
        )?);
    }
    for c in certs2 {
        out.push(GeneratorCertificate::new(
            prod,
            embed(&c.a, d1),
            embed(&c.b, d1),
            c.provenance,
            format!("right {}", c.params),
        )?);
    }
    for i in 0..d1 {
        for j in d1..d {
            let mut a = vec![Rat::zero(); d];
            a[i] = Rat::one();
            let mut b = vec![Rat::zero(); d];
            b[j] = Rat::one();
            out.push(GeneratorCertificate::new(
                prod,
                a,
                b,
                Provenance::Fact2NonRoot,
                format!("cross {i} {j}"),
            )?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct FactorialBoundReport {
    pub p: u64,
    pub j_max: u64,
    pub violations: Vec<u64>,
}

impl FactorialBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify `v_p((j-1)!) <= (j-2)/(p-1)` and, for p > 2, the consequence
/// `v_p((j-1)!) <= j-3`, for `3 <= j <= j_max`.
pub fn factorial_valuation_bound(p: u64, j_max: u64) -> Result<FactorialBoundReport, SK1Error> {
    if p == 2 || !is_prime(p) {
        return Err(SK1Error::NotOddPrime(p));
    }
    let mut violations = Vec::new();
    // running valuation of (j-1)!
    let mut v: u64 = 0;
    let val = |mut m: u64| {
        let mut acc = 0;
        while m % p == 0 {
            acc += 1;
            m /= p;
        }
        acc
    };
    for j in 3..=j_max {
        v += val(j - 1);
        // v <= (j-2)/(p-1)  <=>  v*(p-1) <= j-2
        let first = v * (p - 1) <= j - 2;
        let second = v <= j - 3;
        if !first || !second {
            violations.push(j);
        }
    }
    Ok(FactorialBoundReport { p, j_max, violations })
}
