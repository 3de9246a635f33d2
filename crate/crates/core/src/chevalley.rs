//! Chevalley orders of split reductive Lie algebras over the integers.
//!
//! Structure-constant signs come from the extraspecial-pair construction:
//! fix the height-then-lex total order on the positive roots, set
//! `N > 0` on each extraspecial pair, and propagate every other constant
//! through Jacobi-forced relations. A final basis flip `X_{-a} -> -X_{-a}`
//! puts the result in the convention `[X_a, X_{-a}] = -H_a` used
//! throughout this crate. [`validate`] re-checks the outcome
//! independently (full Jacobi plus the classical N-identities), so the
//! construction never has to be trusted on its own.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::ring::SLocalRing;
use crate::roots::{RootSystem, RootSystemType};
use crate::{Int, IntMatrix, Rat};

#[derive(Debug, thiserror::Error)]
pub enum ChevalleyError {
    #[error("lattice must satisfy Qvee <= L <= Pvee + center; obstruction divisors {0:?}")]
    BadLattice(Vec<Int>),
    #[error("lattice generator matrix must be square of size rank + central rank and nonsingular")]
    BadLatticeShape,
    #[error("scaling by zero is not invertible")]
    ZeroScale,
    #[error("bracket entries must be stored with i < j")]
    BadStorageOrder,
}

/// Choice of the Cartan lattice between the coroot and coweight lattices,
/// optionally extended by a central summand.
#[derive(Debug, Clone)]
pub enum LatticeChoice {
    Coroot,
    Coweight,
    /// Columns generate the lattice, in coweight coordinates.
    Custom(IntMatrix),
    /// Base variant extended by `z` central basis vectors; a `Custom` base
    /// is then given in coweight-plus-center coordinates of size rank + z.
    WithCenter(Box<LatticeChoice>, usize),
}

impl LatticeChoice {
    pub fn central_rank(&self) -> usize {
        match self {
            LatticeChoice::WithCenter(_, z) => *z,
            _ => 0,
        }
    }

    /// Generator matrix in coweight-plus-center coordinates
    /// (size (rank+z) x (rank+z)).
    fn basis_matrix(&self, rs: &RootSystem) -> Result<IntMatrix, ChevalleyError> {
        let r = rs.rank();
        match self {
            LatticeChoice::Coroot => Ok(rs.coroot_basis()),
            LatticeChoice::Coweight => Ok(rs.coweight_basis()),
            LatticeChoice::Custom(m) => {
                if m.rows() != r || m.cols() != r {
                    return Err(ChevalleyError::BadLatticeShape);
                }
                Ok(m.clone())
            }
            LatticeChoice::WithCenter(base, z) => {
                let inner: IntMatrix = match base.as_ref() {
                    LatticeChoice::Custom(m) => {
                        if m.rows() != r + z || m.cols() != r + z {
                            return Err(ChevalleyError::BadLatticeShape);
                        }
                        return Ok(m.clone());
                    }
                    LatticeChoice::WithCenter(..) => {
                        return Err(ChevalleyError::BadLatticeShape)
                    }
                    other => other.basis_matrix(rs)?,
                };
                let mut m = IntMatrix::zero(r + z, r + z);
                for i in 0..r {
                    for j in 0..r {
                        m[(i, j)] = inner[(i, j)].clone();
                    }
                }
                for k in 0..*z {
                    m[(r + k, r + k)] = Int::one();
                }
                Ok(m)
            }
        }
    }
}

/// Generic structure-constant container: brackets of basis pairs stored
/// sparsely for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub name: String,
    pub basis: Vec<String>,
    table: BTreeMap<(usize, usize), Vec<(usize, Rat)>>,
}

impl LieAlgebraData {
    pub fn new(name: impl Into<String>, basis: Vec<String>) -> Self {
        LieAlgebraData { name: name.into(), basis, table: BTreeMap::new() }
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        Self::new(name, (1..=dim).map(|i| format!("b{i}")).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn set_bracket(
        &mut self,
        i: usize,
        j: usize,
        value: Vec<(usize, Rat)>,
    ) -> Result<(), ChevalleyError> {
        if i >= j || j >= self.dim() {
            return Err(ChevalleyError::BadStorageOrder);
        }
        let filtered: Vec<(usize, Rat)> =
            value.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if filtered.is_empty() {
            self.table.remove(&(i, j));
        } else {
            self.table.insert((i, j), filtered);
        }
        Ok(())
    }

    /// `[b_i, b_j]` as a sparse vector, any order of indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        if i == j {
            return Vec::new();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        match self.table.get(&(a, b)) {
            None => Vec::new(),
            Some(v) => v
                .iter()
                .map(|(k, c)| (*k, if sign < 0 { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    pub fn bracket_vectors(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for ((i, j), v) in &self.table {
            let coeff = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in v {
                out[*k] += &coeff * c;
            }
        }
        out
    }

    /// Stored constants as `(i, j, k, c)` with `i < j`, deterministic order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Rat)> {
        self.table
            .iter()
            .flat_map(|((i, j), v)| v.iter().map(move |(k, c)| (*i, *j, *k, c)))
    }

    pub fn is_integral(&self) -> bool {
        self.constants().all(|(_, _, _, c)| c.is_integer())
    }

    /// Sum of the three cyclic double brackets of a basis triple.
    pub fn jacobi_defect(&self, i: usize, j: usize, k: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, coeff) in self.bracket_basis(a, b) {
                for (n, d) in self.bracket_basis(m, c) {
                    out[n] += &coeff * &d;
                }
            }
        }
        out
    }

    /// Rescale the basis by `a`: structure constants multiply by `a`.
    pub fn scale(&self, a: &Int) -> Result<LieAlgebraData, ChevalleyError> {
        if a.is_zero() {
            return Err(ChevalleyError::ZeroScale);
        }
        let fa = Rat::from_integer(a.clone());
        let mut out = self.clone();
        for v in out.table.values_mut() {
            for (_, c) in v.iter_mut() {
                *c = &*c * &fa;
            }
        }
        Ok(out)
    }

    /// Direct sum with componentwise bracket.
    pub fn product(&self, other: &LieAlgebraData) -> LieAlgebraData {
        let d1 = self.dim();
        let mut basis: Vec<String> =
            self.basis.iter().map(|s| format!("l.{s}")).collect();
        basis.extend(other.basis.iter().map(|s| format!("r.{s}")));
        let mut out = LieAlgebraData::new(
            format!("{} x {}", self.name, other.name),
            basis,
        );
        for ((i, j), v) in &self.table {
            out.table.insert((*i, *j), v.clone());
        }
        for ((i, j), v) in &other.table {
            out.table.insert(
                (i + d1, j + d1),
                v.iter().map(|(k, c)| (k + d1, c.clone())).collect(),
            );
        }
        out
    }

    /// Smallest `c` with vanishing (c+1)-fold lower central term, or `None`
    /// if the series does not reach zero within `dim` steps.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let d = self.dim();
        let full: Vec<Vec<Rat>> = (0..d)
            .map(|i| {
                let mut e = vec![Rat::zero(); d];
                e[i] = Rat::one();
                e
            })
            .collect();
        let mut current = full.clone();
        for c in 0..=d {
            if current.is_empty() {
                return Some(c);
            }
            let mut next: Vec<Vec<Rat>> = Vec::new();
            for x in &full {
                for y in &current {
                    let b = self.bracket_vectors(x, y);
                    if b.iter().any(|q| !q.is_zero()) {
                        next.push(b);
                    }
                }
            }
            current = reduce_span(next);
        }
        None
    }
}

/// Rational row reduction keeping an independent subset.
fn reduce_span(vecs: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for mut v in vecs {
        for r in &rows {
            let lead = r.iter().position(|q| !q.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let f = &v[lead] / &r[lead];
                for (a, b) in v.iter_mut().zip(r.iter()) {
                    *a = &*a - &f * b;
                }
            }
        }
        if v.iter().any(|q| !q.is_zero()) {
            rows.push(v);
        }
    }
    rows
}

/// Outcome of the independent validity audit.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// Basis triples with nonzero Jacobi defect.
    pub jacobi_violations: Vec<(usize, usize, usize)>,
    /// Chevalley N-identity violations, as human-readable descriptions.
    pub identity_violations: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.jacobi_violations.is_empty() && self.identity_violations.is_empty()
    }
}

/// Verify the Jacobi identity on every basis triple.
pub fn validate(data: &LieAlgebraData) -> ValidationReport {
    let d = data.dim();
    let mut jacobi_violations = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                if data.jacobi_defect(i, j, k).iter().any(|q| !q.is_zero()) {
                    jacobi_violations.push((i, j, k));
                }
            }
        }
    }
    ValidationReport { jacobi_violations, identity_violations: Vec::new() }
}

/// A Chevalley order: Cartan lattice plus one root vector per root.
///
/// Basis order: `h_1 .. h_c` (columns of the lattice basis), then `X_a`
/// over all roots in root-system storage order (positives first).
#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    pub rs: RootSystem,
    pub data: LieAlgebraData,
    /// rank + central rank
    pub cartan_dim: usize,
    pub central_rank: usize,
    /// Columns = Cartan basis in coweight-plus-center coordinates.
    pub lattice_basis: IntMatrix,
    /// `n_table[(a, b)] = N_{ab}` for every root pair with a root sum.
    n_table: BTreeMap<(usize, usize), i64>,
    /// Coordinates of `H_a` over the Cartan basis, per positive root.
    coroot_in_lattice: Vec<Vec<Int>>,
}

impl ChevalleyAlgebra {
    pub fn x_index(&self, root: usize) -> usize {
        self.cartan_dim + root
    }

    pub fn dim(&self) -> usize {
        self.cartan_dim + self.rs.num_roots()
    }

    pub fn n_constant(&self, a: usize, b: usize) -> i64 {
        self.n_table.get(&(a, b)).copied().unwrap_or(0)
    }

    /// `H_a` over the Cartan basis (any root index).
    pub fn coroot_coordinates(&self, a: usize) -> Vec<Int> {
        if self.rs.is_positive(a) {
            self.coroot_in_lattice[a].clone()
        } else {
            self.coroot_in_lattice[self.rs.neg(a)].iter().map(|x| -x).collect()
        }
    }

    /// `a(h_i)` for the i-th Cartan basis vector.
    pub fn root_on_basis(&self, a: usize, i: usize) -> Int {
        let mut acc = Int::zero();
        for (k, &m) in self.rs.root(a).iter().enumerate() {
            if m != 0 {
                acc += Int::from(m) * &self.lattice_basis[(k, i)];
            }
        }
        acc
    }

    /// Evaluate root `a` on a Cartan element given over the Cartan basis.
    pub fn root_on_cartan_vector(&self, a: usize, h: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, c) in h.iter().enumerate() {
            if !c.is_zero() {
                acc += Rat::from_integer(self.root_on_basis(a, i)) * c;
            }
        }
        acc
    }

    /// Embed a Cartan-basis coordinate vector into full algebra coordinates.
    pub fn cartan_vector(&self, h: &[Rat]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[..self.cartan_dim].clone_from_slice(h);
        v
    }
}

/// Positive constants in the Carter convention (`[X_a, X_{-a}] = H_a`),
/// computed by extraspecial pairs in the stored positive-root order.
fn positive_constants(rs: &RootSystem) -> BTreeMap<(usize, usize), i64> {
    let mut n_pos: BTreeMap<(usize, usize), i64> = BTreeMap::new();

    // order positives by (height, index) = storage order
    let positives: Vec<usize> = rs.positive_indices().collect();

    // string-down length p for a positive pair
    let string_p = |a: usize, b: usize| -> i64 {
        let mut p = 0i64;
        loop {
            let v: Vec<i64> = rs
                .root(b)
                .iter()
                .zip(rs.root(a))
                .map(|(x, y)| x - (p + 1) * y)
                .collect();
            if rs.index_of(&v).is_some() {
                p += 1;
            } else {
                return p;
            }
        }
    };

    // N for any pair of positive roots with positive-root sum, reading
    // previously fixed constants; mixed-sign values derived on the fly.
    for &gamma in &positives {
        if rs.height(gamma) < 2 {
            continue;
        }
        let mut special: Vec<(usize, usize)> = Vec::new();
        for &xi in &positives {
            for &eta in &positives {
                if xi < eta && rs.sum_index(xi, eta) == Some(gamma) {
                    special.push((xi, eta));
                }
            }
        }
        special.sort();
        let &(alpha, beta) = special.first().expect("height >= 2 root decomposes");
        // extraspecial: positive sign
        let ne = string_p(alpha, beta) + 1;
        n_pos.insert((alpha, beta), ne);
        n_pos.insert((beta, alpha), -ne);

        for &(xi, eta) in special.iter().skip(1) {
            // Jacobi on (X_xi, X_eta, X_{-alpha}):
            // N_{xi,eta} N_{gamma,-alpha} =
            //   N_{xi,-alpha} N_{xi-alpha,eta} - N_{eta,-alpha} N_{eta-alpha,xi}
            let n_mixed = |p: usize, m: usize| -> Rat {
                // N_{p, -m} for positive roots p, m with p - m a root
                let diff: Vec<i64> = rs
                    .root(p)
                    .iter()
                    .zip(rs.root(m))
                    .map(|(x, y)| x - y)
                    .collect();
                let e = rs.index_of(&diff).expect("difference is a root");
                if rs.is_positive(e) {
                    // p = m + e: N_{p,-m} = (e,e)/(p,p) * N_{-m,-e}
                    //          = -(e,e)/(p,p) * N_{me}
                    let n = n_pos[&(m, e)];
                    -Rat::new(
                        Int::from(rs.bilinear(e, e)),
                        Int::from(rs.bilinear(p, p)),
                    ) * Rat::from_integer(Int::from(n))
                } else {
                    // m = p + e' with e' = m - p positive:
                    // N_{p,-m} = (e',e')/(m,m) * N_{e',p}
                    let ep = rs.neg(e);
                    let n = n_pos[&(ep, p)];
                    Rat::new(
                        Int::from(rs.bilinear(ep, ep)),
                        Int::from(rs.bilinear(m, m)),
                    ) * Rat::from_integer(Int::from(n))
                }
            };
            let term = |p: usize, q: usize| -> Rat {
                // N_{p,-alpha} * N_{p-alpha, q}, zero when p - alpha is no root
                let diff: Vec<i64> = rs
                    .root(p)
                    .iter()
                    .zip(rs.root(alpha))
                    .map(|(x, y)| x - y)
                    .collect();
                let Some(e) = rs.index_of(&diff) else {
                    return Rat::zero();
                };
                let first = n_mixed(p, alpha);
                // N_{e, q}: e may be negative
                let second = if rs.is_positive(e) {
                    Rat::from_integer(Int::from(n_pos[&(e, q)]))
                } else {
                    // N_{-e', q} = -N_{q, -e'}
                    -n_mixed(q, rs.neg(e))
                };
                first * second
            };
            let rhs = term(xi, eta) - term(eta, xi);
            // N_{gamma,-alpha} = -(beta,beta)/(gamma,gamma) * N_{alpha,beta}
            let ngma = -Rat::new(
                Int::from(rs.bilinear(beta, beta)),
                Int::from(rs.bilinear(gamma, gamma)),
            ) * Rat::from_integer(Int::from(ne));
            let val = rhs / ngma;
            assert!(val.is_integer(), "non-integral structure constant");
            let val: i64 = (val.numer()).try_into().expect("small constant");
            assert_eq!(val.abs(), string_p(xi, eta) + 1);
            n_pos.insert((xi, eta), val);
            n_pos.insert((eta, xi), -val);
        }
    }
    n_pos
}

/// Full constant table in the paper convention, from the positive table.
fn full_constants(
    rs: &RootSystem,
    n_pos: &BTreeMap<(usize, usize), i64>,
) -> BTreeMap<(usize, usize), i64> {
    // Carter-convention value for arbitrary sign pattern.
    let carter = |a: usize, b: usize| -> i64 {
        let pa = rs.is_positive(a);
        let pb = rs.is_positive(b);
        let ratio_times = |num: usize, den: usize, n: i64| -> i64 {
            let v = Rat::new(
                Int::from(rs.bilinear(num, num)),
                Int::from(rs.bilinear(den, den)),
            ) * Rat::from_integer(Int::from(n));
            assert!(v.is_integer());
            (v.numer()).try_into().unwrap()
        };
        match (pa, pb) {
            (true, true) => n_pos[&(a, b)],
            (false, false) => -n_pos[&(rs.neg(a), rs.neg(b))],
            (true, false) => {
                // b = -m; a - m is a root e
                let m = rs.neg(b);
                let e = rs.sum_index(a, b).expect("sum is a root");
                if rs.is_positive(e) {
                    // a = m + e: N_{a,-m} = -(e,e)/(a,a) N_{me}
                    ratio_times(e, a, -n_pos[&(m, e)])
                } else {
                    // m = a + e': N_{a,-m} = (e',e')/(m,m) N_{e'a}
                    let ep = rs.neg(e);
                    ratio_times(ep, m, n_pos[&(ep, a)])
                }
            }
            (false, true) => {
                // N_{ab} = -N_{ba}
                let m = rs.neg(a);
                let e = rs.sum_index(a, b).expect("sum is a root");
                if rs.is_positive(e) {
                    -ratio_times(e, b, -n_pos[&(m, e)])
                } else {
                    let ep = rs.neg(e);
                    -ratio_times(ep, m, n_pos[&(ep, b)])
                }
            }
        }
    };
    let mut out = BTreeMap::new();
    for a in 0..rs.num_roots() {
        for b in 0..rs.num_roots() {
            if a == b || b == rs.neg(a) {
                continue;
            }
            if rs.sum_index(a, b).is_none() {
                continue;
            }
            let sign = |x: usize| if rs.is_positive(x) { 1i64 } else { -1 };
            let s = rs.sum_index(a, b).unwrap();
            // flip X_{-a} -> -X_{-a}: N' = s(a) s(b) s(a+b) N
            let val = sign(a) * sign(b) * sign(s) * carter(a, b);
            out.insert((a, b), val);
        }
    }
    out
}

pub fn build_chevalley(
    rs: &RootSystem,
    lat: &LatticeChoice,
) -> Result<ChevalleyAlgebra, ChevalleyError> {
    let r = rs.rank();
    let z = lat.central_rank();
    let basis_m = lat.basis_matrix(rs)?;
    let c = r + z;
    debug_assert_eq!(basis_m.rows(), c);

    // membership L <= Pvee + center: roots integral on all columns —
    // automatic in these coordinates; nonsingularity required.
    if crate::ffelim::rank(&basis_m) < c {
        return Err(ChevalleyError::BadLatticeShape);
    }
    // membership Qvee <= L: every simple coroot solvable over Z
    let mut coroot_solutions: Vec<Vec<Int>> = Vec::new();
    let mut bad_divisors: Vec<Int> = Vec::new();
    for p in rs.positive_indices() {
        let mut target: Vec<Int> =
            rs.coroot_coords(p).into_iter().map(Int::from).collect();
        target.resize(c, Int::zero());
        match basis_m.solve_over(&target, &SLocalRing::integers()) {
            Some(x) => coroot_solutions
                .push(x.into_iter().map(|q| q.numer().clone()).collect()),
            None => {
                // report the denominators of the rational coordinates
                let rat_basis = basis_m.to_rational();
                let rat_target = Matrix::from_cols(vec![target
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect()]);
                let sol = crate::RatMatrix::solve_columns(&rat_basis, &rat_target)
                    .expect("basis is nonsingular");
                for i in 0..c {
                    let den = sol[(i, 0)].denom().clone();
                    if !den.is_one() && !bad_divisors.contains(&den) {
                        bad_divisors.push(den);
                    }
                }
            }
        }
    }
    if !bad_divisors.is_empty() {
        return Err(ChevalleyError::BadLattice(bad_divisors));
    }

    let n_pos = positive_constants(rs);
    let n_table = full_constants(rs, &n_pos);

    let mut labels: Vec<String> = (1..=c).map(|i| format!("h{i}")).collect();
    for a in 0..rs.num_roots() {
        let v = rs.root(a);
        let body: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        labels.push(format!("X[{}]", body.join(",")));
    }
    let mut data = LieAlgebraData::new(format!("chevalley {}", rs.rtype()), labels);

    let alg = ChevalleyAlgebra {
        rs: rs.clone(),
        data: data.clone(),
        cartan_dim: c,
        central_rank: z,
        lattice_basis: basis_m,
        n_table,
        coroot_in_lattice: coroot_solutions,
    };

    // fill the bracket table
    let d = alg.dim();
    for i in 0..d {
        for j in i + 1..d {
            let mut v: Vec<(usize, Rat)> = Vec::new();
            if i < c && j < c {
                // Cartan pair: zero
            } else if i < c {
                // [h_i, X_a] = a(h_i) X_a
                let a = j - c;
                let t = alg.root_on_basis(a, i);
                if !t.is_zero() {
                    v.push((j, Rat::from_integer(t)));
                }
            } else {
                let a = i - c;
                let b = j - c;
                if b == alg.rs.neg(a) {
                    // [X_a, X_{-a}] = -H_a
                    for (k, coef) in alg.coroot_coordinates(a).into_iter().enumerate()
                    {
                        if !coef.is_zero() {
                            v.push((k, Rat::from_integer(-coef)));
                        }
                    }
                } else if let Some(s) = alg.rs.sum_index(a, b) {
                    let n = alg.n_constant(a, b);
                    debug_assert!(n != 0);
                    v.push((c + s, Rat::from_integer(Int::from(n))));
                }
            }
            data.set_bracket(i, j, v).expect("i < j by construction");
        }
    }
    Ok(ChevalleyAlgebra { data, ..alg })
}

/// Validate a Chevalley algebra: full Jacobi plus the N-identities.
pub fn validate_chevalley(g: &ChevalleyAlgebra) -> ValidationReport {
    let mut report = validate(&g.data);
    let rs = &g.rs;
    let viol = &mut report.identity_violations;
    for a in 0..rs.num_roots() {
        for b in 0..rs.num_roots() {
            if a == b || b == rs.neg(a) {
                continue;
            }
            let Some(s) = rs.sum_index(a, b) else {
                if g.n_constant(a, b) != 0 {
                    viol.push(format!("N[{a},{b}] nonzero on a non-root sum"));
                }
                continue;
            };
            let n = g.n_constant(a, b);
            // |N| = p + 1 from the root string
            let p = rs.root_string(a, b).expect("b != +-a").p as i64;
            if n.abs() != p + 1 || !(1..=3).contains(&n.abs()) {
                viol.push(format!("|N[{a},{b}]| = {} but p+1 = {}", n.abs(), p + 1));
            }
            // antisymmetry and opposite-pair identity b)
            if g.n_constant(b, a) != -n {
                viol.push(format!("N[{b},{a}] != -N[{a},{b}]"));
            }
            if g.n_constant(rs.neg(a), rs.neg(b)) != n {
                viol.push(format!("N[-{a},-{b}] != N[{a},{b}]"));
            }
            // identity a): <H_s,H_s>/<H_a,H_a> = -N_{-b,s}/N_{b,a}
            let lhs = rs.length_ratio(s, a);
            let rhs = -Rat::new(
                Int::from(g.n_constant(rs.neg(b), s)),
                Int::from(g.n_constant(b, a)),
            );
            if lhs != rhs {
                viol.push(format!("identity a) fails for ({a},{b})"));
            }
            // identity c) when a - b is also a root
            if rs.sum_index(a, rs.neg(b)).is_some() {
                let q = |x: usize, y: usize| Int::from(g.n_constant(x, y));
                let lhs = Rat::new(
                    q(b, rs.neg(a))
                        * q(rs.sum_index(b, rs.neg(a)).unwrap(), rs.neg(b)),
                    q(a, b) * q(rs.neg(b), s),
                );
                let rhs = Rat::new(
                    q(a, rs.neg(b))
                        * q(rs.sum_index(a, rs.neg(b)).unwrap(), rs.neg(a)),
                    q(b, a) * q(rs.neg(a), s),
                );
                if lhs != rhs {
                    viol.push(format!("identity c) fails for ({a},{b})"));
                }
            }
        }
    }
    // convention checks: [X_a, X_{-a}] = -H_a and [h_i, X_a] = a(h_i) X_a
    for a in rs.positive_indices() {
        let i = g.x_index(a);
        let j = g.x_index(rs.neg(a));
        let br = g.data.bracket_basis(i, j);
        let expected: Vec<(usize, Rat)> = g
            .coroot_coordinates(a)
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, Rat::from_integer(-c)))
            .collect();
        if br != expected {
            report
                .identity_violations
                .push(format!("[X_{a}, X_-{a}] != -H_{a}"));
        }
    }
    report
}

/// Restriction to the positive root vectors.
pub fn nilradical(g: &ChevalleyAlgebra) -> LieAlgebraData {
    let rs = &g.rs;
    let np = rs.num_positive();
    let labels: Vec<String> =
        (0..np).map(|a| g.data.basis[g.x_index(a)].clone()).collect();
    let mut out = LieAlgebraData::new(format!("nilradical {}", rs.rtype()), labels);
    for a in 0..np {
        for b in a + 1..np {
            if let Some(s) = rs.sum_index(a, b) {
                let n = g.n_constant(a, b);
                out.set_bracket(a, b, vec![(s, Rat::from_integer(Int::from(n)))])
                    .unwrap();
            }
        }
    }
    debug_assert!(out.nilpotency_class().is_some());
    out
}

/// `gl_n`: type `A_{n-1}` with the diagonal-matrix Cartan lattice and a
/// one-dimensional center.
pub fn gl_preset(n: usize) -> (RootSystemType, LatticeChoice) {
    assert!(n >= 2);
    let t = RootSystemType::irreducible(crate::roots::Family::A, n - 1).unwrap();
    // columns = E_11 .. E_nn; coweight coordinate k is alpha_k, plus trace
    let mut m = IntMatrix::zero(n, n);
    for j in 0..n {
        for k in 0..n - 1 {
            let v = i64::from(k == j) - i64::from(k + 1 == j);
            m[(k, j)] = Int::from(v);
        }
        m[(n - 1, j)] = Int::one();
    }
    (t, LatticeChoice::WithCenter(Box::new(LatticeChoice::Custom(m)), 1))
}
