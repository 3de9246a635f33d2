//! Reduced root systems of all classical and exceptional types.
//!
//! Roots are stored as integer coefficient vectors over the fixed simple
//! basis (Bourbaki numbering), so the expansion coefficients `m_{beta,alpha}`
//! are literally the coordinates. The Cartan subalgebra is coordinatized in
//! the fundamental-coweight basis: the coweight lattice is the standard
//! lattice and the simple coroots are the columns of the transposed Cartan
//! matrix. The symmetric bilinear form normalizes short roots to squared
//! length 2 in each irreducible component; every ratio of coroot lengths the
//! structure theory uses is insensitive to the per-component scalar by which
//! this differs from the Killing form.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::ring::SLocalRing;
use crate::{Int, IntMatrix, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A (possibly reducible) root system type: a list of irreducible components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSystemType {
    pub components: Vec<(Family, usize)>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootError {
    #[error("inadmissible type {0}{1}")]
    Inadmissible(Family, usize),
    #[error("cannot parse root system type from {0:?}")]
    Parse(String),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("root string undefined for beta = +-alpha")]
    StringDegenerate,
    #[error("decomposition lemma check requires an irreducible system of rank <= 3; reduce to the rank <= 3 subsystem spanned by the four summands first")]
    DecompRankTooLarge,
    #[error("dual element takes at most two constraints on roots that are not negatives of each other")]
    BadConstraints,
}

impl RootSystemType {
    pub fn irreducible(family: Family, rank: usize) -> Result<Self, RootError> {
        let t = RootSystemType { components: vec![(family, rank)] };
        t.check()?;
        Ok(t)
    }

    pub fn product(components: Vec<(Family, usize)>) -> Result<Self, RootError> {
        let t = RootSystemType { components };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), RootError> {
        for &(f, n) in &self.components {
            let ok = match f {
                Family::A => n >= 1,
                Family::B => n >= 2,
                Family::C => n >= 2,
                Family::D => n >= 3,
                Family::E => (6..=8).contains(&n),
                Family::F => n == 4,
                Family::G => n == 2,
            };
            if !ok {
                return Err(RootError::Inadmissible(f, n));
            }
        }
        Ok(())
    }

    /// Aliases of smaller types realized in other families (B2 ~ C2, D3 ~ A3).
    pub fn alias_of(&self) -> Option<RootSystemType> {
        match self.components.as_slice() {
            [(Family::B, 2)] => Some(RootSystemType { components: vec![(Family::C, 2)] }),
            [(Family::D, 3)] => Some(RootSystemType { components: vec![(Family::A, 3)] }),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|&(_, n)| n).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    /// Parse strings like `A2`, `F4`, or products `A1xB3`.
    pub fn parse(s: &str) -> Result<Self, RootError> {
        let mut components = Vec::new();
        for part in s.split(['x', 'X']) {
            let part = part.trim();
            let mut chars = part.chars();
            let fam = match chars.next() {
                Some('A' | 'a') => Family::A,
                Some('B' | 'b') => Family::B,
                Some('C' | 'c') => Family::C,
                Some('D' | 'd') => Family::D,
                Some('E' | 'e') => Family::E,
                Some('F' | 'f') => Family::F,
                Some('G' | 'g') => Family::G,
                _ => return Err(RootError::Parse(s.into())),
            };
            let n: usize =
                chars.as_str().parse().map_err(|_| RootError::Parse(s.into()))?;
            components.push((fam, n));
        }
        if components.is_empty() {
            return Err(RootError::Parse(s.into()));
        }
        let t = RootSystemType { components };
        t.check()?;
        Ok(t)
    }

    /// Number of roots, by the classical census.
    pub fn root_count(&self) -> usize {
        self.components
            .iter()
            .map(|&(f, n)| match f {
                Family::A => n * (n + 1),
                Family::B | Family::C => 2 * n * n,
                Family::D => 2 * n * (n - 1),
                Family::G => 12,
                Family::F => 48,
                Family::E => match n {
                    6 => 72,
                    7 => 126,
                    _ => 240,
                },
            })
            .sum()
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.components.iter().map(|(fam, n)| format!("{fam}{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// The root string through `beta` in direction `alpha`:
/// `beta - p*alpha, ..., beta + q*alpha` all roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootString {
    pub p: usize,
    pub q: usize,
}

/// Cartan matrix (`cartan[i][j] = <alpha_j, alpha_i^vee>`) and half squared
/// lengths `d[i] = (alpha_i, alpha_i)/2` for one irreducible component.
fn component_data(family: Family, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    let mut d = vec![1i64; n];
    match family {
        Family::A => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // alpha_n is short: its row carries the -2.
            c[n - 1][n - 2] = -2;
            for di in d.iter_mut().take(n - 1) {
                *di = 2;
            }
        }
        Family::C => {
            for i in 0..n - 1 {
                link(&mut c, i, i + 1);
            }
            // alpha_n is long.
            c[n - 2][n - 1] = -2;
            d[n - 1] = 2;
        }
        Family::D => {
            for i in 0..n - 2 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, n - 3, n - 1);
        }
        Family::E => {
            // Bourbaki: chain 1-3-4-5-..., node 2 hangs off node 4.
            link(&mut c, 0, 2);
            for i in 2..n - 1 {
                link(&mut c, i, i + 1);
            }
            link(&mut c, 1, 3);
        }
        Family::F => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[2][1] = -2; // alpha_3 short, alpha_2 long
            d[0] = 2;
            d[1] = 2;
        }
        Family::G => {
            // alpha_1 short, alpha_2 long.
            c[0][1] = -3;
            c[1][0] = -1;
            d[1] = 3;
        }
    }
    (c, d)
}

/// A reduced root system with fixed simple basis and coordinate conventions.
#[derive(Debug, Clone)]
pub struct RootSystem {
    rtype: RootSystemType,
    rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`
    cartan: Vec<Vec<i64>>,
    /// Gram matrix of the simple roots, short length normalized to 2.
    gram: Vec<Vec<i64>>,
    /// All roots as coefficient vectors over the simple basis; positive
    /// roots first in (height, lex) order, then their negatives in the
    /// same order.
    roots: Vec<Vec<i64>>,
    n_pos: usize,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    /// `cartan()[i][j] = <alpha_j, alpha_i^vee>` over the simple roots.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn build(t: &RootSystemType) -> Result<RootSystem, RootError> {
        t.check()?;
        let rank = t.rank();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut gram = vec![vec![0i64; rank]; rank];
        let mut positives: Vec<Vec<i64>> = Vec::new();
        let mut offset = 0;
        for &(f, n) in &t.components {
            let (c, d) = component_data(f, n);
            for i in 0..n {
                for j in 0..n {
                    cartan[offset + i][offset + j] = c[i][j];
                    gram[offset + i][offset + j] = d[i] * c[i][j];
                }
            }
            for v in enumerate_positive(&c) {
                let mut full = vec![0i64; rank];
                full[offset..offset + n].copy_from_slice(&v);
                positives.push(full);
            }
            offset += n;
        }
        // Height, then lex on coefficients with the earlier simple root
        // weighing more (so the simple roots come out in Bourbaki order).
        positives.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| {
                for (x, y) in a.iter().zip(b.iter()) {
                    match y.cmp(x) {
                        std::cmp::Ordering::Equal => continue,
                        other => return other,
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        let n_pos = positives.len();
        let mut roots = positives;
        for i in 0..n_pos {
            let neg: Vec<i64> = roots[i].iter().map(|x| -x).collect();
            roots.push(neg);
        }
        let index = roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let rs = RootSystem { rtype: t.clone(), rank, cartan, gram, roots, n_pos, index };
        debug_assert_eq!(rs.roots.len(), t.root_count());
        Ok(rs)
    }

    pub fn rtype(&self) -> &RootSystemType {
        &self.rtype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn positive_indices(&self) -> std::ops::Range<usize> {
        0..self.n_pos
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    /// Index of the i-th simple root (they are the first `rank` positives).
    pub fn simple_index(&self, i: usize) -> usize {
        debug_assert!(self.roots[i].iter().sum::<i64>() == 1);
        i
    }

    pub fn neg(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of `a + b` if it is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let v: Vec<i64> =
            self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
        self.index_of(&v)
    }

    pub fn bilinear(&self, a: usize, b: usize) -> i64 {
        let (va, vb) = (&self.roots[a], &self.roots[b]);
        let mut acc = 0;
        for i in 0..self.rank {
            if va[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                acc += va[i] * self.gram[i][j] * vb[j];
            }
        }
        acc
    }

    /// `<beta, alpha^vee>`.
    pub fn pairing(&self, beta: usize, alpha: usize) -> i64 {
        let num = 2 * self.bilinear(beta, alpha);
        let den = self.bilinear(alpha, alpha);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Expansion coefficients of a root over the simple basis.
    pub fn m_coefficients(&self, coeffs: &[i64]) -> Result<Vec<i64>, RootError> {
        match self.index_of(coeffs) {
            Some(i) => Ok(self.roots[i].clone()),
            None => Err(RootError::NotARoot(coeffs.to_vec())),
        }
    }

    /// `(alpha,alpha)/(beta,beta)`, the ratio `<H_beta,H_beta>/<H_alpha,H_alpha>`
    /// of coroot lengths. Within one component the value lies in
    /// `{1, 2, 1/2, 3, 1/3}`.
    pub fn length_ratio(&self, beta: usize, alpha: usize) -> Rat {
        Rat::new(
            Int::from(self.bilinear(alpha, alpha)),
            Int::from(self.bilinear(beta, beta)),
        )
    }

    /// The alpha-string through beta; rejects `beta = +-alpha`.
    pub fn root_string(&self, alpha: usize, beta: usize) -> Result<RootString, RootError> {
        if beta == alpha || beta == self.neg(alpha) {
            return Err(RootError::StringDegenerate);
        }
        let step = |dir: i64| {
            let mut k = 0usize;
            loop {
                let v: Vec<i64> = self.roots[beta]
                    .iter()
                    .zip(&self.roots[alpha])
                    .map(|(b, a)| b + dir * (k as i64 + 1) * a)
                    .collect();
                if self.index_of(&v).is_some() {
                    k += 1;
                } else {
                    return k;
                }
            }
        };
        let p = step(-1);
        let q = step(1);
        debug_assert_eq!(p as i64 - q as i64, self.pairing(beta, alpha));
        Ok(RootString { p, q })
    }

    /// Coweight coordinates of the coroot `H_beta`:
    /// entry `i` is `<alpha_i, beta^vee>`.
    pub fn coroot_coords(&self, beta: usize) -> Vec<i64> {
        (0..self.rank).map(|i| self.pairing(self.simple_index(i), beta)).collect()
    }

    /// Basis of the coroot lattice in coweight coordinates
    /// (columns = simple coroots).
    pub fn coroot_basis(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rank, self.rank);
        for j in 0..self.rank {
            let col = self.coroot_coords(self.simple_index(j));
            for i in 0..self.rank {
                m[(i, j)] = Int::from(col[i]);
            }
        }
        m
    }

    /// Basis of the coweight lattice in coweight coordinates: the identity.
    pub fn coweight_basis(&self) -> IntMatrix {
        IntMatrix::identity(self.rank)
    }

    /// Evaluate the root `beta` on an element of the Cartan given in
    /// coweight coordinates.
    pub fn eval_root<S>(&self, beta: usize, h: &[S]) -> S
    where
        S: Clone + Zero + std::ops::Add<Output = S> + std::ops::Mul<Output = S> + From<i64>,
    {
        let mut acc = S::zero();
        for (i, &m) in self.roots[beta].iter().enumerate() {
            if m != 0 {
                acc = acc + S::from(m) * h[i].clone();
            }
        }
        acc
    }

    /// Invariant factors of the joint pairing map
    /// `h -> (alpha(h), beta(h))` on the coroot lattice.
    pub fn pair_lattice_divisors(&self, alpha: usize, beta: usize) -> Vec<Int> {
        let m = self.pairing_rows(&[alpha, beta]);
        m.invariant_factors()
    }

    /// Rows of pairings of the given roots against the simple coroots.
    fn pairing_rows(&self, roots: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<Int>> = roots
            .iter()
            .map(|&r| {
                (0..self.rank)
                    .map(|j| Int::from(self.pairing(r, self.simple_index(j))))
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    /// Find `h` in `R (x) Q^vee` (coordinates over the simple coroots) with
    /// the prescribed pairing values; `None` when unsolvable over `R`.
    pub fn dual_element(
        &self,
        constraints: &[(usize, Rat)],
        ring: &SLocalRing,
    ) -> Result<Option<Vec<Rat>>, RootError> {
        if constraints.len() > 2 {
            return Err(RootError::BadConstraints);
        }
        if constraints.len() == 2 {
            let (a, b) = (constraints[0].0, constraints[1].0);
            if a == b || a == self.neg(b) {
                return Err(RootError::BadConstraints);
            }
        }
        let m = self.pairing_rows(&constraints.iter().map(|c| c.0).collect::<Vec<_>>());
        // Scale to an integer right-hand side; the scale must be an R-unit
        // for the solution set over R to be preserved.
        let mut scale = Int::one();
        for (_, t) in constraints {
            scale = num_integer::Integer::lcm(&scale, t.denom());
        }
        if !ring.is_unit(&scale) && !scale.is_one() {
            return Ok(None);
        }
        let b: Vec<Int> = constraints
            .iter()
            .map(|(_, t)| (t * Rat::from_integer(scale.clone())).numer().clone())
            .collect();
        Ok(m.solve_over(&b, ring).map(|x| {
            let s = Rat::from_integer(scale.clone());
            x.into_iter().map(|q| q / s.clone()).collect()
        }))
    }

    /// Simple reflection `s_alpha(beta)` as a coefficient vector.
    pub fn reflect(&self, alpha: usize, beta: usize) -> Vec<i64> {
        let k = self.pairing(beta, alpha);
        self.roots[beta]
            .iter()
            .zip(&self.roots[alpha])
            .map(|(b, a)| b - k * a)
            .collect()
    }
}

/// Positive roots of one irreducible component from its Cartan matrix,
/// by string closure over increasing height.
fn enumerate_positive(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut known: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut by_height: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    let mut simples = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        known.insert(v.clone(), ());
        simples.push(v);
    }
    by_height.push(simples);
    let mut h = 1;
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in by_height[h].clone() {
            for i in 0..n {
                // p = how far the string continues downward
                let mut p = 0usize;
                loop {
                    let mut v = beta.clone();
                    v[i] -= p as i64 + 1;
                    if v.iter().any(|&x| x < 0) || !known.contains_key(&v) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 =
                    (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                let q = p as i64 - pairing;
                if q > 0 {
                    let mut v = beta.clone();
                    v[i] += 1;
                    if known.insert(v.clone(), ()).is_none() {
                        next.push(v);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        by_height.push(next);
        h += 1;
    }
    known.into_keys().collect()
}

/// Result of the exhaustive double-decomposition check.
#[derive(Debug, Clone)]
pub struct DecompReport {
    pub rtype: RootSystemType,
    pub tuples_checked: usize,
    /// Violating tuples `(alpha0, alpha1, beta0, beta1, gamma)` as
    /// coefficient vectors; expected empty.
    pub violations: Vec<[Vec<i64>; 5]>,
}

impl DecompReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively verify that for any two decompositions
/// `alpha0 + beta0 = gamma = alpha1 + beta1` of a positive root into
/// positive roots, each of the four pairs of cross sums contains a
/// non-root.
pub fn check_decomp_lemma(t: &RootSystemType) -> Result<DecompReport, RootError> {
    if !t.is_irreducible() || t.rank() > 3 {
        return Err(RootError::DecompRankTooLarge);
    }
    let rs = RootSystem::build(t)?;
    let mut tuples = 0;
    let mut violations = Vec::new();
    for gamma in rs.positive_indices() {
        let mut decomps = Vec::new();
        for a in rs.positive_indices() {
            for b in rs.positive_indices() {
                if rs.sum_index(a, b) == Some(gamma) {
                    decomps.push((a, b));
                }
            }
        }
        for &(a0, b0) in &decomps {
            for &(a1, b1) in &decomps {
                tuples += 1;
                let pair_bad = |x: usize, y0: usize, y1: usize| {
                    rs.sum_index(x, y0).is_some() && rs.sum_index(x, y1).is_some()
                };
                let violated = pair_bad(a0, a1, b1)
                    || pair_bad(b0, a1, b1)
                    || pair_bad(a1, a0, b0)
                    || pair_bad(b1, a0, b0);
                if violated {
                    violations.push([
                        rs.root(a0).to_vec(),
                        rs.root(a1).to_vec(),
                        rs.root(b0).to_vec(),
                        rs.root(b1).to_vec(),
                        rs.root(gamma).to_vec(),
                    ]);
                }
            }
        }
    }
    Ok(DecompReport { rtype: t.clone(), tuples_checked: tuples, violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(&RootSystemType::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn census_matches_classical_counts() {
        for (s, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 12),
            ("B2", 8),
            ("B3", 18),
            ("C3", 18),
            ("D4", 24),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("A1xA1", 4),
        ] {
            let rs = build(s);
            assert_eq!(rs.num_roots(), n, "{s}");
            assert_eq!(rs.num_positive() * 2, n, "{s}");
        }
    }

    #[test]
    fn inadmissible_rank_rejected() {
        assert!(RootSystemType::parse("E9").is_err());
        assert!(RootSystemType::parse("F3").is_err());
        assert!(RootSystemType::parse("D2").is_err());
        assert!(RootSystemType::parse("A0").is_err());
    }

    #[test]
    fn aliases_flagged() {
        assert!(RootSystemType::parse("B2").unwrap().alias_of().is_some());
        assert!(RootSystemType::parse("D3").unwrap().alias_of().is_some());
        assert!(RootSystemType::parse("B3").unwrap().alias_of().is_none());
    }

    #[test]
    fn g2_length_census() {
        let rs = build("G2");
        let mut long = 0;
        let mut short = 0;
        for i in 0..rs.num_roots() {
            match rs.bilinear(i, i) {
                2 => short += 1,
                6 => long += 1,
                other => panic!("unexpected length {other}"),
            }
        }
        assert_eq!((short, long), (6, 6));
    }

    #[test]
    fn simple_roots_come_first_in_bourbaki_order() {
        let rs = build("B3");
        for i in 0..3 {
            let mut e = vec![0i64; 3];
            e[i] = 1;
            assert_eq!(rs.root(i), &e[..]);
        }
    }

    #[test]
    fn m_coefficients_goldens() {
        let b3 = build("B3");
        // highest short root of B3
        assert!(b3.index_of(&[1, 1, 1]).is_some());
        let g2 = build("G2");
        // highest (long) root of G2
        assert!(g2.index_of(&[3, 2]).is_some());
        assert!(g2.m_coefficients(&[2, 2]).is_err());
    }

    #[test]
    fn pairing_values_bounded() {
        for s in ["A2", "B3", "C3", "D4", "G2", "F4"] {
            let rs = build(s);
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    if a == b || a == rs.neg(b) {
                        continue;
                    }
                    assert!(rs.pairing(b, a).abs() <= 3, "{s}");
                }
                assert_eq!(rs.pairing(a, a), 2);
            }
        }
    }

    #[test]
    fn length_ratios() {
        let g2 = build("G2");
        let short = 0; // alpha_1 short
        let long = 1; // alpha_2 long
        assert_eq!(g2.length_ratio(long, short), Rat::new(Int::from(1), Int::from(3)));
        assert_eq!(g2.length_ratio(short, long), Rat::from_integer(Int::from(3)));
        assert_eq!(g2.length_ratio(short, short), Rat::from_integer(Int::from(1)));
        let b2 = build("B2");
        // alpha_1 long, alpha_2 short
        assert_eq!(b2.length_ratio(0, 1), Rat::new(Int::from(1), Int::from(2)));
    }

    #[test]
    fn ratio_reciprocity() {
        let rs = build("F4");
        for a in 0..rs.num_roots() {
            for b in 0..rs.num_roots() {
                let prod = rs.length_ratio(a, b) * rs.length_ratio(b, a);
                assert!(prod.is_one());
            }
        }
    }

    #[test]
    fn root_strings() {
        let a2 = build("A2");
        let s = a2.root_string(0, 1).unwrap();
        assert_eq!((s.p, s.q), (0, 1));
        assert!(a2.root_string(0, a2.neg(0)).is_err());

        // G2: string of length 4 through the long simple root in the short
        // direction.
        let g2 = build("G2");
        let s = g2.root_string(0, 1).unwrap();
        assert_eq!((s.p, s.q), (0, 3));

        // orthogonal pair in D4
        let d4 = build("D4");
        let mut found = false;
        for a in d4.positive_indices() {
            for b in d4.positive_indices() {
                if a != b && d4.bilinear(a, b) == 0 && d4.sum_index(a, b).is_none() {
                    let s = d4.root_string(a, b).unwrap();
                    assert_eq!((s.p, s.q), (0, 0));
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn coroot_identity_fact6() {
        // H_beta = sum m_{beta,alpha} * <H_b,H_b>/<H_a,H_a> * H_alpha
        for s in ["A3", "B3", "C3", "G2", "F4", "D4"] {
            let rs = build(s);
            for beta in 0..rs.num_roots() {
                let hb = rs.coroot_coords(beta);
                let mut acc = vec![Rat::zero(); rs.rank()];
                for i in 0..rs.rank() {
                    let m = rs.root(beta)[i];
                    if m == 0 {
                        continue;
                    }
                    let ratio = rs.length_ratio(beta, rs.simple_index(i));
                    let ha = rs.coroot_coords(rs.simple_index(i));
                    for k in 0..rs.rank() {
                        acc[k] += Rat::from_integer(Int::from(m * ha[k])) * ratio.clone();
                    }
                }
                for k in 0..rs.rank() {
                    assert_eq!(acc[k], Rat::from_integer(Int::from(hb[k])), "{s}");
                }
            }
        }
    }

    #[test]
    fn weyl_reflection_closure() {
        for s in ["A2", "B3", "G2", "F4"] {
            let rs = build(s);
            for i in 0..rs.rank() {
                for b in 0..rs.num_roots() {
                    let r = rs.reflect(rs.simple_index(i), b);
                    assert!(rs.index_of(&r).is_some(), "{s}");
                }
            }
        }
    }

    #[test]
    fn pair_lattice_divisor_goldens() {
        let a1 = build("A1");
        assert_eq!(a1.pair_lattice_divisors(0, 0), vec![Int::from(2)]);

        let a2 = build("A2");
        let d = a2.pair_lattice_divisors(0, 1);
        assert_eq!(d, vec![Int::from(1), Int::from(3)]);

        // non-A irreducible types: divisors in {1,2,3}, 3 only in G2
        for s in ["B2", "B3", "C3", "D4", "F4", "G2"] {
            let rs = build(s);
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    if a == b || a == rs.neg(b) {
                        continue;
                    }
                    for f in rs.pair_lattice_divisors(a, b) {
                        let f: i64 = (&f).try_into().unwrap();
                        assert!((1..=3).contains(&f), "{s}: {f}");
                        if f == 3 {
                            assert_eq!(s, "G2");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dual_element_examples() {
        let a2 = build("A2");
        let one = Rat::from_integer(Int::from(1));
        let zero = Rat::zero();
        // alpha(h)=1, beta(h)=0 solvable over Z[1/6] (divisor 3 inverted)
        let h = a2
            .dual_element(&[(0, one.clone()), (1, zero.clone())], &SLocalRing::z_one_sixth())
            .unwrap()
            .expect("solvable");
        // check pairings: h over simple coroots; alpha_i(sum x_j H_j)
        let eval = |r: usize, h: &[Rat]| -> Rat {
            (0..2)
                .map(|j| {
                    Rat::from_integer(Int::from(a2.pairing(r, j))) * h[j].clone()
                })
                .sum()
        };
        assert_eq!(eval(0, &h), one);
        assert_eq!(eval(1, &h), zero);
        assert!(h.iter().any(|q| q.denom() == &Int::from(3)));
        // over Z: index-3 obstruction
        assert!(a2
            .dual_element(&[(0, one.clone()), (1, zero)], &SLocalRing::integers())
            .unwrap()
            .is_none());
        // single constraint alpha(h) = 2 is met by H_alpha itself
        let h = a2
            .dual_element(&[(0, Rat::from_integer(Int::from(2)))], &SLocalRing::integers())
            .unwrap()
            .expect("H_alpha works");
        assert_eq!(eval(0, &h), Rat::from_integer(Int::from(2)));
    }

    #[test]
    fn decomp_lemma_all_small_types() {
        for s in ["A1", "A2", "B2", "G2", "A3", "B3", "C3"] {
            let t = RootSystemType::parse(s).unwrap();
            let rep = check_decomp_lemma(&t).unwrap();
            assert!(rep.passed(), "{s}: {:?}", rep.violations);
        }
        assert!(check_decomp_lemma(&RootSystemType::parse("D4").unwrap()).is_err());
    }

    #[test]
    fn b3_highest_short_root_decompositions_over_full_system() {
        // All four decompositions of the highest short root as sums of two
        // roots (positive or negative), up to order.
        let rs = build("B3");
        let gamma = rs.index_of(&[1, 1, 1]).unwrap();
        let mut decomps = Vec::new();
        for a in 0..rs.num_roots() {
            for b in 0..rs.num_roots() {
                if a <= b && rs.sum_index(a, b) == Some(gamma) {
                    decomps.push((rs.root(a).to_vec(), rs.root(b).to_vec()));
                }
            }
        }
        assert_eq!(decomps.len(), 4);
        let has = |x: [i64; 3], y: [i64; 3]| {
            decomps.iter().any(|(a, b)| {
                (a == &x && b == &y) || (a == &y && b == &x)
            })
        };
        assert!(has([1, 0, 0], [0, 1, 1]));
        assert!(has([1, 1, 0], [0, 0, 1]));
        assert!(has([1, 1, 2], [0, 0, -1]));
        assert!(has([1, 2, 2], [0, -1, -1]));
    }

    #[test]
    fn alias_pairing_tables_isomorphic() {
        // B2 ~ C2 and D3 ~ A3: same multiset of invariant factors of the
        // full pairing table implies isomorphic pairing structure.
        for (s1, s2) in [("B2", "C2"), ("D3", "A3")] {
            let r1 = build(s1);
            let r2 = build(s2);
            let census = |rs: &RootSystem| {
                let mut v: Vec<(i64, i64)> = Vec::new();
                for a in 0..rs.num_roots() {
                    for b in 0..rs.num_roots() {
                        if a != b && a != rs.neg(b) {
                            v.push((rs.pairing(a, b), rs.pairing(b, a)));
                        }
                    }
                }
                v.sort();
                v
            };
            assert_eq!(census(&r1), census(&r2), "{s1} vs {s2}");
        }
    }
}
