//! Dense exact matrices and integer lattice algorithms.
//!
//! The matrix type is generic over its scalar; the normal-form algorithms
//! require an integer-like scalar (`num_integer::Integer + Signed`), the
//! solvers a field-like one. Everything is naive dense elimination with a
//! smallest-pivot strategy against entry blow-up, plus a hard size guard
//! (`WEDGEKERNEL_MAX_ENTRY_BITS`) on intermediate entries.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ring::SLocalRing;
use crate::{Int, IntMatrix, Rat, RatMatrix};

/// Dense row-major matrix with immutable dimensions.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("a generator column lies outside the rational span of the lattice")]
    OutsideSpan,
    #[error("lattice does not have full column rank")]
    LatticeRankDeficient,
    #[error("coordinate matrix is not integral; relative invariant factors are only defined for integral coordinates")]
    NonIntegralCoordinates,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<T>>) -> Self {
        Matrix::from_rows(cols).transpose()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out: Matrix<T> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() {
                        acc = acc + self[(i, j)].clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }
}

fn max_entry_bits() -> u64 {
    std::env::var("WEDGEKERNEL_MAX_ENTRY_BITS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1 << 20)
}

fn guard(n: &Int, limit: u64) {
    if n.bits() > limit {
        panic!(
            "intermediate entry exceeded {limit} bits during exact elimination; \
             raise WEDGEKERNEL_MAX_ENTRY_BITS if this is intended"
        );
    }
}

// Integer normal forms. These are specific to arbitrary-precision integers
// because of the size guard; the generic scalar story covers the arithmetic
// layers above, not the elimination kernels.
impl IntMatrix {
    /// Canonical row Hermite normal form with transform: returns `(H, U)`
    /// with `U` unimodular, `H = U * self`, positive pivots, and entries
    /// above each pivot reduced into `[0, pivot)`.
    pub fn hnf(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        hnf_in_place(&mut h, Some(&mut u));
        (h, u)
    }

    /// Row Hermite normal form without the transform.
    pub fn hnf_no_transform(&self) -> IntMatrix {
        let mut h = self.clone();
        hnf_in_place(&mut h, None);
        h
    }

    /// Smith normal form with transforms: `(D, U, V)` with `U`, `V`
    /// unimodular, `D = U * self * V` diagonal, nonnegative, and
    /// `d1 | d2 | ...`.
    pub fn snf(&self) -> (IntMatrix, IntMatrix, IntMatrix) {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        snf_in_place(&mut d, Some((&mut u, &mut v)));
        (d, u, v)
    }

    /// The nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        // Compress to an echelon basis of the column lattice first; the
        // transform-free SNF then runs on a rank x cols matrix.
        let ech = self.transpose().hnf_no_transform();
        let mut nonzero: Vec<Vec<Int>> = Vec::new();
        for i in 0..ech.rows() {
            let row = ech.row(i);
            if row.iter().any(|x| !x.is_zero()) {
                nonzero.push(row);
            }
        }
        if nonzero.is_empty() {
            return vec![];
        }
        let mut d = Matrix::from_rows(nonzero);
        snf_in_place(&mut d, None);
        let mut out = Vec::new();
        for i in 0..d.rows().min(d.cols()) {
            if !d[(i, i)].is_zero() {
                out.push(d[(i, i)].clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// A basis for the lattice `{x : self * x = 0}`, returned as columns.
    /// The result is automatically saturated.
    pub fn kernel_basis(&self) -> IntMatrix {
        // Zero columns contribute standard basis vectors directly.
        let mut zero_cols = Vec::new();
        let mut live_cols = Vec::new();
        for j in 0..self.cols {
            if (0..self.rows).all(|i| self[(i, j)].is_zero()) {
                zero_cols.push(j);
            } else {
                live_cols.push(j);
            }
        }
        let mut basis: Vec<Vec<Int>> = zero_cols
            .iter()
            .map(|&j| {
                let mut v = vec![Int::zero(); self.cols];
                v[j] = Int::one();
                v
            })
            .collect();
        if !live_cols.is_empty() {
            let sub = Matrix::from_rows(
                live_cols.iter().map(|&j| self.column(j)).collect(),
            );
            // Row HNF of the transposed live submatrix: rows of U mapping to
            // zero rows of H span the kernel of the live part.
            let (h, u) = sub.hnf();
            for i in 0..h.rows() {
                if (0..h.cols()).all(|j| h[(i, j)].is_zero()) {
                    let mut v = vec![Int::zero(); self.cols];
                    for (k, &j) in live_cols.iter().enumerate() {
                        v[j] = u[(i, k)].clone();
                    }
                    basis.push(v);
                }
            }
        }
        if basis.is_empty() {
            Matrix::zero(self.cols, 0)
        } else {
            Matrix::from_cols(basis)
        }
    }

    /// Invariant factors of the coordinate matrix of `gens` with respect to
    /// the column basis `lattice`, padded with zeros up to `rank(lattice)`.
    ///
    /// The span of `gens` over a localization `R` coincides with the
    /// `R`-span of `lattice` exactly when every returned factor is an
    /// `R`-unit.
    pub fn relative_invariant_factors(
        gens: &IntMatrix,
        lattice: &IntMatrix,
    ) -> Result<Vec<Int>, MatrixError> {
        let coords = Self::coordinates_in(gens, lattice)?;
        let mut int_rows: Vec<Vec<Int>> = Vec::with_capacity(coords.rows());
        for i in 0..coords.rows() {
            let mut row = Vec::with_capacity(coords.cols());
            for j in 0..coords.cols() {
                let q = &coords[(i, j)];
                if !q.denom().is_one() {
                    return Err(MatrixError::NonIntegralCoordinates);
                }
                row.push(q.numer().clone());
            }
            int_rows.push(row);
        }
        let c = if coords.rows() == 0 {
            IntMatrix::zero(0, coords.cols())
        } else {
            Matrix::from_rows(int_rows)
        };
        let mut factors = c.invariant_factors();
        while factors.len() < lattice.cols() {
            factors.push(Int::zero());
        }
        Ok(factors)
    }

    /// Rational coordinates `C` with `lattice * C = gens`, or an error if a
    /// column of `gens` is outside the rational span of `lattice`.
    pub fn coordinates_in(
        gens: &IntMatrix,
        lattice: &IntMatrix,
    ) -> Result<RatMatrix, MatrixError> {
        assert_eq!(gens.rows(), lattice.rows());
        let l = lattice.to_rational();
        let g = gens.to_rational();
        match RatMatrix::solve_columns(&l, &g) {
            Some(c) => Ok(c),
            None => {
                // Distinguish rank deficiency from span violation.
                if lattice.rank() < lattice.cols() {
                    Err(MatrixError::LatticeRankDeficient)
                } else {
                    Err(MatrixError::OutsideSpan)
                }
            }
        }
    }

    /// Solve `self * x = b` with `x` over the localization `R`; returns
    /// `None` when no solution exists over `R`.
    ///
    /// Ties between solutions are broken deterministically by taking the
    /// particular solution with zero free coordinates in the SNF
    /// back-substitution.
    pub fn solve_over(&self, b: &[Int], ring: &SLocalRing) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let (d, u, v) = self.snf();
        let c = u.mul_vec(b);
        let n = self.rows.min(self.cols);
        let mut y = vec![Rat::zero(); self.cols];
        for i in 0..self.rows {
            let di = if i < n { d[(i, i)].clone() } else { Int::zero() };
            if di.is_zero() {
                if !c[i].is_zero() {
                    return None;
                }
            } else {
                let q = Rat::new(c[i].clone(), di);
                if !ring.is_unit(q.denom()) {
                    return None;
                }
                y[i] = q;
            }
        }
        let vr = v.to_rational();
        let x = vr.mul_vec(&y);
        if x.iter().all(|q| ring.contains(q)) {
            Some(x)
        } else {
            None
        }
    }

    /// Whether `v` lies in the integer span of the columns of `self`.
    pub fn contains_in_column_span(&self, v: &[Int]) -> bool {
        self.solve_over(v, &SLocalRing::integers()).is_some()
    }

    pub fn to_rational(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = Rat::from_integer(self[(i, j)].clone());
            }
        }
        out
    }
}

impl RatMatrix {
    /// Scale a rational matrix into an integer matrix and per-column
    /// denominators: column `j` of the result is `denoms[j]` times column
    /// `j` of `self`.
    pub fn clear_denominators(&self) -> (IntMatrix, Vec<Int>) {
        let mut out = IntMatrix::zero(self.rows, self.cols);
        let mut denoms = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut d = Int::one();
            for i in 0..self.rows {
                d = d.lcm(self[(i, j)].denom());
            }
            for i in 0..self.rows {
                let scaled = &self[(i, j)] * Rat::from_integer(d.clone());
                debug_assert!(scaled.denom().is_one());
                out[(i, j)] = scaled.numer().clone();
            }
            denoms.push(d);
        }
        (out, denoms)
    }

    /// Solve `a * X = b` column by column over the rationals; `None` when
    /// some column of `b` is outside the column span of `a` or the solution
    /// is not unique (rank-deficient `a`).
    pub fn solve_columns(a: &RatMatrix, b: &RatMatrix) -> Option<RatMatrix> {
        assert_eq!(a.rows(), b.rows());
        // Gauss-Jordan on [a | b].
        let mut m = RatMatrix::zero(a.rows(), a.cols() + b.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m[(i, j)] = a[(i, j)].clone();
            }
            for j in 0..b.cols() {
                m[(i, a.cols() + j)] = b[(i, j)].clone();
            }
        }
        let mut pivot_row_of_col = vec![usize::MAX; a.cols()];
        let mut pr = 0;
        for pc in 0..a.cols() {
            let Some(r) = (pr..a.rows()).find(|&r| !m[(r, pc)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = m[(pr, pc)].recip();
            for j in pc..m.cols() {
                m[(pr, j)] = m[(pr, j)].clone() * inv.clone();
            }
            for r in 0..a.rows() {
                if r != pr && !m[(r, pc)].is_zero() {
                    let f = m[(r, pc)].clone();
                    for j in pc..m.cols() {
                        let t = f.clone() * m[(pr, j)].clone();
                        m[(r, j)] = m[(r, j)].clone() - t;
                    }
                }
            }
            pivot_row_of_col[pc] = pr;
            pr += 1;
        }
        if pivot_row_of_col.iter().any(|&r| r == usize::MAX) {
            return None; // rank-deficient: no unique coordinates
        }
        // Consistency: rows beyond the rank must be zero on the b side.
        for r in pr..a.rows() {
            for j in 0..b.cols() {
                if !m[(r, a.cols() + j)].is_zero() {
                    return None;
                }
            }
        }
        let mut x = RatMatrix::zero(a.cols(), b.cols());
        for pc in 0..a.cols() {
            let r = pivot_row_of_col[pc];
            for j in 0..b.cols() {
                x[(pc, j)] = m[(r, a.cols() + j)].clone();
            }
        }
        Some(x)
    }

    pub fn mul_int(&self, other: &IntMatrix) -> RatMatrix {
        self.mul(&other.to_rational())
    }
}

/// In-place canonical row HNF; `u` receives the same row operations.
fn hnf_in_place(m: &mut IntMatrix, mut u: Option<&mut IntMatrix>) {
    let limit = max_entry_bits();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pr = 0;
    for pc in 0..cols {
        if pr == rows {
            break;
        }
        // Reduce rows pr.. in column pc until a single nonzero remains,
        // always pivoting on the smallest magnitude to control growth.
        loop {
            let mut best: Option<usize> = None;
            for r in pr..rows {
                if !m[(r, pc)].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) if m[(r, pc)].abs() < m[(b, pc)].abs() => Some(r),
                        keep => keep,
                    };
                }
            }
            let Some(b) = best else { break };
            m.swap_rows(pr, b);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(pr, b);
            }
            let mut done = true;
            let pivot = m[(pr, pc)].clone();
            for r in pr + 1..rows {
                if m[(r, pc)].is_zero() {
                    continue;
                }
                let q = div_round(&m[(r, pc)], &pivot);
                row_sub_mul(m, r, pr, &q, limit);
                if let Some(u) = u.as_deref_mut() {
                    row_sub_mul(u, r, pr, &q, limit);
                }
                if !m[(r, pc)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[(pr, pc)].is_zero() {
            continue;
        }
        if m[(pr, pc)].is_negative() {
            row_negate(m, pr);
            if let Some(u) = u.as_deref_mut() {
                row_negate(u, pr);
            }
        }
        // Reduce entries above the pivot into [0, pivot).
        let pivot = m[(pr, pc)].clone();
        for r in 0..pr {
            let q = m[(r, pc)].div_floor(&pivot);
            if !q.is_zero() {
                row_sub_mul(m, r, pr, &q, limit);
                if let Some(u) = u.as_deref_mut() {
                    row_sub_mul(u, r, pr, &q, limit);
                }
            }
        }
        pr += 1;
    }
}

/// Round-to-nearest quotient; keeps remainders in [-|b|/2, |b|/2].
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    let two_r: Int = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn row_sub_mul(m: &mut IntMatrix, target: usize, source: usize, q: &Int, limit: u64) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let t = &m[(source, j)] * q;
        let v = &m[(target, j)] - t;
        guard(&v, limit);
        m[(target, j)] = v;
    }
}

fn row_negate(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        m[(r, j)] = -m[(r, j)].clone();
    }
}

fn col_sub_mul(m: &mut IntMatrix, target: usize, source: usize, q: &Int, limit: u64) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let t = &m[(i, source)] * q;
        let v = &m[(i, target)] - t;
        guard(&v, limit);
        m[(i, target)] = v;
    }
}

fn col_swap(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = x;
    }
}

/// In-place SNF; transforms receive the matching row/column operations.
fn snf_in_place(m: &mut IntMatrix, mut uv: Option<(&mut IntMatrix, &mut IntMatrix)>) {
    let limit = max_entry_bits();
    let n = m.rows().min(m.cols());
    let mut t = 0;
    while t < n {
        // Locate the smallest nonzero entry in the trailing submatrix.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows() {
            for j in t..m.cols() {
                if !m[(i, j)].is_zero() {
                    best = match best {
                        None => Some((i, j)),
                        Some(b) if m[(i, j)].abs() < m[b].abs() => Some((i, j)),
                        keep => keep,
                    };
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(t, bi);
        col_swap(m, t, bj);
        if let Some((u, v)) = uv.as_mut() {
            u.swap_rows(t, bi);
            col_swap(v, t, bj);
        }
        // Clear row and column t; repeat while elimination reintroduces
        // entries (nonzero remainders swap into the pivot position).
        loop {
            let mut clean = true;
            let pivot = m[(t, t)].clone();
            for i in t + 1..m.rows() {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let q = div_round(&m[(i, t)], &pivot);
                row_sub_mul(m, i, t, &q, limit);
                if let Some((u, _)) = uv.as_mut() {
                    row_sub_mul(u, i, t, &q, limit);
                }
                if !m[(i, t)].is_zero() {
                    // Remainder becomes the new, smaller pivot; restart.
                    m.swap_rows(t, i);
                    if let Some((u, _)) = uv.as_mut() {
                        u.swap_rows(t, i);
                    }
                    clean = false;
                    break;
                }
            }
            if !clean {
                continue;
            }
            let pivot = m[(t, t)].clone();
            for j in t + 1..m.cols() {
                if m[(t, j)].is_zero() {
                    continue;
                }
                let q = div_round(&m[(t, j)], &pivot);
                col_sub_mul(m, j, t, &q, limit);
                if let Some((_, v)) = uv.as_mut() {
                    col_sub_mul(v, j, t, &q, limit);
                }
                if !m[(t, j)].is_zero() {
                    col_swap(m, t, j);
                    if let Some((_, v)) = uv.as_mut() {
                        col_swap(v, t, j);
                    }
                    clean = false;
                    break;
                }
            }
            if clean {
                break;
            }
        }
        // The pivot must divide the whole trailing submatrix.
        let pivot = m[(t, t)].clone();
        let mut offender = None;
        'scan: for i in t + 1..m.rows() {
            for j in t + 1..m.cols() {
                if !(&m[(i, j)] % &pivot).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            // Fold the offending row into row t and redo this pivot.
            for j in 0..m.cols() {
                let v = &m[(t, j)] + &m[(i, j)];
                guard(&v, limit);
                m[(t, j)] = v;
            }
            if let Some((u, _)) = uv.as_mut() {
                for j in 0..u.cols() {
                    let v = &u[(t, j)] + &u[(i, j)];
                    guard(&v, limit);
                    u[(t, j)] = v;
                }
            }
            continue;
        }
        if m[(t, t)].is_negative() {
            row_negate(m, t);
            if let Some((u, _)) = uv.as_mut() {
                row_negate(u, t);
            }
        }
        t += 1;
    }
    // Normalize any leftover signs on the diagonal (zeros already sort last
    // because elimination always finds a nonzero pivot first).
    for i in 0..n {
        if m[(i, i)].is_negative() {
            row_negate(m, i);
            if let Some((u, _)) = uv.as_mut() {
                row_negate(u, i);
            }
        }
    }
}
