//! Exact integer and rational linear algebra.
//!
//! Everything downstream (polyhedral geometry, umbrellas, multiplicities,
//! Gröbner bases) is built on the primitives in this module: arbitrary
//! precision scalars, Hermite and Smith normal forms with transforms,
//! integer kernels, and lattice bookkeeping (membership, index, saturation,
//! quotient coordinates). No floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision integer scalar.
pub type Int = BigInt;
/// Arbitrary-precision rational scalar, always reduced with positive denominator.
pub type Rat = BigRational;

/// Shorthand constructor used pervasively in tests and small computations.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Rational from a numerator/denominator pair. Panics on zero denominator.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

/// Rational from an integer.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(int(p))
}

/// Errors raised by exact linear algebra and lattice operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a sublattice")]
    NotSublattice,
    #[error("quotient is not free (sublattice not saturated)")]
    NonFreeQuotient,
    #[error("matrix is singular")]
    Singular,
}

/// Formats a rational as `p/q`, or plain `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: Int = num
        .parse()
        .map_err(|_| format!("invalid rational numerator: {s:?}"))?;
    let q: Int = den
        .parse()
        .map_err(|_| format!("invalid rational denominator: {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator: {s:?}"));
    }
    Ok(Rat::new(p, q))
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

/// Dense integer matrix, row-major. Zero rows or columns are allowed; several
/// lattice routines rely on gracefully handling 0×n and n×0 shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&v| int(v)).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_bigint_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.into_iter().flatten().collect();
        IntMatrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_columns(dim: usize, columns: &[Vec<Int>]) -> Self {
        let mut m = IntMatrix::zero(dim, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for i in 0..dim {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Int::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for j in 0..self.cols {
            let v = self.get(a, j) + q * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col[a] += q * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &Int) {
        for i in 0..self.rows {
            let v = self.get(i, a) + q * self.get(i, b);
            self.set(i, a, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| self.row(i).into_iter().map(Rat::from_integer).collect())
            .collect();
        rat_rank(&rows)
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m: Vec<Vec<Int>> = (0..n).map(|i| self.row(i)).collect();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss exact division failed");
                    m[i][j] = q;
                }
                m[i][k] = Int::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }
}

// ---------------------------------------------------------------------------
// Hermite and Smith normal forms
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form: returns (H, U) with H = U·M, U unimodular.
/// H is upper echelon with positive pivots; entries above a pivot are reduced
/// into [0, pivot).
pub fn row_hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0;
    for col in 0..h.cols() {
        if pivot_row >= h.rows() {
            break;
        }
        // Gcd-eliminate the column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..h.rows() {
                if !h.get(i, col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h.get(i, col).abs() < h.get(b, col).abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for i in pivot_row + 1..h.rows() {
                if !h.get(i, col).is_zero() {
                    let q = -h.get(i, col).div_floor(h.get(pivot_row, col));
                    h.add_row_multiple(i, pivot_row, &q);
                    u.add_row_multiple(i, pivot_row, &q);
                    if !h.get(i, col).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..pivot_row {
            let q = -h.get(i, col).div_floor(h.get(pivot_row, col));
            if !q.is_zero() {
                h.add_row_multiple(i, pivot_row, &q);
                u.add_row_multiple(i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Column-style Hermite normal form: returns (H, U) with H = M·U, U unimodular.
/// H is lower echelon by columns (zero columns last) with positive pivots;
/// entries to the left of a pivot are reduced into [0, pivot).
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (ht, ut) = row_hnf(&m.transpose());
    (ht.transpose(), ut.transpose())
}

/// Smith normal form divisors together with the left transform:
/// returns (divisors, U) where U·M·V = diag(divisors) for some unimodular V
/// (V is not returned). Divisors satisfy d₁ | d₂ | …, are nonnegative, and
/// the list has length min(rows, cols).
pub fn snf_with_left_transform(m: &IntMatrix) -> (Vec<Int>, IntMatrix) {
    let mut w = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let n = m.rows().min(m.cols());
    'outer: loop {
        let mut t = 0;
        while t < n {
            // Find the smallest nonzero entry in the trailing submatrix.
            let mut best: Option<(usize, usize)> = None;
            for i in t..w.rows() {
                for j in t..w.cols() {
                    if !w.get(i, j).is_zero() {
                        best = match best {
                            None => Some((i, j)),
                            Some((bi, bj)) => {
                                if w.get(i, j).abs() < w.get(bi, bj).abs() {
                                    Some((i, j))
                                } else {
                                    Some((bi, bj))
                                }
                            }
                        };
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            w.swap_rows(t, bi);
            u.swap_rows(t, bi);
            w.swap_cols(t, bj);
            // Clear row and column t; restart selection if a remainder appears.
            let mut clean = true;
            for i in t + 1..w.rows() {
                if !w.get(i, t).is_zero() {
                    let q = -w.get(i, t).div_floor(w.get(t, t));
                    w.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                    if !w.get(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..w.cols() {
                if !w.get(t, j).is_zero() {
                    let q = -w.get(t, j).div_floor(w.get(t, t));
                    w.add_col_multiple(j, t, &q);
                    if !w.get(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            t += 1;
        }
        // Enforce the divisibility chain; a violation re-enters elimination.
        for i in 0..n.saturating_sub(1) {
            let a = w.get(i, i).clone();
            let b = w.get(i + 1, i + 1).clone();
            if !a.is_zero() && !b.mod_floor(&a).is_zero() {
                w.add_row_multiple(i, i + 1, &Int::one());
                u.add_row_multiple(i, i + 1, &Int::one());
                continue 'outer;
            }
        }
        break;
    }
    let mut divisors = Vec::with_capacity(n);
    for i in 0..n {
        if w.get(i, i).is_negative() {
            w.negate_row(i);
            u.negate_row(i);
        }
        divisors.push(w.get(i, i).clone());
    }
    // Zero divisors sort to the end by construction of the elimination.
    (divisors, u)
}

/// Smith normal form divisors of `m`.
pub fn snf(m: &IntMatrix) -> Vec<Int> {
    snf_with_left_transform(m).0
}

/// Basis of the integer kernel {u : M·u = 0}, as a lattice in Z^cols.
/// Kernels of integer matrices are automatically saturated.
pub fn integer_kernel(m: &IntMatrix) -> LatticeBasis {
    if m.rows() == 0 {
        // No constraints: the kernel is all of Z^cols.
        return LatticeBasis::full(m.cols());
    }
    let (h, u) = hnf(m);
    let mut cols = Vec::new();
    for j in 0..h.cols() {
        if h.is_zero_column(j) {
            cols.push(u.column(j));
        }
    }
    LatticeBasis::from_columns(m.cols(), &cols)
}

// ---------------------------------------------------------------------------
// Rational linear algebra
// ---------------------------------------------------------------------------

/// Rank of a rational matrix given as a list of rows.
pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &pivot;
                for j in col..ncols {
                    let v = &m[i][j] - &f * &m[rank][j];
                    m[i][j] = v;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solves A·x = b over the rationals. Returns `None` when inconsistent;
/// otherwise one solution (free variables pinned to zero, deterministic).
pub fn rat_solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    assert_eq!(m, b.len(), "rhs length mismatch");
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "ragged system");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let pivot = aug[rank][col].clone();
        for j in col..=n {
            let v = &aug[rank][j] / &pivot;
            aug[rank][j] = v;
        }
        for i in 0..m {
            if i != rank && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in col..=n {
                    let v = &aug[i][j] - &f * &aug[rank][j];
                    aug[i][j] = v;
                }
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == m {
            break;
        }
    }
    for i in rank..m {
        if !aug[i][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for &(r, c) in &pivots {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

/// Index of a sublattice: finite positive integer, or infinite when the
/// ranks differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

impl LatticeIndex {
    pub fn expect_finite(&self) -> &Int {
        match self {
            LatticeIndex::Finite(v) => v,
            LatticeIndex::Infinite => panic!("expected finite lattice index"),
        }
    }
}

/// A sublattice of Z^d, stored as a canonical (column Hermite form) basis
/// with zero columns dropped. Two equal lattices always compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    ambient_dim: usize,
    /// ambient_dim × rank matrix whose columns form the canonical basis.
    basis: IntMatrix,
}

impl LatticeBasis {
    /// The zero lattice in Z^dim.
    pub fn zero(dim: usize) -> Self {
        LatticeBasis {
            ambient_dim: dim,
            basis: IntMatrix::zero(dim, 0),
        }
    }

    /// All of Z^dim.
    pub fn full(dim: usize) -> Self {
        LatticeBasis {
            ambient_dim: dim,
            basis: IntMatrix::identity(dim),
        }
    }

    /// Lattice generated by the given vectors in Z^dim (canonicalized).
    pub fn from_columns(dim: usize, generators: &[Vec<Int>]) -> Self {
        let m = IntMatrix::from_columns(dim, generators);
        let (h, _) = hnf(&m);
        let cols: Vec<Vec<Int>> = (0..h.cols())
            .filter(|&j| !h.is_zero_column(j))
            .map(|j| h.column(j))
            .collect();
        LatticeBasis {
            ambient_dim: dim,
            basis: IntMatrix::from_columns(dim, &cols),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis_matrix(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Int>> {
        (0..self.rank()).map(|j| self.basis.column(j)).collect()
    }

    /// Integer coordinates of `v` in this basis, or `None` if `v` is not a
    /// lattice member. Exploits the echelon shape of the canonical basis.
    pub fn coordinates_of(&self, v: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(v.len(), self.ambient_dim, "vector dimension mismatch");
        let mut rem: Vec<Int> = v.to_vec();
        let mut coords = vec![Int::zero(); self.rank()];
        for j in 0..self.rank() {
            // Pivot row of column j: first nonzero entry.
            let pivot_row = (0..self.ambient_dim)
                .find(|&i| !self.basis.get(i, j).is_zero())
                .expect("canonical basis has no zero columns");
            let target = rem[pivot_row].clone();
            if target.is_zero() {
                continue;
            }
            let pivot = self.basis.get(pivot_row, j);
            let (q, r) = target.div_rem(pivot);
            if !r.is_zero() {
                return None;
            }
            for i in 0..self.ambient_dim {
                let v = &rem[i] - &q * self.basis.get(i, j);
                rem[i] = v;
            }
            coords[j] = q;
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Evaluates an integer combination of the basis vectors.
    pub fn member_from_coordinates(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.rank());
        self.basis.mul_vec(coords)
    }
}

/// Expresses each generator of `sub` in the basis of `sup`;
/// errors with `NotSublattice` if any generator falls outside `sup`.
fn coords_in(sup: &LatticeBasis, sub: &LatticeBasis) -> Result<IntMatrix, ExactError> {
    if sup.ambient_dim() != sub.ambient_dim() {
        return Err(ExactError::DimensionMismatch(format!(
            "ambient {} vs {}",
            sup.ambient_dim(),
            sub.ambient_dim()
        )));
    }
    let mut cols = Vec::with_capacity(sub.rank());
    for j in 0..sub.rank() {
        let v = sub.basis_matrix().column(j);
        let c = sup.coordinates_of(&v).ok_or(ExactError::NotSublattice)?;
        cols.push(c);
    }
    Ok(IntMatrix::from_columns(sup.rank(), &cols))
}

/// Index [sup : sub] of a sublattice. Infinite when ranks differ; errors
/// when `sub` is not contained in `sup`.
pub fn lattice_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<LatticeIndex, ExactError> {
    let coords = coords_in(sup, sub)?;
    if sub.rank() < sup.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    // Equal ranks: the coordinate matrix is square.
    let d = coords.det().abs();
    debug_assert!(!d.is_zero(), "equal-rank sublattice with zero determinant");
    Ok(LatticeIndex::Finite(d))
}

/// Saturation of `sub` inside `ambient`: ambient ∩ Q·span(sub).
/// The result contains `sub` with finite index and is saturated in `ambient`.
pub fn saturation(sub: &LatticeBasis, ambient: &LatticeBasis) -> Result<LatticeBasis, ExactError> {
    let coords = coords_in(ambient, sub)?;
    let m = ambient.rank();
    if sub.rank() == 0 {
        return Ok(LatticeBasis::zero(ambient.ambient_dim()));
    }
    // x ∈ Q-colspan(coords)  ⟺  x ⟂ kernel(coordsᵀ).
    let perp = integer_kernel(&coords.transpose());
    let sat_coords = if perp.rank() == 0 {
        LatticeBasis::full(m)
    } else {
        let perp_t = perp.basis_matrix().transpose();
        integer_kernel(&perp_t)
    };
    let vectors: Vec<Vec<Int>> = (0..sat_coords.rank())
        .map(|j| ambient.member_from_coordinates(&sat_coords.basis_matrix().column(j)))
        .collect();
    Ok(LatticeBasis::from_columns(ambient.ambient_dim(), &vectors))
}

/// Surjective integer-linear map sup → Z^{rank(sup) − rank(sub)} with kernel
/// exactly `sub`. Requires `sub` saturated in `sup` (`NonFreeQuotient`
/// otherwise). Derived from the Smith normal form, hence deterministic.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    sup: LatticeBasis,
    left: IntMatrix,
    sub_rank: usize,
}

impl QuotientMap {
    /// Rank of the quotient (the dimension of the target Z^k).
    pub fn rank(&self) -> usize {
        self.sup.rank() - self.sub_rank
    }

    /// Image of an ambient vector, or `None` when it is not in `sup`.
    pub fn apply(&self, v: &[Int]) -> Option<Vec<Int>> {
        let c = self.sup.coordinates_of(v)?;
        let y = self.left.mul_vec(&c);
        Some(y[self.sub_rank..].to_vec())
    }
}

pub fn quotient_coordinates(
    sup: &LatticeBasis,
    sub: &LatticeBasis,
) -> Result<QuotientMap, ExactError> {
    let coords = coords_in(sup, sub)?;
    let r = sub.rank();
    if r == 0 {
        return Ok(QuotientMap {
            sup: sup.clone(),
            left: IntMatrix::identity(sup.rank()),
            sub_rank: 0,
        });
    }
    let (divisors, u) = snf_with_left_transform(&coords);
    if divisors.iter().take(r).any(|d| !d.is_one()) {
        return Err(ExactError::NonFreeQuotient);
    }
    Ok(QuotientMap {
        sup: sup.clone(),
        left: u,
        sub_rank: r,
    })
}
