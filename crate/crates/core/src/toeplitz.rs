//! Toeplitz matrices over GF(q) and two solvers for square systems.
//!
//! A `rows × cols` matrix is stored as its `rows + cols - 1` diagonals with
//!
//! ```text
//! entry(i, j) = diagonals[(cols - 1) + i - j]
//! ```
//!
//! so `diagonals[0]` is the top-right corner and the last entry is the
//! bottom-left one.
//!
//! [`solve_dense`] is plain Gaussian elimination and serves as the reference.
//! [`solve_structured`] never forms the matrix. For an `n × n` matrix with
//! diagonal polynomial `C(x) = Σ diagonals[m]·x^m` it runs the half-GCD on
//! `(x^(2n-1), C)`. The matrix is nonsingular exactly when the first remainder
//! of degree below `n` has degree `n - 1`; in that case the two Bezout
//! cofactors `u = t_j`, `v = t_{j+1}` of `C` around that step define a
//! Bezoutian `B = L(u)·L(vJ)ᵀ - L(v)·L(uJ)ᵀ` (triangular Toeplitz factors,
//! `J` the reversal) with `B·T = λ·I`, `λ ≠ 0`. The solution is `B·b / λ`,
//! where `λ` is read off from `T·(B·b)` and the whole identity is checked
//! against `b`. Every step is a polynomial product, so the cost is that of
//! the half-GCD, `O(M(n) log n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::PrimeField;
use crate::linalg;
use crate::poly::{deg, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ToeplitzError {
    /// `first_row[0] != first_col[0]`.
    CornerMismatch { row: u64, col: u64 },
    /// Wrong number of diagonals, or a vector of the wrong length.
    DimensionMismatch { expected: usize, got: usize },
    NotSquare { rows: usize, cols: usize },
    Empty,
    Singular,
    /// Structured solve produced a vector that does not satisfy the system.
    /// Not expected for any input; kept as a typed result instead of a panic.
    VerificationFailed,
}

impl fmt::Display for ToeplitzError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToeplitzError::CornerMismatch { row, col } => {
                write!(f, "first row starts with {row} but first column with {col}")
            }
            ToeplitzError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            ToeplitzError::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            ToeplitzError::Empty => f.write_str("empty matrix"),
            ToeplitzError::Singular => f.write_str("singular matrix"),
            ToeplitzError::VerificationFailed => f.write_str("structured solution failed verification"),
        }
    }
}

impl std::error::Error for ToeplitzError {}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Dense,
    #[default]
    Structured,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Dense => "dense",
            SolverKind::Structured => "structured",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToeplitzMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    diagonals: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToeplitzSystemSolution {
    pub x: Vec<u64>,
    pub solver_used: SolverKind,
}

impl ToeplitzMatrix {
    /// Diagonals are reduced mod q.
    pub fn new(
        field: PrimeField,
        rows: usize,
        cols: usize,
        diagonals: Vec<u64>,
    ) -> Result<Self, ToeplitzError> {
        if rows == 0 || cols == 0 {
            return Err(ToeplitzError::Empty);
        }
        if diagonals.len() != rows + cols - 1 {
            return Err(ToeplitzError::DimensionMismatch {
                expected: rows + cols - 1,
                got: diagonals.len(),
            });
        }
        let diagonals = diagonals.into_iter().map(|d| field.reduce(d)).collect();
        Ok(ToeplitzMatrix { field, rows, cols, diagonals })
    }

    pub fn from_first_row_col(
        field: PrimeField,
        first_row: &[u64],
        first_col: &[u64],
    ) -> Result<Self, ToeplitzError> {
        if first_row.is_empty() || first_col.is_empty() {
            return Err(ToeplitzError::Empty);
        }
        let (r0, c0) = (field.reduce(first_row[0]), field.reduce(first_col[0]));
        if r0 != c0 {
            return Err(ToeplitzError::CornerMismatch { row: r0, col: c0 });
        }
        let cols = first_row.len();
        // diagonals[(cols-1) - j] = row[j]; diagonals[(cols-1) + i] = col[i]
        let mut diagonals: Vec<u64> = first_row.iter().rev().copied().collect();
        diagonals.extend_from_slice(&first_col[1..]);
        Self::new(field, first_col.len(), cols, diagonals)
    }

    /// Square identity matrix.
    pub fn identity(field: PrimeField, n: usize) -> Result<Self, ToeplitzError> {
        let mut d = vec![0; 2 * n.max(1) - 1];
        d[n.max(1) - 1] = 1;
        Self::new(field, n, n, d)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn diagonals(&self) -> &[u64] {
        &self.diagonals
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.diagonals[self.cols - 1 + i - j]
    }

    pub fn first_row(&self) -> Vec<u64> {
        (0..self.cols).map(|j| self.entry(0, j)).collect()
    }

    pub fn first_col(&self) -> Vec<u64> {
        (0..self.rows).map(|i| self.entry(i, 0)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// `T · x`, computed entry by entry.
    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>, ToeplitzError> {
        if x.len() != self.cols {
            return Err(ToeplitzError::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| {
                x.iter()
                    .enumerate()
                    .fold(0, |acc, (j, &xj)| f.mul_add(self.entry(i, j), f.reduce(xj), acc))
            })
            .collect())
    }

    fn check_system(&self, b: &[u64]) -> Result<(), ToeplitzError> {
        if !self.is_square() {
            return Err(ToeplitzError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if b.len() != self.rows {
            return Err(ToeplitzError::DimensionMismatch { expected: self.rows, got: b.len() });
        }
        Ok(())
    }
}

/// Gaussian elimination on the expanded matrix.
pub fn solve_dense(t: &ToeplitzMatrix, b: &[u64]) -> Result<ToeplitzSystemSolution, ToeplitzError> {
    t.check_system(b)?;
    let b: Vec<u64> = b.iter().map(|&x| t.field.reduce(x)).collect();
    match linalg::solve(t.field, &t.to_dense(), &b) {
        Some(x) => Ok(ToeplitzSystemSolution { x, solver_used: SolverKind::Dense }),
        None => Err(ToeplitzError::Singular),
    }
}

/// Superfast solve via the half-GCD and a Bezoutian inverse (see module docs).
pub fn solve_structured(
    t: &ToeplitzMatrix,
    b: &[u64],
) -> Result<ToeplitzSystemSolution, ToeplitzError> {
    let ring = PolyRing::with_capacity(t.field, 4 * t.rows.max(1));
    solve_structured_with(&ring, t, b)
}

pub fn solve(
    t: &ToeplitzMatrix,
    b: &[u64],
    kind: SolverKind,
) -> Result<ToeplitzSystemSolution, ToeplitzError> {
    match kind {
        SolverKind::Dense => solve_dense(t, b),
        SolverKind::Structured => solve_structured(t, b),
    }
}

/// True iff `det T ≠ 0`, by elimination.
pub fn is_nonsingular(t: &ToeplitzMatrix) -> Result<bool, ToeplitzError> {
    if !t.is_square() {
        return Err(ToeplitzError::NotSquare { rows: t.rows, cols: t.cols });
    }
    Ok(linalg::rank(t.field, &t.to_dense()) == t.rows)
}

/// Nonsingularity from the degree of the half-GCD remainder, no elimination.
pub fn is_nonsingular_structured(t: &ToeplitzMatrix) -> Result<bool, ToeplitzError> {
    if !t.is_square() {
        return Err(ToeplitzError::NotSquare { rows: t.rows, cols: t.cols });
    }
    let ring = PolyRing::with_capacity(t.field, 4 * t.rows);
    Ok(bezout_pair(&ring, &t.diagonals, t.rows).is_some())
}

/// The cofactors `(u, v)` for an `n × n` system with diagonal vector `c`,
/// or `None` when the matrix is singular.
fn bezout_pair(ring: &PolyRing, c: &[u64], n: usize) -> Option<(Vec<u64>, Vec<u64>)> {
    let f = ring.field();
    if deg(c) < n as isize - 1 {
        return None;
    }
    let mut top = vec![0u64; 2 * n];
    top[2 * n - 1] = 1;
    let h = ring.hgcd(&top, c);
    if deg(&h.d) != n as isize - 1 {
        return None;
    }
    let (quot, _) = ring.divrem(&h.c, &h.d);
    let u = h.mat[1][1].clone();
    let v = crate::poly::sub_slices(f, &h.mat[0][1], &ring.mul(&quot, &u));
    debug_assert_eq!(deg(&v), n as isize);
    Some((u, v))
}

pub(crate) fn solve_structured_with(
    ring: &PolyRing,
    t: &ToeplitzMatrix,
    b: &[u64],
) -> Result<ToeplitzSystemSolution, ToeplitzError> {
    t.check_system(b)?;
    let f = t.field;
    let n = t.rows;
    let b: Vec<u64> = b.iter().map(|&x| f.reduce(x)).collect();
    let done = |x| Ok(ToeplitzSystemSolution { x, solver_used: SolverKind::Structured });
    if n == 1 {
        let inv = f.inv(t.diagonals[0]).ok_or(ToeplitzError::Singular)?;
        return done(vec![f.mul(b[0], inv)]);
    }
    let (u, v) = bezout_pair(ring, &t.diagonals, n).ok_or(ToeplitzError::Singular)?;
    if b.iter().all(|&x| x == 0) {
        return done(vec![0; n]);
    }

    let pad = |w: &[u64]| {
        let mut w = w.to_vec();
        w.resize(n + 1, 0);
        w
    };
    let (u, v) = (pad(&u), pad(&v));
    let rev = |w: &[u64]| w.iter().rev().copied().collect::<Vec<u64>>();
    let (u_rev, v_rev) = (rev(&u), rev(&v));
    // L(w)·y = (w·y) mod x^n
    let lower = |w: &[u64], y: &[u64]| {
        let mut out = ring.mul_trunc(&w[..n], y, n);
        out.resize(n, 0);
        out
    };
    // L(w)ᵀ·y = reverse of L(w)·reverse(y)
    let upper = |w: &[u64], y: &[u64]| rev(&lower(w, &rev(y)));

    let left = lower(&u, &upper(&v_rev, &b));
    let right = lower(&v, &upper(&u_rev, &b));
    let z: Vec<u64> = left.iter().zip(&right).map(|(&p, &q)| f.sub(p, q)).collect();

    // T·z is the middle of C·Z: coefficients n-1 ..= 2n-2
    let mut w = ring.mul(&t.diagonals, &z);
    w.resize(3 * n - 1, 0);
    let w = &w[n - 1..2 * n - 1];

    let i0 = b.iter().position(|&x| x != 0).expect("b is nonzero");
    let lambda = f.mul(w[i0], f.inv(b[i0]).expect("nonzero"));
    if lambda == 0 || w.iter().zip(&b).any(|(&wi, &bi)| wi != f.mul(lambda, bi)) {
        return Err(ToeplitzError::VerificationFailed);
    }
    let inv = f.inv(lambda).expect("nonzero");
    done(z.into_iter().map(|x| f.mul(x, inv)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn example() -> ToeplitzMatrix {
        ToeplitzMatrix::from_first_row_col(f(11), &[7, 4, 2], &[7, 8, 1]).unwrap()
    }

    #[test]
    fn construction_examples() {
        let id = ToeplitzMatrix::from_first_row_col(f(5), &[1, 0, 0], &[1, 0, 0]).unwrap();
        assert_eq!(id.to_dense(), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(example().to_dense(), vec![vec![7, 4, 2], vec![8, 7, 4], vec![1, 8, 7]]);
        let t = ToeplitzMatrix::from_first_row_col(f(7), &[1, 2], &[1, 3]).unwrap();
        assert_eq!(t.to_dense(), vec![vec![1, 2], vec![3, 1]]);
        assert_eq!(
            ToeplitzMatrix::from_first_row_col(f(7), &[1, 2], &[2, 3]),
            Err(ToeplitzError::CornerMismatch { row: 1, col: 2 })
        );
        assert!(matches!(
            ToeplitzMatrix::new(f(7), 2, 2, vec![1, 2]),
            Err(ToeplitzError::DimensionMismatch { expected: 3, got: 2 })
        ));
        let r = ToeplitzMatrix::from_first_row_col(f(7), &[1, 2, 3, 4], &[1, 5]).unwrap();
        assert_eq!((r.rows(), r.cols()), (2, 4));
        assert_eq!(r.first_row(), vec![1, 2, 3, 4]);
        assert_eq!(r.first_col(), vec![1, 5]);
        assert_eq!(r.entry(1, 3), 3);
    }

    #[test]
    fn example_system() {
        let t = example();
        for kind in [SolverKind::Dense, SolverKind::Structured] {
            let s = solve(&t, &[8, 1, 2], kind).unwrap();
            assert_eq!(s.x, vec![6, 1, 3]);
            assert_eq!(s.solver_used, kind);
        }
        assert!(is_nonsingular(&t).unwrap());
        assert!(is_nonsingular_structured(&t).unwrap());
    }

    #[test]
    fn trivial_systems() {
        let id = ToeplitzMatrix::identity(f(13), 4).unwrap();
        for kind in [SolverKind::Dense, SolverKind::Structured] {
            assert_eq!(solve(&id, &[3, 1, 4, 1], kind).unwrap().x, vec![3, 1, 4, 1]);
        }
        // det [[1,2],[3,1]] = -5 = 0 in GF(5): no unique solution even for b = 0
        let t = ToeplitzMatrix::from_first_row_col(f(5), &[1, 2], &[1, 3]).unwrap();
        assert!(!is_nonsingular(&t).unwrap());
        for kind in [SolverKind::Dense, SolverKind::Structured] {
            assert_eq!(solve(&t, &[0, 0], kind), Err(ToeplitzError::Singular));
        }
        let t = ToeplitzMatrix::from_first_row_col(f(5), &[1, 2], &[1, 4]).unwrap();
        for kind in [SolverKind::Dense, SolverKind::Structured] {
            assert_eq!(solve(&t, &[0, 0], kind).unwrap().x, vec![0, 0]);
        }
        let zero = ToeplitzMatrix::new(f(5), 2, 2, vec![0, 0, 0]).unwrap();
        assert!(!is_nonsingular(&zero).unwrap());
        for kind in [SolverKind::Dense, SolverKind::Structured] {
            assert_eq!(solve(&zero, &[1, 0], kind), Err(ToeplitzError::Singular));
        }
        let rect = ToeplitzMatrix::new(f(5), 2, 3, vec![1, 2, 3, 4]).unwrap();
        assert!(matches!(is_nonsingular(&rect), Err(ToeplitzError::NotSquare { .. })));
        assert!(matches!(solve_structured(&rect, &[1, 1]), Err(ToeplitzError::NotSquare { .. })));
    }

    #[test]
    fn nonsingularity_agrees_with_cofactor_determinant() {
        let mut rng = SplitMix64::new(21);
        for q in [3u64, 5, 7, 11] {
            for n in 1..=5 {
                for _ in 0..300 {
                    let d: Vec<u64> = (0..2 * n - 1).map(|_| rng.below(q)).collect();
                    let t = ToeplitzMatrix::new(f(q), n, n, d).unwrap();
                    let det = linalg::determinant_cofactor(f(q), &t.to_dense());
                    assert_eq!(is_nonsingular(&t).unwrap(), det != 0);
                    assert_eq!(is_nonsingular_structured(&t).unwrap(), det != 0);
                }
            }
        }
    }

    #[test]
    fn structured_matches_dense_including_singular_cases() {
        let mut rng = SplitMix64::new(22);
        for q in [3u64, 5, 7, 11, 257, 65537] {
            for n in 1..=40 {
                for _ in 0..20 {
                    // small fields hit singular and degenerate-remainder cases often
                    let d: Vec<u64> = (0..2 * n - 1).map(|_| rng.below(q)).collect();
                    let t = ToeplitzMatrix::new(f(q), n, n, d).unwrap();
                    let b: Vec<u64> = (0..n).map(|_| rng.below(q)).collect();
                    let dense = solve_dense(&t, &b);
                    let fast = solve_structured(&t, &b);
                    match dense {
                        Ok(s) => {
                            let x = fast.unwrap().x;
                            assert_eq!(x, s.x);
                            assert_eq!(t.mul_vec(&x).unwrap(), b);
                        }
                        Err(e) => assert_eq!(fast, Err(e)),
                    }
                }
            }
        }
    }

    #[test]
    fn large_structured_system() {
        let mut rng = SplitMix64::new(23);
        let n = 700;
        let d: Vec<u64> = (0..2 * n - 1).map(|_| rng.below(7681)).collect();
        let t = ToeplitzMatrix::new(f(7681), n, n, d).unwrap();
        let b: Vec<u64> = (0..n).map(|_| rng.below(7681)).collect();
        let x = solve_structured(&t, &b).unwrap().x;
        assert_eq!(t.mul_vec(&x).unwrap(), b);
    }
}
