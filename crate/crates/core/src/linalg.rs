//! Dense Gaussian elimination over GF(q) on row-major `Vec<Vec<u64>>`.

use crate::field::PrimeField;

/// Reduces `m` in place to row echelon form. Returns the rank and the
/// determinant factor (product of pivots with sign), the latter meaningful
/// only for square input.
fn eliminate(f: PrimeField, m: &mut [Vec<u64>], rhs: Option<&mut Vec<u64>>) -> (usize, u64) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rhs = rhs;
    let mut rank = 0;
    let mut det = 1u64;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else {
            det = 0;
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            if let Some(b) = rhs.as_deref_mut() {
                b.swap(p, rank);
            }
            det = f.neg(det);
        }
        let pivot = m[rank][col];
        det = f.mul(det, pivot);
        let inv = f.inv(pivot).expect("nonzero pivot");
        for x in m[rank][col..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        if let Some(b) = rhs.as_deref_mut() {
            b[rank] = f.mul(b[rank], inv);
        }
        let (top, bottom) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for (off, row) in bottom.iter_mut().enumerate() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            let nf = f.neg(factor);
            for (x, &y) in row[col..].iter_mut().zip(&prow[col..]) {
                *x = f.mul_add(nf, y, *x);
            }
            if let Some(b) = rhs.as_deref_mut() {
                let pb = b[rank];
                b[rank + 1 + off] = f.mul_add(nf, pb, b[rank + 1 + off]);
            }
        }
        rank += 1;
    }
    if rank < rows.min(cols) || rows != cols {
        det = 0;
    }
    (rank, det)
}

pub(crate) fn rank(f: PrimeField, m: &[Vec<u64>]) -> usize {
    let mut work = m.to_vec();
    eliminate(f, &mut work, None).0
}

/// Determinant of a square matrix; 1 for the empty matrix.
pub(crate) fn determinant(f: PrimeField, m: &[Vec<u64>]) -> u64 {
    if m.is_empty() {
        return 1;
    }
    let mut work = m.to_vec();
    eliminate(f, &mut work, None).1
}

/// Unique solution of the square system `m · x = b`, or `None` if singular.
pub(crate) fn solve(f: PrimeField, m: &[Vec<u64>], b: &[u64]) -> Option<Vec<u64>> {
    let n = m.len();
    let mut work = m.to_vec();
    let mut rhs = b.to_vec();
    let (rank, _) = eliminate(f, &mut work, Some(&mut rhs));
    if rank < n {
        return None;
    }
    // unit upper triangular now
    let mut x = vec![0u64; n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for j in i + 1..n {
            acc = f.sub(acc, f.mul(work[i][j], x[j]));
        }
        x[i] = acc;
    }
    Some(x)
}

/// Cofactor expansion along the first row; exponential, for cross-checks on
/// tiny matrices only.
pub(crate) fn determinant_cofactor(f: PrimeField, m: &[Vec<u64>]) -> u64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0u64;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<u64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
            .collect();
        let term = f.mul(m[0][j], determinant_cofactor(f, &minor));
        acc = if j % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
    }
    acc
}
