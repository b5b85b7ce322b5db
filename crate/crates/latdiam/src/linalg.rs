//! Exact integer linear algebra on small matrices.
//!
//! Everything here is fraction-free: determinants and ranks are computed with
//! the Bareiss scheme in checked `i128`, so intermediate values stay bounded by
//! minors of the input and overflow is reported rather than wrapped.

use crate::error::{Error, Result};

pub(crate) fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow)
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Greatest common divisor of a vector's entries (0 for the zero vector).
pub(crate) fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Exact dot product of two `i64` vectors, checked.
pub(crate) fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc: i128 = 0;
    for (&x, &y) in a.iter().zip(b) {
        acc = checked_add(acc, checked_mul(x as i128, y as i128)?)?;
    }
    to_i64(acc)
}

/// Bareiss fraction-free elimination. Returns (rank, determinant) where the
/// determinant is meaningful only for square full-rank input (0 otherwise).
fn bareiss(mut m: Vec<Vec<i128>>) -> Result<(usize, i128)> {
    let rows = m.len();
    if rows == 0 {
        return Ok((0, 1));
    }
    let cols = m[0].len();
    let mut prev: i128 = 1;
    let mut sign: i128 = 1;
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        // Pivot search in this column.
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else {
            col += 1;
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = checked_add(
                    checked_mul(m[r][c], m[rank][col])?,
                    -checked_mul(m[r][col], m[rank][c])?,
                )?;
                // Exact division is guaranteed by the Bareiss identity.
                m[r][c] = num / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        col += 1;
    }
    let det = if rank == rows && rows == cols {
        sign * prev
    } else {
        0
    };
    Ok((rank, det))
}

pub(crate) fn rank(rows: &[Vec<i128>]) -> Result<usize> {
    Ok(bareiss(rows.to_vec())?.0)
}

/// Determinant of a square matrix given as rows.
pub(crate) fn det(rows: &[Vec<i128>]) -> Result<i128> {
    debug_assert!(rows.iter().all(|r| r.len() == rows.len()));
    Ok(bareiss(rows.to_vec())?.1)
}

/// Rank of the set of i64 row vectors.
pub(crate) fn rank_i64(rows: &[&[i64]]) -> Result<usize> {
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    rank(&m)
}

/// Number of affinely independent points minus one: the dimension of the
/// affine hull of `points`.
pub(crate) fn affine_dim(points: &[&[i64]]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyInput);
    };
    let diffs: Vec<Vec<i128>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(first.iter())
                .map(|(&a, &b)| a as i128 - b as i128)
                .collect()
        })
        .collect();
    rank(&diffs)
}

/// Greedily pick indices of points forming a maximal affinely independent
/// subset, starting from `points[0]`.
pub(crate) fn affine_basis<P: AsRef<[i64]>>(points: &[P]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let base = points[0].as_ref();
    let mut picked = vec![0usize];
    let mut diffs: Vec<Vec<i128>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        let d: Vec<i128> = p
            .as_ref()
            .iter()
            .zip(base.iter())
            .map(|(&a, &b)| a as i128 - b as i128)
            .collect();
        diffs.push(d);
        if rank(&diffs)? == diffs.len() {
            picked.push(i);
        } else {
            diffs.pop();
        }
    }
    Ok(picked)
}

/// Integer normal of the hyperplane spanned by `d - 1` direction vectors in
/// dimension `d`, via cofactor expansion. The result is reduced to content 1.
/// Returns an error if the directions do not span a hyperplane.
pub(crate) fn hyperplane_normal(dirs: &[Vec<i128>], d: usize) -> Result<Vec<i64>> {
    debug_assert_eq!(dirs.len(), d - 1);
    let mut normal = vec![0i64; d];
    for i in 0..d {
        // Minor omitting column i.
        let minor: Vec<Vec<i128>> = dirs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let cof = det(&minor)?;
        normal[i] = to_i64(if i % 2 == 0 { cof } else { -cof })?;
    }
    let g = content(&normal);
    if g == 0 {
        return Err(Error::Degenerate {
            affine_dim: rank(dirs)?,
            required: d - 1,
        });
    }
    for x in &mut normal {
        *x /= g;
    }
    Ok(normal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(det(&[vec![2, 0], vec![0, 3]]).unwrap(), 6);
        assert_eq!(det(&[vec![1, 2], vec![3, 4]]).unwrap(), -2);
        assert_eq!(
            det(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]).unwrap(),
            0
        );
        assert_eq!(
            det(&[vec![3, 1, 0], vec![1, 3, 1], vec![0, 1, 3]]).unwrap(),
            21
        );
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]).unwrap(), 1);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap(), 2);
        assert_eq!(rank(&[]).unwrap(), 0);
    }

    #[test]
    fn normal_is_primitive_and_orthogonal() {
        let n = hyperplane_normal(&[vec![2, 2, 0], vec![0, 0, 3]], 3).unwrap();
        assert_eq!(content(&n), 1);
        assert_eq!(n[0] * 2 + n[1] * 2, 0);
        assert_eq!(n[2] * 3, 0);
    }

    #[test]
    fn affine_basis_of_square() {
        let pts = vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]];
        assert_eq!(affine_basis(&pts).unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX;
        assert_eq!(dot(&[big, big], &[big, big]), Err(Error::Overflow));
    }
}
