//! Slow, obviously-correct reference implementations.
//!
//! Nothing here is used on the fast paths.  These functions recompute
//! answers from first principles — Floyd–Warshall for distances, exhaustive
//! functional scans for edges, Carathéodory subsets for hull membership —
//! so tests can cross-check the incremental hull and breadth-first search
//! against code that shares none of their logic.

use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::linalg;

/// All-pairs shortest path lengths by Floyd–Warshall.
///
/// Deliberately ignorant of geometry: the input is just an edge list.
pub fn all_pairs_distances(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<u32>>> {
    const INF: u32 = u32::MAX / 2;
    let mut dist = vec![vec![INF; n]; n];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::VertexIndex { index: u.max(v), len: n });
        }
        dist[u][v] = 1;
        dist[v][u] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][m].saturating_add(dist[m][j]);
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if dist[i][j] >= INF {
                return Err(Error::Disconnected { start: i, unreached: j });
            }
        }
    }
    Ok(dist)
}

/// Vertex pairs certified as edges by an exhaustive functional scan.
///
/// A pair {u, v} is an edge exactly when some linear functional is
/// maximized on the polytope precisely at u and v.  This scans every
/// integer functional with coefficients in `[-bound, bound]` and records
/// the pairs whose argmax set has size two.  Every certified pair is a
/// true edge; a large enough `bound` certifies all of them (small
/// instances settle well below the budget, so callers escalate the bound
/// until the certified set stops growing).
///
/// Budgeted for dimensions 1 to 3; the scan is `(2·bound+1)^d` dot
/// products per vertex.
pub fn certified_edges(p: &LatticePolytope, bound: i64) -> Result<Vec<(usize, usize)>> {
    let d = p.dim();
    if d > 3 {
        return Err(Error::InvalidArgument(format!(
            "functional edge scan is budgeted for dimension <= 3, got {d}"
        )));
    }
    if bound < 1 {
        return Err(Error::InvalidArgument("scan bound must be at least 1".into()));
    }
    let n = p.vertices().len();
    let mut certified = vec![false; n * n];
    let mut c = vec![-bound; d];
    loop {
        if c.iter().any(|&x| x != 0) {
            let mut best = i64::MIN;
            let mut count = 0usize;
            let mut first = 0usize;
            let mut second = 0usize;
            for (i, v) in p.vertices().iter().enumerate() {
                let val = linalg::dot(&c, v.coords())?;
                if val > best {
                    best = val;
                    count = 1;
                    first = i;
                } else if val == best {
                    if count == 1 {
                        second = i;
                    }
                    count += 1;
                }
            }
            if count == 2 {
                certified[first * n + second] = true;
            }
        }
        // Odometer increment over the functional box.
        let mut pos = 0;
        loop {
            if pos == d {
                let mut out = Vec::new();
                for u in 0..n {
                    for v in (u + 1)..n {
                        if certified[u * n + v] {
                            out.push((u, v));
                        }
                    }
                }
                return Ok(out);
            }
            if c[pos] < bound {
                c[pos] += 1;
                break;
            }
            c[pos] = -bound;
            pos += 1;
        }
    }
}

/// Exact hull membership by Carathéodory's theorem.
///
/// `q` lies in the hull of `points` exactly when it lies in the simplex
/// spanned by some affinely independent subset of at most `d + 1` points.
/// Each candidate simplex is tested with determinant signs after
/// re-expressing it in independent coordinate positions, so everything
/// stays in exact integer arithmetic.  Exponential in the subset size —
/// a reference implementation for small instances only.
pub fn point_in_hull(q: &[i64], points: &[Vec<i64>]) -> Result<bool> {
    let d = q.len();
    for v in points {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: v.len() });
        }
    }
    let n = points.len();
    let max_size = (d + 1).min(n);
    let mut subset: Vec<usize> = Vec::new();
    subsets_up_to(n, max_size, &mut subset, &mut |chosen| {
        let simplex: Vec<&[i64]> = chosen.iter().map(|&i| points[i].as_slice()).collect();
        in_simplex(q, &simplex)
    })
}

/// The input points that are vertices of their own hull: those not in the
/// hull of the others.  Independent of the incremental hull entirely.
pub fn extremal_points(points: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for (i, q) in points.iter().enumerate() {
        let others: Vec<Vec<i64>> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        if !point_in_hull(q, &others)? {
            out.push(q.clone());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Visits subsets of `{0..n}` of size 1..=max_size until the visitor
/// returns Ok(true) for one of them.
fn subsets_up_to(
    n: usize,
    max_size: usize,
    subset: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    let start = subset.last().map_or(0, |&i| i + 1);
    for i in start..n {
        subset.push(i);
        if visit(subset)? {
            subset.pop();
            return Ok(true);
        }
        if subset.len() < max_size && subsets_up_to(n, max_size, subset, visit)? {
            subset.pop();
            return Ok(true);
        }
        subset.pop();
    }
    Ok(false)
}

/// Whether `q` lies in the convex hull of an arbitrary point tuple,
/// provided the tuple is affinely independent (anything else reports
/// false and is covered by one of its own subsets).
fn in_simplex(q: &[i64], simplex: &[&[i64]]) -> Result<bool> {
    let d = q.len();
    let m = simplex.len() - 1;
    if linalg::affine_dim(simplex)? != m {
        return Ok(false);
    }
    if m == 0 {
        return Ok(simplex[0] == q);
    }
    // q must lie in the affine span before barycentric signs mean anything.
    let mut with_q: Vec<&[i64]> = simplex.to_vec();
    with_q.push(q);
    if linalg::affine_dim(&with_q)? != m {
        return Ok(false);
    }
    // Re-express everything in m coordinate positions where the simplex
    // directions stay independent; the restriction is injective on the
    // span, so convex combinations are preserved exactly.
    let dirs: Vec<Vec<i64>> = simplex[1..]
        .iter()
        .map(|s| {
            s.iter()
                .zip(simplex[0])
                .map(|(&a, &b)| a - b)
                .collect::<Vec<i64>>()
        })
        .collect();
    let mut cols: Vec<usize> = Vec::new();
    let mut picked: Vec<Vec<i64>> = Vec::new();
    for j in 0..d {
        let col: Vec<i64> = dirs.iter().map(|v| v[j]).collect();
        picked.push(col);
        let refs: Vec<&[i64]> = picked.iter().map(|c| c.as_slice()).collect();
        if linalg::rank_i64(&refs)? == picked.len() {
            cols.push(j);
        } else {
            picked.pop();
        }
        if cols.len() == m {
            break;
        }
    }
    let project = |v: &[i64]| -> Vec<i128> {
        let mut row: Vec<i128> = cols.iter().map(|&j| v[j] as i128).collect();
        row.push(1);
        row
    };
    let base: Vec<Vec<i128>> = simplex.iter().map(|s| project(s)).collect();
    let whole = linalg::det(&base)?;
    debug_assert_ne!(whole, 0);
    for i in 0..=m {
        let mut rows = base.clone();
        rows[i] = project(q);
        let part = linalg::det(&rows)?;
        // Barycentric coordinate i is part/whole; all must be >= 0.
        if part != 0 && (part > 0) != (whole > 0) {
            return Ok(false);
        }
    }
    Ok(true)
}
