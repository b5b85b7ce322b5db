//! Breadth-first metrics on polytope graphs.
//!
//! Distances are edge counts on the vertex-edge graph. Polytope graphs are
//! connected; an unreachable vertex indicates a hull bug upstream and is
//! reported as an error rather than an infinite distance.

use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;

/// Distances from one source vertex to every vertex, in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    pub source: usize,
    pub dist: Vec<u32>,
}

fn bfs(adj: &[Vec<usize>], source: usize) -> Result<Vec<u32>> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if let Some(unreached) = dist.iter().position(|&d| d == u32::MAX) {
        return Err(Error::Disconnected { start: source, unreached });
    }
    Ok(dist)
}

/// Single-source shortest path distances.
pub fn bfs_distances(p: &LatticePolytope, source: usize) -> Result<DistanceTable> {
    let n = p.vertices().len();
    if source >= n {
        return Err(Error::VertexIndex {
            index: source,
            len: n,
        });
    }
    let dist = bfs(&p.adjacency(), source)?;
    Ok(DistanceTable { source, dist })
}

/// Graph diameter with a deterministic witness: the greatest distance over
/// all vertex pairs and the lexicographically smallest pair (i, j), i < j,
/// attaining it.
pub fn diameter(p: &LatticePolytope) -> Result<(u32, (usize, usize))> {
    let n = p.vertices().len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let adj = p.adjacency();
    let mut best: u32 = 0;
    let mut witness = (0usize, 0usize);
    for source in 0..n {
        let dist = bfs(&adj, source)?;
        for (j, &dj) in dist.iter().enumerate().skip(source + 1) {
            if dj > best {
                best = dj;
                witness = (source, j);
            }
        }
    }
    Ok((best, witness))
}

/// Least number of edge steps from vertex `u` to any vertex of the face `f`
/// (given as vertex indices).
pub fn distance_to_face(p: &LatticePolytope, u: usize, f: &[usize]) -> Result<u32> {
    if f.is_empty() {
        return Err(Error::InvalidArgument("empty face".into()));
    }
    let table = bfs_distances(p, u)?;
    let mut best = u32::MAX;
    for &v in f {
        if v >= table.dist.len() {
            return Err(Error::VertexIndex {
                index: v,
                len: table.dist.len(),
            });
        }
        best = best.min(table.dist[v]);
    }
    Ok(best)
}
