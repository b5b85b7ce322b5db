//! Lattice polytopes with exact integer predicates.
//!
//! A lattice (d,k)-polytope is the convex hull of a set of points in
//! {0,...,k}^d, all of which are vertices of the hull. `convex_hull` accepts
//! arbitrary nonnegative integer points, discards the non-extreme ones, and
//! returns the polytope with its facet and edge structure. All arithmetic is
//! exact; overflow and degenerate (lower-dimensional) input are errors, never
//! silent.

mod hull;

use crate::error::{Error, Result};
use crate::linalg;

/// A point of the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    coords: Vec<i64>,
}

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(coords: Vec<i64>) -> Self {
        LatticePoint::new(coords)
    }
}

/// A facet of a full-dimensional polytope: the primitive inward normal `n`
/// and offset `c` of the supporting halfspace `n . x >= c`, together with the
/// indices of the vertices lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    normal: Vec<i64>,
    offset: i64,
    vertices: Vec<usize>,
}

impl Facet {
    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Indices (into the polytope's vertex list) of the vertices on this
    /// facet, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

/// A full-dimensional lattice polytope in [0,k]^d with its graph structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    d: usize,
    k: i64,
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
    edges: Vec<(usize, usize)>,
}

/// Convex hull of nonnegative integer points. The polytope's `k` is the
/// largest coordinate appearing among the points.
pub fn convex_hull(points: &[LatticePoint], d: usize) -> Result<LatticePolytope> {
    LatticePolytope::from_points(points.iter().map(|p| p.coords.clone()).collect(), d)
}

impl LatticePolytope {
    /// See [`convex_hull`]; this is the same operation on raw coordinate rows.
    pub fn from_points(rows: Vec<Vec<i64>>, d: usize) -> Result<Self> {
        for row in &rows {
            for &c in row {
                if c < 0 {
                    return Err(Error::NegativeCoordinate(c));
                }
            }
        }
        let raw = hull::build(rows, d)?;

        // Map each kept point to the facets whose hyperplane it lies on. The
        // incidence lists of the raw hull are complete, so this is a lookup,
        // not a geometric recomputation.
        let mut point_facets: Vec<Vec<usize>> = vec![Vec::new(); raw.points.len()];
        for (fid, f) in raw.facets.iter().enumerate() {
            for &p in &f.inc {
                point_facets[p as usize].push(fid);
            }
        }

        // A boundary point is a vertex iff the normals of its facets span the
        // whole space (the equality system pins it down uniquely).
        let mut vertex_ids: Vec<u32> = Vec::new();
        for (pid, fids) in point_facets.iter().enumerate() {
            if fids.len() < d {
                continue;
            }
            let normals: Vec<&[i64]> = fids
                .iter()
                .map(|&f| raw.facets[f].normal.as_slice())
                .collect();
            if linalg::rank_i64(&normals)? == d {
                vertex_ids.push(pid as u32);
            }
        }
        // Raw points are lex-sorted, so ascending ids give lex-sorted vertices.
        let index_of: std::collections::HashMap<u32, usize> = vertex_ids
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();

        let vertices: Vec<LatticePoint> = vertex_ids
            .iter()
            .map(|&i| LatticePoint::new(raw.points[i as usize].clone()))
            .collect();
        let k = vertices
            .iter()
            .flat_map(|v| v.coords.iter().copied())
            .max()
            .ok_or(Error::EmptyInput)?;

        let mut facets: Vec<Facet> = raw
            .facets
            .into_iter()
            .map(|f| Facet {
                normal: f.normal,
                offset: f.offset,
                vertices: f
                    .inc
                    .iter()
                    .filter_map(|p| index_of.get(p).copied())
                    .collect(),
            })
            .collect();
        facets.sort_by(|a, b| (&a.normal, a.offset).cmp(&(&b.normal, b.offset)));

        let edges = adjacency_from_facets(d, vertices.len(), &facets)?;
        Ok(LatticePolytope {
            d,
            k,
            vertices,
            facets,
            edges,
        })
    }

    /// Re-declare the bounding box parameter `k` (it must contain the
    /// polytope).
    pub fn with_declared_k(mut self, k: i64) -> Result<Self> {
        if k < self.k {
            return Err(Error::CoordinateRange { value: self.k, k });
        }
        self.k = k;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Result<&LatticePoint> {
        self.vertices.get(i).ok_or(Error::VertexIndex {
            index: i,
            len: self.vertices.len(),
        })
    }

    pub fn find_vertex(&self, p: &LatticePoint) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Edges as index pairs (i, j) with i < j, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbor lists, ascending per vertex.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Per-coordinate (min, max) over the vertices.
    pub fn extents(&self) -> Vec<(i64, i64)> {
        let mut out = vec![(i64::MAX, i64::MIN); self.d];
        for v in &self.vertices {
            for (e, &c) in out.iter_mut().zip(v.coords()) {
                e.0 = e.0.min(c);
                e.1 = e.1.max(c);
            }
        }
        out
    }

    /// Supporting face for the integer functional `c`: the minimum value
    /// `gamma` of `c . x` over the vertices and the indices attaining it.
    pub fn min_face(&self, c: &[i64]) -> Result<(i64, Vec<usize>)> {
        if c.len() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: c.len(),
            });
        }
        if c.iter().all(|&x| x == 0) {
            return Err(Error::ZeroFunctional);
        }
        let values: Vec<i64> = self
            .vertices
            .iter()
            .map(|v| linalg::dot(c, v.coords()))
            .collect::<Result<_>>()?;
        let gamma = *values.iter().min().unwrap();
        let face = values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == gamma)
            .map(|(i, _)| i)
            .collect();
        Ok((gamma, face))
    }

    /// Full structural check: coordinate ranges, primitive inward normals,
    /// facet supports, vertex incidence ranks, edge rule, connectivity.
    pub fn validate(&self) -> Result<()> {
        for v in &self.vertices {
            if v.dim() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    found: v.dim(),
                });
            }
            for &c in v.coords() {
                if c < 0 || c > self.k {
                    return Err(Error::CoordinateRange { value: c, k: self.k });
                }
            }
        }
        for f in &self.facets {
            if linalg::content(&f.normal) != 1 {
                return Err(Error::Internal("facet normal is not primitive".into()));
            }
            let mut on = Vec::new();
            for (i, v) in self.vertices.iter().enumerate() {
                let s = linalg::dot(&f.normal, v.coords())? - f.offset;
                if s < 0 {
                    return Err(Error::Internal(
                        "vertex on the outer side of a facet".into(),
                    ));
                }
                if s == 0 {
                    on.push(i);
                }
            }
            if on != f.vertices {
                return Err(Error::Internal(
                    "facet vertex list disagrees with exact incidence".into(),
                ));
            }
            let pts: Vec<&[i64]> = on.iter().map(|&i| self.vertices[i].coords()).collect();
            if linalg::affine_dim(&pts)? != self.d - 1 {
                return Err(Error::Internal(
                    "facet support does not span a hyperplane".into(),
                ));
            }
        }
        let recomputed = adjacency_from_facets(self.d, self.vertices.len(), &self.facets)?;
        if recomputed != self.edges {
            return Err(Error::Internal("edge list disagrees with facet data".into()));
        }
        // Connectivity via plain traversal.
        if !self.vertices.is_empty() {
            let adj = self.adjacency();
            let mut seen = vec![false; self.vertices.len()];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if let Some(unreached) = seen.iter().position(|&s| !s) {
                return Err(Error::Disconnected { start: 0, unreached });
            }
        }
        Ok(())
    }
}

/// Recompute the edge list from facet incidence: (u, v) is an edge iff the
/// facets containing both have normals of rank d-1 (their common face is a
/// line segment).
pub fn vertex_adjacency(p: &LatticePolytope) -> Result<Vec<(usize, usize)>> {
    adjacency_from_facets(p.d, p.vertices.len(), &p.facets)
}

fn adjacency_from_facets(
    d: usize,
    n_vertices: usize,
    facets: &[Facet],
) -> Result<Vec<(usize, usize)>> {
    let mut vertex_facets: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
    for (fid, f) in facets.iter().enumerate() {
        for &v in &f.vertices {
            if v >= n_vertices {
                return Err(Error::VertexIndex {
                    index: v,
                    len: n_vertices,
                });
            }
            vertex_facets[v].push(fid);
        }
    }
    let mut edges = Vec::new();
    for u in 0..n_vertices {
        for v in u + 1..n_vertices {
            let common: Vec<usize> = vertex_facets[u]
                .iter()
                .filter(|f| vertex_facets[v].contains(f))
                .copied()
                .collect();
            if common.len() + 1 < d {
                continue;
            }
            let normals: Vec<&[i64]> =
                common.iter().map(|&f| facets[f].normal.as_slice()).collect();
            if linalg::rank_i64(&normals)? == d - 1 {
                edges.push((u, v));
            }
        }
    }
    Ok(edges)
}

/// Spec'd operation form of [`LatticePolytope::min_face`].
pub fn min_face(p: &LatticePolytope, c: &[i64]) -> Result<(i64, Vec<usize>)> {
    p.min_face(c)
}
