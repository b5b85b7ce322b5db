//! Executable checkers for the distance inequalities behind the diameter
//! bounds.
//!
//! Each checker measures the left-hand side of one inequality on a concrete
//! polytope by breadth-first search, evaluates the right-hand side from
//! coordinates and known exact diameters, and reports which way the
//! comparison went.  Results are three-valued: an inequality can hold, be
//! violated (which for these statements means an implementation bug — they
//! are theorems), or not apply because a side condition failed or a needed
//! exact diameter is unknown.  Collapsing the third case into "holds" would
//! hide skipped checks, so it stays separate all the way into the reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bounds::delta_exact;
use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::graph;

/// Outcome of one inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Holds,
    Violated,
    /// A side condition failed or a needed exact diameter is unknown, so
    /// the inequality was not evaluated.
    NotApplicable,
}

/// One checked inequality, ready for serialization.
///
/// `lhs <= rhs` is the claim; for strictness reports the claim is
/// `lhs < rhs`.  When the status is `not_applicable` both sides are
/// reported as 0 and carry no meaning.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub lemma: String,
    pub instance_digest: String,
    pub lhs: i64,
    pub rhs: i64,
    pub status: CheckStatus,
}

impl CheckReport {
    fn new(lemma: &str, digest: String, lhs: i64, rhs: i64, status: CheckStatus) -> Self {
        CheckReport { lemma: lemma.to_string(), instance_digest: digest, lhs, rhs, status }
    }

    fn skipped(lemma: &str, digest: String) -> Self {
        CheckReport::new(lemma, digest, 0, 0, CheckStatus::NotApplicable)
    }
}

/// A set of coordinate positions (zero-based), optionally with declared
/// per-coordinate bounds to be verified against the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    indices: Vec<usize>,
    bounds: Option<Vec<(i64, i64)>>,
}

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        let mut seen = indices.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("repeated coordinate index".into()));
        }
        Ok(IndexSet { indices, bounds: None })
    }

    /// Attaches declared (min, max) pairs, parallel to the indices.
    pub fn with_bounds(indices: Vec<usize>, bounds: Vec<(i64, i64)>) -> Result<Self> {
        if indices.len() != bounds.len() {
            return Err(Error::InvalidArgument(
                "one (min, max) pair per index required".into(),
            ));
        }
        let mut set = IndexSet::new(indices)?;
        set.bounds = Some(bounds);
        Ok(set)
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    fn validated(&self, d: usize) -> Result<()> {
        if let Some(&bad) = self.indices.iter().find(|&&i| i >= d) {
            return Err(Error::InvalidArgument(format!(
                "coordinate index {bad} out of range for dimension {d}"
            )));
        }
        Ok(())
    }
}

/// A run of consecutive vertices along the boundary of a convex lattice
/// polygon, in one of the two cyclic orientations.
///
/// Strict convexity is enforced on construction: consecutive edge vectors
/// must turn consistently (all cross products of one sign), which also
/// rules out repeated or collinear vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonPath {
    vertices: Vec<Vec<i64>>,
}

impl PolygonPath {
    pub fn new(vertices: Vec<Vec<i64>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidArgument(
                "a boundary path needs at least two vertices".into(),
            ));
        }
        for v in &vertices {
            if v.len() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, found: v.len() });
            }
        }
        let steps: Vec<(i64, i64)> = vertices
            .windows(2)
            .map(|w| (w[1][0] - w[0][0], w[1][1] - w[0][1]))
            .collect();
        if steps.iter().any(|&(x, y)| x == 0 && y == 0) {
            return Err(Error::InvalidArgument("repeated consecutive vertex".into()));
        }
        let mut sign = 0i64;
        for w in steps.windows(2) {
            let cross = w[0].0 * w[1].1 - w[0].1 * w[1].0;
            if cross == 0 {
                return Err(Error::InvalidArgument(
                    "collinear consecutive vertices are not in convex position".into(),
                ));
            }
            if sign == 0 {
                sign = cross.signum();
            } else if cross.signum() != sign {
                return Err(Error::InvalidArgument(
                    "vertices do not turn consistently".into(),
                ));
            }
        }
        Ok(PolygonPath { vertices })
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Number of edges walked, i.e. `p` for a path `u^0, …, u^p`.
    pub fn steps(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// The boundary cycle of a polygon as vertex indices, starting at vertex 0
/// and following the neighbor with the smaller index first.
///
/// Every vertex of a two-dimensional polytope has exactly two neighbors,
/// so the edge graph is a single cycle; anything else is rejected.
pub fn polygon_cycle(p: &LatticePolytope) -> Result<Vec<usize>> {
    if p.dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "boundary cycles are for polygons, got dimension {}",
            p.dim()
        )));
    }
    let adj = p.adjacency();
    if let Some(bad) = adj.iter().position(|nbrs| nbrs.len() != 2) {
        return Err(Error::Internal(format!(
            "polygon vertex {bad} has {} neighbors",
            adj[bad].len()
        )));
    }
    let n = adj.len();
    let mut cycle = Vec::with_capacity(n);
    let mut prev = usize::MAX;
    let mut at = 0usize;
    loop {
        cycle.push(at);
        let next = if adj[at][0] != prev { adj[at][0] } else { adj[at][1] };
        prev = at;
        at = next;
        if at == 0 {
            break;
        }
        if cycle.len() > n {
            return Err(Error::Internal("boundary walk failed to close".into()));
        }
    }
    if cycle.len() != n {
        return Err(Error::Internal("boundary walk missed vertices".into()));
    }
    Ok(cycle)
}

fn digest_parts(parts: &[String]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update(part.as_bytes());
        hasher.update([0u8]);
    }
    let bytes = hasher.finalize();
    bytes[..16].iter().map(|b| format!("{b:02x}")).collect()
}

fn polytope_blob(p: &LatticePolytope) -> String {
    let verts: Vec<String> = p
        .vertices()
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("d={};k={};v={}", p.dim(), p.k(), verts.join("|"))
}

fn join_i64(xs: &[i64]) -> String {
    xs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn join_usize(xs: &[usize]) -> String {
    xs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// Exact diameter `δ(d, k)` extended by the empty polytope convention
/// `δ(0, k) = 0`, or `None` when unknown.
fn known_delta(d: usize, k: i64) -> Result<Option<i64>> {
    if d == 0 {
        return Ok(Some(0));
    }
    Ok(delta_exact(d, k)?.map(|(v, _)| v))
}

fn verdict(lhs: i64, rhs: i64) -> CheckStatus {
    if lhs <= rhs {
        CheckStatus::Holds
    } else {
        CheckStatus::Violated
    }
}

/// Distance-to-face bound: for the face F of P minimizing a functional c
/// with minimum value γ, every vertex u satisfies `d(u, F) ≤ c·u − γ`.
pub fn check_facet_distance(p: &LatticePolytope, u: usize, c: &[i64]) -> Result<CheckReport> {
    let (gamma, face) = p.min_face(c)?;
    let u_point = p.vertex(u)?;
    let lhs = graph::distance_to_face(p, u, &face)? as i64;
    let rhs = crate::linalg::dot(c, u_point.coords())? - gamma;
    let digest = digest_parts(&[
        polytope_blob(p),
        format!("u={u}"),
        format!("c={}", join_i64(c)),
    ]);
    Ok(CheckReport::new("lemma1", digest, lhs, rhs, verdict(lhs, rhs)))
}

/// Box-restriction bound: fixing the coordinates in I can shrink the
/// diameter by at most the sum of their ranges,
/// `δ(P) ≤ δ(d−|I|, k) + Σ_{i∈I} (h_i − l_i)`.
///
/// The per-coordinate minima and maxima are always recomputed from P;
/// declared bounds that disagree are an error, not a report.
pub fn check_box_restriction(p: &LatticePolytope, set: &IndexSet) -> Result<CheckReport> {
    set.validated(p.dim())?;
    let extents = p.extents();
    if let Some(declared) = &set.bounds {
        for (&i, &(lo, hi)) in set.indices.iter().zip(declared) {
            if extents[i] != (lo, hi) {
                return Err(Error::InvalidArgument(format!(
                    "declared range [{lo}, {hi}] for coordinate {i} but the polytope spans {:?}",
                    extents[i]
                )));
            }
        }
    }
    let digest = digest_parts(&[polytope_blob(p), format!("I={}", join_usize(&set.indices))]);
    let rest = p.dim() - set.len();
    let delta = match known_delta(rest, p.k())? {
        Some(v) => v,
        None => return Ok(CheckReport::skipped("lemma2", digest)),
    };
    let (lhs, _) = graph::diameter(p)?;
    let spread: i64 = set.indices.iter().map(|&i| extents[i].1 - extents[i].0).sum();
    let rhs = delta + spread;
    Ok(CheckReport::new("lemma2", digest, lhs as i64, rhs, verdict(lhs as i64, rhs)))
}

/// Pair-distance bound: for vertices u, v and a small index set I with
/// `u_i + v_i ≤ k` on it, `d(u, v) ≤ δ(d−|I|, k) + Σ_{i∈I} (u_i + v_i)`.
///
/// When the strictness condition applies — `1 ≤ |I| ≤ 2` and the
/// coordinate sum over I is positive on every vertex of P — a second
/// report demands the strict inequality.
pub fn check_pair_bound(
    p: &LatticePolytope,
    u: usize,
    v: usize,
    set: &IndexSet,
) -> Result<Vec<CheckReport>> {
    set.validated(p.dim())?;
    if set.len() > 3 {
        return Err(Error::InvalidArgument(format!(
            "the pair bound applies to index sets of size at most 3, got {}",
            set.len()
        )));
    }
    let uc = p.vertex(u)?.coords().to_vec();
    let vc = p.vertex(v)?.coords().to_vec();
    for &i in set.indices() {
        if uc[i] + vc[i] > p.k() {
            return Err(Error::InvalidArgument(format!(
                "coordinate {i}: u_i + v_i = {} exceeds k = {}",
                uc[i] + vc[i],
                p.k()
            )));
        }
    }
    let digest = digest_parts(&[
        polytope_blob(p),
        format!("u={u};v={v}"),
        format!("I={}", join_usize(&set.indices)),
    ]);
    let rest = p.dim() - set.len();
    let delta = match known_delta(rest, p.k())? {
        Some(d) => d,
        None => return Ok(vec![CheckReport::skipped("lemma3", digest)]),
    };
    let lhs = graph::bfs_distances(p, u)?.dist[v] as i64;
    let pair_sum: i64 = set.indices.iter().map(|&i| uc[i] + vc[i]).sum();
    let rhs = delta + pair_sum;
    let mut reports = vec![CheckReport::new(
        "lemma3",
        digest.clone(),
        lhs,
        rhs,
        verdict(lhs, rhs),
    )];
    if !set.is_empty() && set.len() <= 2 {
        let min_sum = p
            .vertices()
            .iter()
            .map(|w| set.indices.iter().map(|&i| w.coords()[i]).sum::<i64>())
            .min()
            .expect("polytopes have vertices");
        if min_sum > 0 {
            let status = if lhs < rhs { CheckStatus::Holds } else { CheckStatus::Violated };
            reports.push(CheckReport::new("lemma3_strict", digest, lhs, rhs, status));
        }
    }
    Ok(reports)
}

/// Boundary-descent bound for polygons: along a convex boundary path
/// `u^0, …, u^p = (0,0)` whose first step `u^0 − u^1` is one of (1,0),
/// (0,1) or (1,1), the coordinate sum drops by at least 2 per step:
/// `u^j_1 + u^j_2 + 2 ≤ u^{j−1}_1 + u^{j−1}_2` for `2 ≤ j < p`.
///
/// Paths that end elsewhere or start with a different step are reported
/// as not applicable; with fewer than three steps the claim is vacuous.
/// The report carries the tightest step (largest left-over), so `lhs ≤ rhs`
/// summarizes all of them.
pub fn check_polygon_path(path: &PolygonPath) -> Result<CheckReport> {
    let verts = path.vertices();
    let digest = digest_parts(&[format!(
        "path={}",
        verts
            .iter()
            .map(|v| join_i64(v))
            .collect::<Vec<_>>()
            .join("|")
    )]);
    let p = path.steps();
    if verts[p] != [0, 0] {
        return Ok(CheckReport::skipped("lemma4", digest));
    }
    let first_step = [verts[0][0] - verts[1][0], verts[0][1] - verts[1][1]];
    if ![[1, 0], [0, 1], [1, 1]].contains(&first_step) {
        return Ok(CheckReport::skipped("lemma4", digest));
    }
    let mut worst: Option<(i64, i64)> = None;
    for j in 2..p {
        let lhs = verts[j][0] + verts[j][1] + 2;
        let rhs = verts[j - 1][0] + verts[j - 1][1];
        if worst.map_or(true, |(l, r)| lhs - rhs > l - r) {
            worst = Some((lhs, rhs));
        }
    }
    let (lhs, rhs) = worst.unwrap_or((0, 0));
    Ok(CheckReport::new("lemma4", digest, lhs, rhs, verdict(lhs, rhs)))
}

/// Inductive-step bound: for d ≥ 3, k ≥ 3, every vertex pair satisfies at
/// least one of
///
/// ```text
/// d(u,v) ≤ δ(d−1, k) + k − 1
/// d(u,v) ≤ δ(d−2, k) + 2k − 2
/// d(u,v) ≤ δ(d−3, k) + 3k − 2
/// ```
///
/// Since the three right-hand sides are constants for a given polytope,
/// "some inequality holds" is exactly `d(u,v) ≤ max of the three`, which is
/// what the report carries.  A violation would contradict a theorem, so it
/// flags an implementation bug.
pub fn check_inductive_step(p: &LatticePolytope, u: usize, v: usize) -> Result<CheckReport> {
    let d = p.dim();
    let k = p.k();
    if d < 3 || k < 3 {
        return Err(Error::InvalidArgument(format!(
            "the inductive step assumes d >= 3 and k >= 3, got d={d}, k={k}"
        )));
    }
    let digest = digest_parts(&[polytope_blob(p), format!("u={u};v={v}")]);
    let deltas = [
        known_delta(d - 1, k)?,
        known_delta(d - 2, k)?,
        known_delta(d - 3, k)?,
    ];
    let offsets = [k - 1, 2 * k - 2, 3 * k - 2];
    let mut rhs = None;
    for (delta, offset) in deltas.into_iter().zip(offsets) {
        match delta {
            Some(value) => {
                let bound = value + offset;
                rhs = Some(rhs.map_or(bound, |r: i64| r.max(bound)));
            }
            None => return Ok(CheckReport::skipped("step", digest)),
        }
    }
    let rhs = rhs.expect("three cases");
    let lhs = graph::bfs_distances(p, u)?.dist[v] as i64;
    Ok(CheckReport::new("step", digest, lhs, rhs, verdict(lhs, rhs)))
}
