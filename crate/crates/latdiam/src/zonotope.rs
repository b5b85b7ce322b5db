//! Minkowski sums of primitive lattice segments.
//!
//! The generator family studied here is
//!
//! ```text
//! H1(d, p) = { v in Z^d : |v|_1 <= p, gcd(v) = 1, v > 0 }
//! ```
//!
//! where `v > 0` means the first non-zero coordinate is positive (one
//! representative per direction).  Summing the segments `[0, v]` over any
//! subset of such generators produces a zonotope; translated so its
//! coordinate-wise minimum is the origin it becomes a lattice polytope
//! inside `[0, k]^d` with `k` equal to the largest coordinate extent.
//! Every pair of its antipodal vertices is joined by a path that crosses
//! each generator direction once, which pins the graph diameter to the
//! number of distinct directions — the engine behind the lower-bound
//! witnesses in [`subset_search`].

use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::graph;
use crate::linalg;

/// Largest generator count for which we enumerate all `2^m` sign sums.
pub const SIGN_ENUMERATION_BUDGET: usize = 20;

/// Node budget for [`subset_search`]; exceeding it is an error distinct
/// from a completed search that found nothing.
const SUBSET_SEARCH_NODE_BUDGET: u64 = 100_000_000;

/// A set of pairwise distinct primitive generator vectors.
///
/// Invariants, enforced by [`GeneratorSet::new`]:
/// - every vector has length `d` and is non-zero,
/// - every vector is primitive (the gcd of its entries is 1),
/// - the first non-zero coordinate of every vector is positive,
/// - no vector appears twice.
///
/// Together these guarantee the vectors are pairwise non-parallel, so the
/// number of directions spanned equals the number of vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    d: usize,
    vectors: Vec<Vec<i64>>,
}

impl GeneratorSet {
    /// Validates the invariants above and wraps the vectors.
    pub fn new(d: usize, vectors: Vec<Vec<i64>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        for v in &vectors {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
            let lead = match v.iter().find(|&&c| c != 0) {
                Some(&c) => c,
                None => return Err(Error::BadGenerator("zero vector".into())),
            };
            if lead < 0 {
                return Err(Error::BadGenerator(format!(
                    "{v:?} has a negative leading coordinate; flip it to its mirror"
                )));
            }
            if linalg::content(v) != 1 {
                return Err(Error::BadGenerator(format!("{v:?} is not primitive")));
            }
        }
        let mut seen = vectors.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadGenerator("duplicate vector".into()));
        }
        Ok(GeneratorSet { d, vectors })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Extents and direction count in one record.
    pub fn stats(&self) -> ZonotopeStats {
        ZonotopeStats {
            extents: coordinate_extents(self),
            // Distinct primitive vectors with positive leading coordinate
            // cannot be parallel, so every vector is its own direction.
            direction_count: self.vectors.len(),
        }
    }
}

/// Shape summary of the zonotope a generator set spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZonotopeStats {
    /// Per-coordinate sums of absolute values: the edge lengths of the
    /// bounding box of the translated Minkowski sum.
    pub extents: Vec<i64>,
    /// Number of pairwise non-parallel generators; equals the graph
    /// diameter of the zonotope.
    pub direction_count: usize,
}

/// Totient sums describing the planar family `H1(2, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H1Stats {
    /// Box size: the zonotope of `H1(2, p)` fits exactly in `[0, k]^2`.
    pub k: i64,
    /// Its graph diameter, which is also the generator count.
    pub diameter: u32,
    /// The asymptotic approximation `6 (k / 2π)^(2/3)`.
    pub estimate: f64,
}

/// Euler's totient: how many of `1..=n` are coprime to `n`.
///
/// Inputs here are tiny (norm bounds), so the direct gcd count is the
/// clearest correct implementation.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("euler_phi requires n >= 1".into()));
    }
    Ok((1..=n).filter(|&m| linalg::gcd(m as i64, n as i64) == 1).count() as u64)
}

/// Enumerates `H1(d, p)`: all primitive vectors with `|v|_1 <= p` whose
/// first non-zero coordinate is positive, sorted lexicographically.
pub fn primitive_generators(d: usize, p: i64) -> Result<GeneratorSet> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if p < 1 {
        return Err(Error::InvalidArgument("norm bound must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut v = vec![0i64; d];
    // Depth-first over coordinates with the remaining l1 budget, so the cost
    // is proportional to the output size rather than to the full box scan.
    collect_generators(&mut v, 0, p, false, &mut out);
    out.sort();
    GeneratorSet::new(d, out)
}

fn collect_generators(v: &mut Vec<i64>, i: usize, budget: i64, started: bool, out: &mut Vec<Vec<i64>>) {
    if i == v.len() {
        if started && linalg::content(v) == 1 {
            out.push(v.clone());
        }
        return;
    }
    // The first non-zero coordinate must be positive, so negatives are only
    // allowed once a positive entry has been placed.
    let lo = if started { -budget } else { 0 };
    for c in lo..=budget {
        v[i] = c;
        collect_generators(v, i + 1, budget - c.abs(), started || c != 0, out);
    }
    v[i] = 0;
}

/// Per-coordinate extents `sum |v_i|` — the bounding box of the zonotope.
pub fn coordinate_extents(gens: &GeneratorSet) -> Vec<i64> {
    let mut extents = vec![0i64; gens.d];
    for v in &gens.vectors {
        for (e, &c) in extents.iter_mut().zip(v) {
            *e += c.abs();
        }
    }
    extents
}

/// Builds the zonotope spanned by a generator set as a lattice polytope.
///
/// All `2^m` sign sums are enumerated (hence the `m <= 20` budget), the
/// distinct sums are translated so their coordinate-wise minimum is the
/// origin, and the hull machinery recovers vertices, facets and edges.
/// The resulting `k` equals the largest coordinate extent.  Generator
/// sets that do not span the full space are refused with a
/// [`Error::Degenerate`] report rather than silently projected.
pub fn zonotope_vertices(gens: &GeneratorSet) -> Result<LatticePolytope> {
    let m = gens.vectors.len();
    if m > SIGN_ENUMERATION_BUDGET {
        return Err(Error::GeneratorBudget { m, max: SIGN_ENUMERATION_BUDGET });
    }
    if gens.d > 6 {
        return Err(Error::InvalidArgument(format!(
            "zonotope construction is budgeted for dimension <= 6, got {}",
            gens.d
        )));
    }
    let points = translated_sign_sums(&gens.vectors, gens.d)?;
    LatticePolytope::from_points(points, gens.d)
}

/// Builds the zonotope of arbitrary non-zero integer vectors inside its own
/// linear span.
///
/// When the vectors span rank `r < d`, the sum is re-expressed in `r`
/// coordinate positions chosen so the restriction is injective on the span
/// (an affine isomorphism, so the graph is unchanged), and the polytope
/// comes back with dimension `r`.  Full-rank input reproduces
/// [`zonotope_vertices`] exactly.  This is the honest way to measure the
/// graph diameter of a rank-deficient generator subset without violating
/// the no-projection rule for ordinary point input.
pub fn zonotope_in_span(d: usize, vectors: &[Vec<i64>]) -> Result<LatticePolytope> {
    if vectors.is_empty() {
        return Err(Error::EmptyInput);
    }
    if vectors.len() > SIGN_ENUMERATION_BUDGET {
        return Err(Error::GeneratorBudget { m: vectors.len(), max: SIGN_ENUMERATION_BUDGET });
    }
    for v in vectors {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: v.len() });
        }
        if v.iter().all(|&c| c == 0) {
            return Err(Error::BadGenerator("zero vector".into()));
        }
    }
    let refs: Vec<&[i64]> = vectors.iter().map(|v| v.as_slice()).collect();
    let rank = linalg::rank_i64(&refs)?;

    // Greedily pick `rank` coordinate positions whose columns are linearly
    // independent; restricting to them is injective on the span.
    let mut columns: Vec<Vec<i64>> = Vec::new();
    let mut keep = Vec::new();
    for j in 0..d {
        let col: Vec<i64> = vectors.iter().map(|v| v[j]).collect();
        columns.push(col);
        let col_refs: Vec<&[i64]> = columns.iter().map(|c| c.as_slice()).collect();
        if linalg::rank_i64(&col_refs)? == columns.len() {
            keep.push(j);
        } else {
            columns.pop();
        }
        if keep.len() == rank {
            break;
        }
    }
    let projected: Vec<Vec<i64>> = vectors
        .iter()
        .map(|v| keep.iter().map(|&j| v[j]).collect())
        .collect();
    let points = translated_sign_sums(&projected, rank)?;
    LatticePolytope::from_points(points, rank)
}

/// All distinct subset sums of the vectors, translated to the non-negative
/// orthant with the coordinate-wise minimum at the origin.
fn translated_sign_sums(vectors: &[Vec<i64>], d: usize) -> Result<Vec<Vec<i64>>> {
    let m = vectors.len();
    let mut sums = Vec::with_capacity(1usize << m);
    let mut current = vec![0i64; d];
    // Gray-code walk: successive masks differ in one bit, so each sum is one
    // vector addition or subtraction away from the previous one.
    sums.push(current.clone());
    let mut prev_gray = 0usize;
    for i in 1..(1usize << m) {
        let gray = i ^ (i >> 1);
        let bit = (gray ^ prev_gray).trailing_zeros() as usize;
        let sign = if gray & (1 << bit) != 0 { 1 } else { -1 };
        for (c, &g) in current.iter_mut().zip(&vectors[bit]) {
            *c = c
                .checked_add(sign * g)
                .ok_or(Error::Overflow)?;
        }
        prev_gray = gray;
        sums.push(current.clone());
    }
    sums.sort();
    sums.dedup();
    let mins: Vec<i64> = (0..d)
        .map(|j| sums.iter().map(|s| s[j]).min().expect("nonempty"))
        .collect();
    for s in &mut sums {
        for (c, &lo) in s.iter_mut().zip(&mins) {
            *c -= lo;
        }
    }
    Ok(sums)
}

/// Totient statistics of the planar family: box size `k = Σ i·φ(i)`,
/// diameter (= generator count) `Σ 2·φ(i)`, both summed over `i = 1..=p`,
/// and the asymptotic estimate `6 (k / 2π)^(2/3)`.
pub fn h1_2d_stats(p: i64) -> Result<H1Stats> {
    if p < 1 {
        return Err(Error::InvalidArgument("norm bound must be at least 1".into()));
    }
    let mut k = 0i64;
    let mut diameter = 0u32;
    for i in 1..=p {
        let phi = euler_phi(i as u64)? as i64;
        k += i * phi;
        diameter += 2 * phi as u32;
    }
    let estimate = 6.0 * (k as f64 / std::f64::consts::TAU).powf(2.0 / 3.0);
    Ok(H1Stats { k, diameter, estimate })
}

/// Searches for a subset of `H1(d, 2)` whose zonotope is a lattice
/// `(d, k)`-polytope (all extents at most `k`) with graph diameter at
/// least `target`.
///
/// Depth-first over the generators ordered by `|v|_1` and then reverse
/// lexicographically, preferring inclusion, pruning branches whose extents
/// overflow `k` or whose remaining generators cannot reach the target.
/// The first subset in that order is returned, its diameter confirmed by
/// breadth-first search whenever the sign-enumeration budget allows
/// (beyond the budget the diameter equals the direction count, which for
/// distinct primitive generators is the subset size).
///
/// `Ok(None)` means the search space was exhausted; running out of node
/// budget is an error so it can never be mistaken for a proof of absence.
pub fn subset_search(d: usize, k: i64, target: u32) -> Result<Option<GeneratorSet>> {
    if d == 0 || d > 5 {
        return Err(Error::InvalidArgument(format!(
            "subset search is budgeted for dimensions 1..=5, got {d}"
        )));
    }
    if k < 1 || k > 2 * d as i64 - 1 {
        return Err(Error::InvalidArgument(format!(
            "subset search expects 1 <= k <= 2d-1 = {}, got {k}",
            2 * d - 1
        )));
    }
    if target == 0 {
        return Err(Error::InvalidArgument("target diameter must be at least 1".into()));
    }
    let mut vectors = primitive_generators(d, 2)?.vectors;
    vectors.sort_by(|a, b| {
        let na: i64 = a.iter().map(|c| c.abs()).sum();
        let nb: i64 = b.iter().map(|c| c.abs()).sum();
        na.cmp(&nb).then_with(|| b.cmp(a))
    });

    let mut dfs = SubsetDfs {
        vectors: &vectors,
        d,
        k,
        target: target as usize,
        nodes: 0,
        budget: SUBSET_SEARCH_NODE_BUDGET,
    };
    let mut chosen = Vec::new();
    let mut extents = vec![0i64; d];
    match dfs.run(0, &mut chosen, &mut extents)? {
        Some(indices) => {
            let subset: Vec<Vec<i64>> = indices.iter().map(|&i| vectors[i].clone()).collect();
            Ok(Some(GeneratorSet::new(d, subset)?))
        }
        None => Ok(None),
    }
}

struct SubsetDfs<'a> {
    vectors: &'a [Vec<i64>],
    d: usize,
    k: i64,
    target: usize,
    nodes: u64,
    budget: u64,
}

impl SubsetDfs<'_> {
    fn run(
        &mut self,
        idx: usize,
        chosen: &mut Vec<usize>,
        extents: &mut [i64],
    ) -> Result<Option<Vec<usize>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudget { nodes: self.nodes });
        }
        if chosen.len() == self.target {
            if self.verified(chosen)? {
                return Ok(Some(chosen.clone()));
            }
            return Ok(None);
        }
        if chosen.len() + (self.vectors.len() - idx) < self.target {
            return Ok(None);
        }
        let v = &self.vectors[idx];
        if extents.iter().zip(v).all(|(&e, &c)| e + c.abs() <= self.k) {
            for (e, &c) in extents.iter_mut().zip(v) {
                *e += c.abs();
            }
            chosen.push(idx);
            if let Some(hit) = self.run(idx + 1, chosen, extents)? {
                return Ok(Some(hit));
            }
            chosen.pop();
            for (e, &c) in extents.iter_mut().zip(v) {
                *e -= c.abs();
            }
        }
        self.run(idx + 1, chosen, extents)
    }

    fn verified(&self, chosen: &[usize]) -> Result<bool> {
        if chosen.len() > SIGN_ENUMERATION_BUDGET {
            // Too large to rebuild vertex by vertex; the generators are
            // pairwise non-parallel, so the diameter is the subset size.
            return Ok(true);
        }
        let subset: Vec<Vec<i64>> = chosen.iter().map(|&i| self.vectors[i].clone()).collect();
        let gens = GeneratorSet::new(self.d, subset)?;
        let poly = match zonotope_vertices(&gens) {
            Ok(p) => p,
            // A subset that does not span the space is not a (d, k)-polytope.
            Err(Error::Degenerate { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        let (diam, _) = graph::diameter(&poly)?;
        Ok(diam as usize >= self.target)
    }
}
