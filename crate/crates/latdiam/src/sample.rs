//! Seeded random instances and the randomized verification suites.
//!
//! Every instance is derived from `(seed, index)` alone, so a suite's
//! output is byte-identical no matter how many worker threads share the
//! indices.  The suites feed random polytopes, functionals, index sets and
//! vertex pairs to the checkers in [`crate::lemmas`]; the inequalities are
//! theorems, so any `violated` report is an implementation bug by
//! definition, and the suites exist to hunt for one.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::LatticePolytope;
use crate::lemmas::{
    check_box_restriction, check_facet_distance, check_inductive_step, check_pair_bound,
    check_polygon_path, polygon_cycle, CheckReport, CheckStatus, IndexSet, PolygonPath,
};

/// The randomized suites, named after the checkers they drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Step,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Lemma1,
        Suite::Lemma2,
        Suite::Lemma3,
        Suite::Lemma4,
        Suite::Step,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Lemma3 => "lemma3",
            Suite::Lemma4 => "lemma4",
            Suite::Step => "step",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma1" => Ok(Suite::Lemma1),
            "lemma2" => Ok(Suite::Lemma2),
            "lemma3" => Ok(Suite::Lemma3),
            "lemma4" => Ok(Suite::Lemma4),
            "step" => Ok(Suite::Step),
            other => Err(Error::InvalidArgument(format!(
                "unknown suite {other:?}; expected lemma1, lemma2, lemma3, lemma4 or step"
            ))),
        }
    }
}

/// Aggregated result of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub instances: usize,
    pub reports: Vec<CheckReport>,
}

impl SuiteOutcome {
    pub fn count(&self, status: CheckStatus) -> usize {
        self.reports.iter().filter(|r| r.status == status).count()
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports
            .iter()
            .filter(|r| r.status == CheckStatus::Violated)
    }
}

/// The generator for instance `index` of a run with the given seed.
///
/// Indices are spread by a fixed odd multiplier before xor so neighboring
/// indices land in unrelated streams.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A full-dimensional lattice polytope: the hull of 4 to 12 uniform points
/// in `[0, k]^d`, resampled until the hull has dimension d.
pub fn random_lattice_polytope(
    rng: &mut ChaCha8Rng,
    d: usize,
    k: i64,
) -> Result<LatticePolytope> {
    for _ in 0..10_000 {
        let n = rng.gen_range(4..=12);
        let points: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(0..=k)).collect())
            .collect();
        match LatticePolytope::from_points(points, d) {
            Ok(p) => return Ok(p),
            Err(Error::Degenerate { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal(format!(
        "could not sample a full-dimensional polytope in [0, {k}]^{d}"
    )))
}

fn random_functional(rng: &mut ChaCha8Rng, d: usize) -> Vec<i64> {
    loop {
        let c: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        if c.iter().any(|&x| x != 0) {
            return c;
        }
    }
}

/// Runs one instance of a suite; the result depends only on (seed, index).
pub fn run_instance(suite: Suite, seed: u64, index: u64) -> Result<Vec<CheckReport>> {
    let mut rng = instance_rng(seed, index);
    match suite {
        Suite::Lemma1 => {
            let d = rng.gen_range(2..=3);
            let k = rng.gen_range(1..=3);
            let p = random_lattice_polytope(&mut rng, d, k)?;
            let u = rng.gen_range(0..p.vertices().len());
            let c = random_functional(&mut rng, d);
            Ok(vec![check_facet_distance(&p, u, &c)?])
        }
        Suite::Lemma2 => {
            let d = rng.gen_range(2..=3);
            let k = rng.gen_range(1..=3);
            let p = random_lattice_polytope(&mut rng, d, k)?;
            let indices: Vec<usize> = (0..d).filter(|_| rng.gen_bool(0.5)).collect();
            let set = IndexSet::new(indices)?;
            Ok(vec![check_box_restriction(&p, &set)?])
        }
        Suite::Lemma3 => {
            let d = rng.gen_range(2..=3);
            let k = rng.gen_range(1..=3);
            let p = random_lattice_polytope(&mut rng, d, k)?;
            let n = p.vertices().len();
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let uc = p.vertex(u)?.coords();
            let vc = p.vertex(v)?.coords();
            let mut eligible: Vec<usize> =
                (0..d).filter(|&i| uc[i] + vc[i] <= p.k()).collect();
            eligible.shuffle(&mut rng);
            let take = rng.gen_range(0..=eligible.len().min(3));
            let mut indices = eligible[..take].to_vec();
            indices.sort_unstable();
            let set = IndexSet::new(indices)?;
            check_pair_bound(&p, u, v, &set)
        }
        Suite::Lemma4 => {
            let p = polygon_through_origin(&mut rng, 3)?;
            Ok(vec![descending_path_check(&p)?])
        }
        Suite::Step => {
            // The instance lives in [0, 3]^3 even when no coordinate
            // reaches 3, and the inductive step needs k >= 3 declared.
            let p = random_lattice_polytope(&mut rng, 3, 3)?.with_declared_k(3)?;
            let n = p.vertices().len();
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            Ok(vec![check_inductive_step(&p, u, v)?])
        }
    }
}

/// A random polygon translated so its coordinate-wise minimum is the
/// origin, resampled until the origin is one of its vertices.
fn polygon_through_origin(rng: &mut ChaCha8Rng, k: i64) -> Result<LatticePolytope> {
    for _ in 0..10_000 {
        let p = random_lattice_polytope(rng, 2, k)?;
        let mins: Vec<i64> = (0..2)
            .map(|j| p.vertices().iter().map(|v| v.coords()[j]).min().unwrap())
            .collect();
        let shifted: Vec<Vec<i64>> = p
            .vertices()
            .iter()
            .map(|v| vec![v.coords()[0] - mins[0], v.coords()[1] - mins[1]])
            .collect();
        if shifted.contains(&vec![0, 0]) {
            return LatticePolytope::from_points(shifted, 2);
        }
    }
    Err(Error::Internal("could not sample a polygon through the origin".into()))
}

/// Checks the boundary-descent inequality on the longest applicable arc
/// ending at the origin, trying both orientations; if no arc satisfies the
/// preconditions the maximal arc's not-applicable report is returned.
fn descending_path_check(p: &LatticePolytope) -> Result<CheckReport> {
    let cycle = polygon_cycle(p)?;
    let origin = p
        .vertices()
        .iter()
        .position(|v| v.coords() == [0, 0])
        .ok_or_else(|| Error::Internal("polygon does not pass through the origin".into()))?;
    let coords = |i: usize| p.vertices()[i].coords().to_vec();
    let mut fallback = None;
    for forward in [true, false] {
        let mut order: Vec<usize> = cycle.clone();
        if !forward {
            order.reverse();
        }
        let at = order.iter().position(|&i| i == origin).expect("origin on cycle");
        let shift = (at + 1) % order.len();
        order.rotate_left(shift);
        // `order` now ends with the origin; arcs are its suffixes read as
        // paths, longest first.
        for start in 0..order.len() - 1 {
            let arc: Vec<Vec<i64>> = order[start..].iter().map(|&i| coords(i)).collect();
            let step = [arc[0][0] - arc[1][0], arc[0][1] - arc[1][1]];
            if ![[1, 0], [0, 1], [1, 1]].contains(&step) {
                continue;
            }
            return check_polygon_path(&PolygonPath::new(arc)?);
        }
        if fallback.is_none() {
            let arc: Vec<Vec<i64>> = order.iter().map(|&i| coords(i)).collect();
            fallback = Some(check_polygon_path(&PolygonPath::new(arc)?)?);
        }
    }
    Ok(fallback.expect("fallback recorded on first orientation"))
}

/// Runs `n` seeded instances of a suite across `workers` threads.
///
/// Work is split into contiguous index chunks; since every instance is a
/// pure function of (seed, index), the concatenated reports are identical
/// for any worker count.
pub fn run_suite(suite: Suite, n: usize, seed: u64, workers: usize) -> Result<SuiteOutcome> {
    let workers = workers.clamp(1, n.max(1));
    let chunk = n.div_ceil(workers);
    let mut chunks: Vec<Result<Vec<CheckReport>>> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(n);
                scope.spawn(move || -> Result<Vec<CheckReport>> {
                    let mut out = Vec::new();
                    for index in lo..hi {
                        out.extend(run_instance(suite, seed, index as u64)?);
                    }
                    Ok(out)
                })
            })
            .collect();
        for handle in handles {
            chunks.push(handle.join().expect("suite worker panicked"));
        }
    });
    let mut reports = Vec::new();
    for chunk in chunks {
        reports.extend(chunk?);
    }
    Ok(SuiteOutcome { suite, instances: n, reports })
}
