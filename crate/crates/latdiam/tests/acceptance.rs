//! The release gate.  Every criterion the toolkit promises is checked
//! here end to end, one pass/fail line each; the test fails if any
//! criterion fails or blows its time budget.  Run with --nocapture to see
//! the lines on success too.

use std::time::{Duration, Instant};

use latdiam::bounds::{bounds_report, upper_bound, Provenance};
use latdiam::geometry::LatticePolytope;
use latdiam::graph;
use latdiam::lemmas::CheckStatus;
use latdiam::oracle::certified_edges;
use latdiam::sample::{instance_rng, run_suite, Suite};
use latdiam::search::{canonical_digest, max_diameter_2d_edge_vectors, max_diameter_2d_subsets};
use latdiam::zonotope::{
    h1_2d_stats, primitive_generators, subset_search, zonotope_in_span, zonotope_vertices,
};
use rand::Rng;

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Result<String, String>,
}

fn check<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

// 1. The d=2 row of small exact values, from both enumeration strategies.
fn c1_two_dimensional_row() -> Result<String, String> {
    let subsets_started = Instant::now();
    for (k, want) in [(1, 2u32), (2, 3), (3, 4)] {
        let (value, certs) = max_diameter_2d_subsets(k).map_err(|e| e.to_string())?;
        check(&format!("subset value at k={k}"), value, want)?;
        if certs.is_empty() {
            return Err(format!("no maximizers at k={k}"));
        }
    }
    let subsets_elapsed = subsets_started.elapsed();
    if subsets_elapsed > Duration::from_secs(60) {
        return Err(format!("subset enumeration took {subsets_elapsed:.1?} (limit 1 minute)"));
    }
    let (value, certs) = max_diameter_2d_edge_vectors(4).map_err(|e| e.to_string())?;
    check("edge-vector value at k=4", value, 4)?;
    Ok(format!(
        "k=1..3 give 2,3,4 (subsets, {subsets_elapsed:.1?}); k=4 gives 4 with {} classes",
        certs.len()
    ))
}

// 2. Primitive zonogon stats and their witnesses.
fn c2_zonogon_witnesses() -> Result<String, String> {
    let mut details = Vec::new();
    for (p, want_k, want_diam) in [(1, 1, 2u32), (2, 3, 4), (3, 9, 8)] {
        let stats = h1_2d_stats(p).map_err(|e| e.to_string())?;
        check(&format!("k at p={p}"), stats.k, want_k)?;
        check(&format!("formula diameter at p={p}"), stats.diameter, want_diam)?;
    }
    for p in [2, 3] {
        let stats = h1_2d_stats(p).map_err(|e| e.to_string())?;
        let gens = primitive_generators(2, p).map_err(|e| e.to_string())?;
        let z = zonotope_vertices(&gens).map_err(|e| e.to_string())?;
        let (diam, _) = graph::diameter(&z).map_err(|e| e.to_string())?;
        check(&format!("BFS diameter at p={p}"), diam, stats.diameter)?;
        check(&format!("box fit at p={p}"), z.extents(), vec![(0, stats.k); 2])?;
        details.push(format!("p={p}: diameter {diam} in [0,{}]^2", stats.k));
    }
    Ok(details.join("; "))
}

// 3. The k=3 maximizer is unique up to symmetry: the 8-gon from the
//    1-norm-at-most-2 primitive generators.
fn c3_octagon_uniqueness() -> Result<String, String> {
    let (value, certs) = max_diameter_2d_subsets(3).map_err(|e| e.to_string())?;
    check("maximum at k=3", value, 4)?;
    check("maximizer class count", certs.len(), 1)?;
    let octagon = zonotope_vertices(&primitive_generators(2, 2).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    check(
        "maximizer class",
        certs[0].canonical_digest.clone(),
        canonical_digest(&octagon),
    )?;
    Ok("unique maximizer class = the primitive-generator octagon".into())
}

// 4. The settled (4,3) case from both sides: the upper-bound formula and
//    an explicit diameter-8 zonotope witness.
fn c4_four_three_settled() -> Result<String, String> {
    let (upper, provenance) = upper_bound(4, 3).map_err(|e| e.to_string())?;
    check("upper bound value", upper, 8)?;
    check("upper bound source", provenance, Provenance::Theorem2ii)?;
    let found = subset_search(4, 3, 8)
        .map_err(|e| e.to_string())?
        .ok_or("subset search found no witness")?;
    check("generator count", found.len(), 8)?;
    let universe = primitive_generators(4, 2).map_err(|e| e.to_string())?;
    for v in found.vectors() {
        if !universe.vectors().contains(v) {
            return Err(format!("witness generator {v:?} outside the p=2 universe"));
        }
    }
    let z = zonotope_vertices(&found).map_err(|e| e.to_string())?;
    for (lo, hi) in z.extents() {
        if lo != 0 || hi > 3 {
            return Err(format!("witness zonotope leaves [0,3]^4: extent ({lo},{hi})"));
        }
    }
    let (diam, _) = graph::diameter(&z).map_err(|e| e.to_string())?;
    check("witness diameter", diam, 8)?;
    Ok(format!(
        "upper_bound(4,3) = 8 [{}]; 8-generator zonotope in [0,3]^4 has BFS diameter 8",
        provenance.as_str()
    ))
}

// 5. The open intervals as published.
fn c5_open_intervals() -> Result<String, String> {
    let report = bounds_report(5, 5).map_err(|e| e.to_string())?;
    let expect = [(3usize, 4i64, 7i64, 8i64), (3, 5, 9, 10), (5, 3, 10, 11)];
    for (d, k, lo, hi) in expect {
        let rec = report
            .iter()
            .find(|r| r.d == d && r.k == k)
            .ok_or(format!("({d},{k}) missing from the report"))?;
        check(&format!("lower at ({d},{k})"), rec.lower, lo)?;
        check(&format!("upper at ({d},{k})"), rec.upper, hi)?;
        check(&format!("settled at ({d},{k})"), rec.settled, false)?;
        check(&format!("exact at ({d},{k})"), rec.exact, None)?;
    }
    Ok("7<=δ(3,4)<=8, 9<=δ(3,5)<=10, 10<=δ(5,3)<=11, all open".into())
}

// 6. The asymptotic estimate is within 10% by p=3 already.
fn c6_asymptotic_ratio() -> Result<String, String> {
    let mut ratios = Vec::new();
    for p in [3, 4, 5] {
        let stats = h1_2d_stats(p).map_err(|e| e.to_string())?;
        let ratio = f64::from(stats.diameter) / stats.estimate;
        if !(0.90..=1.10).contains(&ratio) {
            return Err(format!("p={p}: ratio {ratio:.4} outside [0.90, 1.10]"));
        }
        ratios.push(format!("p={p}: {ratio:.3}"));
    }
    Ok(ratios.join(", "))
}

// 7. The randomized suites at N=1000, seed 0: no violations anywhere.
fn c7_randomized_suites() -> Result<String, String> {
    let mut summary = Vec::new();
    let mut strict_reports = 0;
    for suite in Suite::ALL {
        let outcome = run_suite(suite, 1000, 0, 4).map_err(|e| e.to_string())?;
        let violated = outcome.count(CheckStatus::Violated);
        if violated > 0 {
            let first = outcome.violations().next().unwrap();
            return Err(format!(
                "{}: {violated} violations, first: {first:?}",
                suite.as_str()
            ));
        }
        strict_reports += outcome
            .reports
            .iter()
            .filter(|r| r.lemma == "lemma3_strict")
            .count();
        summary.push(format!(
            "{} holds {}",
            suite.as_str(),
            outcome.count(CheckStatus::Holds)
        ));
    }
    if strict_reports == 0 {
        return Err("the strictness side condition never triggered at N=1000".into());
    }
    Ok(format!(
        "{}; strictness triggered {strict_reports} times, 0 violations",
        summary.join(", ")
    ))
}

// 8a. Rebuilding a hull from its own vertices changes nothing.
fn hull_idempotence() -> Result<usize, String> {
    let mut built = 0;
    let mut index = 0u64;
    while built < 1000 {
        let mut rng = instance_rng(0xACCE97, index);
        index += 1;
        let d = rng.gen_range(1..=4);
        let n = rng.gen_range(4..=12);
        let points: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(0..=5)).collect())
            .collect();
        let first = match LatticePolytope::from_points(points, d) {
            Ok(p) => p,
            Err(latdiam::Error::Degenerate { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let coords: Vec<Vec<i64>> = first
            .vertices()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect();
        let second = LatticePolytope::from_points(coords, d).map_err(|e| e.to_string())?;
        if first != second {
            return Err(format!("hull not idempotent on instance {index}"));
        }
        built += 1;
    }
    Ok(built)
}

// 8b. Hull edges agree with the brute-force functional oracle.
fn edge_soundness() -> Result<usize, String> {
    let mut checked = 0;
    let mut index = 0u64;
    while checked < 250 {
        let mut rng = instance_rng(0xED6E, index);
        index += 1;
        let d = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=4);
        let n = rng.gen_range(4..=10);
        let points: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..d).map(|_| rng.gen_range(0..=k)).collect())
            .collect();
        let p = match LatticePolytope::from_points(points, d) {
            Ok(p) => p,
            Err(latdiam::Error::Degenerate { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        };
        if p.vertices().len() > 12 {
            continue;
        }
        let hull_edges: Vec<(usize, usize)> = p.edges().to_vec();
        let mut agreed = false;
        for bound in [4, 8, 16, 32, 48] {
            let certified = certified_edges(&p, bound).map_err(|e| e.to_string())?;
            for e in &certified {
                if !hull_edges.contains(e) {
                    return Err(format!(
                        "oracle certified non-hull edge {e:?} on instance {index} (bound {bound})"
                    ));
                }
            }
            if certified == hull_edges {
                agreed = true;
                break;
            }
        }
        if !agreed {
            return Err(format!(
                "oracle never reproduced the hull edge set on instance {index}"
            ));
        }
        checked += 1;
    }
    Ok(checked)
}

// 8c. Diameter of a zonotope = number of generating directions, for every
//     subset of the p=2 primitive generators with m <= 8, d <= 4 —
//     including rank-deficient subsets, built inside their own span.
fn zonotope_diameter_law() -> Result<usize, String> {
    let mut total = 0usize;
    for d in 2..=4usize {
        let universe = primitive_generators(d, 2).map_err(|e| e.to_string())?;
        let vectors = universe.vectors();
        let n = vectors.len();
        let masks: Vec<u32> = (1u32..(1 << n))
            .filter(|m| m.count_ones() <= 8)
            .collect();
        total += masks.len();
        let workers = 8;
        let chunk = masks.len().div_ceil(workers);
        let failures: Vec<String> = std::thread::scope(|scope| {
            let handles: Vec<_> = masks
                .chunks(chunk)
                .map(|slice| {
                    scope.spawn(move || -> Option<String> {
                        for &mask in slice {
                            let subset: Vec<Vec<i64>> = (0..n)
                                .filter(|&i| mask >> i & 1 == 1)
                                .map(|i| vectors[i].clone())
                                .collect();
                            let m = subset.len() as u32;
                            let z = match zonotope_in_span(d, &subset) {
                                Ok(z) => z,
                                Err(e) => return Some(format!("d={d} mask {mask:#x}: {e}")),
                            };
                            match graph::diameter(&z) {
                                Ok((diam, _)) if diam == m => {}
                                Ok((diam, _)) => {
                                    return Some(format!(
                                        "d={d} mask {mask:#x}: diameter {diam}, m={m}"
                                    ))
                                }
                                Err(e) => return Some(format!("d={d} mask {mask:#x}: {e}")),
                            }
                        }
                        None
                    })
                })
                .collect();
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("law worker panicked"))
                .collect()
        });
        if let Some(first) = failures.first() {
            return Err(first.clone());
        }
    }
    Ok(total)
}

fn c8_structural_suite() -> Result<String, String> {
    let hulls = hull_idempotence()?;
    let edges = edge_soundness()?;
    let laws = zonotope_diameter_law()?;
    Ok(format!(
        "{hulls} hulls idempotent, {edges} edge sets oracle-matched, {laws} zonotope subsets obey diameter=m"
    ))
}

#[test]
fn acceptance() {
    let criteria = [
        Criterion {
            name: "1. exact 2-D maxima k=1..4",
            limit: Some(Duration::from_secs(660)),
            run: c1_two_dimensional_row,
        },
        Criterion {
            name: "2. primitive zonogon witnesses",
            limit: Some(Duration::from_secs(60)),
            run: c2_zonogon_witnesses,
        },
        Criterion {
            name: "3. k=3 maximizer uniqueness",
            limit: None,
            run: c3_octagon_uniqueness,
        },
        Criterion {
            name: "4. (4,3) settled both ways",
            limit: Some(Duration::from_secs(300)),
            run: c4_four_three_settled,
        },
        Criterion {
            name: "5. open intervals",
            limit: None,
            run: c5_open_intervals,
        },
        Criterion {
            name: "6. asymptotic ratio",
            limit: None,
            run: c6_asymptotic_ratio,
        },
        Criterion {
            name: "7. randomized suites N=1000",
            limit: Some(Duration::from_secs(300)),
            run: c7_randomized_suites,
        },
        Criterion {
            name: "8. structural suite",
            limit: None,
            run: c8_structural_suite,
        },
    ];
    let mut failures = Vec::new();
    for c in &criteria {
        let started = Instant::now();
        let result = (c.run)();
        let elapsed = started.elapsed();
        let timed_out = c.limit.is_some_and(|l| elapsed > l);
        match (&result, timed_out) {
            (Ok(detail), false) => {
                println!("[PASS] {} — {detail} ({elapsed:.1?})", c.name);
            }
            (Ok(detail), true) => {
                println!(
                    "[FAIL] {} — over time limit {:?} (took {elapsed:.1?}; result was: {detail})",
                    c.name,
                    c.limit.unwrap()
                );
                failures.push(c.name);
            }
            (Err(reason), _) => {
                println!("[FAIL] {} — {reason} ({elapsed:.1?})", c.name);
                failures.push(c.name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
