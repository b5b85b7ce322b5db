//! Known bounds and exact values for the largest diameter of a lattice
//! `(d, k)`-polytope.
//!
//! Everything here is closed-form arithmetic: published upper bounds, the
//! conjectured-and-proved lower bound `⌊(k+1)d/2⌋` for `k ≤ 2d−1`, and the
//! short table of exactly known values.  Each reported number carries a
//! provenance tag naming the formula or table entry that produced it; the
//! tag spellings are part of the serialized report contract and must not
//! change.

use serde::Serialize;

use crate::error::{Error, Result};

/// Which formula or table entry produced a bound value.
///
/// Serialized exactly as spelled, e.g. `"DelPiaMichini"`; reports depend on
/// these strings staying stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// The exact value `d` at `k = 1`; also the all-`k` lower-bound floor,
    /// since the cube construction embeds in any larger box.
    Naddef,
    /// The always-valid upper bound `kd`.
    KleinschmidtOnn,
    /// `kd − ⌈d/2⌉` for `k ≥ 2`, and the exact `⌊3d/2⌋` at `k = 2`.
    DelPiaMichini,
    /// `kd − ⌈2d/3⌉` for `k ≥ 3`.
    Theorem1,
    /// `kd − ⌈2d/3⌉ − (k−2)` for `k ≥ 4`.
    Theorem2i,
    /// `⌊7d/3⌋ − 1` for `k = 3` when `d mod 3 ≠ 2`.
    Theorem2ii,
    /// `⌊7d/3⌋` for `k = 3` when `d mod 3 = 2`.
    Theorem2iii,
    /// The lower bound `⌊(k+1)d/2⌋` for `k ≤ 2d−1`, realized by zonotopes
    /// of primitive generators (conjectured to be tight).
    ConjectureLB,
    /// A tabulated exact value.
    Table1,
    /// The planar exact row `δ(2, k)` for `k ≤ 9`.
    TwoDimExact,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Naddef => "Naddef",
            Provenance::KleinschmidtOnn => "KleinschmidtOnn",
            Provenance::DelPiaMichini => "DelPiaMichini",
            Provenance::Theorem1 => "Theorem1",
            Provenance::Theorem2i => "Theorem2i",
            Provenance::Theorem2ii => "Theorem2ii",
            Provenance::Theorem2iii => "Theorem2iii",
            Provenance::ConjectureLB => "ConjectureLB",
            Provenance::Table1 => "Table1",
            Provenance::TwoDimExact => "TwoDimExact",
        }
    }
}

/// Bounds for one `(d, k)` pair.  `exact` is present only when the value is
/// known, in which case both bounds collapse onto it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRecord {
    pub d: usize,
    pub k: i64,
    pub lower: i64,
    pub lower_provenance: Provenance,
    pub upper: i64,
    pub upper_provenance: Provenance,
    pub exact: Option<i64>,
    pub settled: bool,
    #[serde(skip)]
    pub exact_provenance: Option<Provenance>,
}

/// Exact diameters `δ(2, k)` for `k = 1..=9`; values beyond the table are
/// deliberately not invented.
const TWO_DIM_ROW: [i64; 9] = [2, 3, 4, 4, 5, 6, 6, 7, 8];

fn check_dk(d: usize, k: i64) -> Result<()> {
    if d == 0 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "bounds are defined for d >= 1 and k >= 1, got d={d}, k={k}"
        )));
    }
    Ok(())
}

/// The known exact value of `δ(d, k)`, if any.
///
/// Covered: `d = 1` (always 1), `k = 1` (exactly `d`), `k = 2` (exactly
/// `⌊3d/2⌋`), the planar row up to `k = 9`, and the two settled
/// three-and-four-dimensional cases at `k = 3`.
pub fn delta_exact(d: usize, k: i64) -> Result<Option<(i64, Provenance)>> {
    check_dk(d, k)?;
    let value = if d == 1 {
        Some((1, Provenance::Table1))
    } else if k == 1 {
        Some((d as i64, Provenance::Naddef))
    } else if k == 2 {
        Some((3 * d as i64 / 2, Provenance::DelPiaMichini))
    } else if d == 2 && k <= 9 {
        Some((TWO_DIM_ROW[(k - 1) as usize], Provenance::TwoDimExact))
    } else if (d, k) == (3, 3) {
        Some((6, Provenance::Table1))
    } else if (d, k) == (4, 3) {
        Some((8, Provenance::Table1))
    } else {
        None
    };
    Ok(value)
}

/// Best known lower bound on `δ(d, k)` and where it comes from.
///
/// The winner is the largest of the zonotope bound `⌊(k+1)d/2⌋` (valid for
/// `k ≤ 2d−1`), the known exact value, and the floor `d` from the cube
/// construction, which survives inside any `[0, k]^d`.  Ties go to the
/// earlier candidate in that order, so a value explained by the general
/// construction is credited to it rather than to a table entry.
pub fn lower_bound(d: usize, k: i64) -> Result<(i64, Provenance)> {
    check_dk(d, k)?;
    let mut candidates: Vec<(i64, Provenance)> = Vec::new();
    if k <= 2 * d as i64 - 1 {
        candidates.push(((k + 1) * d as i64 / 2, Provenance::ConjectureLB));
    }
    if let Some((exact, _)) = delta_exact(d, k)? {
        candidates.push((exact, Provenance::Table1));
    }
    candidates.push((d as i64, Provenance::Naddef));
    let best = candidates.iter().map(|&(v, _)| v).max().expect("nonempty");
    Ok(*candidates.iter().find(|&&(v, _)| v == best).expect("nonempty"))
}

/// Best known upper bound on `δ(d, k)` and where it comes from.
///
/// Minimum over every formula whose gate on `k` and `d` is open, plus the
/// exact value when known.  Ties prefer the formulas (in decreasing order
/// of strength) over the table, so provenance shows which formula already
/// settles the case.
pub fn upper_bound(d: usize, k: i64) -> Result<(i64, Provenance)> {
    check_dk(d, k)?;
    let d_i = d as i64;
    let ceil_2d3 = (2 * d_i + 2) / 3;
    let mut candidates: Vec<(i64, Provenance)> = Vec::new();
    if k >= 4 {
        candidates.push((k * d_i - ceil_2d3 - (k - 2), Provenance::Theorem2i));
    }
    if k == 3 && d_i % 3 != 2 {
        candidates.push((7 * d_i / 3 - 1, Provenance::Theorem2ii));
    }
    if k == 3 && d_i % 3 == 2 {
        candidates.push((7 * d_i / 3, Provenance::Theorem2iii));
    }
    if k >= 3 {
        candidates.push((k * d_i - ceil_2d3, Provenance::Theorem1));
    }
    if k >= 2 {
        candidates.push((k * d_i - (d_i + 1) / 2, Provenance::DelPiaMichini));
    }
    candidates.push((k * d_i, Provenance::KleinschmidtOnn));
    if let Some((exact, _)) = delta_exact(d, k)? {
        candidates.push((exact, Provenance::Table1));
    }
    let best = candidates.iter().map(|&(v, _)| v).min().expect("nonempty");
    Ok(*candidates.iter().find(|&&(v, _)| v == best).expect("nonempty"))
}

/// One [`BoundRecord`] per pair in `1..=d_max × 1..=k_max`, in `d`-major
/// order.  Both limits are capped at 50: the formulas are closed-form, but
/// reports beyond the studied range would just print the obvious.
pub fn bounds_report(d_max: usize, k_max: i64) -> Result<Vec<BoundRecord>> {
    check_dk(d_max, k_max)?;
    if d_max > 50 || k_max > 50 {
        return Err(Error::InvalidArgument(format!(
            "report range is capped at 50, got d_max={d_max}, k_max={k_max}"
        )));
    }
    let mut records = Vec::with_capacity(d_max * k_max as usize);
    for d in 1..=d_max {
        for k in 1..=k_max {
            let (lower, lower_provenance) = lower_bound(d, k)?;
            let (upper, upper_provenance) = upper_bound(d, k)?;
            let exact = delta_exact(d, k)?;
            if let Some((value, _)) = exact {
                debug_assert!(lower == value && upper == value);
            }
            records.push(BoundRecord {
                d,
                k,
                lower,
                lower_provenance,
                upper,
                upper_provenance,
                exact: exact.map(|(v, _)| v),
                settled: lower == upper,
                exact_provenance: exact.map(|(_, p)| p),
            });
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_values_cover_the_settled_cases() {
        assert_eq!(delta_exact(3, 3).unwrap(), Some((6, Provenance::Table1)));
        assert_eq!(delta_exact(4, 3).unwrap(), Some((8, Provenance::Table1)));
        assert_eq!(delta_exact(3, 4).unwrap(), None);
        assert_eq!(delta_exact(5, 1).unwrap(), Some((5, Provenance::Naddef)));
        assert_eq!(
            delta_exact(6, 2).unwrap(),
            Some((9, Provenance::DelPiaMichini))
        );
        assert_eq!(delta_exact(1, 7).unwrap(), Some((1, Provenance::Table1)));
        for (k, &v) in (1..=9).zip(&TWO_DIM_ROW) {
            let (got, _) = delta_exact(2, k).unwrap().unwrap();
            assert_eq!(got, v, "plane at k={k}");
        }
        assert_eq!(delta_exact(2, 10).unwrap(), None);
        assert!(delta_exact(0, 1).is_err());
        assert!(delta_exact(2, 0).is_err());
    }

    #[test]
    fn lower_bounds_and_their_sources() {
        assert_eq!(lower_bound(4, 3).unwrap(), (8, Provenance::ConjectureLB));
        assert_eq!(lower_bound(3, 4).unwrap(), (7, Provenance::ConjectureLB));
        assert_eq!(lower_bound(3, 5).unwrap(), (9, Provenance::ConjectureLB));
        assert_eq!(lower_bound(5, 3).unwrap(), (10, Provenance::ConjectureLB));
        // The zonotope formula needs k <= 2d-1, so the plane at k = 9 falls
        // back to the tabulated value.
        assert_eq!(lower_bound(2, 9).unwrap(), (8, Provenance::Table1));
        assert_eq!(lower_bound(2, 30).unwrap(), (2, Provenance::Naddef));
    }

    #[test]
    fn upper_bounds_and_their_sources() {
        assert_eq!(upper_bound(4, 3).unwrap(), (8, Provenance::Theorem2ii));
        assert_eq!(upper_bound(3, 4).unwrap(), (8, Provenance::Theorem2i));
        assert_eq!(upper_bound(5, 3).unwrap(), (11, Provenance::Theorem2iii));
        assert_eq!(upper_bound(3, 3).unwrap(), (6, Provenance::Theorem2ii));
        assert_eq!(upper_bound(2, 7).unwrap(), (6, Provenance::Table1));
        assert_eq!(upper_bound(7, 1).unwrap(), (7, Provenance::KleinschmidtOnn));
    }

    #[test]
    fn open_intervals_match_the_known_gaps() {
        for (d, k, lo, hi) in [(3, 4, 7, 8), (3, 5, 9, 10), (5, 3, 10, 11)] {
            assert_eq!(lower_bound(d, k).unwrap().0, lo, "({d},{k}) lower");
            assert_eq!(upper_bound(d, k).unwrap().0, hi, "({d},{k}) upper");
            assert_eq!(delta_exact(d, k).unwrap(), None, "({d},{k}) open");
        }
    }

    #[test]
    fn small_report_is_fully_settled() {
        let report = bounds_report(4, 3).unwrap();
        assert_eq!(report.len(), 12);
        let expect = [
            (1, 1, 1),
            (1, 2, 1),
            (1, 3, 1),
            (2, 1, 2),
            (2, 2, 3),
            (2, 3, 4),
            (3, 1, 3),
            (3, 2, 4),
            (3, 3, 6),
            (4, 1, 4),
            (4, 2, 6),
            (4, 3, 8),
        ];
        for (r, (d, k, v)) in report.iter().zip(expect) {
            assert_eq!((r.d, r.k), (d, k));
            assert!(r.settled, "({d},{k}) should be settled");
            assert_eq!(r.exact, Some(v));
            assert_eq!(r.lower, v);
            assert_eq!(r.upper, v);
        }
    }

    #[test]
    fn one_dimensional_records_are_always_exact() {
        let report = bounds_report(1, 50).unwrap();
        assert!(report.iter().all(|r| r.exact == Some(1) && r.settled));
    }

    #[test]
    fn bounds_never_cross() {
        for d in 1..=20 {
            for k in 1..=20 {
                let (lo, _) = lower_bound(d, k).unwrap();
                let (hi, _) = upper_bound(d, k).unwrap();
                assert!(lo <= hi, "({d},{k}): {lo} > {hi}");
                if let Some((exact, _)) = delta_exact(d, k).unwrap() {
                    assert_eq!(lo, exact, "({d},{k}) lower vs exact");
                    assert_eq!(hi, exact, "({d},{k}) upper vs exact");
                }
            }
        }
    }

    #[test]
    fn formula_chain_is_monotone() {
        for d in 1..=20i64 {
            let ceil_2d3 = (2 * d + 2) / 3;
            for k in 3..=20i64 {
                let t1 = k * d - ceil_2d3;
                let dpm = k * d - (d + 1) / 2;
                let ko = k * d;
                assert!(t1 <= dpm && dpm <= ko, "chain at ({d},{k})");
                if k >= 4 {
                    let t2i = k * d - ceil_2d3 - (k - 2);
                    assert!(t2i <= t1, "strengthening at ({d},{k})");
                }
            }
        }
    }

    #[test]
    fn conjectured_value_is_compatible_with_upper_bounds() {
        for d in 2..=20 {
            for k in 3..=(2 * d as i64 - 1) {
                let conjectured = (k + 1) * d as i64 / 2;
                let (hi, _) = upper_bound(d, k).unwrap();
                assert!(conjectured <= hi, "({d},{k}): {conjectured} > {hi}");
            }
        }
    }

    #[test]
    fn report_serializes_with_the_fixed_schema() {
        let report = bounds_report(4, 3).unwrap();
        let last = serde_json::to_string(&report[11]).unwrap();
        assert_eq!(
            last,
            "{\"d\":4,\"k\":3,\"lower\":8,\"lower_provenance\":\"ConjectureLB\",\
             \"upper\":8,\"upper_provenance\":\"Theorem2ii\",\"exact\":8,\"settled\":true}"
        );
        let open = bounds_report(3, 5).unwrap();
        let r35 = open.iter().find(|r| (r.d, r.k) == (3, 5)).unwrap();
        let text = serde_json::to_string(r35).unwrap();
        assert_eq!(
            text,
            "{\"d\":3,\"k\":5,\"lower\":9,\"lower_provenance\":\"ConjectureLB\",\
             \"upper\":10,\"upper_provenance\":\"Theorem2i\",\"exact\":null,\"settled\":false}"
        );
    }

    #[test]
    fn report_range_is_capped() {
        assert!(bounds_report(51, 3).is_err());
        assert!(bounds_report(3, 51).is_err());
        assert!(bounds_report(0, 3).is_err());
    }

    #[test]
    fn measured_octagon_respects_its_bounds() {
        let gens = crate::zonotope::primitive_generators(2, 2).unwrap();
        let p = crate::zonotope::zonotope_vertices(&gens).unwrap();
        let (diam, _) = crate::graph::diameter(&p).unwrap();
        let (hi, _) = upper_bound(p.dim(), p.k()).unwrap();
        assert!(diam as i64 <= hi);
        assert_eq!(diam as i64, lower_bound(p.dim(), p.k()).unwrap().0);
    }
}
