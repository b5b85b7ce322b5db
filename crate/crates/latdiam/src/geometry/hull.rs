//! Incremental convex hull over exact integer arithmetic.
//!
//! Points are inserted one at a time into a facet list. A facet stores its
//! primitive inward normal, its offset, and the ids of every kept point lying
//! on its hyperplane (not just the facet's vertices; interior points of the
//! facet are retained so that ridge detection can work by exact affine rank).
//! Coplanar insertions extend the facet they land on instead of splitting it,
//! so the output facets are the true (merged) facets of the hull, not a
//! triangulation.

use crate::error::{Error, Result};
use crate::linalg;

pub(crate) struct RawFacet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Sorted ids of kept points on this facet's hyperplane.
    pub inc: Vec<u32>,
}

pub(crate) struct RawHull {
    /// Deduplicated input points, lexicographically sorted.
    pub points: Vec<Vec<i64>>,
    pub facets: Vec<RawFacet>,
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Visible,
    On,
    Hidden,
}

struct Builder {
    d: usize,
    pts: Vec<Vec<i64>>,
    facets: Vec<Option<RawFacet>>,
    /// point id -> facet ids it is incident to (may contain dead entries,
    /// filtered on read).
    point_facets: Vec<Vec<u32>>,
    /// Sum of the initial simplex vertices: (d+1) times a strictly interior
    /// rational point, used to orient normals inward.
    interior_ref: Vec<i128>,
}

pub(crate) fn build(mut pts: Vec<Vec<i64>>, d: usize) -> Result<RawHull> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    if pts.is_empty() {
        return Err(Error::EmptyInput);
    }
    for p in &pts {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
    }
    pts.sort();
    pts.dedup();

    if d == 1 {
        return build_1d(pts);
    }

    let basis = linalg::affine_basis(&pts)?;
    if basis.len() < d + 1 {
        return Err(Error::Degenerate {
            affine_dim: basis.len() - 1,
            required: d,
        });
    }
    let basis = &basis[..d + 1];

    let mut interior_ref = vec![0i128; d];
    for &b in basis {
        for (acc, &x) in interior_ref.iter_mut().zip(&pts[b]) {
            *acc += x as i128;
        }
    }

    let n_pts = pts.len();
    let mut builder = Builder {
        d,
        pts,
        facets: Vec::new(),
        point_facets: vec![Vec::new(); n_pts],
        interior_ref,
    };

    // Initial simplex: one facet per omitted basis point.
    for omit in 0..=d {
        let face: Vec<u32> = basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != omit)
            .map(|(_, &b)| b as u32)
            .collect();
        let facet = builder.facet_through(&face)?;
        builder.push_facet(facet);
    }

    let in_basis = |i: usize| basis.contains(&i);
    for i in 0..builder.pts.len() {
        if !in_basis(i) {
            builder.insert(i as u32)?;
        }
    }

    let facets = builder.facets.into_iter().flatten().collect();
    Ok(RawHull {
        points: builder.pts,
        facets,
    })
}

fn build_1d(pts: Vec<Vec<i64>>) -> Result<RawHull> {
    // After dedup the points are sorted; the hull is the outer pair.
    if pts.len() < 2 {
        return Err(Error::Degenerate {
            affine_dim: 0,
            required: 1,
        });
    }
    let lo = pts[0][0];
    let hi = pts[pts.len() - 1][0];
    let last = (pts.len() - 1) as u32;
    let facets = vec![
        RawFacet {
            normal: vec![1],
            offset: lo,
            inc: vec![0],
        },
        RawFacet {
            normal: vec![-1],
            offset: hi.checked_neg().ok_or(Error::Overflow)?,
            inc: vec![last],
        },
    ];
    Ok(RawHull { points: pts, facets })
}

impl Builder {
    /// Construct the facet whose hyperplane passes through the given points
    /// (which must have affine rank d-1... d points spanning a hyperplane,
    /// possibly more), oriented inward.
    fn facet_through(&self, inc: &[u32]) -> Result<RawFacet> {
        let pts: Vec<&[i64]> = inc.iter().map(|&i| self.pts[i as usize].as_slice()).collect();
        let base = pts[0];
        let picked = linalg::affine_basis(&pts)?;
        if picked.len() != self.d {
            return Err(Error::Internal(format!(
                "facet support has affine rank {}, expected {}",
                picked.len(),
                self.d
            )));
        }
        let dirs: Vec<Vec<i128>> = picked[1..]
            .iter()
            .map(|&i| {
                pts[i]
                    .iter()
                    .zip(base.iter())
                    .map(|(&a, &b)| a as i128 - b as i128)
                    .collect()
            })
            .collect();
        let normal = linalg::hyperplane_normal(&dirs, self.d)?;
        let offset = linalg::dot(&normal, base)?;
        self.orient_inward(normal, offset, inc)
    }

    fn orient_inward(&self, normal: Vec<i64>, offset: i64, inc: &[u32]) -> Result<RawFacet> {
        let mut lhs: i128 = 0;
        for (&n, &r) in normal.iter().zip(&self.interior_ref) {
            lhs = linalg::checked_add(lhs, linalg::checked_mul(n as i128, r)?)?;
        }
        let rhs = linalg::checked_mul(offset as i128, (self.d + 1) as i128)?;
        let mut facet = RawFacet {
            normal,
            offset,
            inc: inc.to_vec(),
        };
        if lhs == rhs {
            return Err(Error::Internal(
                "interior reference lies on a candidate facet".into(),
            ));
        }
        if lhs < rhs {
            for x in &mut facet.normal {
                *x = -*x;
            }
            facet.offset = -facet.offset;
        }
        facet.inc.sort_unstable();
        Ok(facet)
    }

    fn push_facet(&mut self, facet: RawFacet) -> u32 {
        let id = self.facets.len() as u32;
        for &p in &facet.inc {
            self.point_facets[p as usize].push(id);
        }
        self.facets.push(Some(facet));
        id
    }

    fn classify(&self, q: &[i64]) -> Result<Vec<Option<Side>>> {
        let mut sides = vec![None; self.facets.len()];
        for (id, slot) in self.facets.iter().enumerate() {
            let Some(f) = slot else { continue };
            let v = linalg::dot(&f.normal, q)?
                .checked_sub(f.offset)
                .ok_or(Error::Overflow)?;
            sides[id] = Some(match v.cmp(&0) {
                std::cmp::Ordering::Less => Side::Visible,
                std::cmp::Ordering::Equal => Side::On,
                std::cmp::Ordering::Greater => Side::Hidden,
            });
        }
        Ok(sides)
    }

    fn insert(&mut self, q: u32) -> Result<()> {
        let sides = self.classify(&self.pts[q as usize])?;
        let visible: Vec<u32> = sides
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Some(Side::Visible))
            .map(|(i, _)| i as u32)
            .collect();
        if visible.is_empty() {
            // q is inside the current hull (possibly on its boundary); it can
            // never become a vertex, so it is dropped entirely.
            return Ok(());
        }

        // New facets arise from horizon ridges: ridges shared by a visible
        // facet and a hidden one. Coplanar ("on") facets are extended by q
        // instead and contribute no ridge facets.
        let mut created: Vec<RawFacet> = Vec::new();
        for &fv in &visible {
            let inc_v = self.facets[fv as usize].as_ref().unwrap().inc.clone();
            let mut shared_count: Vec<(u32, u32)> = Vec::new();
            for &p in &inc_v {
                for &g in &self.point_facets[p as usize] {
                    if sides[g as usize] != Some(Side::Hidden) {
                        continue;
                    }
                    match shared_count.iter_mut().find(|(id, _)| *id == g) {
                        Some((_, c)) => *c += 1,
                        None => shared_count.push((g, 1)),
                    }
                }
            }
            for (g, count) in shared_count {
                if (count as usize) < self.d - 1 {
                    continue;
                }
                let inc_g = &self.facets[g as usize].as_ref().unwrap().inc;
                let shared = intersect_sorted(&inc_v, inc_g);
                let shared_pts: Vec<&[i64]> = shared
                    .iter()
                    .map(|&i| self.pts[i as usize].as_slice())
                    .collect();
                if linalg::affine_dim(&shared_pts)? != self.d - 2 {
                    continue;
                }
                let mut inc_new = shared;
                inc_new.push(q);
                created.push(self.facet_through(&inc_new)?);
            }
        }

        for (id, side) in sides.iter().enumerate() {
            match side {
                Some(Side::Visible) => {
                    let f = self.facets[id].take().unwrap();
                    for &p in &f.inc {
                        self.point_facets[p as usize].retain(|&x| x != id as u32);
                    }
                }
                Some(Side::On) => {
                    let f = self.facets[id].as_mut().unwrap();
                    let pos = f.inc.binary_search(&q).unwrap_err();
                    f.inc.insert(pos, q);
                    self.point_facets[q as usize].push(id as u32);
                }
                _ => {}
            }
        }
        for f in created {
            self.push_facet(f);
        }
        Ok(())
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
