use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Result, ShapeError};
use crate::grid::{boxdot_family, standard_grid, BoxdotSpec};
use crate::map::{box_condition, GridMap};
use crate::shape::{Coord, LatticeBox, PastingShape};
use crate::structure::division::DivisionPair;

/// Which clause made a subshape fillable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FillBranch {
    Truncated,
    ImageInK(GridMap),
    Boxdot(GridMap, BoxdotSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FillableReport {
    pub fillable: bool,
    pub branch: Option<FillBranch>,
}

/// Every injective `d`-shaping map from a standard grid into `f`, as
/// per-direction line sets.
pub fn shaping_maps(f: &PastingShape) -> Vec<GridMap> {
    let d = f.dim();
    let mut required: Vec<BTreeSet<Coord>> = vec![BTreeSet::new(); d];
    for b in f.boxes_of_dim(d) {
        for a in 0..d {
            required[a].insert(b.lo[a]);
            required[a].insert(b.hi[a]);
        }
    }
    if d == 0 || required.iter().any(|r| r.len() < 2) {
        return vec![];
    }
    let per_dir: Vec<Vec<Vec<Coord>>> = (0..d)
        .map(|a| {
            let extra: Vec<Coord> = f.coordinate_values(a).into_iter().filter(|c| !required[a].contains(c)).collect();
            (0u64..1 << extra.len())
                .map(|mask| {
                    let mut s = required[a].clone();
                    s.extend(extra.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c));
                    s.into_iter().collect()
                })
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Vec<Coord>>> = vec![vec![]];
    for options in &per_dir {
        out = out
            .iter()
            .flat_map(|p| {
                options.iter().map(move |o| {
                    let mut p = p.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    out.into_iter().filter(|lines| box_condition(f, lines)).map(|lines| GridMap { lines }).collect()
}

fn image_in(map: &GridMap, target: &PastingShape) -> bool {
    box_condition(target, &map.lines)
}

/// The shortcut criterion: for every direction,
/// `max(min f_a, α_a) < min(max f_a, ω_a)` with both values hit by `f_a`.
pub fn boxdot_criterion(map: &GridMap, window: &LatticeBox) -> Option<BoxdotSpec> {
    let mut w = Vec::with_capacity(map.dim());
    for (a, l) in map.lines.iter().enumerate() {
        let lo = l[0].max(window.lo[a]);
        let hi = l[l.len() - 1].min(window.hi[a]);
        if lo >= hi {
            return None;
        }
        let i0 = l.binary_search(&lo).ok()?;
        let i1 = l.binary_search(&hi).ok()?;
        w.push((i0 as Coord, i1 as Coord));
    }
    Some(BoxdotSpec { extents: map.extents(), window: w })
}

fn check_subshape(f: &PastingShape, ambient: &PastingShape) -> Result<()> {
    if f.dim() != ambient.dim() {
        return Err(ShapeError::DimensionMismatch { expected: ambient.dim(), found: f.dim() });
    }
    match f.boxes().iter().find(|b| !ambient.contains(b)) {
        Some(b) => Err(ShapeError::NotSubshape(b.clone())),
        None => Ok(()),
    }
}

/// Decides fillability through the criterion on shaping maps.
pub fn is_fillable(f: &PastingShape, pair: &DivisionPair) -> Result<FillableReport> {
    check_subshape(f, &pair.ambient)?;
    let d = f.dim();
    if f.is_truncated(d.saturating_sub(1)) {
        return Ok(FillableReport { fillable: true, branch: Some(FillBranch::Truncated) });
    }
    let window = pair.j.bounding_box().ok_or(ShapeError::EmptyShape)?;
    for m in shaping_maps(f) {
        if image_in(&m, &pair.k) {
            return Ok(FillableReport { fillable: true, branch: Some(FillBranch::ImageInK(m)) });
        }
        if let Some(spec) = boxdot_criterion(&m, &window) {
            return Ok(FillableReport { fillable: true, branch: Some(FillBranch::Boxdot(m, spec)) });
        }
    }
    Ok(FillableReport { fillable: false, branch: None })
}

/// Decides fillability from the definition: searches every shaping map and
/// every window `i` for a map of division pairs `(⊡[i], A[i]) → (K, J)`.
pub fn fillable_by_definition(f: &PastingShape, pair: &DivisionPair) -> Result<bool> {
    check_subshape(f, &pair.ambient)?;
    let d = f.dim();
    if f.is_truncated(d.saturating_sub(1)) {
        return Ok(true);
    }
    for m in shaping_maps(f) {
        if image_in(&m, &pair.k) {
            return Ok(true);
        }
        let source = standard_grid(&m.extents());
        let image = |b: &LatticeBox| LatticeBox::from_vertices(m.apply(&b.lo), m.apply(&b.hi));
        let pre_j: BTreeSet<LatticeBox> = source.boxes().iter().filter(|b| pair.j.contains(&image(b))).cloned().collect();
        let pre_k: Vec<LatticeBox> = source.boxes().iter().filter(|b| pair.k.contains(&image(b))).cloned().collect();
        let tr = source.truncate(d - 1)?;
        let lhs = PastingShape::close(d, pre_k.into_iter().chain(tr.boxes().iter().cloned()))?;
        for spec in BoxdotSpec::all_for(&m.extents()) {
            let fam = boxdot_family(&spec)?;
            if &pre_j != fam.a.boxes() {
                continue;
            }
            let rhs = fam.boxdot.union(&tr)?;
            if lhs == rhs {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
