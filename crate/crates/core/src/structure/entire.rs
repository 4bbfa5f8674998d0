use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::shape::{Coord, LatticeBox, PastingShape};

/// Bounding window of a `k`-entire subshape and its classification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EntireWitness {
    pub window: LatticeBox,
    pub k: usize,
    pub closed: bool,
    pub open: bool,
}

/// Codimension-one corner faces of a box.
pub(crate) fn facets(b: &LatticeBox) -> Vec<LatticeBox> {
    let mut out = Vec::new();
    for a in b.strict_dirs() {
        let mut lo_face = b.clone();
        lo_face.hi.0[a] = b.lo[a];
        let mut hi_face = b.clone();
        hi_face.lo.0[a] = b.hi[a];
        out.push(lo_face);
        out.push(hi_face);
    }
    out
}

/// `true` if every proper corner face of `window` lies in `shape`.
pub fn is_window(shape: &PastingShape, window: &LatticeBox) -> bool {
    if window.is_vertex() {
        return shape.contains(window);
    }
    facets(window).iter().all(|f| shape.contains(f))
}

/// The entire subshape of `shape` over `window`, if the window's proper
/// faces are all present.
pub fn entire_subshape(shape: &PastingShape, window: &LatticeBox) -> Option<(PastingShape, EntireWitness)> {
    if window.ambient_dim() != shape.dim() || !is_window(shape, window) {
        return None;
    }
    let k = window.dimension();
    let e = shape.restrict(window);
    let closed = shape.contains(window);
    let open = e.boxes_of_dim(k).next().is_none();
    Some((e, EntireWitness { window: window.clone(), k, closed, open }))
}

/// All windows of dimension `k` whose proper faces lie in `shape`, sorted.
pub fn k_windows(shape: &PastingShape, k: usize) -> Vec<LatticeBox> {
    let verts = shape.vertices();
    let d = shape.dim();
    let mut out = Vec::new();
    for lo in &verts {
        for hi in verts.iter().filter(|v| *v >= lo) {
            if !lo.le(hi) {
                continue;
            }
            let strict = (0..d).filter(|&a| lo[a] < hi[a]).count();
            if strict != k {
                continue;
            }
            let w = LatticeBox::from_vertices(lo.clone(), hi.clone());
            if is_window(shape, &w) {
                out.push(w);
            }
        }
    }
    out
}

/// Closed `k`-windows: windows that are themselves boxes of `shape`.
pub fn closed_k_windows(shape: &PastingShape, k: usize) -> Vec<LatticeBox> {
    shape.boxes_of_dim(k).cloned().collect()
}

fn minimal_among(windows: &[LatticeBox]) -> Vec<LatticeBox> {
    let mut groups: BTreeMap<(Vec<usize>, Vec<Coord>), Vec<&LatticeBox>> = BTreeMap::new();
    for w in windows {
        let strict: Vec<usize> = w.strict_dirs().collect();
        let pinned: Vec<Coord> = (0..w.ambient_dim()).filter(|&a| !w.is_strict(a)).map(|a| w.lo[a]).collect();
        groups.entry((strict, pinned)).or_default().push(w);
    }
    let mut out: Vec<LatticeBox> = groups
        .values()
        .flat_map(|g| {
            g.iter()
                .filter(|w| !g.iter().any(|o| o != *w && w.contains_box(o)))
                .map(|w| (*w).clone())
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out
}

/// `true` if `window` is a window of `shape` with no smaller window inside.
pub fn is_vertebra(shape: &PastingShape, window: &LatticeBox) -> bool {
    if !is_window(shape, window) {
        return false;
    }
    let k = window.dimension();
    let inner = shape.restrict(window);
    k_windows(&inner, k).iter().all(|w| w == window)
}

/// All `k`-vertebrae of `shape`, sorted by window.
pub fn enumerate_vertebrae(shape: &PastingShape, k: usize) -> Vec<(PastingShape, EntireWitness)> {
    minimal_among(&k_windows(shape, k))
        .into_iter()
        .filter_map(|w| entire_subshape(shape, &w))
        .collect()
}

/// Views a subshape lying in the hyperplane pinned off the strict
/// directions of `window` as a `window.dimension()`-dimensional shape.
pub fn project_to_window(shape: &PastingShape, window: &LatticeBox) -> PastingShape {
    let axes: Vec<usize> = window.strict_dirs().collect();
    shape.project_axes(&axes).expect("strict directions are increasing")
}
