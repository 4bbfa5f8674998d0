//! Entire subshapes and vertebrae, admittability with certificates,
//! composability, division pairs, coverings and fillable subshapes.

pub mod admit;
pub mod cover;
pub mod division;
pub mod entire;
pub mod fillable;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Result, ShapeError};
use crate::shape::{LatticeBox, PastingShape};

pub use admit::{
    budget_from_env, filtration_for, find_decomposition, height_of, is_admittable, trivial_decomposition,
    validate_decomposition, validate_filtration, Admitter, Decomposition, Filtration, FiltrationStep, Piece,
    PieceCert, Verdict, DEFAULT_BUDGET,
};
pub use cover::{check_covering, CoverReport};
pub use division::{check_division_pair, DivisionPair, DivisionReport};
pub use entire::{
    closed_k_windows, entire_subshape, enumerate_vertebrae, is_vertebra, is_window, k_windows, project_to_window,
    EntireWitness,
};
pub use fillable::{fillable_by_definition, is_fillable, FillBranch, FillableReport};

/// Verdict of a composability-type check and the first window that failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComposabilityReport {
    pub verdict: &'static str,
    pub failing_window: Option<LatticeBox>,
    pub reason: Option<String>,
}

impl ComposabilityReport {
    fn yes() -> Self {
        ComposabilityReport { verdict: "yes", failing_window: None, reason: None }
    }

    fn fail(verdict: &'static str, w: Option<LatticeBox>, reason: impl Into<String>) -> Self {
        ComposabilityReport { verdict, failing_window: w, reason: Some(reason.into()) }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == "yes"
    }
}

/// The shape equals its closed entire subshape over its bounding window.
pub fn is_closed_d_entire(shape: &PastingShape) -> bool {
    match shape.bounding_box() {
        Some(bb) => bb.dimension() == shape.dim() && shape.contains(&bb),
        None => false,
    }
}

/// Runs the admittability check on every closed `k`-entire subshape for
/// `k` in `ks`, each viewed as a `k`-dimensional shape.
fn closed_windows_admittable(
    shape: &PastingShape,
    ks: impl Iterator<Item = usize>,
    adm: &mut Admitter,
) -> ComposabilityReport {
    for k in ks {
        let mut seen = BTreeSet::new();
        for w in closed_k_windows(shape, k) {
            let e = project_to_window(&shape.restrict(&w), &w);
            if !seen.insert(e.clone()) {
                continue;
            }
            match adm.is_admittable(&e) {
                Verdict::Yes(_) => {}
                Verdict::No => {
                    return ComposabilityReport::fail("no", Some(w), format!("closed {k}-entire subshape is not admittable"))
                }
                Verdict::Inconclusive => {
                    return ComposabilityReport::fail("inconclusive", Some(w), "search budget exhausted")
                }
            }
        }
    }
    ComposabilityReport::yes()
}

/// Closed admittable, and every lower closed entire subshape admittable.
pub fn is_composable(shape: &PastingShape) -> ComposabilityReport {
    is_composable_with(shape, &mut Admitter::from_env(false))
}

pub fn is_composable_with(shape: &PastingShape, adm: &mut Admitter) -> ComposabilityReport {
    if shape.is_empty() {
        return ComposabilityReport::fail("no", None, "empty shape");
    }
    if !is_closed_d_entire(shape) {
        return ComposabilityReport::fail("no", shape.bounding_box(), "not closed d-entire");
    }
    match adm.is_admittable(shape) {
        Verdict::Yes(_) => {}
        Verdict::No => return ComposabilityReport::fail("no", shape.bounding_box(), "not admittable"),
        Verdict::Inconclusive => {
            return ComposabilityReport::fail("inconclusive", shape.bounding_box(), "search budget exhausted")
        }
    }
    closed_windows_admittable(shape, 1..shape.dim(), adm)
}

/// Every closed `k`-entire subshape with `1 ≤ k ≤ d` is admittable.
pub fn is_locally_composable(shape: &PastingShape) -> Result<ComposabilityReport> {
    is_locally_composable_with(shape, &mut Admitter::from_env(false))
}

pub fn is_locally_composable_with(shape: &PastingShape, adm: &mut Admitter) -> Result<ComposabilityReport> {
    if shape.is_empty() {
        return Err(ShapeError::EmptyShape);
    }
    Ok(closed_windows_admittable(shape, 1..=shape.dim(), adm))
}

/// Which union [`verify_vertebra_union`] compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UnionMode {
    /// Union of the top-dimensional vertebrae.
    TopVertebrae,
    /// Union of the closed `k`-vertebrae over all `k`.
    ClosedVertebrae,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertebraUnionReport {
    pub mode: UnionMode,
    pub equal: bool,
    pub residual: BTreeSet<LatticeBox>,
}

/// Compares a shape with the union of its vertebrae. Locally composable
/// shapes that are not closed `d`-entire use the closed `k`-vertebrae of
/// every dimension; all others use the top-dimensional vertebrae.
pub fn verify_vertebra_union(shape: &PastingShape) -> VertebraUnionReport {
    let mut adm = Admitter::from_env(false);
    let local_only = !shape.is_empty()
        && !is_closed_d_entire(shape)
        && is_locally_composable_with(shape, &mut adm).map(|r| r.is_yes()).unwrap_or(false);
    let d = shape.dim();
    let (mode, parts): (UnionMode, Vec<PastingShape>) = if local_only {
        let parts = (0..=d)
            .flat_map(|k| enumerate_vertebrae(shape, k))
            .filter(|(_, w)| w.closed)
            .map(|(v, _)| v)
            .collect();
        (UnionMode::ClosedVertebrae, parts)
    } else {
        (UnionMode::TopVertebrae, enumerate_vertebrae(shape, d).into_iter().map(|(v, _)| v).collect())
    };
    let union = PastingShape::union_all(d, parts.iter()).expect("same dimension");
    let residual = shape.difference(&union);
    let extra = union.difference(shape);
    VertebraUnionReport { mode, equal: residual.is_empty() && extra.is_empty(), residual }
}
