use serde::Serialize;

use crate::error::{Result, ShapeError};
use crate::shape::{LatticeBox, PastingShape};
use crate::structure::entire::enumerate_vertebrae;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverViolation {
    /// 1: a closed entire subshape of a part is not entire in the shape.
    /// 2: a closed vertebra of the shape lies in no part.
    pub condition: u8,
    pub part: Option<usize>,
    pub window: LatticeBox,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub verdict: bool,
    pub violations: Vec<CoverViolation>,
}

/// Evaluates both covering conditions for `parts` inside `shape`.
pub fn check_covering(shape: &PastingShape, parts: &[PastingShape]) -> Result<CoverReport> {
    for p in parts {
        if p.dim() != shape.dim() {
            return Err(ShapeError::DimensionMismatch { expected: shape.dim(), found: p.dim() });
        }
        if let Some(b) = p.boxes().iter().find(|b| !shape.contains(b)) {
            return Err(ShapeError::NotSubshape(b.clone()));
        }
    }
    let mut violations = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        // every box of p is a closed window of p; its restriction must agree
        for w in p.boxes() {
            let whole = shape.restrict(w);
            if whole.boxes().iter().any(|b| !p.contains(b)) {
                violations.push(CoverViolation { condition: 1, part: Some(i), window: w.clone() });
            }
        }
    }
    for k in 0..=shape.dim() {
        for (v, ew) in enumerate_vertebrae(shape, k) {
            if ew.closed && !parts.iter().any(|p| v.is_subshape_of(p)) {
                violations.push(CoverViolation { condition: 2, part: None, window: ew.window });
            }
        }
    }
    Ok(CoverReport { verdict: violations.is_empty(), violations })
}
