use serde::Serialize;

use crate::grid::boundary_of_window;
use crate::shape::{LatticeBox, PastingShape};
use crate::structure::admit::Admitter;
use crate::structure::entire::{entire_subshape, is_vertebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPair {
    pub k: PastingShape,
    pub j: PastingShape,
    pub ambient: PastingShape,
}

/// Each defining condition of a division pair, plus the box-membership
/// criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionReport {
    pub union_is_ambient: bool,
    pub intersection_is_boundary: bool,
    pub boundary_is_open_vertebra: bool,
    pub k_admittable: &'static str,
    pub j_admittable: &'static str,
    pub membership_criterion: bool,
    pub first_membership_failure: Option<LatticeBox>,
    pub verdict: bool,
}

/// `∃a: y_a ≤ α_a or x_a ≥ ω_a` for the window `(α, ω)`.
pub fn outside_window(b: &LatticeBox, window: &LatticeBox) -> bool {
    (0..b.ambient_dim()).any(|a| b.hi[a] <= window.lo[a] || b.lo[a] >= window.hi[a])
}

pub fn check_division_pair(pair: &DivisionPair) -> DivisionReport {
    check_division_pair_with(pair, &mut Admitter::from_env(false))
}

pub fn check_division_pair_with(pair: &DivisionPair, adm: &mut Admitter) -> DivisionReport {
    let DivisionPair { k, j, ambient } = pair;
    let same_dim = k.dim() == ambient.dim() && j.dim() == ambient.dim();
    let union_is_ambient = same_dim
        && k.is_subshape_of(ambient)
        && j.is_subshape_of(ambient)
        && &k.union(j).expect("same dimension") == ambient;
    let window = j.bounding_box();
    let (intersection_is_boundary, boundary_is_open_vertebra) = match (&window, same_dim) {
        (Some(w), true) if w.dimension() == ambient.dim() => {
            let boundary = boundary_of_window(j, w);
            let inter = k.intersect(j).expect("same dimension") == boundary;
            let open_vertebra = matches!(
                entire_subshape(k, w),
                Some((e, ew)) if e == boundary && ew.open
            ) && is_vertebra(k, w);
            (inter, open_vertebra)
        }
        _ => (false, false),
    };
    let k_admittable = adm.is_admittable(k).label();
    let j_admittable = adm.is_admittable(j).label();
    let first_membership_failure = match &window {
        Some(w) if same_dim => ambient.boxes().iter().find(|b| k.contains(b) != outside_window(b, w)).cloned(),
        _ => ambient.boxes().iter().next().cloned(),
    };
    let membership_criterion = first_membership_failure.is_none();
    let verdict = union_is_ambient
        && intersection_is_boundary
        && boundary_is_open_vertebra
        && k_admittable == "yes"
        && j_admittable == "yes"
        && membership_criterion;
    DivisionReport {
        union_is_ambient,
        intersection_is_boundary,
        boundary_is_open_vertebra,
        k_admittable,
        j_admittable,
        membership_criterion,
        first_membership_failure,
        verdict,
    }
}
