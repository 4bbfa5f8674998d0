//! Standard grids, grid detection, boundaries and cells, the `⊡[i]` family
//! and pullbacks of maps out of standard grids.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShapeError};
use crate::map::{boxes_on_lines, GridMap, ShapeMap};
use crate::shape::{Coord, LatticeBox, PastingShape, Vertex};

/// `□[n_1,…,n_d]`: every box with `0 ≤ x_a ≤ y_a ≤ n_a`.
pub fn standard_grid(extents: &[Coord]) -> PastingShape {
    let values: Vec<Vec<Coord>> = extents.iter().map(|&n| (0..=n).collect()).collect();
    PastingShape::from_closed(extents.len(), boxes_on_lines(&values).collect())
}

/// Certificate that a shape is a grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridWitness {
    pub lines: Vec<Vec<Coord>>,
    pub closed: bool,
    pub corners: Vec<(Coord, Coord)>,
}

impl GridWitness {
    pub fn new(lines: Vec<Vec<Coord>>, closed: bool) -> Self {
        let corners = lines.iter().map(|l| (l[0], *l.last().expect("nonempty lines"))).collect();
        GridWitness { lines, closed, corners }
    }

    pub fn dim(&self) -> usize {
        self.lines.len()
    }

    pub fn extents(&self) -> Vec<Coord> {
        self.lines.iter().map(|l| (l.len() - 1) as Coord).collect()
    }

    pub fn is_cell(&self) -> bool {
        self.lines.iter().all(|l| l.len() == 2)
    }

    /// The window spanned by the corners.
    pub fn corner_box(&self) -> LatticeBox {
        LatticeBox::from_vertices(
            Vertex(self.corners.iter().map(|c| c.0).collect()),
            Vertex(self.corners.iter().map(|c| c.1).collect()),
        )
    }

    /// The witnessing map out of the standard grid.
    pub fn grid_map(&self) -> GridMap {
        GridMap { lines: self.lines.clone() }
    }

    /// Windows of the cells, one per tuple of consecutive line pairs, in
    /// lexicographic order.
    pub fn cell_windows(&self) -> Vec<LatticeBox> {
        let steps: Vec<Vec<(Coord, Coord)>> =
            self.lines.iter().map(|l| l.windows(2).map(|w| (w[0], w[1])).collect()).collect();
        let mut out = vec![(Vertex::zeros(0), Vertex::zeros(0))];
        for s in &steps {
            let mut next = Vec::with_capacity(out.len() * s.len());
            for (lo, hi) in &out {
                for &(x, y) in s {
                    let mut lo = lo.clone();
                    let mut hi = hi.clone();
                    lo.0.push(x);
                    hi.0.push(y);
                    next.push((lo, hi));
                }
            }
            out = next;
        }
        out.into_iter().map(|(lo, hi)| LatticeBox::from_vertices(lo, hi)).collect()
    }
}

/// Detects whether `a` is an open or closed grid and returns its unique
/// witness.
pub fn detect_grid(a: &PastingShape) -> Option<GridWitness> {
    let d = a.dim();
    if d == 0 {
        return (a.len() == 1).then(|| GridWitness { lines: vec![], closed: true, corners: vec![] });
    }
    let mut lines: Vec<BTreeSet<Coord>> = vec![BTreeSet::new(); d];
    for b in a.boxes_of_dim(d - 1) {
        let pinned: Vec<usize> = (0..d).filter(|&i| !b.is_strict(i)).collect();
        if let [p] = pinned[..] {
            lines[p].insert(b.lo[p]);
        }
    }
    let lines: Vec<Vec<Coord>> = lines.into_iter().map(|s| s.into_iter().collect()).collect();
    if lines.iter().any(|l| l.len() < 2) {
        return None;
    }
    let w0 = GridWitness::new(lines, false);
    let closed = a.contains(&w0.corner_box());
    let w = GridWitness { closed, ..w0 };
    grid_conditions(a, &w).is_none().then_some(w)
}

/// Returns the first violated grid condition for the candidate witness.
fn grid_conditions(a: &PastingShape, w: &GridWitness) -> Option<String> {
    let d = a.dim();
    if w.dim() != d {
        return Some(format!("witness has {} directions, shape has {d}", w.dim()));
    }
    for (i, l) in w.lines.iter().enumerate() {
        if l.len() < 2 || l.windows(2).any(|p| p[0] >= p[1]) {
            return Some(format!("lines in direction {i} are not strictly increasing with two entries"));
        }
    }
    if w.closed != a.contains(&w.corner_box()) {
        return Some("closed flag disagrees with presence of the corner box".into());
    }
    for b in boxes_on_lines(&w.lines) {
        if (w.closed || b.dimension() < d) && !a.contains(&b) {
            return Some(format!("{b} lies on the grid lines but is missing"));
        }
    }
    let window = w.corner_box();
    for b in a.boxes() {
        if b.dimension() == d {
            let on_lines = (0..d).all(|i| w.lines[i].binary_search(&b.lo[i]).is_ok() && w.lines[i].binary_search(&b.hi[i]).is_ok());
            if !w.closed || !on_lines {
                return Some(format!("{b} is not the image of a d-box of the grid"));
            }
            continue;
        }
        if !window.contains_box(b) {
            return Some(format!("{b} leaves the corners"));
        }
        let pinned = (0..d).any(|i| !b.is_strict(i) && w.lines[i].binary_search(&b.lo[i]).is_ok());
        if !pinned {
            return Some(format!("{b} is pinned to no grid line"));
        }
    }
    None
}

/// Checks that `w` is the witness of `a`.
pub fn validate_grid_witness(a: &PastingShape, w: &GridWitness) -> Result<()> {
    if a.dim() == 0 {
        return if a.len() == 1 && w.dim() == 0 {
            Ok(())
        } else {
            Err(ShapeError::WitnessMismatch("a 0-dimensional grid is a single vertex".into()))
        };
    }
    match grid_conditions(a, w) {
        None => Ok(()),
        Some(msg) => Err(ShapeError::WitnessMismatch(msg)),
    }
}

/// Injective, and every non-degenerate top box of the target is hit.
pub fn is_d_shaping(m: &ShapeMap) -> Result<bool> {
    let report = m.validate()?;
    if !report.valid {
        return Err(ShapeError::InvalidMap(report.violation.unwrap_or_default()));
    }
    if !m.is_injective() {
        return Ok(false);
    }
    let d = m.target.dim();
    let image = m.image_boxes()?;
    Ok(m.target.boxes_of_dim(d).all(|b| image.contains(b)))
}

/// `∂A`: boxes pinned to a corner value in some direction.
pub fn grid_boundary(a: &PastingShape, w: &GridWitness) -> Result<PastingShape> {
    validate_grid_witness(a, w)?;
    Ok(boundary_of_window(a, &w.corner_box()))
}

/// Boxes of `shape` pinned to a corner value of `window` in some direction.
pub fn boundary_of_window(shape: &PastingShape, window: &LatticeBox) -> PastingShape {
    let boxes = shape
        .boxes()
        .iter()
        .filter(|b| {
            (0..shape.dim()).any(|i| !b.is_strict(i) && (b.lo[i] == window.lo[i] || b.lo[i] == window.hi[i]))
        })
        .cloned()
        .collect();
    PastingShape::from_closed(shape.dim(), boxes)
}

/// The cells of a grid, one per tuple of consecutive line pairs.
pub fn grid_cells(a: &PastingShape, w: &GridWitness) -> Result<Vec<PastingShape>> {
    validate_grid_witness(a, w)?;
    Ok(w.cell_windows().iter().map(|c| a.restrict(c)).collect())
}

/// An injective map `□[1,…,1] → □[n_1,…,n_d]`, given by its window.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxdotSpec {
    pub extents: Vec<Coord>,
    pub window: Vec<(Coord, Coord)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
}

/// `⊡[i]`, `A[i]` and the half-spaces `M^σ_a[i]`.
#[derive(Clone, Debug)]
pub struct BoxdotFamily {
    pub ambient: PastingShape,
    pub boxdot: PastingShape,
    pub a: PastingShape,
    pub m: BTreeMap<(Sign, usize), PastingShape>,
}

impl BoxdotSpec {
    pub fn new(extents: Vec<Coord>, window: Vec<(Coord, Coord)>) -> Result<Self> {
        let spec = BoxdotSpec { extents, window };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.extents.len() != self.window.len() {
            return Err(ShapeError::InvalidBoxdot(format!(
                "{} extents but {} window pairs",
                self.extents.len(),
                self.window.len()
            )));
        }
        for (a, (&n, &(lo, hi))) in self.extents.iter().zip(&self.window).enumerate() {
            if n == 0 || lo >= hi || hi > n {
                return Err(ShapeError::InvalidBoxdot(format!(
                    "direction {a}: need 0 <= {lo} < {hi} <= {n} with n >= 1"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn window_box(&self) -> LatticeBox {
        LatticeBox::from_vertices(
            Vertex(self.window.iter().map(|w| w.0).collect()),
            Vertex(self.window.iter().map(|w| w.1).collect()),
        )
    }

    /// Membership predicate for `⊡[i]` on boxes of the standard grid.
    pub fn in_boxdot(&self, b: &LatticeBox) -> bool {
        (0..self.dim()).any(|a| b.hi[a] <= self.window[a].0 || b.lo[a] >= self.window[a].1)
    }

    pub fn in_m(&self, sign: Sign, a: usize, b: &LatticeBox) -> bool {
        match sign {
            Sign::Minus => b.hi[a] <= self.window[a].0,
            Sign::Plus => b.lo[a] >= self.window[a].1,
        }
    }

    /// Every spec over the given extents, in lexicographic window order.
    pub fn all_for(extents: &[Coord]) -> Vec<BoxdotSpec> {
        let mut out: Vec<Vec<(Coord, Coord)>> = vec![vec![]];
        for &n in extents {
            let mut next = Vec::new();
            for w in &out {
                for lo in 0..n {
                    for hi in lo + 1..=n {
                        let mut w = w.clone();
                        w.push((lo, hi));
                        next.push(w);
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|window| BoxdotSpec { extents: extents.to_vec(), window }).collect()
    }
}

pub fn boxdot_family(spec: &BoxdotSpec) -> Result<BoxdotFamily> {
    spec.validate()?;
    let d = spec.dim();
    let ambient = standard_grid(&spec.extents);
    let filter = |pred: &dyn Fn(&LatticeBox) -> bool| {
        PastingShape::from_closed(d, ambient.boxes().iter().filter(|b| pred(b)).cloned().collect())
    };
    let boxdot = filter(&|b| spec.in_boxdot(b));
    let a = ambient.restrict(&spec.window_box());
    let mut m = BTreeMap::new();
    for i in 0..d {
        for sign in [Sign::Minus, Sign::Plus] {
            m.insert((sign, i), filter(&|b| spec.in_m(sign, i, b)));
        }
    }
    Ok(BoxdotFamily { ambient, boxdot, a, m })
}

/// A pullback square of injective maps out of standard grids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPullback {
    pub extents: Vec<Coord>,
    /// The common image, as a map `□[l⃗] → I`.
    pub apex: GridMap,
    /// Leg `□[l⃗] → □[n⃗]` into the source of `f`.
    pub left: GridMap,
    /// Leg `□[l⃗] → □[m⃗]` into the source of `g`.
    pub right: GridMap,
}

/// Intersects the images of two injective grid maps direction by direction.
pub fn grid_pullback(f: &GridMap, g: &GridMap) -> Result<GridPullback> {
    if f.dim() != g.dim() {
        return Err(ShapeError::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    if !f.is_injective() || !g.is_injective() {
        return Err(ShapeError::InvalidMap("pullback legs must be injective".into()));
    }
    let mut common = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for a in 0..f.dim() {
        let inter: Vec<Coord> = f.lines[a].iter().filter(|c| g.lines[a].contains(c)).copied().collect();
        if inter.is_empty() {
            return Err(ShapeError::DisjointImages(a));
        }
        let index = |ls: &[Coord], c: &Coord| ls.iter().position(|x| x == c).expect("common value") as Coord;
        left.push(inter.iter().map(|c| index(&f.lines[a], c)).collect());
        right.push(inter.iter().map(|c| index(&g.lines[a], c)).collect());
        common.push(inter);
    }
    let apex = GridMap { lines: common };
    Ok(GridPullback { extents: apex.extents(), apex, left: GridMap { lines: left }, right: GridMap { lines: right } })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_grid_sizes() {
        assert_eq!(standard_grid(&[1, 1]).len(), 9);
        assert_eq!(standard_grid(&[2, 1]).len(), 18);
        assert_eq!(standard_grid(&[0]).len(), 1);
    }

    #[test]
    fn detect_standard() {
        for n in 1..=3 {
            for m in 1..=3 {
                let w = detect_grid(&standard_grid(&[n, m])).unwrap();
                assert!(w.closed);
                assert_eq!(w.lines, vec![(0..=n).collect::<Vec<_>>(), (0..=m).collect()]);
            }
        }
        let open = standard_grid(&[2, 2]).truncate(1).unwrap();
        assert!(!detect_grid(&open).unwrap().closed);
        assert!(detect_grid(&standard_grid(&[2, 0])).is_none());
    }

    #[test]
    fn one_dimensional_grids() {
        let closed = PastingShape::close(1, [LatticeBox::of(&[0], &[3])]).unwrap();
        let w = detect_grid(&closed).unwrap();
        assert_eq!(w.lines, vec![vec![0, 3]]);
        let pts = PastingShape::close(1, [LatticeBox::of(&[1], &[1]), LatticeBox::of(&[4], &[4])]).unwrap();
        assert!(!detect_grid(&pts).unwrap().closed);
    }

    #[test]
    fn shaping_examples() {
        let sq = standard_grid(&[1, 1]);
        assert!(is_d_shaping(&ShapeMap::identity(&sq)).unwrap());
        let target = standard_grid(&[2, 1]);
        let left = GridMap::new(vec![vec![0, 1], vec![0, 1]]).unwrap().to_shape_map(&target);
        assert!(!is_d_shaping(&left).unwrap());
    }

    #[test]
    fn boxdot_membership() {
        let spec = BoxdotSpec::new(vec![6, 4], vec![(2, 5), (1, 3)]).unwrap();
        assert!(spec.in_boxdot(&LatticeBox::of(&[0, 0], &[6, 1])));
        assert!(!spec.in_boxdot(&LatticeBox::of(&[2, 1], &[5, 3])));
        assert!(BoxdotSpec::new(vec![2, 2], vec![(1, 1), (0, 1)]).is_err());
    }

    #[test]
    fn pullback_basics() {
        let id = GridMap::new(vec![vec![0, 1], vec![0, 1]]).unwrap();
        let p = grid_pullback(&id, &id).unwrap();
        assert_eq!(p.extents, vec![1, 1]);
        assert_eq!(p.left, id);
        let f = GridMap::new(vec![vec![0, 1, 2], vec![0, 1]]).unwrap();
        let g = GridMap::new(vec![vec![1, 2, 4], vec![0, 1]]).unwrap();
        let p = grid_pullback(&f, &g).unwrap();
        assert_eq!(p.apex.lines, vec![vec![1, 2], vec![0, 1]]);
        assert_eq!(p.left.lines, vec![vec![1, 2], vec![0, 1]]);
        assert_eq!(p.right.lines, vec![vec![0, 1], vec![0, 1]]);
        let h = GridMap::new(vec![vec![3, 4], vec![0, 1]]).unwrap();
        assert_eq!(grid_pullback(&f, &h), Err(ShapeError::DisjointImages(0)));
    }
}
