//! Maps of pasting shapes, and the special case of maps out of standard
//! grids described by one monotone sequence per direction.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Result, ShapeError};
use crate::shape::{Coord, LatticeBox, PastingShape, Vertex};

/// A vertex map between two shapes of equal ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeMap {
    pub source: PastingShape,
    pub target: PastingShape,
    pub vertex_map: BTreeMap<Vertex, Vertex>,
}

/// Outcome of [`ShapeMap::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    pub valid: bool,
    pub violation: Option<String>,
}

impl ShapeMap {
    pub fn new(source: PastingShape, target: PastingShape, vertex_map: BTreeMap<Vertex, Vertex>) -> Self {
        ShapeMap { source, target, vertex_map }
    }

    pub fn identity(shape: &PastingShape) -> Self {
        let vertex_map = shape.vertices().into_iter().map(|v| (v.clone(), v)).collect();
        ShapeMap { source: shape.clone(), target: shape.clone(), vertex_map }
    }

    fn apply(&self, v: &Vertex) -> Result<&Vertex> {
        self.vertex_map.get(v).ok_or_else(|| ShapeError::NotTotal(v.to_string()))
    }

    /// Image `(f(x), f(y))` of a source box, without any validity check.
    pub fn image_of(&self, b: &LatticeBox) -> Result<(Vertex, Vertex)> {
        Ok((self.apply(&b.lo)?.clone(), self.apply(&b.hi)?.clone()))
    }

    /// Checks that every source box maps to a target box and that
    /// degenerate directions stay degenerate.
    pub fn validate(&self) -> Result<MapReport> {
        if self.source.dim() != self.target.dim() {
            return Err(ShapeError::DimensionMismatch { expected: self.source.dim(), found: self.target.dim() });
        }
        for v in self.source.vertices() {
            self.apply(&v)?;
        }
        for b in self.source.boxes() {
            let (fx, fy) = self.image_of(b)?;
            for a in 0..self.source.dim() {
                if b.lo[a] == b.hi[a] && fx[a] != fy[a] {
                    return Ok(MapReport {
                        valid: false,
                        violation: Some(format!("{b} is degenerate in direction {a} but its image is not")),
                    });
                }
            }
            let ok = fx.le(&fy) && self.target.contains(&LatticeBox::from_vertices(fx.clone(), fy.clone()));
            if !ok {
                return Ok(MapReport {
                    valid: false,
                    violation: Some(format!("image ({fx},{fy}) of {b} is not a box of the target")),
                });
            }
        }
        Ok(MapReport { valid: true, violation: None })
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<&Vertex> = self.vertex_map.values().collect();
        images.len() == self.vertex_map.len()
    }

    /// Image box set; only meaningful on valid maps.
    pub fn image_boxes(&self) -> Result<BTreeSet<LatticeBox>> {
        self.source
            .boxes()
            .iter()
            .map(|b| self.image_of(b).map(|(x, y)| LatticeBox::from_vertices(x, y)))
            .collect()
    }

    /// Composite `other ∘ self`.
    pub fn then(&self, other: &ShapeMap) -> Result<ShapeMap> {
        let mut vertex_map = BTreeMap::new();
        for (v, w) in &self.vertex_map {
            vertex_map.insert(v.clone(), other.apply(w)?.clone());
        }
        Ok(ShapeMap { source: self.source.clone(), target: other.target.clone(), vertex_map })
    }
}

/// A map out of a standard grid `□[n_1,…,n_d]`, recorded as the value
/// sequences `f_a(0) ≤ … ≤ f_a(n_a)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct GridMap {
    pub lines: Vec<Vec<Coord>>,
}

impl GridMap {
    pub fn new(lines: Vec<Vec<Coord>>) -> Result<Self> {
        for (a, l) in lines.iter().enumerate() {
            if l.is_empty() {
                return Err(ShapeError::InvalidMap(format!("direction {a} has no values")));
            }
            if l.windows(2).any(|w| w[0] > w[1]) {
                return Err(ShapeError::InvalidMap(format!("direction {a} is not monotone: {l:?}")));
            }
        }
        Ok(GridMap { lines })
    }

    pub fn dim(&self) -> usize {
        self.lines.len()
    }

    /// The extents `n_a` of the source grid.
    pub fn extents(&self) -> Vec<Coord> {
        self.lines.iter().map(|l| (l.len() - 1) as Coord).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.lines.iter().all(|l| l.windows(2).all(|w| w[0] < w[1]))
    }

    /// Per-direction image sets, sorted and deduplicated.
    pub fn images(&self) -> Vec<Vec<Coord>> {
        self.lines
            .iter()
            .map(|l| {
                let mut v = l.clone();
                v.dedup();
                v
            })
            .collect()
    }

    pub fn apply(&self, v: &Vertex) -> Vertex {
        Vertex((0..self.dim()).map(|a| self.lines[a][v[a] as usize]).collect())
    }

    /// Whether the map lands in `target`.
    pub fn is_valid_into(&self, target: &PastingShape) -> bool {
        self.dim() == target.dim() && box_condition(target, &self.images())
    }

    /// The explicit vertex map from the standard grid.
    pub fn to_shape_map(&self, target: &PastingShape) -> ShapeMap {
        let source = crate::grid::standard_grid(&self.extents());
        let vertex_map = source.vertices().into_iter().map(|v| (v.clone(), self.apply(&v))).collect();
        ShapeMap { source, target: target.clone(), vertex_map }
    }

    /// Image of the source grid, or of its `(d-1)`-truncation when `open`.
    pub fn image_shape(&self, open: bool) -> PastingShape {
        let d = self.dim();
        let boxes = boxes_on_lines(&self.images())
            .filter(|b| !open || b.dimension() < d)
            .collect();
        PastingShape::from_closed(d, boxes)
    }
}

/// All boxes whose coordinates in each direction `a` are drawn from
/// `values[a]` (sorted, deduplicated).
pub fn boxes_on_lines(values: &[Vec<Coord>]) -> impl Iterator<Item = LatticeBox> + '_ {
    let pairs: Vec<Vec<(Coord, Coord)>> = values
        .iter()
        .map(|vals| {
            let mut ps = Vec::new();
            for (i, &x) in vals.iter().enumerate() {
                for &y in &vals[i..] {
                    ps.push((x, y));
                }
            }
            ps
        })
        .collect();
    let d = values.len();
    let total: usize = pairs.iter().map(Vec::len).product();
    (0..total).map(move |mut idx| {
        let mut lo = Vertex::zeros(d);
        let mut hi = Vertex::zeros(d);
        for a in (0..d).rev() {
            let (x, y) = pairs[a][idx % pairs[a].len()];
            idx /= pairs[a].len();
            lo.0[a] = x;
            hi.0[a] = y;
        }
        LatticeBox::from_vertices(lo, hi)
    })
}

/// The box condition: every box with coordinates from `images` lies in `shape`.
pub fn box_condition(shape: &PastingShape, images: &[Vec<Coord>]) -> bool {
    images.len() == shape.dim() && boxes_on_lines(images).all(|b| shape.contains(&b))
}
