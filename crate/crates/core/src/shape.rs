//! Boxes, the face/join closure engine and the algebra of pasting shapes.
//!
//! A pasting shape is stored as a sorted set of boxes; two shapes are equal
//! exactly when their box sets are equal. No operation normalizes
//! coordinates behind the caller's back.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Result, ShapeError};

pub type Coord = u32;

/// A lattice point in `ℕ^d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub SmallVec<[Coord; 4]>);

impl Vertex {
    pub fn new(coords: &[Coord]) -> Self {
        Vertex(SmallVec::from_slice(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Vertex(SmallVec::from_elem(0, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Coord] {
        &self.0
    }

    pub fn with(&self, a: usize, value: Coord) -> Self {
        let mut v = self.clone();
        v.0[a] = value;
        v
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Vertex) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(x, y)| x <= y)
    }
}

impl std::ops::Index<usize> for Vertex {
    type Output = Coord;
    fn index(&self, a: usize) -> &Coord {
        &self.0[a]
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A box `(lo, hi)` with `lo ≤ hi` componentwise.
///
/// Ordering is lexicographic on `(lo, hi)`, which is the canonical order of
/// boxes inside a [`PastingShape`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeBox {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl LatticeBox {
    pub fn new(lo: &[Coord], hi: &[Coord]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(ShapeError::DimensionMismatch { expected: lo.len(), found: hi.len() });
        }
        let b = LatticeBox { lo: Vertex::new(lo), hi: Vertex::new(hi) };
        if !b.lo.le(&b.hi) {
            return Err(ShapeError::MalformedBox(b.to_string()));
        }
        Ok(b)
    }

    /// Shorthand for tests and fixtures; panics on malformed input.
    pub fn of(lo: &[Coord], hi: &[Coord]) -> Self {
        Self::new(lo, hi).expect("malformed box literal")
    }

    pub fn point(v: &Vertex) -> Self {
        LatticeBox { lo: v.clone(), hi: v.clone() }
    }

    pub fn from_vertices(lo: Vertex, hi: Vertex) -> Self {
        debug_assert!(lo.le(&hi));
        LatticeBox { lo, hi }
    }

    pub fn ambient_dim(&self) -> usize {
        self.lo.dim()
    }

    /// Number of strict directions.
    pub fn dimension(&self) -> usize {
        self.strict_dirs().count()
    }

    pub fn is_strict(&self, a: usize) -> bool {
        self.lo[a] < self.hi[a]
    }

    pub fn strict_dirs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ambient_dim()).filter(move |&a| self.is_strict(a))
    }

    pub fn is_vertex(&self) -> bool {
        self.lo == self.hi
    }

    /// `true` if both corners of `inner` lie in the closed window `self`.
    pub fn contains_box(&self, inner: &LatticeBox) -> bool {
        self.lo.le(&inner.lo) && inner.hi.le(&self.hi)
    }

    /// All boxes whose coordinates are drawn from the corner values of
    /// `self` in each direction, `self` included. There are `3^dim` of them.
    pub fn corner_subboxes(&self) -> Vec<LatticeBox> {
        let d = self.ambient_dim();
        let mut out = vec![LatticeBox { lo: self.lo.clone(), hi: self.lo.clone() }];
        for a in 0..d {
            if !self.is_strict(a) {
                continue;
            }
            let (l, h) = (self.lo[a], self.hi[a]);
            let mut next = Vec::with_capacity(out.len() * 3);
            for b in &out {
                for (x, y) in [(l, l), (l, h), (h, h)] {
                    let mut nb = b.clone();
                    nb.lo.0[a] = x;
                    nb.hi.0[a] = y;
                    next.push(nb);
                }
            }
            out = next;
        }
        out
    }

    /// Proper corner faces, i.e. all corner sub-boxes except `self`.
    pub fn proper_faces(&self) -> Vec<LatticeBox> {
        self.corner_subboxes().into_iter().filter(|b| b != self).collect()
    }

    /// The 2^dim corner vertices.
    pub fn corners(&self) -> Vec<Vertex> {
        self.corner_subboxes().into_iter().filter(LatticeBox::is_vertex).map(|b| b.lo).collect()
    }
}

impl fmt::Debug for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// Checks adjacency and returns the join `(b1.lo, b2.hi)`.
///
/// Both boxes must share their degenerate coordinates, be strict in the
/// same directions, and stack end-to-end in at most one of them. Identical
/// boxes are adjacent and join to themselves.
pub fn try_join(b1: &LatticeBox, b2: &LatticeBox) -> Result<Option<LatticeBox>> {
    let d = b1.ambient_dim();
    if b2.ambient_dim() != d {
        return Err(ShapeError::DimensionMismatch { expected: d, found: b2.ambient_dim() });
    }
    Ok(join_unchecked(b1, b2))
}

pub(crate) fn join_unchecked(b1: &LatticeBox, b2: &LatticeBox) -> Option<LatticeBox> {
    let mut stacked = false;
    for a in 0..b1.ambient_dim() {
        let (x, y, x2, y2) = (b1.lo[a], b1.hi[a], b2.lo[a], b2.hi[a]);
        if x == y {
            if !(x2 == x && y2 == x) {
                return None;
            }
        } else if x2 >= y2 {
            return None;
        } else if x == x2 && y == y2 {
            continue;
        } else if y == x2 {
            if stacked {
                return None;
            }
            stacked = true;
        } else {
            return None;
        }
    }
    Some(LatticeBox { lo: b1.lo.clone(), hi: b2.hi.clone() })
}

/// A finite set of boxes of fixed ambient dimension, closed under corner
/// faces and joins.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PastingShape {
    dim: usize,
    boxes: BTreeSet<LatticeBox>,
}

impl fmt::Debug for PastingShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PastingShape[d={}; ", self.dim)?;
        f.debug_set().entries(self.boxes.iter()).finish()?;
        write!(f, "]")
    }
}

struct Closer {
    dim: usize,
    boxes: BTreeSet<LatticeBox>,
    by_lo: HashMap<Vertex, Vec<LatticeBox>>,
    by_hi: HashMap<Vertex, Vec<LatticeBox>>,
    queue: Vec<LatticeBox>,
}

impl Closer {
    fn new(dim: usize) -> Self {
        Closer { dim, boxes: BTreeSet::new(), by_lo: HashMap::new(), by_hi: HashMap::new(), queue: Vec::new() }
    }

    fn push(&mut self, b: LatticeBox) {
        if self.boxes.insert(b.clone()) {
            if !b.is_vertex() {
                self.by_lo.entry(b.lo.clone()).or_default().push(b.clone());
                self.by_hi.entry(b.hi.clone()).or_default().push(b.clone());
            }
            self.queue.push(b);
        }
    }

    fn run(mut self) -> PastingShape {
        while let Some(b) = self.queue.pop() {
            for f in b.corner_subboxes() {
                self.push(f);
            }
            if b.is_vertex() {
                continue;
            }
            let mut found = Vec::new();
            for i in b.strict_dirs() {
                if let Some(cands) = self.by_lo.get(&b.lo.with(i, b.hi[i])) {
                    found.extend(cands.iter().filter_map(|c| join_unchecked(&b, c)));
                }
                if let Some(cands) = self.by_hi.get(&b.hi.with(i, b.lo[i])) {
                    found.extend(cands.iter().filter_map(|c| join_unchecked(c, &b)));
                }
            }
            for j in found {
                self.push(j);
            }
        }
        PastingShape { dim: self.dim, boxes: self.boxes }
    }
}

impl PastingShape {
    pub fn empty(dim: usize) -> Self {
        PastingShape { dim, boxes: BTreeSet::new() }
    }

    /// Least shape containing `generators`.
    pub fn close<I>(dim: usize, generators: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticeBox>,
    {
        let mut c = Closer::new(dim);
        for g in generators {
            if g.ambient_dim() != dim {
                return Err(ShapeError::DimensionMismatch { expected: dim, found: g.ambient_dim() });
            }
            if !g.lo.le(&g.hi) {
                return Err(ShapeError::MalformedBox(g.to_string()));
            }
            c.push(g);
        }
        Ok(c.run())
    }

    /// Builds a shape from a box set that is already known to be closed.
    /// Checked in debug builds only.
    pub(crate) fn from_closed(dim: usize, boxes: BTreeSet<LatticeBox>) -> Self {
        let s = PastingShape { dim, boxes };
        debug_assert!(s.closure_violation().is_none(), "not closed: {:?}", s.closure_violation());
        s
    }

    /// Validates that an explicit box set is face- and join-closed.
    pub fn from_explicit<I>(dim: usize, boxes: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticeBox>,
    {
        let mut set = BTreeSet::new();
        for b in boxes {
            if b.ambient_dim() != dim {
                return Err(ShapeError::DimensionMismatch { expected: dim, found: b.ambient_dim() });
            }
            set.insert(b);
        }
        let s = PastingShape { dim, boxes: set };
        match s.closure_violation() {
            None => Ok(s),
            Some(msg) => Err(ShapeError::NotClosed(msg)),
        }
    }

    /// Describes the first missing face or join, if any.
    pub fn closure_violation(&self) -> Option<String> {
        for b in &self.boxes {
            for f in b.corner_subboxes() {
                if !self.boxes.contains(&f) {
                    return Some(format!("face {f} of {b} is missing"));
                }
            }
        }
        let mut by_lo: HashMap<&Vertex, Vec<&LatticeBox>> = HashMap::new();
        for b in self.boxes.iter().filter(|b| !b.is_vertex()) {
            by_lo.entry(&b.lo).or_default().push(b);
        }
        for b in self.boxes.iter().filter(|b| !b.is_vertex()) {
            for i in b.strict_dirs() {
                let key = b.lo.with(i, b.hi[i]);
                for c in by_lo.get(&key).into_iter().flatten() {
                    if let Some(j) = join_unchecked(b, c) {
                        if !self.boxes.contains(&j) {
                            return Some(format!("join {j} of {b} and {c} is missing"));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &BTreeSet<LatticeBox> {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: &LatticeBox) -> bool {
        self.boxes.contains(b)
    }

    pub fn contains_vertex(&self, v: &Vertex) -> bool {
        self.boxes.contains(&LatticeBox::point(v))
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.boxes.iter().filter(|b| b.is_vertex()).map(|b| b.lo.clone()).collect()
    }

    /// Boxes with exactly `k` strict directions.
    pub fn boxes_of_dim(&self, k: usize) -> impl Iterator<Item = &LatticeBox> + '_ {
        self.boxes.iter().filter(move |b| b.dimension() == k)
    }

    /// Sorted distinct values taken by vertices in direction `a`.
    pub fn coordinate_values(&self, a: usize) -> Vec<Coord> {
        let set: BTreeSet<Coord> = self.boxes.iter().filter(|b| b.is_vertex()).map(|b| b.lo[a]).collect();
        set.into_iter().collect()
    }

    /// Componentwise min and max over all vertices.
    pub fn bounding_box(&self) -> Option<LatticeBox> {
        let first = self.boxes.iter().next()?;
        let mut lo = first.lo.clone();
        let mut hi = first.hi.clone();
        for b in &self.boxes {
            for a in 0..self.dim {
                lo.0[a] = lo.0[a].min(b.lo[a]);
                hi.0[a] = hi.0[a].max(b.hi[a]);
            }
        }
        Some(LatticeBox { lo, hi })
    }

    pub fn is_subshape_of(&self, other: &PastingShape) -> bool {
        self.dim == other.dim && self.boxes.is_subset(&other.boxes)
    }

    /// Boxes not contained in `other`.
    pub fn difference(&self, other: &PastingShape) -> BTreeSet<LatticeBox> {
        self.boxes.difference(&other.boxes).cloned().collect()
    }

    /// Stable hash of the canonical (sorted) box list.
    pub fn canonical_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.dim.hash(&mut h);
        for b in &self.boxes {
            b.hash(&mut h);
        }
        h.finish()
    }

    fn check_dim(&self, other: &PastingShape) -> Result<()> {
        if self.dim != other.dim {
            return Err(ShapeError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    /// Smallest shape containing both.
    pub fn union(&self, other: &PastingShape) -> Result<PastingShape> {
        self.check_dim(other)?;
        PastingShape::close(self.dim, self.boxes.iter().chain(other.boxes.iter()).cloned())
    }

    /// Union of many shapes of dimension `dim`.
    pub fn union_all<'a, I>(dim: usize, shapes: I) -> Result<PastingShape>
    where
        I: IntoIterator<Item = &'a PastingShape>,
    {
        let mut gens = Vec::new();
        for s in shapes {
            if s.dim != dim {
                return Err(ShapeError::DimensionMismatch { expected: dim, found: s.dim });
            }
            gens.extend(s.boxes.iter().cloned());
        }
        PastingShape::close(dim, gens)
    }

    /// Largest shape contained in both; the box-set intersection.
    pub fn intersect(&self, other: &PastingShape) -> Result<PastingShape> {
        self.check_dim(other)?;
        let boxes = self.boxes.intersection(&other.boxes).cloned().collect();
        Ok(PastingShape::from_closed(self.dim, boxes))
    }

    /// Keeps the boxes of dimension at most `k`.
    pub fn truncate(&self, k: usize) -> Result<PastingShape> {
        if k > self.dim {
            return Err(ShapeError::TruncationOutOfRange { k, dim: self.dim });
        }
        let boxes = self.boxes.iter().filter(|b| b.dimension() <= k).cloned().collect();
        Ok(PastingShape::from_closed(self.dim, boxes))
    }

    /// `true` if every box has dimension at most `k`.
    pub fn is_truncated(&self, k: usize) -> bool {
        self.boxes.iter().all(|b| b.dimension() <= k)
    }

    /// Boxes pinned to `value` in each constrained direction.
    pub fn hyperplane_slice(&self, constraints: &BTreeMap<usize, Coord>) -> PastingShape {
        let boxes = self
            .boxes
            .iter()
            .filter(|b| constraints.iter().all(|(&a, &c)| b.lo[a] == c && b.hi[a] == c))
            .cloned()
            .collect();
        PastingShape::from_closed(self.dim, boxes)
    }

    /// Boxes inside the closed window `w`.
    pub fn restrict(&self, w: &LatticeBox) -> PastingShape {
        let boxes = self
            .boxes
            .range(LatticeBox::point(&w.lo)..)
            .filter(|b| w.contains_box(b))
            .cloned()
            .collect();
        PastingShape::from_closed(self.dim, boxes)
    }

    /// Places this `k`-dimensional shape on directions `axes` of
    /// `ℕ^ambient`, zero elsewhere.
    pub fn embed_axes(&self, axes: &[usize], ambient: usize) -> Result<PastingShape> {
        check_axes(axes, ambient)?;
        if axes.len() != self.dim {
            return Err(ShapeError::DimensionMismatch { expected: self.dim, found: axes.len() });
        }
        let lift = |v: &Vertex| {
            let mut out = Vertex::zeros(ambient);
            for (i, &a) in axes.iter().enumerate() {
                out.0[a] = v[i];
            }
            out
        };
        let boxes = self.boxes.iter().map(|b| LatticeBox { lo: lift(&b.lo), hi: lift(&b.hi) }).collect();
        Ok(PastingShape::from_closed(ambient, boxes))
    }

    /// Drops every direction not in `axes`. Inverse to [`Self::embed_axes`]
    /// on shapes contained in a hyperplane transverse to `axes`.
    pub fn project_axes(&self, axes: &[usize]) -> Result<PastingShape> {
        check_axes(axes, self.dim)?;
        let drop = |v: &Vertex| Vertex(axes.iter().map(|&a| v[a]).collect());
        let boxes: BTreeSet<LatticeBox> =
            self.boxes.iter().map(|b| LatticeBox { lo: drop(&b.lo), hi: drop(&b.hi) }).collect();
        PastingShape::close(axes.len(), boxes)
    }

    /// Rank-remaps each direction's used values onto `0..m`. Returns the
    /// compressed shape and, per direction, the original value of each rank.
    pub fn compress(&self) -> (PastingShape, Vec<Vec<Coord>>) {
        let values: Vec<Vec<Coord>> = (0..self.dim).map(|a| self.coordinate_values(a)).collect();
        let rank = |a: usize, c: Coord| values[a].binary_search(&c).expect("vertex value") as Coord;
        let map = |v: &Vertex| Vertex((0..self.dim).map(|a| rank(a, v[a])).collect());
        let boxes = self.boxes.iter().map(|b| LatticeBox { lo: map(&b.lo), hi: map(&b.hi) }).collect();
        (PastingShape::from_closed(self.dim, boxes), values)
    }
}

fn check_axes(axes: &[usize], ambient: usize) -> Result<()> {
    let increasing = axes.windows(2).all(|w| w[0] < w[1]);
    if !increasing || axes.iter().any(|&a| a >= ambient) {
        return Err(ShapeError::BadAxes(axes.to_vec()));
    }
    Ok(())
}

/// All hyperplanes of dimension `k` (pinning `dim - k` directions) that meet
/// a vertex of `shape`.
pub fn hyperplanes(shape: &PastingShape, k: usize) -> Vec<BTreeMap<usize, Coord>> {
    let d = shape.dim();
    let mut out = BTreeSet::new();
    let pinned_sets = subsets_of_size(d, d.saturating_sub(k));
    for v in shape.vertices() {
        for set in &pinned_sets {
            out.insert(set.iter().map(|&a| (a, v[a])).collect::<BTreeMap<_, _>>());
        }
    }
    out.into_iter().collect()
}

pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(lo: &[Coord], hi: &[Coord]) -> LatticeBox {
        LatticeBox::of(lo, hi)
    }

    #[test]
    fn corner_subboxes_counts() {
        assert_eq!(b(&[0, 0], &[1, 1]).corner_subboxes().len(), 9);
        assert_eq!(b(&[5, 7], &[5, 7]).corner_subboxes(), vec![b(&[5, 7], &[5, 7])]);
        let mut edge = b(&[0, 1], &[2, 1]).corner_subboxes();
        edge.sort();
        assert_eq!(edge, vec![b(&[0, 1], &[0, 1]), b(&[0, 1], &[2, 1]), b(&[2, 1], &[2, 1])]);
    }

    #[test]
    fn corner_subboxes_exhaustive_up_to_four() {
        for x0 in 0..=4 {
            for y0 in x0..=4 {
                for x1 in 0..=4 {
                    for y1 in x1..=4 {
                        let bx = b(&[x0, x1], &[y0, y1]);
                        let faces = bx.corner_subboxes();
                        assert_eq!(faces.len(), 3usize.pow(bx.dimension() as u32));
                        let set: BTreeSet<_> = faces.iter().collect();
                        assert_eq!(set.len(), faces.len());
                    }
                }
            }
        }
    }

    #[test]
    fn joins() {
        assert_eq!(try_join(&b(&[0, 1], &[1, 1]), &b(&[1, 1], &[2, 1])).unwrap(), Some(b(&[0, 1], &[2, 1])));
        assert_eq!(try_join(&b(&[0, 0], &[1, 1]), &b(&[1, 0], &[2, 1])).unwrap(), Some(b(&[0, 0], &[2, 1])));
        assert_eq!(try_join(&b(&[0, 0], &[1, 1]), &b(&[1, 1], &[2, 2])).unwrap(), None);
        let sq = b(&[0, 0], &[1, 1]);
        assert_eq!(try_join(&sq, &sq).unwrap(), Some(sq.clone()));
        assert!(matches!(
            try_join(&sq, &b(&[0], &[1])),
            Err(ShapeError::DimensionMismatch { .. })
        ));
        // different degenerate value
        assert_eq!(try_join(&b(&[0, 0], &[1, 0]), &b(&[1, 1], &[2, 1])).unwrap(), None);
        // stacked the wrong way round
        assert_eq!(try_join(&b(&[1, 1], &[2, 1]), &b(&[0, 1], &[1, 1])).unwrap(), None);
    }

    #[test]
    fn close_small_cases() {
        assert!(PastingShape::close(2, []).unwrap().is_empty());
        let s = PastingShape::close(2, [b(&[0, 1], &[1, 1]), b(&[1, 1], &[2, 1])]).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.contains(&b(&[0, 1], &[2, 1])));
        assert!(matches!(
            PastingShape::close(2, [b(&[0, 1], &[1, 1]), b(&[0], &[1])]),
            Err(ShapeError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn explicit_rejects_missing_face() {
        let err = PastingShape::from_explicit(1, [b(&[0], &[1]), b(&[0], &[0])]).unwrap_err();
        match err {
            ShapeError::NotClosed(msg) => assert!(msg.contains("(1)"), "{msg}"),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn truncation_bounds() {
        let s = PastingShape::close(2, [b(&[0, 0], &[1, 1])]).unwrap();
        assert_eq!(s.truncate(1).unwrap().len(), 8);
        assert_eq!(s.truncate(2).unwrap(), s);
        assert!(s.truncate(3).is_err());
    }

    #[test]
    fn embed_and_project() {
        let interval = PastingShape::close(1, [b(&[0], &[1])]).unwrap();
        let e = interval.embed_axes(&[1], 3).unwrap();
        assert!(e.contains(&b(&[0, 0, 0], &[0, 1, 0])));
        assert_eq!(e.project_axes(&[1]).unwrap(), interval);
        assert!(interval.embed_axes(&[2, 1], 3).is_err());
        assert!(interval.embed_axes(&[3], 3).is_err());
    }

    #[test]
    fn compress_rank_remaps() {
        let s = PastingShape::close(1, [b(&[3], &[9])]).unwrap();
        let (c, vals) = s.compress();
        assert_eq!(c, PastingShape::close(1, [b(&[0], &[1])]).unwrap());
        assert_eq!(vals, vec![vec![3, 9]]);
    }
}
