use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::grid::{boundary_of_window, detect_grid, GridWitness};
use crate::map::boxes_on_lines;
use crate::shape::{Coord, LatticeBox, PastingShape};
use crate::structure::entire::{entire_subshape, is_vertebra};

/// Default node budget for admittability and height searches.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Reads `PASTEBOX_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("PASTEBOX_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict<T> {
    Yes(T),
    No,
    Inconclusive,
}

impl<T> Verdict<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn yes(self) -> Option<T> {
        match self {
            Verdict::Yes(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Verdict<U> {
        match self {
            Verdict::Yes(t) => Verdict::Yes(f(t)),
            Verdict::No => Verdict::No,
            Verdict::Inconclusive => Verdict::Inconclusive,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No => "no",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// How a piece of a decomposition is certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PieceCert {
    Cell(GridWitness),
    Split(Box<Decomposition>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub window: LatticeBox,
    pub shape: PastingShape,
    pub cert: PieceCert,
}

/// An open base grid plus admittable pieces glued over distinct cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub base: PastingShape,
    pub witness: GridWitness,
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    /// Height certified by this tree: cells count 0, every split adds 1.
    pub fn height(&self) -> u32 {
        1 + self
            .pieces
            .iter()
            .map(|p| match &p.cert {
                PieceCert::Cell(_) => 0,
                PieceCert::Split(d) => d.height(),
            })
            .max()
            .unwrap_or(0)
    }
}

/// A grid glued along its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub grid: PastingShape,
    pub witness: GridWitness,
}

/// `I_0 ⊂ I_1 ⊂ … ⊂ I_n` with `I_0` a grid and each step a grid glued
/// onto an open vertebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub base: PastingShape,
    pub base_witness: GridWitness,
    pub steps: Vec<FiltrationStep>,
}

#[derive(Debug)]
struct Exhausted;

/// Memoizing search for decompositions.
///
/// With `minimize` set, every line system is tried and the returned tree
/// has minimal height; otherwise the first decomposition found is kept.
pub struct Admitter {
    budget: u64,
    nodes: u64,
    minimize: bool,
    memo: HashMap<PastingShape, Option<Node>>,
}

#[derive(Clone, Debug)]
enum Node {
    Cell(GridWitness),
    Split(u32, Decomposition),
}

impl Node {
    fn height(&self) -> u32 {
        match self {
            Node::Cell(_) => 0,
            Node::Split(h, _) => *h,
        }
    }
}

impl Admitter {
    pub fn new(budget: u64, minimize: bool) -> Self {
        Admitter { budget, nodes: 0, minimize, memo: HashMap::new() }
    }

    pub fn from_env(minimize: bool) -> Self {
        Self::new(budget_from_env(), minimize)
    }

    pub fn nodes_used(&self) -> u64 {
        self.nodes
    }

    /// Decides admittability, returning a decomposition certificate.
    pub fn decompose(&mut self, shape: &PastingShape) -> Verdict<Decomposition> {
        match self.solve(shape) {
            Err(Exhausted) => Verdict::Inconclusive,
            Ok(None) => Verdict::No,
            Ok(Some(Node::Split(_, d))) => Verdict::Yes(d),
            Ok(Some(Node::Cell(w))) => Verdict::Yes(trivial_decomposition(shape, w)),
        }
    }

    /// Minimal height when run with `minimize`, otherwise some height.
    pub fn height(&mut self, shape: &PastingShape) -> Verdict<u32> {
        match self.solve(shape) {
            Err(Exhausted) => Verdict::Inconclusive,
            Ok(None) => Verdict::No,
            Ok(Some(n)) => Verdict::Yes(n.height()),
        }
    }

    pub fn is_admittable(&mut self, shape: &PastingShape) -> Verdict<()> {
        self.height(shape).map(|_| ())
    }

    fn solve(&mut self, shape: &PastingShape) -> Result<Option<Node>, Exhausted> {
        if let Some(r) = self.memo.get(shape) {
            return Ok(r.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Exhausted);
        }
        let r = self.solve_fresh(shape)?;
        self.memo.insert(shape.clone(), r.clone());
        Ok(r)
    }

    fn solve_fresh(&mut self, shape: &PastingShape) -> Result<Option<Node>, Exhausted> {
        if shape.is_empty() {
            return Ok(None);
        }
        let d = shape.dim();
        if let Some(w) = detect_grid(shape) {
            if w.is_cell() {
                return Ok(Some(Node::Cell(w)));
            }
        }
        if d == 0 {
            return Ok(None);
        }
        let bbox = shape.bounding_box().expect("nonempty");
        let mut cands: Vec<Vec<Coord>> = Vec::with_capacity(d);
        for a in 0..d {
            let c: Vec<Coord> = shape
                .coordinate_values(a)
                .into_iter()
                .filter(|&c| {
                    let mut span = bbox.clone();
                    span.lo.0[a] = c;
                    span.hi.0[a] = c;
                    shape.contains(&span)
                })
                .collect();
            if c.first() != Some(&bbox.lo[a]) || c.last() != Some(&bbox.hi[a]) || c.len() < 2 {
                return Ok(None);
            }
            cands.push(c);
        }
        let mut best: Option<Node> = None;
        for lines in line_systems(&cands) {
            let Some(dec) = self.try_lines(shape, lines)? else { continue };
            let h = dec.height();
            if !self.minimize || h == 1 {
                return Ok(Some(Node::Split(h, dec)));
            }
            if best.as_ref().map_or(true, |b| h < b.height()) {
                best = Some(Node::Split(h, dec));
            }
        }
        Ok(best)
    }

    fn try_lines(&mut self, shape: &PastingShape, lines: Vec<Vec<Coord>>) -> Result<Option<Decomposition>, Exhausted> {
        let d = shape.dim();
        if !boxes_on_lines(&lines).filter(|b| b.dimension() < d).all(|b| shape.contains(&b)) {
            return Ok(None);
        }
        let base = pinned_on_lines(shape, &lines);
        let witness = GridWitness::new(lines, false);
        let windows = witness.cell_windows();
        let pieces: Vec<PastingShape> = windows.iter().map(|w| shape.restrict(w)).collect();
        let rebuilt = PastingShape::union_all(d, std::iter::once(&base).chain(pieces.iter())).expect("same dimension");
        if &rebuilt != shape {
            return Ok(None);
        }
        let mut out = Vec::with_capacity(pieces.len());
        for (window, piece) in windows.into_iter().zip(pieces) {
            let cert = match self.solve(&piece)? {
                None => return Ok(None),
                Some(Node::Cell(w)) => PieceCert::Cell(w),
                Some(Node::Split(_, dec)) => PieceCert::Split(Box::new(dec)),
            };
            out.push(Piece { window, shape: piece, cert });
        }
        Ok(Some(Decomposition { base, witness, pieces: out }))
    }
}

/// Boxes of `shape` pinned to a line value in some direction.
pub(crate) fn pinned_on_lines(shape: &PastingShape, lines: &[Vec<Coord>]) -> PastingShape {
    let boxes = shape
        .boxes()
        .iter()
        .filter(|b| (0..shape.dim()).any(|a| !b.is_strict(a) && lines[a].binary_search(&b.lo[a]).is_ok()))
        .cloned()
        .collect();
    PastingShape::from_closed(shape.dim(), boxes)
}

/// Line systems keeping both corner values, finest first. The single-cell
/// system is skipped since its only piece is the shape itself.
fn line_systems(cands: &[Vec<Coord>]) -> Vec<Vec<Vec<Coord>>> {
    let per_dir: Vec<Vec<Vec<Coord>>> = cands
        .iter()
        .map(|c| {
            let inner = &c[1..c.len() - 1];
            let mut subsets: Vec<Vec<Coord>> = (0u64..(1 << inner.len()))
                .map(|mask| {
                    let mut l = vec![c[0]];
                    l.extend(inner.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
                    l.push(*c.last().unwrap());
                    l
                })
                .collect();
            subsets.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.cmp(y)));
            subsets
        })
        .collect();
    let mut out: Vec<Vec<Vec<Coord>>> = vec![vec![]];
    for options in &per_dir {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out.retain(|ls| ls.iter().any(|l| l.len() > 2));
    out.sort_by_key(|ls| std::cmp::Reverse(ls.iter().map(Vec::len).sum::<usize>()));
    out
}

/// The decomposition of a cell: its boundary as base, itself as piece.
pub fn trivial_decomposition(cell: &PastingShape, w: GridWitness) -> Decomposition {
    let base = if cell.dim() == 0 {
        PastingShape::empty(0)
    } else {
        boundary_of_window(cell, &w.corner_box())
    };
    let window = if cell.dim() == 0 { cell.boxes().iter().next().cloned().expect("vertex") } else { w.corner_box() };
    Decomposition {
        base,
        witness: GridWitness { closed: false, ..w.clone() },
        pieces: vec![Piece { window, shape: cell.clone(), cert: PieceCert::Cell(w) }],
    }
}

/// Searches for a decomposition with the budget from the environment.
pub fn find_decomposition(shape: &PastingShape) -> Verdict<Decomposition> {
    Admitter::from_env(false).decompose(shape)
}

/// Minimal height, or `No` when the shape is not admittable.
pub fn height_of(shape: &PastingShape) -> Verdict<u32> {
    Admitter::from_env(true).height(shape)
}

/// Decides admittability and returns a filtration certificate.
pub fn is_admittable(shape: &PastingShape) -> Verdict<Filtration> {
    match find_decomposition(shape) {
        Verdict::Yes(d) => Verdict::Yes(filtration_for(shape, &d)),
        Verdict::No => Verdict::No,
        Verdict::Inconclusive => Verdict::Inconclusive,
    }
}

/// Flattens a decomposition depth first into a filtration. A grid is its
/// own one-stage filtration, and pieces that are grids are glued whole.
pub fn filtration_for(shape: &PastingShape, dec: &Decomposition) -> Filtration {
    if let Some(w) = detect_grid(shape) {
        return Filtration { base: shape.clone(), base_witness: w, steps: vec![] };
    }
    let mut steps = Vec::new();
    flatten(dec, &mut steps);
    Filtration { base: dec.base.clone(), base_witness: dec.witness.clone(), steps }
}

fn flatten(dec: &Decomposition, steps: &mut Vec<FiltrationStep>) {
    for p in &dec.pieces {
        if let Some(w) = detect_grid(&p.shape) {
            if w.closed || !w.is_cell() {
                steps.push(FiltrationStep { grid: p.shape.clone(), witness: w });
            }
            continue;
        }
        match &p.cert {
            PieceCert::Cell(w) => {
                if w.closed {
                    steps.push(FiltrationStep { grid: p.shape.clone(), witness: w.clone() });
                }
            }
            PieceCert::Split(sub) => {
                steps.push(FiltrationStep { grid: sub.base.clone(), witness: sub.witness.clone() });
                flatten(sub, steps);
            }
        }
    }
}

/// Checks `∂A` against `glued = I_{k-1} ∩ A` and that it is an open
/// vertebra of `ambient`.
fn check_open_vertebra(ambient: &PastingShape, grid: &PastingShape, w: &GridWitness) -> Result<(), String> {
    let window = w.corner_box();
    let boundary = boundary_of_window(grid, &window);
    let glued = ambient.intersect(grid).expect("same dimension");
    if glued != boundary {
        return Err(format!("intersection over {window} is not the boundary of the glued grid"));
    }
    match entire_subshape(ambient, &window) {
        Some((e, ew)) if e == boundary && ew.open => {}
        _ => return Err(format!("boundary over {window} is not an open entire subshape")),
    }
    if !is_vertebra(ambient, &window) {
        return Err(format!("boundary over {window} is not minimal"));
    }
    Ok(())
}

/// Validates every clause of a filtration certificate for `shape`.
pub fn validate_filtration(shape: &PastingShape, f: &Filtration) -> Result<(), String> {
    if detect_grid(&f.base).as_ref() != Some(&f.base_witness) {
        return Err("base is not the witnessed grid".into());
    }
    if !f.base.is_subshape_of(shape) {
        return Err("base is not a subshape".into());
    }
    let mut running = f.base.clone();
    for (k, step) in f.steps.iter().enumerate() {
        if detect_grid(&step.grid).as_ref() != Some(&step.witness) {
            return Err(format!("step {k}: glued shape is not the witnessed grid"));
        }
        if !step.grid.is_subshape_of(shape) {
            return Err(format!("step {k}: glued grid is not a subshape"));
        }
        check_open_vertebra(&running, &step.grid, &step.witness).map_err(|e| format!("step {k}: {e}"))?;
        running = running.union(&step.grid).expect("same dimension");
    }
    if &running != shape {
        return Err("filtration does not end at the shape".into());
    }
    Ok(())
}

/// Validates every clause of a decomposition certificate for `shape`.
pub fn validate_decomposition(shape: &PastingShape, dec: &Decomposition) -> Result<(), String> {
    let d = shape.dim();
    if d == 0 {
        let ok = shape.len() == 1
            && dec.pieces.len() == 1
            && matches!(dec.pieces[0].cert, PieceCert::Cell(_))
            && &dec.pieces[0].shape == shape;
        return if ok { Ok(()) } else { Err("a 0-dimensional decomposition is a single vertex".into()) };
    }
    let base = &dec.base;
    if detect_grid(base).as_ref() != Some(&dec.witness) || dec.witness.closed {
        return Err("base is not the witnessed open grid".into());
    }
    if !base.is_subshape_of(shape) {
        return Err("base is not a subshape".into());
    }
    let windows: BTreeSet<&LatticeBox> = dec.pieces.iter().map(|p| &p.window).collect();
    if windows.len() != dec.pieces.len() {
        return Err("pieces are glued over the same vertebra twice".into());
    }
    for p in &dec.pieces {
        let j = &p.shape;
        if !j.is_subshape_of(shape) {
            return Err(format!("piece over {} is not a subshape", p.window));
        }
        if j.bounding_box().as_ref() != Some(&p.window) {
            return Err(format!("piece over {} has other corners", p.window));
        }
        let boundary = boundary_of_window(j, &p.window);
        if base.intersect(j).expect("same dimension") != boundary {
            return Err(format!("base meets piece over {} outside its boundary", p.window));
        }
        match entire_subshape(base, &p.window) {
            Some((e, ew)) if e == boundary && ew.open && is_vertebra(base, &p.window) => {}
            _ => return Err(format!("boundary over {} is not an open vertebra of the base", p.window)),
        }
        match &p.cert {
            PieceCert::Cell(w) => {
                if detect_grid(j).as_ref() != Some(w) || !w.is_cell() {
                    return Err(format!("piece over {} is not the witnessed cell", p.window));
                }
            }
            PieceCert::Split(sub) => validate_decomposition(j, sub)?,
        }
    }
    let all = PastingShape::union_all(d, std::iter::once(base).chain(dec.pieces.iter().map(|p| &p.shape)))
        .expect("same dimension");
    if &all != shape {
        return Err("base and pieces do not reassemble the shape".into());
    }
    Ok(())
}
