//! Shipped example shapes.
//!
//! Besides the named data files, two families are generated on demand:
//! `SQ(n1,…,nd)` is the standard grid and `BOXDOT(n1,…;α1-ω1,…)` is the
//! shape `⊡[i]` for the window `i` of `□[n]`.

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Result, ShapeError};
use crate::grid::{boxdot_family, standard_grid, BoxdotSpec};
use crate::shape::{Coord, LatticeBox, PastingShape};
use crate::toolkit::doc::{parse_shape, ShapeDocument};

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        const SHIPPED: &[(&str, &str)] = &[
            $(($name, include_str!(concat!("../../fixtures/", $name, ".jsonl")))),*
        ];
    };
}

shipped!(
    "DIV_J", "DIV_K", "EX_ADM_0", "EX_ADM_1", "EX_ADM_2", "EX_DECOMP", "EX_I", "EX_J", "FILL1_F", "FILL1_I",
    "FILL1_J", "FILL1_K", "FILL2_F", "FILL2_I", "FILL2_J", "FILL2_K", "GRID_CLOSED", "GRID_OPEN", "NONGRID", "PW",
    "PWo", "SHAPING_EX", "TRIANGLE",
);

/// Names of the data-file fixtures.
pub fn fixture_names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _)| *n).collect()
}

/// Document text of a shipped fixture.
pub fn fixture_text(name: &str) -> Option<&'static str> {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn fixture(name: &str) -> Result<PastingShape> {
    fixture_in(None, name)
}

/// Like [`fixture`], but data files are read from `dir` when given.
pub fn fixture_in(dir: Option<&Path>, name: &str) -> Result<PastingShape> {
    let name = name.trim();
    if let Some(args) = call_args(name, "SQ") {
        let extents = parse_list(args).ok_or_else(|| ShapeError::UnknownFixture(name.into()))?;
        return Ok(standard_grid(&extents));
    }
    if let Some(args) = call_args(name, "BOXDOT") {
        let spec = parse_boxdot(args).ok_or_else(|| ShapeError::UnknownFixture(name.into()))?;
        return Ok(boxdot_family(&spec)?.boxdot);
    }
    if let Some(dir) = dir {
        let path = dir.join(format!("{name}.jsonl"));
        if path.exists() {
            let text = std::fs::read_to_string(&path).map_err(|e| ShapeError::Io(format!("{}: {e}", path.display())))?;
            return parse_shape(&text);
        }
    }
    parse_shape(fixture_text(name).ok_or_else(|| ShapeError::UnknownFixture(name.into()))?)
}

fn call_args<'a>(name: &'a str, head: &str) -> Option<&'a str> {
    name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

fn parse_list(s: &str) -> Option<Vec<Coord>> {
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// `6,4;2-5,1-3`
pub fn parse_boxdot(s: &str) -> Option<BoxdotSpec> {
    let (ext, win) = s.split_once(';')?;
    let extents = parse_list(ext)?;
    let window = win
        .split(',')
        .map(|p| {
            let (a, b) = p.split_once('-')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
        .collect::<Option<Vec<_>>>()?;
    BoxdotSpec::new(extents, window).ok()
}

/// The non-degenerate 2-boxes of `EX_J` by its stated rule: squares whose
/// edges lie in the 1-skeleton and which sit inside a 2-face of one of the
/// seven listed 3-boxes.
pub fn ex_j_rule_squares() -> BTreeSet<LatticeBox> {
    let doc = ShapeDocument::parse(fixture_text("EX_J").expect("EX_J is shipped")).expect("EX_J parses");
    let edges: Vec<LatticeBox> = doc.boxes.iter().filter(|b| b.dimension() == 1).cloned().collect();
    let faces: Vec<LatticeBox> = doc
        .boxes
        .iter()
        .filter(|b| b.dimension() == 3)
        .flat_map(|c| c.corner_subboxes())
        .filter(|f| f.dimension() == 2)
        .collect();
    let graph = PastingShape::close(3, edges).expect("dim 3");
    let verts = graph.vertices();
    let mut out = BTreeSet::new();
    for lo in &verts {
        for hi in &verts {
            if !lo.le(hi) || (0..3).filter(|&a| lo[a] < hi[a]).count() != 2 {
                continue;
            }
            let b = LatticeBox::from_vertices(lo.clone(), hi.clone());
            let edges_in = b.proper_faces().iter().filter(|f| f.dimension() == 1).all(|f| graph.contains(f));
            if edges_in && faces.iter().any(|f| f.contains_box(&b)) {
                out.insert(b);
            }
        }
    }
    out
}

/// 2-boxes of the closed `EX_J` that the rule does not produce, and rule
/// squares missing from it.
pub fn ex_j_discrepancy() -> (BTreeSet<LatticeBox>, BTreeSet<LatticeBox>) {
    let shape = fixture("EX_J").expect("EX_J loads");
    let rule = ex_j_rule_squares();
    let have: BTreeSet<LatticeBox> = shape.boxes_of_dim(2).cloned().collect();
    (have.difference(&rule).cloned().collect(), rule.difference(&have).cloned().collect())
}
