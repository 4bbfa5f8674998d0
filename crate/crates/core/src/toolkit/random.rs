//! Constructive generator of composable shapes with their decompositions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{detect_grid, GridWitness};
use crate::map::GridMap;
use crate::shape::{Coord, LatticeBox, PastingShape};
use crate::structure::admit::{pinned_on_lines, trivial_decomposition, Decomposition, Piece, PieceCert};

const MAX_DEPTH: usize = 3;

/// A grid on `lines`, with some of its cells refined by further grids.
struct Plan {
    lines: Vec<Vec<Coord>>,
    children: Vec<(LatticeBox, Plan)>,
}

impl Plan {
    fn witness(&self) -> GridWitness {
        GridWitness::new(self.lines.clone(), true)
    }

    fn grids(&self, out: &mut Vec<PastingShape>) {
        out.push(GridMap { lines: self.lines.clone() }.image_shape(false));
        for (_, c) in &self.children {
            c.grids(out);
        }
    }
}

/// `levels[a][v]` is the first refinement depth allowed to draw a line at
/// `v` in direction `a`. Sharing these across cells keeps subdivisions of a
/// common face nested.
type Levels = Vec<Vec<usize>>;

fn grow(rng: &mut ChaCha8Rng, levels: &Levels, lines: Vec<Vec<Coord>>, remaining: &mut u64, depth: usize) -> Plan {
    let mut children = Vec::new();
    for window in GridWitness::new(lines.clone(), true).cell_windows() {
        if *remaining == 0 || depth >= MAX_DEPTH || !rng.gen_bool(0.5) {
            continue;
        }
        let Some(inner) = refine(levels, &window, depth + 1) else { continue };
        *remaining -= 1;
        children.push((window, grow(rng, levels, inner, remaining, depth + 1)));
    }
    Plan { lines, children }
}

/// Lines inside `window` drawn from depth `depth`, if any are interior.
fn refine(levels: &Levels, window: &LatticeBox, depth: usize) -> Option<Vec<Vec<Coord>>> {
    let lines: Vec<Vec<Coord>> = (0..window.ambient_dim())
        .map(|a| {
            let (lo, hi) = (window.lo[a], window.hi[a]);
            let mut l = vec![lo];
            l.extend((lo + 1..hi).filter(|&v| levels[a][v as usize] <= depth));
            l.push(hi);
            l
        })
        .collect();
    lines.iter().any(|l| l.len() > 2).then_some(lines)
}

fn certify(shape: &PastingShape, plan: &Plan) -> Decomposition {
    let d = shape.dim();
    let base = pinned_on_lines(shape, &plan.lines);
    let witness = GridWitness::new(plan.lines.clone(), false);
    let pieces = witness
        .cell_windows()
        .into_iter()
        .map(|window| {
            let piece = shape.restrict(&window);
            let cert = match plan.children.iter().find(|(w, _)| *w == window) {
                Some((_, child)) => PieceCert::Split(Box::new(certify(&piece, child))),
                None => PieceCert::Cell(detect_grid(&piece).expect("an unrefined cell stays a cell")),
            };
            Piece { window, shape: piece, cert }
        })
        .collect();
    debug_assert_eq!(base.dim(), d);
    Decomposition { base, witness, pieces }
}

/// A random 2-dimensional composable shape and a decomposition of it.
/// `budget` caps the number of glued grids; 1 gives a single closed grid.
pub fn random_composable(seed: u64, budget: u64) -> (PastingShape, Decomposition) {
    random_composable_in(2, seed, budget)
}

pub fn random_composable_in(dim: usize, seed: u64, budget: u64) -> (PastingShape, Decomposition) {
    assert!(dim >= 1, "random shapes need a direction");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lines: Vec<Vec<Coord>> = (0..dim)
        .map(|_| {
            let n = rng.gen_range(1..=3);
            let mut l = vec![0];
            for _ in 0..n {
                let last = *l.last().unwrap();
                l.push(last + rng.gen_range(1..=6));
            }
            l
        })
        .collect();
    let levels: Levels = lines
        .iter()
        .map(|l| {
            (0..=*l.last().unwrap())
                .map(|v| if l.contains(&v) { 0 } else { rng.gen_range(1..=MAX_DEPTH + 1) })
                .collect()
        })
        .collect();
    let mut remaining = budget.saturating_sub(1);
    let plan = grow(&mut rng, &levels, lines, &mut remaining, 0);
    let mut grids = Vec::new();
    plan.grids(&mut grids);
    let shape = PastingShape::union_all(dim, grids.iter()).expect("same dimension");
    let dec = if plan.children.is_empty() && plan.witness().is_cell() {
        trivial_decomposition(&shape, detect_grid(&shape).expect("a cell"))
    } else {
        certify(&shape, &plan)
    };
    (shape, dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::admit::validate_decomposition;

    #[test]
    fn budget_one_is_a_closed_grid() {
        for seed in 0..20 {
            let (s, dec) = random_composable(seed, 1);
            assert!(detect_grid(&s).is_some_and(|w| w.closed));
            validate_decomposition(&s, &dec).unwrap();
        }
    }

    #[test]
    fn deterministic_and_valid() {
        for seed in 0..30 {
            let (a, da) = random_composable(seed, 8);
            let (b, _) = random_composable(seed, 8);
            assert_eq!(a, b);
            validate_decomposition(&a, &da).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
    }

    #[test]
    fn three_dimensional_certificates() {
        for seed in 0..6 {
            let (s, dec) = random_composable_in(3, seed, 3);
            validate_decomposition(&s, &dec).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        }
    }
}
