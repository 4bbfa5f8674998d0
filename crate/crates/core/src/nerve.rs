//! Level-wise nerve enumeration: simplices are tuples of monotone
//! sequences whose image boxes all lie in the shape.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::grid::{standard_grid, GridPullback};
use crate::map::{box_condition, GridMap};
use crate::shape::{Coord, PastingShape};
use crate::structure::enumerate_vertebrae;

/// A `d`-tuple of weakly increasing sequences; `maps[a]` has `n_a + 1`
/// entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Simplex {
    pub maps: Vec<Vec<Coord>>,
}

impl Simplex {
    pub fn new(maps: Vec<Vec<Coord>>) -> Self {
        Simplex { maps }
    }

    pub fn level(&self) -> Vec<usize> {
        self.maps.iter().map(|m| m.len() - 1).collect()
    }

    /// Per-direction image sets.
    pub fn images(&self) -> Vec<Vec<Coord>> {
        self.maps
            .iter()
            .map(|m| {
                let mut v = m.clone();
                v.dedup();
                v
            })
            .collect()
    }

    /// Number of directions with a non-constant sequence.
    pub fn dimension(&self) -> usize {
        self.maps.iter().filter(|m| m.first() != m.last()).count()
    }

    /// No repeated values in any direction.
    pub fn is_nondegenerate(&self) -> bool {
        self.maps.iter().all(|m| m.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn lies_in(&self, shape: &PastingShape) -> bool {
        box_condition(shape, &self.images())
    }

    /// Post-composition with a map out of a standard grid, reading each
    /// entry as an index into `f`'s sequences.
    pub fn push_forward(&self, f: &GridMap) -> Simplex {
        Simplex {
            maps: self.maps.iter().enumerate().map(|(a, m)| m.iter().map(|&i| f.lines[a][i as usize]).collect()).collect(),
        }
    }
}

pub fn simplex_dimension(s: &Simplex) -> usize {
    s.dimension()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveLevel {
    pub level: Vec<usize>,
    pub simplices: BTreeSet<Simplex>,
}

impl NerveLevel {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn nondegenerate_count(&self) -> usize {
        self.simplices.iter().filter(|s| s.is_nondegenerate()).count()
    }
}

/// Image tuples satisfying the box condition, with at most `max[a]`
/// values in direction `a`.
fn valid_image_tuples(shape: &PastingShape, max: &[usize]) -> Vec<Vec<Vec<Coord>>> {
    let d = shape.dim();
    let values: Vec<Vec<Coord>> = (0..d).map(|a| shape.coordinate_values(a)).collect();
    let mut seen: HashSet<Vec<Vec<Coord>>> = HashSet::new();
    let mut stack: Vec<Vec<Vec<Coord>>> = Vec::new();
    for v in shape.vertices() {
        let t: Vec<Vec<Coord>> = (0..d).map(|a| vec![v[a]]).collect();
        if seen.insert(t.clone()) {
            stack.push(t);
        }
    }
    let mut out = Vec::new();
    while let Some(t) = stack.pop() {
        for a in 0..d {
            if t[a].len() >= max[a] {
                continue;
            }
            let top = *t[a].last().expect("nonempty");
            for &c in values[a].iter().filter(|&&c| c > top) {
                let mut n = t.clone();
                n[a].push(c);
                if !seen.contains(&n) && box_condition(shape, &n) {
                    seen.insert(n.clone());
                    stack.push(n);
                }
            }
        }
        out.push(t);
    }
    out.sort();
    out
}

/// Monotone surjections `[n] → values`, as sequences.
fn surjections(values: &[Coord], n: usize) -> Vec<Vec<Coord>> {
    fn go(values: &[Coord], len: usize, cur: &mut Vec<Coord>, out: &mut Vec<Vec<Coord>>) {
        if values.is_empty() {
            if len == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // copies of values[0] before moving on; leave room for the rest
        let rest = values.len() - 1;
        for k in 1..=len.saturating_sub(rest) {
            cur.extend(std::iter::repeat(values[0]).take(k));
            go(&values[1..], len - k, cur, out);
            cur.truncate(cur.len() - k);
        }
    }
    let mut out = Vec::new();
    go(values, n + 1, &mut Vec::new(), &mut out);
    out
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All simplices of `[shape]` at `level`.
pub fn nerve_level(shape: &PastingShape, level: &[usize]) -> NerveLevel {
    assert_eq!(level.len(), shape.dim(), "level arity must match the shape dimension");
    let max: Vec<usize> = level.iter().map(|n| n + 1).collect();
    let mut simplices = BTreeSet::new();
    for t in valid_image_tuples(shape, &max) {
        let per_dir: Vec<Vec<Vec<Coord>>> = t.iter().zip(level).map(|(vals, &n)| surjections(vals, n)).collect();
        let mut acc: Vec<Vec<Vec<Coord>>> = vec![vec![]];
        for options in &per_dir {
            acc = acc
                .iter()
                .flat_map(|p| {
                    options.iter().map(move |o| {
                        let mut p = p.clone();
                        p.push(o.clone());
                        p
                    })
                })
                .collect();
        }
        simplices.extend(acc.into_iter().map(Simplex::new));
    }
    NerveLevel { level: level.to_vec(), simplices }
}

/// Cardinality of a level without materializing it.
pub fn nerve_count(shape: &PastingShape, level: &[usize]) -> u64 {
    let max: Vec<usize> = level.iter().map(|n| n + 1).collect();
    valid_image_tuples(shape, &max)
        .iter()
        .map(|t| t.iter().zip(level).map(|(v, &n)| binom(n as u64, v.len() as u64 - 1)).product::<u64>())
        .sum()
}

/// Memo of nerve levels keyed by shape hash and level.
#[derive(Default)]
pub struct NerveCache {
    levels: HashMap<(u64, Vec<usize>), NerveLevel>,
}

impl NerveCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn level(&mut self, shape: &PastingShape, level: &[usize]) -> &NerveLevel {
        self.levels
            .entry((shape.canonical_hash(), level.to_vec()))
            .or_insert_with(|| nerve_level(shape, level))
    }
}

/// Checks every Segal map of `shape` at `level`.
pub fn segal_check(shape: &PastingShape, level: &[usize]) -> bool {
    let mut cache = NerveCache::new();
    let full = cache.level(shape, level).simplices.clone();
    (0..level.len()).filter(|&a| level[a] >= 2).all(|a| {
        let mut unit_level = level.to_vec();
        unit_level[a] = 1;
        let unit = cache.level(shape, &unit_level).simplices.clone();
        segal_check_sets(&full, &unit, a, level[a])
    })
}

/// Segal map in direction `a` from an explicit level set (with `n_a = n`)
/// to chains of `n` unit-step simplices from `unit`: checks that every
/// simplex restricts to unit simplices and every compatible chain glues to
/// a member of `full`.
pub fn segal_check_sets(full: &BTreeSet<Simplex>, unit: &BTreeSet<Simplex>, a: usize, n: usize) -> bool {
    let restrict = |s: &Simplex, j: usize| {
        let mut maps = s.maps.clone();
        maps[a] = vec![s.maps[a][j], s.maps[a][j + 1]];
        Simplex { maps }
    };
    let mut images = BTreeSet::new();
    for s in full {
        let chain: Vec<Simplex> = (0..n).map(|j| restrict(s, j)).collect();
        if chain.iter().any(|c| !unit.contains(c)) {
            return false;
        }
        if !images.insert(chain) {
            return false;
        }
    }
    let mut by_start: BTreeMap<(Vec<Vec<Coord>>, Coord), Vec<&Simplex>> = BTreeMap::new();
    for u in unit {
        let mut rest = u.maps.clone();
        let start = rest[a][0];
        rest[a].clear();
        by_start.entry((rest, start)).or_default().push(u);
    }
    let mut chains = 0usize;
    for u in unit {
        let mut frontier: Vec<Vec<Coord>> = vec![u.maps[a].clone()];
        let mut rest = u.maps.clone();
        rest[a].clear();
        for _ in 1..n {
            let mut next = Vec::new();
            for seq in &frontier {
                let key = (rest.clone(), *seq.last().expect("nonempty"));
                for v in by_start.get(&key).into_iter().flatten() {
                    let mut s = seq.clone();
                    s.push(v.maps[a][1]);
                    next.push(s);
                }
            }
            frontier = next;
        }
        for seq in frontier {
            let mut maps = u.maps.clone();
            maps[a] = seq;
            if !full.contains(&Simplex { maps }) {
                return false;
            }
            chains += 1;
        }
    }
    chains == full.len()
}

/// Union of the levels of the top-dimensional vertebrae.
pub fn spine_level(shape: &PastingShape, level: &[usize]) -> NerveLevel {
    let mut simplices = BTreeSet::new();
    for (v, _) in enumerate_vertebrae(shape, shape.dim()) {
        simplices.extend(nerve_level(&v, level).simplices);
    }
    NerveLevel { level: level.to_vec(), simplices }
}

/// Simplices neither in the spine nor of dimension below `d`.
pub fn spine_gap_report(shape: &PastingShape, level: &[usize]) -> BTreeSet<Simplex> {
    let spine = spine_level(shape, level).simplices;
    let d = shape.dim();
    nerve_level(shape, level)
        .simplices
        .into_iter()
        .filter(|s| !spine.contains(s) && s.dimension() >= d)
        .collect()
}

/// All simplices of the standard grid `□[extents]` at `level`.
pub fn standard_level(extents: &[Coord], level: &[usize]) -> BTreeSet<Simplex> {
    nerve_level(&standard_grid(extents), level).simplices
}

/// Checks the square of a grid pullback at each level: the apex level maps
/// bijectively onto pairs of simplices agreeing in the target.
pub fn pullback_nerve_check(sq: &GridPullback, f: &GridMap, g: &GridMap, levels: &[Vec<usize>]) -> bool {
    levels.iter().all(|lv| {
        let apex = standard_level(&sq.extents, lv);
        pullback_nerve_check_sets(sq, f, g, lv, &apex)
    })
}

/// As [`pullback_nerve_check`] with an explicit apex level set.
pub fn pullback_nerve_check_sets(
    sq: &GridPullback,
    f: &GridMap,
    g: &GridMap,
    level: &[usize],
    apex: &BTreeSet<Simplex>,
) -> bool {
    let left = standard_level(&f.extents(), level);
    let right = standard_level(&g.extents(), level);
    let mut by_image: HashMap<Simplex, Vec<&Simplex>> = HashMap::new();
    for t in &right {
        by_image.entry(t.push_forward(g)).or_default().push(t);
    }
    let mut pairs = BTreeSet::new();
    for s in &left {
        for t in by_image.get(&s.push_forward(f)).into_iter().flatten() {
            pairs.insert((s.clone(), (*t).clone()));
        }
    }
    let mut hit = BTreeSet::new();
    for u in apex {
        let p = (u.push_forward(&sq.left), u.push_forward(&sq.right));
        if !pairs.contains(&p) || !hit.insert(p) {
            return false;
        }
    }
    hit.len() == pairs.len()
}
