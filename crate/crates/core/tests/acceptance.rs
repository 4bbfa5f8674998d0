//! The acceptance gate: one PASS/FAIL line per criterion.
//!
//! Each criterion runs the matching suite checks and then an independent
//! oracle written here. All comparisons are exact; only wall-clock budgets
//! carry a tolerance.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use pastebox::grid::{boxdot_family, grid_pullback};
use pastebox::nerve::{segal_check, standard_level};
use pastebox::structure::division::{check_division_pair, DivisionPair};
use pastebox::structure::{find_decomposition, height_of, is_locally_composable, is_fillable, verify_vertebra_union, Verdict};
use pastebox::toolkit::fixtures::{fixture, fixture_names};
use pastebox::toolkit::suite::{run_check, CheckVerdict, SuiteConfig, CHECKS, PW_SUBGRID_CELLS, PW_VERTEBRAE};
use pastebox::{detect_grid, nerve_level, standard_grid, BoxdotSpec, Coord, GridMap, LatticeBox, PastingShape, Simplex};

/// Every count, set and verdict must match exactly.
const EXACT: u64 = 0;
const PINWHEEL_BUDGET: Duration = Duration::from_secs(1);
const EX_J_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_BUDGET: Duration = Duration::from_secs(120);
const SUITE_SEED: u64 = 0;

type Verdict_ = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn exact(got: u64, want: u64, what: &str) -> Result<(), String> {
    ensure(got.abs_diff(want) <= EXACT, format!("{what}: got {got}, want {want}"))
}

/// Runs every suite check whose name starts with `prefix`.
fn suite(prefix: &str) -> Result<Duration, String> {
    let config = SuiteConfig { seed: SUITE_SEED, ..Default::default() };
    let mut total = Duration::ZERO;
    let mut ran = 0;
    for c in CHECKS.iter().filter(|c| c.name.starts_with(prefix)) {
        let r = run_check(c, &config);
        total += Duration::from_millis(r.elapsed_ms as u64);
        ran += 1;
        if r.verdict != CheckVerdict::Pass {
            return Err(format!("suite check {} failed: {} {:?}", r.name, r.detail, r.counterexample));
        }
    }
    ensure(ran > 0, format!("no suite check named {prefix}*"))?;
    Ok(total)
}

fn b(lo: &[Coord], hi: &[Coord]) -> LatticeBox {
    LatticeBox::of(lo, hi)
}

/// Face and join closure by plain fixpoint iteration.
fn naive_closure(gens: &[LatticeBox]) -> BTreeSet<LatticeBox> {
    let mut set: BTreeSet<LatticeBox> = gens.iter().cloned().collect();
    loop {
        let mut next = set.clone();
        for x in &set {
            next.extend(x.corner_subboxes());
        }
        let list: Vec<&LatticeBox> = set.iter().collect();
        for x in &list {
            for y in &list {
                if x.is_vertex() || y.is_vertex() {
                    continue;
                }
                let d = x.ambient_dim();
                let strict: Vec<bool> = (0..d).map(|a| x.is_strict(a)).collect();
                if strict != (0..d).map(|a| y.is_strict(a)).collect::<Vec<_>>() {
                    continue;
                }
                let differ: Vec<usize> = (0..d).filter(|&a| x.lo[a] != y.lo[a] || x.hi[a] != y.hi[a]).collect();
                if let [a] = differ[..] {
                    if x.hi[a] == y.lo[a] {
                        let mut hi = x.hi.clone();
                        hi.0[a] = y.hi[a];
                        next.insert(LatticeBox::from_vertices(x.lo.clone(), hi));
                    }
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

/// Minimal windows (all facets present) among windows with the same strict
/// directions and pinned values.
fn oracle_vertebrae(shape: &PastingShape, k: usize) -> Vec<LatticeBox> {
    let verts = shape.vertices();
    let mut windows = Vec::new();
    for lo in &verts {
        for hi in &verts {
            if !lo.le(hi) {
                continue;
            }
            let w = LatticeBox::from_vertices(lo.clone(), hi.clone());
            if w.dimension() != k {
                continue;
            }
            if w.corner_subboxes().iter().filter(|f| f.dimension() + 1 == k).all(|f| shape.contains(f)) {
                windows.push(w);
            }
        }
    }
    let key = |w: &LatticeBox| {
        let d = w.ambient_dim();
        ((0..d).map(|a| w.is_strict(a)).collect::<Vec<_>>(), (0..d).filter(|&a| !w.is_strict(a)).map(|a| w.lo[a]).collect::<Vec<_>>())
    };
    windows.iter().filter(|w| !windows.iter().any(|o| o != *w && key(o) == key(w) && w.contains_box(o))).cloned().collect()
}

fn monotone(values: &[Coord], n: usize) -> Vec<Vec<Coord>> {
    let mut out: Vec<Vec<Coord>> = values.iter().map(|&v| vec![v]).collect();
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|s| {
                values.iter().filter(|&&v| v >= *s.last().unwrap()).map(move |&v| {
                    let mut s = s.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out
}

/// Nerve level by brute force over all monotone tuples (two directions).
fn brute_level(shape: &PastingShape, level: [usize; 2]) -> BTreeSet<Simplex> {
    let xs = monotone(&shape.coordinate_values(0), level[0]);
    let ys = monotone(&shape.coordinate_values(1), level[1]);
    let mut out = BTreeSet::new();
    for x in &xs {
        for y in &ys {
            let ok = x.iter().all(|&x0| {
                x.iter().filter(|&&x1| x1 >= x0).all(|&x1| {
                    y.iter().all(|&y0| y.iter().filter(|&&y1| y1 >= y0).all(|&y1| shape.contains(&b(&[x0, y0], &[x1, y1]))))
                })
            });
            if ok {
                out.insert(Simplex::new(vec![x.clone(), y.clone()]));
            }
        }
    }
    out
}

fn two_dim_fixtures() -> Vec<(&'static str, PastingShape)> {
    fixture_names().into_iter().map(|n| (n, fixture(n).unwrap())).filter(|(_, s)| s.dim() == 2).collect()
}

fn c1_pinwheel() -> Verdict_ {
    let start = Instant::now();
    suite("01-")?;
    let pw = fixture("PW").unwrap();
    let gens = [b(&[0, 0], &[2, 1]), b(&[2, 0], &[3, 2]), b(&[1, 1], &[2, 2]), b(&[0, 1], &[1, 3]), b(&[1, 2], &[3, 3]), b(&[0, 0], &[3, 3])];
    ensure(&naive_closure(&gens) == pw.boxes(), "PW differs from the naive closure")?;
    let pwo = fixture("PWo").unwrap();
    ensure(pw.difference(&pwo) == BTreeSet::from([b(&[0, 0], &[3, 3])]) && pwo.is_subshape_of(&pw), "PW minus PWo")?;
    ensure(oracle_vertebrae(&pw, 2) == oracle_vertebrae(&pwo, 2), "oracle vertebra windows differ")?;
    ensure(verify_vertebra_union(&pw).residual == BTreeSet::from([b(&[0, 0], &[3, 3])]), "PW residual")?;
    ensure(verify_vertebra_union(&pwo).equal, "PWo is not the union of its vertebrae")?;
    ensure(find_decomposition(&pw) == Verdict::No, "PW admittable")?;
    ensure(is_locally_composable(&pwo).map_err(|e| e.to_string())?.is_yes(), "PWo not locally composable")?;
    let elapsed = start.elapsed();
    ensure(elapsed < PINWHEEL_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!("pinwheel identities hold ({elapsed:.2?})"))
}

fn c2_composable() -> Verdict_ {
    let start = Instant::now();
    suite("02-composable-3d")?;
    let slow = start.elapsed();
    ensure(slow < EX_J_BUDGET, format!("EX_J took {slow:?}"))?;
    suite("02-composable")?;
    exact(height_of(&fixture("EX_I").unwrap()).yes().map_or(u64::MAX, u64::from), 3, "height of EX_I")?;
    for name in ["EX_I", "EX_J", "TRIANGLE"] {
        let s = fixture(name).unwrap();
        let union = PastingShape::union_all(s.dim(), oracle_vertebrae(&s, s.dim()).iter().map(|w| s.restrict(w)).collect::<Vec<_>>().iter()).unwrap();
        ensure(union == s, format!("{name} is not the union of its oracle vertebrae"))?;
    }
    Ok(format!("EX_I, EX_J, TRIANGLE composable, height(EX_I) = 3 (EX_J {slow:.2?})"))
}

fn c3_grids() -> Verdict_ {
    suite("03-")?;
    let c = detect_grid(&fixture("GRID_CLOSED").unwrap()).ok_or("GRID_CLOSED")?;
    ensure(c.closed && c.lines == vec![vec![0, 1, 2, 4], vec![0, 2]], "GRID_CLOSED witness")?;
    let o = detect_grid(&fixture("GRID_OPEN").unwrap()).ok_or("GRID_OPEN")?;
    ensure(!o.closed && o.lines == vec![vec![0, 2, 3, 5], vec![0, 1, 2]], "GRID_OPEN witness")?;
    ensure(detect_grid(&fixture("NONGRID").unwrap()).is_none(), "NONGRID detected")?;
    for n in 1..=3 {
        for m in 1..=3 {
            let w = detect_grid(&standard_grid(&[n, m])).ok_or("standard grid")?;
            ensure(w.closed && w.lines == vec![(0..=n).collect::<Vec<_>>(), (0..=m).collect()], "standard grid witness")?;
        }
    }
    Ok("witnesses exact for fixtures and 9 standard grids".into())
}

fn c4_counts() -> Verdict_ {
    suite("04-")?;
    let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    let mut cases = 0;
    for m0 in 1..=3 {
        for m1 in 1..=3 {
            let g = standard_grid(&[m0, m1]);
            for n0 in 0..=3usize {
                for n1 in 0..=3usize {
                    let formula = binom((n0 + m0 as usize + 1) as u64, (n0 + 1) as u64) * binom((n1 + m1 as usize + 1) as u64, (n1 + 1) as u64);
                    let brute = monotone(&(0..=m0).collect::<Vec<_>>(), n0).len() * monotone(&(0..=m1).collect::<Vec<_>>(), n1).len();
                    exact(nerve_level(&g, &[n0, n1]).len() as u64, formula, "nerve count")?;
                    exact(brute as u64, formula, "brute count")?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} levels match formula and brute force"))
}

fn c5_segal() -> Verdict_ {
    suite("05-")?;
    // gluing oracle: unit chains that glue are exactly the brute-force level
    let mut checked = 0;
    for (name, s) in two_dim_fixtures() {
        for (n0, n1) in [(2, 0), (2, 1), (3, 1), (0, 2), (1, 2)] {
            let full = brute_level(&s, [n0, n1]);
            if n0 >= 2 {
                let unit = brute_level(&s, [1, n1]);
                let mut chains: Vec<Vec<Coord>> = Vec::new();
                let mut glued = BTreeSet::new();
                for u in &unit {
                    chains.clear();
                    chains.push(u.maps[0].clone());
                    for _ in 1..n0 {
                        chains = chains
                            .iter()
                            .flat_map(|c| {
                                unit.iter()
                                    .filter(|v| v.maps[1] == u.maps[1] && v.maps[0][0] == *c.last().unwrap())
                                    .map(|v| {
                                        let mut c = c.clone();
                                        c.push(v.maps[0][1]);
                                        c
                                    })
                                    .collect::<Vec<_>>()
                            })
                            .collect();
                    }
                    for c in &chains {
                        glued.insert(Simplex::new(vec![c.clone(), u.maps[1].clone()]));
                    }
                }
                ensure(glued == full, format!("{name} ({n0},{n1}): glued chains differ from the level"))?;
            }
            ensure(segal_check(&s, &[n0, n1]), format!("{name} ({n0},{n1})"))?;
            checked += 1;
        }
    }
    Ok(format!("all fixtures Segal up to total level 5; {checked} oracle gluings"))
}

fn c6_truncation() -> Verdict_ {
    suite("06-")?;
    for (name, s) in two_dim_fixtures() {
        for k in 0..2 {
            let t = s.truncate(k).unwrap();
            for (n0, n1) in [(1, 1), (2, 1), (2, 2)] {
                let low: BTreeSet<Simplex> = brute_level(&s, [n0, n1]).into_iter().filter(|x| x.dimension() <= k).collect();
                ensure(low == brute_level(&t, [n0, n1]), format!("{name} k={k} ({n0},{n1})"))?;
            }
        }
    }
    Ok("dimension filter equals nerve of truncation".into())
}

fn c7_division() -> Verdict_ {
    suite("07-")?;
    let mut specs = 0;
    for n0 in 1..=3 {
        for n1 in 1..=3 {
            for spec in BoxdotSpec::all_for(&[n0, n1]) {
                let fam = boxdot_family(&spec).unwrap();
                let (a0, w0) = spec.window[0];
                let (a1, w1) = spec.window[1];
                for x in fam.ambient.boxes() {
                    let outside = x.hi[0] <= a0 || x.lo[0] >= w0 || x.hi[1] <= a1 || x.lo[1] >= w1;
                    ensure(fam.boxdot.contains(x) == outside, format!("{spec:?}: {x}"))?;
                    if outside {
                        ensure(fam.m.values().any(|m| m.contains(x)), format!("{spec:?}: {x} in no M"))?;
                    }
                }
                let report = check_division_pair(&DivisionPair { k: fam.boxdot, j: fam.a, ambient: fam.ambient });
                ensure(report.verdict && report.membership_criterion, format!("{spec:?}: {report:?}"))?;
                specs += 1;
            }
        }
    }
    Ok(format!("{specs} windows: division pairs, membership and factoring"))
}

fn c8_fillable() -> Verdict_ {
    suite("08-")?;
    for (tag, want) in [("FILL1", true), ("FILL2", false)] {
        let pair = DivisionPair {
            k: fixture(&format!("{tag}_K")).unwrap(),
            j: fixture(&format!("{tag}_J")).unwrap(),
            ambient: fixture(&format!("{tag}_I")).unwrap(),
        };
        let got = is_fillable(&fixture(&format!("{tag}_F")).unwrap(), &pair).map_err(|e| e.to_string())?;
        ensure(got.fillable == want, format!("{tag}_F fillable = {}", got.fillable))?;
    }
    Ok("criterion agrees with definition; FILL1 and FILL2 reproduce".into())
}

fn c9_pullback() -> Verdict_ {
    suite("09-")?;
    let pairs = [
        (vec![vec![0, 1, 4], vec![0, 1]], vec![vec![0, 4], vec![0, 1, 3]]),
        (vec![vec![0, 1, 2, 3], vec![0, 2, 3]], vec![vec![1, 3], vec![0, 1, 2, 3]]),
    ];
    for (f, g) in pairs {
        let (f, g) = (GridMap::new(f).unwrap(), GridMap::new(g).unwrap());
        let sq = grid_pullback(&f, &g).map_err(|e| e.to_string())?;
        for level in [[1, 1], [2, 1], [2, 2]] {
            // pairs of simplices with equal images, counted directly
            let left = standard_level(&f.extents(), &level);
            let right = standard_level(&g.extents(), &level);
            let agree = left.iter().flat_map(|s| right.iter().map(move |t| (s, t))).filter(|(s, t)| s.push_forward(&f) == t.push_forward(&g)).count();
            exact(agree as u64, standard_level(&sq.extents, &level).len() as u64, "pullback pairs")?;
        }
    }
    Ok("50 random pairs into EX_I and SQ(3,3); oracle pair counts agree".into())
}

fn c10_random() -> Verdict_ {
    let elapsed = suite("10-")?;
    ensure(elapsed < RANDOM_BUDGET, format!("took {elapsed:?}"))?;
    for seed in 0..10 {
        let (s, _) = pastebox::toolkit::random_composable(seed, 8);
        ensure(matches!(height_of(&s), Verdict::Yes(_)), format!("seed {seed}: no height"))?;
        let union = PastingShape::union_all(2, oracle_vertebrae(&s, 2).iter().map(|w| s.restrict(w)).collect::<Vec<_>>().iter()).unwrap();
        ensure(union == s, format!("seed {seed}: oracle vertebrae do not cover"))?;
    }
    Ok(format!("100 seeds ({elapsed:.2?})"))
}

fn c11_frozen() -> Verdict_ {
    suite("11-")?;
    let pw = fixture("PW").unwrap();
    exact(oracle_vertebrae(&pw, 2).len() as u64, PW_VERTEBRAE as u64, "PW vertebrae")?;
    let values: Vec<Vec<Coord>> = (0..2).map(|a| pw.coordinate_values(a)).collect();
    let mut cells = 0;
    for (i, &x0) in values[0].iter().enumerate() {
        for &x1 in &values[0][i + 1..] {
            for (j, &y0) in values[1].iter().enumerate() {
                for &y1 in &values[1][j + 1..] {
                    let w = b(&[x0, y0], &[x1, y1]);
                    let subgrid = w.corner_subboxes().iter().all(|f| pw.contains(f));
                    if subgrid {
                        cells += 1;
                    }
                }
            }
        }
    }
    exact(cells, PW_SUBGRID_CELLS as u64, "PW subgrid cells")?;
    Ok(format!("PW: {PW_VERTEBRAE} vertebrae, {PW_SUBGRID_CELLS} subgrid cells"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict_); 11] = [
        ("pinwheel", c1_pinwheel),
        ("composable fixtures", c2_composable),
        ("grid detection", c3_grids),
        ("nerve counts", c4_counts),
        ("Segal sets", c5_segal),
        ("truncation compatibility", c6_truncation),
        ("division and boxdot", c7_division),
        ("fillable equivalence", c8_fillable),
        ("pullbacks", c9_pullback),
        ("random composable", c10_random),
        ("frozen counts", c11_frozen),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {}: {name}: {detail}", i + 1),
            Err(e) => {
                println!("FAIL {}: {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
