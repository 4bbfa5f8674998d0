//! The acceptance suite as named, independent checks.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::grid::{boxdot_family, detect_grid, grid_pullback, standard_grid, BoxdotSpec};
use crate::map::{box_condition, GridMap};
use crate::nerve::{nerve_level, pullback_nerve_check, segal_check};
use crate::shape::{Coord, LatticeBox, PastingShape};
use crate::structure::admit::{height_of, is_admittable, validate_decomposition, Admitter, Verdict};
use crate::structure::cover::check_covering;
use crate::structure::division::{check_division_pair_with, DivisionPair};
use crate::structure::entire::enumerate_vertebrae;
use crate::structure::fillable::{fillable_by_definition, is_fillable};
use crate::structure::{is_composable, is_locally_composable, verify_vertebra_union};
use crate::toolkit::fixtures::{ex_j_discrepancy, fixture_in, fixture_names};
use crate::toolkit::random::random_composable;

pub const REPORT_SCHEMA: u32 = 1;

/// Frozen regression values, first established by enumeration.
pub const PW_VERTEBRAE: usize = 5;
pub const PW_SUBGRID_CELLS: usize = 6;

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Skip the checks on 3-dimensional shapes.
    pub skip_slow: bool,
    /// Read data-file fixtures from here instead of the shipped copies.
    pub fixture_dir: Option<PathBuf>,
    /// Run only checks whose name starts with one of these.
    pub only: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckVerdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub verdict: CheckVerdict,
    pub elapsed_ms: u128,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub counterexample: Value,
}

type Outcome = std::result::Result<String, Failure>;

fn ensure(cond: bool, message: impl Into<String>, counterexample: Value) -> std::result::Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure { message: message.into(), counterexample })
    }
}

impl From<crate::error::ShapeError> for Failure {
    fn from(e: crate::error::ShapeError) -> Self {
        Failure { message: e.to_string(), counterexample: Value::Null }
    }
}

pub struct Ctx<'a> {
    pub config: &'a SuiteConfig,
}

impl Ctx<'_> {
    pub fn fixture(&self, name: &str) -> Result<PastingShape> {
        fixture_in(self.config.fixture_dir.as_deref(), name)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
    }
}

pub struct Check {
    pub name: &'static str,
    pub slow: bool,
    pub run: fn(&Ctx) -> Outcome,
}

pub const CHECKS: &[Check] = &[
    Check { name: "01-pinwheel", slow: false, run: pinwheel },
    Check { name: "02-composable", slow: false, run: composable_2d },
    Check { name: "02-composable-3d", slow: true, run: composable_3d },
    Check { name: "03-grid-detection", slow: false, run: grid_detection },
    Check { name: "04-nerve-counts", slow: false, run: nerve_counts },
    Check { name: "05-segal", slow: false, run: |c| segal(c, false) },
    Check { name: "05-segal-3d", slow: true, run: |c| segal(c, true) },
    Check { name: "06-truncation", slow: false, run: |c| truncation(c, false) },
    Check { name: "06-truncation-3d", slow: true, run: |c| truncation(c, true) },
    Check { name: "07-division-boxdot", slow: false, run: division_boxdot },
    Check { name: "08-fillable", slow: false, run: fillable },
    Check { name: "09-pullback", slow: false, run: pullback },
    Check { name: "10-random-composable", slow: false, run: random_property },
    Check { name: "11-frozen-counts", slow: false, run: frozen_counts },
];

pub fn run_check(check: &Check, config: &SuiteConfig) -> CheckResult {
    let start = Instant::now();
    let outcome = (check.run)(&Ctx { config });
    let elapsed_ms = start.elapsed().as_millis();
    match outcome {
        Ok(detail) => CheckResult { name: check.name.into(), verdict: CheckVerdict::Pass, elapsed_ms, detail, counterexample: None },
        Err(f) => CheckResult {
            name: check.name.into(),
            verdict: CheckVerdict::Fail,
            elapsed_ms,
            detail: f.message,
            counterexample: Some(f.counterexample),
        },
    }
}

pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let selected: Vec<&Check> = CHECKS
        .iter()
        .filter(|c| config.only.is_empty() || config.only.iter().any(|p| c.name.starts_with(p.as_str())))
        .collect();
    let mut checks: Vec<CheckResult> = selected
        .par_iter()
        .map(|c| {
            if config.skip_slow && c.slow {
                CheckResult {
                    name: c.name.into(),
                    verdict: CheckVerdict::Skipped,
                    elapsed_ms: 0,
                    detail: "slow check excluded".into(),
                    counterexample: None,
                }
            } else {
                run_check(c, config)
            }
        })
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = checks.iter().all(|c| c.verdict != CheckVerdict::Fail);
    SuiteReport { schema: REPORT_SCHEMA, seed: config.seed, passed, checks }
}

fn boxes_json(set: &BTreeSet<LatticeBox>) -> Value {
    json!(set.iter().map(|b| b.to_string()).collect::<Vec<_>>())
}

fn pw_generators() -> Vec<LatticeBox> {
    [([0, 0], [2, 1]), ([2, 0], [3, 2]), ([1, 1], [2, 2]), ([0, 1], [1, 3]), ([1, 2], [3, 3]), ([0, 0], [3, 3])]
        .iter()
        .map(|(lo, hi)| LatticeBox::of(lo, hi))
        .collect()
}

fn pinwheel(ctx: &Ctx) -> Outcome {
    let pw = ctx.fixture("PW")?;
    let pwo = ctx.fixture("PWo")?;
    let closed = PastingShape::close(2, pw_generators())?;
    ensure(closed == pw, "closure of the generators differs from PW", json!({
        "missing": boxes_json(&closed.difference(&pw)),
        "extra": boxes_json(&pw.difference(&closed)),
    }))?;
    let full = LatticeBox::of(&[0, 0], &[3, 3]);
    let removed = pw.difference(&pwo);
    ensure(
        removed == BTreeSet::from([full.clone()]) && pwo.is_subshape_of(&pw),
        "PWo is not PW minus the full box",
        json!({ "removed": boxes_json(&removed), "added": boxes_json(&pwo.difference(&pw)) }),
    )?;
    ensure(matches!(is_admittable(&pw), Verdict::No), "PW admittability is not `no`", json!(is_admittable(&pw).label()))?;
    let local = is_locally_composable(&pwo)?;
    ensure(local.is_yes(), "PWo is not locally composable", json!(local))?;
    let vw = |s: &PastingShape| enumerate_vertebrae(s, 2).into_iter().map(|(v, w)| (w.window, v)).collect::<Vec<_>>();
    let (a, b) = (vw(&pw), vw(&pwo));
    ensure(a == b, "2-vertebrae of PW and PWo differ", json!({
        "pw": a.iter().map(|(w, _)| w.to_string()).collect::<Vec<_>>(),
        "pwo": b.iter().map(|(w, _)| w.to_string()).collect::<Vec<_>>(),
    }))?;
    let u = verify_vertebra_union(&pw);
    ensure(!u.equal && u.residual == BTreeSet::from([full]), "PW vertebra union residual is not the full box", json!(u))?;
    let uo = verify_vertebra_union(&pwo);
    ensure(uo.equal, "PWo is not the union of its vertebrae", json!(uo))?;
    Ok(format!("{} boxes, {} vertebrae", pw.len(), a.len()))
}

fn composable_named(ctx: &Ctx, names: &[&str]) -> std::result::Result<Vec<String>, Failure> {
    let mut notes = Vec::new();
    for &n in names {
        let s = ctx.fixture(n)?;
        let r = is_composable(&s);
        ensure(r.is_yes(), format!("{n} is not composable"), json!({ "fixture": n, "report": r }))?;
        let u = verify_vertebra_union(&s);
        ensure(u.equal, format!("{n} is not the union of its vertebrae"), json!({ "fixture": n, "report": u }))?;
        notes.push(format!("{n} ok"));
    }
    Ok(notes)
}

fn composable_2d(ctx: &Ctx) -> Outcome {
    let notes = composable_named(ctx, &["EX_I", "TRIANGLE"])?;
    let h = height_of(&ctx.fixture("EX_I")?);
    ensure(h == Verdict::Yes(3), "height of EX_I is not 3", json!(h.yes()))?;
    Ok(format!("{}; height(EX_I) = 3", notes.join(", ")))
}

fn composable_3d(ctx: &Ctx) -> Outcome {
    let notes = composable_named(ctx, &["EX_J"])?;
    let (extra, missing) = ex_j_discrepancy();
    ensure(extra.is_empty() && missing.is_empty(), "EX_J 2-boxes disagree with the stated rule", json!({
        "beyond_rule": boxes_json(&extra),
        "rule_only": boxes_json(&missing),
    }))?;
    Ok(format!("{}; 2-box rule matches", notes.join(", ")))
}

fn expect_grid(ctx: &Ctx, name: &str, closed: bool, lines: Vec<Vec<Coord>>) -> std::result::Result<(), Failure> {
    let w = detect_grid(&ctx.fixture(name)?);
    let ok = w.as_ref().is_some_and(|w| w.closed == closed && w.lines == lines);
    ensure(ok, format!("{name} detection differs"), json!({ "fixture": name, "found": w.map(|w| (w.lines, w.closed)) }))
}

fn grid_detection(ctx: &Ctx) -> Outcome {
    expect_grid(ctx, "GRID_CLOSED", true, vec![vec![0, 1, 2, 4], vec![0, 2]])?;
    expect_grid(ctx, "GRID_OPEN", false, vec![vec![0, 2, 3, 5], vec![0, 1, 2]])?;
    let ng = detect_grid(&ctx.fixture("NONGRID")?);
    ensure(ng.is_none(), "NONGRID detected as a grid", json!(ng.map(|w| w.lines)))?;
    for n in 1..=3 {
        for m in 1..=3 {
            let w = detect_grid(&standard_grid(&[n, m]));
            let full = vec![(0..=n).collect::<Vec<_>>(), (0..=m).collect()];
            ensure(
                w.as_ref().is_some_and(|w| w.closed && w.lines == full),
                "standard grid not detected with full lines",
                json!({ "extents": [n, m] }),
            )?;
        }
    }
    Ok("3 fixtures and 9 standard grids".into())
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of weakly increasing maps `[n] → [m]`, by listing all maps.
fn monotone_maps(n: usize, m: Coord) -> u64 {
    let mut count = 0;
    let mut f = vec![0 as Coord; n + 1];
    loop {
        if f.windows(2).all(|w| w[0] <= w[1]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i > n {
                return count;
            }
            if f[i] < m {
                f[i] += 1;
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

fn nerve_counts(_: &Ctx) -> Outcome {
    let mut checked = 0;
    for m0 in 1..=3 {
        for m1 in 1..=3 {
            let grid = standard_grid(&[m0, m1]);
            for n0 in 0..=3usize {
                for n1 in 0..=3usize {
                    let got = nerve_level(&grid, &[n0, n1]).len() as u64;
                    let formula = binom(n0 as u64 + m0 as u64 + 1, n0 as u64 + 1)
                        * binom(n1 as u64 + m1 as u64 + 1, n1 as u64 + 1);
                    let brute = monotone_maps(n0, m0) * monotone_maps(n1, m1);
                    ensure(got == formula && got == brute, "level cardinality mismatch", json!({
                        "extents": [m0, m1], "level": [n0, n1], "enumerated": got, "formula": formula, "brute_force": brute,
                    }))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (grid, level) pairs"))
}

/// Levels of arity `d` with entry sum at most `max`.
pub fn levels_up_to(d: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                let used: usize = p.iter().sum();
                (0..=max - used).map(move |n| {
                    let mut p = p.clone();
                    p.push(n);
                    p
                })
            })
            .collect();
    }
    out
}

fn fixtures_by_dim(ctx: &Ctx, three: bool) -> std::result::Result<Vec<(&'static str, PastingShape)>, Failure> {
    let mut out = Vec::new();
    for n in fixture_names() {
        let s = ctx.fixture(n)?;
        if (s.dim() == 3) == three {
            out.push((n, s));
        }
    }
    Ok(out)
}

fn segal(ctx: &Ctx, three: bool) -> Outcome {
    let shapes = fixtures_by_dim(ctx, three)?;
    let work: Vec<(&str, &PastingShape, Vec<usize>)> = shapes
        .iter()
        .flat_map(|(n, s)| levels_up_to(s.dim(), 5).into_iter().map(move |l| (*n, s, l)))
        .collect();
    let bad = work.par_iter().find_any(|(_, s, l)| !segal_check(s, l));
    if let Some((n, _, l)) = bad {
        return Err(Failure { message: format!("Segal map fails for {n}"), counterexample: json!({ "fixture": n, "level": l }) });
    }
    Ok(format!("{} fixtures, {} levels", shapes.len(), work.len()))
}

fn truncation(ctx: &Ctx, three: bool) -> Outcome {
    let shapes = fixtures_by_dim(ctx, three)?;
    let work: Vec<(&str, &PastingShape, Vec<usize>, usize)> = shapes
        .iter()
        .flat_map(|(n, s)| {
            levels_up_to(s.dim(), 4).into_iter().flat_map(move |l| (0..s.dim()).map(move |k| (*n, s, l.clone(), k)))
        })
        .collect();
    let bad = work.par_iter().find_any(|(_, s, l, k)| {
        let filtered: BTreeSet<_> = nerve_level(s, l).simplices.into_iter().filter(|x| x.dimension() <= *k).collect();
        filtered != nerve_level(&s.truncate(*k).expect("k below dim"), l).simplices
    });
    if let Some((n, _, l, k)) = bad {
        return Err(Failure {
            message: format!("truncation mismatch for {n}"),
            counterexample: json!({ "fixture": n, "level": l, "k": k }),
        });
    }
    Ok(format!("{} fixtures, {} (level, k) cases", shapes.len(), work.len()))
}

fn all_extents(max: Coord) -> Vec<Vec<Coord>> {
    let mut out: Vec<Vec<Coord>> = (1..=max).map(|n| vec![n]).collect();
    for n in 1..=max {
        for m in 1..=max {
            out.push(vec![n, m]);
        }
    }
    out
}

fn division_boxdot(_: &Ctx) -> Outcome {
    let specs: Vec<BoxdotSpec> = all_extents(3).iter().flat_map(|e| BoxdotSpec::all_for(e)).collect();
    let bad = specs.par_iter().find_map_any(|spec| -> Option<Failure> {
        let fam = boxdot_family(spec).ok()?;
        let pair = DivisionPair { k: fam.boxdot.clone(), j: fam.a.clone(), ambient: fam.ambient.clone() };
        let report = check_division_pair_with(&pair, &mut Admitter::from_env(false));
        if !report.verdict || !report.membership_criterion {
            return Some(Failure { message: "not a division pair".into(), counterexample: json!({ "spec": spec, "report": report }) });
        }
        for b in fam.boxdot.boxes() {
            if !fam.m.values().any(|m| m.contains(b)) {
                return Some(Failure {
                    message: "box of ⊡ in no half-space".into(),
                    counterexample: json!({ "spec": spec, "box": b.to_string() }),
                });
            }
        }
        for level in levels_up_to(spec.dim(), 2 * spec.dim()).into_iter().filter(|l| l.iter().all(|&n| n <= 2)) {
            for s in nerve_level(&fam.boxdot, &level).simplices {
                if !fam.m.values().any(|m| s.lies_in(m)) {
                    return Some(Failure {
                        message: "simplex of ⊡ in no half-space".into(),
                        counterexample: json!({ "spec": spec, "level": level, "simplex": s }),
                    });
                }
            }
        }
        None
    });
    match bad {
        Some(f) => Err(f),
        None => Ok(format!("{} windows", specs.len())),
    }
}

/// Subshapes for the fillability comparison: closures of sets of top
/// boxes and closed grid images, each with at most `max_boxes` boxes.
pub fn fillable_universe(i: &PastingShape, max_boxes: usize) -> Vec<PastingShape> {
    let d = i.dim();
    let tops: Vec<LatticeBox> = i.boxes_of_dim(d).cloned().collect();
    let mut out: BTreeSet<PastingShape> = BTreeSet::new();
    let limit = tops.len().min(16);
    for mask in 1u64..(1 << limit) {
        let gens = tops.iter().take(limit).enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, b)| b.clone());
        let s = PastingShape::close(d, gens).expect("same dimension");
        if s.len() <= max_boxes {
            out.insert(s);
        }
    }
    for m in valid_grid_maps(i, 4) {
        let s = m.image_shape(false);
        if s.len() <= max_boxes {
            out.insert(s);
        }
    }
    if let Ok(t) = i.truncate(d - 1) {
        if t.len() <= max_boxes {
            out.insert(t);
        }
    }
    out.into_iter().collect()
}

fn compare_fillable(f: &PastingShape, pair: &DivisionPair) -> std::result::Result<bool, Failure> {
    let fast = is_fillable(f, pair)?;
    let slow = fillable_by_definition(f, pair)?;
    ensure(fast.fillable == slow, "criterion and definition disagree", json!({
        "subshape": boxes_json(f.boxes()),
        "criterion": fast,
        "definition": slow,
    }))?;
    Ok(slow)
}

fn fillable(ctx: &Ctx) -> Outcome {
    let mut compared = 0;
    for (tag, expect) in [("FILL1", true), ("FILL2", false)] {
        let pair = DivisionPair {
            k: ctx.fixture(&format!("{tag}_K"))?,
            j: ctx.fixture(&format!("{tag}_J"))?,
            ambient: ctx.fixture(&format!("{tag}_I"))?,
        };
        let report = check_division_pair_with(&pair, &mut Admitter::from_env(false));
        ensure(report.verdict, format!("{tag} pair is not a division pair"), json!(report))?;
        let f = ctx.fixture(&format!("{tag}_F"))?;
        let got = compare_fillable(&f, &pair)?;
        ensure(got == expect, format!("{tag}_F fillability is {got}"), json!({ "expected": expect }))?;
        for s in fillable_universe(&pair.ambient, 40) {
            compare_fillable(&s, &pair)?;
            compared += 1;
        }
    }
    let mut rng = ctx.rng(8);
    for _ in 0..100 {
        let extents: Vec<Coord> = (0..2).map(|_| rng.gen_range(1..=3)).collect();
        let specs = BoxdotSpec::all_for(&extents);
        let spec = specs.choose(&mut rng).expect("some window");
        let fam = boxdot_family(spec)?;
        let pair = DivisionPair { k: fam.boxdot, j: fam.a, ambient: fam.ambient };
        let tops: Vec<LatticeBox> = pair.ambient.boxes_of_dim(2).cloned().collect();
        for _ in 0..3 {
            let n = rng.gen_range(1..=3.min(tops.len()));
            let gens = tops.choose_multiple(&mut rng, n).cloned();
            let f = PastingShape::close(2, gens)?;
            compare_fillable(&f, &pair)?;
            compared += 1;
        }
    }
    Ok(format!("FILL1 and FILL2 reproduce; {compared} subshapes compared"))
}

/// Injective grid maps into `target` with at most `max_lines` values per
/// direction and at least two.
pub fn valid_grid_maps(target: &PastingShape, max_lines: usize) -> Vec<GridMap> {
    let per_dir: Vec<Vec<Vec<Coord>>> = (0..target.dim())
        .map(|a| {
            let vals = target.coordinate_values(a);
            (0u64..1 << vals.len())
                .filter(|m| (2..=max_lines).contains(&(m.count_ones() as usize)))
                .map(|m| vals.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, &v)| v).collect())
                .collect()
        })
        .collect();
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
    acc.into_iter().filter(|l| box_condition(target, l)).map(|lines| GridMap { lines }).collect()
}

fn pullback(ctx: &Ctx) -> Outcome {
    let levels: Vec<Vec<usize>> = (0..=2).flat_map(|a| (0..=2).map(move |b| vec![a, b])).collect();
    let mut rng = ctx.rng(9);
    let mut done = 0;
    for name in ["EX_I", "SQ(3,3)"] {
        let target = ctx.fixture(name)?;
        let maps = valid_grid_maps(&target, 3);
        let mut pairs = 0;
        let mut tries = 0;
        while pairs < 50 && tries < 10_000 {
            tries += 1;
            let f = maps.choose(&mut rng).expect("some grid map");
            let g = maps.choose(&mut rng).expect("some grid map");
            let Ok(sq) = grid_pullback(f, g) else { continue };
            pairs += 1;
            ensure(pullback_nerve_check(&sq, f, g, &levels), "nerve square is not a pullback", json!({
                "target": name, "f": f, "g": g,
            }))?;
        }
        ensure(pairs == 50, format!("too few overlapping pairs into {name}"), json!({ "pairs": pairs }))?;
        done += pairs;
    }
    Ok(format!("{done} pairs at 9 levels"))
}

fn random_property(ctx: &Ctx) -> Outcome {
    let base = ctx.config.seed.wrapping_mul(1000);
    let bad = (0..100u64).into_par_iter().find_map_any(|k| -> Option<Failure> {
        let seed = base.wrapping_add(k);
        let (s, dec) = random_composable(seed, 8);
        let fail = |message: String| Some(Failure { message, counterexample: json!({ "seed": seed, "boxes": boxes_json(s.boxes()) }) });
        if let Err(e) = validate_decomposition(&s, &dec) {
            return fail(format!("certificate rejected: {e}"));
        }
        if !height_of(&s).is_yes() {
            return fail("height search failed".into());
        }
        if !is_composable(&s).is_yes() {
            return fail("not composable".into());
        }
        if !verify_vertebra_union(&s).equal {
            return fail("not the union of its vertebrae".into());
        }
        let vertebrae: Vec<PastingShape> = enumerate_vertebrae(&s, s.dim()).into_iter().map(|(v, _)| v).collect();
        match check_covering(&s, &vertebrae) {
            Ok(r) if r.verdict => {}
            _ => return fail("vertebrae do not cover".into()),
        }
        let mut parts = vec![dec.base.clone()];
        parts.extend(dec.pieces.iter().map(|p| p.shape.clone()));
        match check_covering(&s, &parts) {
            Ok(r) if r.verdict => None,
            _ => fail("decomposition does not cover".into()),
        }
    });
    match bad {
        Some(f) => Err(f),
        None => Ok(format!("100 seeds from {base}")),
    }
}

/// Closed subgrids of a shape: images of closed grid maps, deduplicated.
pub fn closed_subgrids(shape: &PastingShape) -> Vec<(GridMap, PastingShape)> {
    let mut seen = BTreeSet::new();
    valid_grid_maps(shape, usize::MAX)
        .into_iter()
        .filter_map(|m| {
            let img = m.image_shape(false);
            seen.insert(img.clone()).then_some((m, img))
        })
        .collect()
}

fn frozen_counts(ctx: &Ctx) -> Outcome {
    let pw = ctx.fixture("PW")?;
    let vertebrae = enumerate_vertebrae(&pw, 2).len();
    let grids = closed_subgrids(&pw);
    let cells = grids.iter().filter(|(m, _)| m.extents().iter().all(|&n| n == 1)).count();
    ensure(
        vertebrae == PW_VERTEBRAE && cells == PW_SUBGRID_CELLS && grids.len() == cells,
        "PW counts drifted",
        json!({ "vertebrae": vertebrae, "subgrid_cells": cells, "subgrids": grids.len() }),
    )?;
    Ok(format!("vertebrae {vertebrae}, subgrid cells {cells}"))
}
