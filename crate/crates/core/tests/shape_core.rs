use std::collections::{BTreeMap, BTreeSet};

use pastebox::map::ShapeMap;
use pastebox::shape::hyperplanes;
use pastebox::structure::entire::enumerate_vertebrae;
use pastebox::toolkit::fixtures::{fixture, fixture_names};
use pastebox::*;

fn b(lo: &[Coord], hi: &[Coord]) -> LatticeBox {
    LatticeBox::of(lo, hi)
}

fn shape(d: usize, gens: &[LatticeBox]) -> PastingShape {
    PastingShape::close(d, gens.iter().cloned()).unwrap()
}

#[test]
fn corner_subboxes_examples() {
    let sq = b(&[0, 0], &[1, 1]).corner_subboxes();
    assert_eq!(sq.len(), 9);
    assert_eq!(sq.iter().filter(|x| x.dimension() == 0).count(), 4);
    assert_eq!(sq.iter().filter(|x| x.dimension() == 1).count(), 4);
}

#[test]
fn join_examples() {
    assert_eq!(try_join(&b(&[0, 1], &[1, 1]), &b(&[1, 1], &[2, 1])).unwrap(), Some(b(&[0, 1], &[2, 1])));
    assert_eq!(try_join(&b(&[0, 0], &[1, 1]), &b(&[1, 0], &[2, 1])).unwrap(), Some(b(&[0, 0], &[2, 1])));
    assert_eq!(try_join(&b(&[0, 0], &[1, 1]), &b(&[1, 1], &[2, 2])).unwrap(), None);
    let sq = b(&[0, 0], &[1, 1]);
    assert_eq!(try_join(&sq, &sq).unwrap(), Some(sq));
    assert!(try_join(&b(&[0], &[1]), &b(&[0, 0], &[1, 0])).is_err());
}

#[test]
fn close_examples() {
    assert!(PastingShape::close(2, []).unwrap().is_empty());
    let s = shape(2, &[b(&[0, 1], &[1, 1]), b(&[1, 1], &[2, 1])]);
    assert_eq!(s.len(), 6);
    assert!(s.contains(&b(&[0, 1], &[2, 1])));
    assert!(PastingShape::close(2, [b(&[0], &[1])]).is_err());
}

/// The pinwheel figure: its drawn arrows and the six 2-boxes.
const PW_ARROWS: [([Coord; 2], [Coord; 2]); 16] = [
    ([0, 0], [2, 0]), ([2, 0], [3, 0]), ([0, 1], [1, 1]), ([1, 1], [2, 1]),
    ([1, 2], [2, 2]), ([2, 2], [3, 2]), ([0, 3], [1, 3]), ([1, 3], [3, 3]),
    ([0, 0], [0, 1]), ([0, 1], [0, 3]), ([1, 1], [1, 2]), ([1, 2], [1, 3]),
    ([2, 0], [2, 1]), ([2, 1], [2, 2]), ([3, 0], [3, 2]), ([3, 2], [3, 3]),
];

#[test]
fn pinwheel_closure_matches_drawing() {
    let pw = fixture("PW").unwrap();
    let arrows: BTreeSet<LatticeBox> = PW_ARROWS.iter().map(|(lo, hi)| b(lo, hi)).collect();
    let drawn: BTreeSet<LatticeBox> = pastebox::toolkit::render::irreducible_edges(&pw).into_iter().collect();
    assert_eq!(drawn, arrows);
    let squares: BTreeSet<LatticeBox> = [([0, 0], [2, 1]), ([2, 0], [3, 2]), ([1, 1], [2, 2]), ([0, 1], [1, 3]), ([1, 2], [3, 3]), ([0, 0], [3, 3])]
        .iter()
        .map(|(lo, hi)| b(lo, hi))
        .collect();
    assert_eq!(pw.boxes_of_dim(2).cloned().collect::<BTreeSet<_>>(), squares);
    let ends: BTreeSet<Vertex> = arrows.iter().flat_map(|e| [e.lo.clone(), e.hi.clone()]).collect();
    assert_eq!(pw.vertices().into_iter().collect::<BTreeSet<_>>(), ends);
}

#[test]
fn union_examples() {
    let pw = fixture("PW").unwrap();
    let pwo = fixture("PWo").unwrap();
    let full = shape(2, &[b(&[0, 0], &[3, 3])]);
    assert_eq!(pwo.union(&full).unwrap(), pw);
    assert_eq!(pw.union(&pw).unwrap(), pw);
    let u = shape(2, &[b(&[0, 0], &[1, 0])]).union(&shape(2, &[b(&[1, 0], &[2, 0])])).unwrap();
    assert!(u.contains(&b(&[0, 0], &[2, 0])));
    assert!(pw.union(&PastingShape::empty(3)).is_err());
}

#[test]
fn intersect_examples() {
    let pw = fixture("PW").unwrap();
    let pwo = fixture("PWo").unwrap();
    assert_eq!(pw.intersect(&pwo).unwrap(), pwo);
    let cells: BTreeMap<LatticeBox, PastingShape> =
        enumerate_vertebrae(&pw, 2).into_iter().map(|(v, w)| (w.window, v)).collect();
    let top = &cells[&b(&[0, 0], &[2, 1])];
    let right = &cells[&b(&[2, 0], &[3, 2])];
    let i = top.intersect(right).unwrap();
    assert_eq!(
        i.boxes().iter().cloned().collect::<Vec<_>>(),
        vec![b(&[2, 0], &[2, 0]), b(&[2, 0], &[2, 1]), b(&[2, 1], &[2, 1])]
    );
    assert!(pw.intersect(&PastingShape::empty(2)).unwrap().is_empty());
}

#[test]
fn truncate_examples() {
    let sq = standard_grid(&[1, 1]);
    assert_eq!(sq.truncate(1).unwrap().len(), 8);
    assert_eq!(sq.truncate(2).unwrap(), sq);
    assert!(sq.truncate(3).is_err());
    let j = fixture("EX_J").unwrap();
    let removed = j.difference(&j.truncate(2).unwrap());
    let n3: BTreeSet<LatticeBox> = [
        ([0, 0, 0], [1, 2, 2]),
        ([1, 0, 0], [2, 1, 1]),
        ([1, 0, 1], [2, 1, 2]),
        ([1, 0, 0], [2, 1, 2]),
        ([1, 1, 0], [2, 2, 2]),
        ([1, 0, 0], [2, 2, 2]),
        ([0, 0, 0], [2, 2, 2]),
    ]
    .iter()
    .map(|(lo, hi)| b(lo, hi))
    .collect();
    assert_eq!(removed, n3);
}

#[test]
fn slice_examples() {
    let g = standard_grid(&[2, 2]);
    let s = g.hyperplane_slice(&BTreeMap::from([(0, 0)]));
    assert_eq!(s.project_axes(&[1]).unwrap(), standard_grid(&[2]));
    assert!(s.boxes().iter().all(|x| x.lo[0] == 0 && x.hi[0] == 0));

    let i = fixture("EX_I").unwrap();
    let row = i.hyperplane_slice(&BTreeMap::from([(1, 1)]));
    let direct: BTreeSet<LatticeBox> = i.boxes().iter().filter(|x| x.lo[1] == 1 && x.hi[1] == 1).cloned().collect();
    assert_eq!(row.boxes(), &direct);
    let irreducible = pastebox::toolkit::render::irreducible_edges(&row);
    assert_eq!(irreducible.len(), 4);
    assert_eq!(row.boxes_of_dim(1).count(), 10);
    assert_eq!(row.vertices().len(), 5);
}

#[test]
fn truncation_is_union_of_hyperplane_slices() {
    for name in fixture_names() {
        let s = fixture(name).unwrap();
        for k in 0..=s.dim() {
            let slices: Vec<PastingShape> =
                hyperplanes(&s, k).iter().map(|h| s.hyperplane_slice(h)).collect();
            let u = PastingShape::union_all(s.dim(), slices.iter()).unwrap();
            assert_eq!(u, s.truncate(k).unwrap(), "{name} k={k}");
        }
    }
}

#[test]
fn embed_examples() {
    let interval = standard_grid(&[1]);
    let e = interval.embed_axes(&[1], 3).unwrap();
    assert!(e.contains(&b(&[0, 0, 0], &[0, 1, 0])));
    assert_eq!(e.len(), 3);
    assert!(interval.embed_axes(&[2, 1], 3).is_err());
    for name in fixture_names() {
        let s = fixture(name).unwrap();
        let axes: Vec<usize> = (0..s.dim()).map(|a| a + 1).collect();
        let up = s.embed_axes(&axes, s.dim() + 1).unwrap();
        assert_eq!(up.project_axes(&axes).unwrap(), s, "{name}");
        assert_eq!(up.hyperplane_slice(&BTreeMap::from([(0, 0)])), up);
    }
}

#[test]
fn embedding_commutes_with_nerve() {
    let i = fixture("EX_I").unwrap();
    let up = i.embed_axes(&[0, 2], 3).unwrap();
    for level in [[1, 0, 1], [2, 0, 1], [0, 0, 2]] {
        let high = nerve_level(&up, &level);
        let low = nerve_level(&i, &[level[0], level[2]]);
        let dropped: BTreeSet<Simplex> =
            high.simplices.iter().map(|s| Simplex::new(vec![s.maps[0].clone(), s.maps[2].clone()])).collect();
        assert_eq!(dropped, low.simplices);
        assert_eq!(high.len(), low.len());
    }
}

#[test]
fn shape_map_examples() {
    for name in ["PW", "EX_I", "TRIANGLE"] {
        let s = fixture(name).unwrap();
        assert!(ShapeMap::identity(&s).validate().unwrap().valid);
    }
    // □[1] into □[1,1]: collapse onto the diagonal changes a degenerate coordinate
    let src = standard_grid(&[1, 0]);
    let tgt = standard_grid(&[1, 1]);
    let bad = ShapeMap::new(
        src.clone(),
        tgt.clone(),
        BTreeMap::from([(Vertex::new(&[0, 0]), Vertex::new(&[0, 0])), (Vertex::new(&[1, 0]), Vertex::new(&[1, 1]))]),
    );
    let report = bad.validate().unwrap();
    assert!(!report.valid && report.violation.is_some());
    let partial = ShapeMap::new(src, tgt, BTreeMap::from([(Vertex::new(&[0, 0]), Vertex::new(&[0, 0]))]));
    assert!(partial.validate().is_err());
}

#[test]
fn simplices_induce_valid_maps() {
    let i = fixture("EX_I").unwrap();
    for s in nerve_level(&i, &[2, 1]).simplices {
        let m = GridMap { lines: s.maps.clone() }.to_shape_map(&i);
        assert!(m.validate().unwrap().valid, "{s:?}");
    }
}

#[test]
fn valid_maps_send_boxes_to_boxes() {
    let i = fixture("EX_I").unwrap();
    for s in nerve_level(&i, &[1, 1]).simplices.iter().filter(|s| s.is_nondegenerate()) {
        let m = GridMap { lines: s.maps.clone() }.to_shape_map(&i);
        let images = m.image_boxes().unwrap();
        assert!(images.iter().all(|x| i.contains(x)));
    }
}

#[test]
fn empty_shape_verdicts() {
    let e = PastingShape::empty(2);
    assert!(detect_grid(&e).is_none());
    assert!(!pastebox::structure::admit::find_decomposition(&e).is_yes());
    assert!(matches!(pastebox::structure::is_locally_composable(&e), Err(ShapeError::EmptyShape)));
}
