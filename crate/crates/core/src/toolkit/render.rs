//! SVG drawings of 2-dimensional shapes.
//!
//! Vertex `(x, y)` sits at pixel `(80x, 80y)` inside a margin group. A 1-box
//! is drawn when it is not the join of two edges of the shape; every
//! non-degenerate 2-box gets a translucent rectangle. A 1-dimensional shape
//! is drawn on the first axis, a 3-dimensional one as a column of sheets,
//! one per value of the third coordinate.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Result, ShapeError};
use crate::shape::{Coord, LatticeBox, PastingShape};

pub const SCALE: u32 = 80;
const MARGIN: u32 = 40;

/// Edges that are not a join of two edges of `shape`.
pub fn irreducible_edges(shape: &PastingShape) -> Vec<LatticeBox> {
    shape
        .boxes_of_dim(1)
        .filter(|e| {
            let a = e.strict_dirs().next().expect("an edge has a direction");
            !(e.lo[a] + 1..e.hi[a]).any(|c| {
                let mut mid = e.lo.clone();
                mid.0[a] = c;
                shape.contains(&LatticeBox::from_vertices(e.lo.clone(), mid.clone()))
                    && shape.contains(&LatticeBox::from_vertices(mid, e.hi.clone()))
            })
        })
        .cloned()
        .collect()
}

fn sheet(shape: &PastingShape, out: &mut String) {
    let at = |v: &crate::shape::Vertex| (v[0] * SCALE, if v.dim() > 1 { v[1] * SCALE } else { 0 });
    for b in shape.boxes_of_dim(2) {
        let (x0, y0) = at(&b.lo);
        let (x1, y1) = at(&b.hi);
        let _ = writeln!(
            out,
            "<rect class=\"box\" x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{}\"/>",
            x1 - x0,
            y1 - y0
        );
    }
    for e in irreducible_edges(shape) {
        let (x0, y0) = at(&e.lo);
        let (x1, y1) = at(&e.hi);
        let _ = writeln!(out, "<line class=\"edge\" x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y1}\"/>");
    }
    for v in shape.vertices() {
        let (x, y) = at(&v);
        let _ = writeln!(out, "<circle class=\"vertex\" cx=\"{x}\" cy=\"{y}\" r=\"3\"/>");
        let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">{v}</text>", x + 5, y + 14);
    }
}

fn extent(shape: &PastingShape) -> (Coord, Coord) {
    let bb = shape.bounding_box();
    let get = |a: usize| bb.as_ref().filter(|_| a < shape.dim()).map_or(0, |b| b.hi[a]);
    (get(0), get(1))
}

pub fn render_svg(shape: &PastingShape) -> Result<String> {
    let d = shape.dim();
    if d > 3 {
        return Err(ShapeError::UnsupportedDimension(d));
    }
    let sheets: Vec<(Option<Coord>, PastingShape)> = if d == 3 {
        let mut by_z: BTreeMap<Coord, PastingShape> = BTreeMap::new();
        for z in shape.coordinate_values(2) {
            let slice = shape.hyperplane_slice(&BTreeMap::from([(2, z)]));
            by_z.insert(z, slice.project_axes(&[0, 1])?);
        }
        by_z.into_iter().map(|(z, s)| (Some(z), s)).collect()
    } else {
        vec![(None, shape.clone())]
    };
    let (w, h) = extent(shape);
    let sheet_h = h * SCALE + 2 * MARGIN;
    let width = w * SCALE + 2 * MARGIN + 40;
    let height = sheet_h * sheets.len().max(1) as u32;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    out.push_str(concat!(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"14\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">",
        "<path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
        "<style>.box{fill:#4a90d9;fill-opacity:0.25;stroke:none}",
        ".edge{stroke:#222;stroke-width:1.5;marker-end:url(#arrow)}",
        ".vertex{fill:#222}text{font:10px monospace}</style>\n",
    ));
    for (i, (z, s)) in sheets.iter().enumerate() {
        let _ = writeln!(out, "<g transform=\"translate({MARGIN},{})\">", MARGIN + i as u32 * sheet_h);
        if let Some(z) = z {
            let _ = writeln!(out, "<text class=\"sheet\" x=\"-30\" y=\"-20\">z={z}</text>");
        }
        sheet(s, &mut out);
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::standard_grid;

    fn count(svg: &str, tag: &str) -> usize {
        svg.matches(&format!("<{tag} ")).count()
    }

    #[test]
    fn unit_square() {
        let svg = render_svg(&standard_grid(&[1, 1])).unwrap();
        assert_eq!(count(&svg, "line"), 4);
        assert_eq!(count(&svg, "rect"), 1);
        assert_eq!(count(&svg, "circle"), 4);
        assert!(svg.contains(">(1,1)</text>"));
    }

    #[test]
    fn joins_are_not_drawn() {
        let svg = render_svg(&standard_grid(&[2, 1])).unwrap();
        assert_eq!(count(&svg, "line"), 7);
        assert_eq!(count(&svg, "rect"), 3);
    }

    #[test]
    fn dimension_limits() {
        assert!(matches!(render_svg(&standard_grid(&[1, 1, 1, 1])), Err(ShapeError::UnsupportedDimension(4))));
        let svg = render_svg(&standard_grid(&[1, 1, 1])).unwrap();
        assert_eq!(svg.matches("z=").count(), 2);
        assert!(render_svg(&standard_grid(&[2])).is_ok());
    }
}
