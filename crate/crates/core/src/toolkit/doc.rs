//! Line-based JSON shape documents.
//!
//! The first line is a header object, every following non-blank line is a
//! box `[[lo…],[hi…]]`:
//!
//! ```text
//! {"schema":1,"dim":2,"name":"PW","mode":"generators"}
//! [[0,0],[2,1]]
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShapeError};
use crate::shape::{Coord, LatticeBox, PastingShape};
use crate::structure::entire::is_window;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocMode {
    /// Boxes are generators; the shape is their closure.
    Generators,
    /// Boxes are the full, already closed, box set.
    Explicit,
    /// Generators, then every 2-box with all four edges present is added.
    Fill2d,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Header {
    schema: u32,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    mode: DocMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeDocument {
    pub dim: usize,
    pub name: Option<String>,
    pub mode: DocMode,
    pub boxes: Vec<LatticeBox>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> ShapeError {
    ShapeError::Parse { line, msg: msg.into() }
}

impl ShapeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hline, htext) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let header: Header = serde_json::from_str(htext).map_err(|e| parse_err(hline + 1, e.to_string()))?;
        if header.schema != SCHEMA_VERSION {
            return Err(parse_err(hline + 1, format!("unsupported schema {}", header.schema)));
        }
        if header.mode == DocMode::Fill2d && header.dim != 2 {
            return Err(parse_err(hline + 1, "fill2d mode requires dim 2"));
        }
        let mut boxes = Vec::new();
        for (i, l) in lines {
            let (lo, hi): (Vec<Coord>, Vec<Coord>) =
                serde_json::from_str(l).map_err(|e| parse_err(i + 1, e.to_string()))?;
            if lo.len() != header.dim || hi.len() != header.dim {
                return Err(parse_err(i + 1, format!("expected {} coordinates per corner", header.dim)));
            }
            boxes.push(LatticeBox::new(&lo, &hi).map_err(|e| parse_err(i + 1, e.to_string()))?);
        }
        Ok(ShapeDocument { dim: header.dim, name: header.name, mode: header.mode, boxes })
    }

    pub fn to_shape(&self) -> Result<PastingShape> {
        match self.mode {
            DocMode::Explicit => PastingShape::from_explicit(self.dim, self.boxes.iter().cloned()),
            DocMode::Generators => PastingShape::close(self.dim, self.boxes.iter().cloned()),
            DocMode::Fill2d => Ok(fill2d(&PastingShape::close(self.dim, self.boxes.iter().cloned())?)),
        }
    }

    pub fn render(&self) -> String {
        let header = Header { schema: SCHEMA_VERSION, dim: self.dim, name: self.name.clone(), mode: self.mode };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for b in &self.boxes {
            out.push_str(&serde_json::to_string(&(b.lo.coords(), b.hi.coords())).expect("box serializes"));
            out.push('\n');
        }
        out
    }
}

/// Adds every non-degenerate 2-box whose edges are present, to a fixpoint.
pub fn fill2d(shape: &PastingShape) -> PastingShape {
    let mut s = shape.clone();
    loop {
        let verts = s.vertices();
        let mut new = Vec::new();
        for lo in &verts {
            for hi in verts.iter().filter(|v| *v > lo) {
                if !lo.le(hi) || (0..s.dim()).filter(|&a| lo[a] < hi[a]).count() != 2 {
                    continue;
                }
                let b = LatticeBox::from_vertices(lo.clone(), hi.clone());
                if !s.contains(&b) && is_window(&s, &b) {
                    new.push(b);
                }
            }
        }
        if new.is_empty() {
            return s;
        }
        s = PastingShape::close(s.dim(), s.boxes().iter().cloned().chain(new)).expect("same dimension");
    }
}

pub fn parse_shape(text: &str) -> Result<PastingShape> {
    ShapeDocument::parse(text)?.to_shape()
}

/// Explicit-mode document listing the canonical box set.
pub fn serialize_shape(shape: &PastingShape, name: Option<&str>) -> String {
    ShapeDocument {
        dim: shape.dim(),
        name: name.map(str::to_owned),
        mode: DocMode::Explicit,
        boxes: shape.boxes().iter().cloned().collect(),
    }
    .render()
}

pub fn read_shape(path: &std::path::Path) -> Result<PastingShape> {
    let text = std::fs::read_to_string(path).map_err(|e| ShapeError::Io(format!("{}: {e}", path.display())))?;
    parse_shape(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_missing_face_is_named() {
        let text = "{\"schema\":1,\"dim\":1,\"mode\":\"explicit\"}\n[[0],[1]]\n[[0],[0]]\n";
        let err = parse_shape(text).unwrap_err();
        assert!(err.to_string().contains("face (1,1)") || err.to_string().contains("((1),(1))"), "{err}");
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(parse_shape(""), Err(ShapeError::Parse { .. })));
        let bad = "{\"schema\":1,\"dim\":2,\"mode\":\"generators\"}\n[[0,0],[1]]\n";
        assert!(matches!(parse_shape(bad), Err(ShapeError::Parse { line: 2, .. })));
        let fill3 = "{\"schema\":1,\"dim\":3,\"mode\":\"fill2d\"}\n";
        assert!(parse_shape(fill3).is_err());
    }

    #[test]
    fn round_trip() {
        let s = PastingShape::close(2, [LatticeBox::of(&[0, 0], &[1, 2])]).unwrap();
        assert_eq!(parse_shape(&serialize_shape(&s, Some("x"))).unwrap(), s);
    }
}
