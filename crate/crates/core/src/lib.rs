//! Finite pasting shapes in `ℕ^d`: the closure engine and shape algebra,
//! grids, structural deciders with checkable certificates, nerve levels,
//! and the plumbing around them (documents, fixtures, generators, SVG).

pub mod error;
pub mod grid;
pub mod map;
pub mod nerve;
pub mod shape;
pub mod structure;
pub mod toolkit;

pub use error::{Result, ShapeError};
pub use grid::{detect_grid, standard_grid, BoxdotSpec, GridWitness};
pub use map::{GridMap, ShapeMap};
pub use nerve::{nerve_level, NerveLevel, Simplex};
pub use shape::{try_join, Coord, LatticeBox, PastingShape, Vertex};
