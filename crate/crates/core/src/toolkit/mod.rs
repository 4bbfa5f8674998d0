//! Documents, fixtures, the random generator, SVG output and the suite.

pub mod doc;
pub mod fixtures;
pub mod random;
pub mod render;

pub use doc::{parse_shape, read_shape, serialize_shape, DocMode, ShapeDocument};
pub use fixtures::fixture;
pub use random::random_composable;
pub use render::render_svg;
pub mod suite;
