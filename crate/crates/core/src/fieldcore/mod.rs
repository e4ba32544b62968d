//! Grids, field containers, finite differences and the jump-set representation.

mod diff;
mod field;
mod grid;
pub mod io;
mod jumps;
mod measure;

pub use diff::{gradient_director, gradient_qtensor, gradient_scalar, gradient_with, Stencil, StencilMap};
pub use field::{DirectorField, QTensorField, ScalarField, ZERO_TOL};
pub use grid::{facet_area, Axis, Grid};
pub use jumps::{detect_jumps, Facet, JumpMask, JumpSet, DEFAULT_ANGLE_THRESHOLD};
pub use measure::{measure_by_name, FacetCount, JumpMeasure, NormalWeighted, MEASURE_NAMES};
