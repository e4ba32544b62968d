//! Liquid crystals in bounded variation: energy densities, Q-tensor algebra,
//! line-field combing, explicit minimizers and a discrete SBV relaxer.
//!
//! Everything lives on a cell-centered collocated [`Grid`](fieldcore::Grid).
//! Vectors are `[f64; 3]`; gradients are `[[f64; 3]; 3]` with `g[i][a] = ∂_a v_i`.

pub mod analytic;
pub mod energy;
pub mod error;
pub mod fieldcore;
pub mod lifting;
pub mod linalg;
pub mod qtensor;
pub mod solver;

pub use error::{LcError, Result};
