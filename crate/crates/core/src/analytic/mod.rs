//! Explicit and semi-analytic minimizers: isotropic-core hedgehog, cuboid
//! branches, the cholesteric 1D profile, double-twist lattices and the
//! one-dimensional Modica–Mortola problem.

mod cholesteric;
mod cuboid;
mod doubletwist;
mod hedgehog;
mod mm;
pub mod quad;

pub use cholesteric::{cholesteric_g, cholesteric_profile, profile_energy_1d, profile_to_field, CholestericProfile};
pub use cuboid::{cuboid_critical_k, cuboid_grid, cuboid_minimizer, jump_field, smooth_field, Branch, CuboidSolution};
pub use doubletwist::{
    count_bounds, cylinder_elastic_energy, cylinder_energy_per_length, double_twist_field, double_twist_lattice,
    lattice_energy, DoubleTwistLattice, LatticeEnergy,
};
pub use hedgehog::{curvature_jump_residual, curvature_jump_residual_at, hedgehog, hedgehog_field, sphere_area, HedgehogSolution};
pub use mm::{limit_constant, modica_mortola_1d, well_by_name, DoubleWell, LandauWell, MMResult, QuarticWell, ZeroWell, WELL_NAMES};
