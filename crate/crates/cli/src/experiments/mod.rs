//! One [`Experiment`] per subcommand.

mod cholesteric;
mod cuboid;
mod doubletwist;
mod hedgehog;
mod lift;
mod mm;
mod relax;
pub mod verify;

use lcbv_core::fieldcore::{measure_by_name, JumpMeasure, MEASURE_NAMES};

use crate::config::{Key, RunConfig};
use crate::error::CliError;
use crate::output::Output;

pub(crate) const MEASURE_KEY: Key = Key::new("jump-measure", Some("normal-weighted"), "jump area estimator: normal-weighted or facet-count");

pub(crate) fn jump_measure(cfg: &RunConfig) -> Result<Box<dyn JumpMeasure>, CliError> {
    let name = cfg.str(MEASURE_KEY.name)?;
    measure_by_name(name).ok_or_else(|| CliError::Usage(format!("unknown jump measure `{name}`; known: {}", MEASURE_NAMES.join(", "))))
}

pub trait Experiment: Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn keys(&self) -> &'static [Key];
    fn run(&self, cfg: &RunConfig) -> Result<Output, CliError>;

    /// A check the run reports as failed (exit 1) after writing its outputs.
    fn failure(&self, _out: &Output) -> Option<String> {
        None
    }
}

pub fn registry() -> Vec<Box<dyn Experiment>> {
    vec![
        Box::new(verify::Verify),
        Box::new(lift::Lift),
        Box::new(hedgehog::Hedgehog),
        Box::new(cuboid::Cuboid),
        Box::new(cholesteric::Cholesteric1d),
        Box::new(doubletwist::DoubleTwist),
        Box::new(mm::Mm1d),
        Box::new(relax::Relax),
    ]
}

pub fn by_name(name: &str) -> Option<Box<dyn Experiment>> {
    registry().into_iter().find(|e| e.name() == name)
}
