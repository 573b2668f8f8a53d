//! Configuration-driven runs of the full certification pipeline.

mod bundled;
pub mod config;
pub mod run;
pub mod svg;

use std::path::{Path, PathBuf};

pub use bundled::{bundled, bundled_source, list_scenarios};
pub use config::{ConfigError, Scenario, SCHEMA_VERSION};
pub use run::{run_scenario, write_artifacts, RunOutput, RunReport};

/// Loads `arg` as a config path, or as a bundled scenario name when no such
/// file exists. Returns the scenario and the directory relative paths resolve
/// against.
pub fn resolve(arg: &str) -> Result<(Scenario, PathBuf), ConfigError> {
    let path = Path::new(arg);
    if path.exists() || bundled(arg).is_none() {
        let scenario = Scenario::load(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        return Ok((scenario, base));
    }
    Ok((bundled(arg).expect("checked above"), PathBuf::from(".")))
}
