//! Bundled configurations.

use super::{CliError, RunConfig};

pub const PRESETS: [(&str, &str); 6] = [
    ("example-sl-cos", include_str!("../../presets/example-sl-cos.toml")),
    ("example-sl-airy", include_str!("../../presets/example-sl-airy.toml")),
    ("example-graph-grid", include_str!("../../presets/example-graph-grid.toml")),
    ("example-graph-triangles", include_str!("../../presets/example-graph-triangles.toml")),
    ("example-system", include_str!("../../presets/example-system.toml")),
    ("poincare-staircase", include_str!("../../presets/poincare-staircase.toml")),
];

pub fn preset(name: &str) -> Result<RunConfig, CliError> {
    let text = PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| CliError::UnknownPreset(name.into()))?.1;
    RunConfig::parse(text)
}
