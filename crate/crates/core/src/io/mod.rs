//! File formats: CSV tables, JSON configs and run manifests, SVG charts.

mod config;
mod csv;
mod manifest;
pub mod plot;

pub use self::config::{load_config, parse_config, save_config, to_canonical, Validate};
pub use self::csv::{read_csv, write_csv};
pub use self::manifest::{RunManifest, MANIFEST_FILE};

/// Environment variable naming the default output root.
pub const OUT_ENV: &str = "IONIC_NEURON_OUT";
