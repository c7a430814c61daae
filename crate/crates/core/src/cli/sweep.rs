use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::jobs::{execute, Job};
use crate::error::{Error, Result};
use crate::io::{RunManifest, Validate};

/// A one-parameter scan over a base job.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: Job,
    /// JSON pointers into `base` that all receive the swept value, e.g.
    /// `/network/edges/0/gain`.
    pub targets: Vec<String>,
    pub values: Vec<serde_json::Value>,
    /// Worker threads; 0 uses one per core.
    #[serde(default)]
    pub workers: usize,
}

impl Validate for SweepSpec {
    fn validate(&self) -> Result<()> {
        if self.targets.is_empty() {
            return Err(Error::invalid("targets", "at least one JSON pointer is required"));
        }
        if self.values.is_empty() {
            return Err(Error::invalid("values", "at least one value is required"));
        }
        self.base.validate()?;
        for k in 0..self.values.len() {
            self.point(k)?.validate()?;
        }
        Ok(())
    }
}

impl SweepSpec {
    /// The base job with every target set to `values[k]`.
    pub fn point(&self, k: usize) -> Result<Job> {
        let mut v = serde_json::to_value(&self.base).expect("jobs serialise");
        for target in &self.targets {
            let slot = v
                .pointer_mut(target)
                .ok_or_else(|| Error::invalid("targets", format!("`{target}` does not exist in the base job")))?;
            *slot = self.values[k].clone();
        }
        serde_json::from_value(v).map_err(|e| Error::invalid(format!("values[{k}]"), e.to_string()))
    }

    pub fn point_dir(out: &Path, k: usize) -> PathBuf {
        out.join(format!("point_{k:03}"))
    }
}

/// Outcome of one sweep point.
#[derive(Debug, Clone, Serialize)]
pub struct PointResult {
    pub index: usize,
    pub value: serde_json::Value,
    pub dir: String,
    pub summary: std::result::Result<String, String>,
}

/// Runs every point into `out/point_NNN/`, each with its own manifest.
pub fn run_sweep(spec: &SweepSpec, out: &Path, argv: &[String], seed: u64, plots: bool) -> Result<Vec<PointResult>> {
    spec.validate()?;
    let jobs: Vec<Job> = (0..spec.values.len()).map(|k| spec.point(k)).collect::<Result<_>>()?;
    let workers = if spec.workers == 0 { rayon::current_num_threads() } else { spec.workers };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Analysis(format!("cannot start sweep workers: {e}")))?;
    pool.install(|| {
        jobs.par_iter()
            .enumerate()
            .map(|(k, job)| {
                let dir = SweepSpec::point_dir(out, k);
                let manifest = RunManifest::new(
                    argv.to_vec(),
                    "sweep point",
                    None,
                    serde_json::to_value(job).expect("jobs serialise"),
                    seed,
                    &dir,
                );
                manifest.write(&dir)?;
                let summary = execute(job, &dir, plots).map_err(|e| e.to_string());
                Ok(PointResult {
                    index: k,
                    value: spec.values[k].clone(),
                    dir: dir.display().to_string(),
                    summary,
                })
            })
            .collect()
    })
}
