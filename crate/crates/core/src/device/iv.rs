use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const HEADER: [&str; 2] = ["V_volts", "I_mA"];

/// An ordered current-voltage sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IvCurve {
    /// `(V, I)` pairs in volts and milliamps.
    pub points: Vec<(f64, f64)>,
}

impl IvCurve {
    /// Builds a curve whose voltages are strictly monotone.
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        let curve = IvCurve { points };
        curve.validate()?;
        Ok(curve)
    }

    /// Samples `law` at each voltage.
    pub fn sample<F: FnMut(f64) -> Result<f64>>(voltages: &[f64], mut law: F) -> Result<Self> {
        let points = voltages
            .iter()
            .map(|&v| law(v).map(|i| (v, i)))
            .collect::<Result<Vec<_>>>()?;
        IvCurve::new(points)
    }

    pub fn validate(&self) -> Result<()> {
        let rising = self.points.windows(2).all(|w| w[1].0 > w[0].0);
        let falling = self.points.windows(2).all(|w| w[1].0 < w[0].0);
        if !(rising || falling) {
            return Err(Error::invalid("iv_curve", "voltages must be strictly monotone"));
        }
        if self.points.iter().any(|(v, i)| !v.is_finite() || !i.is_finite()) {
            return Err(Error::invalid("iv_curve", "contains non-finite samples"));
        }
        Ok(())
    }

    pub fn voltages(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn currents(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let rows = self.points.iter().map(|&(v, i)| vec![v, i]);
        crate::io::write_csv(path, &HEADER, rows)
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let (header, rows) = crate::io::read_csv(path)?;
        if header != HEADER {
            return Err(Error::invalid(
                path.display().to_string(),
                format!("expected header {}", HEADER.join(",")),
            ));
        }
        let points = rows
            .into_iter()
            .map(|r| {
                if r.len() == 2 {
                    Ok((r[0], r[1]))
                } else {
                    Err(Error::invalid(path.display().to_string(), "rows must have two columns"))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        IvCurve::new(points)
    }
}
