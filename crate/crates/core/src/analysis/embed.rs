use crate::error::{Error, Result};
use crate::numerics::fit_line;

/// Pairs two equally long channels into `(x, y)` points.
pub fn phase_portrait(x: &[f64], y: &[f64]) -> Result<Vec<[f64; 2]>> {
    if x.len() != y.len() {
        return Err(Error::invalid("channels", format!("lengths differ: {} vs {}", x.len(), y.len())));
    }
    Ok(x.iter().zip(y).map(|(a, b)| [*a, *b]).collect())
}

/// Takens delay embedding: row `k` is `(s[k], s[k + lag], …)`.
pub fn delay_embed(series: &[f64], dim: usize, lag: usize) -> Result<Vec<Vec<f64>>> {
    if !(2..=3).contains(&dim) {
        return Err(Error::invalid("dim", format!("must be 2 or 3, got {dim}")));
    }
    if lag == 0 {
        return Err(Error::invalid("lag", "must be at least one sample"));
    }
    let span = (dim - 1) * lag;
    if series.len() <= span {
        return Err(Error::Analysis(format!(
            "series of {} samples is too short for dim {dim}, lag {lag}",
            series.len()
        )));
    }
    Ok((0..series.len() - span)
        .map(|k| (0..dim).map(|d| series[k + d * lag]).collect())
        .collect())
}

/// Grassberger–Procaccia settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrDimConfig {
    /// Points are thinned by a uniform stride down to at most this many.
    pub max_points: usize,
    /// Pairs closer than this many rows (after thinning) are skipped.
    pub theiler: usize,
    /// Fraction of pairs below the smallest and largest fitted radius.
    pub quantiles: (f64, f64),
    pub radii: usize,
}

impl Default for CorrDimConfig {
    fn default() -> Self {
        CorrDimConfig {
            max_points: 1500,
            theiler: 10,
            quantiles: (0.01, 0.1),
            radii: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrDim {
    pub dimension: f64,
    pub r_squared: f64,
    /// `(ln r, ln C(r))` pairs used in the fit.
    pub curve: Vec<(f64, f64)>,
}

/// Slope of `ln C(r)` against `ln r` over the small-radius end of the
/// correlation sum.
pub fn correlation_dimension(points: &[Vec<f64>], cfg: &CorrDimConfig) -> Result<CorrDim> {
    let stride = points.len().div_ceil(cfg.max_points.max(2));
    let pts: Vec<&Vec<f64>> = points.iter().step_by(stride.max(1)).collect();
    let mut dists = Vec::new();
    for i in 0..pts.len() {
        for j in i + cfg.theiler + 1..pts.len() {
            let d2: f64 = pts[i].iter().zip(pts[j]).map(|(a, b)| (a - b) * (a - b)).sum();
            dists.push(d2.sqrt());
        }
    }
    if dists.len() < 100 {
        return Err(Error::Analysis("too few point pairs for a correlation sum".into()));
    }
    dists.sort_by(f64::total_cmp);
    let at = |q: f64| dists[((q * dists.len() as f64) as usize).min(dists.len() - 1)];
    let (r_lo, r_hi) = (at(cfg.quantiles.0), at(cfg.quantiles.1));
    if !(r_lo > 0.0 && r_hi > r_lo) {
        return Err(Error::Analysis("degenerate distance distribution (repeated points)".into()));
    }
    let n = dists.len() as f64;
    let curve: Vec<(f64, f64)> = (0..cfg.radii)
        .map(|k| {
            let r = r_lo * (r_hi / r_lo).powf(k as f64 / (cfg.radii - 1) as f64);
            let c = dists.partition_point(|&d| d < r) as f64 / n;
            (r.ln(), c.ln())
        })
        .filter(|(_, lc)| lc.is_finite())
        .collect();
    let (x, y): (Vec<f64>, Vec<f64>) = curve.iter().copied().unzip();
    let fit = fit_line(&x, &y);
    Ok(CorrDim {
        dimension: fit.slope,
        r_squared: fit.r_squared,
        curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn row_count_and_copies() {
        let s: Vec<f64> = (0..20).map(|k| k as f64).collect();
        let e = delay_embed(&s, 3, 4).unwrap();
        assert_eq!(e.len(), 20 - 8);
        assert_eq!(e[5], vec![5.0, 9.0, 13.0]);
    }

    #[test]
    fn too_short_is_an_error() {
        assert!(delay_embed(&[1.0, 2.0], 2, 2).is_err());
        assert!(delay_embed(&[1.0; 10], 4, 1).is_err());
    }

    #[test]
    fn circle_has_dimension_one() {
        let s: Vec<f64> = (0..20000).map(|k| (TAU * k as f64 / 397.37).sin()).collect();
        let e = delay_embed(&s, 2, 99).unwrap();
        let d = correlation_dimension(&e, &CorrDimConfig::default()).unwrap();
        assert!((d.dimension - 1.0).abs() < 0.1, "{}", d.dimension);
    }

    #[test]
    fn torus_has_dimension_two() {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let pts: Vec<Vec<f64>> = (0..20000)
            .map(|k| {
                let (a, b) = (TAU * k as f64 / 97.0, TAU * g * k as f64 / 13.0);
                vec![a.cos(), a.sin(), b.cos(), b.sin()]
            })
            .collect();
        let d = correlation_dimension(&pts, &CorrDimConfig::default()).unwrap();
        assert!((d.dimension - 2.0).abs() < 0.25, "{}", d.dimension);
    }
}
