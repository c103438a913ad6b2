use super::table::SweepRecord;
use crate::error::{domain, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Ordinary least squares of log y on log x.
pub fn fit_log_log(x: &[f64], y: &[f64]) -> Result<FitResult> {
    if x.len() != y.len() {
        return domain(format!("x and y lengths differ: {} vs {}", x.len(), y.len()));
    }
    let bad: Vec<usize> = (0..x.len()).filter(|&i| !(x[i] > 0.0 && y[i] > 0.0 && x[i].is_finite() && y[i].is_finite())).collect();
    if !bad.is_empty() {
        return domain(format!("nonpositive or non-finite values at rows {bad:?}"));
    }
    if x.len() < 3 {
        return domain(format!("need at least 3 points, got {}", x.len()));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = ly.iter().map(|b| (b - my) * (b - my)).sum();
    if sxx == 0.0 {
        return domain("all x values are equal");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    Ok(FitResult { slope, intercept, r_squared, n_points: x.len() })
}

/// [`fit_log_log`] over two columns of a table. Offending rows are
/// reported by their index in `rows`.
pub fn fit_exponent(rows: &[SweepRecord], x_column: &str, y_column: &str) -> Result<FitResult> {
    let mut x = Vec::with_capacity(rows.len());
    let mut y = Vec::with_capacity(rows.len());
    for r in rows {
        x.push(r.column(x_column)?);
        y.push(r.column(y_column)?);
    }
    fit_log_log(&x, &y)
}
