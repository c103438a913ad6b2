//! Bound verification over sweep tables. Every report is a function of the
//! table alone, so a saved CSV re-verifies to the same report.

use super::fit::{fit_log_log, FitResult};
use super::spec::{Quantity, SweepSpec};
use super::sweep::run_sweep;
use super::table::{read_csv_file, SweepRecord};
use crate::characters::{character, parse_label};
use crate::complex::{c, real_pow, ComplexValue, I};
use crate::dirichlet_l::product_bound;
use crate::double_l::{theorem1_model, theorem2_model, BoundModel, DEFAULT_EPSILON};
use crate::error::{Error, Result};
use crate::special_fn::oscillatory::{hl5_shape, hl_main_terms, hl_shape, HlRegime};
use crate::special_fn::pochhammer;
use crate::special_fn::quadrature::gauss_legendre;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorem1,
    Theorem2,
    Lemma21,
    Lemma22,
    Hl,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Lemma21 => "lemma21",
            Suite::Lemma22 => "lemma22",
            Suite::Hl => "hl",
        }
    }

    pub fn quantity(self) -> Quantity {
        match self {
            Suite::Theorem1 => Quantity::Value,
            Suite::Theorem2 => Quantity::MaintermResidual,
            Suite::Lemma21 => Quantity::HyperbolaSum,
            Suite::Lemma22 => Quantity::ProductApproxResidual,
            Suite::Hl => Quantity::OscillatoryRegimes,
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "theorem1" => Ok(Suite::Theorem1),
            "theorem2" => Ok(Suite::Theorem2),
            "lemma21" => Ok(Suite::Lemma21),
            "lemma22" => Ok(Suite::Lemma22),
            "hl" => Ok(Suite::Hl),
            other => Err(Error::Config(format!("unknown suite {other:?}; expected theorem1, theorem2, lemma21, lemma22 or hl"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    pub epsilon: f64,
    /// Allowed excess of a fitted slope over the suite's exponent;
    /// defaults to 0.15 (theorem1) and 0.25 (theorem2).
    pub slope_slack: Option<f64>,
    /// Largest accepted ratio; defaults to 1 (lemma21), 5 (lemma22) and
    /// 10 (hl). Theorem suites only report it.
    pub max_constant: Option<f64>,
    pub a0: f64,
    pub a1: f64,
    pub spot_checks: usize,
    pub spot_tolerance: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            epsilon: DEFAULT_EPSILON,
            slope_slack: None,
            max_constant: None,
            a0: 0.5,
            a1: 2.0,
            spot_checks: 8,
            spot_tolerance: 1e-7,
        }
    }
}

impl Thresholds {
    fn slope_slack(&self, suite: Suite) -> f64 {
        self.slope_slack.unwrap_or(if suite == Suite::Theorem1 { 0.15 } else { 0.25 })
    }

    fn max_constant(&self, suite: Suite) -> Option<f64> {
        self.max_constant.or(match suite {
            Suite::Lemma21 => Some(1.0),
            Suite::Lemma22 => Some(5.0),
            Suite::Hl => Some(10.0),
            _ => None,
        })
    }
}

/// A sweep config plus the verification settings. With `input` set the
/// table is read from that CSV instead of being recomputed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    #[serde(flatten)]
    pub sweep: SweepSpec,
    #[serde(default)]
    pub input: Option<PathBuf>,
    #[serde(default)]
    pub thresholds: Thresholds,
}

impl VerifyConfig {
    pub fn from_json(text: &str) -> Result<VerifyConfig> {
        let cfg: VerifyConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.sweep.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundPoint {
    pub row: usize,
    /// Which estimate: the suite name, the product case, or HL1–HL5.
    pub check: String,
    pub measured: f64,
    /// The bound with constant 1.
    pub predicted: f64,
    pub ratio: f64,
    pub main_part: f64,
    pub extra_part: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceFit {
    pub slice: String,
    pub fit: FitResult,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpotCheck {
    pub row: usize,
    #[serde(with = "crate::complex::serde_re_im")]
    pub table_value: ComplexValue,
    #[serde(with = "crate::complex::serde_re_im")]
    pub quadrature: ComplexValue,
    pub abs_diff: f64,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    BoundViolation,
    ExecutionError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::BoundViolation => 2,
            Status::ExecutionError => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub n_rows: usize,
    pub error_rows: Vec<usize>,
    pub points: Vec<BoundPoint>,
    /// Largest measured/predicted over all points: the measured constant.
    pub max_ratio: f64,
    /// Points with ratio > 1.
    pub exceed_unit_constant: usize,
    pub max_constant: Option<f64>,
    /// log|value| against log(q|t₂|) over every row; decides the theorem
    /// suites.
    pub pooled_fit: Option<SliceFit>,
    /// The same fit per (q, χ₁, χ₂, s₁, σ₂) slice, reported only.
    pub fits: Vec<SliceFit>,
    pub spot_checks: Vec<SpotCheck>,
    pub status: Status,
}

fn parity(r: &SweepRecord) -> Result<u8> {
    Ok(character(r.q, &parse_label(&r.chi2_label)?)?.parity())
}

fn theorem_point(suite: Suite, row: usize, r: &SweepRecord, eps: f64) -> Result<(BoundPoint, f64)> {
    if r.z_re != 0.0 || r.z_im != 0.0 {
        return Err(Error::Config(format!("row {row}: {} applies at z = 0", suite.name())));
    }
    let sum = r.sigma1 + r.sigma2;
    let kappa = parity(r)?;
    let model: BoundModel =
        if suite == Suite::Theorem1 { theorem1_model(sum, kappa, eps) } else { theorem2_model(sum, kappa, eps) };
    let chk = model.check(r.abs_value(), r.q, r.t1, r.t2, sum);
    let point = BoundPoint {
        row,
        check: suite.name().into(),
        measured: chk.measured,
        predicted: chk.predicted,
        ratio: chk.ratio,
        main_part: chk.main_part,
        extra_part: chk.extra_part,
    };
    Ok((point, model.delta))
}

fn plain_point(row: usize, check: &str, measured: f64, predicted: f64) -> BoundPoint {
    BoundPoint {
        row,
        check: check.into(),
        measured,
        predicted,
        ratio: measured / predicted,
        main_part: predicted,
        extra_part: 0.0,
    }
}

/// Rows of one (q, χ₁, χ₂, s₁, σ₂) slice, in table order.
fn slices(rows: &[SweepRecord], ok: &[usize]) -> Vec<(String, Vec<usize>)> {
    let mut out: Vec<(String, Vec<usize>)> = Vec::new();
    for &i in ok {
        let r = &rows[i];
        let key = format!("q={} chi1={} chi2={} s1={},{} sigma2={}", r.q, r.chi1_label, r.chi2_label, r.sigma1, r.t1, r.sigma2);
        match out.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(i),
            None => out.push((key, vec![i])),
        }
    }
    out
}

/// ∫_ξ^∞ u^{-s} (cos u, sin u) du by Gauss–Legendre on panels with at most
/// a quarter turn of phase, plus an integration-by-parts tail.
pub fn oscillatory_quadrature(xi: f64, s: ComplexValue) -> (ComplexValue, ComplexValue) {
    let t = s.im.abs();
    let upper = xi + 2.0 * t + 40.0 * PI;
    let nodes = gauss_legendre(16);
    let mut plus = c(0.0, 0.0);
    let mut minus = c(0.0, 0.0);
    let mut a = xi;
    while a < upper {
        let b = (a + FRAC_PI_2 / (1.0 + t / a)).min(upper);
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        for &(x, w) in &nodes {
            let u = mid + half * x;
            let f = real_pow(u, -s) * (w * half);
            let (sn, cs) = u.sin_cos();
            plus += f * c(cs, sn);
            minus += f * c(cs, -sn);
        }
        a = b;
    }
    // ∫_U^∞ u^{-s} e^{iωu} du = e^{iωU} Σ_k iω (-iω)^k (s)_k U^{-s-k}
    let tail = |omega: f64| {
        let mut acc = c(0.0, 0.0);
        let mut factor = I * omega;
        for k in 0..30u32 {
            acc += factor * pochhammer(s, k) * real_pow(upper, -s - k as f64);
            factor *= -I * omega;
        }
        acc * c(0.0, omega * upper).exp()
    };
    plus += tail(1.0);
    minus += tail(-1.0);
    ((plus + minus) / 2.0, (plus - minus) / (2.0 * I))
}

pub fn verify_table(suite: Suite, rows: &[SweepRecord], th: &Thresholds) -> Result<VerifyReport> {
    let want = suite.quantity().name();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.quantity_name() != want) {
        return Err(Error::Config(format!("suite {} needs {want} rows; row {i} is {}", suite.name(), r.quantity)));
    }
    let error_rows: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].is_error()).collect();
    let ok: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_error()).collect();
    let mut points = Vec::new();
    let mut fits = Vec::new();
    let mut spot_checks = Vec::new();
    let mut pooled_fit = None;
    match suite {
        Suite::Theorem1 | Suite::Theorem2 => {
            let mut deltas = Vec::with_capacity(rows.len());
            for &i in &ok {
                let (p, d) = theorem_point(suite, i, &rows[i], th.epsilon)?;
                points.push(p);
                deltas.push((i, d));
            }
            let base = if suite == Suite::Theorem1 { 0.5 } else { 0.0 };
            let slope_fit = |key: String, idx: &[usize]| -> Result<Option<SliceFit>> {
                let x: Vec<f64> = idx.iter().map(|&i| rows[i].column("qt2")).collect::<Result<_>>()?;
                if idx.len() < 3 || x.iter().all(|v| *v == x[0]) {
                    return Ok(None);
                }
                let y: Vec<f64> = idx.iter().map(|&i| rows[i].abs_value()).collect();
                let fit = fit_log_log(&x, &y)?;
                let delta = deltas.iter().filter(|(i, _)| idx.contains(i)).map(|p| p.1).fold(0.0, f64::max);
                let threshold = base + delta + th.slope_slack(suite);
                Ok(Some(SliceFit { slice: key, fit, threshold, passed: fit.slope <= threshold }))
            };
            for (key, idx) in slices(rows, &ok) {
                fits.extend(slope_fit(key, &idx)?);
            }
            pooled_fit = slope_fit("all rows".into(), &ok)?;
        }
        Suite::Lemma21 => {
            for &i in &ok {
                let r = &rows[i];
                let xi = r.param("xi")?;
                let qf = r.q as f64;
                points.push(plain_point(i, "lemma21", r.abs_value(), xi * qf.sqrt() * qf.ln()));
            }
        }
        Suite::Lemma22 => {
            for &i in &ok {
                let r = &rows[i];
                let (z1, z2) = (c(r.sigma1, r.t1), c(r.sigma2, r.t2));
                let (bound, case) = product_bound(z1, z2, r.q, r.param("tau")?);
                let name = serde_json::to_value(case)?.as_str().unwrap_or_default().to_string();
                points.push(plain_point(i, &name, r.abs_value(), bound));
            }
        }
        Suite::Hl => {
            for &i in &ok {
                let r = &rows[i];
                let xi = r.param("xi")?;
                let s = c(r.sigma2, r.t2);
                let value = c(r.value_re, r.value_im);
                let is_cos = r.params().get("part").map(String::as_str) == Some("cos");
                let regime = HlRegime::classify(xi, s.im, th.a0, th.a1);
                let (main_sin, main_cos) = hl_main_terms(s)?;
                let main = if is_cos { main_sin } else { main_cos };
                let measured = match regime {
                    HlRegime::Hl1 | HlRegime::Hl2 => Some((value - main).norm()),
                    HlRegime::Hl3 | HlRegime::Hl4 => Some(value.norm()),
                    HlRegime::Generic => None,
                };
                if let Some(m) = measured {
                    points.push(plain_point(i, regime.name(), m, hl_shape(regime, xi, s)));
                }
                points.push(plain_point(i, "HL5", value.norm(), hl5_shape(xi, s)));
            }
            let eligible: Vec<usize> = ok.iter().copied().filter(|&i| rows[i].param("xi").is_ok_and(|x| x <= 50.0)).collect();
            let n = th.spot_checks.min(eligible.len());
            for k in 0..n {
                let i = eligible[k * eligible.len() / n];
                let r = &rows[i];
                let s = c(r.sigma2, r.t2);
                let (cq, sq) = oscillatory_quadrature(r.param("xi")?, s);
                let quadrature = if r.params().get("part").map(String::as_str) == Some("cos") { cq } else { sq };
                let table_value = c(r.value_re, r.value_im);
                let abs_diff = (table_value - quadrature).norm();
                let passed = abs_diff <= th.spot_tolerance * quadrature.norm().max(1.0);
                spot_checks.push(SpotCheck { row: i, table_value, quadrature, abs_diff, passed });
            }
        }
    }
    let max_ratio = points.iter().map(|p| p.ratio).fold(0.0, f64::max);
    let exceed_unit_constant = points.iter().filter(|p| p.ratio > 1.0).count();
    let max_constant = th.max_constant(suite);
    let bounds_ok = max_constant.is_none_or(|m| max_ratio <= m)
        && pooled_fit.as_ref().is_none_or(|f| f.passed)
        && spot_checks.iter().all(|s| s.passed)
        && points.iter().all(|p| p.ratio.is_finite());
    let status = if !error_rows.is_empty() {
        Status::ExecutionError
    } else if bounds_ok {
        Status::Pass
    } else {
        Status::BoundViolation
    };
    Ok(VerifyReport {
        suite,
        n_rows: rows.len(),
        error_rows,
        points,
        max_ratio,
        exceed_unit_constant,
        max_constant,
        pooled_fit,
        fits,
        spot_checks,
        status,
    })
}

/// Builds the table (from `input`, or by running the sweep) and verifies it.
pub fn verify_bounds(suite: Suite, config: &VerifyConfig) -> Result<(VerifyReport, Vec<SweepRecord>)> {
    if config.sweep.quantity != suite.quantity() {
        return Err(Error::Config(format!(
            "suite {} needs quantity {}, config has {}",
            suite.name(),
            suite.quantity().name(),
            config.sweep.quantity.name()
        )));
    }
    let rows = match &config.input {
        Some(path) => read_csv_file(path)?,
        None => run_sweep(&config.sweep)?.rows,
    };
    let report = verify_table(suite, &rows, &config.thresholds)?;
    Ok((report, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::oscillatory::cosine_sine_integrals;

    #[test]
    fn quadrature_matches_closed_form() {
        // s = 0: C = -sin ξ, S = cos ξ
        let (cq, sq) = oscillatory_quadrature(1.3, c(0.0, 0.0));
        assert!((cq - c(-(1.3f64).sin(), 0.0)).norm() < 1e-12, "{cq}");
        assert!((sq - c((1.3f64).cos(), 0.0)).norm() < 1e-12, "{sq}");
        let s = c(0.5, 20.0);
        let (cq, sq) = oscillatory_quadrature(0.7, s);
        let (cc, ss, _) = cosine_sine_integrals(0.7, s).unwrap();
        assert!((cq - cc).norm() < 1e-9 && (sq - ss).norm() < 1e-9, "{cq} {cc} {sq} {ss}");
    }

    #[test]
    fn suite_names() {
        assert_eq!("HL".parse::<Suite>().unwrap(), Suite::Hl);
        assert!(matches!("lemma23".parse::<Suite>(), Err(Error::Config(_))));
        assert_eq!(Status::BoundViolation.exit_code(), 2);
    }
}
