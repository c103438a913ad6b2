use super::spec::{GridPoint, Quantity, SweepSpec};
use super::table::{write_csv_file, SweepRecord};
use super::worker_pool;
use crate::characters::{hyperbola_sum, DirichletCharacter};
use crate::complex::{c, ComplexValue};
use crate::dirichlet_l::truncated_product;
use crate::double_l::{evaluate, theorem2_main_term, EvalRequest};
use crate::error::{Error, Result};
use crate::special_fn::oscillatory::cosine_sine_integrals;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct RowError {
    pub row: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRecord>,
    pub errors: Vec<RowError>,
}

fn characters(p: &GridPoint) -> Result<(&DirichletCharacter, &DirichletCharacter)> {
    match (&p.chi1, &p.chi2) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Config("grid point without characters".into())),
    }
}

fn evaluate_point(spec: &SweepSpec, p: &GridPoint) -> Result<(ComplexValue, f64, String)> {
    let request = |chi1: &DirichletCharacter, chi2: &DirichletCharacter| {
        let mut req = EvalRequest::new(p.s1, p.s2, chi1, chi2, spec.method).with_z(p.z);
        req.tolerance = spec.tolerance;
        req.caps = spec.caps;
        req
    };
    match spec.quantity {
        Quantity::Value => {
            let (a, b) = characters(p)?;
            let r = evaluate(&request(a, b))?;
            Ok((r.value, r.error_estimate, r.method.name().into()))
        }
        Quantity::MaintermResidual => {
            let (a, b) = characters(p)?;
            let main = theorem2_main_term(p.s1, p.s2, a, b)?;
            let r = evaluate(&request(a, b))?;
            Ok((r.value - main.main_term, r.error_estimate + main.error_estimate, r.method.name().into()))
        }
        Quantity::ProductApproxResidual => {
            let (a, b) = characters(p)?;
            let tau = p.tau.unwrap_or_default();
            let r = truncated_product(p.s1, p.s2, a, b, tau)?;
            Ok((r.true_product - r.truncated_sum, r.product_error, "l-function".into()))
        }
        Quantity::HyperbolaSum => {
            let (a, b) = characters(p)?;
            let v = hyperbola_sum(a, b, p.tau.unwrap_or_default(), p.xi.unwrap_or_default())?;
            Ok((v, 0.0, "enumeration".into()))
        }
        Quantity::OscillatoryRegimes => {
            let (cos_part, sin_part, err) = cosine_sine_integrals(p.xi.unwrap_or_default(), p.s2)?;
            Ok((if p.part == 0 { cos_part } else { sin_part }, err, "incomplete-gamma".into()))
        }
    }
}

fn quantity_tag(spec: &SweepSpec, p: &GridPoint) -> String {
    let name = spec.quantity.name();
    match spec.quantity {
        Quantity::ProductApproxResidual => format!("{name}@tau={}", p.tau.unwrap_or_default()),
        Quantity::HyperbolaSum => format!("{name}@tau={};xi={}", p.tau.unwrap_or_default(), p.xi.unwrap_or_default()),
        Quantity::OscillatoryRegimes => {
            format!("{name}@xi={};part={}", p.xi.unwrap_or_default(), if p.part == 0 { "cos" } else { "sin" })
        }
        _ => name.to_string(),
    }
}

fn record(spec: &SweepSpec, p: &GridPoint) -> (SweepRecord, Option<String>) {
    let start = Instant::now();
    let outcome = evaluate_point(spec, p);
    let elapsed_ms = if spec.timings { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
    let label = |chi: &Option<DirichletCharacter>| chi.as_ref().map(|x| x.label_string()).unwrap_or_default();
    let (value, err_est, method, message) = match outcome {
        Ok((v, e, m)) => (v, e, m, None),
        Err(e) => (c(f64::NAN, f64::NAN), f64::NAN, spec.method.name().to_string(), Some(e.to_string())),
    };
    let row = SweepRecord {
        q: p.modulus,
        chi1_label: label(&p.chi1),
        chi2_label: label(&p.chi2),
        sigma1: p.s1.re,
        t1: p.s1.im,
        sigma2: p.s2.re,
        t2: p.s2.im,
        z_re: p.z.re,
        z_im: p.z.im,
        method,
        value_re: value.re,
        value_im: value.im,
        err_est,
        quantity: quantity_tag(spec, p),
        elapsed_ms,
    };
    (row, message)
}

/// Evaluates every grid point on `DOUBLE_ELL_WORKERS` threads and returns
/// the rows in grid order. Failed points become error rows. The CSV is
/// written when `output_path` is set.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    let points = spec.points()?;
    let pool = worker_pool()?;
    let results: Vec<(SweepRecord, Option<String>)> = pool.install(|| points.par_iter().map(|p| record(spec, p)).collect());
    let mut rows = Vec::with_capacity(results.len());
    let mut errors = Vec::new();
    for (i, (row, message)) in results.into_iter().enumerate() {
        if let Some(message) = message {
            errors.push(RowError { row: i, message });
        }
        rows.push(row);
    }
    if !rows.is_empty() && errors.len() == rows.len() {
        return Err(Error::Regime(format!("all {} grid points failed; first: {}", rows.len(), errors[0].message)));
    }
    if let Some(path) = &spec.output_path {
        write_csv_file(&rows, path)?;
    }
    Ok(SweepOutcome { rows, errors })
}
