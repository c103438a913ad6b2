//! Kummer's confluent hypergeometric function ₁F₁(a; c; x) by its power
//! series, summed in double-double so that the cancellation met on the
//! imaginary axis (terms up to ~e^|x| against an O(1) sum) stays below
//! binary64 resolution for |x| up to the default series cutoff.

use super::SpecialOptions;
use crate::complex::{c, ComplexValue};
use crate::dd::{Dd, DdComplex};
use crate::error::{Error, Result};

const MAX_TERMS: usize = 100_000;
/// Relative rounding of one double-double operation, padded.
const DD_EPS: f64 = 1e-31;
const INTEGER_TOL: f64 = 1e-9;

/// Series value with an absolute error estimate.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SeriesValue {
    pub value: ComplexValue,
    pub abs_error: f64,
    pub terms: usize,
}

pub(crate) fn near_nonpositive_integer(z: ComplexValue, tol: f64) -> bool {
    z.re < 0.5 && (z - c(z.re.round(), 0.0)).norm() < tol
}

/// Plain power series Σ (a)_k x^k / ((c)_k k!) in double-double.
fn series_dd(a: ComplexValue, cc: ComplexValue, x: ComplexValue) -> Result<SeriesValue> {
    let a_dd = DdComplex::from_c64(a);
    let c_dd = DdComplex::from_c64(cc);
    let x_dd = DdComplex::from_c64(x);
    let xn = x.norm();

    let mut term = DdComplex::ONE;
    let mut sum = DdComplex::ONE;
    let mut max_term = 1.0f64;
    let mut k = 0usize;
    loop {
        let kf = k as f64;
        let num = (a_dd + DdComplex::from_c64(c(kf, 0.0))) * x_dd;
        let den = (c_dd + DdComplex::from_c64(c(kf, 0.0))).scale(Dd::from_f64(kf + 1.0));
        term = term * num / den;
        sum = sum + term;
        k += 1;
        let tn = term.norm_f64();
        max_term = max_term.max(tn);

        if tn == 0.0 {
            break;
        }
        // Tail bound: once the ratio bound ρ_j for all j >= k is < 1/2,
        // |tail| <= |t_k| ρ / (1 - ρ).
        let jf = k as f64;
        let re_c = cc.re + jf;
        if re_c > 0.0 {
            let rho = xn * (a.norm() + jf) / (re_c * (jf + 1.0));
            let rho_next = xn * (a.norm() + jf + 1.0) / ((re_c + 1.0) * (jf + 2.0));
            if rho < 0.5 && rho_next <= rho {
                let tail = tn * rho / (1.0 - rho);
                if tail <= 1e-17 * sum.norm_f64() || tail <= DD_EPS * max_term {
                    break;
                }
            }
        }
        if k >= MAX_TERMS {
            return Err(Error::Regime(format!("1F1 series did not converge in {MAX_TERMS} terms (|x| = {xn})")));
        }
    }
    let value = sum.to_c64();
    let abs_error = DD_EPS * (k as f64) * max_term + 2.0 * f64::EPSILON * value.norm();
    Ok(SeriesValue { value, abs_error, terms: k })
}

/// Series with a choice between the direct form and Kummer's
/// transformation e^x ₁F₁(c-a; c; -x), whichever cancels less.
pub(crate) fn hyp1f1_series(a: ComplexValue, cc: ComplexValue, x: ComplexValue) -> Result<SeriesValue> {
    if near_nonpositive_integer(cc, INTEGER_TOL) {
        return Err(Error::Domain(format!("1F1: c = {cc} is within {INTEGER_TOL:e} of a nonpositive integer")));
    }
    if x == c(0.0, 0.0) {
        return Ok(SeriesValue { value: c(1.0, 0.0), abs_error: 0.0, terms: 0 });
    }
    let direct = series_dd(a, cc, x)?;
    let direct_rel = direct.abs_error / direct.value.norm().max(f64::MIN_POSITIVE);
    if direct_rel < 1e-15 || (a - cc).norm() == 0.0 {
        return Ok(direct);
    }
    let ex = x.exp();
    let t = series_dd(cc - a, cc, -x)?;
    let transformed = SeriesValue {
        value: ex * t.value,
        abs_error: ex.norm() * t.abs_error + 4.0 * f64::EPSILON * (1.0 + x.norm()) * (ex * t.value).norm(),
        terms: t.terms,
    };
    let t_rel = transformed.abs_error / transformed.value.norm().max(f64::MIN_POSITIVE);
    Ok(if t_rel < direct_rel { transformed } else { direct })
}

/// ₁F₁(a; c; x) on the convergent-series regime |x| <= X₀.
pub fn kummer_1f1(a: ComplexValue, cc: ComplexValue, x: ComplexValue) -> Result<ComplexValue> {
    kummer_1f1_with(a, cc, x, &SpecialOptions::default())
}

pub fn kummer_1f1_with(a: ComplexValue, cc: ComplexValue, x: ComplexValue, opts: &SpecialOptions) -> Result<ComplexValue> {
    if x.norm() > opts.series_cutoff {
        return Err(Error::Regime(format!(
            "|x| = {} exceeds the series cutoff X0 = {}; use the asymptotic path",
            x.norm(),
            opts.series_cutoff
        )));
    }
    Ok(hyp1f1_series(a, cc, x)?.value)
}
