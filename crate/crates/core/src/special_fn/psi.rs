//! Tricomi's confluent hypergeometric function
//!
//! Ψ(a, c; x) = Γ(1-c)/Γ(a-c+1) ₁F₁(a; c; x)
//!            + Γ(c-1)/Γ(a) x^{1-c} ₁F₁(a-c+1; 2-c; x)
//!
//! evaluated in one of three regimes: the two-term series above, the
//! asymptotic expansion Σ (-1)^k (a)_k (a-c+1)_k / k! x^{-a-k} truncated at
//! its least term, or the Laplace integral
//! x^{-a}/Γ(a) ∫₀^∞ e^{-u} u^{a-1} (1+u/x)^{c-a-1} du (needs Re a > 0).
//! When x is far off the real axis and c has a large imaginary part the
//! Laplace integrand grows like e^{π|Im c|/2} before cancelling; the
//! contour regime then integrates e^{-xv} v^{a-1} (1+v)^{c-a-1} along the
//! real v axis past the saddle point and down a ray where e^{-xv} decays.
//! Each regime reports its own error estimate and the cheapest one meeting
//! the target accuracy wins.

use super::gamma::ln_gamma;
use super::hyp1f1::{hyp1f1_series, near_nonpositive_integer};
use super::quadrature::{exp_sinh, gauss_legendre_panels};
use super::SpecialOptions;
use crate::complex::{c, ComplexValue};
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PsiRegime {
    ConvergentSeries,
    Asymptotic,
    LaplaceIntegral,
    ContourIntegral,
    /// Integral regimes at a+n, a+n+1 carried down to a by the
    /// contiguous relation in a.
    ContiguousRecurrence,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PsiEvaluation {
    #[serde(with = "crate::complex::serde_re_im")]
    pub value: ComplexValue,
    pub regime: PsiRegime,
    pub terms_used: usize,
    pub remainder_bound: f64,
}

impl PsiEvaluation {
    fn rel_error(&self) -> f64 {
        self.remainder_bound / self.value.norm().max(f64::MIN_POSITIVE)
    }
}

/// Terms of the asymptotic expansion, `T_0 .. T_{n-1}`.
pub fn asymptotic_terms(a: ComplexValue, cc: ComplexValue, x: ComplexValue, n: usize) -> Vec<ComplexValue> {
    let b = a - cc + 1.0;
    let mut out = Vec::with_capacity(n);
    let mut t = (-a * x.ln()).exp();
    for k in 0..n {
        out.push(t);
        let kf = k as f64;
        t = -t * (a + kf) * (b + kf) / (x * (kf + 1.0));
    }
    out
}

/// Asymptotic expansion truncated at the least term (at most `max_terms`).
pub fn psi_asymptotic(a: ComplexValue, cc: ComplexValue, x: ComplexValue, max_terms: usize) -> PsiEvaluation {
    let b = a - cc + 1.0;
    let mut t = (-a * x.ln()).exp();
    let mut sum = crate::sum::CompensatedSum::new();
    let mut k = 0usize;
    let mut prev = f64::INFINITY;
    let remainder_bound = loop {
        let tn = t.norm();
        if tn == 0.0 {
            // (a)_k or (a-c+1)_k hit zero: the expansion terminates exactly.
            break 4.0 * f64::EPSILON * sum.value().norm();
        }
        if k >= max_terms || tn >= prev {
            break 2.0 * tn;
        }
        sum.add(t);
        prev = tn;
        let kf = k as f64;
        t = -t * (a + kf) * (b + kf) / (x * (kf + 1.0));
        k += 1;
    };
    let value = sum.value();
    PsiEvaluation {
        value,
        regime: PsiRegime::Asymptotic,
        terms_used: k,
        remainder_bound: remainder_bound + sum.rounding_error(4.0 * f64::EPSILON) + lnx_error(a, x) * value.norm(),
    }
}

/// Relative error carried by x^{-a} through the logarithm.
fn lnx_error(a: ComplexValue, x: ComplexValue) -> f64 {
    2.0 * f64::EPSILON * (1.0 + (a * x.ln()).norm())
}

/// The defining two-term combination of ₁F₁ series.
pub fn psi_series(a: ComplexValue, cc: ComplexValue, x: ComplexValue) -> Result<PsiEvaluation> {
    let nearest = cc.re.round();
    if (cc - c(nearest, 0.0)).norm() < 1e-6 {
        return Err(Error::Domain(format!(
            "Ψ series: c = {cc} within 1e-6 of the integer {nearest}; the two-term formula degenerates"
        )));
    }
    let b = a - cc + 1.0;
    let one = c(1.0, 0.0);
    let eps = f64::EPSILON;

    // Γ(1-c)/Γ(a-c+1) ₁F₁(a; c; x)
    let (first, first_err, n1) = if near_nonpositive_integer(b, 0.0) {
        (c(0.0, 0.0), 0.0, 0)
    } else {
        let lg_num = ln_gamma(one - cc)?;
        let lg_den = ln_gamma(b)?;
        let coef = (lg_num - lg_den).exp();
        let m = hyp1f1_series(a, cc, x)?;
        let v = coef * m.value;
        let gamma_err = 4.0 * eps * (1.0 + lg_num.norm() + lg_den.norm());
        (v, coef.norm() * m.abs_error + gamma_err * v.norm(), m.terms)
    };
    // Γ(c-1)/Γ(a) x^{1-c} ₁F₁(a-c+1; 2-c; x)
    let (second, second_err, n2) = if near_nonpositive_integer(a, 0.0) {
        (c(0.0, 0.0), 0.0, 0)
    } else {
        let lg_num = ln_gamma(cc - 1.0)?;
        let lg_den = ln_gamma(a)?;
        let pow = (one - cc) * x.ln();
        let coef = (lg_num - lg_den + pow).exp();
        let m = hyp1f1_series(b, c(2.0, 0.0) - cc, x)?;
        let v = coef * m.value;
        let gamma_err = 4.0 * eps * (1.0 + lg_num.norm() + lg_den.norm() + pow.norm());
        (v, coef.norm() * m.abs_error + gamma_err * v.norm(), m.terms)
    };
    let value = first + second;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("tricomi_psi series"));
    }
    Ok(PsiEvaluation {
        value,
        regime: PsiRegime::ConvergentSeries,
        terms_used: n1 + n2,
        remainder_bound: first_err + second_err + 2.0 * eps * value.norm(),
    })
}

/// Laplace-integral representation; requires Re a > 0 and x off the
/// negative real axis.
pub fn psi_laplace(a: ComplexValue, cc: ComplexValue, x: ComplexValue, rel_tol: f64) -> Result<PsiEvaluation> {
    psi_laplace_ray(a, cc, x, 0.0, rel_tol)
}

/// The Laplace integral taken along the ray arg u = φ, |φ| < π/2. Turning
/// the ray towards sign(Im a)·π/2 removes the oscillation of u^{a-1} that
/// otherwise cancels down to the size of Γ(a).
pub fn psi_laplace_ray(a: ComplexValue, cc: ComplexValue, x: ComplexValue, phi: f64, rel_tol: f64) -> Result<PsiEvaluation> {
    if a.re <= 0.0 {
        return Err(Error::Regime(format!("Laplace integral needs Re a > 0, got a = {a}")));
    }
    if phi.abs() >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain(format!("ray angle {phi} outside (-π/2, π/2)")));
    }
    let pole_dir = (-x).arg();
    if phi != 0.0 && pole_dir.abs() < std::f64::consts::FRAC_PI_2 && pole_dir * phi >= 0.0 && pole_dir.abs() <= phi.abs() {
        return Err(Error::Regime(format!("ray angle {phi} sweeps across the branch point u = -x")));
    }
    let gamma_exp = cc - a - 1.0;
    let am1 = a - 1.0;
    let inv_x = x.inv();
    let one = c(1.0, 0.0);
    let rot = c(phi.cos(), phi.sin());
    let weighted = std::cell::Cell::new((0.0f64, 0.0f64));
    let r = exp_sinh(
        |r| {
            let u = rot * r;
            let lw = -u + am1 * c(r.ln(), phi) + gamma_exp * (one + inv_x * u).ln();
            let f = lw.re.exp();
            let (sw, sf) = weighted.get();
            weighted.set((sw + f * lw.im.abs(), sf + f));
            lw.exp() * rot
        },
        rel_tol,
        12,
    );
    let lg = ln_gamma(a)?;
    let pre_log = -a * x.ln() - lg;
    let pre = pre_log.exp();
    let value = pre * r.value;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("tricomi_psi laplace"));
    }
    let (sw, sf) = weighted.get();
    let mean_phase = if sf > 0.0 { sw / sf } else { 0.0 };
    let phase = 4.0 * f64::EPSILON * (1.0 + 2.0 * mean_phase);
    let pre_err = 4.0 * f64::EPSILON * (1.0 + pre_log.norm());
    Ok(PsiEvaluation {
        value,
        regime: PsiRegime::LaplaceIntegral,
        terms_used: r.evaluations,
        remainder_bound: pre.norm() * (r.abs_error + phase * r.magnitude) + pre_err * value.norm(),
    })
}

/// Ψ(a, c; x) = Γ(a)^{-1} ∫ e^{-xv} v^{a-1} (1+v)^{c-a-1} dv along
/// [0, V] followed by the ray V + i·d·[0, ∞) on which e^{-xv} decays.
/// Requires Re a > 0, Re x >= 0 and Im x != 0.
pub fn psi_contour(a: ComplexValue, cc: ComplexValue, x: ComplexValue, rel_tol: f64) -> Result<PsiEvaluation> {
    if a.re <= 0.0 || x.re < 0.0 || x.im == 0.0 {
        return Err(Error::Regime(format!("contour integral needs Re a > 0, Re x >= 0, Im x != 0 (a = {a}, x = {x})")));
    }
    let am1 = a - 1.0;
    let e = cc - a - 1.0;
    let one = c(1.0, 0.0);
    let xi = x.im.abs();
    // Past V the phase of the algebraic factors turns slower than e^{-xv} decays.
    let v_end = (2.0 * (e.im.abs() + a.im.abs()) / xi - 1.0).max(0.0);
    // Rounding in exp(L) is about eps·|Im L| relative; track its |f|-weighted mean.
    let weighted = std::cell::Cell::new((0.0f64, 0.0f64));
    let log_integrand = |v: ComplexValue| {
        let l = -x * v + am1 * v.ln() + e * (one + v).ln();
        let f = l.re.exp();
        let (sw, s) = weighted.get();
        weighted.set((sw + f * l.im.abs(), s + f));
        l
    };
    let mut total = c(0.0, 0.0);
    let mut magnitude = 0.0;
    let mut abs_error = 0.0;
    let mut evaluations = 0usize;
    // [0, h] termwise: v^{a-1} g(v) with g = e^{-xv} (1+v)^e expanded in v.
    let rate = x.norm() + e.norm() + a.im.abs() + 1.0;
    let h = (0.25 / rate).min(0.25);
    let head = power_head(a, e, x, h);
    total += head.0;
    magnitude += head.1;
    abs_error += head.2;
    let v_start = h;
    let v_end = v_end.max(v_start);
    // Near the origin v^{a-1} oscillates in ln v: integrate there in w = ln v.
    let v_mid = v_end.min(1.0);
    if v_mid > v_start {
        let (w0, w1) = (v_start.ln(), v_mid.ln());
        let phase = (x.norm() + e.norm()) * v_mid + a.norm() * (w1 - w0);
        let panels = (phase / 1.5).ceil() as usize + 2;
        let r = gauss_legendre_panels(|w| log_integrand(c(w.exp(), 0.0)).exp() * w.exp(), w0, w1, panels);
        total += r.value;
        magnitude += r.magnitude;
        abs_error += r.abs_error;
        evaluations += r.evaluations;
    }
    if v_end > v_mid {
        let phase = x.norm() * (v_end - v_mid) + (e.norm() + a.norm()) * (v_end / v_mid).ln();
        let panels = (phase / 1.5).ceil() as usize + 2;
        let r = gauss_legendre_panels(|v| log_integrand(c(v, 0.0)).exp(), v_mid, v_end, panels);
        total += r.value;
        magnitude += r.magnitude;
        abs_error += r.abs_error;
        evaluations += r.evaluations;
    }
    let dir = if x.im > 0.0 { c(0.0, -1.0) } else { c(0.0, 1.0) };
    let ray = exp_sinh(
        |u| {
            let y = u / xi;
            (log_integrand(c(v_end, 0.0) + dir * y)).exp() * dir / xi
        },
        rel_tol,
        12,
    );
    total += ray.value;
    magnitude += ray.magnitude;
    abs_error += ray.abs_error;
    evaluations += ray.evaluations;

    let lg = ln_gamma(a)?;
    let pre = (-lg).exp();
    let value = pre * total;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("tricomi_psi contour"));
    }
    let (sw, sf) = weighted.get();
    let mean_phase = if sf > 0.0 { sw / sf } else { 0.0 };
    let rounding = 4.0 * f64::EPSILON * (1.0 + 2.0 * mean_phase) * magnitude;
    Ok(PsiEvaluation {
        value,
        regime: PsiRegime::ContourIntegral,
        terms_used: evaluations,
        remainder_bound: pre.norm() * (abs_error + rounding) + 4.0 * f64::EPSILON * (1.0 + lg.norm()) * value.norm(),
    })
}

/// ∫_0^h v^{a-1} e^{-xv} (1+v)^e dv = Σ_k g_k h^{a+k} / (a+k).
/// Returns (value, magnitude, error estimate).
fn power_head(a: ComplexValue, e: ComplexValue, x: ComplexValue, h: f64) -> (ComplexValue, f64, f64) {
    const TERMS: usize = 60;
    // Taylor coefficients of e^{-xv} and (1+v)^e, scaled by h^k.
    let mut exp_c = [c(0.0, 0.0); TERMS];
    let mut bin_c = [c(0.0, 0.0); TERMS];
    exp_c[0] = c(1.0, 0.0);
    bin_c[0] = c(1.0, 0.0);
    for k in 1..TERMS {
        exp_c[k] = exp_c[k - 1] * (-x * h) / k as f64;
        bin_c[k] = bin_c[k - 1] * (e - (k - 1) as f64) * h / k as f64;
    }
    let ha = (a * h.ln()).exp();
    let mut sum = crate::sum::CompensatedSum::new();
    let mut last = 0.0;
    for k in 0..TERMS {
        let g: ComplexValue = (0..=k).map(|j| exp_c[j] * bin_c[k - j]).sum();
        let term = g / (a + k as f64);
        sum.add(term);
        last = term.norm();
        if k > 8 && last < 1e-18 * sum.value().norm() {
            break;
        }
    }
    let value = ha * sum.value();
    let mag = ha.norm() * sum.magnitude();
    (value, mag, ha.norm() * (2.0 * last + sum.rounding_error(4.0 * f64::EPSILON)))
}

/// Ψ(a, c; x) with automatic regime selection.
pub fn tricomi_psi(a: ComplexValue, cc: ComplexValue, x: ComplexValue) -> Result<PsiEvaluation> {
    tricomi_psi_with(a, cc, x, &SpecialOptions::default())
}

pub fn tricomi_psi_with(a: ComplexValue, cc: ComplexValue, x: ComplexValue, opts: &SpecialOptions) -> Result<PsiEvaluation> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("Ψ(a, c; 0) is not defined by this evaluator".into()));
    }
    if x.im == 0.0 && x.re < 0.0 {
        return Err(Error::Domain(format!("x = {x} lies on the branch cut")));
    }
    let target = opts.target_rel;
    let mut best: Option<PsiEvaluation> = None;
    let mut last_err: Option<Error> = None;
    let consider = |ev: PsiEvaluation, best: &mut Option<PsiEvaluation>| -> bool {
        let ok = ev.rel_error() <= target;
        if best.is_none_or(|b| ev.rel_error() < b.rel_error()) {
            *best = Some(ev);
        }
        ok
    };

    let xn = x.norm();
    if xn > 1.0 {
        let asym = psi_asymptotic(a, cc, x, opts.max_asymptotic_terms);
        if consider(asym, &mut best) {
            return Ok(best.unwrap());
        }
    }
    let mut series_tried = false;
    if xn <= opts.series_cutoff {
        series_tried = true;
        match psi_series(a, cc, x) {
            Ok(ev) => {
                if consider(ev, &mut best) {
                    return Ok(best.unwrap());
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    if a.re > 0.0 {
        match psi_laplace(a, cc, x, target) {
            Ok(ev) => {
                if consider(ev, &mut best) {
                    return Ok(best.unwrap());
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    if a.re > 0.0 && a.im != 0.0 {
        let sign = a.im.signum();
        for frac in [0.25, 0.4, 0.47] {
            if let Ok(ev) = psi_laplace_ray(a, cc, x, sign * frac * std::f64::consts::PI, target) {
                if consider(ev, &mut best) {
                    return Ok(best.unwrap());
                }
            }
        }
    }
    if a.re > 0.0 && x.re >= 0.0 && x.im != 0.0 {
        match psi_contour(a, cc, x, target) {
            Ok(ev) => {
                if consider(ev, &mut best) {
                    return Ok(best.unwrap());
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    if a.re < 1.0 && best.is_none_or(|b| b.rel_error() > target) {
        match psi_recurrence(a, cc, x, opts) {
            Ok(ev) => {
                if consider(ev, &mut best) {
                    return Ok(best.unwrap());
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    if !series_tried {
        match psi_series(a, cc, x) {
            Ok(ev) => {
                consider(ev, &mut best);
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some(ev) => Ok(ev),
        None => Err(last_err.unwrap_or_else(|| Error::Regime("no Ψ regime applicable".into()))),
    }
}

/// Ψ(j-1) = (2j + x - c) Ψ(j) - j (j - c + 1) Ψ(j+1), run downwards in j
/// from seeds with Re a > 0; the downward direction is the dominant one.
fn psi_recurrence(a: ComplexValue, cc: ComplexValue, x: ComplexValue, opts: &SpecialOptions) -> Result<PsiEvaluation> {
    let n = (-a.re).ceil().max(0.0) as usize + 1;
    let top = a + n as f64;
    let hi = tricomi_psi_with(top + 1.0, cc, x, opts)?;
    let lo = tricomi_psi_with(top, cc, x, opts)?;
    let (mut u_next, mut e_next) = (hi.value, hi.remainder_bound);
    let (mut u, mut e) = (lo.value, lo.remainder_bound);
    let mut j = top;
    for _ in 0..n {
        let p = j * 2.0 + x - cc;
        let q = j * (j - cc + 1.0);
        let prev = p * u - q * u_next;
        let prev_err = p.norm() * e + q.norm() * e_next + 2.0 * f64::EPSILON * (p * u).norm().max((q * u_next).norm());
        u_next = u;
        e_next = e;
        u = prev;
        e = prev_err;
        j -= 1.0;
    }
    Ok(PsiEvaluation {
        value: u,
        regime: PsiRegime::ContiguousRecurrence,
        terms_used: hi.terms_used + lo.terms_used + n,
        remainder_bound: e,
    })
}

/// ρ_N(a, c; x) = Ψ(a, c; x) - Σ_{k<N} (-1)^k (a)_k (a-c+1)_k x^{-a-k} / k!.
pub fn psi_asymptotic_remainder(a: ComplexValue, cc: ComplexValue, x: ComplexValue, n: usize) -> Result<ComplexValue> {
    if n == 0 {
        return Err(Error::Domain("remainder order N must be positive".into()));
    }
    let psi = tricomi_psi(a, cc, x)?;
    let head = asymptotic_terms(a, cc, x, n).into_iter().collect::<crate::sum::CompensatedSum>().value();
    Ok(psi.value - head)
}
