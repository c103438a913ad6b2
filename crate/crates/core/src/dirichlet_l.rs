//! Hurwitz ζ, Dirichlet L-functions and the hyperbola-truncated product
//! of two L-functions.

use crate::characters::DirichletCharacter;
use crate::complex::{c, ComplexValue};
use crate::error::{domain, Error, Result};
use crate::sum::CompensatedSum;
use serde::Serialize;

/// B₂/2!, B₄/4!, B₆/6!; B₈/8! is the first omitted correction.
const BERNOULLI_OVER_FACTORIAL: [f64; 3] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0];
const B8_OVER_FACTORIAL: f64 = -1.0 / 1_209_600.0;
/// Absolute accuracy the Euler–Maclaurin cut aims for.
const HURWITZ_TOL: f64 = 1e-15;
const POLE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LMethod {
    DirectSeries,
    HurwitzContinuation,
}

#[derive(Clone, Debug, Serialize)]
pub struct LValue {
    #[serde(with = "crate::complex::serde_re_im")]
    pub s: ComplexValue,
    pub character_label: String,
    #[serde(with = "crate::complex::serde_re_im")]
    pub value: ComplexValue,
    pub method: LMethod,
    pub error_estimate: f64,
}

/// Euler–Maclaurin for ζ(s, a) - 1/(s-1); finite at s = 1.
/// Returns (value, absolute error estimate).
fn hurwitz_core(s: ComplexValue, a: f64, regularized: bool) -> Result<(ComplexValue, f64)> {
    if !(a > 0.0 && a.is_finite()) {
        return domain(format!("Hurwitz parameter a = {a} must be positive"));
    }
    if s.re <= -2.0 {
        return domain(format!("Re(s) = {} outside the supported range Re(s) > -2", s.re));
    }
    let one = c(1.0, 0.0);
    let sm1 = s - one;
    if !regularized && sm1.norm() < POLE_TOL {
        return Err(Error::Pole { nearest: 1.0 });
    }

    // |(s)_7| B₈/8! (M+a)^{-σ-7} <= tol fixes M.
    let poch7: f64 = (0..7).map(|j| (s + j as f64).norm()).product();
    // Relative to a^{-σ} once the terms are small, so tails at large a stay accurate.
    let tol = HURWITZ_TOL * a.powf(-s.re).min(1.0);
    let need = (poch7 * B8_OVER_FACTORIAL.abs() / tol).powf(1.0 / (s.re + 7.0));
    let m = ((need.max(10.0) - a).ceil().max(1.0)) as usize;
    let big = m as f64 + a;
    let ln_big = big.ln();

    let mut sum = CompensatedSum::new();
    for n in 0..m {
        sum.add((-s * (n as f64 + a).ln()).exp());
    }
    let big_pow = (-s * ln_big).exp(); // (M+a)^{-s}
                                       // ((M+a)^{1-s} - 1)/(s-1) when regularized, (M+a)^{1-s}/(s-1) otherwise.
    let integral = if regularized {
        let w = -sm1 * ln_big;
        -ln_big * expm1_over(w)
    } else {
        big_pow * big / sm1
    };
    sum.add(integral);
    sum.add(big_pow * 0.5);
    // Σ B_{2j}/(2j)! (s)_{2j-1} (M+a)^{-s-2j+1}
    let mut poch = s;
    let mut pw = big_pow / big;
    for (j, b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum.add(poch * pw * *b);
        let k = (2 * j + 1) as f64;
        poch = poch * (s + k) * (s + k + 1.0);
        pw /= big * big;
    }
    let omitted = (poch * pw).norm() * B8_OVER_FACTORIAL.abs();
    let value = sum.value();
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("hurwitz_zeta"));
    }
    // exp(-s ln(n+a)) carries a phase error of about eps |t| ln(n+a).
    let phase = f64::EPSILON * (2.0 + s.norm() * ln_big);
    Ok((value, 2.0 * omitted + sum.rounding_error(phase)))
}

/// (e^w - 1)/w, stable near w = 0.
fn expm1_over(w: ComplexValue) -> ComplexValue {
    if w.norm() < 1e-2 {
        let mut term = c(1.0, 0.0);
        let mut acc = term;
        for k in 1..12 {
            term = term * w / (k as f64 + 1.0);
            acc += term;
        }
        acc
    } else {
        (w.exp() - 1.0) / w
    }
}

/// ζ(s, a) = Σ_{n>=0} (n+a)^{-s}, continued to Re(s) > -2, for a > 0.
pub fn hurwitz_zeta(s: ComplexValue, a: f64) -> Result<ComplexValue> {
    hurwitz_core(s, a, false).map(|(v, _)| v)
}

/// ζ(s, a) with its absolute error estimate.
pub fn hurwitz_zeta_with_error(s: ComplexValue, a: f64) -> Result<(ComplexValue, f64)> {
    hurwitz_core(s, a, false)
}

/// ζ(s, a) - 1/(s-1), entire in s on the supported range.
pub fn hurwitz_zeta_regularized(s: ComplexValue, a: f64) -> Result<(ComplexValue, f64)> {
    hurwitz_core(s, a, true)
}

fn check_nonprincipal(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_principal() {
        return domain(format!("{chi} is principal; L(s, χ) has a pole at s = 1"));
    }
    Ok(())
}

/// L(s, χ) = q^{-s} Σ_a χ(a) ζ(s, a/q) for nonprincipal χ. The pole parts
/// of the Hurwitz values cancel, so the regularized values are used.
pub fn l_function(s: ComplexValue, chi: &DirichletCharacter) -> Result<LValue> {
    check_nonprincipal(chi)?;
    let q = chi.modulus();
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for a in 1..=q {
        let v = chi.value(a);
        if v.norm() == 0.0 {
            continue;
        }
        let (z, e) = hurwitz_zeta_regularized(s, a as f64 / q as f64)?;
        acc.add(v * z);
        err += e;
    }
    let scale = (-s * (q as f64).ln()).exp();
    let value = scale * acc.value();
    Ok(LValue {
        s,
        character_label: chi.label_string(),
        value,
        method: LMethod::HurwitzContinuation,
        error_estimate: scale.norm() * (err + acc.rounding_error(4.0 * f64::EPSILON)),
    })
}

/// Iterated summation by parts against a periodic coefficient sequence.
///
/// For mean-zero periodic g, Σ_{n>N} g(n) f(n) equals the boundary terms
/// -Σ_{k<K} g_{k+1}(N) f_k(N+1) plus a remainder bounded by
/// g_max Σ_{n>N} |Δ^K f(n)|, where g_{k+1} are the centred periodic
/// prefix sums of g_k and f_k(n) = Σ_j (-1)^j C(k,j) f(n+j).
#[derive(Clone, Debug)]
pub(crate) struct PeriodicTail {
    levels: Vec<Vec<ComplexValue>>,
    binomials: Vec<Vec<f64>>,
    g_max: f64,
}

impl PeriodicTail {
    pub(crate) fn new(chi: &DirichletCharacter, passes: usize) -> Self {
        let q = chi.modulus() as usize;
        let mut levels: Vec<Vec<ComplexValue>> = Vec::with_capacity(passes + 1);
        levels.push((0..q).map(|n| chi.value(n as u64)).collect());
        for k in 0..passes {
            let g = &levels[k];
            let mut prefix = vec![c(0.0, 0.0); q];
            let mut acc = c(0.0, 0.0);
            // prefix[n mod q] = Σ_{m=1}^{n} g(m)
            for n in 1..=q {
                acc += g[n % q];
                prefix[n % q] = acc;
            }
            let mean = prefix.iter().sum::<ComplexValue>() / q as f64;
            levels.push(prefix.into_iter().map(|v| v - mean).collect());
        }
        let g_max = levels[passes].iter().map(|v| v.norm()).fold(0.0, f64::max);
        let mut binomials = vec![vec![1.0f64]];
        for k in 0..passes {
            let prev = &binomials[k];
            let mut next = vec![1.0f64; prev.len() + 1];
            for j in 1..prev.len() {
                next[j] = prev[j - 1] + prev[j];
            }
            binomials.push(next);
        }
        PeriodicTail { levels, binomials, g_max }
    }

    pub(crate) fn passes(&self) -> usize {
        self.levels.len() - 1
    }

    pub(crate) fn g_max(&self) -> f64 {
        self.g_max
    }

    /// Boundary terms at cut `n_cut`; `f[j]` holds f(n_cut + 1 + j) for
    /// j = 0..=passes.
    pub(crate) fn boundary(&self, n_cut: u64, f: &[ComplexValue]) -> ComplexValue {
        let q = self.levels[0].len() as u64;
        let r = (n_cut % q) as usize;
        let mut acc = c(0.0, 0.0);
        for k in 0..self.passes() {
            let fk: ComplexValue =
                self.binomials[k].iter().enumerate().map(|(j, b)| f[j] * if j % 2 == 0 { *b } else { -*b }).sum();
            acc -= self.levels[k + 1][r] * fk;
        }
        acc
    }
}

/// L(s, χ) from its Dirichlet series: Σ_{n<=N} χ(n) n^{-s} plus the tail
/// rewritten by repeated summation by parts against the periodic partial
/// sums of χ. Each pass trades a factor |s|/n for a boundary term.
pub fn l_function_direct(s: ComplexValue, chi: &DirichletCharacter) -> Result<LValue> {
    const PASSES: usize = 8;
    check_nonprincipal(chi)?;
    if s.re + PASSES as f64 - 1.0 <= 0.5 {
        return domain(format!("Re(s) = {} too small for the summation-by-parts tail", s.re));
    }
    let q = chi.modulus();
    let tail_sum = PeriodicTail::new(chi, PASSES);
    let g_max = tail_sum.g_max();

    // Σ_{n>N} |Δ^K n^{-s}| <= |(s)_K| N^{1-σ-K} / (σ+K-1).
    let poch: f64 = (0..PASSES).map(|j| (s + j as f64).norm()).product();
    let expo = s.re + PASSES as f64 - 1.0;
    let target = 1e-15;
    let n_min = (g_max * poch / (expo * target)).powf(1.0 / expo).ceil();
    let n_cut = (n_min.max(4.0 * q as f64).max(64.0)) as u64;
    if n_cut > 50_000_000 {
        return domain(format!("direct series for L({s}, χ) would need N = {n_cut} terms"));
    }

    let mut acc = CompensatedSum::new();
    for n in 1..=n_cut {
        let v = chi.value(n);
        if v.norm() != 0.0 {
            acc.add(v * (-s * (n as f64).ln()).exp());
        }
    }
    let f: Vec<ComplexValue> = (0..=PASSES as u64).map(|j| (-s * ((n_cut + 1 + j) as f64).ln()).exp()).collect();
    acc.add(tail_sum.boundary(n_cut, &f));
    let tail = g_max * poch * (n_cut as f64).powf(-expo) / expo;
    let phase = f64::EPSILON * (2.0 + s.norm() * (n_cut as f64).ln());
    let difference_rounding = 2f64.powi(PASSES as i32) * f64::EPSILON * f[0].norm() * PASSES as f64;
    Ok(LValue {
        s,
        character_label: chi.label_string(),
        value: acc.value(),
        method: LMethod::DirectSeries,
        error_estimate: tail + acc.rounding_error(phase) + difference_rounding,
    })
}

/// Σ_{n>y} χ(n) n^{-s} = q^{-s} Σ_{r=1}^{q} χ(y+r) ζ(s, (y+r)/q) for
/// nonprincipal χ, with its absolute error estimate.
pub fn l_function_tail(s: ComplexValue, chi: &DirichletCharacter, y: u64) -> Result<(ComplexValue, f64)> {
    check_nonprincipal(chi)?;
    let q = chi.modulus();
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for r in 1..=q {
        let v = chi.value(y + r);
        if v.norm() == 0.0 {
            continue;
        }
        let a = (y + r) as f64 / q as f64;
        // The pole parts cancel across r; away from s = 1 the plain values
        // keep their relative accuracy when a is large.
        let (z, e) = if (s - 1.0).norm() < 0.5 { hurwitz_zeta_regularized(s, a)? } else { hurwitz_zeta_with_error(s, a)? };
        acc.add(v * z);
        err += e;
    }
    let scale = (-s * (q as f64).ln()).exp();
    Ok((scale * acc.value(), scale.norm() * (err + acc.rounding_error(4.0 * f64::EPSILON))))
}

/// Σ_{mn<=limit} a[m] b[n], with `a`, `b` indexed from 1 (index 0 ignored)
/// and long enough to cover `limit`.
pub fn hyperbola_convolution(a: &[ComplexValue], b: &[ComplexValue], limit: u64) -> CompensatedSum {
    let mut prefix = Vec::with_capacity(limit as usize + 1);
    let mut run = CompensatedSum::new();
    prefix.push(run.value());
    for n in 1..=limit as usize {
        run.add(b[n]);
        prefix.push(run.value());
    }
    let mut acc = CompensatedSum::new();
    for m in 1..=limit {
        let am = a[m as usize];
        if am.re == 0.0 && am.im == 0.0 {
            continue;
        }
        acc.add(am * prefix[(limit / m) as usize]);
    }
    acc
}

/// χ(n) n^{-z} for n = 0..=limit (entry 0 is zero).
pub fn dirichlet_coefficients(chi: &DirichletCharacter, z: ComplexValue, limit: u64) -> Vec<ComplexValue> {
    let mut out = Vec::with_capacity(limit as usize + 1);
    out.push(c(0.0, 0.0));
    for n in 1..=limit {
        let v = chi.value(n);
        out.push(if v.norm() == 0.0 { v } else { v * (-z * (n as f64).ln()).exp() });
    }
    out
}

/// Which of the three error shapes applies, by Re(z₁ - z₂) against 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductCase {
    Above,
    Boundary,
    Below,
}

impl ProductCase {
    pub fn classify(z1: ComplexValue, z2: ComplexValue) -> ProductCase {
        let d = (z1 - z2).re;
        if (d - 1.0).abs() < 1e-9 {
            ProductCase::Boundary
        } else if d > 1.0 {
            ProductCase::Above
        } else {
            ProductCase::Below
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductApproximation {
    #[serde(with = "crate::complex::serde_re_im")]
    pub truncated_sum: ComplexValue,
    #[serde(with = "crate::complex::serde_re_im")]
    pub true_product: ComplexValue,
    pub residual: f64,
    pub bound_prediction: f64,
    pub case: ProductCase,
    /// residual / bound_prediction
    pub ratio: f64,
    /// Error estimate of the product of the two L-values.
    pub product_error: f64,
}

/// The error allowance for the truncated product with implicit constants 1.
pub fn product_bound(z1: ComplexValue, z2: ComplexValue, q: u64, tau: f64) -> (f64, ProductCase) {
    let (x1, x2) = (z1.re, z2.re);
    let qf = q as f64;
    let lq = qf.ln();
    let first = (1.0 + z1.norm() + z2.norm() + (z1 * z2).norm()) * qf * lq * lq * tau.powf(-x1.min(x2));
    let case = ProductCase::classify(z1, z2);
    let shape = match case {
        ProductCase::Above => tau.powf(-x2),
        ProductCase::Boundary => tau.powf(-x2) * tau.ln(),
        ProductCase::Below => tau.powf((1.0 - x1 - x2) / 2.0),
    };
    let second = (1.0 + (z1 - z2).norm()) * qf.sqrt() * lq * shape;
    (first + second, case)
}

/// L(z₁, χ₁) L(z₂, χ₂) against Σ_{mn<=τ} χ₁(m)χ₂(n) m^{-z₁} n^{-z₂}.
pub fn truncated_product(
    z1: ComplexValue,
    z2: ComplexValue,
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    tau: f64,
) -> Result<ProductApproximation> {
    if chi1.modulus() != chi2.modulus() {
        return domain(format!("moduli differ: {} vs {}", chi1.modulus(), chi2.modulus()));
    }
    if !(z1.re > 0.0 && z2.re > 0.0 && z1.re + z2.re > 1.0) {
        return domain(format!("need Re z1 > 0, Re z2 > 0, Re z1 + Re z2 > 1; got z1 = {z1}, z2 = {z2}"));
    }
    if !(tau >= 2.0) || !tau.is_finite() {
        return domain(format!("need τ >= 2, got {tau}"));
    }
    if tau > 1e8 {
        return domain(format!("τ = {tau} exceeds the supported 1e8"));
    }
    let l1 = l_function(z1, chi1)?;
    let l2 = l_function(z2, chi2)?;
    let limit = tau.floor() as u64;
    let a = dirichlet_coefficients(chi1, z1, limit);
    let b = dirichlet_coefficients(chi2, z2, limit);
    let truncated_sum = hyperbola_convolution(&a, &b, limit).value();
    let true_product = l1.value * l2.value;
    let residual = (true_product - truncated_sum).norm();
    let (bound_prediction, case) = product_bound(z1, z2, chi1.modulus(), tau);
    Ok(ProductApproximation {
        truncated_sum,
        true_product,
        residual,
        bound_prediction,
        case,
        ratio: residual / bound_prediction,
        product_error: l1.error_estimate * l2.value.norm() + l2.error_estimate * l1.value.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::primitive_characters;
    use std::f64::consts::PI;

    #[test]
    fn zeta_two() {
        let v = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-14);
        let v = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
        assert!((v.re - PI * PI / 2.0).abs() < 1e-13);
        // large shifts, values from a 30-digit evaluation
        let v = hurwitz_zeta(c(3.0, 0.0), 101.0).unwrap();
        assert!((v.re / 4.950_249_991_667_5e-5 - 1.0).abs() < 1e-13, "{v}");
        let v = hurwitz_zeta(c(2.5, 40.0), 57.5).unwrap();
        let expect = c(5.892_943_495_717_762e-5, 6.231_570_674_450_235e-6);
        assert!((v - expect).norm() / expect.norm() < 1e-12, "{v}");
    }

    #[test]
    fn pole_and_range() {
        assert!(matches!(hurwitz_zeta(c(1.0, 0.0), 0.5), Err(Error::Pole { .. })));
        assert!(hurwitz_zeta(c(-2.5, 0.0), 0.5).is_err());
        assert!(hurwitz_zeta(c(2.0, 0.0), 0.0).is_err());
        // ζ(s) - 1/(s-1) → Euler's γ at s = 1
        let (g, _) = hurwitz_zeta_regularized(c(1.0, 0.0), 1.0).unwrap();
        assert!((g.re - 0.577_215_664_901_532_9).abs() < 1e-14);
    }

    #[test]
    fn leibniz_and_catalan() {
        let chi = &primitive_characters(4).unwrap()[0];
        let v = l_function(c(1.0, 0.0), chi).unwrap();
        assert!((v.value - c(PI / 4.0, 0.0)).norm() < 1e-14);
        let v = l_function(c(2.0, 0.0), chi).unwrap();
        assert!((v.value.re - 0.915_965_594_177_219).abs() < 1e-14);
        let d = l_function_direct(c(2.0, 0.0), chi).unwrap();
        assert!((d.value - v.value).norm() < 1e-13);
        // the tail past y = 0 is the whole series; past 1 it drops χ(1) = 1
        let (t0, _) = l_function_tail(c(2.0, 0.0), chi, 0).unwrap();
        assert!((t0 - v.value).norm() < 1e-14);
        let (t1, _) = l_function_tail(c(1.0, 0.0), chi, 1).unwrap();
        assert!((t1 - c(PI / 4.0 - 1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn three_point_truncation() {
        let chi = &primitive_characters(3).unwrap()[0];
        let (z1, z2) = (c(0.7, 1.0), c(0.9, -2.0));
        let p = truncated_product(z1, z2, chi, chi, 2.0).unwrap();
        let two = c(2.0, 0.0);
        let expect = 1.0 + chi.value(2) * two.powc(-z1) + chi.value(2) * two.powc(-z2);
        assert!((p.truncated_sum - expect).norm() < 1e-15);
    }

    #[test]
    fn principal_rejected() {
        let chi = crate::characters::character(5, &[0]).unwrap();
        assert!(l_function(c(2.0, 0.0), &chi).is_err());
    }
}
