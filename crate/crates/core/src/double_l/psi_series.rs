//! Continuation of L̃₂,z through the Tricomi Ψ representation.
//!
//! With a = 1-z, c = 2-s₂-z and P = ε(χ₂)Γ(1-z)/√q,
//!
//! L̃₂,z = P Σ_{m,n} χ₁(m)χ̄₂(n) m^{1-s₁-s₂-z}
//!          [e^{iπκ₂/2} Ψ(a, c; 2πimn/q) + e^{-iπκ₂/2} Ψ(a, c; -2πimn/q)].
//!
//! Splitting off N asymptotic terms of Ψ gives
//! P [Σ_{k<N} c_k L(s₁+s₂+k, χ₁) L(k+1-z, χ̄₂) + R_N]. The remainder R_N
//! only depends on ℓ = mn through ρ_N, so it is summed over ℓ <= L with
//! exact Ψ values. Past L the next asymptotic terms k = N..K-1 are summed
//! in closed form over mn > L, and ρ_K is bounded.

use super::tails::{divisor_convolution, divisor_tail_bound, hyperbola_complement, lattice_count, weighted_powers};
use super::{epsilon_factor, require_primitive, EvalRequest, EvalResult, Method, Timer};
use crate::complex::{c, real_pow, ComplexValue, I};
use crate::dirichlet_l::l_function;
use crate::error::{domain, Error, Result};
use crate::special_fn::{complex_gamma, pochhammer, tricomi_psi};
use crate::sum::CompensatedSum;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Extra asymptotic orders summed in closed form past the exact region.
const EXTRA_ORDERS: usize = 24;

pub fn psi_series(req: &EvalRequest) -> Result<EvalResult> {
    let timer = Timer::start();
    req.validate_common()?;
    let (chi1, chi2) = req.characters()?;
    require_primitive(&chi1, "χ₁")?;
    require_primitive(&chi2, "χ₂")?;
    let (s1, s2, z) = (req.s1, req.s2, req.z);
    let n_order = req.caps.n_order;
    if n_order == 0 {
        return domain("N_order must be at least 1");
    }
    if s1.re + s2.re <= 0.0 {
        return domain(format!("psi series needs σ₁ + σ₂ > 0; got {}", s1.re + s2.re));
    }
    if z.re >= 1.0 {
        return domain(format!("psi series needs Re z < 1; got {}", z.re));
    }
    let a = 1.0 - z;
    let cc = 2.0 - s2 - z;
    if (cc - cc.re.round()).norm() < 1e-6 {
        return domain(format!("2 - s₂ - z = {cc} is within 1e-6 of an integer"));
    }

    let q = chi1.modulus();
    let qf = q as f64;
    let kappa2 = chi2.parity() as f64;
    let chi2b = chi2.conj();
    let pref = epsilon_factor(&chi2) * complex_gamma(a)? / qf.sqrt();
    let step = 2.0 * PI / qf;

    let k_max = n_order + EXTRA_ORDERS;
    // c_k = (-1)^k (a)_k (s₂)_k / ((2π/q)^{k+1-z} k!) · 2cos(π(z-k-1+κ₂)/2)
    let coef: Vec<ComplexValue> = (0..k_max)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let fact: f64 = (1..=k).map(|j| j as f64).product();
            let trig = 2.0 * (PI * (z - k as f64 - 1.0 + kappa2) / 2.0).cos();
            pochhammer(a, k as u32) * pochhammer(s2, k as u32) * sign / fact * real_pow(step, z - 1.0 - k as f64) * trig
        })
        .collect();

    // Past 2πL/q >= 4(|s₂| + |a| + K) successive asymptotic terms shrink by ~1/4.
    let reach = 4.0 * (s2.norm() + a.norm() + k_max as f64);
    let limit = ((reach / step).ceil() as u64).max(2 * q);
    if limit > req.caps.m_remainder {
        return Err(Error::Regime(format!(
            "psi series needs the exact region mn <= {limit}, above the cap {}",
            req.caps.m_remainder
        )));
    }

    let mut total = CompensatedSum::new();
    let mut err = 0.0;

    // Σ_{k<N} c_k L(s₁+s₂+k, χ₁) L(k+1-z, χ̄₂)
    for (k, ck) in coef.iter().enumerate().take(n_order) {
        let l1 = l_function(s1 + s2 + k as f64, &chi1)?;
        let l2 = l_function(k as f64 + 1.0 - z, &chi2b)?;
        total.add(ck * l1.value * l2.value);
        err += ck.norm() * (l1.value.norm() * l2.error_estimate + l2.value.norm() * l1.error_estimate);
    }

    // Exact ρ_N(ℓ) for ℓ <= L, weighted by A(ℓ) = Σ_{mn=ℓ} χ₁(m)χ̄₂(n) m^{1-s₁-s₂-z}.
    let f = weighted_powers(&chi1, s1 + s2 + z - 1.0, limit);
    let g = weighted_powers(&chi2b, c(0.0, 0.0), limit);
    let weights = divisor_convolution(&f, &g, limit);
    let rot = (I * (PI * kappa2 / 2.0)).exp();
    let exact: Vec<(ComplexValue, f64)> = (1..=limit)
        .into_par_iter()
        .map(|l| -> Result<(ComplexValue, f64)> {
            if weights[l as usize].norm() == 0.0 {
                return Ok((c(0.0, 0.0), 0.0));
            }
            let xi = step * l as f64;
            let up = tricomi_psi(a, cc, c(0.0, xi))?;
            let down = tricomi_psi(a, cc, c(0.0, -xi))?;
            let full = rot * up.value + rot.conj() * down.value;
            let mut head = c(0.0, 0.0);
            let mut head_mag = 0.0;
            for (k, ck) in coef.iter().enumerate().take(n_order) {
                let t = ck * real_pow(l as f64, z - 1.0 - k as f64);
                head += t;
                head_mag += t.norm();
            }
            let rounding = 4.0 * f64::EPSILON * (full.norm() + head_mag);
            Ok((full - head, up.remainder_bound + down.remainder_bound + rounding))
        })
        .collect::<Result<Vec<_>>>()?;
    for (l, (rho, e)) in exact.iter().enumerate() {
        let w = weights[l + 1];
        total.add(w * rho);
        err += w.norm() * e;
    }

    // Orders k = N..K-1 summed over mn > L; stop once the ρ_K bound is negligible.
    let beta_plus = (1.0 - s1.re - s2.re - z.re).max(0.0);
    let growth = (PI * z.im.abs() / 2.0).exp();
    let tail_bound = |k: usize| -> f64 {
        let tk = pochhammer(a, k as u32).norm() * pochhammer(s2, k as u32).norm() / (1..=k).map(|j| j as f64).product::<f64>();
        let p = k as f64 + a.re - beta_plus;
        4.0 * tk * growth * step.powf(-a.re - k as f64) * divisor_tail_bound(limit, p)
    };
    let target = 1e-3 * req.tolerance;
    let mut k = n_order;
    let mut orders = 0;
    let mut bound = tail_bound(k);
    while k < k_max && bound > target.min(1e-16 * total.magnitude().max(1.0)) {
        let (d, e) = hyperbola_complement(&chi1, s1 + s2 + k as f64, &chi2b, k as f64 + 1.0 - z, limit)?;
        total.add(coef[k] * d);
        err += coef[k].norm() * e;
        k += 1;
        orders += 1;
        bound = tail_bound(k);
    }

    let value = pref * total.value();
    let rounding = total.rounding_error(16.0 * f64::EPSILON * (1.0 + z.norm() * (limit as f64).ln()));
    let error_estimate = pref.norm() * (err + bound + rounding);
    if !(value.re.is_finite() && value.im.is_finite() && error_estimate.is_finite()) {
        return Err(Error::NonFinite("psi_series"));
    }
    Ok(EvalResult {
        value,
        method: Method::PsiSeries,
        error_estimate,
        terms_summed: lattice_count(limit as f64) + (n_order + orders) as u64,
        elapsed_ms: timer.ms(),
        partitions: 1,
    })
}
