//! L₂ from its oscillatory-integral representation:
//!
//! L₂ = 2(2π)^{s₂-1} q^{1/2-s₂} ε(χ₂) Σ_{m,n} χ₁(m)χ̄₂(n) m^{-s₁} n^{s₂-1} B(2πmn/q)
//!
//! with B(ξ) = cos ξ C(ξ) + sin ξ S(ξ) for even χ₂ and
//! -sin ξ C(ξ) + cos ξ S(ξ) for odd χ₂, where C, S = ∫_ξ^∞ x^{-s₂} (cos, sin) x dx.
//!
//! B depends on mn only. It is evaluated exactly for mn <= L; past L the
//! integration-by-parts expansion B(ξ) = Σ_p b_p ξ^{-s₂-p} is summed in
//! closed form and its remainder bounded.

use super::tails::{divisor_convolution, divisor_tail_bound, hyperbola_complement, lattice_count, weighted_powers};
use super::{epsilon_factor, require_primitive, EvalRequest, EvalResult, Method, Timer};
use crate::complex::{c, real_pow, ComplexValue};
use crate::error::{domain, Error, Result};
use crate::special_fn::oscillatory::cosine_sine_integrals;
use crate::special_fn::pochhammer;
use crate::sum::CompensatedSum;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Largest order p of the ξ^{-s₂-p} expansion summed past the exact region.
const MAX_ORDER: usize = 30;

/// The parity-selected combination B(ξ) with its absolute error.
pub fn integral_kernel(xi: f64, s2: ComplexValue, kappa2: u8) -> Result<(ComplexValue, f64)> {
    let (cos_part, sin_part, err) = cosine_sine_integrals(xi, s2)?;
    let (sn, cs) = xi.sin_cos();
    let value = if kappa2 == 0 { cos_part * cs + sin_part * sn } else { -cos_part * sn + sin_part * cs };
    Ok((value, 2.0 * err + 4.0 * f64::EPSILON * (cos_part.norm() + sin_part.norm())))
}

pub fn integral_repr(req: &EvalRequest) -> Result<EvalResult> {
    let timer = Timer::start();
    req.validate_common()?;
    let (chi1, chi2) = req.characters()?;
    require_primitive(&chi1, "χ₁")?;
    require_primitive(&chi2, "χ₂")?;
    let (s1, s2) = (req.s1, req.s2);
    if req.z.norm() != 0.0 {
        return domain("integral representation is for z = 0 only");
    }
    if s2.re <= 0.0 || s1.re + s2.re <= 1.2 {
        return domain(format!(
            "integral representation needs σ₂ > 0 and σ₁ + σ₂ > 1.2; got σ₂ = {}, σ₁ + σ₂ = {}",
            s2.re,
            s1.re + s2.re
        ));
    }
    let q = chi1.modulus();
    let qf = q as f64;
    let kappa2 = chi2.parity();
    let chi2b = chi2.conj();
    let step = 2.0 * PI / qf;
    let pref = 2.0 * real_pow(2.0 * PI, s2 - 1.0) * real_pow(qf, 0.5 - s2) * epsilon_factor(&chi2);

    let reach = 3.0 * (s2.norm() + MAX_ORDER as f64);
    let limit = ((reach / step).ceil() as u64).max(2 * q);
    if limit > req.caps.m_remainder {
        return Err(Error::Regime(format!(
            "integral representation needs mn <= {limit}, above the cap {}",
            req.caps.m_remainder
        )));
    }

    // A(ℓ) = Σ_{mn=ℓ} χ₁(m)χ̄₂(n) m^{-s₁} n^{s₂-1}
    let f = weighted_powers(&chi1, s1, limit);
    let g = weighted_powers(&chi2b, 1.0 - s2, limit);
    let weights = divisor_convolution(&f, &g, limit);
    let kernels: Vec<(ComplexValue, f64)> = (1..=limit)
        .into_par_iter()
        .map(|l| {
            if weights[l as usize].norm() == 0.0 {
                Ok((c(0.0, 0.0), 0.0))
            } else {
                integral_kernel(step * l as f64, s2, kappa2)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = CompensatedSum::new();
    let mut err = 0.0;
    for (l, (b, e)) in kernels.iter().enumerate() {
        let w = weights[l + 1];
        total.add(w * b);
        err += w.norm() * e;
    }

    // B(ξ) ~ Σ_j (-1)^j (s₂)_p ξ^{-s₂-p}, p = 2j + 1 - κ₂. Each order sums
    // over mn > L to (2π/q)^{-s₂-p} Σ χ₁(m) m^{-s₁-s₂-p} χ̄₂(n) n^{-1-p}.
    // The remainder after order p is at most |(s₂)_P| ξ^{-σ₂-P}(1 + |s₂+P|/(σ₂+P))
    // for the next order P, and |A(ℓ)| <= d(ℓ) ℓ^{σ₂-1}.
    let remainder = |p_next: usize| -> f64 {
        let pf = p_next as f64;
        let cp = pochhammer(s2, p_next as u32).norm() * (1.0 + (s2 + pf).norm() / (s2.re + pf));
        cp * step.powf(-s2.re - pf) * divisor_tail_bound(limit, 1.0 + pf)
    };
    let mut p = 1 - kappa2 as usize;
    let mut sign = 1.0;
    let mut bound = f64::INFINITY;
    let target = 1e-3 * req.tolerance;
    let mut orders = 0u64;
    while p <= MAX_ORDER {
        let pf = p as f64;
        let (d, e) = hyperbola_complement(&chi1, s1 + s2 + pf, &chi2b, c(1.0 + pf, 0.0), limit)?;
        let coef = pochhammer(s2, p as u32) * sign * real_pow(step, -s2 - pf);
        total.add(coef * d);
        err += coef.norm() * e;
        orders += 1;
        bound = remainder(p + 2);
        if bound <= target.min(1e-16 * total.magnitude().max(1.0)) {
            break;
        }
        p += 2;
        sign = -sign;
    }

    let value = pref * total.value();
    let rounding = total.rounding_error(16.0 * f64::EPSILON * (1.0 + s2.norm() * (limit as f64).ln()));
    let error_estimate = pref.norm() * (err + bound + rounding);
    if !(value.re.is_finite() && value.im.is_finite() && error_estimate.is_finite()) {
        return Err(Error::NonFinite("integral_repr"));
    }
    Ok(EvalResult {
        value,
        method: Method::Integral,
        error_estimate,
        terms_summed: lattice_count(limit as f64) + orders,
        elapsed_ms: timer.ms(),
        partitions: 1,
    })
}
