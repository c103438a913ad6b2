//! The defining double series, summed where it converges absolutely.

use super::{partition, EvalRequest, EvalResult, Method, Timer, DEFAULT_PARTITIONS};
use crate::complex::{c, real_pow, ComplexValue};
use crate::dirichlet_l::PeriodicTail;
use crate::error::{domain, Error, Result};
use crate::sum::{pairwise_merge, CompensatedSum};
use rayon::prelude::*;

const MARGIN: f64 = 0.2;
const PASSES: usize = 8;

/// Σ_{m<=M} χ₁(m) m^{-s₁} Σ_{n>=1} χ₂(n) n^{-z} (m+n)^{-s₂}.
///
/// The inner sum is taken directly up to N and its tail by summation by
/// parts against χ₂; the outer tail m > M is bounded in absolute value.
/// With z = 0 this is L₂ itself.
pub fn direct_sum(req: &EvalRequest) -> Result<EvalResult> {
    let timer = Timer::start();
    req.validate_common()?;
    let (chi1, chi2) = req.characters()?;
    let (s1, s2, z) = (req.s1, req.s2, req.z);
    let x = z.re;
    if s2.re <= 1.0 + (-x).max(0.0) + MARGIN {
        return domain(format!("direct sum needs σ₂ > 1 + max(0, -Re z) + {MARGIN}; σ₂ = {}, Re z = {x}", s2.re));
    }
    if s1.re + s2.re + x <= 2.0 + MARGIN {
        return domain(format!("direct sum needs σ₁ + σ₂ + Re z > {}; got {}", 2.0 + MARGIN, s1.re + s2.re + x));
    }
    if s2.re + x <= 1.0 + MARGIN || s1.re + s2.re <= 1.0 + MARGIN {
        return domain(format!("direct sum needs σ₂ + Re z > {0} and σ₁ + σ₂ > {0}", 1.0 + MARGIN));
    }
    if chi2.is_principal() {
        return domain("direct sum needs a nonprincipal χ₂ for its inner tail");
    }
    let tol = req.tolerance;

    let (m_cut, outer_tail) = outer_cut(s1.re, s2.re, x, tol / 4.0, req.caps.m_direct);

    let tail_sum = PeriodicTail::new(&chi2, PASSES);
    let poch: f64 = (0..PASSES).map(|j| z.norm() + s2.norm() + j as f64).product();
    let s1_sum: f64 = (1..=m_cut).map(|m| (m as f64).powf(-s1.re)).sum();
    let expo = x + PASSES as f64 + s2.re - 1.0;
    let scale = tail_sum.g_max() * s1_sum * poch / (x + PASSES as f64 - 1.0);
    let n_need = (scale / (tol / 4.0)).powf(1.0 / expo);
    let q = chi2.modulus() as f64;
    let n_cut = n_need.max(64.0).max(4.0 * q).max(2.0 * (s2.norm() + z.norm())).ceil() as u64;
    if n_cut > 10_000_000 {
        return Err(Error::Regime(format!("inner cut N = {n_cut} is impractical")));
    }
    let inner_tail = scale * (n_cut as f64).powf(-expo);

    let a: Vec<ComplexValue> =
        (0..=m_cut).into_par_iter().map(|m| if m == 0 { c(0.0, 0.0) } else { chi1.value(m) * real_pow(m as f64, -s1) }).collect();
    let n_top = n_cut + PASSES as u64 + 1;
    let w: Vec<ComplexValue> = (0..=n_top).map(|n| if n == 0 { c(0.0, 0.0) } else { real_pow(n as f64, -z) }).collect();
    let b: Vec<ComplexValue> = (0..=n_top).map(|n| chi2.value(n) * w[n as usize]).collect();
    let pw: Vec<ComplexValue> =
        (0..=m_cut + n_top).into_par_iter().map(|k| if k == 0 { c(0.0, 0.0) } else { real_pow(k as f64, -s2) }).collect();

    let parts: Vec<CompensatedSum> = partition(m_cut, DEFAULT_PARTITIONS)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc = CompensatedSum::new();
            let mut f = [c(0.0, 0.0); PASSES + 1];
            for m in lo..=hi {
                let am = a[m as usize];
                if am.re == 0.0 && am.im == 0.0 {
                    continue;
                }
                let mut inner = c(0.0, 0.0);
                for n in 1..=n_cut {
                    inner += b[n as usize] * pw[(m + n) as usize];
                }
                for (j, fj) in f.iter_mut().enumerate() {
                    let n = (n_cut + 1) as usize + j;
                    *fj = w[n] * pw[m as usize + n];
                }
                inner += tail_sum.boundary(n_cut, &f);
                acc.add(am * inner);
            }
            acc
        })
        .collect();
    let total = pairwise_merge(&parts);

    let top = (m_cut + n_top) as f64;
    let phase = f64::EPSILON * (8.0 + s1.norm() * top.ln() + s2.norm() * top.ln() + z.norm() * top.ln());
    // The inner sums are not tracked term by term; their magnitude is
    // bounded by the absolutely convergent majorant.
    let majorant = majorant_bound(s1.re, s2.re, x);
    let rounding = total.rounding_error(phase) + phase * majorant * (n_cut as f64).sqrt();
    Ok(EvalResult {
        value: total.value(),
        method: Method::Direct,
        error_estimate: outer_tail + inner_tail + rounding,
        terms_summed: m_cut * n_cut,
        elapsed_ms: timer.ms(),
        partitions: DEFAULT_PARTITIONS,
    })
}

/// Coefficients (A₁, p₁, A₂, p₂) with Σ_n n^{-x}(m+n)^{-σ₂} <= A₁ m^{σ₁-p₁} + A₂ m^{σ₁-p₂},
/// so the outer tail is bounded by Σ_{m>M} A₁ m^{-p₁} + A₂ m^{-p₂}.
fn outer_coefficients(sigma1: f64, sigma2: f64, x: f64) -> (f64, f64, f64, f64) {
    // n^{-x} <= n^{-x'} lets us stay away from the logarithmic case x = 1.
    let x = if (x - 1.0).abs() < 0.05 { x - 0.05 } else { x };
    let above = 1.0 / (x + sigma2 - 1.0); // Σ_{n>m} n^{-x-σ₂} <= m^{1-x-σ₂}/(x+σ₂-1)
    if x < 1.0 {
        // Σ_{n<=m} n^{-x} <= 1 + h m^{1-x}
        let h = if x < 0.0 { 2f64.powf(1.0 - x) } else { 1.0 } / (1.0 - x);
        (1.0, sigma1 + sigma2, h + above, sigma1 + sigma2 + x - 1.0)
    } else {
        (1.0 + 1.0 / (x - 1.0), sigma1 + sigma2, above, sigma1 + sigma2 + x - 1.0)
    }
}

fn outer_cut(sigma1: f64, sigma2: f64, x: f64, target: f64, cap: u64) -> (u64, f64) {
    let (a1, p1, a2, p2) = outer_coefficients(sigma1, sigma2, x);
    let bound = |m: f64| a1 * m.powf(1.0 - p1) / (p1 - 1.0) + a2 * m.powf(1.0 - p2) / (p2 - 1.0);
    let need = |a: f64, p: f64| (a / ((p - 1.0) * target / 2.0)).powf(1.0 / (p - 1.0));
    let m = need(a1, p1).max(need(a2, p2)).max(16.0).min(cap.max(16) as f64).ceil();
    (m as u64, bound(m))
}

/// Σ_{m,n} m^{-σ₁} n^{-x} (m+n)^{-σ₂}, bounded crudely from the tail shape.
fn majorant_bound(sigma1: f64, sigma2: f64, x: f64) -> f64 {
    let (a1, p1, a2, p2) = outer_coefficients(sigma1, sigma2, x);
    a1 * p1 / (p1 - 1.0) + a2 * p2 / (p2 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::primitive_characters;

    fn brute(req: &EvalRequest, m_max: u64) -> ComplexValue {
        let (chi1, chi2) = req.characters().unwrap();
        let mut acc = CompensatedSum::new();
        for m in 1..=m_max {
            for n in 1..=m_max {
                let t = chi1.value(m) * chi2.value(n);
                if t.norm() == 0.0 {
                    continue;
                }
                acc.add(t * real_pow(m as f64, -req.s1) * real_pow(n as f64, -req.z) * real_pow((m + n) as f64, -req.s2));
            }
        }
        acc.value()
    }

    #[test]
    fn matches_brute_force_box() {
        // σ₁ = 4, σ₂ = 5: the 400x400 box is accurate to ~1e-12.
        let chi = &primitive_characters(3).unwrap()[0];
        let req = EvalRequest::new(c(4.0, 1.0), c(5.0, -2.0), chi, chi, Method::Direct);
        let r = direct_sum(&req).unwrap();
        let b = brute(&req, 400);
        assert!((r.value - b).norm() < 1e-11 + r.error_estimate, "{} vs {b}", r.value);
        assert!(r.error_estimate < 1e-9);
    }

    #[test]
    fn leading_lattice_points() {
        // At large σ the (1,1) term 2^{-s₂} dominates; the next two are
        // (1,2) and (2,1), the rest are ~2^{-40} smaller.
        let chi = &primitive_characters(5).unwrap()[1];
        let (s1, s2) = (c(60.0, 1.0), c(40.0, -3.0));
        let req = EvalRequest::new(s1, s2, chi, chi, Method::Direct);
        let r = direct_sum(&req).unwrap();
        let lead = real_pow(2.0, -s2)
            * (1.0 + chi.value(2) * real_pow(2.0 / 3.0, s2) + chi.value(2) * real_pow(2.0, -s1) * real_pow(2.0 / 3.0, s2));
        assert!((r.value - lead).norm() < 1e-11 * lead.norm(), "{} vs {lead}", r.value);
    }

    #[test]
    fn margin_enforced() {
        let chi = &primitive_characters(3).unwrap()[0];
        let req = EvalRequest::new(c(2.0, 0.0), c(1.1, 0.0), chi, chi, Method::Direct);
        assert!(matches!(direct_sum(&req), Err(Error::Domain(_))));
        let req = EvalRequest::new(c(0.5, 0.0), c(1.5, 0.0), chi, chi, Method::Direct);
        assert!(matches!(direct_sum(&req), Err(Error::Domain(_))));
    }
}
