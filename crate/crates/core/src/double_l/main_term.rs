//! Explicit main term of L₂ in the strip 0 < σ₂ < 1:
//!
//! even χ₂: 2(2π)^{s₂-1} τ(χ₂) Γ(1-s₂) q^{-s₂} Σ_{mn<=q|t₂|/2π} χ₁(m)χ̄₂(n) sin(πs₂/2 + 2πmn/q) / (m^{s₁} n^{1-s₂})
//!
//! odd χ₂: the same prefactor divided by i, with cos in place of sin.

use super::tails::lattice_count;
use super::{evaluate, require_primitive, EvalRequest, EvalResult, Method};
use crate::characters::{gauss_sum, DirichletCharacter};
use crate::complex::{c, real_pow, ComplexValue, I};
use crate::error::{domain, Error, Result};
use crate::special_fn::ln_gamma;
use crate::sum::{pairwise_merge, CompensatedSum};
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize)]
pub struct MainTermResult {
    #[serde(with = "crate::complex::serde_re_im")]
    pub main_term: ComplexValue,
    /// q|t₂|/(2π)
    pub cutoff: f64,
    /// Number of (m, n) with mn <= cutoff.
    pub lattice_points: u64,
    /// Reference value minus main term, when a reference was computed.
    #[serde(with = "crate::complex::serde_opt_re_im")]
    pub residual: Option<ComplexValue>,
    pub reference: Option<EvalResult>,
    /// max(0, 1 - σ₁ - σ₂)
    pub delta: f64,
    /// κ₂; selects the sin (0) or cos (1) branch.
    pub parity_branch: u8,
    /// Rounding estimate for the main term itself.
    pub error_estimate: f64,
}

pub fn theorem2_main_term(
    s1: ComplexValue,
    s2: ComplexValue,
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
) -> Result<MainTermResult> {
    if !(s2.re > 0.0 && s2.re < 1.0) {
        return domain(format!("main term needs 0 < σ₂ < 1; got {}", s2.re));
    }
    if s1.re + s2.re <= 0.0 {
        return domain(format!("main term needs σ₁ + σ₂ > 0; got {}", s1.re + s2.re));
    }
    if s2.im.abs() < 2.0 {
        return domain(format!("main term needs |t₂| >= 2; got {}", s2.im.abs()));
    }
    if chi1.modulus() != chi2.modulus() {
        return domain("characters must share the modulus");
    }
    require_primitive(chi1, "χ₁")?;
    require_primitive(chi2, "χ₂")?;
    let q = chi1.modulus();
    let qf = q as f64;
    let kappa2 = chi2.parity();
    let chi2b = chi2.conj();
    let cutoff = qf * s2.im.abs() / (2.0 * PI);

    // Γ(1-s₂) e^{±iπs₂/2} stays bounded where Γ and the trig factor alone
    // would under- and overflow.
    let lg = ln_gamma(1.0 - s2)?;
    let e_plus = (lg + I * (PI * s2 / 2.0)).exp();
    let e_minus = (lg - I * (PI * s2 / 2.0)).exp();
    let kernel = |l: u64| -> ComplexValue {
        let theta = 2.0 * PI * ((l % q) as f64) / qf;
        let rot = c(theta.cos(), theta.sin());
        let up = e_plus * rot;
        let down = e_minus * rot.conj();
        if kappa2 == 0 {
            (up - down) / (2.0 * I)
        } else {
            (up + down) / 2.0
        }
    };

    let m_max = cutoff.floor() as u64;
    let mut rows = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let mut acc = CompensatedSum::new();
        let a = chi1.value(m);
        if a.norm() != 0.0 {
            let am = a * real_pow(m as f64, -s1);
            for n in 1..=(cutoff / m as f64).floor() as u64 {
                let b = chi2b.value(n);
                if b.norm() == 0.0 {
                    continue;
                }
                acc.add(am * b * real_pow(n as f64, s2 - 1.0) * kernel(m * n));
            }
        }
        rows.push(acc);
    }
    let sum = pairwise_merge(&rows);
    let tau = gauss_sum(chi2).value;
    let mut pref = 2.0 * real_pow(2.0 * PI, s2 - 1.0) * tau * real_pow(qf, -s2);
    if kappa2 == 1 {
        pref /= I;
    }
    let main_term = pref * sum.value();
    if !(main_term.re.is_finite() && main_term.im.is_finite()) {
        return Err(Error::NonFinite("theorem2_main_term"));
    }
    let phase = f64::EPSILON * (8.0 + (s1.norm() + s2.norm()) * (cutoff.max(1.0)).ln());
    Ok(MainTermResult {
        main_term,
        cutoff,
        lattice_points: lattice_count(cutoff),
        residual: None,
        reference: None,
        delta: (1.0 - s1.re - s2.re).max(0.0),
        parity_branch: kappa2,
        error_estimate: pref.norm() * sum.rounding_error(phase),
    })
}

impl MainTermResult {
    /// Fills `reference` and `residual` from the first evaluator that
    /// succeeds, in the order psi-series, integral, direct.
    pub fn with_reference(
        mut self,
        s1: ComplexValue,
        s2: ComplexValue,
        chi1: &DirichletCharacter,
        chi2: &DirichletCharacter,
    ) -> Result<Self> {
        let mut last = None;
        for method in [Method::PsiSeries, Method::Integral, Method::Direct] {
            let req = EvalRequest::new(s1, s2, chi1, chi2, method);
            match evaluate(&req) {
                Ok(r) => {
                    self.residual = Some(r.value - self.main_term);
                    self.reference = Some(r);
                    return Ok(self);
                }
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap_or_else(|| Error::Regime("no reference evaluator applies".into())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::primitive_characters;

    #[test]
    fn empty_below_first_lattice_point() {
        let chi = &primitive_characters(3).unwrap()[0];
        let r = theorem2_main_term(c(1.0, 0.0), c(0.5, 2.0), chi, chi).unwrap();
        assert!(r.cutoff < 1.0);
        assert_eq!(r.lattice_points, 0);
        assert_eq!(r.main_term, c(0.0, 0.0));
        assert_eq!(r.parity_branch, 1);
    }

    #[test]
    fn single_term_by_hand() {
        // cutoff in [1, 2): only (1, 1) contributes.
        let chi = &primitive_characters(5).unwrap()[1];
        assert_eq!(chi.parity(), 0);
        let s2 = c(0.5, 2.0);
        let s1 = c(0.75, 0.0);
        let r = theorem2_main_term(s1, s2, chi, chi).unwrap();
        assert_eq!(r.lattice_points, 1);
        let tau = gauss_sum(chi).value;
        let gamma = crate::special_fn::complex_gamma(1.0 - s2).unwrap();
        let expect =
            2.0 * real_pow(2.0 * PI, s2 - 1.0) * tau * gamma * real_pow(5.0, -s2) * (PI * s2 / 2.0 + 2.0 * PI / 5.0).sin();
        assert!((r.main_term - expect).norm() < 1e-13 * expect.norm(), "{} vs {expect}", r.main_term);
    }

    #[test]
    fn hypotheses_enforced() {
        let chi = &primitive_characters(3).unwrap()[0];
        assert!(theorem2_main_term(c(1.0, 0.0), c(0.5, 1.5), chi, chi).is_err());
        assert!(theorem2_main_term(c(1.0, 0.0), c(1.2, 5.0), chi, chi).is_err());
        assert!(theorem2_main_term(c(-0.8, 0.0), c(0.5, 5.0), chi, chi).is_err());
    }
}
