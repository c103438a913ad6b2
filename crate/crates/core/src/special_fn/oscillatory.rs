//! The integrals C(ξ, s) = ∫_ξ^∞ u^{-s} cos u du and
//! S(ξ, s) = ∫_ξ^∞ u^{-s} sin u du, and their Hardy–Littlewood regimes.
//!
//! With P = C - iS and Q = C + iS,
//! P = ξ^{1-s} e^{-iξ} Ψ(1, 2-s; iξ) and Q = ξ^{1-s} e^{iξ} Ψ(1, 2-s; -iξ),
//! which are e^{∓πi(1-s)/2} Γ(1-s, ±iξ) with the large phase factors
//! cancelled analytically.

use super::gamma::ln_gamma;
use super::psi::tricomi_psi;
use crate::complex::{c, ComplexValue, I};
use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HlRegime {
    /// ξ < A₀|t|
    #[serde(rename = "HL1")]
    Hl1,
    /// A₀|t| < ξ < |t|
    #[serde(rename = "HL2")]
    Hl2,
    /// |t| < ξ < A₁|t|
    #[serde(rename = "HL3")]
    Hl3,
    /// ξ > A₁|t|
    #[serde(rename = "HL4")]
    Hl4,
    /// On a boundary, or t = 0: only the universal estimate applies.
    #[serde(rename = "generic")]
    Generic,
}

impl HlRegime {
    pub fn classify(xi: f64, t: f64, a0: f64, a1: f64) -> HlRegime {
        let at = t.abs();
        if at == 0.0 {
            HlRegime::Generic
        } else if xi < a0 * at {
            HlRegime::Hl1
        } else if xi > a0 * at && xi < at {
            HlRegime::Hl2
        } else if xi > at && xi < a1 * at {
            HlRegime::Hl3
        } else if xi > a1 * at {
            HlRegime::Hl4
        } else {
            HlRegime::Generic
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HlRegime::Hl1 => "HL1",
            HlRegime::Hl2 => "HL2",
            HlRegime::Hl3 => "HL3",
            HlRegime::Hl4 => "HL4",
            HlRegime::Generic => "generic",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct OscillatoryIntegralResult {
    #[serde(with = "crate::complex::serde_re_im")]
    pub cosine_part: ComplexValue,
    #[serde(with = "crate::complex::serde_re_im")]
    pub sine_part: ComplexValue,
    pub regime: HlRegime,
    /// Absolute error estimate shared by both parts.
    pub error_estimate: f64,
}

/// (C, S, absolute error) without the regime bookkeeping.
pub fn cosine_sine_integrals(xi: f64, s: ComplexValue) -> Result<(ComplexValue, ComplexValue, f64)> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::Domain(format!("oscillatory integral needs ξ > 0, got {xi}")));
    }
    let cc = c(2.0, 0.0) - s;
    let one = c(1.0, 0.0);
    let pow = (one - s) * xi.ln();
    let p_psi = tricomi_psi(one, cc, c(0.0, xi))?;
    let q_psi = tricomi_psi(one, cc, c(0.0, -xi))?;
    let p_pre = (pow - I * xi).exp();
    let q_pre = (pow + I * xi).exp();
    let p = p_pre * p_psi.value;
    let q = q_pre * q_psi.value;
    let cos_part = (p + q) * 0.5;
    let sin_part = (q - p) / c(0.0, 2.0);
    let pre_err = 2.0 * f64::EPSILON * (1.0 + pow.norm() + xi);
    let err = p_pre.norm() * p_psi.remainder_bound + q_pre.norm() * q_psi.remainder_bound + pre_err * (p.norm() + q.norm());
    Ok((cos_part, sin_part, err))
}

pub fn oscillatory_integral(xi: f64, s: ComplexValue, a0: f64, a1: f64) -> Result<OscillatoryIntegralResult> {
    if !(a0 > 0.0 && a0 < 1.0) || !(a1 > 1.0) {
        return Err(Error::Domain(format!("need 0 < A0 < 1 < A1, got A0 = {a0}, A1 = {a1}")));
    }
    let (cosine_part, sine_part, error_estimate) = cosine_sine_integrals(xi, s)?;
    Ok(OscillatoryIntegralResult { cosine_part, sine_part, regime: HlRegime::classify(xi, s.im, a0, a1), error_estimate })
}

/// The ξ → 0 limits (Γ(1-s) sin(πs/2), Γ(1-s) cos(πs/2)) of C and S.
pub fn hl_main_terms(s: ComplexValue) -> Result<(ComplexValue, ComplexValue)> {
    let g = ln_gamma(c(1.0, 0.0) - s)?;
    let w = s * FRAC_PI_2;
    // sin and cos of w grow like e^{π|t|/2}; fold that into the exponent.
    let shift = w.im.abs();
    let ep = (I * w - shift).exp();
    let em = (-I * w - shift).exp();
    let sin_w = (ep - em) / c(0.0, 2.0);
    let cos_w = (ep + em) * 0.5;
    let scale = (g + shift).exp();
    Ok((scale * sin_w, scale * cos_w))
}

/// The size the HL lemma predicts for the regime's remainder: for HL1–HL3
/// |I - main| (main = 0 in HL2 and HL3 shape only, see below), for HL4 |I|.
///
/// HL1: ξ^{1-σ}/|t|, HL2: ξ^{2-σ}/(|t|(|t|-ξ)), HL3: ξ^{1-σ}/(ξ-|t|),
/// HL4: ξ^{1-σ}, and the universal HL5: ξ^{1-σ}|t|^{1/2}.
pub fn hl_shape(regime: HlRegime, xi: f64, s: ComplexValue) -> f64 {
    let t = s.im.abs();
    let base = xi.powf(1.0 - s.re);
    match regime {
        HlRegime::Hl1 => base / t,
        HlRegime::Hl2 => base * xi / (t * (t - xi)),
        HlRegime::Hl3 => base / (xi - t),
        HlRegime::Hl4 => base,
        HlRegime::Generic => hl5_shape(xi, s),
    }
}

pub fn hl5_shape(xi: f64, s: ComplexValue) -> f64 {
    xi.powf(1.0 - s.re) * s.im.abs().max(1.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresnel_limit() {
        let (cc, ss, _) = cosine_sine_integrals(1e-10, c(0.5, 0.0)).unwrap();
        let expect = (std::f64::consts::PI / 2.0).sqrt();
        // C(ξ) = √(π/2) - 2√ξ + O(ξ^{5/2})
        assert!((cc.re - (expect - 2.0 * 1e-5)).abs() < 1e-9, "{cc}");
        assert!((ss.re - expect).abs() < 1e-9, "{ss}");
    }

    #[test]
    fn regimes() {
        assert_eq!(HlRegime::classify(1.0, 20.0, 0.5, 2.0), HlRegime::Hl1);
        assert_eq!(HlRegime::classify(15.0, -20.0, 0.5, 2.0), HlRegime::Hl2);
        assert_eq!(HlRegime::classify(25.0, 20.0, 0.5, 2.0), HlRegime::Hl3);
        assert_eq!(HlRegime::classify(100.0, 20.0, 0.5, 2.0), HlRegime::Hl4);
        assert_eq!(HlRegime::classify(20.0, 20.0, 0.5, 2.0), HlRegime::Generic);
        assert!(oscillatory_integral(0.0, c(0.5, 1.0), 0.5, 2.0).is_err());
        assert!(oscillatory_integral(1.0, c(0.5, 1.0), 1.5, 2.0).is_err());
    }

    #[test]
    fn main_terms_real_half() {
        let (ms, mc) = hl_main_terms(c(0.5, 0.0)).unwrap();
        let expect = (std::f64::consts::PI / 2.0).sqrt();
        assert!((ms.re - expect).abs() < 1e-14 && (mc.re - expect).abs() < 1e-14);
    }
}
