//! Growth laws for |L₂| and for the main-term residual, as explicit
//! functions of (q, t₁, t₂, σ₁ + σ₂) with unit constant.

use crate::characters::DirichletCharacter;
use crate::complex::ComplexValue;
use serde::{Deserialize, Serialize};

pub const DEFAULT_EPSILON: f64 = 0.1;

/// predicted = q^{exponent_q} |t₂|^{exponent_t + ε}, plus, when
/// `extra_odd_term` is set,
/// (1 + |t₁+t₂|) q^{3/2+ε} (q|t₂|)^{-min(1, (σ₁+σ₂)/2) + extra_slack}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundModel {
    pub exponent_q: f64,
    pub exponent_t: f64,
    pub epsilon: f64,
    pub extra_odd_term: bool,
    pub delta: f64,
    /// Added to the exponent of q|t₂| in the odd term.
    pub extra_slack: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub measured: f64,
    pub predicted: f64,
    /// measured / predicted
    pub ratio: f64,
    pub main_part: f64,
    pub extra_part: f64,
}

fn delta(sigma_sum: f64) -> f64 {
    (1.0 - sigma_sum).max(0.0)
}

/// |L₂| <= C (q|t₂|)^{1/2+δ+ε}, plus the odd-χ₂ term.
pub fn theorem1_model(sigma_sum: f64, kappa2: u8, epsilon: f64) -> BoundModel {
    let d = delta(sigma_sum);
    BoundModel {
        exponent_q: 0.5 + d + epsilon,
        exponent_t: 0.5 + d,
        epsilon,
        extra_odd_term: kappa2 == 1,
        delta: d,
        extra_slack: 0.0,
    }
}

/// |L₂ - main term| <= C q^{1/2} (q|t₂|)^{δ+ε}, plus the odd-χ₂ term.
pub fn theorem2_model(sigma_sum: f64, kappa2: u8, epsilon: f64) -> BoundModel {
    let d = delta(sigma_sum);
    BoundModel {
        exponent_q: 0.5 + d + epsilon,
        exponent_t: d,
        epsilon,
        extra_odd_term: kappa2 == 1,
        delta: d,
        extra_slack: epsilon,
    }
}

impl BoundModel {
    pub fn main_part(&self, q: u64, t2: f64) -> f64 {
        (q as f64).powf(self.exponent_q) * t2.abs().powf(self.exponent_t + self.epsilon)
    }

    pub fn extra_part(&self, q: u64, t1: f64, t2: f64, sigma_sum: f64) -> f64 {
        if !self.extra_odd_term {
            return 0.0;
        }
        let qf = q as f64;
        let expo = -(1.0f64).min(sigma_sum / 2.0) + self.extra_slack;
        (1.0 + (t1 + t2).abs()) * qf.powf(1.5 + self.epsilon) * (qf * t2.abs()).powf(expo)
    }

    pub fn predicted(&self, q: u64, t1: f64, t2: f64, sigma_sum: f64) -> f64 {
        self.main_part(q, t2) + self.extra_part(q, t1, t2, sigma_sum)
    }

    pub fn check(&self, measured: f64, q: u64, t1: f64, t2: f64, sigma_sum: f64) -> BoundCheck {
        let main_part = self.main_part(q, t2);
        let extra_part = self.extra_part(q, t1, t2, sigma_sum);
        let predicted = main_part + extra_part;
        BoundCheck { measured, predicted, ratio: measured / predicted, main_part, extra_part }
    }
}

/// |value| against the growth law (q|t₂|)^{1/2+δ+ε}, ε = 0.1, plus the
/// odd-χ₂ term.
pub fn theorem1_bound_check(
    s1: ComplexValue,
    s2: ComplexValue,
    _chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    value: ComplexValue,
) -> BoundCheck {
    let model = theorem1_model(s1.re + s2.re, chi2.parity(), DEFAULT_EPSILON);
    model.check(value.norm(), chi2.modulus(), s1.im, s2.im, s1.re + s2.re)
}
