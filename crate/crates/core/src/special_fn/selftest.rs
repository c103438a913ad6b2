//! Identity suite for the special-function layer, run by
//! `double-ell selftest identities`.

use super::gamma::complex_gamma;
use super::hyp1f1::kummer_1f1;
use super::incgamma::upper_incomplete_gamma;
use super::psi::{psi_asymptotic, psi_contour, psi_laplace, psi_series, tricomi_psi};
use crate::complex::{c, ComplexValue};
use crate::error::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub samples: usize,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Inputs that failed to evaluate at all; counted as failures.
    pub evaluation_failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub grid_size: usize,
    pub seed: u64,
    pub all_passed: bool,
    pub checks: Vec<IdentityCheck>,
}

/// ₁F₁ reference values (a, c, x, ₁F₁(a; c; x)) computed at 40 digits.
pub const HYP1F1_GOLDEN: [(ComplexValue, ComplexValue, ComplexValue, ComplexValue); 7] = [
    (c(1.0, 0.0), c(1.5, -3.0), c(0.0, 2.6927937030769655), c(0.531_041_741_642_119_7, 0.087_064_640_597_041_12)),
    (c(0.5, 0.0), c(1.5, 0.0), c(-2.0, 0.0), c(0.598_144_006_661_304_1, 0.0)),
    (c(2.0, 1.0), c(3.5, -2.0), c(10.0, 5.0), c(-262.812_616_885_877_3, 101.257_713_304_191_82)),
    (c(1.0, 0.0), c(1.5, -10.0), c(0.0, 39.0), c(0.204_006_311_479_466_52, 0.011_435_987_998_362_714)),
    (c(-0.5, 0.0), c(0.7, 4.0), c(0.0, -25.0), c(2.682_946_390_751_623_8, 0.140_153_532_959_812_37)),
    (c(3.0, 0.0), c(2.5, 0.0), c(5.0, 0.0), c(262.490_278_569_139_15, 0.0)),
    (c(0.25, 2.0), c(1.25, -1.0), c(-8.0, 3.0), c(-2.194_376_356_632_71, 0.546_609_932_698_752_1)),
];

struct Tally {
    name: &'static str,
    tolerance: f64,
    samples: usize,
    worst: f64,
    failures: usize,
}

impl Tally {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Tally { name, tolerance, samples: 0, worst: 0.0, failures: 0 }
    }

    fn record(&mut self, lhs: Result<ComplexValue>, rhs: Result<ComplexValue>) {
        self.samples += 1;
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                let err = (l - r).norm() / l.norm().max(r.norm()).max(f64::MIN_POSITIVE);
                if err.is_nan() {
                    self.failures += 1;
                } else {
                    self.worst = self.worst.max(err);
                }
            }
            _ => self.failures += 1,
        }
    }

    fn finish(self) -> IdentityCheck {
        IdentityCheck {
            name: self.name.to_string(),
            samples: self.samples,
            max_rel_error: self.worst,
            tolerance: self.tolerance,
            passed: self.failures == 0 && self.worst <= self.tolerance,
            evaluation_failures: self.failures,
        }
    }
}

/// s₂ with σ₂ in (0, 1) and 0.5 <= |t₂| <= 20, as met by the evaluators.
fn random_s2(rng: &mut ChaCha8Rng) -> ComplexValue {
    let t: f64 = rng.gen_range(0.5..20.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    c(rng.gen_range(0.02..0.98), sign * t)
}

fn random_axis_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> ComplexValue {
    let r: f64 = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        c(0.0, r)
    } else {
        c(0.0, -r)
    }
}

pub fn run_identity_suite(grid_size: usize, seed: u64) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x0 = super::SpecialOptions::default().series_cutoff;
    let one = c(1.0, 0.0);
    let mut checks = Vec::new();

    // Ψ(a, c; x) = x^{1-c} Ψ(a-c+1, 2-c; x)
    let mut t = Tally::new("psi_kummer_transform", 1e-9);
    for _ in 0..grid_size {
        let s2 = random_s2(&mut rng);
        let z = if rng.gen_bool(0.5) { c(0.0, 0.0) } else { c(-0.5, 0.0) };
        let a = if rng.gen_bool(0.5) { one } else { one - z };
        let cc = c(2.0, 0.0) - s2 - z;
        let x = random_axis_point(&mut rng, 0.5, 2.0 * x0);
        let lhs = tricomi_psi(a, cc, x).map(|e| e.value);
        let rhs = tricomi_psi(a - cc + 1.0, c(2.0, 0.0) - cc, x).map(|e| ((one - cc) * x.ln()).exp() * e.value);
        t.record(lhs, rhs);
    }
    checks.push(t.finish());

    // z^a e^{-z} Ψ(1, a+1; z) against Γ(a) - z^a/a ₁F₁(a; a+1; -z)
    let mut t = Tally::new("incomplete_gamma_relation", 1e-9);
    for _ in 0..grid_size {
        let a = one - random_s2(&mut rng);
        let z = random_axis_point(&mut rng, 0.5, x0 * 0.75);
        let lhs = upper_incomplete_gamma(a, z);
        let rhs = complex_gamma(a).and_then(|g| kummer_1f1(a, a + 1.0, -z).map(|m| g - (a * z.ln()).exp() / a * m));
        t.record(lhs, rhs);
    }
    checks.push(t.finish());

    // Γ(a+1, z) = a Γ(a, z) + z^a e^{-z}
    let mut t = Tally::new("incomplete_gamma_recurrence", 1e-9);
    for _ in 0..grid_size {
        let a = one - random_s2(&mut rng);
        let z = random_axis_point(&mut rng, 0.5, 2.0 * x0);
        let lhs = upper_incomplete_gamma(a + 1.0, z);
        let rhs = upper_incomplete_gamma(a, z).map(|g| a * g + (a * z.ln() - z).exp());
        t.record(lhs, rhs);
    }
    checks.push(t.finish());

    // Γ(s+1) = s Γ(s)
    let mut t = Tally::new("gamma_recurrence", 1e-10);
    for _ in 0..grid_size {
        let s = c(rng.gen_range(-10.0..10.0), rng.gen_range(-30.0..30.0));
        t.record(complex_gamma(s + 1.0), complex_gamma(s).map(|g| s * g));
    }
    checks.push(t.finish());

    let mut t = Tally::new("hyp1f1_golden_values", 1e-10);
    for (a, cc, x, v) in HYP1F1_GOLDEN {
        t.record(kummer_1f1(a, cc, x), Ok(v));
    }
    checks.push(t.finish());

    // Series against the integral regimes and, where it claims enough
    // accuracy, the asymptotic expansion, in the band 0.8 X₀ <= |x| <= 1.25 X₀.
    let mut t = Tally::new("psi_cross_regime", 1e-8);
    for _ in 0..grid_size {
        let s2 = random_s2(&mut rng);
        let cc = c(2.0, 0.0) - s2;
        let x = random_axis_point(&mut rng, 0.8 * x0, 1.25 * x0);
        let series = psi_series(one, cc, x).map(|e| e.value);
        let integral = psi_laplace(one, cc, x, 1e-13)
            .and_then(|l| {
                let contour = psi_contour(one, cc, x, 1e-13)?;
                Ok(if contour.remainder_bound < l.remainder_bound { contour } else { l })
            })
            .map(|e| e.value);
        let series_value = series.as_ref().ok().copied();
        t.record(series, integral);
        let asym = psi_asymptotic(one, cc, x, 25);
        if let (Some(v), true) = (series_value, asym.remainder_bound <= 1e-10 * asym.value.norm()) {
            t.record(Ok(v), Ok(asym.value));
        }
    }
    checks.push(t.finish());

    // Fresnel limit of the oscillatory integral: C(ξ, 1/2) = √(π/2) - 2√ξ + O(ξ^{5/2}).
    let mut t = Tally::new("fresnel_limit", 1e-9);
    for xi in [1e-12, 1e-8, 1e-6] {
        t.record(
            super::oscillatory::cosine_sine_integrals(xi, c(0.5, 0.0)).map(|(cc, _, _)| cc),
            Ok(c(FRAC_PI_2.sqrt() - 2.0 * xi.sqrt(), 0.0)),
        );
    }
    checks.push(t.finish());

    let all_passed = checks.iter().all(|c| c.passed);
    IdentityReport { grid_size, seed, all_passed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let report = run_identity_suite(12, 3);
        for check in &report.checks {
            assert!(check.passed, "{check:?}");
        }
        assert!(report.all_passed);
    }
}
