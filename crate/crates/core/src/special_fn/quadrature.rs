//! Double-exponential (exp-sinh) quadrature on [0, ∞).

use crate::complex::{c, ComplexValue};
use std::f64::consts::FRAC_PI_2;

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: ComplexValue,
    /// Difference between the last two refinement levels.
    pub abs_error: f64,
    /// Σ |w f| at the finest level; measures cancellation.
    pub magnitude: f64,
    pub evaluations: usize,
}

/// Integrates `f` over (0, ∞) with u = exp(π/2 sinh τ). `f` must decay at
/// least exponentially at infinity and be integrable at 0.
pub fn exp_sinh<F>(f: F, rel_tol: f64, max_level: u32) -> QuadResult
where
    F: Fn(f64) -> ComplexValue,
{
    let eval = |tau: f64| -> (ComplexValue, f64) {
        let sh = FRAC_PI_2 * tau.sinh();
        let u = sh.exp();
        if !u.is_finite() || u == 0.0 {
            return (c(0.0, 0.0), 0.0);
        }
        let w = FRAC_PI_2 * tau.cosh() * u;
        let v = f(u) * w;
        if v.re.is_finite() && v.im.is_finite() {
            (v, v.norm())
        } else {
            (c(0.0, 0.0), 0.0)
        }
    };

    let mut h = 0.5f64;
    let mut evaluations = 0usize;
    // Level 0: all nodes k h, walking outwards until the terms die off.
    let mut sum = c(0.0, 0.0);
    let mut mag = 0.0;
    {
        let (v, m) = eval(0.0);
        sum += v;
        mag += m;
        evaluations += 1;
        for dir in [1.0, -1.0] {
            let mut k = 1;
            loop {
                let (v, m) = eval(dir * k as f64 * h);
                evaluations += 1;
                sum += v;
                mag += m;
                if (m <= 1e-18 * mag && k > 3) || k > 64 {
                    break;
                }
                k += 1;
            }
        }
    }
    let mut estimate = sum * h;
    let mut abs_error = f64::INFINITY;
    let mut level = 0;
    while level < max_level {
        level += 1;
        h *= 0.5;
        // New nodes are the odd multiples of the halved step.
        let mut add = c(0.0, 0.0);
        for dir in [1.0, -1.0] {
            let mut k = 1;
            loop {
                let (v, m) = eval(dir * k as f64 * h);
                evaluations += 1;
                add += v;
                mag += m;
                if (m <= 1e-18 * mag && k > 7) || (k as f64) * h > 8.0 {
                    break;
                }
                k += 2;
            }
        }
        sum += add;
        let next = sum * h;
        abs_error = (next - estimate).norm();
        estimate = next;
        if level >= 3 && abs_error <= rel_tol * estimate.norm() {
            break;
        }
    }
    QuadResult { value: estimate, abs_error, magnitude: mag * h, evaluations }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

fn gl20() -> &'static [(f64, f64)] {
    static NODES: std::sync::OnceLock<Vec<(f64, f64)>> = std::sync::OnceLock::new();
    NODES.get_or_init(|| gauss_legendre(20))
}

/// Composite 20-point Gauss–Legendre over `panels` equal panels of [a, b].
pub fn gauss_legendre_panels<F>(f: F, a: f64, b: f64, panels: usize) -> QuadResult
where
    F: Fn(f64) -> ComplexValue,
{
    let rule = gl20();
    let width = (b - a) / panels as f64;
    let mut sum = crate::sum::CompensatedSum::new();
    let mut mag = 0.0;
    for p in 0..panels {
        let lo = a + width * p as f64;
        let mid = lo + 0.5 * width;
        let mut panel = c(0.0, 0.0);
        for &(x, w) in rule {
            let v = f(mid + 0.5 * width * x) * (0.5 * width * w);
            mag += v.norm();
            panel += v;
        }
        sum.add(panel);
    }
    let value = sum.value();
    QuadResult { value, abs_error: 4.0 * f64::EPSILON * mag, magnitude: mag, evaluations: panels * rule.len() }
}

/// Tanh-sinh quadrature on [a, b]; tolerates integrable endpoint singularities.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, rel_tol: f64, max_level: u32) -> QuadResult
where
    F: Fn(f64) -> ComplexValue,
{
    let half = 0.5 * (b - a);
    // Evaluate with distances to the nearer endpoint to keep them accurate.
    let eval = |tau: f64| -> (ComplexValue, f64) {
        let sh = FRAC_PI_2 * tau.sinh();
        let ch = sh.cosh();
        let w = FRAC_PI_2 * tau.cosh() / (ch * ch);
        let dist = half / (sh.exp() * ch); // distance to b from the tanh form
        let x = if tau >= 0.0 { b - dist } else { a + half / ((-sh).exp() * ch) };
        if !(x > a && x < b) {
            return (c(0.0, 0.0), 0.0);
        }
        let v = f(x) * (w * half);
        if v.re.is_finite() && v.im.is_finite() {
            (v, v.norm())
        } else {
            (c(0.0, 0.0), 0.0)
        }
    };
    let mut h = 0.5f64;
    let mut evaluations = 1usize;
    let (v0, m0) = eval(0.0);
    let mut sum = v0;
    let mut mag = m0;
    let walk = |start: usize, step: usize, h: f64, sum: &mut ComplexValue, mag: &mut f64, evals: &mut usize| {
        for dir in [1.0, -1.0] {
            let mut k = start;
            while (k as f64) * h <= 4.5 {
                let (v, m) = eval(dir * k as f64 * h);
                *evals += 1;
                *sum += v;
                *mag += m;
                k += step;
            }
        }
    };
    walk(1, 1, h, &mut sum, &mut mag, &mut evaluations);
    let mut estimate = sum * h;
    let mut abs_error = f64::INFINITY;
    for level in 1..=max_level {
        h *= 0.5;
        walk(1, 2, h, &mut sum, &mut mag, &mut evaluations);
        let next = sum * h;
        abs_error = (next - estimate).norm();
        estimate = next;
        if level >= 3 && abs_error <= rel_tol * estimate.norm() {
            break;
        }
    }
    QuadResult { value: estimate, abs_error, magnitude: mag * h, evaluations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_integrals() {
        // ∫ e^{-u} u^{-1/2} du = √π, endpoint singularity at 0.
        let r = exp_sinh(|u| c((-u).exp() / u.sqrt(), 0.0), 1e-15, 10);
        assert!((r.value.re - std::f64::consts::PI.sqrt()).abs() < 1e-14, "{r:?}");
        // ∫ e^{-u} cos(u) du = 1/2
        let r = exp_sinh(|u| c((-u).exp() * u.cos(), 0.0), 1e-15, 10);
        assert!((r.value.re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn finite_interval_rules() {
        let r = gauss_legendre_panels(|x| c(x.cos(), 0.0), 0.0, 10.0, 7);
        assert!((r.value.re - 10f64.sin()).abs() < 1e-14);
        // ∫_0^1 x^{-1/2} dx = 2
        let r = tanh_sinh(|x| c(1.0 / x.sqrt(), 0.0), 0.0, 1.0, 1e-14, 8);
        assert!((r.value.re - 2.0).abs() < 1e-12, "{r:?}");
        let r = tanh_sinh(|x| c(x.sqrt(), 0.0), 2.0, 3.0, 1e-14, 8);
        assert!((r.value.re - (2.0 / 3.0) * (3f64.powf(1.5) - 2f64.powf(1.5))).abs() < 1e-13);
    }
}
