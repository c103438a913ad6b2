//! Lattice sums over mn <= L and their complements, shared by the Ψ and
//! integral evaluators.

use crate::characters::DirichletCharacter;
use crate::complex::{c, real_pow, ComplexValue};
use crate::dirichlet_l::l_function_tail;
use crate::error::Result;
use crate::sum::CompensatedSum;

/// A(ℓ) = Σ_{mn=ℓ} f(m) g(n) for ℓ = 0..=limit (entry 0 is zero); `f` and
/// `g` are indexed from 1. Divisors are visited in increasing m.
pub(crate) fn divisor_convolution(f: &[ComplexValue], g: &[ComplexValue], limit: u64) -> Vec<ComplexValue> {
    let l = limit as usize;
    let mut out = vec![c(0.0, 0.0); l + 1];
    for m in 1..=l {
        let fm = f[m];
        if fm.re == 0.0 && fm.im == 0.0 {
            continue;
        }
        for n in 1..=l / m {
            out[m * n] += fm * g[n];
        }
    }
    out
}

/// χ(n) n^{-w} for n = 0..=limit.
pub(crate) fn weighted_powers(chi: &DirichletCharacter, w: ComplexValue, limit: u64) -> Vec<ComplexValue> {
    (0..=limit)
        .map(|n| {
            let v = chi.value(n);
            if n == 0 || v.norm() == 0.0 {
                c(0.0, 0.0)
            } else {
                v * real_pow(n as f64, -w)
            }
        })
        .collect()
}

/// Σ_{mn>L} χ₁(m) m^{-α} χ₂(n) n^{-β} by the hyperbola split at r = ⌊√L⌋:
/// (m <= r, n > L/m) + (n <= r, m > L/n) + (m > r, n > r). Tails past a
/// cut are Hurwitz-ζ combinations, so nothing cancels against the full
/// product. Returns the value and an absolute error estimate.
pub(crate) fn hyperbola_complement(
    chi1: &DirichletCharacter,
    alpha: ComplexValue,
    chi2: &DirichletCharacter,
    beta: ComplexValue,
    limit: u64,
) -> Result<(ComplexValue, f64)> {
    let r = (limit as f64).sqrt().floor() as u64;
    let r = if (r + 1) * (r + 1) <= limit {
        r + 1
    } else if r * r > limit {
        r - 1
    } else {
        r
    };
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for m in 1..=r {
        let v = chi1.value(m);
        if v.norm() == 0.0 {
            continue;
        }
        let coef = v * real_pow(m as f64, -alpha);
        let (t, e) = l_function_tail(beta, chi2, limit / m)?;
        acc.add(coef * t);
        err += coef.norm() * e;
    }
    for n in 1..=r {
        let v = chi2.value(n);
        if v.norm() == 0.0 {
            continue;
        }
        let coef = v * real_pow(n as f64, -beta);
        let (t, e) = l_function_tail(alpha, chi1, limit / n)?;
        acc.add(coef * t);
        err += coef.norm() * e;
    }
    let (t1, e1) = l_function_tail(alpha, chi1, r)?;
    let (t2, e2) = l_function_tail(beta, chi2, r)?;
    acc.add(t1 * t2);
    err += t1.norm() * e2 + t2.norm() * e1 + e1 * e2;
    let phase = f64::EPSILON * (4.0 + (alpha.norm() + beta.norm()) * (limit as f64 + 1.0).ln());
    Ok((acc.value(), err + acc.rounding_error(phase)))
}

/// Upper bound for Σ_{ℓ>L} d(ℓ) ℓ^{-p}, p > 1, from Σ_{ℓ<=u} d(ℓ) <= u(log u + 1)
/// and partial summation.
pub(crate) fn divisor_tail_bound(limit: u64, p: f64) -> f64 {
    debug_assert!(p > 1.0);
    let l = limit.max(1) as f64;
    let q = p - 1.0;
    p * l.powf(-q) * ((l.ln() + 1.0) / q + 1.0 / (q * q))
}

/// Number of (m, n) with mn <= x.
pub fn lattice_count(x: f64) -> u64 {
    if x < 1.0 {
        return 0;
    }
    let x = x.floor() as u64;
    (1..=x).map(|m| x / m).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::primitive_characters;

    #[test]
    fn complement_matches_brute_force() {
        let chis = primitive_characters(5).unwrap();
        let (a, b) = (&chis[0], &chis[2]);
        let (alpha, beta) = (c(2.3, 4.0), c(2.7, -1.0));
        let limit = 37;
        let (v, e) = hyperbola_complement(a, alpha, b, beta, limit).unwrap();
        // L(α, χ₁) L(β, χ₂) minus the finite part mn <= L
        let la = crate::dirichlet_l::l_function(alpha, a).unwrap().value;
        let lb = crate::dirichlet_l::l_function(beta, b).unwrap().value;
        let mut acc = CompensatedSum::new();
        acc.add(la * lb);
        for m in 1..=limit {
            for n in 1..=limit / m {
                let t = a.value(m) * b.value(n);
                if t.norm() != 0.0 {
                    acc.add(-t * real_pow(m as f64, -alpha) * real_pow(n as f64, -beta));
                }
            }
        }
        assert!((v - acc.value()).norm() < 1e-12, "{v} vs {}", acc.value());
        assert!(e < 1e-13);
    }

    #[test]
    fn divisor_tail_dominates() {
        let exact: f64 = (101..20_000u64)
            .map(|l| (1..=((l as f64).sqrt() as u64)).filter(|d| l % d == 0).count() as f64 * 2.0 * (l as f64).powf(-2.5))
            .sum();
        assert!(divisor_tail_bound(100, 2.5) > exact);
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(lattice_count(0.955), 0);
        assert_eq!(lattice_count(1.0), 1);
        // (1,1) (1,2) (2,1) (1,3) (3,1) (1,4) (2,2) (4,1)
        assert_eq!(lattice_count(4.5), 8);
    }
}
