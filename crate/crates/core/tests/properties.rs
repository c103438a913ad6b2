use double_ell::arith::gcd;
use double_ell::characters::{enumerate_characters, gauss_sum, hyperbola_sum, primitive_characters};
use double_ell::complex::c;
use double_ell::dirichlet_l::{l_function, l_function_direct};
use double_ell::double_l::{evaluate, theorem2_main_term, EvalRequest, Method};
use double_ell::harness::{fit_log_log, read_csv, to_csv_string, SweepRecord};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn modulus() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 4, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_symmetry(q in modulus(), i in 0usize..8, j in 0usize..8,
                            s1 in 0.3f64..2.5, t1 in -5.0f64..5.0, s2 in 0.2f64..2.5, t2 in -25.0f64..25.0) {
        let chis = primitive_characters(q).unwrap();
        let a = &chis[i % chis.len()];
        let b = &chis[j % chis.len()];
        let v = evaluate(&EvalRequest::new(c(s1, t1), c(s2, t2), a, b, Method::PsiSeries)).unwrap();
        let w = evaluate(&EvalRequest::new(c(s1, -t1), c(s2, -t2), &a.conj(), &b.conj(), Method::PsiSeries)).unwrap();
        prop_assert!((v.value - w.value.conj()).norm() <= 1e-9 + v.error_estimate + w.error_estimate,
            "{} vs {}", v.value, w.value);
    }

    #[test]
    fn truncation_order_invariance(q in modulus(), s1 in 0.5f64..2.0, s2 in 0.2f64..1.5, t2 in -20.0f64..20.0) {
        let chis = primitive_characters(q).unwrap();
        let base = EvalRequest::new(c(s1, 0.0), c(s2, t2), &chis[0], &chis[chis.len() - 1], Method::PsiSeries);
        let v2 = evaluate(&base.clone().with_n_order(2)).unwrap().value;
        for n in 3..=6 {
            let v = evaluate(&base.clone().with_n_order(n)).unwrap().value;
            prop_assert!((v - v2).norm() < 1e-8, "N = {}: {} vs {}", n, v, v2);
        }
    }

    #[test]
    fn main_term_counts_lattice_points(t2 in 2.0f64..400.0) {
        let chi = &primitive_characters(3).unwrap()[0];
        let r = theorem2_main_term(c(1.0, 0.0), c(0.5, t2), chi, chi).unwrap();
        let x = (3.0 * t2 / (2.0 * std::f64::consts::PI)).floor() as u64;
        let expected: u64 = (1..=x).map(|m| x / m).sum();
        prop_assert_eq!(r.lattice_points, expected);
    }
}

proptest! {
    #[test]
    fn hyperbola_sum_matches_enumeration(q in modulus(), i in 0usize..8, j in 0usize..8, tau in 1.0f64..400.0, frac in 0.0f64..1.0) {
        let chis = enumerate_characters(q).unwrap();
        let a = &chis[i % chis.len()];
        let b = &chis[j % chis.len()];
        let xi = 1.0 + frac * (tau - 1.0);
        let mut expected = c(0.0, 0.0);
        for m in 1..=(xi.floor() as u64) {
            for n in 1..=(tau.floor() as u64) {
                if ((m * n) as f64) <= tau {
                    expected += a.value(m) * b.value(n);
                }
            }
        }
        let got = hyperbola_sum(a, b, tau, xi).unwrap();
        prop_assert!((got - expected).norm() < 1e-9, "{} vs {}", got, expected);
    }

    #[test]
    fn character_tables_are_homomorphisms(q in 2u64..200, x in 1u64..10_000, y in 1u64..10_000, k in 0usize..200) {
        let chis = enumerate_characters(q).unwrap();
        let chi = &chis[k % chis.len()];
        prop_assert!((chi.value(x * y) - chi.value(x) * chi.value(y)).norm() < 1e-12);
        prop_assert!((chi.value(x + q) - chi.value(x)).norm() == 0.0);
        let unit = gcd(x, q) == 1;
        prop_assert_eq!(chi.value(x).norm() > 0.5, unit);
        if unit {
            prop_assert!((chi.value(x).norm() - 1.0).abs() < 1e-12);
        }
        let total: f64 = (1..=q).map(|a| chi.value(a)).fold(c(0.0, 0.0), |s, v| s + v).norm();
        if chi.is_principal() {
            prop_assert!(total > 0.5);
        } else {
            prop_assert!(total < 1e-9);
        }
    }

    #[test]
    fn csv_round_trip(q in 1u64..1000, labels in "[0-9,]{0,6}", quantity in "[a-z@=;.0-9-]{1,20}",
                      nums in prop::array::uniform11(prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO)) {
        let row = SweepRecord {
            q,
            chi1_label: labels.clone(),
            chi2_label: labels,
            sigma1: nums[0],
            t1: nums[1],
            sigma2: nums[2],
            t2: nums[3],
            z_re: nums[4],
            z_im: nums[5],
            method: "psi-series".into(),
            value_re: nums[6],
            value_im: nums[7],
            err_est: nums[8],
            quantity,
            elapsed_ms: nums[9].abs() + nums[10].abs(),
        };
        let text = to_csv_string(std::slice::from_ref(&row)).unwrap();
        let back = read_csv(text.as_bytes()).unwrap();
        prop_assert_eq!(&back[0], &row);
    }

    #[test]
    fn fit_recovers_exponent_under_noise(slope in -1.0f64..2.0, scale in 0.01f64..100.0, n in 8usize..40, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<f64> = (0..n).map(|k| 10.0 * 2f64.powf(k as f64 * 0.5)).collect();
        let y: Vec<f64> = x.iter().map(|v| scale * v.powf(slope) * (1.0 + 0.01 * rng.gen_range(-1.0..1.0))).collect();
        let fit = fit_log_log(&x, &y).unwrap();
        prop_assert!((fit.slope - slope).abs() <= 0.05, "{} vs {}", fit.slope, slope);
    }
}

#[test]
fn gauss_sum_identities() {
    for q in 3..=200u64 {
        for chi in primitive_characters(q).unwrap() {
            let g = gauss_sum(&chi);
            assert!((g.magnitude - (q as f64).sqrt()).abs() < 1e-10, "q = {q}");
            assert!((g.epsilon_factor.norm() - 1.0).abs() < 1e-10, "q = {q}");
            let sign = if chi.parity() == 0 { 1.0 } else { -1.0 };
            let bar = gauss_sum(&chi.conj()).value;
            assert!((bar - g.value.conj() * sign).norm() < 1e-10, "q = {q}, {}", chi.label_string());
        }
    }
}

#[test]
fn fit_residuals_are_orthogonal() {
    let x: Vec<f64> = (1..=12).map(|k| k as f64 * 1.7).collect();
    let y: Vec<f64> = x.iter().map(|v| v.powf(0.4) * (1.0 + 0.3 * v.sin())).collect();
    let fit = fit_log_log(&x, &y).unwrap();
    let residuals: Vec<f64> = x.iter().zip(&y).map(|(a, b)| b.ln() - fit.intercept - fit.slope * a.ln()).collect();
    let against_one: f64 = residuals.iter().sum();
    let against_x: f64 = residuals.iter().zip(&x).map(|(r, a)| r * a.ln()).sum();
    assert!(against_one.abs() < 1e-9 && against_x.abs() < 1e-9, "{against_one} {against_x}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l_function_methods_agree(q in 3u64..40, k in 0usize..100, sigma in 1.2f64..4.0, t in -40.0f64..40.0) {
        let chis = primitive_characters(q).unwrap();
        prop_assume!(!chis.is_empty());
        let chi = &chis[k % chis.len()];
        let s = c(sigma, t);
        let a = l_function(s, chi).unwrap();
        let b = l_function_direct(s, chi).unwrap();
        prop_assert!((a.value - b.value).norm() < 1e-10, "{} vs {}", a.value, b.value);
    }
}
