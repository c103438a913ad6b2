//! The special functions behind the Ψ representation: ₁F₁, Tricomi Ψ in
//! each regime, Γ(a, z) and the Hardy–Littlewood integrals.

use double_ell::complex::c;
use double_ell::special_fn::{hl_main_terms, kummer_1f1, oscillatory_integral, tricomi_psi, upper_incomplete_gamma};
use std::f64::consts::PI;

fn main() -> double_ell::Result<()> {
    let s2 = c(0.5, 10.0);
    let a = c(1.0, 0.0);
    let cc = c(1.0, 0.0) + (c(1.0, 0.0) - s2);

    println!("1F1(1; 2-s2; 2πi·3/7) = {}", kummer_1f1(a, cc, c(0.0, 2.0 * PI * 3.0 / 7.0))?);

    for mn in [1.0, 5.0, 40.0, 400.0] {
        let x = c(0.0, 2.0 * PI * mn / 5.0);
        let p = tricomi_psi(a, cc, x)?;
        println!("Psi(1, 2-s2; 2πi·{mn}/5) = {:.12} via {:?}, bound {:.1e}", p.value, p.regime, p.remainder_bound);
    }

    println!("Gamma(1/2, 1) = {:.10}", upper_incomplete_gamma(c(0.5, 0.0), c(1.0, 0.0))?.re);

    let s = c(0.5, 20.0);
    let (c0, s0) = hl_main_terms(s)?;
    println!("xi -> 0 limits: C = {c0:.8}, S = {s0:.8}");
    for xi in [0.5, 5.0, 19.0, 21.0, 100.0] {
        let r = oscillatory_integral(xi, s, 0.5, 2.0)?;
        println!("xi = {xi:>5}: {:?}  C = {:.8}  S = {:.8}", r.regime, r.cosine_part, r.sine_part);
    }
    Ok(())
}
