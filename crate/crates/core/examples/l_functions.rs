//! Single Dirichlet L-values and the truncated product
//! Σ_{mn<=τ} χ₁(m)χ₂(n) m^{-z₁} n^{-z₂} against L(z₁,χ₁)L(z₂,χ₂).

use double_ell::characters::character;
use double_ell::complex::c;
use double_ell::dirichlet_l::{l_function, truncated_product};

fn main() -> double_ell::Result<()> {
    let chi4 = character(4, &[1])?;
    let chi3 = character(3, &[1])?;
    println!("L(1, chi_4) = {:.12} (pi/4 = {:.12})", l_function(c(1.0, 0.0), &chi4)?.value.re, std::f64::consts::FRAC_PI_4);
    println!("L(2, chi_4) = {:.12} (Catalan)", l_function(c(2.0, 0.0), &chi4)?.value.re);
    let v = l_function(c(0.5, 14.0), &chi3)?;
    println!("L(1/2+14i, chi_3) = {:.12} ({:?}, err {:.1e})", v.value, v.method, v.error_estimate);

    // The substitution used for the main term: z₁ = 1, z₂ = s₁ + s₂.
    let (s1, s2) = (c(0.5, 0.0), c(0.5, 30.0));
    for tau in [1e2, 1e3, 1e4] {
        let r = truncated_product(c(1.0, 0.0), s1 + s2, &chi3, &chi3, tau)?;
        println!("tau = {tau:>6}: residual {:.3e}, bound {:.3e}, case {:?}", r.residual, r.bound_prediction, r.case);
    }
    Ok(())
}
