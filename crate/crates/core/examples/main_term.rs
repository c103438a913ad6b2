//! The explicit main term in the strip and how its residual grows with t₂.

use double_ell::characters::character;
use double_ell::complex::c;
use double_ell::double_l::theorem2_main_term;

fn main() -> double_ell::Result<()> {
    for (q, label) in [(3, 1), (5, 2)] {
        let chi = character(q, &[label])?;
        println!("q = {q}, chi = {label} (parity {})", chi.parity());
        let s1 = c(1.0, 0.0);
        let mut t2 = 10.0;
        while t2 <= 320.0 {
            let s2 = c(0.5, t2);
            let r = theorem2_main_term(s1, s2, &chi, &chi)?.with_reference(s1, s2, &chi, &chi)?;
            let reference = r.reference.as_ref().map_or(c(f64::NAN, 0.0), |x| x.value);
            println!(
                "  t2 = {t2:>5}: {:>5} lattice points, |L2| = {:>9.4}, |main| = {:>9.4}, |residual| = {:.4}",
                r.lattice_points,
                reference.norm(),
                r.main_term.norm(),
                r.residual.map_or(f64::NAN, |x| x.norm())
            );
            t2 *= 2.0;
        }
    }
    Ok(())
}
