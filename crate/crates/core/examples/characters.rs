//! Characters mod q: parity, conductor, Gauss sums and the
//! Pólya–Vinogradov ratio.
//!
//!     cargo run --example characters -- 15

use double_ell::characters::{enumerate_characters, gauss_sum, is_primitive, partial_sum_max};

fn main() -> double_ell::Result<()> {
    let q: u64 = std::env::args().nth(1).map_or(Ok(15), |a| a.parse()).expect("modulus");
    println!("{:>8} {:>5} {:>6} {:>9} {:>24} {:>9}", "label", "order", "parity", "conductor", "tau", "PV ratio");
    for chi in enumerate_characters(q)? {
        let tau = gauss_sum(&chi).value;
        let pv = if is_primitive(&chi) && q > 2 {
            format!("{:.4}", partial_sum_max(&chi)? / ((q as f64).sqrt() * (q as f64).ln()))
        } else {
            "-".into()
        };
        println!(
            "{:>8} {:>5} {:>6} {:>9} {:>11.6}{:+11.6}i {:>9}",
            chi.label_string(),
            chi.order(),
            chi.parity(),
            chi.conductor(),
            tau.re,
            tau.im,
            pv
        );
    }
    Ok(())
}
