//! A sweep over a t₂ ladder, written to CSV, then a log-log fit of |L₂|
//! against q|t₂|.
//!
//!     DOUBLE_ELL_WORKERS=4 cargo run --release --example sweep_and_fit

use double_ell::harness::{fit_exponent, read_csv_file, run_sweep, SweepSpec};

fn main() -> double_ell::Result<()> {
    let out = std::env::temp_dir().join("double_ell_sweep.csv");
    let spec = SweepSpec::from_json(&format!(
        r#"{{"moduli": [3, 5], "character_filter": "all-primitive-pairs",
            "s1_grid": [[1, 0]], "s2_grid": [{{"sigma": 0.5, "start": 10, "ratio": 2, "count": 5}}],
            "method": "psi", "quantity": "value", "output_path": {:?}}}"#,
        out.to_string_lossy()
    ))?;
    let outcome = run_sweep(&spec)?;
    println!("{} rows ({} failed) -> {}", outcome.rows.len(), outcome.errors.len(), out.display());

    let rows = read_csv_file(&out)?;
    let fit = fit_exponent(&rows, "qt2", "abs_value")?;
    println!("|L2| ~ (q t2)^{:.3}  (r^2 = {:.3}, {} points)", fit.slope, fit.r_squared, fit.n_points);
    Ok(())
}
