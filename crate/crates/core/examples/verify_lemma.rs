//! A bound suite end to end: the hyperbola-sum estimate
//! |Σ_{m<=ξ, mn<=τ} χ₁(m)χ₂(n)| <= ξ √q log q over every primitive pair.

use double_ell::harness::{verify_bounds, Suite, VerifyConfig};

fn main() -> double_ell::Result<()> {
    let cfg = VerifyConfig::from_json(
        r#"{"moduli": [5, 7, 11, 13], "character_filter": "all-primitive-pairs",
            "tau": [100, 1000, 10000], "xi": ["sqrt-tau", "tau/10", "tau"], "quantity": "hyperbola-sum"}"#,
    )?;
    let (report, _) = verify_bounds(Suite::Lemma21, &cfg)?;
    let worst = report.points.iter().max_by(|a, b| a.ratio.total_cmp(&b.ratio));
    println!("{} rows, max ratio {:.4}, status {:?}", report.n_rows, report.max_ratio, report.status);
    if let Some(p) = worst {
        println!("worst row {}: measured {:.3}, bound {:.3}", p.row, p.measured, p.predicted);
    }
    std::process::exit(report.status.exit_code());
}
