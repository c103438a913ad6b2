//! One point, every evaluator that accepts it.
//!
//!     cargo run --release --example evaluate -- 2 2.5+5i 5

use double_ell::characters::primitive_characters;
use double_ell::complex::parse_complex;
use double_ell::double_l::{evaluate, EvalRequest, Method};

fn main() -> double_ell::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let s1 = parse_complex(args.first().map_or("2", String::as_str))?;
    let s2 = parse_complex(args.get(1).map_or("2.5+5i", String::as_str))?;
    let q: u64 = args.get(2).map_or("5", String::as_str).parse().expect("modulus");

    let chis = primitive_characters(q)?;
    let (a, b) = (&chis[0], &chis[chis.len() - 1]);
    println!("q = {q}, chi1 = {}, chi2 = {}, s1 = {s1}, s2 = {s2}", a.label_string(), b.label_string());
    for method in [Method::Direct, Method::PsiSeries, Method::Integral] {
        match evaluate(&EvalRequest::new(s1, s2, a, b, method)) {
            Ok(r) => println!("{:>11}: {:.14}  err {:.1e}  {:.1} ms", method.name(), r.value, r.error_estimate, r.elapsed_ms),
            Err(e) => println!("{:>11}: {e}", method.name()),
        }
    }

    // Conjugating every argument conjugates the value.
    let v = evaluate(&EvalRequest::new(s1, s2, a, b, Method::PsiSeries))?.value;
    let w = evaluate(&EvalRequest::new(s1.conj(), s2.conj(), &a.conj(), &b.conj(), Method::PsiSeries))?.value;
    println!("conjugation defect: {:.1e}", (v - w.conj()).norm());
    Ok(())
}
