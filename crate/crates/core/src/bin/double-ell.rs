use clap::{Args, Parser, Subcommand};
use double_ell::characters::{character, enumerate_characters, gauss_sum, is_primitive, parse_label, DirichletCharacter};
use double_ell::complex::{parse_complex, ComplexValue};
use double_ell::dirichlet_l::{l_function, truncated_product};
use double_ell::double_l::{evaluate, theorem2_main_term, EvalRequest, Method};
use double_ell::harness::{
    fit_exponent, read_csv_file, run_sweep, verify_bounds, write_csv_file, Suite, SweepSpec, VerifyConfig,
};
use double_ell::special_fn::selftest::run_identity_suite;
use double_ell::Result;
use serde::Serialize;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "double-ell", version, about = "Double Dirichlet L-functions: evaluation, main terms and bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dirichlet characters and Gauss sums.
    #[command(subcommand)]
    Char(CharCommand),
    /// Special-function identity checks.
    #[command(subcommand)]
    Selftest(SelftestCommand),
    /// Single L-functions and truncated products.
    #[command(subcommand)]
    Lfun(LfunCommand),
    /// Evaluate L₂ (or L̃₂,z) with one method.
    Eval(EvalArgs),
    /// The explicit main term in the strip 0 < σ₂ < 1.
    Mainterm(MaintermArgs),
    /// Run a parameter sweep and write its CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Least-squares fit of log y on log x over a sweep CSV.
    Fit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "qt2")]
        x: String,
        #[arg(long, default_value = "abs_value")]
        y: String,
    },
    /// Check one bound suite over a sweep (or a saved CSV).
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        config: PathBuf,
        /// Omit the per-point list from the report.
        #[arg(long)]
        summary_only: bool,
    },
}

#[derive(Subcommand)]
enum CharCommand {
    List {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        primitive_only: bool,
    },
    Gauss {
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        label: String,
    },
}

#[derive(Subcommand)]
enum SelftestCommand {
    Identities {
        #[arg(long, default_value_t = 200)]
        grid_size: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum LfunCommand {
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        label: String,
    },
    ProductApprox {
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        modulus: u64,
        #[arg(long)]
        chi1: String,
        #[arg(long)]
        chi2: String,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    s1: String,
    #[arg(long, allow_hyphen_values = true)]
    s2: String,
    #[arg(long)]
    modulus: u64,
    #[arg(long)]
    chi1: String,
    #[arg(long)]
    chi2: String,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    method: String,
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// Asymptotic terms N split off by the psi method.
    #[arg(long)]
    n_order: Option<usize>,
}

#[derive(Args)]
struct MaintermArgs {
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long)]
    with_reference: bool,
}

#[derive(Serialize)]
struct CharRecord {
    modulus: u64,
    label: String,
    parity: u8,
    primitive: bool,
    order: u64,
    gauss_re: f64,
    gauss_im: f64,
}

fn char_record(chi: &DirichletCharacter) -> CharRecord {
    let tau = gauss_sum(chi).value;
    CharRecord {
        modulus: chi.modulus(),
        label: chi.label_string(),
        parity: chi.parity(),
        primitive: is_primitive(chi),
        order: chi.order(),
        gauss_re: tau.re,
        gauss_im: tau.im,
    }
}

fn load(q: u64, label: &str) -> Result<DirichletCharacter> {
    character(q, &parse_label(label)?)
}

impl PairArgs {
    fn parse(&self) -> Result<(ComplexValue, ComplexValue, DirichletCharacter, DirichletCharacter)> {
        Ok((parse_complex(&self.s1)?, parse_complex(&self.s2)?, load(self.modulus, &self.chi1)?, load(self.modulus, &self.chi2)?))
    }
}

fn print<T: Serialize>(value: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn read(path: &PathBuf) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Runs a command and returns its exit code.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Char(CharCommand::List { modulus, primitive_only }) => {
            let records: Vec<CharRecord> =
                enumerate_characters(modulus)?.iter().filter(|c| !primitive_only || is_primitive(c)).map(char_record).collect();
            print(&records)?;
        }
        Command::Char(CharCommand::Gauss { modulus, label }) => print(&char_record(&load(modulus, &label)?))?,
        Command::Selftest(SelftestCommand::Identities { grid_size, seed }) => {
            let report = run_identity_suite(grid_size, seed);
            print(&report)?;
            return Ok(if report.all_passed { 0 } else { 2 });
        }
        Command::Lfun(LfunCommand::Eval { s, modulus, label }) => {
            print(&l_function(parse_complex(&s)?, &load(modulus, &label)?)?)?
        }
        Command::Lfun(LfunCommand::ProductApprox { z1, z2, tau, modulus, chi1, chi2 }) => {
            let r =
                truncated_product(parse_complex(&z1)?, parse_complex(&z2)?, &load(modulus, &chi1)?, &load(modulus, &chi2)?, tau)?;
            print(&r)?;
        }
        Command::Eval(args) => {
            let (s1, s2, chi1, chi2) = args.pair.parse()?;
            let mut req = EvalRequest::new(s1, s2, &chi1, &chi2, args.method.parse::<Method>()?);
            if let Some(z) = &args.z {
                req = req.with_z(parse_complex(z)?);
            }
            if let Some(t) = args.tol {
                req.tolerance = t;
            }
            if let Some(n) = args.n_order {
                req = req.with_n_order(n);
            }
            print(&evaluate(&req)?)?;
        }
        Command::Mainterm(args) => {
            let (s1, s2, chi1, chi2) = args.pair.parse()?;
            let mut r = theorem2_main_term(s1, s2, &chi1, &chi2)?;
            if args.with_reference {
                r = r.with_reference(s1, s2, &chi1, &chi2)?;
            }
            print(&r)?;
        }
        Command::Sweep { config } => {
            let spec = SweepSpec::from_json(&read(&config)?)?;
            if spec.output_path.is_none() {
                return Err(double_ell::Error::Config("sweep config needs output_path".into()));
            }
            let out = run_sweep(&spec)?;
            print(&json!({
                "rows": out.rows.len(),
                "error_rows": out.errors,
                "output_path": spec.output_path,
            }))?;
        }
        Command::Fit { input, x, y } => print(&fit_exponent(&read_csv_file(&input)?, &x, &y)?)?,
        Command::Verify { suite, config, summary_only } => {
            let suite: Suite = suite.parse()?;
            let cfg = VerifyConfig::from_json(&read(&config)?)?;
            let (mut report, rows) = verify_bounds(suite, &cfg)?;
            if cfg.input.is_none() {
                if let Some(path) = &cfg.sweep.output_path {
                    write_csv_file(&rows, path)?;
                }
            }
            if summary_only {
                report.points.clear();
            }
            print(&report)?;
            return Ok(report.status.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(double_ell::Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
