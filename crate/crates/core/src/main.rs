//! `hdgcert`: certify parameters, build witnesses, scan grids.
//!
//! Exit codes: 0 ok (including Inconclusive verdicts), 1 usage or
//! parameter error, 2 internal invariant violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hdgcert::hodge_report::ReportError;
use hdgcert::params::{validate, CurveParams, ParamError};
use hdgcert::scanner::{
    parse_prime_list, run_cross_validate, run_remark_check, run_scan, write_atomic, Method, ReportFormat, ScanError,
    ScanMode, ScanSpec,
};
use hdgcert::witness::{
    brute_force_witness, constructive_witness_prime, constructive_witness_q, verify_witness, Witness,
};
use hdgcert::{certify_product, certify_single, classify};

#[derive(Parser)]
#[command(name = "hdgcert", version, about = "Hodge group certificates for superelliptic jacobians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify one parameter tuple (or the product over all levels).
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long)]
        product: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build coprimality witnesses for one parameter tuple.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan a parameter grid and write a JSON or CSV report.
    Scan {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value = "certify")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that the (p, q) = (2, 4) Bezout-route preconditions hold exactly for n = 7 mod 8.
    RemarkCheck {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare constructive witnesses with the exhaustive oracle over a grid.
    CrossValidate {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct GridArgs {
    #[arg(long)]
    n_min: u64,
    #[arg(long)]
    n_max: u64,
    #[arg(long)]
    primes: String,
    #[arg(long, default_value_t = 1)]
    r_max: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Constructive,
    Brute,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Certify,
    Witness,
    RemarkCheck,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Constructive => Method::Constructive,
            MethodArg::Brute => Method::Brute,
            MethodArg::Both => Method::Both,
        }
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Failure {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<ScanError> for Failure {
    fn from(e: ScanError) -> Failure {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, text.as_bytes()).map_err(Failure::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct WitnessReport {
    params: CurveParams,
    prime_route: Option<Witness>,
    prime_route_error: Option<String>,
    q_route: Option<Witness>,
    q_route_error: Option<String>,
    brute_force: Option<Witness>,
}

fn witness_report(params: &CurveParams, method: Method) -> Result<WitnessReport, Failure> {
    let split = |res: Result<Witness, hdgcert::witness::WitnessError>| -> Result<(Option<Witness>, Option<String>), Failure> {
        match res {
            Ok(w) if verify_witness(params, &w) => Ok((Some(w), None)),
            Ok(w) => Err(Failure::Internal(format!("witness i = {} fails verification", w.i))),
            Err(e @ hdgcert::witness::WitnessError::InternalContradiction { .. }) => Err(Failure::Internal(e.to_string())),
            Err(e) => Ok((None, Some(e.to_string()))),
        }
    };
    let (mut prime_route, mut prime_route_error, mut q_route, mut q_route_error) = (None, None, None, None);
    if method != Method::Brute {
        (prime_route, prime_route_error) = split(constructive_witness_prime(params))?;
        (q_route, q_route_error) = split(constructive_witness_q(params))?;
    }
    let brute_force = if method != Method::Constructive { brute_force_witness(params) } else { None };
    let status = classify(params);
    if brute_force.is_none() && method != Method::Constructive && (status.prop31_applicable() || status.prop32_applicable) {
        return Err(Failure::Internal("oracle finds no witness where a proposition applies".into()));
    }
    Ok(WitnessReport { params: *params, prime_route, prime_route_error, q_route, q_route_error, brute_force })
}

fn grid_spec(grid: &GridArgs) -> Result<ScanSpec, Failure> {
    let primes = parse_prime_list(&grid.primes)?;
    Ok(ScanSpec::new(grid.n_min, grid.n_max, &primes, grid.r_max)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Certify { n, p, r, product, out } => {
            let params = validate(n, p, r)?;
            let text = if product {
                to_json(&certify_product(&params)?)
            } else {
                to_json(&certify_single(&params)?)
            };
            emit(&text, out.as_ref())
        }
        Command::Witness { n, p, r, method, out } => {
            let params = validate(n, p, r)?;
            emit(&to_json(&witness_report(&params, method.into())?), out.as_ref())
        }
        Command::Scan { grid, mode, method, format, out } => {
            let mode = match mode {
                ModeArg::Certify => ScanMode::Certify,
                ModeArg::Witness => ScanMode::Witness,
                ModeArg::RemarkCheck => ScanMode::RemarkCheck,
            };
            let format = match format {
                FormatArg::Json => ReportFormat::Json,
                FormatArg::Csv => ReportFormat::Csv,
            };
            let mut spec = grid_spec(&grid)?.with_mode(mode).with_method(method.into());
            spec.format = format;
            spec.output_path = out.clone();
            let report = run_scan(&spec)?;
            match out {
                Some(path) => eprintln!("wrote {} rows to {}", report.rows.len(), path.display()),
                None => print!("{}", report.render(format)),
            }
            Ok(())
        }
        Command::RemarkCheck { n_max, out } => emit(&to_json(&run_remark_check(n_max)?), out.as_ref()),
        Command::CrossValidate { grid, out } => {
            let mut spec = grid_spec(&grid)?;
            spec.output_path = out;
            let cv = run_cross_validate(&spec)?;
            print!("{}", to_json(&cv.summary()));
            if cv.passed() {
                Ok(())
            } else {
                Err(Failure::Internal(format!("{} oracle disagreements", cv.disagreements.len())))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
