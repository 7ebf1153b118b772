use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use specfact::factorizer::verify;
use specfact::reduction::{KernelChoice, PivotRule, ReductionOptions};
use specfact::{factorize, factorize_youla, mcmillan_degree, smith_mcmillan, FactorizeOptions, RegionPair};

use specfact_cli::error::CliError;
use specfact_cli::io::{emit, read_matrix, read_regions, to_json, MatrixFile, SmithMcMillanFile, TraceFile};

#[derive(Parser)]
#[command(name = "specfact", version, about = "Exact spectral factorization Phi = W* W")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a spectral factor W of a spectrum.
    Factorize(FactorizeArgs),
    /// Smith–McMillan form C D F of a rational matrix.
    SmithMcmillan(SmithMcMillanArgs),
    /// Check that W is a spectral factor of Phi for the given regions.
    Verify(VerifyArgs),
    /// Print the McMillan degree.
    Degree(DegreeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    First,
    Last,
}

#[derive(Clone, Copy, ValueEnum)]
enum PivotArg {
    Largest,
    Smallest,
}

#[derive(Args)]
struct FactorizeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Region file; when omitted, the outer (Youla) factor is computed.
    #[arg(long)]
    regions: Option<PathBuf>,
    /// Where to write W; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Where to write the reduction trace as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "first")]
    kernel: KernelArg,
    #[arg(long, value_enum, default_value = "largest")]
    pivot: PivotArg,
}

#[derive(Args)]
struct SmithMcMillanArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    phi: PathBuf,
    #[arg(long)]
    w: PathBuf,
    #[arg(long)]
    regions: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 512)]
    grid: usize,
}

#[derive(Args)]
struct DegreeArgs {
    #[arg(long)]
    input: PathBuf,
}

fn run_factorize(a: &FactorizeArgs) -> Result<(), CliError> {
    let phi = read_matrix(&a.input)?;
    let regions = a.regions.as_deref().map(read_regions).transpose()?;
    let reduction = ReductionOptions {
        kernel: match a.kernel {
            KernelArg::First => KernelChoice::FirstFree,
            KernelArg::Last => KernelChoice::LastFree,
        },
        pivot: match a.pivot {
            PivotArg::Largest => PivotRule::Largest,
            PivotArg::Smallest => PivotRule::Smallest,
        },
        numeric: false,
    };
    let opts = FactorizeOptions {
        tol: a.tol,
        grid: a.grid,
        reduction,
        decomposition: None,
    };
    let f = match &regions {
        Some(r) => factorize(&phi, r, &opts)?,
        None => factorize_youla(&phi, &opts)?,
    };
    emit(a.output.as_deref(), &to_json(&MatrixFile::from_matrix(&f.w)))?;
    if let Some(path) = &a.trace {
        emit(Some(path), &to_json(&TraceFile::new(&f.trace)))?;
    }
    let text = specfact_cli::report::factorization(&f);
    match (&a.report, &a.output) {
        (Some(path), _) => emit(Some(path), &text)?,
        (None, Some(_)) => print!("{text}"),
        (None, None) => {}
    }
    Ok(())
}

fn run_smith_mcmillan(a: &SmithMcMillanArgs) -> Result<(), CliError> {
    let g = read_matrix(&a.input)?;
    if g.is_zero() {
        return Err(specfact::Error::RankZero.into());
    }
    emit(
        a.output.as_deref(),
        &to_json(&SmithMcMillanFile::new(&smith_mcmillan(&g))),
    )
}

fn run_verify(a: &VerifyArgs) -> Result<(), CliError> {
    let phi = read_matrix(&a.phi)?;
    let w = read_matrix(&a.w)?;
    let regions: RegionPair = read_regions(&a.regions)?;
    let r = verify(&phi, &w, &regions, a.tol, a.grid);
    print!("{}", specfact_cli::report::verification(&r));
    if r.passed() {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

fn run_degree(a: &DegreeArgs) -> Result<(), CliError> {
    println!("{}", mcmillan_degree(&read_matrix(&a.input)?));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Factorize(a) => run_factorize(a),
        Command::SmithMcmillan(a) => run_smith_mcmillan(a),
        Command::Verify(a) => run_verify(a),
        Command::Degree(a) => run_degree(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
