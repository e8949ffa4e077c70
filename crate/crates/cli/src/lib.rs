//! The `jfft` command line: plans, transforms, projections, weights,
//! verification and benchmarks over the CSV and plan JSON formats.

pub mod bench;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use jfft_core::format::{read_function_csv, read_gt_csv, write_function_csv, write_gt_csv, write_weights_csv};
use jfft_core::verify::invariant_suite;
use jfft_core::{
    apply_forward, apply_inverse, build_plan_with, load_plan, project, save_plan, weights, Error, FactorPlan,
    MemBudget, PlannerConfig, ProblemDims, Tolerances,
};
use jfft_oracle::{compare_plan_to_oracle, OracleConfig, OracleError, OracleReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FORMAT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

const ORACLE_SAMPLES: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "jfft", version, about = "Fast Fourier transform on Johnson graphs J(n, k)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a plan for J(n, k) and save it as JSON.
    Plan {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Compare the plan against the dense oracle before saving.
        #[arg(long)]
        verify: bool,
    },
    /// Delta coordinates to Gelfand-Tsetlin coordinates.
    Transform(IoArgs),
    /// Gelfand-Tsetlin coordinates back to a function on subsets.
    Itransform(IoArgs),
    /// Project onto a union of isotypic components.
    Project {
        #[command(flatten)]
        io: IoArgs,
        /// Comma list and inclusive ranges, e.g. `0,2` or `0-2`.
        #[arg(long, value_parser = parse_components)]
        components: Components,
    },
    /// Squared norm of each isotypic component.
    Weights(IoArgs),
    /// Run the invariant suite on a saved plan.
    Verify {
        #[arg(long)]
        plan: PathBuf,
        /// Also compare against the dense oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Time factored apply against dense matrix-vector multiplication.
    Bench {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        /// Use this plan instead of building one.
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        repeat: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct IoArgs {
    #[arg(long)]
    plan: PathBuf,
    #[arg(long)]
    input: PathBuf,
    /// Defaults to standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Components(Vec<usize>);

/// Parses `0,2`, `0-2`, `0..2` and mixtures; ranges are inclusive.
fn parse_components(raw: &str) -> Result<Components, String> {
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("invalid component {s:?}"));
    let mut out = Vec::new();
    for part in raw.split(',') {
        let range = part.split_once("..").or_else(|| part.split_once('-'));
        match range {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(Components(out))
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Oracle(OracleError),
    Checks(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Core(e) => Failure::Core(e),
            e => Failure::Oracle(e),
        }
    }
}

/// Exit status for a core error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Format(_) | Error::Io(_) => EXIT_FORMAT,
        Error::Verification(_) | Error::Internal(_) | Error::Numerical(_) => EXIT_VERIFY,
        Error::Budget { .. } => EXIT_BUDGET,
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(e) => exit_code(e),
            Failure::Oracle(OracleError::Budget { .. } | OracleError::TooLarge { .. }) => EXIT_BUDGET,
            Failure::Oracle(_) | Failure::Checks(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Oracle(e) => e.to_string(),
            Failure::Checks(n) => format!("{n} check(s) failed"),
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("jfft: {}", f.message());
            f.code()
        }
    }
}

fn open_input(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Core(Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))))
}

fn open_plan(path: &Path) -> Result<FactorPlan, Failure> {
    if !path.exists() {
        return Err(Failure::Core(Error::Input(format!(
            "plan {} not found; create it with `jfft plan`",
            path.display()
        ))));
    }
    Ok(load_plan(path)?)
}

fn with_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> jfft_core::Result<()>) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn read_function(io_args: &IoArgs, plan: &FactorPlan) -> Result<jfft_core::FunctionVector, Failure> {
    Ok(read_function_csv(open_input(&io_args.input)?, plan.dims())?)
}

fn oracle_verdict(report: &OracleReport) -> bool {
    let tol = Tolerances::default().oracle;
    report.max_column_deviation <= tol && report.max_projector_error <= tol
}

fn execute(command: Command) -> Result<(), Failure> {
    let budget = MemBudget::from_env()?;
    match command {
        Command::Plan { n, k, output, verify } => {
            let dims = ProblemDims::new(n, k)?;
            let plan = build_plan_with(dims, &PlannerConfig { budget, ..PlannerConfig::default() })?;
            for level in plan.levels() {
                let pairs = level.blocks.iter().filter(|b| b.is_pair()).count();
                println!("level {}: {} singletons, {} pairs", level.level, level.blocks.len() - pairs, pairs);
            }
            if verify {
                let cfg = OracleConfig { budget, ..OracleConfig::default() };
                let report = compare_plan_to_oracle(&plan, ORACLE_SAMPLES, 1, &cfg)?;
                print_oracle(&report);
                if !oracle_verdict(&report) {
                    return Err(Failure::Checks(1));
                }
            }
            save_plan(&plan, &output)?;
            Ok(())
        }
        Command::Transform(io_args) => {
            let plan = open_plan(&io_args.plan)?;
            let f = read_function(&io_args, &plan)?;
            let (g, _) = apply_forward(&plan, &f)?;
            with_output(io_args.output.as_deref(), |w| write_gt_csv(w, &g, &plan))
        }
        Command::Itransform(io_args) => {
            let plan = open_plan(&io_args.plan)?;
            let g = read_gt_csv(open_input(&io_args.input)?, &plan)?;
            let (f, _) = apply_inverse(&plan, &g)?;
            with_output(io_args.output.as_deref(), |w| write_function_csv(w, &f))
        }
        Command::Project { io, components } => {
            let plan = open_plan(&io.plan)?;
            let f = read_function(&io, &plan)?;
            let (h, _) = project(&plan, &f, &components.0)?;
            with_output(io.output.as_deref(), |w| write_function_csv(w, &h))
        }
        Command::Weights(io_args) => {
            let plan = open_plan(&io_args.plan)?;
            let f = read_function(&io_args, &plan)?;
            let (ws, _) = weights(&plan, &f)?;
            with_output(io_args.output.as_deref(), |w| write_weights_csv(w, &ws))
        }
        Command::Verify { plan, oracle, seed } => {
            let plan = match open_plan(&plan) {
                Ok(p) => p,
                Err(Failure::Core(e @ Error::Verification(_))) => {
                    println!("FAIL load: {e}");
                    return Err(Failure::Checks(1));
                }
                Err(e) => return Err(e),
            };
            let mut failed = 0;
            for check in invariant_suite(&plan, &Tolerances::default(), budget, seed) {
                failed += usize::from(!check.passed);
                let verdict = if check.passed { "PASS" } else { "FAIL" };
                if check.detail.is_empty() {
                    println!("{verdict} {}", check.name);
                } else {
                    println!("{verdict} {}: {}", check.name, check.detail);
                }
            }
            if oracle {
                let cfg = OracleConfig { budget, ..OracleConfig::default() };
                let report = compare_plan_to_oracle(&plan, ORACLE_SAMPLES, seed, &cfg)?;
                failed += usize::from(!oracle_verdict(&report));
                print_oracle(&report);
            }
            if failed > 0 {
                return Err(Failure::Checks(failed));
            }
            Ok(())
        }
        Command::Bench { n, k, plan, repeat, seed } => {
            let dims = ProblemDims::new(n, k)?;
            let plan = match plan {
                Some(path) => {
                    let p = open_plan(&path)?;
                    if p.dims() != dims {
                        return Err(Failure::Core(Error::Input(format!(
                            "plan {} is for {}, not {dims}",
                            path.display(),
                            p.dims()
                        ))));
                    }
                    p
                }
                None => build_plan_with(dims, &PlannerConfig { budget, ..PlannerConfig::default() })?,
            };
            let r = bench::run_bench(&plan, repeat, seed, budget)?;
            println!("{dims}: dimension {}, {} repetitions", r.dim, r.repeat);
            println!("factored muladds {}", r.factored_muladds);
            println!("dense muladds {}", r.dense_muladds);
            println!("op reduction {:.1}x", r.op_ratio());
            println!("factored median {:.3e} s", r.factored_median);
            println!("dense median {:.3e} s", r.dense_median);
            println!("speedup {:.1}x", r.speedup());
            Ok(())
        }
    }
}

fn print_oracle(report: &OracleReport) {
    println!(
        "{} oracle: column deviation {:e}, projector error {:e}",
        if oracle_verdict(report) { "PASS" } else { "FAIL" },
        report.max_column_deviation,
        report.max_projector_error
    );
}
