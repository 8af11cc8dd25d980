//! Command-line driver: problem listing, single solves, and convergence
//! tables. A thin adapter over the library; every output it writes is the
//! byte-identical result of the corresponding library call.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::harness::{
    convergence_study, emit_solution_1d, emit_solution_2d, emit_table, error_norms_1d,
    error_norms_2d, sci3, L1Convention, SolutionFormat, StudyConfig, TableFormat,
};
use crate::problems::{catalog, ProblemId};
use crate::reconstruction::{Indicator, WeightParams};
use crate::timestepper::{integrate, DtMode, Solution, TimeControls};
use crate::{HjError, Result};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "HJWENO_OUT_DIR";

const EXIT_OK: i32 = 0;
const EXIT_NUMERICAL: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "hjweno",
    about = "Fifth-order WENO solver for Hamilton-Jacobi equations",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the benchmark problems and their defaults
    List,
    /// Solve one problem and write solution data
    Solve(SolveArgs),
    /// Run a grid-convergence study and write table data
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    #[value(name = "weno-l")]
    WenoL,
    #[value(name = "weno-jp")]
    WenoJp,
}

impl From<SchemeArg> for Indicator {
    fn from(s: SchemeArg) -> Indicator {
        match s {
            SchemeArg::WenoL => Indicator::ArcLength,
            SchemeArg::WenoJp => Indicator::ClassicalJp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DtModeArg {
    Cfl,
    Accuracy,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Gnuplot,
    Text,
}

#[derive(Args)]
struct SolveArgs {
    /// Problem id, P1..P13
    #[arg(long)]
    problem: String,
    #[arg(long, value_enum, default_value = "weno-l")]
    scheme: SchemeArg,
    /// Nodes per direction
    #[arg(long)]
    n: usize,
    /// Nodes in y (2D only; defaults to --n)
    #[arg(long)]
    ny: Option<usize>,
    /// Final time (defaults to the problem's first listed time)
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 0.6)]
    cfl: f64,
    #[arg(long, value_enum, default_value = "cfl")]
    dt_mode: DtModeArg,
    /// Weight regularization epsilon
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Curvature coefficient override (curvature-regularized problems)
    #[arg(long)]
    curvature_eps: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    problem: String,
    /// Comma-separated grid sizes, e.g. 20,40,80,160,320
    #[arg(long, value_delimiter = ',')]
    ns: Vec<usize>,
    /// Comma-separated schemes to run side by side
    #[arg(long, value_enum, value_delimiter = ',', default_value = "weno-l")]
    schemes: Vec<SchemeArg>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 0.6)]
    cfl: f64,
    #[arg(long, value_enum, default_value = "accuracy")]
    dt_mode: DtModeArg,
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Parallel solves across grid sizes
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

/// Parse `argv` and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::List => cmd_list(),
        Command::Solve(args) => cmd_solve(&args),
        Command::Table(args) => cmd_table(&args),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e @ (HjError::Config(_) | HjError::InvalidGrid(_))) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_NUMERICAL
        }
    }
}

fn validate_cfl(cfl: f64) -> Result<()> {
    if cfl > 0.0 && cfl <= 1.0 {
        Ok(())
    } else {
        Err(HjError::Config(format!("cfl must lie in (0, 1], got {cfl}")))
    }
}

fn cmd_list() -> Result<()> {
    let mut out = String::new();
    for id in ProblemId::all() {
        let spec = catalog(id);
        let dims = match spec.problem.dimension {
            crate::hamiltonian::Dimension::One => "1D",
            crate::hamiltonian::Dimension::Two => "2D",
        };
        let times: Vec<String> = spec
            .default_final_times
            .iter()
            .map(|t| format!("{t:.6}"))
            .collect();
        let grids: Vec<String> = spec.default_grids.iter().map(|n| n.to_string()).collect();
        out.push_str(&format!(
            "{:<4} {} {}  [t = {}; N = {}]\n",
            id.to_string(),
            dims,
            spec.title,
            times.join(", "),
            grids.join(", "),
        ));
    }
    print!("{out}");
    Ok(())
}

fn parse_problem(s: &str) -> Result<ProblemId> {
    s.parse::<ProblemId>()
}

fn write_or_print(content: &str, output: Option<&Path>, default_name: &str) -> Result<()> {
    if let Some(path) = output {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let mut file = std::fs::File::create(path)?;
        file.write_all(content.as_bytes())?;
        return Ok(());
    }
    if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
        let path = Path::new(&dir).join(default_name);
        std::fs::create_dir_all(&dir)?;
        let mut file = std::fs::File::create(&path)?;
        file.write_all(content.as_bytes())?;
        eprintln!("wrote {}", path.display());
        return Ok(());
    }
    print!("{content}");
    Ok(())
}

fn cmd_solve(args: &SolveArgs) -> Result<()> {
    let id = parse_problem(&args.problem)?;
    validate_cfl(args.cfl)?;
    let mut spec = catalog(id);
    if let Some(eps) = args.curvature_eps {
        if spec.problem.curvature_eps.is_none() && eps != 0.0 {
            return Err(HjError::Config(format!(
                "{id} has no curvature term to override"
            )));
        }
        spec.problem.curvature_eps = Some(eps);
    }
    let t_final = args.t.unwrap_or(spec.default_final_times[0]);

    let mut controls = TimeControls::new(t_final);
    controls.cfl = args.cfl;
    if matches!(args.dt_mode, DtModeArg::Accuracy) {
        let width = spec.problem.x_range.1 - spec.problem.x_range.0;
        controls.mode = DtMode::AccuracyScaled {
            dx_ref: width / args.n as f64,
        };
    }
    let mut params = WeightParams::new(args.scheme.into());
    params.epsilon = args.epsilon;

    let (solution, steps) = integrate(&spec.problem, args.n, args.ny, &controls, &params)?;

    let format = match args.format {
        FormatArg::Csv => SolutionFormat::Csv,
        FormatArg::Gnuplot | FormatArg::Text => SolutionFormat::GnuplotGrid,
    };
    let exact = spec.problem.exact.clone();
    let content = match &solution {
        Solution::One(field) => {
            let oracle = exact
                .as_ref()
                .map(|f| move |x: f64| f(x, 0.0, t_final));
            emit_solution_1d(field, oracle.as_ref().map(|f| f as &dyn Fn(f64) -> f64), format)
        }
        Solution::Two(field) => {
            let oracle = exact
                .as_ref()
                .map(|f| move |x: f64, y: f64| f(x, y, t_final));
            emit_solution_2d(
                field,
                oracle.as_ref().map(|f| f as &dyn Fn(f64, f64) -> f64),
                format,
            )
        }
    };

    let ext = match format {
        SolutionFormat::Csv => "csv",
        SolutionFormat::GnuplotGrid => "dat",
    };
    let default_name = format!(
        "{}-{}-n{}.{}",
        id.to_string().to_ascii_lowercase(),
        Indicator::from(args.scheme).scheme_name(),
        args.n,
        ext
    );
    write_or_print(&content, args.output.as_deref(), &default_name)?;

    if let Some(f) = &exact {
        let errors = match &solution {
            Solution::One(field) => {
                error_norms_1d(field, |x| f(x, 0.0, t_final), L1Convention::MeasureWeighted)
            }
            Solution::Two(field) => {
                error_norms_2d(field, |x, y| f(x, y, t_final), L1Convention::MeasureWeighted)
            }
        };
        eprintln!(
            "{id} n={} t={t_final:.6} steps={steps} Linf={} L1={}",
            args.n,
            sci3(errors.l_inf),
            sci3(errors.l_1)
        );
    } else {
        eprintln!("{id} n={} t={t_final:.6} steps={steps}", args.n);
    }
    Ok(())
}

fn cmd_table(args: &TableArgs) -> Result<()> {
    let id = parse_problem(&args.problem)?;
    validate_cfl(args.cfl)?;
    let spec = catalog(id);
    if args.ns.is_empty() {
        return Err(HjError::Config("--ns requires at least one grid size".into()));
    }
    let t_final = args.t.unwrap_or(spec.default_final_times[0]);
    let mut config = StudyConfig::new(t_final);
    config.cfl = args.cfl;
    config.accuracy_scaled = matches!(args.dt_mode, DtModeArg::Accuracy);
    config.epsilon = args.epsilon;
    config.workers = args.workers.max(1);

    let format = match args.format {
        FormatArg::Csv => TableFormat::Csv,
        FormatArg::Gnuplot | FormatArg::Text => TableFormat::AlignedText,
    };

    let multi = args.schemes.len() > 1;
    for scheme_arg in &args.schemes {
        let scheme: Indicator = (*scheme_arg).into();
        let table = convergence_study(&spec, &args.ns, scheme, &config)?;
        let content = emit_table(&table, format);
        let output = match (&args.output, multi) {
            (Some(path), true) => Some(suffixed(path, scheme.scheme_name())),
            (Some(path), false) => Some(path.clone()),
            (None, _) => None,
        };
        let default_name = format!(
            "{}-table-{}.{}",
            id.to_string().to_ascii_lowercase(),
            scheme.scheme_name(),
            if format == TableFormat::Csv { "csv" } else { "txt" }
        );
        match output {
            Some(path) => write_or_print(&content, Some(&path), &default_name)?,
            None => {
                if multi && format == TableFormat::Csv {
                    println!("# {}", scheme.table_label());
                }
                write_or_print(&content, None, &default_name)?;
            }
        }
    }
    Ok(())
}

// table.csv -> table.weno-l.csv
fn suffixed(path: &Path, tag: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "table".into());
    let ext = path
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}
