//! `qscat`: spectral and scattering tables for one-dimensional fourth-order
//! operators.  See `qscat --help` and the repository README for usage.

mod config;
mod output;
mod run;
mod validate;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{BcSpec, Format, LambdaGrid, Mode, OutputKind, ScenarioConfig};
use run::RunError;
use validate::Suite;

#[derive(Parser)]
#[command(name = "qscat", version, about = "Spectral/scattering tables for fourth-order operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Energy grid `min:max:count[:log]`.
    #[arg(long)]
    lambda: Option<String>,
    /// Output kinds (repeatable): scatter, eigen, resonance, ssf, levinson,
    /// resolvent, density, checks.
    #[arg(long = "output", value_delimiter = ',')]
    outputs: Vec<String>,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Tolerance override `NAME=VALUE` (repeatable).
    #[arg(long = "tol")]
    tolerances: Vec<String>,
    /// Seed for randomized corpora.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for grid sweeps (default: available cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Half-line operator: exact boundary-condition model, or short-range
    /// numeric scattering when --potential is given.
    Halfline {
        /// Boundary condition `alpha=RE+IMi,alpha1=V,alpha2=V,family=NAME`.
        #[arg(long)]
        bc: Option<String>,
        /// Potential spec (switches to the short-range numeric solver).
        #[arg(long)]
        potential: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Whole-line operator with decaying potentials: Jost-solution solver.
    Fullline {
        /// Potential spec, e.g. `gaussian:amp=0.4,width=1` or
        /// `v0=box:amp=0.5,lo=-1,hi=1;v1=gaussian:amp=0.2,width=1`.
        #[arg(long)]
        potential: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the invariant suites.
    Validate {
        /// Suite size: quick or full.
        #[arg(long, default_value = "quick")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Where to serialize failing cases.
        #[arg(long, default_value = "validate-failures.json")]
        replay_out: PathBuf,
        /// Re-run the cases in a previously written replay file instead.
        #[arg(long)]
        replay: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            let code = match e {
                RunError::Config(_) => 1,
                RunError::Validation(_) => 2,
                RunError::Numerical(_) => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Halfline { bc, potential, common } => {
            let mode = if potential.is_some() { Mode::HalflineShortrange } else { Mode::HalflineExact };
            let config = build_config(mode, bc, potential, &common)?;
            execute(&config, &common)
        }
        Command::Fullline { potential, common } => {
            let config = build_config(Mode::Fullline, None, potential, &common)?;
            execute(&config, &common)
        }
        Command::Validate { suite, seed, replay_out, replay } => {
            if let Some(path) = replay {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| RunError::Config(format!("cannot read replay file: {e}")))?;
                let cases: Vec<validate::ReplayCase> = serde_json::from_str(&text)
                    .map_err(|e| RunError::Config(format!("replay file: {e}")))?;
                let mut still_failing = false;
                for case in &cases {
                    let line = validate::replay(case)?;
                    println!("{line}");
                    still_failing |= line.ends_with("still failing");
                }
                if still_failing {
                    return Err(RunError::Validation("replayed cases still fail".into()));
                }
                return Ok(());
            }
            let suite = match suite.as_str() {
                "quick" => Suite::Quick,
                "full" => Suite::Full,
                other => return Err(RunError::Config(format!("unknown suite `{other}`"))),
            };
            let (report, failures) = validate::run_suite(suite, seed);
            print!("{report}");
            if !failures.is_empty() {
                validate::write_replay_file(&replay_out, &failures)
                    .map_err(|e| RunError::Config(format!("cannot write replay file: {e}")))?;
                eprintln!("{} failing case(s) written to {}", failures.len(), replay_out.display());
                return Err(RunError::Validation("invariant suite breached".into()));
            }
            Ok(())
        }
    }
}

fn build_config(
    mode: Mode,
    bc: Option<String>,
    potential: Option<String>,
    common: &CommonArgs,
) -> Result<ScenarioConfig, RunError> {
    // Start from the config file if given, then apply flag overrides.
    let mut config: ScenarioConfig = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| RunError::Config(format!("cannot read config: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| RunError::Config(format!("config file: {e}")))?
        }
        None => ScenarioConfig {
            mode,
            bc: None,
            potential: None,
            lambda_grid: LambdaGrid {
                min: 0.1,
                max: 10.0,
                count: 50,
                spacing: config::Spacing::Linear,
            },
            outputs: vec![OutputKind::Scatter],
            tolerances: Default::default(),
            output_format: Format::Csv,
            seed: 0,
            jobs: None,
        },
    };
    config.mode = mode;
    if let Some(s) = bc {
        config.bc = Some(BcSpec::parse_flag(&s).map_err(RunError::Config)?);
    }
    if let Some(p) = potential {
        config.potential = Some(p);
    }
    if let Some(grid) = &common.lambda {
        config.lambda_grid = grid.parse().map_err(RunError::Config)?;
    }
    if !common.outputs.is_empty() {
        config.outputs = common
            .outputs
            .iter()
            .map(|s| s.parse().map_err(RunError::Config))
            .collect::<Result<_, _>>()?;
    }
    if let Some(fmt) = &common.format {
        config.output_format = fmt.parse().map_err(RunError::Config)?;
    }
    for spec in &common.tolerances {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| RunError::Config(format!("--tol expects NAME=VALUE, got `{spec}`")))?;
        let v: f64 = value
            .parse()
            .map_err(|e| RunError::Config(format!("tolerance `{name}`: {e}")))?;
        config.tolerances.insert(name.to_string(), v);
    }
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if common.jobs.is_some() {
        config.jobs = common.jobs;
    }
    Ok(config)
}

fn execute(config: &ScenarioConfig, common: &CommonArgs) -> Result<(), RunError> {
    // Always produce the tables; a failing `checks` table is still written
    // before the validation error propagates into the exit code.
    let (tables, validation) = run::run(config)?;
    let mut sink: Box<dyn Write> = match &common.out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| RunError::Config(format!("cannot create output file: {e}")))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    output::emit(&tables, config.output_format, &mut sink)
        .map_err(|e| RunError::Config(format!("write failed: {e}")))?;
    match validation {
        Some(m) => Err(RunError::Validation(m)),
        None => Ok(()),
    }
}
