use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use zetaphase_cli::config::{DEFAULT_DIGITS, DEFAULT_T_MAX, T_MAX_ENV};
use zetaphase_cli::{
    cmd_eval, cmd_scan, cmd_verify, cmd_zeros, CliError, CliResult, OutputFormat, RunConfig, ScanColumn, Suite,
    ZeroKindArg, ZerosRequest, EXIT_OK,
};

#[derive(Parser, Debug)]
#[command(name = "zetaphase", version, about = "Phase function kappa(t) of zeta and the zeros it locates")]
struct Cli {
    /// Significant digits in numeric output (6..=17).
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS)]
    digits: usize,

    /// Largest |t| or catalog height accepted (at most 1000).
    #[arg(long, global = true, env = T_MAX_ENV, default_value_t = DEFAULT_T_MAX)]
    t_max: f64,

    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All quantities at one ordinate.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Selected quantities on the grid t_lo, t_lo + step, ..., t_hi.
    Scan {
        #[arg(allow_negative_numbers = true)]
        t_lo: f64,
        #[arg(allow_negative_numbers = true)]
        t_hi: f64,
        step: f64,
        #[arg(value_enum, required = true, num_args = 1..)]
        what: Vec<ScanColumn>,
    },
    /// Zero catalogs as CSV.
    Zeros {
        #[arg(value_enum)]
        kind: ZeroKindArg,
        #[arg(long)]
        count: Option<u32>,
        #[arg(long)]
        height: Option<f64>,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = RunConfig::new(cli.digits, cli.t_max, cli.threads, cli.format)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;

    let mut out: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match cli.command {
        Command::Eval { t } => cmd_eval(t, &cfg, &mut out)?,
        Command::Scan { t_lo, t_hi, step, what } => cmd_scan(t_lo, t_hi, step, &what, &cfg, &mut out)?,
        Command::Zeros { kind, count, height } => cmd_zeros(&ZerosRequest { kind, count, height }, &cfg, &mut out)?,
        Command::Verify { suite } => {
            let r = cmd_verify(suite, &mut out);
            out.flush()?;
            r?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { zetaphase_cli::EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
