use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hecke_zeta::commands::{
    cmd_eval, cmd_hausdorff, cmd_ruelle, cmd_table, cmd_trivial, error_outcome, Outcome, OutputFormat, RunConfig,
};

const AFTER_HELP: &str = "\
Exit codes: 0 success, 2 computation-domain error, 3 certification failure.

CSV columns:
  eval       w,s_re,s_im,n,value_re,value_im,bound
  hausdorff  w,delta,lo,hi,width,certified_digits,n_lo,n_hi,error
  table      (as hausdorff, one row per w)
  ruelle     w,n,f0,f1,ratio,defect,tolerance,holds
  trivial    w,m,observed_rank,predicted_rank,degree_lower,degree_upper,pattern_ok,probe_slope

JSON documents carry \"schema\": \"hecke-zeta/1\".";

/// Selberg zeta functions of Hecke triangle groups with certified error bounds.
#[derive(Parser)]
#[command(name = "hecke", version, after_help = AFTER_HELP)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Hecke parameter w > 2 (decimal or `2pi`); `table` takes a comma list.
    #[arg(long, global = true, env = "HECKE_W")]
    w: Option<String>,
    /// Decimal digits of output.
    #[arg(long, global = true, env = "HECKE_DIGITS", default_value_t = 20)]
    digits: u32,
    /// Matrix size N for eval and ruelle; the largest N tried by hausdorff and table.
    #[arg(long, global = true, env = "HECKE_N")]
    n: Option<usize>,
    /// Working precision in bits.
    #[arg(long = "prec-bits", global = true, env = "HECKE_PREC_BITS")]
    prec_bits: Option<u32>,
    /// Output format: text, json or csv.
    #[arg(long, global = true, env = "HECKE_FORMAT", default_value = "text")]
    format: String,
    /// Zeta value cache file.
    #[arg(long, global = true, env = "HECKE_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// F_N(s) with its certified error bound.
    Eval {
        /// The point s as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Certified Hausdorff dimension for one w.
    Hausdorff,
    /// Certified Hausdorff dimensions for several w (default 3,4,5,6,8,10,16,40,100).
    Table,
    /// The identity F_N(0) = 2 F_(N-1)(1).
    Ruelle,
    /// Rank structure of the trivial zero at s = -m.
    Trivial {
        #[arg(long, env = "HECKE_M", default_value_t = 1)]
        m: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.common.format.parse::<OutputFormat>() {
        Ok(f) => f,
        Err(e) => return emit(error_outcome("hecke", OutputFormat::Text, &e)),
    };
    let ws = cli.common.w.clone();
    let config = RunConfig {
        w: ws.clone().unwrap_or_else(|| "3".into()),
        digits: cli.common.digits,
        n_override: cli.common.n,
        precision_bits: cli.common.prec_bits,
        format,
        cache_path: cli.common.cache,
    };
    let outcome = match cli.command {
        Command::Eval { s } => cmd_eval(&config, &s),
        Command::Hausdorff => cmd_hausdorff(&config),
        Command::Table => {
            let list: Vec<String> = ws
                .map(|w| w.split(',').map(|p| p.trim().to_string()).collect())
                .unwrap_or_default();
            cmd_table(&config, &list)
        }
        Command::Ruelle => cmd_ruelle(&config),
        Command::Trivial { m } => cmd_trivial(&config, m),
    };
    emit(outcome)
}

fn emit(outcome: Outcome) -> ExitCode {
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
