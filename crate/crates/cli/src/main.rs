use std::path::PathBuf;
use std::process::ExitCode;

use absorb_cli::doc::emit_instance;
use absorb_cli::error::{CliError, Result};
use absorb_cli::report::{predicate_list, Format};
use absorb_cli::{
    cmd_check, cmd_classify, cmd_verify, default_instances, gen, load, select_checks, EXIT_FAILED, EXIT_INPUT, EXIT_OK,
};
use absorb_core::{CheckOptions, Predicate, DEFAULT_LATTICE_CAP, MAX_ORDER};
use clap::{Parser, Subcommand};

/// Decide prime, second and 2-absorbing style submodule classes over finite
/// rings, and verify structural theorems about them.
#[derive(Parser)]
#[command(name = "absorb", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Largest module order accepted.
    #[arg(long, default_value_t = MAX_ORDER, global = true)]
    max_order: usize,
    /// Largest submodule lattice enumerated.
    #[arg(long, default_value_t = DEFAULT_LATTICE_CAP, global = true)]
    max_lattice: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate predicates on the named submodules of an instance.
    Check {
        file: PathBuf,
        /// Predicate names, comma separated or repeated.
        #[arg(long, value_delimiter = ',', default_value = "s2as")]
        predicate: Vec<String>,
        /// Exit with 1 unless every verdict is this one.
        #[arg(long)]
        expect: Option<bool>,
        /// Collect a violation for every failing s.
        #[arg(long)]
        per_s: bool,
    },
    /// Evaluate one predicate on every submodule.
    Classify {
        file: PathBuf,
        #[arg(long, default_value = "s2as")]
        predicate: String,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Run theorem checks on an instance, or on the default family.
    Verify {
        file: Option<PathBuf>,
        /// Check ids or indices, comma separated, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
    },
    /// Print a random instance document.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("absorb {}", args.join(" "))
}

fn single_predicate(name: &str) -> Result<Predicate> {
    name.parse().map_err(CliError::Usage)
}

fn run(cli: Cli) -> Result<(String, i32)> {
    let opts = CheckOptions { lattice_cap: cli.max_lattice, ..CheckOptions::default() };
    let verdict_code = |ok: bool| if ok { EXIT_OK } else { EXIT_FAILED };
    match cli.cmd {
        Cmd::Check { file, predicate, expect, per_s } => {
            let preds = predicate_list(&predicate).map_err(CliError::Usage)?;
            let built = load(&file, cli.max_order)?;
            let opts = CheckOptions { per_s_violations: per_s, ..opts };
            let (report, ok) = cmd_check(command_echo(), &built, &preds, expect, opts)?;
            Ok((report.render(cli.format), verdict_code(ok)))
        }
        Cmd::Classify { file, predicate, expect } => {
            let p = single_predicate(&predicate)?;
            let built = load(&file, cli.max_order)?;
            let (report, ok) = cmd_classify(command_echo(), &built, p, expect, opts)?;
            Ok((report.render(cli.format), verdict_code(ok)))
        }
        Cmd::Verify { file, checks } => {
            let checks = select_checks(&checks)?;
            let (family, instances) = match &file {
                Some(f) => (f.display().to_string(), load(f, cli.max_order)?.instances(opts)?),
                None => ("default family".to_string(), default_instances(cli.max_order, opts)?),
            };
            let (report, refuted) = cmd_verify(command_echo(), &family, &instances, &checks);
            Ok((report.render(cli.format), verdict_code(!refuted)))
        }
        Cmd::Gen { seed } => Ok((emit_instance(&gen::generate(seed, cli.max_order)), EXIT_OK)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
