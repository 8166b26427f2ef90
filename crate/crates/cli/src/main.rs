use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use liespray_cli::analyze::{analyze, run_solve, OracleConfig};
use liespray_cli::checks::run_check;
use liespray_cli::error::{CliError, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
use liespray_cli::oracle::{DEFAULT_POINTS, DEFAULT_SEED};
use liespray_cli::problem::{Problem, SolveCondition};
use liespray_cli::table::{cmd_table, TableFormat};

#[derive(Parser)]
#[command(name = "liespray", version, about = "Symmetry algebras of sprays on tangent bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Md,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run every analysis requested by a problem file.
    Analyze {
        file: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "md")]
        format: ReportFormat,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
    },
    /// Print the multiplication table of a generator set.
    Table {
        file: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormat,
    },
    /// Evaluate one identity or derivative check at seeded sample points.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        check: String,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Solve for the combinations of a dictionary satisfying conditions.
    Solve {
        file: PathBuf,
        #[arg(long)]
        dict: String,
        #[arg(long)]
        isometry: bool,
        #[arg(long)]
        spray_symmetry: bool,
        #[arg(long)]
        horizontal: bool,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze {
            file,
            out,
            format,
            seed,
            points,
        } => {
            let problem = Problem::load(&file)?;
            let report = analyze(&problem, OracleConfig { seed, points })?;
            let text = match format {
                ReportFormat::Md => report.to_markdown(),
                ReportFormat::Json => report.to_json(),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            for m in &report.mismatches {
                eprintln!("mismatch: {m}");
            }
            for d in report.discrepancies.iter().filter(|d| !d.is_resolved()) {
                eprintln!(
                    "unresolved discrepancy at {}: reference {} vs computed {} (oracle: {})",
                    d.location, d.reference, d.computed, d.arbitration.verdict
                );
            }
            for v in &report.violations {
                eprintln!("invariant violation: {v}");
            }
            Ok(report.exit_code())
        }
        Command::Table { file, set, format } => {
            let problem = Problem::load(&file)?;
            print!("{}", cmd_table(&problem, &set, format)?);
            Ok(EXIT_OK)
        }
        Command::Oracle {
            file,
            check,
            points,
            seed,
        } => {
            let problem = Problem::load(&file)?;
            let r = run_check(&problem, &check, OracleConfig { seed, points })?;
            println!("{}", r.line());
            Ok(if r.passed() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Solve {
            file,
            dict,
            isometry,
            spray_symmetry,
            horizontal,
        } => {
            let problem = Problem::load(&file)?;
            let mut conditions = Vec::new();
            if spray_symmetry {
                conditions.push(SolveCondition::SpraySymmetry);
            }
            if isometry {
                conditions.push(SolveCondition::Isometry);
            }
            if horizontal {
                conditions.push(SolveCondition::Horizontal);
            }
            let r = run_solve(&problem, &dict, &conditions)?;
            println!("dimension {}", r.dim);
            for (i, b) in r.basis.iter().enumerate() {
                println!("{}. ({})", i + 1, b.join(", "));
            }
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
