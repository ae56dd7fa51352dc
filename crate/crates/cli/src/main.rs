mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use report::{envelope, CliError, CliResult, Output};

#[derive(Parser, Debug)]
#[command(
    name = "tczeta",
    version,
    about = "Twisted conjugacy classes and their zeta functions"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conjugacy classes of a group.
    Classes { group: String },
    /// Reidemeister classes of an endomorphism and R(phi^n).
    Reid {
        group: String,
        endo: String,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
    },
    /// Reidemeister zeta function as a rational function.
    Zeta {
        group: String,
        endo: String,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        /// Fail if any Gauss congruence residue is nonzero.
        #[arg(long)]
        check_congruences: bool,
        /// Check the functional equation and det(sigma).
        #[arg(long)]
        check_fe: bool,
    },
    /// R(phi^n), fixed classes of B^n and RT(phi^n).
    Tbft {
        group: String,
        endo: String,
        #[arg(long, default_value_t = 8)]
        max_n: u32,
        /// Representation files for the twisted class function basis check.
        #[arg(long = "rep")]
        reps: Vec<String>,
    },
    /// Character table.
    Chartable { group: String },
    /// Zeta function counting fixed irreducible representations.
    RtZeta { group: String, endo: String },
    /// Endomorphism of Z^k given by an integer matrix.
    Abelian {
        /// Rows separated by `;`, e.g. "2 1; 1 1".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        /// Compare finite quotients up to this index.
        #[arg(long)]
        profinite: Option<u32>,
    },
    /// Right shift on the restricted direct sum of copies of a finite group.
    Shift {
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = tczeta::shift::DEFAULT_SEED)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classes { .. } => "classes",
            Command::Reid { .. } => "reid",
            Command::Zeta { .. } => "zeta",
            Command::Tbft { .. } => "tbft",
            Command::Chartable { .. } => "chartable",
            Command::RtZeta { .. } => "rt-zeta",
            Command::Abelian { .. } => "abelian",
            Command::Shift { .. } => "shift",
        }
    }

    fn inputs(&self) -> Value {
        match self {
            Command::Classes { group } | Command::Chartable { group } => json!({"group": group}),
            Command::Reid { group, endo, max_n } => json!({"group": group, "endo": endo, "max_n": max_n}),
            Command::Zeta {
                group,
                endo,
                max_n,
                check_congruences,
                check_fe,
            } => json!({
                "group": group,
                "endo": endo,
                "max_n": max_n,
                "check_congruences": check_congruences,
                "check_fe": check_fe,
            }),
            Command::Tbft {
                group,
                endo,
                max_n,
                reps,
            } => {
                json!({"group": group, "endo": endo, "max_n": max_n, "reps": reps})
            }
            Command::RtZeta { group, endo } => json!({"group": group, "endo": endo}),
            Command::Abelian {
                matrix,
                max_n,
                profinite,
            } => json!({"matrix": matrix, "max_n": max_n, "profinite": profinite}),
            Command::Shift { base, max_n, seed } => json!({"base": base, "max_n": max_n, "seed": seed}),
        }
    }

    fn run(&self) -> CliResult<Output> {
        let positive = |n: u32| {
            if n == 0 {
                Err(CliError::input("InvalidArgument", "--max-n must be at least 1"))
            } else {
                Ok(n)
            }
        };
        match self {
            Command::Classes { group } => commands::classes(group),
            Command::Reid { group, endo, max_n } => commands::reid(group, endo, positive(*max_n)?),
            Command::Zeta {
                group,
                endo,
                max_n,
                check_congruences,
                check_fe,
            } => commands::zeta(
                group,
                endo,
                positive(*max_n)?,
                commands::ZetaFlags {
                    check_congruences: *check_congruences,
                    check_fe: *check_fe,
                },
            ),
            Command::Tbft {
                group,
                endo,
                max_n,
                reps,
            } => commands::tbft(group, endo, positive(*max_n)?, reps),
            Command::Chartable { group } => commands::chartable(group),
            Command::RtZeta { group, endo } => commands::rt_zeta(group, endo),
            Command::Abelian {
                matrix,
                max_n,
                profinite,
            } => commands::abelian(matrix, positive(*max_n)?, *profinite),
            Command::Shift { base, max_n, seed } => commands::shift(base, positive(*max_n)?, *seed),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            if std::env::args().any(|a| a == "--json") {
                let err = CliError::input("UsageError", e.to_string().trim());
                println!("{}", envelope("", Value::Null, &Err(err)));
            } else {
                eprint!("{}", e.render());
            }
            return ExitCode::from(1);
        }
    };
    let outcome = cli.command.run();
    if cli.json {
        let report = envelope(cli.command.name(), cli.command.inputs(), &outcome);
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    } else {
        match &outcome {
            Ok(out) => {
                for line in &out.text {
                    println!("{line}");
                }
            }
            Err(e) => eprintln!("error [{}]: {e}", e.code()),
        }
    }
    match outcome {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => ExitCode::from(e.exit_code() as u8),
    }
}
