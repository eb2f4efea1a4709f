use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use liecenter::report::{cmd_classify_form, cmd_gprime, cmd_info, cmd_rost, cmd_zmap, Report};
use liecenter::verify::cmd_verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Root systems, centers of simply connected groups and the Rost invariant
/// restricted to the center.
#[derive(Parser, Debug)]
#[command(name = "liecenter", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, roots, Δ_r, Δ_c and the center of a type such as E7.
    Info {
        #[arg(value_name = "TYPE")]
        system_type: String,
    },
    /// Restriction of the Rost invariant to the center for a Tits index,
    /// e.g. `E7 inner circled=1,3,4,6`.
    Rost {
        #[arg(value_name = "INDEX", required = true, num_args = 1..)]
        index: Vec<String>,
    },
    /// The cocharacter attached to a fundamental coweight.
    Zmap {
        #[arg(value_name = "TYPE")]
        system_type: String,
        #[arg(value_name = "WEIGHT_INDEX")]
        weight_index: usize,
    },
    /// Components of G′ for a Tits index.
    Gprime {
        #[arg(value_name = "INDEX", required = true, num_args = 1..)]
        index: Vec<String>,
    },
    /// Classify a 2x2 form over F2 given as 4 bits in row-major order.
    ClassifyForm {
        #[arg(value_name = "BITS", required = true, num_args = 1..)]
        bits: Vec<String>,
    },
    /// Replay the worked examples; exits 2 on any failure.
    Verify,
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text if report.is_ok() || report.command == "verify" => {
            print!("{}", report.to_text())
        }
        Format::Text => eprint!("{}", report.to_text()),
        Format::Json => print!("{}", report.to_json()),
    }
}

fn wants_json(args: &[String]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--format" && w[1] == "json")
        || args.iter().any(|a| a == "--format=json")
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            if wants_json(&args) {
                let message = e.kind().to_string();
                let report = Report::error("", json!({ "argv": &args[1..] }), message);
                print!("{}", report.to_json());
            } else {
                eprint!("{e}");
            }
            return ExitCode::from(1);
        }
    };
    let (report, failure_code) = match &cli.command {
        Command::Info { system_type } => (cmd_info(system_type), 1),
        Command::Rost { index } => (cmd_rost(&index.join(" ")), 1),
        Command::Zmap {
            system_type,
            weight_index,
        } => (cmd_zmap(system_type, *weight_index), 1),
        Command::Gprime { index } => (cmd_gprime(&index.join(" ")), 1),
        Command::ClassifyForm { bits } => (cmd_classify_form(&bits.join("")), 1),
        Command::Verify => (cmd_verify(), 2),
    };
    emit(&report, cli.format);
    if report.is_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(failure_code)
    }
}
