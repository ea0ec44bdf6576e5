mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use beilinson_core::grass::DEFAULT_BUDGET;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{RunReport, Verdict};

#[derive(Parser)]
#[command(
    name = "beilinson",
    version,
    about = "Quiver realizations of projective schemes over finite fields"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Output file (the representation for `build`, the report otherwise).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on candidate evaluations for exhaustive searches.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BuildModel {
    Beilinson,
    Modified,
    Triple,
    Kronecker,
}

#[derive(Clone, Copy, Debug, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Via {
    Direct,
    Kronecker,
    Triple,
    Full,
    Moduli,
    Chart,
}

#[derive(Subcommand)]
enum Command {
    /// Build a presentation and the module M for one model.
    Build {
        file: PathBuf,
        #[arg(long, value_enum)]
        model: BuildModel,
    },
    /// List the F_q-points of X through one realization.
    Points {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Via::Direct)]
        via: Via,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Cross-check every realization against X(F_q).
    Verify {
        file: PathBuf,
        #[arg(long = "q")]
        qs: Vec<u32>,
        /// Stored representation JSON whose relations are checked as well.
        #[arg(long)]
        representation: Option<PathBuf>,
    },
    /// Hilbert function m -> dim S^m V / I_m.
    Hilbert {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        upto: u32,
    },
    /// Bilinear equations of the Kronecker-model grassmannian.
    Equations { file: PathBuf },
}

fn run(cli: &Cli) -> anyhow::Result<(RunReport, Vec<String>)> {
    let start = Instant::now();
    let (name, inputs, outcome) = match &cli.command {
        Command::Build { file, model } => (
            "build",
            json!({ "file": file, "model": model }),
            commands::build(file, *model, cli.out.as_deref())?,
        ),
        Command::Points { file, via, q } => (
            "points",
            json!({ "file": file, "via": via, "q": q, "budget": cli.budget.to_string() }),
            commands::points(file, *via, *q, cli.budget)?,
        ),
        Command::Verify {
            file,
            qs,
            representation,
        } => (
            "verify",
            json!({ "file": file, "q": qs, "representation": representation, "budget": cli.budget.to_string() }),
            commands::verify(file, qs, representation.as_deref(), cli.budget)?,
        ),
        Command::Hilbert { file, upto } => (
            "hilbert",
            json!({ "file": file, "upto": upto }),
            commands::hilbert(file, *upto)?,
        ),
        Command::Equations { file } => (
            "equations",
            json!({ "file": file }),
            commands::equations(file)?,
        ),
    };
    let report = RunReport {
        command: name,
        inputs,
        results: outcome.results,
        timing_ms: start.elapsed().as_millis() as u64,
        verdict: Verdict::from_ok(outcome.ok),
    };
    Ok((report, outcome.lines))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, lines) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(&lines),
    };
    print!("{rendered}");
    if let (Some(path), false) = (&cli.out, matches!(cli.command, Command::Build { .. })) {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match report.verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        Verdict::Fail => ExitCode::FAILURE,
    }
}
