//! `preab`: probe small additive categories for the semi-abelian hierarchy and
//! emit re-checkable certificates for what fails.

mod commands;
mod error;
mod instance;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use preab_core::checker::PairPolicy;
use serde_json::Value;

use commands::{AiCheck, Classify, CorpusGen, Source, VerifyReport};
use error::CliError;
use instance::{with_instance, BASE_NAMES};

#[derive(Parser)]
#[command(name = "preab", version, about = "Probe-based classification of pre-abelian categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    All,
    Split,
}

#[derive(clap::Args)]
struct RunArgs {
    /// vectq, fgab, pairvect, a mock-* control, or product:<a>:<b>
    instance: String,
    /// JSON corpus to probe instead of the built-in one
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Seed for the built-in random probes
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the six stability checks and projectivity probes, then infer
    Classify(RunArgs),
    /// Check the exact-structure axioms and admissible intersections
    AiCheck {
        #[command(flatten)]
        run: RunArgs,
        #[arg(value_enum)]
        structure: StructureArg,
    },
    /// Certify the closure witnesses for a tolerance `eps`
    SeqVerify {
        #[arg(allow_hyphen_values = true)]
        eps: String,
        #[arg(default_value_t = 8)]
        m_max: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-check every certificate in a report written by this tool
    Verify { file: PathBuf },
    /// Probe corpus utilities
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Write a seeded random corpus
    Gen {
        #[arg(long, default_value = "vectq")]
        instance: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| CliError::Write { path: p.display().to_string(), source: e }),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Write { path: "stdout".into(), source: e })
                }
                _ => Ok(()),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn source(run: &RunArgs) -> Source {
    match &run.corpus {
        Some(p) => Source::File(p.display().to_string()),
        None => Source::Default(run.seed),
    }
}

fn summary(v: &Value) -> String {
    let mut lines = vec![format!("instance {}", v["instance"].as_str().unwrap_or("?"))];
    let outcome = |o: &Value| match o["verdict"].as_str() {
        Some("pass-on-corpus") => format!("pass on corpus ({} probes)", o["probes"]),
        Some("certificate") => format!("counterexample (certificate {})", o["certificate"]),
        Some("error") => format!("error: {}", o["message"].as_str().unwrap_or("")),
        _ => "?".into(),
    };
    if let Some(vs) = v["verdicts"].as_array() {
        for x in vs {
            lines.push(format!("  {:<22} {}", x["property"].as_str().unwrap_or("?"), outcome(x)));
        }
    }
    if v["command"] == "ai-check" {
        let axioms = match v["axioms"]["axiom"].as_str() {
            Some(axiom) => format!("violated: {axiom}"),
            None => "pass on corpus".into(),
        };
        lines.push(format!("  exact axioms           {axioms}"));
        lines.push(format!("  admissible intersections {}", outcome(&v["verdict"])));
    }
    lines.join("\n")
}

fn verify_file(path: &PathBuf) -> Result<usize, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Read { path: path.display().to_string(), source: e })?;
    let document: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))?;
    if document["command"] == "seq-verify" {
        return commands::verify_seq(document);
    }
    let instance = document["instance"]
        .as_str()
        .ok_or_else(|| CliError::Input("missing instance field".into()))?
        .to_string();
    with_instance(&instance, VerifyReport { document })?
}

fn run(cli: Cli) -> Result<(), CliError> {
    let policy = PairPolicy::default();
    match cli.command {
        Command::Classify(run) => {
            let report = with_instance(&run.instance, Classify { source: source(&run), policy })??;
            emit(&pretty(&report), run.json.as_ref())?;
            if run.json.is_some() {
                println!("{}", summary(&report));
            }
        }
        Command::AiCheck { run, structure } => {
            let split = matches!(structure, StructureArg::Split);
            let report = with_instance(&run.instance, AiCheck { source: source(&run), split, policy })??;
            emit(&pretty(&report), run.json.as_ref())?;
            if run.json.is_some() {
                println!("{}", summary(&report));
            }
        }
        Command::SeqVerify { eps, m_max, json } => {
            let eps = commands::parse_epsilon(&eps)?;
            let report = commands::seq_verify(&eps, m_max)?;
            emit(&pretty(&report), json.as_ref())?;
            if json.is_some() {
                println!("banach witness n = {}, nuclear witness n = {}", report["banach"]["n"], report["nuclear"]["n"]);
            }
        }
        Command::Verify { file } => {
            let n = verify_file(&file)?;
            println!("ok: {n} certificate(s) verified");
        }
        Command::Corpus { action: CorpusAction::Gen { instance, seed, size, json } } => {
            let text = with_instance(&instance, CorpusGen { seed, size })?;
            emit(&text, json.as_ref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("preab: {e}");
            if let CliError::UnknownInstance(_) = e {
                eprintln!("known instances: {}, product:<a>:<b>", BASE_NAMES.join(", "));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
