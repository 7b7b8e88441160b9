//! The `tangle` command line: argument parsing, the report envelope and
//! its exit-code mapping.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::demo::{run_demo, DemoAssets, DemoReport};
use crate::diagonal::{make_diag, make_liar1, make_what, Adversary, DeciderKind, DeciderRef};
use crate::interp::{Interpreter, Outcome, DEFAULT_FUEL};
use crate::lang::{validate, DefinitionTable, Kind};
use crate::refuter::{refute, Budget, Mode, RefutationReport, Verdict};
use crate::spec_logic::{classify, explain, parse_system, Classification, Label};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DEMO_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DIVERGES: i32 = 10;
pub const EXIT_FUEL_EXHAUSTED: i32 = 11;
pub const EXIT_FAULT: i32 = 12;
pub const EXIT_OVERDETERMINED: i32 = 20;
pub const EXIT_UNDERDETERMINED: i32 = 21;
pub const EXIT_NOT_TOTAL: i32 = 30;
pub const EXIT_UNKNOWN: i32 = 31;

#[derive(Debug, Parser)]
#[command(
    name = "tangle",
    version,
    about = "Run, classify and refute self-referential programs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Step budget per run.
    #[arg(long, global = true, env = "TANGLE_FUEL", default_value_t = DEFAULT_FUEL,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub fuel: u64,

    /// Emit the JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Stream one line per step (run) or print the transcript (refute).
    #[arg(long, global = true)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Halts,
    What,
    PrintsA,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Halts => Mode::Halts,
            ModeArg::What => Mode::What,
            ModeArg::PrintsA => Mode::PrintsA,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a procedure.
    Run {
        file: PathBuf,
        procedure: String,
        args: Vec<String>,
    },
    /// Count the solutions of an equation system.
    Classify { file: PathBuf },
    /// Print the adversary built against a decider.
    Diag {
        file: PathBuf,
        decider: String,
        #[arg(long, value_enum, default_value = "halts")]
        mode: ModeArg,
    },
    /// Run the diagonal argument against a decider.
    Refute {
        file: PathBuf,
        decider: String,
        #[arg(long, value_enum, default_value = "halts")]
        mode: ModeArg,
        /// Overrides --fuel for the decider query.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        decider_fuel: Option<u64>,
        /// Overrides --fuel for the adversary run.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        adversary_fuel: Option<u64>,
    },
    /// Reproduce every bundled example and check the results.
    Demo {
        /// Read assets from this directory instead of the embedded copies.
        #[arg(long)]
        assets: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub procedure: String,
    pub args: Vec<String>,
    pub fuel: u64,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub system: String,
    pub classification: Classification,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynthesisReport {
    pub mode: Mode,
    pub decider: String,
    pub adversary: Adversary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Run(RunReport),
    Classification(ClassifyReport),
    Synthesis(SynthesisReport),
    Refutation(RefutationReport),
    Demo(DemoReport),
    Error { message: String },
}

impl Payload {
    pub fn exit_code(&self) -> i32 {
        match self {
            Payload::Run(r) => match r.outcome {
                Outcome::Halted { .. } => EXIT_OK,
                Outcome::Diverges { .. } => EXIT_DIVERGES,
                Outcome::FuelExhausted { .. } => EXIT_FUEL_EXHAUSTED,
                Outcome::Fault { .. } => EXIT_FAULT,
            },
            Payload::Classification(c) => match c.classification.label {
                Label::Determined => EXIT_OK,
                Label::Overdetermined => EXIT_OVERDETERMINED,
                Label::Underdetermined => EXIT_UNDERDETERMINED,
            },
            Payload::Synthesis(_) => EXIT_OK,
            Payload::Refutation(r) => match r.verdict {
                Verdict::WrongAnswer | Verdict::SelfFulfilling => EXIT_OK,
                Verdict::NotTotal => EXIT_NOT_TOTAL,
                Verdict::Unknown => EXIT_UNKNOWN,
            },
            Payload::Demo(d) => {
                if d.all_passed() {
                    EXIT_OK
                } else {
                    EXIT_DEMO_MISMATCH
                }
            }
            Payload::Error { .. } => EXIT_USAGE,
        }
    }
}

impl fmt::Display for Payload {
    /// `{:#}` adds refutation transcripts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Run(r) => {
                let args: Vec<String> = r.args.iter().map(|a| format!("'{a}'")).collect();
                writeln!(f, "{} ({}) -> {}", r.procedure, args.join(", "), r.outcome)
            }
            Payload::Classification(c) => {
                write!(f, "{}", c.system)?;
                writeln!(
                    f,
                    "{} ({} solution{})",
                    c.classification.label,
                    c.classification.count,
                    if c.classification.count == 1 { "" } else { "s" }
                )?;
                write!(f, "{}", c.explanation)
            }
            Payload::Synthesis(s) => writeln!(f, "{}", s.adversary.source),
            Payload::Refutation(r) if f.alternate() => write!(f, "{r:#}"),
            Payload::Refutation(r) => write!(f, "{r}"),
            Payload::Demo(d) => write!(f, "{d}"),
            Payload::Error { message } => writeln!(f, "error: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Envelope {
    pub command: String,
    pub inputs_digest: String,
    pub result: Payload,
    pub exit_status: i32,
}

impl Envelope {
    fn new(command: String, inputs: &[&str], result: Payload) -> Self {
        let mut h = Sha256::new();
        for i in inputs {
            h.update((i.len() as u64).to_le_bytes());
            h.update(i.as_bytes());
        }
        Envelope {
            command,
            inputs_digest: hex::encode(h.finalize()),
            exit_status: result.exit_code(),
            result,
        }
    }
}

fn error(message: impl fmt::Display) -> String {
    message.to_string()
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| error(format!("{}: {e}", path.display())))
}

fn load_table(path: &Path, text: &str) -> Result<DefinitionTable, String> {
    let table =
        DefinitionTable::parse(text).map_err(|e| error(format!("{}:{e}", path.display())))?;
    validate(&table).map_err(|errs| {
        let msgs: Vec<String> = errs.iter().map(ToString::to_string).collect();
        error(format!("{}: {}", path.display(), msgs.join("; ")))
    })?;
    Ok(table)
}

/// Executes a parsed command line. Trace lines for `run --trace` go to
/// `trace_out` as they happen.
pub fn execute(cli: &Cli, echo: String, trace_out: &mut dyn Write) -> Envelope {
    let mut inputs: Vec<String> = Vec::new();
    let result =
        dispatch(cli, &mut inputs, trace_out).unwrap_or_else(|message| Payload::Error { message });
    let inputs: Vec<&str> = inputs.iter().map(String::as_str).collect();
    Envelope::new(echo, &inputs, result)
}

fn dispatch(
    cli: &Cli,
    inputs: &mut Vec<String>,
    trace_out: &mut dyn Write,
) -> Result<Payload, String> {
    match &cli.command {
        Command::Run {
            file,
            procedure,
            args,
        } => {
            let text = read(file)?;
            inputs.push(text.clone());
            let table = load_table(file, &text)?;
            match table.get(procedure) {
                None => return Err(error(format!("no definition named `{procedure}`"))),
                Some(d) if d.kind != Kind::Procedure => {
                    return Err(error(format!("`{procedure}` is not a procedure")))
                }
                Some(d) if d.arity() != args.len() => {
                    return Err(error(format!(
                        "`{procedure}` takes {} argument(s), {} given",
                        d.arity(),
                        args.len()
                    )))
                }
                Some(_) => {}
            }
            let interp = Interpreter::new(&table);
            let outcome = if cli.trace {
                interp.run_traced(procedure, Kind::Procedure, args, cli.fuel, &mut |line| {
                    let _ = writeln!(trace_out, "{line}");
                })
            } else {
                interp.run(procedure, args, cli.fuel)
            };
            Ok(Payload::Run(RunReport {
                procedure: procedure.clone(),
                args: args.clone(),
                fuel: cli.fuel,
                outcome,
            }))
        }
        Command::Classify { file } => {
            let text = read(file)?;
            inputs.push(text.clone());
            let sys = parse_system(&text).map_err(|e| error(format!("{}:{e}", file.display())))?;
            let classification = classify(&sys).map_err(error)?;
            Ok(Payload::Classification(ClassifyReport {
                system: sys.to_string(),
                explanation: explain(&sys, &classification),
                classification,
            }))
        }
        Command::Diag {
            file,
            decider,
            mode,
        } => {
            let text = read(file)?;
            inputs.push(text.clone());
            let table = load_table(file, &text)?;
            let mode = Mode::from(*mode);
            let d = DeciderRef::new(&table, decider, decider_kind(mode)).map_err(error)?;
            let adversary = match mode {
                Mode::Halts => make_diag(&table, &d),
                Mode::What => make_what(&table, &d),
                Mode::PrintsA => make_liar1(&table, &d),
            };
            Ok(Payload::Synthesis(SynthesisReport {
                mode,
                decider: decider.clone(),
                adversary,
            }))
        }
        Command::Refute {
            file,
            decider,
            mode,
            decider_fuel,
            adversary_fuel,
        } => {
            let text = read(file)?;
            inputs.push(text.clone());
            let table = load_table(file, &text)?;
            let mode = Mode::from(*mode);
            let d = DeciderRef::new(&table, decider, decider_kind(mode)).map_err(error)?;
            let budget = Budget {
                decider: decider_fuel.unwrap_or(cli.fuel),
                adversary: adversary_fuel.unwrap_or(cli.fuel),
            };
            refute(&table, &d, mode, budget)
                .map(Payload::Refutation)
                .map_err(error)
        }
        Command::Demo { assets } => {
            let assets = match assets {
                Some(dir) => DemoAssets::from_dir(dir)
                    .map_err(|e| error(format!("{}: {e}", dir.display())))?,
                None => DemoAssets::default(),
            };
            inputs.extend(assets.texts().iter().map(|s| s.to_string()));
            Ok(Payload::Demo(run_demo(&assets)))
        }
    }
}

fn decider_kind(mode: Mode) -> DeciderKind {
    match mode {
        Mode::PrintsA => DeciderKind::PrintsA,
        Mode::Halts | Mode::What => DeciderKind::Halting,
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let stderr = std::io::stderr();
    let envelope = execute(&cli, echo, &mut stderr.lock());
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if cli.json {
        let text = serde_json::to_string_pretty(&envelope).expect("reports serialize");
        let _ = writeln!(out, "{text}");
    } else if let Payload::Error { .. } = envelope.result {
        eprint!("{}", envelope.result);
    } else if cli.trace {
        let _ = write!(out, "{:#}", envelope.result);
    } else {
        let _ = write!(out, "{}", envelope.result);
    }
    envelope.exit_status
}
