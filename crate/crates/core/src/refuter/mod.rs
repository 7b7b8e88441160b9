//! Runs the diagonal argument against a concrete decider: ask the decider
//! about its adversary, run the adversary, compare.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::diagonal::{make_diag, make_liar1, make_what, Adversary, DeciderError, DeciderRef};
use crate::interp::{Cycle, Interpreter, Outcome, DEFAULT_FUEL};
use crate::lang::{validate, DefinitionTable, Kind, ParseError, SemanticError};

/// Lines kept at each end of a transcript.
pub const TRANSCRIPT_EDGE: usize = 100;
pub const ELISION: &str = "…";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Against `diag`: the decider claims to decide termination.
    Halts,
    /// Against `what`: either answer turns out right.
    What,
    /// Against `liar1`: the decider claims to decide "prints 'A'".
    PrintsA,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Halts => "halts",
            Mode::What => "what",
            Mode::PrintsA => "prints-a",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// The decider answered, and the adversary did the opposite.
    WrongAnswer,
    /// The decider looped or faulted instead of answering.
    NotTotal,
    /// Some run exhausted its fuel.
    Unknown,
    /// The adversary did exactly what the decider said it would.
    SelfFulfilling,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Separate step budgets for asking the decider and running the adversary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Budget {
    pub decider: u64,
    pub adversary: u64,
}

impl Budget {
    pub fn uniform(fuel: u64) -> Self {
        Budget {
            decider: fuel,
            adversary: fuel,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::uniform(DEFAULT_FUEL)
    }
}

/// Evidence for the adversary's behavior that the interpreter can replay.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The adversary's configuration repeats between these steps.
    Cycle { first: u64, second: u64 },
    /// The adversary halts after exactly `steps` steps with `output`.
    HaltingTrace { steps: u64, output: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Cycle { first, second } => {
                write!(
                    f,
                    "configuration after step {first} recurs after step {second}"
                )
            }
            Witness::HaltingTrace { steps, output } => {
                write!(f, "halts after {steps} steps printing {output:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationReport {
    pub mode: Mode,
    pub decider: String,
    pub adversary: Adversary,
    /// The decider applied to `(adversary, adversary)`.
    pub decider_answer: Outcome,
    /// The adversary run on its own name; absent when the decider gave no
    /// boolean.
    pub behavior: Option<Outcome>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Set when answer and behavior relate in a way a correct interpreter
    /// cannot produce.
    pub anomaly: Option<String>,
    /// Step trace of the adversary run, first and last lines only.
    pub transcript: Vec<String>,
    pub fuel: Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefuteError {
    #[error("table does not validate: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<SemanticError>),
    #[error(transparent)]
    Decider(#[from] DeciderError),
    #[error("synthesized adversary failed to parse: {0}")]
    Synthesis(#[from] ParseError),
}

/// Decider `d` against `diag`.
pub fn refute_halts(
    t: &DefinitionTable,
    d: &DeciderRef,
    budget: Budget,
) -> Result<RefutationReport, RefuteError> {
    refute(t, d, Mode::Halts, budget)
}

/// Decider `d` against `what`.
pub fn audit_what(
    t: &DefinitionTable,
    d: &DeciderRef,
    budget: Budget,
) -> Result<RefutationReport, RefuteError> {
    refute(t, d, Mode::What, budget)
}

/// Decider `d`, read as deciding "prints 'A'", against `liar1`.
pub fn refute_property(
    t: &DefinitionTable,
    d: &DeciderRef,
    budget: Budget,
) -> Result<RefutationReport, RefuteError> {
    refute(t, d, Mode::PrintsA, budget)
}

pub fn refute(
    t: &DefinitionTable,
    d: &DeciderRef,
    mode: Mode,
    budget: Budget,
) -> Result<RefutationReport, RefuteError> {
    validate(t).map_err(RefuteError::Invalid)?;
    // Re-check the header here; a DeciderRef may come from another table.
    DeciderRef::new(t, &d.name, d.kind)?;
    let adversary = match mode {
        Mode::Halts => make_diag(t, d),
        Mode::What => make_what(t, d),
        Mode::PrintsA => make_liar1(t, d),
    };
    let extended = t.with_source(adversary.source.as_str())?;
    let interp = Interpreter::new(&extended);
    let name = adversary.name.clone();
    let self_args = [name.as_str(), name.as_str()];
    let answer = interp.eval_fn(&d.name, &self_args, budget.decider);

    let mut report = RefutationReport {
        mode,
        decider: d.name.clone(),
        adversary,
        decider_answer: answer.clone(),
        behavior: None,
        verdict: Verdict::Unknown,
        witness: None,
        anomaly: None,
        transcript: Vec::new(),
        fuel: budget,
    };
    let claim = match answer {
        Outcome::Halted { value: Some(b), .. } => b,
        Outcome::Halted { value: None, .. } => {
            report.anomaly = Some("function halted without a result".into());
            return Ok(report);
        }
        Outcome::Diverges { .. } | Outcome::Fault { .. } => {
            report.verdict = Verdict::NotTotal;
            return Ok(report);
        }
        Outcome::FuelExhausted { .. } => return Ok(report),
    };

    let mut transcript = Transcript::default();
    let behavior = interp.run_traced(
        &name,
        Kind::Procedure,
        &[name.as_str()],
        budget.adversary,
        &mut |line| transcript.push(line.to_string()),
    );
    report.transcript = transcript.finish();
    judge(mode, claim, &behavior, &mut report);
    report.behavior = Some(behavior);
    Ok(report)
}

fn judge(mode: Mode, claim: bool, behavior: &Outcome, report: &mut RefutationReport) {
    let witness = match behavior {
        Outcome::Halted { output, steps, .. } => Witness::HaltingTrace {
            steps: *steps,
            output: output.clone(),
        },
        Outcome::Diverges { witness, .. } => Witness::Cycle {
            first: witness.first,
            second: witness.second,
        },
        Outcome::FuelExhausted { .. } => return,
        Outcome::Fault { fault, .. } => {
            report.anomaly = Some(format!(
                "decider answered directly but the adversary faulted: {}",
                fault.detail
            ));
            return;
        }
    };
    // What the decider's answer says the adversary does.
    let claim_holds = match (mode, behavior) {
        (Mode::Halts | Mode::What, _) => claim == behavior.is_halted(),
        (Mode::PrintsA, Outcome::Halted { output, .. }) => claim == output.contains('A'),
        (Mode::PrintsA, _) => {
            report.anomaly = Some("liar1 adversary did not halt".into());
            return;
        }
    };
    report.witness = Some(witness);
    report.verdict = match (mode, claim_holds) {
        (Mode::What, true) => Verdict::SelfFulfilling,
        (Mode::What, false) => {
            report.anomaly = Some("adversary contradicted the decider on `what`".into());
            Verdict::WrongAnswer
        }
        (_, false) => Verdict::WrongAnswer,
        (_, true) => {
            report.anomaly = Some("adversary agreed with the decider".into());
            Verdict::Unknown
        }
    };
}

/// Keeps the first and last [`TRANSCRIPT_EDGE`] lines.
#[derive(Default)]
struct Transcript {
    head: Vec<String>,
    tail: VecDeque<String>,
    dropped: bool,
}

impl Transcript {
    fn push(&mut self, line: String) {
        if self.head.len() < TRANSCRIPT_EDGE {
            self.head.push(line);
            return;
        }
        if self.tail.len() == TRANSCRIPT_EDGE {
            self.tail.pop_front();
            self.dropped = true;
        }
        self.tail.push_back(line);
    }

    fn finish(self) -> Vec<String> {
        let mut out = self.head;
        if self.dropped {
            out.push(ELISION.to_string());
        }
        out.extend(self.tail);
        out
    }
}

/// Replays a report's witness against `base` extended with the
/// adversary, independently of the run that produced it.
pub fn verify_witness(base: &DefinitionTable, report: &RefutationReport) -> bool {
    let Some(witness) = &report.witness else {
        return false;
    };
    let Ok(extended) = base.with_source(report.adversary.source.as_str()) else {
        return false;
    };
    let interp = Interpreter::new(&extended);
    let name = report.adversary.name.as_str();
    match witness {
        Witness::Cycle { first, second } => interp.replay_cycle(
            name,
            Kind::Procedure,
            &[name],
            Cycle {
                first: *first,
                second: *second,
            },
        ),
        Witness::HaltingTrace { steps, output } => {
            interp.run(name, &[name], *steps)
                == Outcome::Halted {
                    output: output.clone(),
                    value: None,
                    steps: *steps,
                }
        }
    }
}

impl fmt::Display for RefutationReport {
    /// `{:#}` includes the transcript.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let adv = &self.adversary.name;
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "decider: {}", self.decider)?;
        writeln!(f, "adversary: {adv}")?;
        for line in self.adversary.source.lines() {
            writeln!(f, "  {line}")?;
        }
        writeln!(
            f,
            "decider answer: {} ('{adv}', '{adv}') -> {}",
            self.decider, self.decider_answer
        )?;
        match &self.behavior {
            Some(b) => writeln!(f, "actual behavior: {adv} ('{adv}') -> {b}")?,
            None => writeln!(f, "actual behavior: not run")?,
        }
        writeln!(f, "verdict: {}", self.verdict)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        if let Some(a) = &self.anomaly {
            writeln!(f, "anomaly: {a}")?;
        }
        writeln!(
            f,
            "fuel: decider {}, adversary {}",
            self.fuel.decider, self.fuel.adversary
        )?;
        if f.alternate() {
            writeln!(f, "transcript:")?;
            for line in &self.transcript {
                writeln!(f, "  {line}")?;
            }
        } else {
            writeln!(f, "transcript: {} lines", self.transcript.len())?;
        }
        Ok(())
    }
}
