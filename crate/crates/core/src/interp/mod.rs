//! Deterministic small-step interpreter with a fuel budget.
//!
//! Divergence is reported only when a configuration literally repeats:
//! the language has no input, clock or randomness, so a repeated
//! configuration means the run loops forever. Running out of fuel before
//! that is reported as such and nothing more is claimed.

mod compile;
mod machine;

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::lang::{DefinitionTable, Kind};

use compile::{compile_table, Compiled};
use machine::{Machine, Step, Value};

pub use machine::Configuration;

pub const DEFAULT_FUEL: u64 = 1_000_000;

/// Cap on the total bytes of string data a single run may create,
/// printed output included.
pub const MEMORY_BUDGET: usize = 1 << 26;

/// Which budget ended a run without a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Limit {
    Steps,
    Memory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultKind {
    UndefinedName,
    Arity,
    Type,
    LookupMiss,
    NoResultAssigned,
    /// Called a header-only declaration.
    MissingBody,
}

impl fmt::Display for FaultKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FaultKind::UndefinedName => "undefined name",
            FaultKind::Arity => "arity",
            FaultKind::Type => "type",
            FaultKind::LookupMiss => "lookup miss",
            FaultKind::NoResultAssigned => "no result assigned",
            FaultKind::MissingBody => "missing body",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fault {
    pub kind: FaultKind,
    pub detail: String,
}

/// Configurations after step `first` and after step `second` are equal.
/// Step 0 is the initial configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    pub first: u64,
    pub second: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Halted {
        output: String,
        /// The function result, for `eval_fn`.
        #[serde(skip_serializing_if = "Option::is_none")]
        value: Option<bool>,
        steps: u64,
    },
    Diverges {
        witness: Cycle,
        steps: u64,
    },
    FuelExhausted {
        steps: u64,
        limit: Limit,
    },
    Fault {
        fault: Fault,
        output: String,
        steps: u64,
    },
}

impl Outcome {
    pub fn steps(&self) -> u64 {
        match self {
            Outcome::Halted { steps, .. }
            | Outcome::Diverges { steps, .. }
            | Outcome::FuelExhausted { steps, .. }
            | Outcome::Fault { steps, .. } => *steps,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, Outcome::Halted { .. })
    }

    pub fn is_diverges(&self) -> bool {
        matches!(self, Outcome::Diverges { .. })
    }

    /// The boolean a function returned, if it halted.
    pub fn value(&self) -> Option<bool> {
        match self {
            Outcome::Halted { value, .. } => *value,
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Halted { .. } => "Halted",
            Outcome::Diverges { .. } => "Diverges",
            Outcome::FuelExhausted { .. } => "FuelExhausted",
            Outcome::Fault { .. } => "Fault",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Halted {
                output,
                value,
                steps,
            } => {
                write!(f, "Halted after {steps} steps")?;
                if let Some(v) = value {
                    write!(f, ", result {v}")?;
                }
                write!(f, ", output {output:?}")
            }
            Outcome::Diverges { witness, .. } => write!(
                f,
                "Diverges: configuration after step {} repeats after step {}",
                witness.first, witness.second
            ),
            Outcome::FuelExhausted { steps, limit } => {
                write!(f, "FuelExhausted after {steps} steps, no verdict")?;
                if *limit == Limit::Memory {
                    write!(f, " (string allocation budget spent)")?;
                }
                Ok(())
            }
            Outcome::Fault {
                fault,
                output,
                steps,
            } => write!(
                f,
                "Fault ({}) after {steps} steps: {}, output {output:?}",
                fault.kind, fault.detail
            ),
        }
    }
}

/// One line of an execution trace, describing the configuration about to
/// take step `step`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceLine {
    pub step: u64,
    pub definition: String,
    pub cursor: u32,
    pub depth: usize,
    /// First 8 hex digits of SHA-256 over the frame's arguments.
    pub bindings: String,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}@{} depth={} args={}",
            self.step, self.definition, self.cursor, self.depth, self.bindings
        )
    }
}

/// A compiled table, ready to run any of its entries.
pub struct Interpreter<'t> {
    table: &'t DefinitionTable,
    program: Vec<Compiled>,
}

impl<'t> Interpreter<'t> {
    pub fn new(table: &'t DefinitionTable) -> Self {
        Interpreter {
            table,
            program: compile_table(table),
        }
    }

    /// Runs procedure `proc` on `args` for at most `fuel` steps.
    pub fn run<S: AsRef<str>>(&self, proc: &str, args: &[S], fuel: u64) -> Outcome {
        self.execute(proc, Kind::Procedure, args, fuel, None)
    }

    /// Evaluates function `func`; a `Halted` outcome carries its result.
    pub fn eval_fn<S: AsRef<str>>(&self, func: &str, args: &[S], fuel: u64) -> Outcome {
        self.execute(func, Kind::Function, args, fuel, None)
    }

    pub fn run_traced<S: AsRef<str>>(
        &self,
        name: &str,
        kind: Kind,
        args: &[S],
        fuel: u64,
        sink: &mut dyn FnMut(TraceLine),
    ) -> Outcome {
        self.execute(name, kind, args, fuel, Some(sink))
    }

    fn start<S: AsRef<str>>(
        &self,
        name: &str,
        kind: Kind,
        args: &[S],
    ) -> Result<Machine<'_>, Fault> {
        let args = args.iter().map(|a| Value::str(a.as_ref())).collect();
        Machine::start(&self.program, self.table.index_of(name), name, kind, args)
    }

    fn execute<S: AsRef<str>>(
        &self,
        name: &str,
        kind: Kind,
        args: &[S],
        fuel: u64,
        mut sink: Option<&mut dyn FnMut(TraceLine)>,
    ) -> Outcome {
        let mut machine = match self.start(name, kind, args) {
            Ok(m) => m,
            Err(fault) => {
                return Outcome::Fault {
                    fault,
                    output: String::new(),
                    steps: 0,
                }
            }
        };
        // Fingerprints only; a hit is confirmed against the real
        // configuration before divergence is claimed.
        let mut seen: HashMap<u64, u64> = HashMap::new();
        seen.insert(machine.fingerprint(), 0);
        for step in 1..=fuel {
            if let Some(sink) = sink.as_mut() {
                sink(trace_line(&machine, step));
            }
            match machine.step() {
                Step::Continue => {}
                Step::Halted(value) => {
                    return Outcome::Halted {
                        output: machine.output,
                        value,
                        steps: step,
                    }
                }
                Step::Fault(fault) => {
                    return Outcome::Fault {
                        fault,
                        output: machine.output,
                        steps: step,
                    }
                }
                Step::Exhausted => {
                    return Outcome::FuelExhausted {
                        steps: step,
                        limit: Limit::Memory,
                    }
                }
            }
            match seen.entry(machine.fingerprint()) {
                Entry::Occupied(e) => {
                    let first = *e.get();
                    let earlier = self.configuration_at(name, kind, args, first);
                    if earlier.is_some_and(|c| c == machine.snapshot()) {
                        return Outcome::Diverges {
                            witness: Cycle {
                                first,
                                second: step,
                            },
                            steps: step,
                        };
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(step);
                }
            }
        }
        Outcome::FuelExhausted {
            steps: fuel,
            limit: Limit::Steps,
        }
    }

    /// Re-executes from scratch and checks that the configurations after
    /// `cycle.first` and `cycle.second` steps are equal.
    pub fn replay_cycle<S: AsRef<str>>(
        &self,
        name: &str,
        kind: Kind,
        args: &[S],
        cycle: Cycle,
    ) -> bool {
        if cycle.first >= cycle.second {
            return false;
        }
        let Ok(mut machine) = self.start(name, kind, args) else {
            return false;
        };
        let mut mark = None;
        for step in 0..=cycle.second {
            if step == cycle.first {
                mark = Some(machine.snapshot());
            }
            if step == cycle.second {
                return mark.is_some_and(|m| m == machine.snapshot());
            }
            if !matches!(machine.step(), Step::Continue) {
                return false;
            }
        }
        false
    }

    /// The configuration after exactly `steps` steps, if the run gets
    /// that far.
    pub fn configuration_at<S: AsRef<str>>(
        &self,
        name: &str,
        kind: Kind,
        args: &[S],
        steps: u64,
    ) -> Option<Configuration> {
        let mut machine = self.start(name, kind, args).ok()?;
        for _ in 0..steps {
            if !matches!(machine.step(), Step::Continue) {
                return None;
            }
        }
        Some(machine.snapshot())
    }
}

fn trace_line(machine: &Machine<'_>, step: u64) -> TraceLine {
    let mut h = Sha256::new();
    for b in machine.bindings() {
        h.update(b.as_bytes());
        h.update([0u8]);
    }
    let digest = h.finalize();
    TraceLine {
        step,
        definition: machine.definition_name().to_string(),
        cursor: machine.cursor(),
        depth: machine.depth(),
        bindings: hex::encode(&digest[..4]),
    }
}

/// Runs procedure `proc` of `table`.
pub fn run<S: AsRef<str>>(table: &DefinitionTable, proc: &str, args: &[S], fuel: u64) -> Outcome {
    Interpreter::new(table).run(proc, args, fuel)
}

/// Evaluates function `func` of `table`.
pub fn eval_fn<S: AsRef<str>>(
    table: &DefinitionTable,
    func: &str,
    args: &[S],
    fuel: u64,
) -> Outcome {
    Interpreter::new(table).eval_fn(func, args, fuel)
}

#[cfg(test)]
mod tests;
