//! End-to-end reproduction of every bundled example, each compared with
//! its expected result.

use std::fmt;
use std::io;
use std::path::Path;

use serde::Serialize;

use crate::corpus;
use crate::diagonal::{liar_completion, DeciderKind, DeciderRef};
use crate::interp::{Interpreter, Outcome};
use crate::lang::{parse, validate, DefinitionTable, Kind};
use crate::refuter::{refute, verify_witness, Budget, Mode, RefutationReport};
use crate::spec_logic::{classify, parse_system};

/// The inputs the demo runs on. Defaults to the embedded copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoAssets {
    pub demo_tangle: String,
    pub deciders_tangle: String,
    pub liar_eqn: String,
    pub truthteller_eqn: String,
    pub bg_eqn: String,
    pub goedel_eqn: String,
    pub h_eqn: String,
}

impl Default for DemoAssets {
    fn default() -> Self {
        DemoAssets {
            demo_tangle: corpus::DEMO_TANGLE.into(),
            deciders_tangle: corpus::DECIDERS_TANGLE.into(),
            liar_eqn: corpus::LIAR_EQN.into(),
            truthteller_eqn: corpus::TRUTHTELLER_EQN.into(),
            bg_eqn: corpus::BG_EQN.into(),
            goedel_eqn: corpus::GOEDEL_EQN.into(),
            h_eqn: corpus::H_EQN.into(),
        }
    }
}

impl DemoAssets {
    /// Embedded assets, overridden by same-named files found in `dir`.
    pub fn from_dir(dir: &Path) -> io::Result<Self> {
        let mut a = DemoAssets::default();
        for (file, slot) in a.slots_mut() {
            let path = dir.join(file);
            if path.exists() {
                *slot = std::fs::read_to_string(path)?;
            }
        }
        Ok(a)
    }

    fn slots_mut(&mut self) -> [(&'static str, &mut String); 7] {
        [
            ("demo.tangle", &mut self.demo_tangle),
            ("deciders.tangle", &mut self.deciders_tangle),
            ("liar.eqn", &mut self.liar_eqn),
            ("truthteller.eqn", &mut self.truthteller_eqn),
            ("bg.eqn", &mut self.bg_eqn),
            ("goedel.eqn", &mut self.goedel_eqn),
            ("h.eqn", &mut self.h_eqn),
        ]
    }

    /// All asset texts in a fixed order, for digesting.
    pub fn texts(&self) -> [&str; 7] {
        [
            &self.demo_tangle,
            &self.deciders_tangle,
            &self.liar_eqn,
            &self.truthteller_eqn,
            &self.bg_eqn,
            &self.goedel_eqn,
            &self.h_eqn,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DemoReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl DemoReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}: {}", c.id, c.description)?;
            if c.passed {
                writeln!(f, "       {}", c.actual)?;
            } else {
                writeln!(f, "       - expected: {}", c.expected)?;
                writeln!(f, "       + actual:   {}", c.actual)?;
            }
        }
        writeln!(f, "{}/{} checks passed", self.passed, self.checks.len())
    }
}

fn classification_summary(src: &str) -> String {
    let sys = match parse_system(src) {
        Ok(s) => s,
        Err(e) => return format!("error: {e}"),
    };
    match classify(&sys) {
        Ok(c) => {
            let mut s = format!("{}, {} solution(s)", c.label, c.count);
            for m in &c.models {
                s.push_str(&format!(" {{{}}}", c.model_text(m)));
            }
            s
        }
        Err(e) => format!("error: {e}"),
    }
}

fn run_summary(table: &DefinitionTable, proc: &str) -> String {
    let interp = Interpreter::new(table);
    let none: &[&str] = &[];
    match interp.run(proc, none, crate::interp::DEFAULT_FUEL) {
        Outcome::Diverges { witness, .. } => {
            let ok = interp.replay_cycle(proc, Kind::Procedure, none, witness);
            format!(
                "Diverges, witness {}",
                if ok { "replays" } else { "fails replay" }
            )
        }
        Outcome::Halted { output, .. } => format!("Halted, output {output:?}"),
        other => other.label().to_string(),
    }
}

fn refutation_summary(base: &DefinitionTable, r: &RefutationReport) -> String {
    let mut s = r.verdict.to_string();
    match r.decider_answer.value() {
        Some(b) => s.push_str(&format!(": claimed {b}")),
        None => s.push_str(&format!(": decider {}", r.decider_answer.label())),
    }
    if let Some(b) = &r.behavior {
        s.push_str(&format!(", adversary {}", b.label()));
        if let (Mode::PrintsA, Outcome::Halted { output, .. }) = (r.mode, b) {
            s.push_str(&format!(" printing {output:?}"));
        }
    }
    if r.witness.is_some() {
        let ok = verify_witness(base, r);
        s.push_str(if ok {
            ", witness replays"
        } else {
            ", witness fails replay"
        });
    }
    if let Some(a) = &r.anomaly {
        s.push_str(&format!(", anomaly: {a}"));
    }
    s
}

fn refutation_check(src: &str, decider: &str, mode: Mode) -> String {
    let table = match parse(src) {
        Ok(t) => t,
        Err(e) => return format!("error: {e}"),
    };
    let d = match DeciderRef::new(&table, decider, DeciderKind::Halting) {
        Ok(d) => d,
        Err(e) => return format!("error: {e}"),
    };
    match refute(&table, &d, mode, Budget::default()) {
        Ok(r) => refutation_summary(&table, &r),
        Err(e) => format!("error: {e}"),
    }
}

fn table_check(src: &str, f: impl FnOnce(&DefinitionTable) -> String) -> String {
    match parse(src) {
        Ok(t) => f(&t),
        Err(e) => format!("error: {e}"),
    }
}

pub fn run_demo(assets: &DemoAssets) -> DemoReport {
    let mut checks = Vec::new();
    let mut check = |id: &str, description: &str, expected: &str, actual: String| {
        checks.push(Check {
            id: id.into(),
            description: description.into(),
            expected: expected.into(),
            passed: expected == actual,
            actual,
        });
    };

    check(
        "liar",
        "L = (L = false) has no solution",
        "Overdetermined, 0 solution(s)",
        classification_summary(&assets.liar_eqn),
    );
    check(
        "truth-teller",
        "U = (U = true) has two solutions",
        "Underdetermined, 2 solution(s) {U↦true} {U↦false}",
        classification_summary(&assets.truthteller_eqn),
    );
    check(
        "two-sentence-liar",
        "B = (G = true), G = (B = false) have no solution",
        "Overdetermined, 0 solution(s)",
        classification_summary(&assets.bg_eqn),
    );
    check(
        "goedel-sentence",
        "G = (B(G) = false) under the truth reading of B has no solution",
        "Overdetermined, 0 solution(s)",
        classification_summary(&assets.goedel_eqn),
    );
    check(
        "holds-sentence",
        "H = (B(H) = true): both suppositions stand",
        "Underdetermined, 2 solution(s) {H↦true} {H↦false}",
        classification_summary(&assets.h_eqn),
    );
    check(
        "stop",
        "halts ('stop') should be true",
        "Halted, output \"\"",
        table_check(&assets.demo_tangle, |t| run_summary(t, "stop")),
    );
    check(
        "go",
        "halts ('go') should be false",
        "Diverges, witness replays",
        table_check(&assets.demo_tangle, |t| run_summary(t, "go")),
    );
    check(
        "header-suffices",
        "diag validates against the bare header of halts",
        "valid",
        table_check(&assets.demo_tangle, |t| match validate(t) {
            Ok(()) => "valid".into(),
            Err(errs) => format!("invalid: {}", errs[0]),
        }),
    );
    check(
        "liar-assume-terminates",
        "completing liar with true (it terminates) makes it loop",
        "Diverges, witness replays",
        table_check(&liar_completion(true), |t| run_summary(t, "liar")),
    );
    check(
        "liar-assume-loops",
        "completing liar with false (it loops) makes it stop",
        "Halted, output \"\"",
        table_check(&liar_completion(false), |t| run_summary(t, "liar")),
    );
    check(
        "diag-alwaysTrue",
        "a decider answering true is wrong about diag",
        "WrongAnswer: claimed true, adversary Diverges, witness replays",
        refutation_check(&assets.deciders_tangle, "alwaysTrue", Mode::Halts),
    );
    check(
        "diag-alwaysFalse",
        "a decider answering false is wrong about diag",
        "WrongAnswer: claimed false, adversary Halted, witness replays",
        refutation_check(&assets.deciders_tangle, "alwaysFalse", Mode::Halts),
    );
    check(
        "diag-header-only",
        "the unprogrammed specification gives no answer at all",
        "NotTotal: decider Fault",
        refutation_check(&assets.demo_tangle, "halts", Mode::Halts),
    );
    check(
        "what-alwaysTrue",
        "answering true about what is the right supposition",
        "SelfFulfilling: claimed true, adversary Halted, witness replays",
        refutation_check(&assets.deciders_tangle, "alwaysTrue", Mode::What),
    );
    check(
        "what-alwaysFalse",
        "answering false about what is again the right supposition",
        "SelfFulfilling: claimed false, adversary Diverges, witness replays",
        refutation_check(&assets.deciders_tangle, "alwaysFalse", Mode::What),
    );
    check(
        "liar1-alwaysTrue",
        "claiming liar1 prints 'A' makes it print 'B'",
        "WrongAnswer: claimed true, adversary Halted printing \"B\", witness replays",
        refutation_check(&assets.deciders_tangle, "alwaysTrue", Mode::PrintsA),
    );
    check(
        "liar1-alwaysFalse",
        "denying liar1 prints 'A' makes it print 'A'",
        "WrongAnswer: claimed false, adversary Halted printing \"A\", witness replays",
        refutation_check(&assets.deciders_tangle, "alwaysFalse", Mode::PrintsA),
    );

    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    DemoReport {
        checks,
        passed,
        failed,
    }
}
