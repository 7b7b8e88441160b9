//! Builds the adversary programs of the diagonal argument against a named
//! decider. Only the decider's header is consulted: the adversaries are
//! written knowing what the decider promises, not how it is implemented.

use serde::Serialize;
use thiserror::Error;

use crate::lang::{render, Definition, DefinitionTable, Expr, Kind, Stmt};

/// What a decider claims to answer about `(program, input)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeciderKind {
    /// "Execution of procedure `p` on input `i` terminates."
    Halting,
    /// "Execution of procedure `p` on input `i` prints 'A'."
    PrintsA,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeciderError {
    #[error("decider `{0}` is not defined")]
    NotFound(String),
    #[error("decider `{0}` must be a function returning boolean")]
    NotAFunction(String),
    #[error("decider `{name}` must take two string parameters, it takes {found}")]
    WrongArity { name: String, found: usize },
}

/// A function with header `(p, i: string): boolean` in some table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeciderRef {
    pub name: String,
    pub kind: DeciderKind,
}

impl DeciderRef {
    pub fn new(
        table: &DefinitionTable,
        name: &str,
        kind: DeciderKind,
    ) -> Result<Self, DeciderError> {
        let d = table
            .get(name)
            .ok_or_else(|| DeciderError::NotFound(name.into()))?;
        check_header(d)?;
        Ok(DeciderRef {
            name: name.into(),
            kind,
        })
    }
}

fn check_header(d: &Definition) -> Result<(), DeciderError> {
    if d.kind != Kind::Function {
        return Err(DeciderError::NotAFunction(d.name.clone()));
    }
    if d.arity() != 2 {
        return Err(DeciderError::WrongArity {
            name: d.name.clone(),
            found: d.arity(),
        });
    }
    Ok(())
}

/// A synthesized procedure of one string parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Adversary {
    pub name: String,
    pub source: String,
}

/// `base` if unused in `table`, else the first free `base_1`, `base_2`, ...
pub fn fresh_name(table: &DefinitionTable, base: &str) -> String {
    if !table.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}_{k}"))
        .find(|n| !table.contains(n))
        .expect("unbounded suffixes")
}

const PARAM: &str = "s";

fn self_applied(decider: &str) -> Expr {
    Expr::call(decider, vec![Expr::var(PARAM), Expr::var(PARAM)])
}

fn adversary(name: String, body: Vec<Stmt>) -> Adversary {
    let def = Definition {
        name: name.clone(),
        kind: Kind::Procedure,
        params: vec![PARAM.into()],
        body: Some(body),
    };
    Adversary {
        source: render(&def),
        name,
    }
}

fn self_call(name: &str) -> Stmt {
    Stmt::Call {
        name: name.into(),
        args: vec![Expr::var(PARAM)],
    }
}

/// `procedure diag (s: string); begin if d (s, s) then diag (s) end`
pub fn make_diag(table: &DefinitionTable, d: &DeciderRef) -> Adversary {
    let name = fresh_name(table, "diag");
    let body = vec![Stmt::If {
        cond: self_applied(&d.name),
        then: vec![self_call(&name)],
        otherwise: None,
    }];
    adversary(name, body)
}

/// `procedure what (s: string); begin if not d (s, s) then what (s) end`
pub fn make_what(table: &DefinitionTable, d: &DeciderRef) -> Adversary {
    let name = fresh_name(table, "what");
    let body = vec![Stmt::If {
        cond: Expr::not(self_applied(&d.name)),
        then: vec![self_call(&name)],
        otherwise: None,
    }];
    adversary(name, body)
}

/// `procedure liar1 (s: string); begin if d (s, s) then print ('B') else print ('A') end`
pub fn make_liar1(table: &DefinitionTable, d: &DeciderRef) -> Adversary {
    let name = fresh_name(table, "liar1");
    let print = |s: &str| Stmt::Print(Expr::Str(s.into()));
    let body = vec![Stmt::If {
        cond: self_applied(&d.name),
        then: vec![print("B")],
        otherwise: Some(vec![print("A")]),
    }];
    adversary(name, body)
}

/// The parameterless `liar` with its informal condition "execution of liar
/// terminates" replaced by the constant `assumed`. Neither completion is
/// consistent: `true` yields a procedure that loops, `false` one that
/// stops.
pub fn liar_completion(assumed: bool) -> String {
    render(&Definition {
        name: "liar".into(),
        kind: Kind::Procedure,
        params: Vec::new(),
        body: Some(vec![Stmt::If {
            cond: Expr::Bool(assumed),
            then: vec![Stmt::Call {
                name: "liar".into(),
                args: Vec::new(),
            }],
            otherwise: None,
        }]),
    })
}
