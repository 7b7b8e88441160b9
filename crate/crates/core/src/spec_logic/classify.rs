use std::fmt::{self, Write};

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::syntax::{BoolExpr, EquationSystem, SystemError};

/// Enumeration covers all 2^n assignments, so n is capped.
pub const MAX_UNKNOWNS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Label {
    /// No assignment satisfies the system.
    Overdetermined,
    Determined,
    /// Two or more assignments satisfy it.
    Underdetermined,
}

impl Label {
    pub fn for_count(count: u64) -> Self {
        match count {
            0 => Label::Overdetermined,
            1 => Label::Determined,
            _ => Label::Underdetermined,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Unknowns in system order; each model is aligned with it.
    pub names: Vec<String>,
    pub count: u64,
    pub models: Vec<Vec<bool>>,
    pub label: Label,
}

impl Classification {
    pub fn model_text(&self, model: &[bool]) -> String {
        assignment_text(&self.names, model)
    }
}

fn assignment_text(names: &[String], values: &[bool]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(values)
        .map(|(n, v)| format!("{n}↦{v}"))
        .collect();
    parts.join(", ")
}

struct ModelMap<'a>(&'a [String], &'a [bool]);

impl Serialize for ModelMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (n, v) in self.0.iter().zip(self.1) {
            m.serialize_entry(n, v)?;
        }
        m.end()
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let models: Vec<ModelMap<'_>> = self
            .models
            .iter()
            .map(|m| ModelMap(&self.names, m))
            .collect();
        let mut st = s.serialize_struct("Classification", 3)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("count", &self.count)?;
        st.serialize_field("models", &models)?;
        st.end()
    }
}

/// Right-hand sides with names resolved to indices.
enum Node {
    Lit(bool),
    Var(usize),
    Not(Box<Node>),
    Eq(Box<Node>, Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
}

impl Node {
    fn lower(sys: &EquationSystem, e: &BoolExpr) -> Node {
        let resolve = |n: &str| sys.index_of(n).expect("system references are resolved");
        let bin = |a: &BoolExpr, b: &BoolExpr| {
            (Box::new(Node::lower(sys, a)), Box::new(Node::lower(sys, b)))
        };
        match e {
            BoolExpr::Lit(b) => Node::Lit(*b),
            BoolExpr::Ref(n) | BoolExpr::Holds(n) => Node::Var(resolve(n)),
            BoolExpr::Not(a) => Node::Not(Box::new(Node::lower(sys, a))),
            BoolExpr::Eq(a, b) => {
                let (a, b) = bin(a, b);
                Node::Eq(a, b)
            }
            BoolExpr::And(a, b) => {
                let (a, b) = bin(a, b);
                Node::And(a, b)
            }
            BoolExpr::Or(a, b) => {
                let (a, b) = bin(a, b);
                Node::Or(a, b)
            }
        }
    }

    fn eval(&self, v: &[bool]) -> bool {
        match self {
            Node::Lit(b) => *b,
            Node::Var(i) => v[*i],
            Node::Not(a) => !a.eval(v),
            Node::Eq(a, b) => a.eval(v) == b.eval(v),
            Node::And(a, b) => a.eval(v) && b.eval(v),
            Node::Or(a, b) => a.eval(v) || b.eval(v),
        }
    }
}

/// Assignment number `k` of `n` unknowns: the first unknown is the most
/// significant digit and `true` comes before `false`.
fn assignment(k: u64, n: usize, out: &mut [bool]) {
    for (j, slot) in out.iter_mut().enumerate().take(n) {
        *slot = (k >> (n - 1 - j)) & 1 == 0;
    }
}

struct Compiled {
    rhs: Vec<Node>,
}

impl Compiled {
    fn new(sys: &EquationSystem) -> Self {
        Compiled {
            rhs: sys
                .equations()
                .iter()
                .map(|e| Node::lower(sys, &e.rhs))
                .collect(),
        }
    }

    fn failing(&self, v: &[bool]) -> impl Iterator<Item = usize> + '_ {
        let v = v.to_vec();
        self.rhs
            .iter()
            .enumerate()
            .filter(move |(i, e)| e.eval(&v) != v[*i])
            .map(|(i, _)| i)
    }

    fn satisfied(&self, v: &[bool]) -> bool {
        self.rhs.iter().enumerate().all(|(i, e)| e.eval(v) == v[i])
    }
}

/// Counts and lists every assignment `v` with `v(x) = rhs_x(v)` for all
/// unknowns `x`.
pub fn classify(sys: &EquationSystem) -> Result<Classification, SystemError> {
    let n = sys.len();
    if n > MAX_UNKNOWNS {
        return Err(SystemError::TooLarge {
            count: n,
            limit: MAX_UNKNOWNS,
        });
    }
    let compiled = Compiled::new(sys);
    let mut v = vec![false; n];
    let mut models = Vec::new();
    for k in 0..(1u64 << n) {
        assignment(k, n, &mut v);
        if compiled.satisfied(&v) {
            models.push(v.clone());
        }
    }
    let count = models.len() as u64;
    Ok(Classification {
        names: sys.names().map(String::from).collect(),
        count,
        models,
        label: Label::for_count(count),
    })
}

/// At most this many failing assignments are listed for an
/// overdetermined system.
pub const EXPLAIN_LIMIT: u64 = 64;

/// Human-readable account of a classification: each assignment with the
/// equations it violates when there is no model, or the models otherwise.
pub fn explain(sys: &EquationSystem, c: &Classification) -> String {
    let mut out = String::new();
    match c.label {
        Label::Overdetermined => {
            let _ = writeln!(
                out,
                "Overdetermined: no assignment satisfies every equation"
            );
            let n = sys.len();
            let compiled = Compiled::new(sys);
            let total = 1u64 << n;
            let mut v = vec![false; n];
            for k in 0..total.min(EXPLAIN_LIMIT) {
                assignment(k, n, &mut v);
                let failing: Vec<&str> = compiled
                    .failing(&v)
                    .map(|i| sys.equations()[i].name.as_str())
                    .collect();
                let noun = if failing.len() == 1 {
                    "equation"
                } else {
                    "equations"
                };
                let _ = writeln!(
                    out,
                    "  {} fails {noun} {}",
                    assignment_text(&c.names, &v),
                    failing.join(", ")
                );
            }
            if total > EXPLAIN_LIMIT {
                let _ = writeln!(out, "  … {} more assignments", total - EXPLAIN_LIMIT);
            }
        }
        Label::Determined => {
            let _ = writeln!(out, "Determined: the unique model is");
            let _ = writeln!(out, "  {}", c.model_text(&c.models[0]));
        }
        Label::Underdetermined => {
            let _ = writeln!(out, "Underdetermined: {} models", c.count);
            for m in c.models.iter().take(EXPLAIN_LIMIT as usize) {
                let _ = writeln!(out, "  {}", c.model_text(m));
            }
            if c.count > EXPLAIN_LIMIT {
                let _ = writeln!(out, "  … {} more models", c.count - EXPLAIN_LIMIT);
            }
        }
    }
    out
}
