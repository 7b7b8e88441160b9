use std::fmt;

use thiserror::Error;

use crate::lang::Pos;

/// Right-hand side of an equation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Lit(bool),
    Ref(String),
    /// `B(X)`: "the sentence named X is true". Evaluates to the value of X.
    Holds(String),
    Not(Box<BoolExpr>),
    Eq(Box<BoolExpr>, Box<BoolExpr>),
    And(Box<BoolExpr>, Box<BoolExpr>),
    Or(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    fn precedence(&self) -> u8 {
        match self {
            BoolExpr::Eq(..) => 0,
            BoolExpr::Or(..) => 1,
            BoolExpr::And(..) => 2,
            BoolExpr::Not(_) => 3,
            _ => 4,
        }
    }

    /// Names this expression mentions, in order of appearance.
    pub fn mentions(&self, out: &mut Vec<String>) {
        match self {
            BoolExpr::Lit(_) => {}
            BoolExpr::Ref(n) | BoolExpr::Holds(n) => out.push(n.clone()),
            BoolExpr::Not(a) => a.mentions(out),
            BoolExpr::Eq(a, b) | BoolExpr::And(a, b) | BoolExpr::Or(a, b) => {
                a.mentions(out);
                b.mentions(out);
            }
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for BoolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoolExpr::Lit(b) => write!(f, "{b}"),
            BoolExpr::Ref(n) => f.write_str(n),
            BoolExpr::Holds(n) => write!(f, "B({n})"),
            BoolExpr::Not(a) => {
                f.write_str("not ")?;
                a.fmt_operand(f, 3)
            }
            // Binary operators are left-associative.
            BoolExpr::Eq(a, b) | BoolExpr::And(a, b) | BoolExpr::Or(a, b) => {
                let (p, op) = match self {
                    BoolExpr::Eq(..) => (0, "="),
                    BoolExpr::Or(..) => (1, "or"),
                    _ => (2, "and"),
                };
                a.fmt_operand(f, p)?;
                write!(f, " {op} ")?;
                b.fmt_operand(f, p + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub name: String,
    pub rhs: BoolExpr,
}

/// Named boolean unknowns, each defined by an equation `name = rhs`.
/// Names are unique and every reference resolves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquationSystem {
    equations: Vec<Equation>,
}

impl EquationSystem {
    /// Checks uniqueness and resolution.
    pub fn new(equations: Vec<Equation>) -> Result<Self, SystemError> {
        for (i, eq) in equations.iter().enumerate() {
            if equations[..i].iter().any(|e| e.name == eq.name) {
                return Err(SystemError::Duplicate {
                    pos: Pos::default(),
                    name: eq.name.clone(),
                });
            }
        }
        for eq in &equations {
            let mut names = Vec::new();
            eq.rhs.mentions(&mut names);
            if let Some(missing) = names
                .into_iter()
                .find(|n| !equations.iter().any(|e| &e.name == n))
            {
                return Err(SystemError::Undefined {
                    pos: Pos::default(),
                    name: missing,
                });
            }
        }
        Ok(EquationSystem { equations })
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.equations.iter().map(|e| e.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.equations.iter().position(|e| e.name == name)
    }
}

impl fmt::Display for EquationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for eq in &self.equations {
            write!(f, "{} = ", eq.name)?;
            eq.rhs.fmt_operand(f, 1)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("{pos}: expected {}, found {found}", expected.join(" or "))]
    Parse {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    #[error("{pos}: `{name}` is not defined in the system")]
    Undefined { pos: Pos, name: String },
    #[error("{pos}: `{name}` is defined twice")]
    Duplicate { pos: Pos, name: String },
    #[error("{count} unknowns exceed the enumeration limit of {limit}")]
    TooLarge { count: usize, limit: usize },
}
