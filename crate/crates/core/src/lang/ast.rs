//! Syntax tree for the Pascal-like definition language.

use serde::Serialize;

/// Names that the parser resolves to statements or builtins rather than
/// to table entries. Definitions may not use them.
pub const RESERVED: &[&str] = &["print", "lookup", "concat", "length", "charat"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Procedure,
    /// Always returns `boolean`.
    Function,
}

/// The two value types of the language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Type {
    Boolean,
    String,
}

impl std::fmt::Display for Type {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Type::Boolean => "boolean",
            Type::String => "string",
        })
    }
}

/// One procedure or function. Every parameter has type `string`.
///
/// `body` is `None` for a header-only declaration, which is how a decider
/// specification such as `function halts (p, i: string): boolean;` is
/// written down before anyone has programmed it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Definition {
    pub name: String,
    pub kind: Kind,
    pub params: Vec<String>,
    pub body: Option<Block>,
}

impl Definition {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn is_function(&self) -> bool {
        self.kind == Kind::Function
    }

    pub fn is_header_only(&self) -> bool {
        self.body.is_none()
    }
}

pub type Block = Vec<Stmt>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Stmt {
    If {
        cond: Expr,
        then: Block,
        otherwise: Option<Block>,
    },
    Call {
        name: String,
        args: Vec<Expr>,
    },
    /// `name := value`, Pascal-style function result assignment.
    ResultAssign {
        name: String,
        value: Expr,
    },
    Print(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Bool(bool),
    Str(String),
    /// A parameter of the enclosing definition.
    Var(String),
    Call {
        name: String,
        args: Vec<Expr>,
    },
    Not(Box<Expr>),
    Eq(Box<Expr>, Box<Expr>),
    Concat(Box<Expr>, Box<Expr>),
    /// Source text of the named table entry.
    Lookup(Box<Expr>),
    /// Decimal character count.
    Length(Box<Expr>),
    /// Character at a 0-based decimal index, or `''` past the end.
    CharAt(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn call(name: impl Into<String>, args: Vec<Expr>) -> Self {
        Expr::Call {
            name: name.into(),
            args,
        }
    }

    pub fn var(name: impl Into<String>) -> Self {
        Expr::Var(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Self {
        Expr::Not(Box::new(e))
    }

    pub fn eq(a: Expr, b: Expr) -> Self {
        Expr::Eq(Box::new(a), Box::new(b))
    }
}
