use std::fmt;

use thiserror::Error;

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: expected {}, found {found}", expected.join(" or "))]
    Unexpected {
        pos: Pos,
        expected: Vec<String>,
        found: String,
    },
    #[error("{pos}: {message}")]
    Lex { pos: Pos, message: String },
    #[error("{pos}: duplicate definition `{name}`")]
    Duplicate { pos: Pos, name: String },
    #[error("{pos}: `{name}` is a builtin and cannot be redefined")]
    Reserved { pos: Pos, name: String },
    #[error("{pos}: `{name}` takes {expected} argument(s), found {found}")]
    BuiltinArity {
        pos: Pos,
        name: String,
        expected: usize,
        found: usize,
    },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Unexpected { pos, .. }
            | ParseError::Lex { pos, .. }
            | ParseError::Duplicate { pos, .. }
            | ParseError::Reserved { pos, .. }
            | ParseError::BuiltinArity { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("in `{definition}` at {location}: {kind}")]
pub struct SemanticError {
    pub definition: String,
    /// Path to the offending node, e.g. `body[0].then[1].cond`.
    pub location: String,
    pub kind: SemanticErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticErrorKind {
    #[error("undefined name `{0}`")]
    UndefinedName(String),
    #[error("`{name}` expects {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("expected {expected}, found {found}")]
    Type {
        expected: super::Type,
        found: super::Type,
    },
    #[error("`{0}` is a function, not a procedure")]
    NotAProcedure(String),
    #[error("`{0}` is a procedure, not a function")]
    NotAFunction(String),
    #[error("procedures cannot assign a result")]
    ResultInProcedure,
    #[error("result assignment must target `{expected}`, not `{found}`")]
    WrongResultName { expected: String, found: String },
    #[error("duplicate parameter `{0}`")]
    DuplicateParam(String),
    #[error("`{0}` is not a parameter")]
    UndeclaredVar(String),
}
