//! Self-referential boolean equation systems such as `L = (L = false)`,
//! classified by counting their solutions over every assignment.

mod classify;
mod parse;
mod syntax;

pub use classify::{classify, explain, Classification, Label, EXPLAIN_LIMIT, MAX_UNKNOWNS};
pub use parse::parse_system;
pub use syntax::{BoolExpr, Equation, EquationSystem, SystemError};
