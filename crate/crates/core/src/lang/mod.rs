//! The mini Pascal-like language: tokens, syntax tree, parser, canonical
//! printer and header-only validation.

mod ast;
mod error;
mod lexer;
mod parser;
mod render;
mod table;
mod validate;

pub use ast::{Block, Definition, Expr, Kind, Stmt, Type, RESERVED};
pub use error::{ParseError, Pos, SemanticError, SemanticErrorKind};
pub use render::render;
pub use table::{DefinitionTable, SourceText, TableEntry};
pub use validate::{validate, validate_definition};

/// Parses one or more definitions.
pub fn parse(src: impl Into<SourceText>) -> Result<DefinitionTable, ParseError> {
    DefinitionTable::parse(src)
}

/// Parses text holding exactly one definition.
pub fn parse_definition(src: &str) -> Result<Definition, ParseError> {
    let table = parse(src)?;
    let mut defs = table.definitions();
    match (defs.next(), defs.next()) {
        (Some(d), None) => Ok(d.clone()),
        _ => Err(ParseError::Unexpected {
            pos: Pos { line: 1, column: 1 },
            expected: vec!["exactly one definition".into()],
            found: format!("{} definitions", table.len()),
        }),
    }
}

#[cfg(test)]
mod tests;
