//! Static checks that need only the headers of callees.

use std::collections::HashSet;

use super::ast::{Block, Definition, Expr, Kind, Stmt, Type};
use super::error::{SemanticError, SemanticErrorKind as K};
use super::table::DefinitionTable;

/// Checks arity, argument and condition types, call targets and result
/// discipline for every definition in `table`. Bodies of callees are never
/// consulted, so a header-only declaration is as good as a full one.
pub fn validate(table: &DefinitionTable) -> Result<(), Vec<SemanticError>> {
    let errors: Vec<_> = table
        .definitions()
        .flat_map(|d| validate_definition(table, d))
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}

pub fn validate_definition(table: &DefinitionTable, d: &Definition) -> Vec<SemanticError> {
    let mut cx = Checker {
        table,
        def: d,
        errors: Vec::new(),
    };
    let mut seen = HashSet::new();
    for p in &d.params {
        if !seen.insert(p.as_str()) {
            cx.error("params".into(), K::DuplicateParam(p.clone()));
        }
    }
    if let Some(body) = &d.body {
        cx.block(body, "body");
    }
    cx.errors
}

struct Checker<'a> {
    table: &'a DefinitionTable,
    def: &'a Definition,
    errors: Vec<SemanticError>,
}

impl<'a> Checker<'a> {
    fn error(&mut self, location: String, kind: K) {
        self.errors.push(SemanticError {
            definition: self.def.name.clone(),
            location,
            kind,
        });
    }

    fn block(&mut self, stmts: &Block, path: &str) {
        for (i, s) in stmts.iter().enumerate() {
            self.stmt(s, &format!("{path}[{i}]"));
        }
    }

    fn stmt(&mut self, s: &Stmt, path: &str) {
        match s {
            Stmt::If {
                cond,
                then,
                otherwise,
            } => {
                self.expect(cond, Type::Boolean, &format!("{path}.cond"));
                self.block(then, &format!("{path}.then"));
                if let Some(otherwise) = otherwise {
                    self.block(otherwise, &format!("{path}.else"));
                }
            }
            Stmt::Call { name, args } => {
                if let Some(callee) = self.callee(name, args, path) {
                    if callee.kind != Kind::Procedure {
                        self.error(path.into(), K::NotAProcedure(name.clone()));
                    }
                }
            }
            Stmt::ResultAssign { name, value } => {
                if self.def.kind == Kind::Procedure {
                    self.error(path.into(), K::ResultInProcedure);
                } else if name != &self.def.name {
                    self.error(
                        path.into(),
                        K::WrongResultName {
                            expected: self.def.name.clone(),
                            found: name.clone(),
                        },
                    );
                }
                self.expect(value, Type::Boolean, &format!("{path}.value"));
            }
            Stmt::Print(e) => self.expect(e, Type::String, &format!("{path}.arg")),
        }
    }

    /// Resolves a call target and checks its arguments against the header.
    fn callee(&mut self, name: &str, args: &[Expr], path: &str) -> Option<&'a Definition> {
        for (i, a) in args.iter().enumerate() {
            self.expect(a, Type::String, &format!("{path}.args[{i}]"));
        }
        match self.table.get(name) {
            None => {
                self.error(path.into(), K::UndefinedName(name.into()));
                None
            }
            Some(callee) => {
                if callee.arity() != args.len() {
                    self.error(
                        path.into(),
                        K::Arity {
                            name: name.into(),
                            expected: callee.arity(),
                            found: args.len(),
                        },
                    );
                }
                Some(callee)
            }
        }
    }

    fn expect(&mut self, e: &Expr, want: Type, path: &str) {
        if let Some(found) = self.type_of(e, path) {
            if found != want {
                self.error(
                    path.into(),
                    K::Type {
                        expected: want,
                        found,
                    },
                );
            }
        }
    }

    /// `None` when an error was already reported for `e`.
    fn type_of(&mut self, e: &Expr, path: &str) -> Option<Type> {
        match e {
            Expr::Bool(_) => Some(Type::Boolean),
            Expr::Str(_) => Some(Type::String),
            Expr::Var(name) => {
                if self.def.params.contains(name) {
                    Some(Type::String)
                } else {
                    self.error(path.into(), K::UndeclaredVar(name.clone()));
                    None
                }
            }
            Expr::Call { name, args } => {
                let callee = self.callee(name, args, path)?;
                if callee.kind != Kind::Function {
                    self.error(path.into(), K::NotAFunction(name.clone()));
                    return None;
                }
                Some(Type::Boolean)
            }
            Expr::Not(inner) => {
                self.expect(inner, Type::Boolean, &format!("{path}.not"));
                Some(Type::Boolean)
            }
            Expr::Eq(a, b) => {
                let ta = self.type_of(a, &format!("{path}.lhs"));
                let tb = self.type_of(b, &format!("{path}.rhs"));
                if let (Some(ta), Some(tb)) = (ta, tb) {
                    if ta != tb {
                        self.error(
                            format!("{path}.rhs"),
                            K::Type {
                                expected: ta,
                                found: tb,
                            },
                        );
                    }
                }
                Some(Type::Boolean)
            }
            Expr::Concat(a, b) | Expr::CharAt(a, b) => {
                self.expect(a, Type::String, &format!("{path}.args[0]"));
                self.expect(b, Type::String, &format!("{path}.args[1]"));
                Some(Type::String)
            }
            Expr::Lookup(a) | Expr::Length(a) => {
                self.expect(a, Type::String, &format!("{path}.args[0]"));
                Some(Type::String)
            }
        }
    }
}
