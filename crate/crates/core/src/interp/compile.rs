//! Lowers syntax trees to a flat instruction list per definition. One
//! instruction is one interpreter step.

use std::rc::Rc;

use crate::lang::{Block, Definition, DefinitionTable, Expr, Kind, Stmt};

use super::machine::Text;
use super::FaultKind;

#[derive(Debug, Clone)]
pub(crate) enum Target {
    Def(u32),
    Missing(Rc<str>),
}

#[derive(Debug, Clone)]
pub(crate) enum Op {
    Bool(bool),
    Str(Text),
    Param(u32),
    Call {
        target: Target,
        argc: u32,
        want: Kind,
        /// The caller's frame is replaced instead of suspended.
        tail: bool,
    },
    Not,
    Eq,
    Concat,
    Lookup,
    Length,
    CharAt,
    JumpUnless(u32),
    Jump(u32),
    Print,
    SetResult,
    Return,
    Fault(FaultKind, Rc<str>),
}

#[derive(Debug)]
pub(crate) struct Compiled {
    pub name: Rc<str>,
    pub kind: Kind,
    pub arity: usize,
    pub code: Option<Vec<Op>>,
    pub source: Text,
}

pub(crate) fn compile_table(table: &DefinitionTable) -> Vec<Compiled> {
    table
        .entries()
        .map(|e| Compiled {
            name: e.definition.name.as_str().into(),
            kind: e.definition.kind,
            arity: e.definition.arity(),
            code: e
                .definition
                .body
                .as_ref()
                .map(|b| compile_body(table, &e.definition, b)),
            source: Text::new(e.source.as_str().into()),
        })
        .collect()
}

fn compile_body(table: &DefinitionTable, def: &Definition, body: &Block) -> Vec<Op> {
    let mut cx = Lowering {
        table,
        def,
        code: Vec::new(),
    };
    cx.block(body);
    cx.code.push(Op::Return);
    mark_tail_calls(def.kind, &mut cx.code);
    cx.code
}

struct Lowering<'a> {
    table: &'a DefinitionTable,
    def: &'a Definition,
    code: Vec<Op>,
}

impl Lowering<'_> {
    fn here(&self) -> u32 {
        self.code.len() as u32
    }

    fn block(&mut self, stmts: &Block) {
        for s in stmts {
            self.stmt(s);
        }
    }

    fn stmt(&mut self, s: &Stmt) {
        match s {
            Stmt::If {
                cond,
                then,
                otherwise,
            } => {
                self.expr(cond);
                let skip_then = self.code.len();
                self.code.push(Op::JumpUnless(0));
                self.block(then);
                match otherwise {
                    None => {
                        let end = self.here();
                        self.code[skip_then] = Op::JumpUnless(end);
                    }
                    Some(otherwise) => {
                        let skip_else = self.code.len();
                        self.code.push(Op::Jump(0));
                        let else_at = self.here();
                        self.code[skip_then] = Op::JumpUnless(else_at);
                        self.block(otherwise);
                        let end = self.here();
                        self.code[skip_else] = Op::Jump(end);
                    }
                }
            }
            Stmt::Call { name, args } => self.call(name, args, Kind::Procedure),
            Stmt::ResultAssign { name, value } => {
                self.expr(value);
                if self.def.kind == Kind::Function && name == &self.def.name {
                    self.code.push(Op::SetResult);
                } else {
                    self.code.push(Op::Fault(
                        FaultKind::Type,
                        format!("`{}` cannot assign result `{name}`", self.def.name).into(),
                    ));
                }
            }
            Stmt::Print(e) => {
                self.expr(e);
                self.code.push(Op::Print);
            }
        }
    }

    fn call(&mut self, name: &str, args: &[Expr], want: Kind) {
        for a in args {
            self.expr(a);
        }
        let target = match self.table.index_of(name) {
            Some(i) => Target::Def(i as u32),
            None => Target::Missing(name.into()),
        };
        self.code.push(Op::Call {
            target,
            argc: args.len() as u32,
            want,
            tail: false,
        });
    }

    fn expr(&mut self, e: &Expr) {
        match e {
            Expr::Bool(b) => self.code.push(Op::Bool(*b)),
            Expr::Str(s) => self.code.push(Op::Str(Text::new(s.as_str().into()))),
            Expr::Var(name) => match self.def.params.iter().position(|p| p == name) {
                Some(i) => self.code.push(Op::Param(i as u32)),
                None => self.code.push(Op::Fault(
                    FaultKind::UndefinedName,
                    format!("`{name}` is not a parameter").into(),
                )),
            },
            Expr::Call { name, args } => self.call(name, args, Kind::Function),
            Expr::Not(a) => {
                self.expr(a);
                self.code.push(Op::Not);
            }
            Expr::Eq(a, b) => self.binary(a, b, Op::Eq),
            Expr::Concat(a, b) => self.binary(a, b, Op::Concat),
            Expr::CharAt(a, b) => self.binary(a, b, Op::CharAt),
            Expr::Lookup(a) => {
                self.expr(a);
                self.code.push(Op::Lookup);
            }
            Expr::Length(a) => {
                self.expr(a);
                self.code.push(Op::Length);
            }
        }
    }

    fn binary(&mut self, a: &Expr, b: &Expr, op: Op) {
        self.expr(a);
        self.expr(b);
        self.code.push(op);
    }
}

fn reaches_return(code: &[Op], mut at: usize) -> bool {
    loop {
        match code.get(at) {
            Some(Op::Return) => return true,
            Some(Op::Jump(t)) => at = *t as usize,
            _ => return false,
        }
    }
}

/// A procedure call whose continuation is `return`, and a function call
/// whose value is immediately assigned as the result and returned, leave
/// nothing for the caller to do, so the caller's frame can be dropped.
/// Without this, self-recursion like `go` would grow the stack and never
/// repeat a configuration.
fn mark_tail_calls(kind: Kind, code: &mut [Op]) {
    for at in 0..code.len() {
        let is_tail = match &code[at] {
            Op::Call {
                want: Kind::Procedure,
                ..
            } => kind == Kind::Procedure && reaches_return(code, at + 1),
            Op::Call {
                want: Kind::Function,
                ..
            } => {
                kind == Kind::Function
                    && matches!(code.get(at + 1), Some(Op::SetResult))
                    && reaches_return(code, at + 2)
            }
            _ => false,
        };
        if let Op::Call { tail, .. } = &mut code[at] {
            *tail = is_tail;
        }
    }
}
