//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tangle::lang::{render, Block, Definition, DefinitionTable, Expr, Kind, Stmt};
use tangle::spec_logic::{BoolExpr, Equation, EquationSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const PARAMS: [&str; 2] = ["a", "b"];
const LITERALS: [&str; 5] = ["", "x", "ab", "0", "main"];

#[derive(Clone)]
struct Header {
    name: String,
    kind: Kind,
    arity: usize,
}

struct ProgramGen<'r> {
    rng: &'r mut ChaCha8Rng,
    headers: Vec<Header>,
}

impl ProgramGen<'_> {
    fn callees(&self, kind: Kind) -> Vec<Header> {
        self.headers
            .iter()
            .filter(|h| h.kind == kind)
            .cloned()
            .collect()
    }

    fn args(&mut self, arity: usize, params: &[String], depth: u32) -> Vec<Expr> {
        (0..arity).map(|_| self.str_expr(params, depth)).collect()
    }

    fn str_expr(&mut self, params: &[String], depth: u32) -> Expr {
        let leaf = depth == 0 || self.rng.gen_bool(0.5);
        if leaf {
            if !params.is_empty() && self.rng.gen_bool(0.6) {
                return Expr::var(params.choose(self.rng).unwrap().clone());
            }
            return Expr::Str(LITERALS.choose(self.rng).unwrap().to_string());
        }
        let d = depth - 1;
        match self.rng.gen_range(0..4) {
            0 => Expr::Concat(
                Box::new(self.str_expr(params, d)),
                Box::new(self.str_expr(params, d)),
            ),
            1 => Expr::Lookup(Box::new(self.str_expr(params, d))),
            2 => Expr::Length(Box::new(self.str_expr(params, d))),
            _ => Expr::CharAt(
                Box::new(self.str_expr(params, d)),
                Box::new(self.str_expr(params, d)),
            ),
        }
    }

    fn bool_expr(&mut self, params: &[String], depth: u32) -> Expr {
        let leaf = depth == 0 || self.rng.gen_bool(0.3);
        if leaf {
            return Expr::Bool(self.rng.gen());
        }
        let d = depth - 1;
        match self.rng.gen_range(0..4) {
            0 => Expr::not(self.bool_expr(params, d)),
            1 => Expr::eq(self.str_expr(params, d), self.str_expr(params, d)),
            2 => Expr::eq(self.bool_expr(params, d), self.bool_expr(params, d)),
            _ => {
                let fns = self.callees(Kind::Function);
                match fns.choose(self.rng) {
                    Some(h) => {
                        let args = self.args(h.arity, params, d);
                        Expr::call(h.name.clone(), args)
                    }
                    None => Expr::Bool(self.rng.gen()),
                }
            }
        }
    }

    fn block(&mut self, me: &Header, params: &[String], depth: u32) -> Block {
        let len = self.rng.gen_range(0..=3);
        let mut out: Block = (0..len).map(|_| self.stmt(me, params, depth)).collect();
        if me.kind == Kind::Function && self.rng.gen_bool(0.9) {
            out.push(Stmt::ResultAssign {
                name: me.name.clone(),
                value: self.bool_expr(params, 2),
            });
        }
        out
    }

    fn stmt(&mut self, me: &Header, params: &[String], depth: u32) -> Stmt {
        let choice = if depth == 0 {
            self.rng.gen_range(1..4)
        } else {
            self.rng.gen_range(0..4)
        };
        match choice {
            0 => {
                let cond = self.bool_expr(params, 2);
                let then = self.block(me, params, depth - 1);
                let otherwise = if self.rng.gen_bool(0.5) {
                    Some(self.block(me, params, depth - 1))
                } else {
                    None
                };
                Stmt::If {
                    cond,
                    then,
                    otherwise,
                }
            }
            1 => {
                let procs = self.callees(Kind::Procedure);
                let h = procs.choose(self.rng).unwrap().clone();
                let args = self.args(h.arity, params, 1);
                Stmt::Call { name: h.name, args }
            }
            2 if me.kind == Kind::Function => Stmt::ResultAssign {
                name: me.name.clone(),
                value: self.bool_expr(params, 2),
            },
            _ => Stmt::Print(self.str_expr(params, 1)),
        }
    }
}

/// A random well-formed table whose first definition is the parameterless
/// procedure `main`. Recursion, faults and unbounded growth all occur.
pub fn random_program(rng: &mut ChaCha8Rng) -> DefinitionTable {
    let count = rng.gen_range(1..=4);
    let mut headers = vec![Header {
        name: "main".into(),
        kind: Kind::Procedure,
        arity: 0,
    }];
    for i in 0..count {
        let kind = if rng.gen_bool(0.5) {
            Kind::Procedure
        } else {
            Kind::Function
        };
        let prefix = if kind == Kind::Procedure { "p" } else { "f" };
        headers.push(Header {
            name: format!("{prefix}{i}"),
            kind,
            arity: rng.gen_range(0..=2),
        });
    }
    let mut gen = ProgramGen {
        rng,
        headers: headers.clone(),
    };
    let mut text = String::new();
    for h in &headers {
        let params: Vec<String> = PARAMS[..h.arity].iter().map(|p| p.to_string()).collect();
        let body = gen.block(h, &params, 2);
        let def = Definition {
            name: h.name.clone(),
            kind: h.kind,
            params: params.clone(),
            body: Some(body),
        };
        text.push_str(&render(&def));
        text.push_str("\n\n");
    }
    DefinitionTable::parse(text.as_str()).expect("generated text parses")
}

fn random_bool_expr(rng: &mut ChaCha8Rng, names: &[String], depth: u32) -> BoolExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..5) {
            0 => BoolExpr::Lit(rng.gen()),
            1 => BoolExpr::Holds(names.choose(rng).unwrap().clone()),
            _ => BoolExpr::Ref(names.choose(rng).unwrap().clone()),
        };
    }
    let d = depth - 1;
    let op = rng.gen_range(0..4);
    let a = Box::new(random_bool_expr(rng, names, d));
    if op == 0 {
        return BoolExpr::Not(a);
    }
    let b = Box::new(random_bool_expr(rng, names, d));
    match op {
        1 => BoolExpr::Eq(a, b),
        2 => BoolExpr::And(a, b),
        _ => BoolExpr::Or(a, b),
    }
}

/// A random system with `1..=max_n` unknowns referring only to each other.
pub fn random_system(rng: &mut ChaCha8Rng, max_n: usize) -> EquationSystem {
    let n = rng.gen_range(1..=max_n);
    let names: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
    let equations = names
        .iter()
        .map(|name| Equation {
            name: name.clone(),
            rhs: random_bool_expr(rng, &names, 3),
        })
        .collect();
    EquationSystem::new(equations).expect("names are unique and defined")
}
