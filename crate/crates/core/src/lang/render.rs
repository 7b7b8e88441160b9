//! Canonical printer: 2-space indentation, LF line endings, a space
//! between a callee and its argument list.

use std::fmt::Write;

use super::ast::{Block, Definition, Expr, Kind, Stmt};

/// Canonical text of one definition. Parsing the result yields a
/// definition structurally equal to `d`.
pub fn render(d: &Definition) -> String {
    let mut out = String::new();
    out.push_str(match d.kind {
        Kind::Procedure => "procedure ",
        Kind::Function => "function ",
    });
    out.push_str(&d.name);
    if !d.params.is_empty() {
        let _ = write!(out, " ({}: string)", d.params.join(", "));
    }
    if d.kind == Kind::Function {
        out.push_str(": boolean");
    }
    out.push(';');
    if let Some(body) = &d.body {
        out.push('\n');
        block(&mut out, body, 0);
    }
    out
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn block(out: &mut String, stmts: &Block, depth: usize) {
    out.push_str("begin\n");
    for (i, s) in stmts.iter().enumerate() {
        indent(out, depth + 1);
        stmt(out, s, depth + 1);
        if i + 1 < stmts.len() {
            out.push(';');
        }
        out.push('\n');
    }
    indent(out, depth);
    out.push_str("end");
}

/// A then-branch holding a lone `if` is always wrapped so a following
/// `else` cannot attach to the inner statement.
fn branch(out: &mut String, stmts: &Block, depth: usize, inline_if: bool) {
    match stmts.as_slice() {
        [s] if inline_if || !matches!(s, Stmt::If { .. }) => stmt(out, s, depth),
        _ => block(out, stmts, depth),
    }
}

fn stmt(out: &mut String, s: &Stmt, depth: usize) {
    match s {
        Stmt::If {
            cond,
            then,
            otherwise,
        } => {
            out.push_str("if ");
            expr(out, cond);
            out.push_str(" then ");
            branch(out, then, depth, false);
            if let Some(otherwise) = otherwise {
                out.push_str(" else ");
                branch(out, otherwise, depth, true);
            }
        }
        Stmt::Call { name, args } => call(out, name, args.iter()),
        Stmt::ResultAssign { name, value } => {
            out.push_str(name);
            out.push_str(" := ");
            expr(out, value);
        }
        Stmt::Print(e) => call(out, "print", std::iter::once(e)),
    }
}

fn call<'a>(out: &mut String, name: &str, args: impl ExactSizeIterator<Item = &'a Expr>) {
    out.push_str(name);
    if args.len() == 0 {
        return;
    }
    out.push_str(" (");
    for (i, a) in args.enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        expr(out, a);
    }
    out.push(')');
}

fn operand(out: &mut String, e: &Expr) {
    if matches!(e, Expr::Eq(..)) {
        out.push('(');
        expr(out, e);
        out.push(')');
    } else {
        expr(out, e);
    }
}

pub(crate) fn expr(out: &mut String, e: &Expr) {
    match e {
        Expr::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Expr::Str(s) => {
            out.push('\'');
            out.push_str(&s.replace('\'', "''"));
            out.push('\'');
        }
        Expr::Var(name) => out.push_str(name),
        Expr::Call { name, args } => call(out, name, args.iter()),
        Expr::Not(inner) => {
            out.push_str("not ");
            operand(out, inner);
        }
        Expr::Eq(a, b) => {
            operand(out, a);
            out.push_str(" = ");
            operand(out, b);
        }
        Expr::Concat(a, b) => call(out, "concat", [a.as_ref(), b.as_ref()].into_iter()),
        Expr::Lookup(a) => call(out, "lookup", std::iter::once(a.as_ref())),
        Expr::Length(a) => call(out, "length", std::iter::once(a.as_ref())),
        Expr::CharAt(a, b) => call(out, "charat", [a.as_ref(), b.as_ref()].into_iter()),
    }
}
