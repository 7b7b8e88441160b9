//! Concrete syntax: `name = expr`, one per line or separated by `;`.
//! Operators from loosest to tightest: `=`, `or`, `and`, `not`. `B(X)`
//! reads "sentence X holds". `{ ... }` is a comment.

use crate::lang::Pos;

use super::syntax::{BoolExpr, Equation, EquationSystem, SystemError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Eq,
    LParen,
    RParen,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(n) => format!("identifier `{n}`"),
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Not => "`not`".into(),
            Tok::And => "`and`".into(),
            Tok::Or => "`or`".into(),
            Tok::Eq => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Token {
    tok: Tok,
    pos: Pos,
    /// A line break separates this token from the previous one.
    after_newline: bool,
}

fn lex(src: &str) -> Result<Vec<Token>, SystemError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut after_newline = false;
    let mut chars = src.chars().peekable();
    let mut in_comment: Option<Pos> = None;
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        chars.next();
        if c == '\n' {
            line += 1;
            column = 1;
            after_newline = true;
            continue;
        }
        column += 1;
        if in_comment.is_some() {
            if c == '}' {
                in_comment = None;
            }
            continue;
        }
        if c.is_whitespace() {
            continue;
        }
        let tok = match c {
            '{' => {
                in_comment = Some(pos);
                continue;
            }
            '=' => Tok::Eq,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            c if c.is_ascii_alphabetic() => {
                let mut word = c.to_string();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        word.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                match word.as_str() {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "not" => Tok::Not,
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(SystemError::Parse {
                    pos,
                    expected: vec!["equation".into()],
                    found: format!("character {other:?}"),
                })
            }
        };
        out.push(Token {
            tok,
            pos,
            after_newline,
        });
        after_newline = false;
    }
    if let Some(pos) = in_comment {
        return Err(SystemError::Parse {
            pos,
            expected: vec!["`}`".into()],
            found: "end of input".into(),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column },
        after_newline: true,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn advance(&mut self) {
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
    }

    fn err<T>(&self, expected: &[&str]) -> Result<T, SystemError> {
        Err(SystemError::Parse {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    /// An infix operator continues the expression only if it is on the
    /// same line, or anywhere inside parentheses.
    fn infix(&self, op: &Tok) -> bool {
        self.peek() == op && (self.depth > 0 || !self.tokens[self.at].after_newline)
    }

    fn equation(&mut self) -> Result<(Equation, Pos), SystemError> {
        let pos = self.pos();
        let Tok::Ident(name) = self.peek().clone() else {
            return self.err(&["identifier"]);
        };
        self.advance();
        if self.peek() != &Tok::Eq {
            return self.err(&["`=`"]);
        }
        self.advance();
        let rhs = self.expr()?;
        Ok((Equation { name, rhs }, pos))
    }

    fn expr(&mut self) -> Result<BoolExpr, SystemError> {
        let mut lhs = self.disjunction()?;
        while self.infix(&Tok::Eq) {
            self.advance();
            let rhs = self.disjunction()?;
            lhs = BoolExpr::Eq(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<BoolExpr, SystemError> {
        let mut lhs = self.conjunction()?;
        while self.infix(&Tok::Or) {
            self.advance();
            let rhs = self.conjunction()?;
            lhs = BoolExpr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<BoolExpr, SystemError> {
        let mut lhs = self.unary()?;
        while self.infix(&Tok::And) {
            self.advance();
            let rhs = self.unary()?;
            lhs = BoolExpr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<BoolExpr, SystemError> {
        if self.peek() == &Tok::Not {
            self.advance();
            return Ok(BoolExpr::Not(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<BoolExpr, SystemError> {
        match self.peek().clone() {
            Tok::True => {
                self.advance();
                Ok(BoolExpr::Lit(true))
            }
            Tok::False => {
                self.advance();
                Ok(BoolExpr::Lit(false))
            }
            Tok::LParen => {
                self.advance();
                self.depth += 1;
                let e = self.expr()?;
                if self.peek() != &Tok::RParen {
                    return self.err(&["`)`"]);
                }
                self.depth -= 1;
                self.advance();
                Ok(e)
            }
            Tok::Ident(name) => {
                self.advance();
                if name == "B" && self.peek() == &Tok::LParen {
                    self.advance();
                    let Tok::Ident(target) = self.peek().clone() else {
                        return self.err(&["sentence name"]);
                    };
                    self.advance();
                    if self.peek() != &Tok::RParen {
                        return self.err(&["`)`"]);
                    }
                    self.advance();
                    return Ok(BoolExpr::Holds(target));
                }
                Ok(BoolExpr::Ref(name))
            }
            _ => self.err(&["expression"]),
        }
    }
}

/// Parses an equation system and checks that names are unique and every
/// reference is defined.
pub fn parse_system(src: &str) -> Result<EquationSystem, SystemError> {
    let mut p = Parser {
        tokens: lex(src)?,
        at: 0,
        depth: 0,
    };
    let mut equations: Vec<(Equation, Pos)> = Vec::new();
    loop {
        while p.peek() == &Tok::Semi {
            p.advance();
        }
        if p.peek() == &Tok::Eof {
            break;
        }
        let (eq, pos) = p.equation()?;
        if equations.iter().any(|(e, _)| e.name == eq.name) {
            return Err(SystemError::Duplicate { pos, name: eq.name });
        }
        equations.push((eq, pos));
        let t = &p.tokens[p.at];
        if !(t.tok == Tok::Semi || t.tok == Tok::Eof || t.after_newline) {
            return p.err(&["`;`", "end of line"]);
        }
    }
    // Locate the first use of an undefined name for the error position.
    for (i, t) in p.tokens.iter().enumerate() {
        if let Tok::Ident(name) = &t.tok {
            let is_holds_fn =
                name == "B" && p.tokens.get(i + 1).map(|n| &n.tok) == Some(&Tok::LParen);
            if !is_holds_fn && !equations.iter().any(|(e, _)| &e.name == name) {
                return Err(SystemError::Undefined {
                    pos: t.pos,
                    name: name.clone(),
                });
            }
        }
    }
    EquationSystem::new(equations.into_iter().map(|(e, _)| e).collect())
}
