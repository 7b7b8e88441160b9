use super::ast::{Block, Definition, Expr, Kind, Stmt, RESERVED};
use super::error::{ParseError, Pos};
use super::lexer::{tokenize, Tok, Token};

/// A parsed definition together with the exact text it came from.
pub(crate) struct Parsed {
    pub definition: Definition,
    pub text: String,
    pub pos: Pos,
}

pub(crate) fn parse_definitions(src: &str) -> Result<Vec<Parsed>, ParseError> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        src,
        tokens,
        at: 0,
        params: Vec::new(),
    };
    let mut out: Vec<Parsed> = Vec::new();
    loop {
        while parser.eat(&Tok::Semi) {}
        if parser.peek() == &Tok::Eof {
            break;
        }
        let parsed = parser.definition()?;
        if out
            .iter()
            .any(|p| p.definition.name == parsed.definition.name)
        {
            return Err(ParseError::Duplicate {
                pos: parsed.pos,
                name: parsed.definition.name,
            });
        }
        out.push(parsed);
    }
    Ok(out)
}

struct Parser<'s> {
    src: &'s str,
    tokens: Vec<Token>,
    at: usize,
    /// Parameters of the definition being parsed; identifiers naming one
    /// of these become `Expr::Var`.
    params: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.at];
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn unexpected<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::Unexpected {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.unexpected(&[&format!("`{}`", tok.spelling())])
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok(name)
            }
            _ => self.unexpected(&["identifier"]),
        }
    }

    fn type_name(&mut self, wanted: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(name) if name == wanted => {
                self.advance();
                Ok(())
            }
            _ => self.unexpected(&[&format!("`{wanted}`")]),
        }
    }

    fn definition(&mut self) -> Result<Parsed, ParseError> {
        let pos = self.pos();
        let start = self.tokens[self.at].start;
        let kind = match self.peek() {
            Tok::Procedure => Kind::Procedure,
            Tok::Function => Kind::Function,
            _ => return self.unexpected(&["`procedure`", "`function`"]),
        };
        self.advance();
        let name_pos = self.pos();
        let name = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(ParseError::Reserved {
                pos: name_pos,
                name,
            });
        }
        let params = if self.peek() == &Tok::LParen {
            self.params()?
        } else {
            Vec::new()
        };
        if kind == Kind::Function {
            self.expect(Tok::Colon)?;
            self.type_name("boolean")?;
        }
        let mut end = self.tokens[self.at].end;
        self.expect(Tok::Semi)?;
        let body = if self.peek() == &Tok::Begin {
            self.params = params.clone();
            let block = self.block()?;
            self.params.clear();
            end = self.tokens[self.at - 1].end;
            Some(block)
        } else {
            None
        };
        Ok(Parsed {
            definition: Definition {
                name,
                kind,
                params,
                body,
            },
            text: self.src[start..end].to_string(),
            pos,
        })
    }

    // '(' ident {',' ident} ':' 'string' {';' ...} ')'
    fn params(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut names = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(names);
        }
        loop {
            names.push(self.ident()?);
            while self.eat(&Tok::Comma) {
                names.push(self.ident()?);
            }
            self.expect(Tok::Colon)?;
            self.type_name("string")?;
            if self.eat(&Tok::Semi) {
                continue;
            }
            self.expect(Tok::RParen)?;
            return Ok(names);
        }
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        self.expect(Tok::Begin)?;
        let mut stmts = Vec::new();
        loop {
            if self.eat(&Tok::End) {
                return Ok(stmts);
            }
            if self.eat(&Tok::Semi) {
                continue;
            }
            stmts.push(self.stmt()?);
            match self.peek() {
                Tok::Semi | Tok::End => {}
                _ => return self.unexpected(&["`;`", "`end`"]),
            }
        }
    }

    fn branch(&mut self) -> Result<Block, ParseError> {
        if self.peek() == &Tok::Begin {
            self.block()
        } else {
            Ok(vec![self.stmt()?])
        }
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        match self.peek().clone() {
            Tok::If => {
                self.advance();
                let cond = self.expr()?;
                self.expect(Tok::Then)?;
                let then = self.branch()?;
                let otherwise = if self.eat(&Tok::Else) {
                    Some(self.branch()?)
                } else {
                    None
                };
                Ok(Stmt::If {
                    cond,
                    then,
                    otherwise,
                })
            }
            Tok::Ident(name) => {
                let pos = self.pos();
                self.advance();
                if self.eat(&Tok::Assign) {
                    let value = self.expr()?;
                    return Ok(Stmt::ResultAssign { name, value });
                }
                let args = if self.peek() == &Tok::LParen {
                    self.args()?
                } else {
                    Vec::new()
                };
                if name == "print" {
                    let found = args.len();
                    let mut it = args.into_iter();
                    return match (it.next(), found) {
                        (Some(e), 1) => Ok(Stmt::Print(e)),
                        _ => Err(ParseError::BuiltinArity {
                            pos,
                            name,
                            expected: 1,
                            found,
                        }),
                    };
                }
                if RESERVED.contains(&name.as_str()) {
                    return Err(ParseError::Reserved { pos, name });
                }
                Ok(Stmt::Call { name, args })
            }
            _ => self.unexpected(&["statement"]),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(Tok::RParen)?;
            return Ok(args);
        }
    }

    // expr := unary {'=' unary}
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Eq) {
            let rhs = self.unary()?;
            lhs = Expr::eq(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Not) {
            return Ok(Expr::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.advance();
                Ok(Expr::Bool(true))
            }
            Tok::False => {
                self.advance();
                Ok(Expr::Bool(false))
            }
            Tok::Str(s) => {
                self.advance();
                Ok(Expr::Str(s))
            }
            Tok::LParen => {
                self.advance();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let pos = self.pos();
                self.advance();
                if self.peek() != &Tok::LParen {
                    if self.params.contains(&name) {
                        return Ok(Expr::Var(name));
                    }
                    if RESERVED.contains(&name.as_str()) {
                        return Err(ParseError::Reserved { pos, name });
                    }
                    return Ok(Expr::call(name, Vec::new()));
                }
                let args = self.args()?;
                builtin(pos, name, args)
            }
            _ => self.unexpected(&["expression"]),
        }
    }
}

fn builtin(pos: Pos, name: String, args: Vec<Expr>) -> Result<Expr, ParseError> {
    let expected = match name.as_str() {
        "lookup" | "length" => 1,
        "concat" | "charat" => 2,
        "print" => return Err(ParseError::Reserved { pos, name }),
        _ => return Ok(Expr::Call { name, args }),
    };
    if args.len() != expected {
        return Err(ParseError::BuiltinArity {
            pos,
            name,
            expected,
            found: args.len(),
        });
    }
    let mut it = args.into_iter().map(Box::new);
    let mut next = || it.next().expect("arity checked");
    Ok(match name.as_str() {
        "lookup" => Expr::Lookup(next()),
        "length" => Expr::Length(next()),
        "concat" => Expr::Concat(next(), next()),
        _ => Expr::CharAt(next(), next()),
    })
}
