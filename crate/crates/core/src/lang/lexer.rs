use std::fmt;

use super::error::{ParseError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Str(String),
    Procedure,
    Function,
    Begin,
    End,
    If,
    Then,
    Else,
    Not,
    True,
    False,
    Semi,
    Colon,
    Comma,
    LParen,
    RParen,
    Assign,
    Eq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(name) => write!(f, "identifier `{name}`"),
            Tok::Str(_) => f.write_str("string literal"),
            Tok::Eof => f.write_str("end of input"),
            other => write!(f, "`{}`", other.spelling()),
        }
    }
}

impl Tok {
    pub(crate) fn spelling(&self) -> &'static str {
        match self {
            Tok::Procedure => "procedure",
            Tok::Function => "function",
            Tok::Begin => "begin",
            Tok::End => "end",
            Tok::If => "if",
            Tok::Then => "then",
            Tok::Else => "else",
            Tok::Not => "not",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Comma => ",",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Assign => ":=",
            Tok::Eq => "=",
            Tok::Ident(_) => "identifier",
            Tok::Str(_) => "string",
            Tok::Eof => "end of input",
        }
    }

    fn keyword(word: &str) -> Option<Tok> {
        Some(match word {
            "procedure" => Tok::Procedure,
            "function" => Tok::Function,
            "begin" => Tok::Begin,
            "end" => Tok::End,
            "if" => Tok::If,
            "then" => Tok::Then,
            "else" => Tok::Else,
            "not" => Tok::Not,
            "true" => Tok::True,
            "false" => Tok::False,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
    /// Byte range in the source.
    pub start: usize,
    pub end: usize,
}

/// Tokenizes `src`, dropping whitespace and `{ ... }` comments.
pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    // Advances past one char, keeping line/column in sync.
    macro_rules! bump {
        () => {{
            let next = chars.next();
            if let Some((_, c)) = next {
                if c == '\n' {
                    line += 1;
                    column = 1;
                } else {
                    column += 1;
                }
            }
            next
        }};
    }

    while let Some(&(start, c)) = chars.peek() {
        let pos = Pos { line, column };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '{' {
            bump!();
            loop {
                match bump!() {
                    Some((_, '}')) => break,
                    Some(_) => {}
                    None => {
                        return Err(ParseError::Lex {
                            pos,
                            message: "unterminated comment".into(),
                        })
                    }
                }
            }
            continue;
        }
        if c == '\'' {
            bump!();
            let mut text = String::new();
            loop {
                match bump!() {
                    Some((_, '\'')) => {
                        if matches!(chars.peek(), Some((_, '\''))) {
                            bump!();
                            text.push('\'');
                        } else {
                            break;
                        }
                    }
                    Some((_, ch)) => text.push(ch),
                    None => {
                        return Err(ParseError::Lex {
                            pos,
                            message: "unterminated string literal".into(),
                        })
                    }
                }
            }
            let end = chars.peek().map_or(src.len(), |&(i, _)| i);
            out.push(Token {
                tok: Tok::Str(text),
                pos,
                start,
                end,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&(_, ch)) = chars.peek() {
                if ch.is_ascii_alphanumeric() || ch == '_' {
                    word.push(ch);
                    bump!();
                } else {
                    break;
                }
            }
            let end = start + word.len();
            let tok = Tok::keyword(&word).unwrap_or(Tok::Ident(word));
            out.push(Token {
                tok,
                pos,
                start,
                end,
            });
            continue;
        }
        bump!();
        let tok = match c {
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            ':' => {
                if matches!(chars.peek(), Some((_, '='))) {
                    bump!();
                    Tok::Assign
                } else {
                    Tok::Colon
                }
            }
            other => {
                return Err(ParseError::Lex {
                    pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        };
        let end = chars.peek().map_or(src.len(), |&(i, _)| i);
        out.push(Token {
            tok,
            pos,
            start,
            end,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, column },
        start: src.len(),
        end: src.len(),
    });
    Ok(out)
}
