//! Recursive-descent parser for the expression grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' exponent)*
//! exponent:= ['-'] INT | '(' ['-'] INT ')'
//! primary := INT | IDENT | 'exp' '(' expr ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::{canonicalize, Ast};
use super::expr::CanonicalExpr;
use super::{ExprError, Var};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            column += i - start;
            let n: BigInt = text.parse().expect("digits parse as an integer");
            out.push(Spanned {
                tok: Tok::Int(n),
                line: l0,
                column: c0,
            });
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            column += i - start;
            out.push(Spanned {
                tok: Tok::Ident(text),
                line: l0,
                column: c0,
            });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ExprError::Syntax {
                        line,
                        column,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
        i += 1;
        column += 1;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Default identifier resolution: `x<k>` and `y<k>` with `k ≥ 1`.
pub fn coordinate(name: &str) -> Option<Var> {
    let (kind, digits) = name.split_at(1);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    let i: u32 = digits.parse().ok()?;
    match kind {
        "x" => Some(Var::X(i)),
        "y" => Some(Var::Y(i)),
        _ => None,
    }
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<Var>,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, at: &Spanned, message: impl Into<String>) -> ExprError {
        ExprError::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ExprError> {
        let t = self.bump();
        if t.tok == tok {
            Ok(())
        } else {
            Err(self.error(&t, format!("expected {what}, found {}", describe(&t.tok))))
        }
    }

    fn expr(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Ast::sum(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Ast::sum(lhs, Ast::neg(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Ast::product(lhs, self.unary()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Ast::quotient(lhs, self.unary()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ExprError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Ast::neg(self.unary()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ExprError> {
        let mut base = self.primary()?;
        while self.peek().tok == Tok::Caret {
            self.bump();
            let e = self.exponent()?;
            base = Ast::pow(base, e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ExprError> {
        let start = self.peek().clone();
        let non_integer = ExprError::NonIntegerExponent {
            line: start.line,
            column: start.column,
        };
        let parenthesised = start.tok == Tok::LParen;
        if parenthesised {
            self.bump();
        }
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let Tok::Int(n) = self.bump().tok else {
            return Err(non_integer);
        };
        if parenthesised {
            if self.peek().tok != Tok::RParen {
                return Err(non_integer);
            }
            self.bump();
        }
        let n = n.to_i64().ok_or_else(|| self.error(&start, "exponent out of range"))?;
        Ok(if negative { -n } else { n })
    }

    fn primary(&mut self) -> Result<Ast, ExprError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Ast::Const(Rational::from_integer(n))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) if name == "exp" => {
                self.expect(Tok::LParen, "`(` after exp")?;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Ast::exp(e))
            }
            Tok::Ident(name) => match (self.resolve)(&name) {
                Some(v) => Ok(Ast::Var(v)),
                None => Err(ExprError::UnknownIdentifier {
                    name,
                    line: t.line,
                    column: t.column,
                }),
            },
            other => {
                let msg = format!("unexpected {}", describe(&other));
                Err(ExprError::Syntax { line: t.line, column: t.column, message: msg })
            }
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses with a caller-supplied identifier table. Used for linear
/// combinations of named basis elements, where names map to stand-in
/// variables.
pub fn parse_with(source: &str, resolve: &dyn Fn(&str) -> Option<Var>) -> Result<Ast, ExprError> {
    let toks = lex(source)?;
    let mut p = Parser {
        toks,
        pos: 0,
        resolve,
    };
    let ast = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return Err(p.error(&t, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(ast)
}

pub fn parse(source: &str) -> Result<Ast, ExprError> {
    parse_with(source, &coordinate)
}

/// `parse` followed by `canonicalize`.
pub fn parse_expr(source: &str) -> Result<CanonicalExpr, ExprError> {
    canonicalize(&parse(source)?)
}
