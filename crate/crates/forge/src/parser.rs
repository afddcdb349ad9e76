//! Pratt parser for the expression grammar.
//!
//! Precedence, tightest first: `^` (integer exponents only), unary `-`,
//! `*` and `/`, then `+` and `-`. Binary operators associate to the left.

use num_bigint::BigInt;

use crate::error::{Location, ParseError};
use crate::lexer::{Tok, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Exp(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub loc: Location,
}

const PREFIX_NEG_BP: u8 = 5;
const POW_BP: u8 = 7;

/// Token stream with a position. Newlines are skipped unless a caller asks
/// for them explicitly (model headers).
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Token>) -> Self {
        Cursor { toks, pos: 0 }
    }

    fn skip_newlines(&mut self) {
        while self.toks[self.pos].tok == Tok::Newline {
            self.pos += 1;
        }
    }

    /// Next significant token, without consuming it.
    pub fn peek(&mut self) -> &Token {
        self.skip_newlines();
        &self.toks[self.pos]
    }

    /// Next token including newlines, without consuming it.
    pub fn peek_raw(&self) -> &Token {
        &self.toks[self.pos]
    }

    pub fn advance(&mut self) -> Token {
        self.skip_newlines();
        self.next_raw()
    }

    pub fn next_raw(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    pub fn expect(&mut self, want: Tok, context: &str) -> Result<Token, ParseError> {
        let t = self.advance();
        if t.tok == want {
            Ok(t)
        } else {
            Err(ParseError::syntax(
                t.loc,
                format!("expected {} {context}, found {}", want.describe(), t.tok.describe()),
            ))
        }
    }

    pub fn expect_ident(&mut self, context: &str) -> Result<(String, Location), ParseError> {
        let t = self.advance();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.loc)),
            other => Err(ParseError::syntax(t.loc, format!("expected a name {context}, found {}", other.describe()))),
        }
    }

    pub fn expect_int(&mut self, context: &str) -> Result<(BigInt, Location), ParseError> {
        let t = self.advance();
        match t.tok {
            Tok::Int(n) => Ok((n, t.loc)),
            other => {
                Err(ParseError::syntax(t.loc, format!("expected an integer {context}, found {}", other.describe())))
            }
        }
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        self.expr_bp(0)
    }

    fn expr_bp(&mut self, min_bp: u8) -> Result<Expr, ParseError> {
        let t = self.advance();
        let mut lhs = match t.tok {
            Tok::Int(n) => Expr { kind: ExprKind::Int(n), loc: t.loc },
            Tok::Minus => {
                let inner = self.expr_bp(PREFIX_NEG_BP)?;
                Expr { kind: ExprKind::Neg(Box::new(inner)), loc: t.loc }
            }
            Tok::LParen => {
                let inner = self.expr_bp(0)?;
                self.expect(Tok::RParen, "to close `(`")?;
                inner
            }
            Tok::Ident(name) => {
                if self.peek().tok == Tok::LParen {
                    if name != "exp" {
                        return Err(ParseError::new(t.loc, crate::error::ParseErrorKind::UnknownSymbol(name)));
                    }
                    self.advance();
                    let arg = self.expr_bp(0)?;
                    self.expect(Tok::RParen, "to close `exp(`")?;
                    Expr { kind: ExprKind::Exp(Box::new(arg)), loc: t.loc }
                } else {
                    Expr { kind: ExprKind::Name(name), loc: t.loc }
                }
            }
            other => {
                return Err(ParseError::syntax(t.loc, format!("expected an expression, found {}", other.describe())));
            }
        };
        loop {
            let op = self.peek().clone();
            let (l_bp, r_bp) = match op.tok {
                Tok::Caret => {
                    if POW_BP < min_bp {
                        break;
                    }
                    self.advance();
                    let e = self.exponent()?;
                    lhs = Expr { kind: ExprKind::Pow(Box::new(lhs), e), loc: op.loc };
                    if self.peek().tok == Tok::Caret {
                        let loc = self.peek().loc;
                        return Err(ParseError::syntax(loc, "chained `^`; add parentheses"));
                    }
                    continue;
                }
                Tok::Plus | Tok::Minus => (1, 2),
                Tok::Star | Tok::Slash => (3, 4),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            self.advance();
            let rhs = Box::new(self.expr_bp(r_bp)?);
            let lhs_b = Box::new(lhs);
            let kind = match op.tok {
                Tok::Plus => ExprKind::Add(lhs_b, rhs),
                Tok::Minus => ExprKind::Sub(lhs_b, rhs),
                Tok::Star => ExprKind::Mul(lhs_b, rhs),
                _ => ExprKind::Div(lhs_b, rhs),
            };
            lhs = Expr { kind, loc: op.loc };
        }
        Ok(lhs)
    }

    /// `INT`, `-INT`, or either in parentheses.
    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.peek().tok == Tok::LParen;
        if paren {
            self.advance();
        }
        let neg = self.peek().tok == Tok::Minus;
        if neg {
            self.advance();
        }
        let (n, loc) = self.expect_int("as exponent")?;
        if paren {
            self.expect(Tok::RParen, "to close the exponent")?;
        }
        let v: i64 = n.try_into().map_err(|_| ParseError::syntax(loc, "exponent too large"))?;
        if v > 1000 {
            return Err(ParseError::syntax(loc, "exponent too large"));
        }
        Ok(if neg { -v } else { v })
    }
}
