use num_bigint::BigInt;

use crate::error::{Location, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Colon,
    Newline,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Newline => "end of line".to_string(),
            Tok::Eof => "end of input".to_string(),
            other => {
                let s = match other {
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Star => "*",
                    Tok::Slash => "/",
                    Tok::Caret => "^",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::LBracket => "[",
                    Tok::RBracket => "]",
                    Tok::Eq => "=",
                    Tok::Semi => ";",
                    _ => ":",
                };
                format!("`{s}`")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub loc: Location,
}

/// Splits `src` into tokens. `#` starts a comment running to end of line.
/// Newlines are kept as tokens because model-file headers are line based.
pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let loc = Location { line, col };
        if c == '\n' {
            chars.next();
            out.push(Token { tok: Tok::Newline, loc });
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == '#' {
            while let Some(&d) = chars.peek() {
                if d == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            if matches!(chars.peek(), Some(d) if d.is_ascii_alphabetic() || *d == '_' || *d == '.') {
                return Err(ParseError::syntax(
                    Location { line, col },
                    "numbers are integers; write rationals as a/b and products with `*`",
                ));
            }
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), loc });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                col += 1;
            }
            out.push(Token { tok: Tok::Ident(s), loc });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '=' => Tok::Eq,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            other => return Err(ParseError::syntax(loc, format!("unexpected character `{other}`"))),
        };
        chars.next();
        col += 1;
        out.push(Token { tok, loc });
    }
    out.push(Token { tok: Tok::Eof, loc: Location { line, col } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        tokenize(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn comments_and_newlines() {
        let t = toks("g[1][2] = 3 # note\nx");
        assert_eq!(t[0], Tok::Ident("g".into()));
        assert!(t.contains(&Tok::Int(3.into())));
        assert_eq!(&t[t.len() - 3..], &[Tok::Newline, Tok::Ident("x".into()), Tok::Eof]);
    }

    #[test]
    fn locations_are_one_based() {
        let t = tokenize("a\n  bc").unwrap();
        assert_eq!(t[2].loc, Location { line: 2, col: 3 });
    }

    #[test]
    fn stray_characters_are_located() {
        let e = tokenize("x $ y").unwrap_err();
        assert_eq!(e.loc, Location { line: 1, col: 3 });
    }
}
