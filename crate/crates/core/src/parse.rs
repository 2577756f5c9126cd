//! Text form of polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | IDENT | '(' expr ')'
//! ```
//!
//! Identifiers are looked up in the supplied [`VarSet`]; whitespace is
//! ignored. Printing with `Display` and parsing back is the identity.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{QPoly, Rational, Rationals, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {position}: expected {}", expected.join(" or "))]
    SyntaxError { position: usize, expected: Vec<String> },
    #[error("unknown variable `{name}` at offset {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("division by zero in literal at offset {position}")]
    ZeroDenominator { position: usize },
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

/// Abstract syntax of a polynomial expression.
#[derive(Clone, Debug, PartialEq)]
pub enum PolyExpr {
    Literal(Rational),
    Var(usize),
    Neg(Box<PolyExpr>),
    Add(Box<PolyExpr>, Box<PolyExpr>),
    Sub(Box<PolyExpr>, Box<PolyExpr>),
    Mul(Box<PolyExpr>, Box<PolyExpr>),
    Pow(Box<PolyExpr>, u32),
}

impl PolyExpr {
    pub fn to_poly(&self, vars: &VarSet) -> QPoly {
        match self {
            PolyExpr::Literal(c) => QPoly::constant(vars.clone(), Rationals, c.clone()),
            PolyExpr::Var(i) => QPoly::var(vars.clone(), Rationals, *i),
            PolyExpr::Neg(a) => -&a.to_poly(vars),
            PolyExpr::Add(a, b) => &a.to_poly(vars) + &b.to_poly(vars),
            PolyExpr::Sub(a, b) => &a.to_poly(vars) - &b.to_poly(vars),
            PolyExpr::Mul(a, b) => &a.to_poly(vars) * &b.to_poly(vars),
            PolyExpr::Pow(a, e) => a.to_poly(vars).pow(*e),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Token::Plus,
            b'-' => Token::Minus,
            b'*' => Token::Star,
            b'^' => Token::Caret,
            b'/' => Token::Slash,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Token::Int(text[start..i].parse().unwrap())));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(ParseError::SyntaxError { position: start, expected: vec!["a token".into()] });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            position: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expr(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                PolyExpr::Neg(Box::new(self.term()?))
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = PolyExpr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = PolyExpr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyExpr, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            acc = PolyExpr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolyExpr, ParseError> {
        if let Some(Token::Minus) = self.peek() {
            self.pos += 1;
            return Ok(PolyExpr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolyExpr, ParseError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Int(n)) => {
                    let Ok(e) = u32::try_from(n) else {
                        return self.fail(&["an exponent below 2^32"]);
                    };
                    self.pos += 1;
                    return Ok(PolyExpr::Pow(Box::new(base), e));
                }
                _ => return self.fail(&["a non-negative integer exponent"]),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyExpr, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    let Some(Token::Int(d)) = self.peek().cloned() else {
                        return self.fail(&["an integer denominator"]);
                    };
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator { position: at });
                    }
                    self.pos += 1;
                    return Ok(PolyExpr::Literal(Rational::new(n, d)));
                }
                Ok(PolyExpr::Literal(Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => match self.vars.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(PolyExpr::Var(i))
                }
                None => Err(ParseError::UnknownVariable { name, position: at }),
            },
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if let Some(Token::RParen) = self.peek() {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    self.fail(&["`)`", "an operator"])
                }
            }
            _ => self.fail(&["a number", "a variable", "`(`"]),
        }
    }
}

pub fn parse_expr(text: &str, vars: &VarSet) -> Result<PolyExpr, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len(), vars };
    let e = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.fail(&["an operator", "end of input"]);
    }
    Ok(e)
}

/// Parses `text` into an exact polynomial over `vars`.
pub fn parse_poly(text: &str, vars: &VarSet) -> Result<QPoly, ParseError> {
    Ok(parse_expr(text, vars)?.to_poly(vars))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> VarSet {
        VarSet::indexed("z", 3)
    }

    #[test]
    fn klein_quartic_text() {
        let f = parse_poly("z0*z1^3 + z1*z2^3 + z2*z0^3", &z()).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.to_string(), "z0^3*z2 + z0*z1^3 + z1*z2^3");
    }

    #[test]
    fn cancellation_to_zero() {
        let p = parse_poly("x3^6 - x3^6", &VarSet::indexed("x", 4)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn fractional_exponent_is_a_syntax_error() {
        assert!(matches!(parse_poly("z0^(1/2)", &z()), Err(ParseError::SyntaxError { position: 3, .. })));
        assert!(matches!(parse_poly("z0^-1", &z()), Err(ParseError::SyntaxError { .. })));
    }

    #[test]
    fn unknown_identifier() {
        assert_eq!(parse_poly("z0 + w7", &z()), Err(ParseError::UnknownVariable { name: "w7".into(), position: 5 }));
        assert!(matches!(parse_poly("z3", &z()), Err(ParseError::UnknownVariable { .. })));
    }

    #[test]
    fn precedence_and_unary_minus() {
        let p = parse_poly("-z0^2 + 2*(z1 - 3/4)*z2 - -z0", &z()).unwrap();
        assert_eq!(p.to_string(), "-z0^2 + 2*z1*z2 + z0 - 3/2*z2");
        assert!(parse_poly("z0 +", &z()).is_err());
        assert!(parse_poly("(z0", &z()).is_err());
        assert!(parse_poly("z0 z1", &z()).is_err());
        assert!(matches!(parse_poly("1/0", &z()), Err(ParseError::ZeroDenominator { .. })));
    }
}
