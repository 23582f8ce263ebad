//! User-defined Weyl functions from a small expression language in `mu`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | atom
//! atom   := number | 'mu' | 'i' | 'pi' | 'e' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `sqrt` takes the branch with `Im ≥ 0`, so `2*i*sqrt(mu)` is the
//! point-interaction model.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::sqrt_upper;
use crate::weyl::{OpenInterval, WeylFn};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(Complex64),
    Mu,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens: &tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != tokens.len() {
            return Err(Error::Expr(format!("unexpected {} after expression", tokens[p.pos])));
        }
        Ok(e)
    }

    pub fn eval(&self, mu: Complex64) -> Complex64 {
        match self {
            Expr::Const(c) => *c,
            Expr::Mu => mu,
            Expr::Neg(a) => -a.eval(mu),
            Expr::Add(a, b) => a.eval(mu) + b.eval(mu),
            Expr::Sub(a, b) => a.eval(mu) - b.eval(mu),
            Expr::Mul(a, b) => a.eval(mu) * b.eval(mu),
            Expr::Div(a, b) => a.eval(mu) / b.eval(mu),
            Expr::Sqrt(a) => sqrt_upper(a.eval(mu)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(x) => write!(f, "number {x}"),
            Token::Ident(s) => write!(f, "'{s}'"),
            Token::Op(c) => write!(f, "'{c}'"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            // exponent, only when followed by digits
            if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                let mut j = k + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    k = j;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                }
            }
            let text: String = chars[start..k].iter().collect();
            let v: f64 = text.parse().map_err(|_| Error::Expr(format!("bad number '{text}'")))?;
            out.push(Token::Num(v));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push(Token::Ident(chars[start..k].iter().collect()));
        } else if "+-*/()".contains(c) {
            out.push(Token::Op(c));
            k += 1;
        } else {
            return Err(Error::Expr(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, c: char) -> Result<()> {
        if self.eat_op(c) {
            Ok(())
        } else {
            Err(Error::Expr(match self.peek() {
                Some(t) => format!("expected '{c}', found {t}"),
                None => format!("expected '{c}' at end of input"),
            }))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned().ok_or_else(|| Error::Expr("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(v) => Ok(Expr::Const(Complex64::new(v, 0.0))),
            Token::Op('(') => {
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            Token::Ident(name) => match name.as_str() {
                "mu" => Ok(Expr::Mu),
                "i" => Ok(Expr::Const(Complex64::i())),
                "pi" => Ok(Expr::Const(Complex64::new(std::f64::consts::PI, 0.0))),
                "e" => Ok(Expr::Const(Complex64::new(std::f64::consts::E, 0.0))),
                "sqrt" => {
                    self.expect_op('(')?;
                    let e = self.expr()?;
                    self.expect_op(')')?;
                    Ok(Expr::Sqrt(Box::new(e)))
                }
                other => Err(Error::Expr(format!("unknown name '{other}'"))),
            },
            other => Err(Error::Expr(format!("unexpected {other}"))),
        }
    }
}

/// A Weyl function given by an expression, with a user-declared interval
/// of real regularity.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprWeyl {
    pub source: String,
    expr: Expr,
    domain: Vec<OpenInterval>,
}

impl ExprWeyl {
    pub fn new(source: &str, domain: Vec<OpenInterval>) -> Result<ExprWeyl> {
        if domain.iter().any(|d| d.lo.is_nan() || d.hi.is_nan() || d.lo >= d.hi) {
            return Err(Error::Config("real domain intervals need lo < hi".into()));
        }
        Ok(ExprWeyl { source: source.to_string(), expr: Expr::parse(source)?, domain })
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }
}

impl WeylFn for ExprWeyl {
    fn eval(&self, mu: Complex64) -> Complex64 {
        self.expr.eval(mu)
    }

    fn real_domain(&self) -> Vec<OpenInterval> {
        self.domain.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::m_free;

    fn ev(s: &str, mu: Complex64) -> Complex64 {
        Expr::parse(s).unwrap().eval(mu)
    }

    #[test]
    fn arithmetic_and_precedence() {
        let z = Complex64::new(0.0, 0.0);
        assert_eq!(ev("1 + 2 * 3", z), Complex64::new(7.0, 0.0));
        assert_eq!(ev("(1 + 2) * 3", z), Complex64::new(9.0, 0.0));
        assert_eq!(ev("8 / 4 / 2", z), Complex64::new(1.0, 0.0));
        assert_eq!(ev("1 - 2 - 3", z), Complex64::new(-4.0, 0.0));
        assert_eq!(ev("--2", z), Complex64::new(2.0, 0.0));
        assert_eq!(ev("-i*i", z), Complex64::new(1.0, 0.0));
        assert_eq!(ev("2.5e-1 + 1E2", z), Complex64::new(100.25, 0.0));
        assert!((ev("pi", z).re - std::f64::consts::PI).abs() < 1e-16);
    }

    #[test]
    fn sqrt_uses_upper_branch() {
        assert_eq!(ev("sqrt(-4)", Complex64::new(0.0, 0.0)), Complex64::new(0.0, 2.0));
        let s = ev("sqrt(mu)", Complex64::new(1.0, -1e-3));
        assert!(s.im > 0.0);
    }

    #[test]
    fn model_expression_matches_model() {
        let m = ExprWeyl::new("2*i*sqrt(mu)", vec![OpenInterval { lo: f64::NEG_INFINITY, hi: 0.0 }]).unwrap();
        for mu in [Complex64::new(-1.0, 0.0), Complex64::new(0.3, 2.0), Complex64::new(-5.0, 0.1)] {
            assert!((m.eval(mu) - m_free(mu)).norm() < 1e-14);
        }
        assert!((m.boundary_eval(-0.25).unwrap() + 1.0).abs() < 1e-15);
        assert!(m.boundary_eval(0.5).is_err());
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "1 +", "(1", "sqrt 2", "foo", "1 $ 2", "mu mu", "1..2"] {
            assert!(matches!(Expr::parse(bad), Err(Error::Expr(_))), "{bad}");
        }
        assert!(ExprWeyl::new("mu", vec![OpenInterval { lo: 1.0, hi: 0.0 }]).is_err());
    }
}
