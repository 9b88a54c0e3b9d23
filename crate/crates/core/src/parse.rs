//! Parser for operator expressions over a Lie algebra's basis names, and
//! for the multiplier catalog used by the spectral commands.
//!
//! Grammar (whitespace insignificant):
//!   expr   := term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := atom ('^' uint)?
//!   atom   := identifier | rational | 'i' | '(' expr ')' | '-' factor
//!   rational := int ('/' uint)?

use crate::env::EnvElement;
use crate::lie::LieAlgebra;
use crate::linalg::Vector;
use crate::poly::CPoly;
use crate::scalar::{GaussRational, Rational};
use crate::spectrum::Multiplier;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Arc;

#[derive(Debug, PartialEq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
    pub input: String,
}

impl std::error::Error for ParseError {}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "parse error at column {}: {}",
            self.position, self.message
        )?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.position))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
    Ident(String, usize),
    Rat(Rational),
    ImaginaryUnit,
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position,
            message: message.into(),
            input: self.input.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.parse_term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.parse_factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_factor(&mut self) -> Result<Expr, ParseError> {
        let atom = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let n = self.parse_uint()?;
            let n = n
                .to_u32()
                .ok_or_else(|| self.error::<()>(at, "exponent too large").unwrap_err())?;
            return Ok(Expr::Pow(Box::new(atom), n));
        }
        Ok(atom)
    }

    fn parse_atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.parse_expr()?;
                if !self.eat(b')') {
                    return self.error(self.pos, "expected `)`");
                }
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                let f = self.parse_factor()?;
                Ok(Expr::Neg(Box::new(f)))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.parse_uint()?;
                    if den.is_zero() {
                        return self.error(at, "zero denominator");
                    }
                    Ok(Expr::Rat(Rational::new(num, den)))
                } else {
                    Ok(Expr::Rat(Rational::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.input[start..self.pos];
                if name == "i" {
                    Ok(Expr::ImaginaryUnit)
                } else {
                    Ok(Expr::Ident(name.to_string(), start))
                }
            }
            Some(c) => self.error(self.pos, format!("unexpected character `{}`", c as char)),
            None => self.error(self.pos, "unexpected end of input"),
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "expected an integer");
        }
        Ok(self.input[start..self.pos].parse().unwrap())
    }
}

pub fn parse_expression(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(input);
    let e = p.parse_expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.error(p.pos, "trailing input");
    }
    Ok(e)
}

/// Evaluates an expression to an enveloping-algebra element; identifiers
/// must name basis elements.
pub fn eval_operator(
    expr: &Expr,
    algebra: &Arc<LieAlgebra>,
    input: &str,
) -> Result<EnvElement, ParseError> {
    match expr {
        Expr::Add(a, b) => {
            Ok(eval_operator(a, algebra, input)?.add(&eval_operator(b, algebra, input)?))
        }
        Expr::Sub(a, b) => {
            Ok(eval_operator(a, algebra, input)?.sub(&eval_operator(b, algebra, input)?))
        }
        Expr::Mul(a, b) => {
            Ok(eval_operator(a, algebra, input)?.multiply(&eval_operator(b, algebra, input)?))
        }
        Expr::Pow(a, n) => Ok(eval_operator(a, algebra, input)?.pow(*n as u64)),
        Expr::Neg(a) => Ok(eval_operator(a, algebra, input)?.neg()),
        Expr::Ident(name, pos) => match algebra.name_index(name) {
            Some(i) => Ok(EnvElement::generator(algebra.clone(), i)),
            None => Err(ParseError {
                position: *pos,
                message: format!("unknown basis element `{name}`"),
                input: input.to_string(),
            }),
        },
        Expr::Rat(r) => Ok(EnvElement::one(algebra.clone())
            .scale(&GaussRational::new(r.clone(), Rational::zero()))),
        Expr::ImaginaryUnit => Ok(EnvElement::one(algebra.clone())
            .scale(&GaussRational::new(Rational::zero(), Rational::one()))),
    }
}

pub fn parse_operator(input: &str, algebra: &Arc<LieAlgebra>) -> Result<EnvElement, ParseError> {
    let expr = parse_expression(input)?;
    eval_operator(&expr, algebra, input)
}

/// Evaluates an expression to a Lie-algebra vector: the result must be a
/// real linear combination of basis elements.
pub fn parse_vector(input: &str, algebra: &Arc<LieAlgebra>) -> Result<Vector, ParseError> {
    let d = parse_operator(input, algebra)?;
    let n = algebra.dim();
    let mut v = crate::linalg::zero_vector(n);
    for (e, c) in d.terms() {
        let total: u32 = e.iter().sum();
        if total != 1 {
            return Err(ParseError {
                position: 0,
                message: "expected a linear combination of basis elements".into(),
                input: input.to_string(),
            });
        }
        if !c.im.is_zero() {
            return Err(ParseError {
                position: 0,
                message: "vector coefficients must be real".into(),
                input: input.to_string(),
            });
        }
        let i = e.iter().position(|&k| k == 1).unwrap();
        v[i] = c.re.clone();
    }
    Ok(v)
}

/// Evaluates an expression to a commutative polynomial in λ₁,…,λ_n.
/// Identifiers: `lambda` (n = 1) or `lambda_k` / `lk`.
pub fn eval_poly(expr: &Expr, nvars: usize, input: &str) -> Result<CPoly, ParseError> {
    match expr {
        Expr::Add(a, b) => Ok(eval_poly(a, nvars, input)?.add(&eval_poly(b, nvars, input)?)),
        Expr::Sub(a, b) => Ok(eval_poly(a, nvars, input)?.sub(&eval_poly(b, nvars, input)?)),
        Expr::Mul(a, b) => Ok(eval_poly(a, nvars, input)?.multiply(&eval_poly(b, nvars, input)?)),
        Expr::Pow(a, n) => Ok(eval_poly(a, nvars, input)?.pow(*n)),
        Expr::Neg(a) => Ok(eval_poly(a, nvars, input)?.scale(&-GaussRational::one())),
        Expr::Ident(name, pos) => {
            let idx = lambda_index(name, nvars);
            match idx {
                Some(i) => Ok(CPoly::variable(nvars, i)),
                None => Err(ParseError {
                    position: *pos,
                    message: format!(
                        "unknown variable `{name}` (expected lambda or lambda_1..lambda_{nvars})"
                    ),
                    input: input.to_string(),
                }),
            }
        }
        Expr::Rat(r) => Ok(CPoly::constant(
            nvars,
            GaussRational::new(r.clone(), Rational::zero()),
        )),
        Expr::ImaginaryUnit => Ok(CPoly::constant(
            nvars,
            GaussRational::new(Rational::zero(), Rational::one()),
        )),
    }
}

fn lambda_index(name: &str, nvars: usize) -> Option<usize> {
    if (name == "lambda" || name == "l") && nvars == 1 {
        return Some(0);
    }
    let rest = name
        .strip_prefix("lambda_")
        .or_else(|| name.strip_prefix("lambda"))
        .or_else(|| name.strip_prefix("l"))?;
    let k: usize = rest.parse().ok()?;
    (1..=nvars).contains(&k).then(|| k - 1)
}

pub fn parse_poly(input: &str, nvars: usize) -> Result<CPoly, ParseError> {
    let expr = parse_expression(input)?;
    eval_poly(&expr, nvars, input)
}

/// Multiplier catalog: `exp(EXPR)`, `gauss(c)`, `mollbox(a,b,eps)`, `zero`.
/// Only named entries with rational parameters; no user code.
pub fn parse_multiplier(input: &str, nvars: usize) -> Result<Multiplier, ParseError> {
    let s = input.trim();
    let err = |message: &str| ParseError {
        position: 0,
        message: message.to_string(),
        input: input.to_string(),
    };
    if s == "zero" || s == "0" {
        return Ok(Multiplier::Zero { n: nvars });
    }
    let (name, rest) = match s.find('(') {
        Some(k) => (&s[..k], &s[k..]),
        None => return Err(err("expected NAME(ARGS): exp, gauss, mollbox, or zero")),
    };
    if !rest.ends_with(')') {
        return Err(err("expected closing `)`"));
    }
    let inner = &rest[1..rest.len() - 1];
    match name.trim() {
        "exp" => {
            let p = parse_poly(inner, nvars)?;
            if !p.is_real() {
                return Err(err("exponent polynomial must be real"));
            }
            // exp(E) is stored as e^{−q} with q = −E.
            let q = p.scale(&-GaussRational::one());
            Ok(Multiplier::ExpNegPoly(q))
        }
        "gauss" => {
            let c = crate::scalar::parse_rational(inner).map_err(|m| err(&m))?;
            if !c.is_positive() {
                return Err(err("gauss(c) needs c > 0"));
            }
            Ok(Multiplier::Gaussian { n: nvars, c })
        }
        "mollbox" => {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 {
                return Err(err("mollbox(a,b,eps) takes three rationals"));
            }
            let a = crate::scalar::parse_rational(parts[0]).map_err(|m| err(&m))?;
            let b = crate::scalar::parse_rational(parts[1]).map_err(|m| err(&m))?;
            let eps = crate::scalar::parse_rational(parts[2]).map_err(|m| err(&m))?;
            if !eps.is_positive() || b <= a {
                return Err(err("mollbox needs a < b and eps > 0"));
            }
            Ok(Multiplier::MollifiedBox {
                lo: vec![a; nvars],
                hi: vec![b; nvars],
                eps,
            })
        }
        other => Err(err(&format!(
            "unknown multiplier `{other}` (catalog: exp, gauss, mollbox, zero)"
        ))),
    }
}
