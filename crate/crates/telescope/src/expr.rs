//! Expression front-end: AST, parser, printer, exact evaluation.
//!
//! Grammar (whitespace insignificant, '*' required for products):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | power
//! power  := postfix ('^' exponent)?
//! exponent := integer | '(' expr ')'
//! postfix := base '!'*
//! base   := integer | ident | call | '(' expr ')'
//! call   := ident '(' expr (',' expr)* ')'
//! ```
//!
//! Recognized calls: binomial, factorial, pochhammer.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Rat;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Factorial(Box<Expr>),
    Binomial(Box<Expr>, Box<Expr>),
    Pochhammer(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Int(BigInt::from(v))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn parse(input: &str) -> Result<Expr> {
        let mut p = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        p.skip_ws();
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(Error::Parse {
                pos: p.pos,
                msg: "trailing input".into(),
            });
        }
        Ok(e)
    }

    /// All variable names, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Var(v) = e {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        });
        out.sort();
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Int(_) | Expr::Var(_) => {}
            Expr::Neg(a) | Expr::Factorial(a) => a.walk(f),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b)
            | Expr::Binomial(a, b)
            | Expr::Pochhammer(a, b) => {
                a.walk(f);
                b.walk(f);
            }
        }
    }

    /// Exact evaluation under an integer/rational assignment of variables.
    pub fn eval(&self, env: &HashMap<String, Rat>) -> Result<Rat> {
        match self {
            Expr::Int(v) => Ok(Rat::from_integer(v.clone())),
            Expr::Var(name) => env
                .get(name)
                .cloned()
                .ok_or_else(|| Error::domain(format!("unbound variable {}", name))),
            Expr::Add(a, b) => Ok(a.eval(env)? + b.eval(env)?),
            Expr::Sub(a, b) => Ok(a.eval(env)? - b.eval(env)?),
            Expr::Mul(a, b) => Ok(a.eval(env)? * b.eval(env)?),
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d.is_zero() {
                    return Err(Error::domain("division by zero during evaluation"));
                }
                Ok(a.eval(env)? / d)
            }
            Expr::Neg(a) => Ok(-a.eval(env)?),
            Expr::Pow(a, b) => {
                let e = as_int(&b.eval(env)?, "exponent")?;
                let base = a.eval(env)?;
                if base.is_zero() {
                    if e.is_negative() {
                        return Err(Error::domain("zero to a negative power"));
                    }
                    return Ok(if e.is_zero() { Rat::one() } else { Rat::zero() });
                }
                let ei = int_to_i32(&e)?;
                Ok(rational_pow(&base, ei))
            }
            Expr::Factorial(a) => {
                let v = as_int(&a.eval(env)?, "factorial argument")?;
                if v.is_negative() {
                    return Err(Error::domain("factorial of a negative integer"));
                }
                Ok(Rat::from_integer(factorial_big(&v)))
            }
            Expr::Binomial(a, b) => {
                let bot = as_int(&b.eval(env)?, "binomial lower index")?;
                if bot.is_negative() {
                    return Ok(Rat::zero());
                }
                let top = a.eval(env)?;
                // falling-factorial definition; vanishes iff 0 <= top < bot
                let b_small = int_to_i32(&bot)? as i64;
                let mut num = Rat::one();
                for i in 0..b_small {
                    num *= top.clone() - Rat::from_integer(BigInt::from(i));
                }
                Ok(num / Rat::from_integer(factorial_big(&bot)))
            }
            Expr::Pochhammer(a, b) => {
                let steps = as_int(&b.eval(env)?, "pochhammer length")?;
                let base = a.eval(env)?;
                let s = int_to_i32(&steps)? as i64;
                if s >= 0 {
                    let mut acc = Rat::one();
                    for i in 0..s {
                        acc *= base.clone() + Rat::from_integer(BigInt::from(i));
                    }
                    Ok(acc)
                } else {
                    // (a)_(-m) = 1/((a-m)(a-m+1)...(a-1))
                    let mut acc = Rat::one();
                    for i in 1..=(-s) {
                        let v = base.clone() - Rat::from_integer(BigInt::from(i));
                        if v.is_zero() {
                            return Err(Error::domain("pochhammer pole"));
                        }
                        acc *= v;
                    }
                    Ok(acc.recip())
                }
            }
        }
    }
}

fn as_int(r: &Rat, what: &str) -> Result<BigInt> {
    if r.denom().is_one() {
        Ok(r.numer().clone())
    } else {
        Err(Error::domain(format!("{} is not an integer: {}", what, r)))
    }
}

fn int_to_i32(v: &BigInt) -> Result<i32> {
    use num_traits::ToPrimitive;
    v.to_i32()
        .ok_or_else(|| Error::domain(format!("integer too large: {}", v)))
}

fn rational_pow(base: &Rat, e: i32) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut acc = Rat::one();
    for _ in 0..e.abs() {
        acc *= base.clone();
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn factorial_big(n: &BigInt) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = BigInt::one();
    while &i <= n {
        acc *= &i;
        i += 1;
    }
    acc
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse {
                pos: self.pos,
                msg: format!("expected '{}'", c as char),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(b'-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.postfix()?;
        if self.eat(b'^') {
            let exp = if self.peek() == Some(b'(') {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                e
            } else if self.eat(b'-') {
                Expr::Neg(Box::new(self.integer()?))
            } else if self.peek().map_or(false, |c| c.is_ascii_alphabetic() || c == b'_') {
                let start = self.pos;
                while self
                    .peek()
                    .map_or(false, |c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                self.skip_ws();
                Expr::Var(name.to_string())
            } else {
                self.integer()?
            };
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut base = self.base()?;
        while self.eat(b'!') {
            base = Expr::Factorial(Box::new(base));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Expr> {
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                pos: self.pos,
                msg: "expected integer".into(),
            });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        self.skip_ws();
        Ok(Expr::Int(text.parse().unwrap()))
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.integer(),
            Some(b'(') => {
                self.expect(b'(')?;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .map_or(false, |c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos])
                    .unwrap()
                    .to_string();
                self.skip_ws();
                if self.peek() == Some(b'(') {
                    self.expect(b'(')?;
                    let mut args = vec![self.expr()?];
                    while self.eat(b',') {
                        args.push(self.expr()?);
                    }
                    self.expect(b')')?;
                    match (name.as_str(), args.len()) {
                        ("binomial", 2) => {
                            let b = args.pop().unwrap();
                            let a = args.pop().unwrap();
                            Ok(Expr::Binomial(Box::new(a), Box::new(b)))
                        }
                        ("pochhammer", 2) => {
                            let b = args.pop().unwrap();
                            let a = args.pop().unwrap();
                            Ok(Expr::Pochhammer(Box::new(a), Box::new(b)))
                        }
                        ("factorial", 1) => Ok(Expr::Factorial(Box::new(args.pop().unwrap()))),
                        _ => Err(Error::Parse {
                            pos: start,
                            msg: format!("unknown call {}/{}", name, args.len()),
                        }),
                    }
                } else {
                    Ok(Expr::Var(name))
                }
            }
            _ => Err(Error::Parse {
                pos: self.pos,
                msg: "expected a number, variable, call, or parenthesized expression".into(),
            }),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl Expr {
    /// prec: 0 additive, 1 multiplicative, 2 unary, 3 power/postfix
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        let own = match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Neg(..) => 2,
            Expr::Pow(..) | Expr::Factorial(..) => 3,
            _ => 4,
        };
        let need = own < prec;
        if need {
            write!(f, "(")?;
        }
        match self {
            Expr::Int(v) => write!(f, "{}", v)?,
            Expr::Var(v) => write!(f, "{}", v)?,
            Expr::Add(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 1)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 1)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "*")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, "/")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 2)?;
            }
            Expr::Pow(a, b) => {
                a.fmt_prec(f, 4)?;
                write!(f, "^")?;
                match **b {
                    Expr::Int(ref v) if !v.is_negative() => write!(f, "{}", v)?,
                    _ => {
                        write!(f, "(")?;
                        b.fmt_prec(f, 0)?;
                        write!(f, ")")?;
                    }
                }
            }
            Expr::Factorial(a) => {
                a.fmt_prec(f, 4)?;
                write!(f, "!")?;
            }
            Expr::Binomial(a, b) => {
                write!(f, "binomial(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ", ")?;
                b.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Pochhammer(a, b) => {
                write!(f, "pochhammer(")?;
                a.fmt_prec(f, 0)?;
                write!(f, ", ")?;
                b.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if need {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn env(pairs: &[(&str, i64)]) -> HashMap<String, Rat> {
        pairs.iter().map(|&(k, v)| (k.to_string(), rat(v))).collect()
    }

    #[test]
    fn parse_and_eval() {
        let e = Expr::parse("binomial(n, k)^2*binomial(n + k, k)^2").unwrap();
        assert_eq!(e.eval(&env(&[("n", 2), ("k", 1)])).unwrap(), rat(36));
        let e = Expr::parse("(-1)^k*binomial(2*n, n + k)").unwrap();
        assert_eq!(e.eval(&env(&[("n", 1), ("k", 1)])).unwrap(), rat(-1));
        let e = Expr::parse("k!/(k - 2)!").unwrap();
        assert_eq!(e.eval(&env(&[("k", 5)])).unwrap(), rat(20));
    }

    #[test]
    fn binomial_support_convention() {
        let e = Expr::parse("binomial(n, k)").unwrap();
        assert_eq!(e.eval(&env(&[("n", 5), ("k", -1)])).unwrap(), rat(0));
        assert_eq!(e.eval(&env(&[("n", 5), ("k", 6)])).unwrap(), rat(0));
        assert_eq!(e.eval(&env(&[("n", 5), ("k", 2)])).unwrap(), rat(10));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = Expr::parse("1 + ").unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert_eq!(pos, 4),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(Expr::parse("foo(1, 2, 3)").is_err());
    }

    #[test]
    fn display_round_trip() {
        for src in [
            "binomial(n, k)^2*binomial(n + k, k)^2",
            "(-1)^k*binomial(2*n, n + k)^2",
            "1/(x^2 + 9*x + 20)",
            "(x + 1)^4*(x + 2)^3/((x + 4)^2*(x + 5)^3)",
            "pochhammer(n + 1, k)/k!",
            "2^n - 3*n + 1",
        ] {
            let e = Expr::parse(src).unwrap();
            let printed = e.to_string();
            let reparsed = Expr::parse(&printed).unwrap();
            assert_eq!(e, reparsed, "round trip failed for {src} -> {printed}");
        }
    }

    #[test]
    fn pochhammer_eval() {
        let e = Expr::parse("pochhammer(3, 4)").unwrap();
        assert_eq!(e.eval(&env(&[])).unwrap(), rat(3 * 4 * 5 * 6));
        let e = Expr::parse("pochhammer(5, -2)").unwrap();
        assert_eq!(e.eval(&env(&[])).unwrap(), Rat::new(1.into(), 12.into()));
    }
}
