//! Small expression language for input points, re-evaluable at any precision.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary | <implicit *> power)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' ['-'] integer)?
//! atom  := number | 'i' | 'w' | 'omega' | 'zeta' | 'pi' | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Numbers are decimal literals (`2`, `0.125`, `1e-3`) and are exact.
//! `w`, `omega` and `zeta` all denote the ring generator. Sub-expressions
//! stay exact until `pi`, an irrational square root, or `i` outside `ℤ[i]`
//! forces ball arithmetic.

use super::krat::KRat;
use super::pcomplex::PComplex;
use super::preal::PReal;
use super::ring::Ring;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Num(BigRational),
    I,
    Omega,
    Pi,
    Sqrt(Box<Node>),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i64),
}

#[derive(Clone, PartialEq)]
pub struct Expr {
    src: String,
    root: Node,
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({:?})", self.src)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.src)
    }
}

/// An evaluated point: exact when possible.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(KRat),
    Ball(PComplex),
}

impl Value {
    pub fn to_pcomplex(&self, prec: u32) -> PComplex {
        match self {
            Value::Exact(k) => k.to_pcomplex(prec),
            Value::Ball(b) => b.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&KRat> {
        match self {
            Value::Exact(k) => Some(k),
            Value::Ball(_) => None,
        }
    }

    fn binop(
        self,
        o: Value,
        prec: u32,
        exact: impl Fn(&KRat, &KRat) -> Result<KRat>,
        ball: impl Fn(&PComplex, &PComplex) -> Result<PComplex>,
    ) -> Result<Value> {
        match (&self, &o) {
            (Value::Exact(a), Value::Exact(b)) => Ok(Value::Exact(exact(a, b)?)),
            _ => Ok(Value::Ball(ball(&self.to_pcomplex(prec), &o.to_pcomplex(prec))?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(p) => (
            &s[..p],
            s[p + 1..]
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?,
        ),
        None => (s, 0),
    };
    let (int, frac) = match mant.find('.') {
        Some(p) => (&mant[..p], &mant[p + 1..]),
        None => (mant, ""),
    };
    let digits = format!("{int}{frac}");
    if digits.is_empty() {
        return Err(Error::Parse(format!("bad number {s:?}")));
    }
    let n: BigInt = digits
        .parse()
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    })
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_decimal(&s)?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect::<String>().to_lowercase()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?}")))
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            Ok(Node::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.next() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    let e: i64 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(Node::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(Error::Parse("exponent must be an integer literal".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Node> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(Node::Num(n)),
            Some(Tok::Ident(id)) => match id.as_str() {
                "i" => Ok(Node::I),
                "w" | "omega" | "zeta" => Ok(Node::Omega),
                "pi" => Ok(Node::Pi),
                "sqrt" => {
                    self.expect('(')?;
                    let inner = self.expr()?;
                    self.expect(')')?;
                    Ok(Node::Sqrt(Box::new(inner)))
                }
                other => Err(Error::Parse(format!("unknown identifier {other:?}"))),
            },
            Some(Tok::Op('(')) => {
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

fn eval(node: &Node, ring: Ring, prec: u32) -> Result<Value> {
    Ok(match node {
        Node::Num(n) => Value::Exact(KRat::from_rational(n.clone(), ring)),
        Node::Omega => Value::Exact(KRat::from_okint(&ring.omega())),
        Node::I if ring == Ring::D1 => Value::Exact(KRat::from_okint(&ring.omega())),
        Node::I => Value::Ball(PComplex::i(ring, prec)),
        Node::Pi => Value::Ball(PComplex::from_real(PReal::pi(prec), ring)),
        Node::Neg(a) => match eval(a, ring, prec)? {
            Value::Exact(k) => Value::Exact(k.neg()),
            Value::Ball(b) => Value::Ball(b.neg()),
        },
        Node::Add(a, b) => eval(a, ring, prec)?.binop(
            eval(b, ring, prec)?,
            prec,
            |x, y| Ok(x.add(y)),
            |x, y| Ok(x.add(y)),
        )?,
        Node::Sub(a, b) => eval(a, ring, prec)?.binop(
            eval(b, ring, prec)?,
            prec,
            |x, y| Ok(x.sub(y)),
            |x, y| Ok(x.sub(y)),
        )?,
        Node::Mul(a, b) => eval(a, ring, prec)?.binop(
            eval(b, ring, prec)?,
            prec,
            |x, y| Ok(x.mul(y)),
            |x, y| Ok(x.mul(y)),
        )?,
        Node::Div(a, b) => eval(a, ring, prec)?.binop(
            eval(b, ring, prec)?,
            prec,
            |x, y| {
                if y.is_zero() {
                    Err(Error::Domain("division by zero in expression".into()))
                } else {
                    x.div(y)
                }
            },
            |x, y| x.div(y),
        )?,
        Node::Pow(a, e) => {
            let base = eval(a, ring, prec)?;
            let mut acc = Value::Exact(KRat::from_rational(BigRational::one(), ring));
            for _ in 0..e.unsigned_abs() {
                acc = acc.binop(base.clone(), prec, |x, y| Ok(x.mul(y)), |x, y| Ok(x.mul(y)))?;
            }
            if *e < 0 {
                let one = Value::Exact(KRat::from_rational(BigRational::one(), ring));
                acc = one.binop(
                    acc,
                    prec,
                    |x, y| {
                        if y.is_zero() {
                            Err(Error::Domain("zero to a negative power".into()))
                        } else {
                            x.div(y)
                        }
                    },
                    |x, y| x.div(y),
                )?;
            }
            acc
        }
        Node::Sqrt(a) => sqrt_value(eval(a, ring, prec)?, ring, prec)?,
    })
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(exact_sqrt(r.numer())?, exact_sqrt(r.denom())?))
}

fn sqrt_value(v: Value, ring: Ring, prec: u32) -> Result<Value> {
    let guard = prec + 16;
    match v {
        Value::Exact(k) => {
            if !k.y().is_zero() {
                return Err(Error::Domain("sqrt of a non-real value".into()));
            }
            let r = k.x();
            if !r.is_negative() {
                if let Some(root) = rational_sqrt(r) {
                    return Ok(Value::Exact(KRat::from_rational(root, ring)));
                }
            } else {
                // √−disc = 2ω − tr lies in the ring
                let disc = BigRational::from_integer(ring.disc().into());
                if let Some(s) = rational_sqrt(&(-r / disc)) {
                    let tr = BigRational::from_integer(ring.trace().into());
                    return Ok(Value::Exact(KRat::new(-&s * tr, s * BigRational::from_integer(2.into()), ring)));
                }
            }
            let m = r.abs();
            let ball = PReal::from_ratio(m.numer().clone(), m.denom().clone(), guard)?
                .sqrt()?
                .with_prec(prec);
            Ok(Value::Ball(if r.is_negative() {
                PComplex::from_re_im(PReal::zero(prec), ball, ring)
            } else {
                PComplex::from_real(ball, ring)
            }))
        }
        Value::Ball(b) => {
            if !b.im().contains_zero() {
                return Err(Error::Domain("sqrt of a non-real value".into()));
            }
            let re = b.re();
            if re.cmp_certified(&PReal::zero(prec)) == Some(std::cmp::Ordering::Less) {
                let root = re.neg().sqrt()?;
                Ok(Value::Ball(PComplex::from_re_im(PReal::zero(prec), root, ring)))
            } else {
                Ok(Value::Ball(PComplex::from_real(re.sqrt()?, ring)))
            }
        }
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let toks = lex(src)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut p = Parser { toks, pos: 0 };
        let root = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {src:?}")));
        }
        Ok(Expr {
            src: src.trim().to_string(),
            root,
        })
    }

    pub fn source(&self) -> &str {
        &self.src
    }

    pub fn eval(&self, ring: Ring, prec: u32) -> Result<Value> {
        eval(&self.root, ring, prec)
    }

    /// Ball enclosure at `prec` bits, whether or not the value is exact.
    pub fn eval_ball(&self, ring: Ring, prec: u32) -> Result<PComplex> {
        Ok(self.eval(ring, prec)?.to_pcomplex(prec))
    }
}
