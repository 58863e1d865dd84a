//! Nearest-integer complex continued fractions.
//!
//! `z_0 = z`, `a_n = [z_n]` (nearest ring element), `z_{n+1} = 1/(z_n − a_n)`,
//! with convergents `p_n/q_n` from the usual three-term recurrences seeded at
//! index −2 by `p_{−2} = 0, p_{−1} = 1, q_{−2} = 1, q_{−1} = 0`.

mod checks;
mod constants;
mod dump;

pub use checks::{
    check_hypothesis, distinct_convergents, error_sandwich_check, reconstruct, HypothesisReport,
    SandwichReport, SandwichRow, SandwichStatus,
};
pub use constants::{constants, CFConstants};
pub use dump::{dump_records, DumpRecord};

use crate::error::{Error, Result};
use crate::field::{nearest_integer, Dyadic, Expr, KRat, OKInt, PComplex, Ring, Value};

/// Starting precision and the cap for the doubling retry policy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start: u32,
    pub cap: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start: 256,
            cap: 4096,
        }
    }
}

impl PrecisionPolicy {
    /// Runs `f` at the starting precision, doubling on precision failures
    /// until the cap. The last error is returned if every attempt fails.
    pub fn run<T>(&self, mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
        let mut prec = self.start.max(32);
        loop {
            match f(prec) {
                Err(e @ (Error::PrecisionInsufficient { .. } | Error::DivisionNearZero { .. })) => {
                    if prec >= self.cap {
                        return Err(e);
                    }
                    prec = (prec * 2).min(self.cap);
                }
                other => return other,
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CFExpansion {
    ring: Ring,
    z: PComplex,
    exact: Option<KRat>,
    a: Vec<OKInt>,
    // convergents stored from index −2
    p: Vec<OKInt>,
    q: Vec<OKInt>,
    eps: Vec<PComplex>,
    terminated: bool,
    prec: u32,
}

impl CFExpansion {
    fn start(z: PComplex, exact: Option<KRat>, prec: u32) -> Self {
        let ring = z.ring();
        CFExpansion {
            ring,
            z,
            exact,
            a: Vec::new(),
            p: vec![OKInt::zero(ring), OKInt::one(ring)],
            q: vec![OKInt::one(ring), OKInt::zero(ring)],
            eps: Vec::new(),
            terminated: false,
            prec,
        }
    }

    fn push(&mut self, a: OKInt) {
        let k = self.p.len();
        let p = &(&a * &self.p[k - 1]) + &self.p[k - 2];
        let q = &(&a * &self.q[k - 1]) + &self.q[k - 2];
        let eps = match &self.exact {
            Some(z) => KRat::from_okint(&q)
                .mul(z)
                .sub(&KRat::from_okint(&p))
                .to_pcomplex(self.prec),
            None => self.z.mul_okint(&q).sub(&PComplex::from_okint(&p, self.prec)),
        };
        self.a.push(a);
        self.p.push(p);
        self.q.push(q);
        self.eps.push(eps);
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// The expanded number at the working precision.
    pub fn z(&self) -> &PComplex {
        &self.z
    }

    pub fn exact_value(&self) -> Option<&KRat> {
        self.exact.as_ref()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Number of partial quotients `a_0..a_{len−1}`.
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn terminated(&self) -> bool {
        self.terminated
    }

    pub fn partial_quotients(&self) -> &[OKInt] {
        &self.a
    }

    pub fn a(&self, n: usize) -> &OKInt {
        &self.a[n]
    }

    fn conv_index(&self, n: i64) -> Result<usize> {
        if n < -2 || n + 2 >= self.p.len() as i64 {
            return Err(Error::IndexOutOfRange {
                index: n,
                available: format!("-2..={}", self.a.len() as i64 - 1),
            });
        }
        Ok((n + 2) as usize)
    }

    /// `p_n` for `n ≥ −2`.
    pub fn p(&self, n: i64) -> Result<&OKInt> {
        Ok(&self.p[self.conv_index(n)?])
    }

    /// `q_n` for `n ≥ −2`.
    pub fn q(&self, n: i64) -> Result<&OKInt> {
        Ok(&self.q[self.conv_index(n)?])
    }

    /// `ε_n = q_n z − p_n` for `n ≥ 0`.
    pub fn eps(&self, n: i64) -> Result<&PComplex> {
        if n < 0 || n as usize >= self.eps.len() {
            return Err(Error::IndexOutOfRange {
                index: n,
                available: format!("0..={}", self.eps.len() as i64 - 1),
            });
        }
        Ok(&self.eps[n as usize])
    }

    pub fn error_terms(&self) -> &[PComplex] {
        &self.eps
    }

    /// `q_n p_{n−1} − p_n q_{n−1}`, exact.
    pub fn determinant(&self, n: i64) -> Result<OKInt> {
        let (p, q) = (self.p(n)?, self.q(n)?);
        let (p1, q1) = (self.p(n - 1)?, self.q(n - 1)?);
        Ok(&(q * p1) - &(p * q1))
    }
}

/// Expands a ball. Fails with `PrecisionInsufficient` when a partial quotient
/// cannot be certified before `max_terms` quotients are produced.
pub fn expand(z: &PComplex, max_terms: usize) -> Result<CFExpansion> {
    assert!(max_terms >= 1);
    let prec = z.prec();
    let mut exp = CFExpansion::start(z.clone(), None, prec);
    let tiny = Dyadic::pow2(-(prec as i64) / 2);
    let mut zn = z.clone();
    while exp.len() < max_terms {
        let a = nearest_integer(&zn)?;
        let w = zn.sub(&PComplex::from_okint(&a, prec));
        exp.push(a);
        if w.contains_zero() {
            if w.err_radius() < tiny {
                exp.terminated = true;
                break;
            }
            return Err(Error::precision(format!(
                "remainder at step {} straddles zero with radius {:.3e}",
                exp.len() - 1,
                w.err_radius().to_f64()
            )));
        }
        if exp.len() == max_terms {
            break;
        }
        zn = w.recip().map_err(|_| {
            Error::precision(format!("reciprocal at step {} not certified", exp.len() - 1))
        })?;
    }
    Ok(exp)
}

/// Expands an exact element of `K`; the error terms are enclosed at `prec` bits.
pub fn expand_exact(z: &KRat, max_terms: usize, prec: u32) -> CFExpansion {
    assert!(max_terms >= 1);
    let mut exp = CFExpansion::start(z.to_pcomplex(prec), Some(z.clone()), prec);
    let mut zn = z.clone();
    while exp.len() < max_terms {
        let a = zn.nearest();
        let w = zn.sub(&KRat::from_okint(&a));
        exp.push(a);
        if w.is_zero() {
            exp.terminated = true;
            break;
        }
        zn = w.recip().expect("nonzero");
    }
    exp
}

/// Expands an evaluated input, exactly when it is exact.
pub fn expand_value(v: &Value, max_terms: usize, prec: u32) -> Result<CFExpansion> {
    match v {
        Value::Exact(k) => Ok(expand_exact(k, max_terms, prec)),
        Value::Ball(b) => expand(b, max_terms),
    }
}

/// Evaluates `expr` and expands it under the retry policy.
pub fn expand_expr(
    expr: &Expr,
    ring: Ring,
    max_terms: usize,
    policy: PrecisionPolicy,
) -> Result<CFExpansion> {
    policy.run(|prec| expand_value(&expr.eval(ring, prec)?, max_terms, prec))
}
