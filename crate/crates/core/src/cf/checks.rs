//! Growth hypotheses and error bounds, checked on a computed expansion.

use super::constants::CFConstants;
use super::CFExpansion;
use crate::error::Result;
use crate::field::{KRat, OKInt, PReal, Ring, Theta};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub ring: Ring,
    /// Lag used for the ratio test (the declared `r0`, or 2 when none is declared).
    pub r0: u32,
    pub theta: Option<Theta>,
    /// First `n ≥ 1` with `|q_n| <= |q_{n−1}|`.
    pub monotone_violation: Option<usize>,
    /// Minimum of `|q_n| / |q_{n−r0}|` over `n ≥ r0 − 1` with `q_{n−r0} ≠ 0`.
    pub min_ratio: f64,
    /// Indices `n` where `|q_n| >= θ·|q_{n−r0}|` fails (exact comparison).
    pub ratio_violations: Vec<usize>,
    /// Indices `i ≥ 1` with `|a_i| <= 1`.
    pub small_quotients: Vec<usize>,
}

impl HypothesisReport {
    /// `None` when the ring has no declared `θ`.
    pub fn theta_pass(&self) -> Option<bool> {
        self.theta.map(|_| self.ratio_violations.is_empty())
    }

    pub fn monotone_pass(&self) -> bool {
        self.monotone_violation.is_none()
    }
}

fn ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    BigRational::new(num.clone(), den.clone())
        .to_f64()
        .unwrap_or(f64::INFINITY)
}

pub fn check_hypothesis(exp: &CFExpansion) -> HypothesisReport {
    let ring = exp.ring();
    let growth = ring.growth();
    let r0 = growth.map_or(2, |g| g.r0) as i64;
    let n_max = exp.len() as i64 - 1;
    let norm = |n: i64| exp.q(n).expect("in range").norm();

    let monotone_violation = (1..=n_max)
        .find(|&n| norm(n) <= norm(n - 1))
        .map(|n| n as usize);

    let mut min_ratio = f64::INFINITY;
    let mut ratio_violations = Vec::new();
    for n in (r0 - 1).max(0)..=n_max {
        let (big, small) = (norm(n), norm(n - r0));
        if small == BigInt::from(0) {
            continue;
        }
        min_ratio = min_ratio.min(ratio_f64(&big, &small).sqrt());
        if let Some(g) = growth {
            if !g.theta.ratio_holds(&big, &small) {
                ratio_violations.push(n as usize);
            }
        }
    }

    let one = BigInt::from(1);
    let small_quotients = (1..exp.len())
        .filter(|&i| exp.a(i).norm() <= one)
        .collect();

    HypothesisReport {
        ring,
        r0: r0 as u32,
        theta: growth.map(|g| g.theta),
        monotone_violation,
        min_ratio,
        ratio_violations,
        small_quotients,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SandwichStatus {
    Checked,
    /// The expansion terminated: the input lies in `K`.
    RationalInput,
    /// The ring has no declared growth constants.
    NoConstants,
}

#[derive(Clone, Debug)]
pub struct SandwichRow {
    pub n: usize,
    pub in_tail: bool,
    /// `|ε_n|·|q_{n+1}| <= C1`, certified.
    pub upper_ok: bool,
    /// `C1 / (|ε_n|·|q_{n+1}|)`; at least 1 when the bound holds.
    pub upper_margin: f64,
    /// `C2 / |q_{n+1}|^e <= |ε_n|` with `e = ω^(r1−1)`.
    pub lower_ok: bool,
    /// `log2|ε_n| − (log2 C2 − e·log2|q_{n+1}|)`; non-negative when the bound holds.
    pub lower_log2_margin: f64,
}

#[derive(Clone, Debug)]
pub struct SandwichReport {
    pub status: SandwichStatus,
    pub omega: f64,
    pub exponent: f64,
    pub tail_start: usize,
    pub rows: Vec<SandwichRow>,
}

impl SandwichReport {
    pub fn tail_upper_pass(&self) -> bool {
        self.rows.iter().filter(|r| r.in_tail).all(|r| r.upper_ok)
    }

    pub fn tail_lower_pass(&self) -> bool {
        self.rows.iter().filter(|r| r.in_tail).all(|r| r.lower_ok)
    }

    pub fn tail_pass(&self) -> bool {
        self.status == SandwichStatus::Checked && self.tail_upper_pass() && self.tail_lower_pass()
    }

    /// Indices before the tail where either inequality fails (informational).
    pub fn early_failures(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| !r.in_tail && !(r.upper_ok && r.lower_ok))
            .map(|r| r.n)
            .collect()
    }
}

/// `C2/|q_{n+1}|^(ω^(r1−1)) <= |ε_n| <= C1/|q_{n+1}|` for every `n` with
/// `q_{n+1}` available; rows with `n >= tail_start` form the tail window.
pub fn error_sandwich_check(
    exp: &CFExpansion,
    constants: Option<&CFConstants>,
    omega: f64,
    tail_start: usize,
) -> SandwichReport {
    assert!(omega > 1.0, "omega must exceed 1");
    let mut report = SandwichReport {
        status: SandwichStatus::Checked,
        omega,
        exponent: f64::NAN,
        tail_start,
        rows: Vec::new(),
    };
    let Some(c) = constants else {
        report.status = SandwichStatus::NoConstants;
        return report;
    };
    if exp.terminated() {
        report.status = SandwichStatus::RationalInput;
        return report;
    }
    let e = omega.powi(c.r1 as i32 - 1);
    report.exponent = e;
    let log2_c2 = c.c2_f64().log2();
    let prec = exp.prec();
    for n in 0..exp.len().saturating_sub(1) {
        let eps = exp.eps(n as i64).expect("in range").abs();
        let q_next = PReal::from_int(exp.q(n as i64 + 1).expect("in range").norm(), prec)
            .sqrt()
            .expect("norm >= 0");
        let prod = eps.mul(&q_next);
        let upper_ok = prod.certainly_le(&c.c1);
        let upper_margin = c.c1_f64() / prod.to_f64();
        let lower_log2_margin = eps.log2_mid() - (log2_c2 - e * q_next.log2_mid());
        report.rows.push(SandwichRow {
            n,
            in_tail: n >= tail_start,
            upper_ok,
            upper_margin,
            lower_ok: lower_log2_margin >= 0.0 && !eps.contains_zero(),
            lower_log2_margin,
        });
    }
    report
}

/// Value of the finite continued fraction `[a_0; a_1, …, a_n]`.
pub fn reconstruct(a: &[OKInt]) -> Result<KRat> {
    let mut it = a.iter().rev();
    let mut v = KRat::from_okint(it.next().expect("nonempty"));
    for x in it {
        v = KRat::from_okint(x).add(&v.recip()?);
    }
    Ok(v)
}

/// `p_n/q_n ≠ p_{n+r}/q_{n+r}` for every available `n`, by cross-multiplication.
pub fn distinct_convergents(exp: &CFExpansion, r: usize) -> bool {
    let len = exp.len() as i64;
    (0..len - r as i64).all(|n| {
        let m = n + r as i64;
        let lhs = exp.p(n).unwrap() * exp.q(m).unwrap();
        let rhs = exp.p(m).unwrap() * exp.q(n).unwrap();
        lhs != rhs
    })
}
