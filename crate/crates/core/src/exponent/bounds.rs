//! Closed-form exponent bounds, evaluated in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn clamp01(x: BigRational) -> BigRational {
    if x.is_negative() {
        BigRational::zero()
    } else if x > BigRational::one() {
        BigRational::one()
    } else {
        x
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OriginBounds {
    pub mu: BigRational,
    pub mu_hat_lower: BigRational,
    pub mu_hat_upper: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IrrationalBounds {
    /// `(1 + 4ω − 3ω^r1) / (3ω(ω^(r1−1) + 1))`
    pub mu_lower: BigRational,
    /// `((2 − ω^(r1−1))ω_y + 1) / ((2ω_y + 1)(ω + ω^r1))`
    pub mu_hat_lower: BigRational,
    /// Generic upper bound `1/2`.
    pub mu_upper: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalBounds {
    /// `1/(ω^(r1−1) + 1)`
    pub mu_lower: BigRational,
    /// `1/(ω^r1 + 1)`
    pub mu_hat_lower: BigRational,
    /// `ω/(ω + 1)`
    pub mu_upper: BigRational,
}

/// Regimes where the derivations behind the bounds stop applying.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundFlags {
    /// `ω >= 3`
    pub omega_ge_3: bool,
    /// `1/(3ω) + 4/3 − ω^(r1−1) <= 0`
    pub error_exponent_nonpositive: bool,
    /// `τ >= 1`
    pub tau_ge_1: bool,
    /// A lower bound came out negative and was clamped to 0.
    pub clamped: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PredictedBounds {
    pub omega_xi: BigRational,
    pub omega_y: BigRational,
    pub r1: u32,
    pub origin: OriginBounds,
    pub irrational: IrrationalBounds,
    pub rational: RationalBounds,
    /// `ω_y/(2ω_y + 1)·ω^(r1−1)`
    pub tau: BigRational,
    pub flags: BoundFlags,
}

impl PredictedBounds {
    /// `(name, value)` pairs in a fixed order, as `f64`.
    pub fn rows(&self) -> Vec<(&'static str, f64)> {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        vec![
            ("origin.mu", f(&self.origin.mu)),
            ("origin.mu_hat_lower", f(&self.origin.mu_hat_lower)),
            ("origin.mu_hat_upper", f(&self.origin.mu_hat_upper)),
            ("irrational.mu_lower", f(&self.irrational.mu_lower)),
            ("irrational.mu_hat_lower", f(&self.irrational.mu_hat_lower)),
            ("irrational.mu_upper", f(&self.irrational.mu_upper)),
            ("rational.mu_lower", f(&self.rational.mu_lower)),
            ("rational.mu_hat_lower", f(&self.rational.mu_hat_lower)),
            ("rational.mu_upper", f(&self.rational.mu_upper)),
            ("tau", f(&self.tau)),
        ]
    }
}

/// Converts a float exactly (every finite `f64` is a dyadic rational).
pub fn exact_ratio(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite")
}

/// Evaluates every bound at `ω_ξ = omega_xi`, `ω_y = omega_y` and the
/// ring's `r1`. Both measures must be at least 1.
pub fn predicted_bounds(omega_xi: &BigRational, omega_y: &BigRational, r1: u32) -> PredictedBounds {
    assert!(r1 >= 1, "r1 must be positive");
    let one = BigRational::one();
    assert!(omega_xi >= &one && omega_y >= &one, "measures must be at least 1");
    let w = omega_xi;
    let wy = omega_y;
    let w_r1m1 = num_traits::pow(w.clone(), r1 as usize - 1);
    let w_r1 = &w_r1m1 * w;
    let mut flags = BoundFlags {
        omega_ge_3: w >= &q(3),
        error_exponent_nonpositive: (q(1) / (q(3) * w)) + q(4) / q(3) - &w_r1m1 <= BigRational::zero(),
        ..Default::default()
    };

    let origin = OriginBounds {
        mu: one.clone(),
        mu_hat_lower: one.clone() / w,
        mu_hat_upper: one.clone(),
    };

    let irr_mu = (q(1) + q(4) * w - q(3) * &w_r1) / (q(3) * w * (&w_r1m1 + q(1)));
    let irr_hat = ((q(2) - &w_r1m1) * wy + q(1)) / ((q(2) * wy + q(1)) * (w + &w_r1));
    flags.clamped = irr_mu.is_negative() || irr_hat.is_negative();
    let irrational = IrrationalBounds {
        mu_lower: clamp01(irr_mu),
        mu_hat_lower: clamp01(irr_hat),
        mu_upper: q(1) / q(2),
    };

    let rational = RationalBounds {
        mu_lower: one.clone() / (&w_r1m1 + q(1)),
        mu_hat_lower: one.clone() / (&w_r1 + q(1)),
        mu_upper: w / (w + q(1)),
    };

    let tau = wy / (q(2) * wy + q(1)) * &w_r1m1;
    flags.tau_ge_1 = tau >= one;

    PredictedBounds {
        omega_xi: w.clone(),
        omega_y: wy.clone(),
        r1,
        origin,
        irrational,
        rational,
        tau,
        flags,
    }
}
