//! Real ball arithmetic: a dyadic midpoint plus a dyadic radius.
//!
//! Every operation returns a ball that contains all results of applying the
//! operation to points of the input balls. Midpoints are rounded to the
//! working precision and the rounding error is folded into the radius.
//! Radii are kept to [`RAD_BITS`] significant bits, always rounded upward.

use super::dyadic::Dyadic;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Signed;
use std::cmp::Ordering;
use std::fmt;

pub const RAD_BITS: u32 = 30;

#[derive(Clone, PartialEq, Eq)]
pub struct PReal {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

impl fmt::Debug for PReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ± {:?}", self.mid, self.rad)
    }
}

impl PReal {
    pub fn exact(mid: Dyadic, prec: u32) -> Self {
        let (mid, err) = mid.round(prec);
        PReal {
            mid,
            rad: err.round_up(RAD_BITS),
            prec,
        }
    }

    pub fn with_radius(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        assert!(!rad.is_negative());
        let (mid, err) = mid.round(prec);
        PReal {
            mid,
            rad: rad.add(&err).round_up(RAD_BITS),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::exact(Dyadic::one(), prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        Self::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Self::exact(Dyadic::from_f64(x), prec)
    }

    /// Ball around `num / den`.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, prec: u32) -> Result<Self> {
        Self::from_int(num, prec).div(&Self::from_int(den, prec))
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::with_radius(self.mid.clone(), self.rad.clone(), prec)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag_upper(&self) -> Dyadic {
        self.mid.abs().add(&self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball contains zero).
    pub fn mag_lower(&self) -> Dyadic {
        let m = self.mid.abs().sub(&self.rad);
        if m.is_negative() {
            Dyadic::zero()
        } else {
            m
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.mid.sub(x).abs() <= self.rad
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.mid.sub(&other.mid).abs() <= self.rad.add(&other.rad)
    }

    /// Certified comparison: `Some(Equal)` only for identical exact values.
    pub fn cmp_certified(&self, other: &Self) -> Option<Ordering> {
        if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else if self.lower() > other.upper() {
            Some(Ordering::Greater)
        } else if self.is_exact() && other.is_exact() && self.mid == other.mid {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `true` when every point of `self` is `<=` every point of `other`.
    pub fn certainly_le(&self, other: &Self) -> bool {
        self.upper() <= other.lower()
    }

    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.upper() < other.lower()
    }

    fn finish(mid_exact: Dyadic, rad: Dyadic, prec: u32) -> Self {
        let (mid, err) = mid_exact.round(prec);
        PReal {
            mid,
            rad: rad.add(&err).round_up(RAD_BITS),
            prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        Self::finish(self.mid.add(&other.mid), self.rad.add(&other.rad), prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        Self::finish(self.mid.sub(&other.mid), self.rad.add(&other.rad), prec)
    }

    pub fn neg(&self) -> Self {
        PReal {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        if self.contains_zero() {
            // [0, max(|lo|, |hi|)] as a ball
            let hi = self.mag_upper();
            let half = hi.mul_pow2(-1);
            return PReal {
                mid: half.clone(),
                rad: half.round_up(RAD_BITS),
                prec: self.prec,
            };
        }
        PReal {
            mid: self.mid.abs(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let rad = self
            .mid
            .abs()
            .mul(&other.rad)
            .add(&other.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        Self::finish(self.mid.mul(&other.mid), rad, prec)
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        Self::finish(
            self.mid.mul_int(c),
            self.rad.mul_int(&c.abs()),
            self.prec,
        )
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        PReal {
            mid: self.mid.mul_pow2(k),
            rad: self.rad.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::near_zero("real division"));
        }
        let prec = self.prec.max(other.prec);
        let (q, qerr) = Dyadic::div_round(&self.mid, &other.mid, prec);
        let bm = other.mid.abs();
        let num = self.rad.mul(&bm).add(&self.mid.abs().mul(&other.rad));
        let den = bm.mul(&bm.sub(&other.rad));
        let prop = Dyadic::div_up(&num.round_up(RAD_BITS + 2), &den.round_down(RAD_BITS + 2), RAD_BITS);
        Ok(PReal {
            mid: q,
            rad: prop.add(&qerr).round_up(RAD_BITS),
            prec,
        })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.prec).div(self)
    }

    /// Square root; the ball must lie in `[0, ∞)`.
    pub fn sqrt(&self) -> Result<Self> {
        if self.upper().is_negative() {
            return Err(Error::Domain("square root of a negative value".into()));
        }
        let lo = self.lower();
        if lo.is_negative() {
            // Ball straddles zero: sqrt lies in [0, sqrt(upper)].
            let hi = self.upper().sqrt_up(RAD_BITS + 4);
            let half = hi.mul_pow2(-1);
            return Ok(PReal {
                mid: half.clone(),
                rad: half.round_up(RAD_BITS),
                prec: self.prec,
            });
        }
        let (root, exact) = self.mid.sqrt_floor(self.prec + 4);
        let root_err = if exact {
            Dyadic::zero()
        } else {
            self.mid.sqrt_up(self.prec + 4).sub(&root)
        };
        let prop = if self.rad.is_zero() {
            Dyadic::zero()
        } else if self.mid.is_zero() {
            self.rad.sqrt_up(RAD_BITS)
        } else {
            // |sqrt(x) - sqrt(m)| <= r / sqrt(m)
            let s = self.mid.sqrt_floor(RAD_BITS + 4).0;
            Dyadic::div_up(&self.rad, &s, RAD_BITS)
        };
        Ok(Self::finish(root, root_err.add(&prop), self.prec))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            n >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// `log2` of the midpoint magnitude.
    pub fn log2_mid(&self) -> f64 {
        self.mid.log2_abs()
    }

    /// `pi` via Machin's formula in fixed point, with a rigorous truncation bound.
    pub fn pi(prec: u32) -> Self {
        let guard = 32u32;
        let scale_bits = prec + guard;
        let one = BigInt::from(1) << scale_bits as usize;
        let atan_inv = |k: u32| -> (BigInt, u64) {
            // sum_{n>=0} (-1)^n / ((2n+1) k^(2n+1)), each term truncated: error < 1 ulp each
            let k2 = BigInt::from(k) * k;
            let mut power = &one / k;
            let mut sum = BigInt::from(0);
            let mut n: u64 = 0;
            loop {
                let term = &power / (2 * n + 1);
                if term == BigInt::from(0) {
                    break;
                }
                if n.is_multiple_of(2) {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &k2;
                n += 1;
            }
            // two floors per term plus the alternating tail
            (sum, 2 * n + 4)
        };
        let (a5, e5) = atan_inv(5);
        let (a239, e239) = atan_inv(239);
        let total = a5 * 16 - a239 * 4;
        let err_ulps = 16 * e5 + 4 * e239;
        let mid = Dyadic::new(total, -(scale_bits as i64));
        let rad = Dyadic::new(BigInt::from(err_ulps), -(scale_bits as i64));
        Self::with_radius(mid, rad, prec)
    }

    pub fn to_sci_string(&self, digits: usize) -> String {
        self.mid.to_sci_string(digits)
    }
}
