//! Exact binary fractions `m · 2^e` with an arbitrary-precision mantissa.
//!
//! These carry the midpoints and radii of [`PReal`](super::PReal) balls. Every
//! operation here is exact unless its name says otherwise (`round_*`,
//! `div_*`, `sqrt_*`), and those report or bound the error they introduce.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci_string(12))
    }
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 512 {
        x *= 2f64.powi(512);
        e -= 512;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -512 {
        x *= 2f64.powi(-512);
        e += 512;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        match man.trailing_zeros() {
            None => Self::zero(),
            Some(0) => Dyadic { man, exp },
            Some(tz) => Dyadic {
                man: man >> tz,
                exp: exp + tz as i64,
            },
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    pub fn pow2(e: i64) -> Self {
        Dyadic {
            man: BigInt::one(),
            exp: e,
        }
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite f64 {x}");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Self::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + k,
        }
    }

    fn aligned(a: &Self, b: &Self) -> (BigInt, BigInt, i64) {
        let e = a.exp.min(b.exp);
        let am = &a.man << (a.exp - e) as usize;
        let bm = &b.man << (b.exp - e) as usize;
        (am, bm, e)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = Self::aligned(self, other);
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(&self.man * &other.man, self.exp + other.exp)
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        Self::new(&self.man * c, self.exp)
    }

    /// Round to `prec` significant bits, nearest with ties to even.
    /// Returns the rounded value and the exact absolute rounding error.
    pub fn round(&self, prec: u32) -> (Self, Self) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Self::zero());
        }
        let shift = bits - prec as u64;
        let mag = self.man.magnitude();
        let q = mag >> shift;
        let rem = mag - (&q << shift);
        let half = BigUint::one() << (shift - 1);
        let q = match rem.cmp(&half) {
            Ordering::Greater => q + 1u32,
            Ordering::Equal if q.is_odd() => q + 1u32,
            _ => q,
        };
        let rounded = Self::new(
            BigInt::from_biguint(self.man.sign(), q),
            self.exp + shift as i64,
        );
        let err = self.sub(&rounded).abs();
        (rounded, err)
    }

    /// Upper bound of a non-negative value with at most `bits` significant bits.
    pub fn round_up(&self, bits: u32) -> Self {
        debug_assert!(!self.is_negative());
        let b = self.man.bits();
        if b <= bits as u64 {
            return self.clone();
        }
        let shift = b - bits as u64;
        let mag = self.man.magnitude();
        let mut q = mag >> shift;
        if &(&q << shift) != mag {
            q += 1u32;
        }
        Self::new(BigInt::from(q), self.exp + shift as i64)
    }

    /// Lower bound of a non-negative value with at most `bits` significant bits.
    pub fn round_down(&self, bits: u32) -> Self {
        debug_assert!(!self.is_negative());
        let b = self.man.bits();
        if b <= bits as u64 {
            return self.clone();
        }
        let shift = b - bits as u64;
        Self::new(
            BigInt::from(self.man.magnitude() >> shift),
            self.exp + shift as i64,
        )
    }

    /// Scaled integer division setup: returns `(num, den, exp)` such that
    /// `a / b = (num / den) · 2^exp` and `num / den` has about `bits` bits.
    fn div_setup(a: &Self, b: &Self, bits: u32) -> (BigInt, BigInt, i64) {
        let s = bits as i64 + b.man.bits() as i64 - a.man.bits() as i64 + 2;
        let e = a.exp - b.exp - s;
        if s >= 0 {
            (&a.man << s as usize, b.man.clone(), e)
        } else {
            (a.man.clone(), &b.man << (-s) as usize, e)
        }
    }

    /// `a / b` to `prec` bits; returns the quotient and an upper bound on its error.
    pub fn div_round(a: &Self, b: &Self, prec: u32) -> (Self, Self) {
        assert!(!b.is_zero(), "division by exact zero");
        if a.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let (num, den, e) = Self::div_setup(a, b, prec);
        let (q, r) = num.div_rem(&den);
        let q = Self::new(q, e);
        let trunc_err = if r.is_zero() {
            Self::zero()
        } else {
            Self::pow2(e)
        };
        let (q, round_err) = q.round(prec);
        (q, trunc_err.add(&round_err))
    }

    /// Upper bound on `a / b` for `a >= 0`, `b > 0`.
    pub fn div_up(a: &Self, b: &Self, bits: u32) -> Self {
        debug_assert!(!a.is_negative() && b.sign() == Sign::Plus);
        if a.is_zero() {
            return Self::zero();
        }
        let (num, den, e) = Self::div_setup(a, b, bits);
        let (q, r) = num.div_rem(&den);
        let q = if r.is_zero() { q } else { q + 1 };
        Self::new(q, e).round_up(bits)
    }

    /// Lower bound on `a / b` for `a >= 0`, `b > 0`.
    pub fn div_down(a: &Self, b: &Self, bits: u32) -> Self {
        debug_assert!(!a.is_negative() && b.sign() == Sign::Plus);
        if a.is_zero() {
            return Self::zero();
        }
        let (num, den, e) = Self::div_setup(a, b, bits);
        Self::new(num / den, e).round_down(bits)
    }

    /// Lower bound on `sqrt(self)` with roughly `prec` bits, and whether it is exact.
    pub fn sqrt_floor(&self, prec: u32) -> (Self, bool) {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return (Self::zero(), true);
        }
        let par = self.exp.rem_euclid(2);
        let s = (prec as i64 + 2 - self.man.bits() as i64 / 2).max(0);
        let scaled = &self.man << (2 * s + par) as usize;
        let root = scaled.sqrt();
        let exact = &root * &root == scaled;
        (Self::new(root, (self.exp - par) / 2 - s), exact)
    }

    /// Upper bound on `sqrt(self)`.
    pub fn sqrt_up(&self, prec: u32) -> Self {
        let (lo, exact) = self.sqrt_floor(prec);
        if exact {
            return lo;
        }
        let par = self.exp.rem_euclid(2);
        let s = (prec as i64 + 2 - self.man.bits() as i64 / 2).max(0);
        lo.add(&Self::pow2((self.exp - par) / 2 - s))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.man.bits();
        let (top, shift) = if b > 64 {
            (&self.man >> (b - 64) as usize, (b - 64) as i64)
        } else {
            (self.man.clone(), 0)
        };
        let t: i128 = top.try_into().expect("64-bit mantissa");
        ldexp(t as f64, self.exp + shift)
    }

    /// `log2 |self|` without overflow; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let b = self.man.bits();
        let (top, shift) = if b > 60 {
            (self.man.magnitude() >> (b - 60), (b - 60) as i64)
        } else {
            (self.man.magnitude().clone(), 0)
        };
        let t: u64 = top.try_into().expect("60-bit mantissa");
        (t as f64).log2() + (self.exp + shift) as f64
    }

    /// Nearest integer (ties to even).
    pub fn round_to_int(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.man << self.exp as usize;
        }
        let shift = (-self.exp) as u64;
        if self.man.bits() + 1 < shift {
            return BigInt::zero();
        }
        let mag = self.man.magnitude();
        let q = mag >> shift;
        let rem = mag - (&q << shift);
        let half = BigUint::one() << (shift - 1);
        let q = match rem.cmp(&half) {
            Ordering::Greater => q + 1u32,
            Ordering::Equal if q.is_odd() => q + 1u32,
            _ => q,
        };
        BigInt::from_biguint(self.man.sign(), q)
    }

    /// Decimal scientific notation with `digits` significant digits,
    /// rounded half-to-even from the exact binary value.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return format!("{}e0", fixed_zero(digits));
        }
        let neg = self.is_negative();
        let (num, den) = if self.exp >= 0 {
            (BigInt::from(self.man.magnitude().clone()) << self.exp as usize, BigInt::one())
        } else {
            (
                BigInt::from(self.man.magnitude().clone()),
                BigInt::one() << (-self.exp) as usize,
            )
        };
        let mut e10 = (self.log2_abs() * std::f64::consts::LOG10_2).floor() as i64;
        let lo = num_traits::pow(BigInt::from(10), digits - 1);
        let hi = &lo * 10;
        let q = loop {
            let k = digits as i64 - 1 - e10;
            let (n, d) = if k >= 0 {
                (&num * num_traits::pow(BigInt::from(10), k as usize), den.clone())
            } else {
                (num.clone(), &den * num_traits::pow(BigInt::from(10), (-k) as usize))
            };
            let (mut q, r) = n.div_rem(&d);
            let twice = &r * 2;
            if twice > d || (twice == d && q.is_odd()) {
                q += 1;
            }
            if q >= hi {
                e10 += 1;
            } else if q < lo {
                e10 -= 1;
            } else {
                break q;
            }
        };
        let s = q.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if neg { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

fn fixed_zero(digits: usize) -> String {
    if digits == 1 {
        "0".to_string()
    } else {
        format!("0.{}", "0".repeat(digits - 1))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.man.sign(), other.man.sign()) {
            (a, b) if a != b => {
                let rank = |s: Sign| match s {
                    Sign::Minus => 0,
                    Sign::NoSign => 1,
                    Sign::Plus => 2,
                };
                rank(a).cmp(&rank(b))
            }
            (Sign::NoSign, _) => Ordering::Equal,
            _ => {
                // Same sign: compare magnitudes by leading-bit position first.
                let top_a = self.man.bits() as i64 + self.exp;
                let top_b = other.man.bits() as i64 + other.exp;
                let mag = if top_a != top_b {
                    top_a.cmp(&top_b)
                } else {
                    let (a, b, _) = Self::aligned(&self.abs(), &other.abs());
                    a.cmp(&b)
                };
                if self.is_negative() {
                    mag.reverse()
                } else {
                    mag
                }
            }
        }
    }
}
