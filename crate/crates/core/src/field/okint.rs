//! Exact ring elements `a + b·ω`.

use super::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OKInt {
    a: BigInt,
    b: BigInt,
    ring: Ring,
}

impl fmt::Debug for OKInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for OKInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.ring == Ring::D1 { "i" } else { "w" };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}{}", self.b, w),
            (false, false) if self.b.is_negative() => write!(f, "{}-{}{}", self.a, -&self.b, w),
            (false, false) => write!(f, "{}+{}{}", self.a, self.b, w),
        }
    }
}

impl OKInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, ring: Ring) -> Self {
        OKInt {
            a: a.into(),
            b: b.into(),
            ring,
        }
    }

    pub fn from_int(n: impl Into<BigInt>, ring: Ring) -> Self {
        Self::new(n, 0, ring)
    }

    pub fn zero(ring: Ring) -> Self {
        Self::new(0, 0, ring)
    }

    pub fn one(ring: Ring) -> Self {
        Self::new(1, 0, ring)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Coefficients as `i64`; panics when they do not fit.
    pub fn coeffs_i64(&self) -> (i64, i64) {
        (
            self.a.to_i64().expect("coefficient fits in i64"),
            self.b.to_i64().expect("coefficient fits in i64"),
        )
    }

    /// `|x|² = a² + tr·ab + nm·b²`.
    pub fn norm(&self) -> BigInt {
        let tr = self.ring.trace();
        let nm = self.ring.norm_omega();
        &self.a * &self.a + &self.a * &self.b * tr + &self.b * &self.b * nm
    }

    pub fn conj(&self) -> Self {
        OKInt {
            a: &self.a + &self.b * self.ring.trace(),
            b: -&self.b,
            ring: self.ring,
        }
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        OKInt {
            a: &self.a * c,
            b: &self.b * c,
            ring: self.ring,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `(-1)^n · self`.
    pub fn signed(&self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            self.clone()
        } else {
            -self
        }
    }

    /// `self / other` when it lies in the ring.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let n = other.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &other.conj();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Some(Self::new(qa, qb, self.ring))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Total order by coefficients `(a, b)`; used for deterministic tie-breaks.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        (&self.a, &self.b).cmp(&(&other.a, &other.b))
    }

    /// `[a, b]` as decimal strings.
    pub fn coeff_strings(&self) -> [String; 2] {
        [self.a.to_string(), self.b.to_string()]
    }

    fn check(&self, other: &Self) {
        debug_assert_eq!(self.ring, other.ring, "mixed rings");
    }
}

impl Add for &OKInt {
    type Output = OKInt;
    fn add(self, o: &OKInt) -> OKInt {
        self.check(o);
        OKInt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
            ring: self.ring,
        }
    }
}

impl Sub for &OKInt {
    type Output = OKInt;
    fn sub(self, o: &OKInt) -> OKInt {
        self.check(o);
        OKInt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            ring: self.ring,
        }
    }
}

impl Mul for &OKInt {
    type Output = OKInt;
    fn mul(self, o: &OKInt) -> OKInt {
        self.check(o);
        // (a + bω)(c + dω) with ω² = tr·ω − nm
        let bd = &self.b * &o.b;
        OKInt {
            a: &self.a * &o.a - &bd * self.ring.norm_omega(),
            b: &self.a * &o.b + &self.b * &o.a + &bd * self.ring.trace(),
            ring: self.ring,
        }
    }
}

impl Neg for &OKInt {
    type Output = OKInt;
    fn neg(self) -> OKInt {
        OKInt {
            a: -&self.a,
            b: -&self.b,
            ring: self.ring,
        }
    }
}

impl Neg for OKInt {
    type Output = OKInt;
    fn neg(self) -> OKInt {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for OKInt {
            type Output = OKInt;
            fn $m(self, o: OKInt) -> OKInt {
                (&self).$m(&o)
            }
        }
        impl $tr<&OKInt> for OKInt {
            type Output = OKInt;
            fn $m(self, o: &OKInt) -> OKInt {
                (&self).$m(o)
            }
        }
        impl $tr<OKInt> for &OKInt {
            type Output = OKInt;
            fn $m(self, o: OKInt) -> OKInt {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
