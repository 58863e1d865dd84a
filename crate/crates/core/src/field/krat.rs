//! Exact elements of the fraction field `K`, in the basis `{1, ω}`.

use super::okint::OKInt;
use super::pcomplex::PComplex;
use super::preal::PReal;
use super::ring::Ring;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KRat {
    x: BigRational,
    y: BigRational,
    ring: Ring,
}

impl fmt::Debug for KRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})w [d={}]", self.x, self.y, self.ring)
    }
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

impl KRat {
    pub fn new(x: BigRational, y: BigRational, ring: Ring) -> Self {
        KRat { x, y, ring }
    }

    pub fn zero(ring: Ring) -> Self {
        Self::new(BigRational::zero(), BigRational::zero(), ring)
    }

    pub fn from_okint(v: &OKInt) -> Self {
        Self::new(rat(v.a()), rat(v.b()), v.ring())
    }

    pub fn from_rational(x: BigRational, ring: Ring) -> Self {
        Self::new(x, BigRational::zero(), ring)
    }

    /// `p / q`.
    pub fn from_ratio(p: &OKInt, q: &OKInt) -> Result<Self> {
        Self::from_okint(p).div(&Self::from_okint(q))
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// The element as an `OKInt`, if both coordinates are integers.
    pub fn to_okint(&self) -> Option<OKInt> {
        if self.x.is_integer() && self.y.is_integer() {
            Some(OKInt::new(self.x.to_integer(), self.y.to_integer(), self.ring))
        } else {
            None
        }
    }

    pub fn norm(&self) -> BigRational {
        let tr = rat(&BigInt::from(self.ring.trace()));
        let nm = rat(&BigInt::from(self.ring.norm_omega()));
        &self.x * &self.x + &tr * &self.x * &self.y + nm * &self.y * &self.y
    }

    pub fn conj(&self) -> Self {
        let tr = rat(&BigInt::from(self.ring.trace()));
        Self::new(&self.x + tr * &self.y, -&self.y, self.ring)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.x + &o.x, &self.y + &o.y, self.ring)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.x - &o.x, &self.y - &o.y, self.ring)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.x, -&self.y, self.ring)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let tr = rat(&BigInt::from(self.ring.trace()));
        let nm = rat(&BigInt::from(self.ring.norm_omega()));
        let yy = &self.y * &o.y;
        Self::new(
            &self.x * &o.x - nm * &yy,
            &self.x * &o.y + &self.y * &o.x + tr * yy,
            self.ring,
        )
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        let c = self.conj();
        Ok(Self::new(&c.x / &n, &c.y / &n, self.ring))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn to_pcomplex(&self, prec: u32) -> PComplex {
        let conv = |r: &BigRational| {
            PReal::from_ratio(r.numer().clone(), r.denom().clone(), prec).expect("denominator nonzero")
        };
        PComplex::from_basis(conv(&self.x), conv(&self.y), self.ring)
    }

    /// Nearest ring element; equidistant candidates resolve to the
    /// lexicographically smallest `(a, b)`.
    pub fn nearest(&self) -> OKInt {
        let a0 = self.x.round().to_integer();
        let b0 = self.y.round().to_integer();
        let mut best: Option<(BigRational, OKInt)> = None;
        for db in -2i64..=2 {
            for da in -2i64..=2 {
                let c = OKInt::new(&a0 + da, &b0 + db, self.ring);
                let dist = self.sub(&KRat::from_okint(&c)).norm();
                let better = match &best {
                    None => true,
                    Some((bd, bc)) => match dist.cmp(bd) {
                        Ordering::Less => true,
                        Ordering::Equal => c.lex_cmp(bc) == Ordering::Less,
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((dist, c));
                }
            }
        }
        best.expect("nonempty candidate set").1
    }

    pub fn is_negative_real(&self) -> bool {
        self.y.is_zero() && self.x.is_negative()
    }
}
