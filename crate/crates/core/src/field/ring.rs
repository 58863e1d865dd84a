//! The four imaginary quadratic rings with covering radius below one.
//!
//! Elements are written `a + b·ω` where `ω² = tr·ω − nm`:
//!
//! | d  | ω                 | tr | nm |
//! |----|-------------------|----|----|
//! | 1  | i                 | 0  | 1  |
//! | 3  | ζ = (−1+√−3)/2    | −1 | 1  |
//! | 7  | (1+√−7)/2         | 1  | 2  |
//! | 11 | (1+√−11)/2        | 1  | 3  |
//!
//! so the norm form is `a² + tr·ab + nm·b²`.

use super::okint::OKInt;
use super::preal::PReal;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    D1,
    D3,
    D7,
    D11,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d())
    }
}

/// Growth ratio of convergent denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theta {
    /// `(1 + √5) / 2`
    Golden,
    /// `num / den`
    Rational(i64, i64),
}

impl Theta {
    pub fn to_f64(self) -> f64 {
        match self {
            Theta::Golden => (1.0 + 5f64.sqrt()) / 2.0,
            Theta::Rational(p, q) => p as f64 / q as f64,
        }
    }

    pub fn to_preal(self, prec: u32) -> PReal {
        match self {
            Theta::Golden => PReal::from_int(5, prec)
                .sqrt()
                .expect("sqrt 5")
                .add(&PReal::one(prec))
                .mul_pow2(-1),
            Theta::Rational(p, q) => PReal::from_ratio(p, q, prec).expect("nonzero denominator"),
        }
    }

    /// Exact test of `|big| >= θ·|small|` given the two norms `|big|²`, `|small|²`.
    pub fn ratio_holds(self, norm_big: &BigInt, norm_small: &BigInt) -> bool {
        match self {
            Theta::Golden => {
                // θ² = (3+√5)/2, so nb >= θ² ns  <=>  2nb − 3ns >= √5·ns
                let l: BigInt = norm_big * 2 - norm_small * 3;
                if l.sign() == num_bigint::Sign::Minus {
                    return false;
                }
                &l * &l >= norm_small * norm_small * 5
            }
            Theta::Rational(p, q) => norm_big * (q * q) >= norm_small * (p * p),
        }
    }
}

/// Declared denominator growth: `|q_{n+r0}| >= θ·|q_n|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Growth {
    pub theta: Theta,
    pub r0: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    pub ring: Ring,
    pub d: u32,
    pub trace: i64,
    pub norm_omega: i64,
    /// `4·nm − tr²`; `Im ω = √disc / 2`.
    pub disc: i64,
    /// Only d = 1 and d = 3 come with proven growth constants.
    pub growth: Option<Growth>,
    /// Square of the covering radius of the lattice `O_K ⊂ ℂ`.
    pub cover_radius_sq: BigRational,
}

impl Ring {
    pub const ALL: [Ring; 4] = [Ring::D1, Ring::D3, Ring::D7, Ring::D11];

    pub fn from_d(d: u32) -> Result<Ring> {
        match d {
            1 => Ok(Ring::D1),
            3 => Ok(Ring::D3),
            7 => Ok(Ring::D7),
            11 => Ok(Ring::D11),
            _ => Err(Error::UnsupportedRing(d)),
        }
    }

    pub fn d(self) -> u32 {
        match self {
            Ring::D1 => 1,
            Ring::D3 => 3,
            Ring::D7 => 7,
            Ring::D11 => 11,
        }
    }

    pub fn trace(self) -> i64 {
        match self {
            Ring::D1 => 0,
            Ring::D3 => -1,
            Ring::D7 | Ring::D11 => 1,
        }
    }

    pub fn norm_omega(self) -> i64 {
        match self {
            Ring::D1 | Ring::D3 => 1,
            Ring::D7 => 2,
            Ring::D11 => 3,
        }
    }

    pub fn disc(self) -> i64 {
        4 * self.norm_omega() - self.trace() * self.trace()
    }

    pub fn growth(self) -> Option<Growth> {
        match self {
            Ring::D1 => Some(Growth {
                theta: Theta::Golden,
                r0: 2,
            }),
            Ring::D3 => Some(Growth {
                theta: Theta::Rational(4, 3),
                r0: 2,
            }),
            Ring::D7 | Ring::D11 => None,
        }
    }

    /// Circumradius² of the acute Delaunay triangle `0, 1, w`, with `w = ω`
    /// or `ω + 1` whichever has non-negative real part.
    pub fn cover_radius_sq(self) -> BigRational {
        let (tr, nm) = (self.trace(), self.norm_omega());
        // w = ω + shift; N(w) and N(1 − w) from the norm form
        let shift = if tr < 0 { 1 } else { 0 };
        let norm = |a: i64, b: i64| a * a + tr * a * b + nm * b * b;
        let nw = norm(shift, 1);
        let n1w = norm(1 - shift, -1);
        BigRational::new(BigInt::from(nw * n1w), BigInt::from(self.disc()))
    }

    pub fn cover_radius_f64(self) -> f64 {
        self.cover_radius_sq().to_f64().expect("finite").sqrt()
    }

    pub fn spec(self) -> RingSpec {
        RingSpec {
            ring: self,
            d: self.d(),
            trace: self.trace(),
            norm_omega: self.norm_omega(),
            disc: self.disc(),
            growth: self.growth(),
            cover_radius_sq: self.cover_radius_sq(),
        }
    }

    pub fn omega(self) -> OKInt {
        OKInt::new(0, 1, self)
    }

    /// Norm-one elements, found by scanning the small box that contains them.
    pub fn units(self) -> Vec<OKInt> {
        let mut out = Vec::new();
        for b in -2i64..=2 {
            for a in -2i64..=2 {
                let x = OKInt::new(a, b, self);
                if x.norm() == BigInt::from(1) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// `√disc` as a ball.
    pub fn sqrt_disc(self, prec: u32) -> PReal {
        match self {
            Ring::D1 => PReal::from_int(2, prec),
            _ => PReal::from_int(self.disc(), prec).sqrt().expect("positive"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants_match_d() {
        for r in Ring::ALL {
            let expect = if r == Ring::D1 { 4 } else { r.d() as i64 };
            assert_eq!(r.disc(), expect);
        }
    }

    #[test]
    fn cover_radii() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(Ring::D1.cover_radius_sq(), q(1, 2));
        assert_eq!(Ring::D3.cover_radius_sq(), q(1, 3));
        assert_eq!(Ring::D7.cover_radius_sq(), q(4, 7));
        assert_eq!(Ring::D11.cover_radius_sq(), q(9, 11));
        for r in Ring::ALL {
            assert!(r.cover_radius_sq() < q(1, 1));
        }
    }

    #[test]
    fn cover_radius_matches_sampled_maximum() {
        // Farthest point from the lattice over a fine grid of one fundamental cell.
        for r in Ring::ALL {
            let (tr, nm) = (r.trace() as f64, r.norm_omega() as f64);
            let mut worst: f64 = 0.0;
            // divisible by 2, 3, 7 and 11 so the grid hits every circumcentre
            let steps = 462;
            for i in 0..=steps {
                for j in 0..=steps {
                    let x = i as f64 / steps as f64;
                    let y = j as f64 / steps as f64;
                    let mut best = f64::MAX;
                    for a in -1..=2 {
                        for b in -1..=2 {
                            let (u, v) = (x - a as f64, y - b as f64);
                            best = best.min(u * u + tr * u * v + nm * v * v);
                        }
                    }
                    worst = worst.max(best);
                }
            }
            let exact = r.cover_radius_sq();
            let exact = exact.numer().to_f64().unwrap() / exact.denom().to_f64().unwrap();
            assert!(worst <= exact + 1e-12, "d={} sampled {worst} > {exact}", r.d());
            assert!(worst > exact - 1e-9, "d={} sampled {worst} << {exact}", r.d());
        }
    }

    #[test]
    fn unit_counts() {
        assert_eq!(Ring::D1.units().len(), 4);
        assert_eq!(Ring::D3.units().len(), 6);
        assert_eq!(Ring::D7.units().len(), 2);
        assert_eq!(Ring::D11.units().len(), 2);
        let d7: Vec<_> = Ring::D7.units().iter().map(|u| u.coeffs_i64()).collect();
        assert_eq!(d7, vec![(-1, 0), (1, 0)]);
    }

    #[test]
    fn golden_ratio_test_is_exact() {
        // 1² vs θ²·... : Fibonacci norms F_{n+1}² >= θ² F_{n-1}² fails, F_{n+2}² >= θ² F_n² holds
        let th = Theta::Golden;
        assert!(th.ratio_holds(&BigInt::from(4), &BigInt::from(1)));
        assert!(!th.ratio_holds(&BigInt::from(2), &BigInt::from(1)));
        // 21² / 13² = 2.6095 < θ² = 2.618
        assert!(!th.ratio_holds(&BigInt::from(441), &BigInt::from(169)));
        assert!(th.ratio_holds(&BigInt::from(7), &BigInt::from(2)));
        assert!(Theta::Rational(4, 3).ratio_holds(&BigInt::from(16), &BigInt::from(9)));
        assert!(!Theta::Rational(4, 3).ratio_holds(&BigInt::from(15), &BigInt::from(9)));
    }
}
