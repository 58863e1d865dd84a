//! Complex balls stored in the ring basis: `x + y·ω` with real balls `x`, `y`.
//!
//! Keeping basis coordinates means ring elements are represented exactly
//! and distances to lattice points are integer-coefficient quadratic forms
//! in `(x, y)`, so Voronoi decisions can be certified without square roots.

use super::dyadic::Dyadic;
use super::okint::OKInt;
use super::preal::PReal;
use super::ring::Ring;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct PComplex {
    x: PReal,
    y: PReal,
    ring: Ring,
}

impl fmt::Debug for PComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} {:+e}i (±{:e})", self.re_f64(), self.im_f64(), self.err_radius().to_f64())
    }
}

impl PComplex {
    pub fn from_basis(x: PReal, y: PReal, ring: Ring) -> Self {
        PComplex { x, y, ring }
    }

    pub fn zero(ring: Ring, prec: u32) -> Self {
        Self::from_basis(PReal::zero(prec), PReal::zero(prec), ring)
    }

    pub fn one(ring: Ring, prec: u32) -> Self {
        Self::from_basis(PReal::one(prec), PReal::zero(prec), ring)
    }

    pub fn from_okint(v: &OKInt, prec: u32) -> Self {
        Self::from_basis(
            PReal::from_int(v.a().clone(), prec),
            PReal::from_int(v.b().clone(), prec),
            v.ring(),
        )
    }

    pub fn from_real(r: PReal, ring: Ring) -> Self {
        let prec = r.prec();
        Self::from_basis(r, PReal::zero(prec), ring)
    }

    /// From real and imaginary parts: `y = 2·im/√disc`, `x = re − y·tr/2`.
    pub fn from_re_im(re: PReal, im: PReal, ring: Ring) -> Self {
        let prec = re.prec().max(im.prec());
        let y = if ring == Ring::D1 {
            im
        } else {
            im.mul_pow2(1).div(&ring.sqrt_disc(prec)).expect("disc > 0")
        };
        let x = re.sub(&y.mul_int(&BigInt::from(ring.trace())).mul_pow2(-1));
        Self::from_basis(x, y, ring)
    }

    pub fn from_f64(re: f64, im: f64, ring: Ring, prec: u32) -> Self {
        Self::from_re_im(PReal::from_f64(re, prec), PReal::from_f64(im, prec), ring)
    }

    /// The imaginary unit, which lies in the ring only for d = 1.
    pub fn i(ring: Ring, prec: u32) -> Self {
        Self::from_re_im(PReal::zero(prec), PReal::one(prec), ring)
    }

    pub fn x(&self) -> &PReal {
        &self.x
    }

    pub fn y(&self) -> &PReal {
        &self.y
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn prec(&self) -> u32 {
        self.x.prec().max(self.y.prec())
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::from_basis(self.x.with_prec(prec), self.y.with_prec(prec), self.ring)
    }

    pub fn re(&self) -> PReal {
        self.x
            .add(&self.y.mul_int(&BigInt::from(self.ring.trace())).mul_pow2(-1))
    }

    pub fn im(&self) -> PReal {
        self.y.mul(&self.ring.sqrt_disc(self.prec())).mul_pow2(-1)
    }

    pub fn re_f64(&self) -> f64 {
        self.x.to_f64() + self.y.to_f64() * self.ring.trace() as f64 / 2.0
    }

    pub fn im_f64(&self) -> f64 {
        self.y.to_f64() * (self.ring.disc() as f64).sqrt() / 2.0
    }

    /// Upper bound on the distance from the midpoint to any point of the ball.
    pub fn err_radius(&self) -> Dyadic {
        let w = Dyadic::from_int(self.ring.norm_omega()).sqrt_up(32);
        self.x.rad().add(&self.y.rad().mul(&w))
    }

    pub fn is_exact(&self) -> bool {
        self.x.is_exact() && self.y.is_exact()
    }

    pub fn contains_zero(&self) -> bool {
        self.x.contains_zero() && self.y.contains_zero()
    }

    /// Whether the two balls may denote the same complex number.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.x.overlaps(&other.x) && self.y.overlaps(&other.y)
    }

    pub fn contains_okint(&self, v: &OKInt) -> bool {
        self.x.contains(&Dyadic::from_int(v.a().clone())) && self.y.contains(&Dyadic::from_int(v.b().clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_basis(self.x.add(&o.x), self.y.add(&o.y), self.ring)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_basis(self.x.sub(&o.x), self.y.sub(&o.y), self.ring)
    }

    pub fn neg(&self) -> Self {
        Self::from_basis(self.x.neg(), self.y.neg(), self.ring)
    }

    pub fn signed(&self, n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let yy = self.y.mul(&o.y);
        let x = self
            .x
            .mul(&o.x)
            .sub(&yy.mul_int(&BigInt::from(self.ring.norm_omega())));
        let y = self
            .x
            .mul(&o.y)
            .add(&self.y.mul(&o.x))
            .add(&yy.mul_int(&BigInt::from(self.ring.trace())));
        Self::from_basis(x, y, self.ring)
    }

    pub fn mul_okint(&self, v: &OKInt) -> Self {
        let (a, b) = (v.a(), v.b());
        let nm = BigInt::from(self.ring.norm_omega());
        let tr = BigInt::from(self.ring.trace());
        // (x + yω)(a + bω) = xa − nm·yb + (xb + ya + tr·yb)ω
        let yb = self.y.mul_int(b);
        let x = self.x.mul_int(a).sub(&yb.mul_int(&nm));
        let y = self.x.mul_int(b).add(&self.y.mul_int(a)).add(&yb.mul_int(&tr));
        Self::from_basis(x, y, self.ring)
    }

    pub fn mul_real(&self, r: &PReal) -> Self {
        Self::from_basis(self.x.mul(r), self.y.mul(r), self.ring)
    }

    pub fn conj(&self) -> Self {
        Self::from_basis(
            self.x.add(&self.y.mul_int(&BigInt::from(self.ring.trace()))),
            self.y.neg(),
            self.ring,
        )
    }

    /// `|z|²` as a real ball.
    pub fn norm(&self) -> PReal {
        let (x, y) = (&self.x, &self.y);
        x.square()
            .add(&x.mul(y).mul_int(&BigInt::from(self.ring.trace())))
            .add(&y.square().mul_int(&BigInt::from(self.ring.norm_omega())))
    }

    pub fn abs(&self) -> PReal {
        self.norm().sqrt().expect("norm is non-negative")
    }

    pub fn abs_f64(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.contains_zero() {
            return Err(Error::near_zero("complex reciprocal"));
        }
        let c = self.conj();
        Ok(Self::from_basis(c.x.div(&n)?, c.y.div(&n)?, self.ring))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        let n = o.norm();
        if n.contains_zero() {
            return Err(Error::near_zero("complex division"));
        }
        let num = self.mul(&o.conj());
        Ok(Self::from_basis(num.x.div(&n)?, num.y.div(&n)?, self.ring))
    }

    /// Coordinates of the midpoint.
    pub fn mid(&self) -> (&Dyadic, &Dyadic) {
        (self.x.mid(), self.y.mid())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn zero_is_exact() {
        let z = PComplex::from_okint(&OKInt::zero(Ring::D3), 64);
        assert!(z.err_radius().is_zero());
    }

    #[test]
    fn gaussian_one_plus_i_is_exact() {
        let z = PComplex::from_okint(&OKInt::new(1, 1, Ring::D1), 64);
        assert!(z.is_exact());
        assert_eq!(z.re_f64(), 1.0);
        assert_eq!(z.im_f64(), 1.0);
    }

    #[test]
    fn embedding_norm_matches_exact_norm() {
        for r in Ring::ALL {
            for (a, b) in [(1i64, 1i64), (3, -7), (-12, 5), (0, 1)] {
                let v = OKInt::new(a, b, r);
                let z = PComplex::from_okint(&v, P);
                let n = z.re().square().add(&z.im().square());
                assert!(n.contains(&Dyadic::from_int(v.norm())), "d={} {v}", r.d());
                let (re, im) = (z.re_f64(), z.im_f64());
                let exact = v.norm().to_string().parse::<f64>().unwrap();
                assert!(((re * re + im * im) - exact).abs() < 1e-9 * exact.max(1.0));
            }
        }
    }

    #[test]
    fn re_im_round_trip() {
        for r in Ring::ALL {
            let z = PComplex::from_f64(0.3, -1.7, r, P);
            assert!((z.re_f64() - 0.3).abs() < 1e-15);
            assert!((z.im_f64() + 1.7).abs() < 1e-15);
            let i = PComplex::i(r, P);
            let m1 = i.mul(&i);
            assert!(m1.re().contains(&Dyadic::from_int(-1)));
            assert!(m1.im().contains(&Dyadic::zero()));
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        for r in Ring::ALL {
            let a = PComplex::from_f64(1.25, 0.5, r, P);
            let b = PComplex::from_f64(-0.75, 2.0, r, P);
            let q = a.mul(&b).div(&b).unwrap();
            assert!(q.overlaps(&a));
            assert!(q.err_radius().to_f64() < 1e-30);
        }
    }
}
