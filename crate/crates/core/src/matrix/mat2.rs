use crate::field::{OKInt, PComplex, PReal, Ring};
use num_bigint::BigInt;
use std::fmt;

/// `((v1, u1), (v2, u2))` over `O_K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub v1: OKInt,
    pub u1: OKInt,
    pub v2: OKInt,
    pub u2: OKInt,
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({}, {}), ({}, {}))", self.v1, self.u1, self.v2, self.u2)
    }
}

/// A point of `ℂ²`.
#[derive(Clone, Debug)]
pub struct Point2 {
    pub z1: PComplex,
    pub z2: PComplex,
}

impl Point2 {
    pub fn new(z1: PComplex, z2: PComplex) -> Self {
        Point2 { z1, z2 }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point2::new(self.z1.sub(&o.z1), self.z2.sub(&o.z2))
    }

    /// `max(|z1|, |z2|)` as a ball.
    pub fn sup_norm(&self) -> PReal {
        let (a, b) = (self.z1.abs(), self.z2.abs());
        if a.lower() >= b.upper() {
            a
        } else if b.lower() >= a.upper() {
            b
        } else {
            // enclose the max of two overlapping balls
            let lo = a.lower().max(b.lower());
            let hi = a.upper().max(b.upper());
            let mid = lo.add(&hi).mul_pow2(-1);
            let rad = hi.sub(&lo).mul_pow2(-1);
            PReal::with_radius(mid, rad, a.prec().max(b.prec()))
        }
    }

    pub fn sup_norm_f64(&self) -> f64 {
        self.z1.abs_f64().max(self.z2.abs_f64())
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.z1.overlaps(&o.z1) && self.z2.overlaps(&o.z2)
    }
}

impl Mat2 {
    pub fn new(v1: OKInt, u1: OKInt, v2: OKInt, u2: OKInt) -> Self {
        Mat2 { v1, u1, v2, u2 }
    }

    pub fn from_i64(e: [[i64; 2]; 2], ring: Ring) -> Self {
        let o = |x: i64| OKInt::from_int(x, ring);
        Mat2::new(o(e[0][0]), o(e[0][1]), o(e[1][0]), o(e[1][1]))
    }

    pub fn ring(&self) -> Ring {
        self.v1.ring()
    }

    pub fn identity(ring: Ring) -> Self {
        Self::from_i64([[1, 0], [0, 1]], ring)
    }

    /// `J = ((0, −1), (1, 0))`
    pub fn j(ring: Ring) -> Self {
        Self::from_i64([[0, -1], [1, 0]], ring)
    }

    /// `U^ℓ = ((1, ℓ), (0, 1))`
    pub fn u_pow(ell: &OKInt) -> Self {
        let r = ell.ring();
        Mat2::new(OKInt::one(r), ell.clone(), OKInt::zero(r), OKInt::one(r))
    }

    pub fn entries(&self) -> [&OKInt; 4] {
        [&self.v1, &self.u1, &self.v2, &self.u2]
    }

    pub fn mul(&self, o: &Self) -> Self {
        Mat2::new(
            &(&self.v1 * &o.v1) + &(&self.u1 * &o.v2),
            &(&self.v1 * &o.u1) + &(&self.u1 * &o.u2),
            &(&self.v2 * &o.v1) + &(&self.u2 * &o.v2),
            &(&self.v2 * &o.u1) + &(&self.u2 * &o.u2),
        )
    }

    pub fn det(&self) -> OKInt {
        &(&self.v1 * &self.u2) - &(&self.u1 * &self.v2)
    }

    pub fn is_sl2(&self) -> bool {
        self.det().is_one()
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Self {
        debug_assert!(self.is_sl2());
        Mat2::new(self.u2.clone(), -&self.u1, -&self.v2, self.v1.clone())
    }

    /// `max |entry|²`, exact.
    pub fn height_norm(&self) -> BigInt {
        self.entries()
            .iter()
            .map(|e| e.norm())
            .max()
            .expect("four entries")
    }

    /// `|γ| = max |entry|` as a ball.
    pub fn height(&self, prec: u32) -> PReal {
        PReal::from_int(self.height_norm(), prec)
            .sqrt()
            .expect("norm >= 0")
    }

    pub fn apply(&self, z: &Point2) -> Point2 {
        Point2::new(
            z.z1.mul_okint(&self.v1).add(&z.z2.mul_okint(&self.u1)),
            z.z1.mul_okint(&self.v2).add(&z.z2.mul_okint(&self.u2)),
        )
    }
}
