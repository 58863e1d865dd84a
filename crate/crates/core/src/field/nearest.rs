//! Certified nearest-lattice-point rounding and Euclidean division.

use super::dyadic::Dyadic;
use super::krat::KRat;
use super::okint::OKInt;
use super::pcomplex::PComplex;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::cmp::Ordering;

/// The ring element nearest to `z`. Equidistant candidates resolve to the
/// lexicographically smallest `(a, b)`.
///
/// Fails with `PrecisionInsufficient` when the ball around `z` meets a
/// Voronoi boundary and the winner cannot be certified for every point of it.
pub fn nearest_integer(z: &PComplex) -> Result<OKInt> {
    let ring = z.ring();
    let tr = BigInt::from(ring.trace());
    let nm = BigInt::from(ring.norm_omega());
    let (xm, ym) = z.mid();
    let a0 = xm.round_to_int();
    let b0 = ym.round_to_int();

    // Squared distance from the midpoint, exact.
    let dist = |c: &OKInt| -> Dyadic {
        let u = xm.sub(&Dyadic::from_int(c.a().clone()));
        let v = ym.sub(&Dyadic::from_int(c.b().clone()));
        u.mul(&u).add(&u.mul(&v).mul_int(&tr)).add(&v.mul(&v).mul_int(&nm))
    };

    let mut cands: Vec<(Dyadic, OKInt)> = Vec::with_capacity(25);
    for db in -2i64..=2 {
        for da in -2i64..=2 {
            let c = OKInt::new(&a0 + da, &b0 + db, ring);
            cands.push((dist(&c), c));
        }
    }
    let best_idx = (0..cands.len())
        .min_by(|&i, &j| {
            cands[i]
                .0
                .cmp(&cands[j].0)
                .then_with(|| cands[i].1.lex_cmp(&cands[j].1))
        })
        .expect("nonempty");
    let best = cands[best_idx].1.clone();
    if z.is_exact() {
        return Ok(best);
    }

    // dist_best − dist_c is affine in (x, y):
    //   −(2Δa + tr·Δb)·x − (tr·Δa + 2nm·Δb)·y + (N(best) − N(c)),  Δ = best − c
    let (rx, ry) = (z.x().rad(), z.y().rad());
    let nb = best.norm();
    for (_, c) in &cands {
        if c == &best {
            continue;
        }
        let da = best.a() - c.a();
        let db = best.b() - c.b();
        let cx: BigInt = -(&da * 2i32 + &tr * &db);
        let cy: BigInt = -(&tr * &da + &nm * &db * 2i32);
        let k = &nb - c.norm();
        let mid = xm.mul_int(&cx).add(&ym.mul_int(&cy)).add(&Dyadic::from_int(k));
        let rad = rx.mul_int(&num_traits::Signed::abs(&cx)).add(&ry.mul_int(&num_traits::Signed::abs(&cy)));
        let upper = mid.add(&rad);
        match upper.cmp(&Dyadic::zero()) {
            Ordering::Less => {}
            Ordering::Equal if c.lex_cmp(&best) == Ordering::Greater => {}
            _ => {
                return Err(Error::precision(format!(
                    "nearest integer: point within {:.3e} of the boundary between {best} and {c}",
                    z.err_radius().to_f64()
                )))
            }
        }
    }
    Ok(best)
}

/// Euclidean division with nearest-integer quotient: `a = q·b + r`, `|r| < |b|`.
pub fn div_nearest(a: &OKInt, b: &OKInt) -> (OKInt, OKInt) {
    assert!(!b.is_zero(), "division by zero");
    let q = KRat::from_ratio(a, b).expect("b nonzero").nearest();
    let r = a - &(&q * b);
    (q, r)
}

/// Extended gcd: returns `(g, x, y)` with `g = a·x + b·y` and `g | a`, `g | b`.
pub fn extended_gcd(a: &OKInt, b: &OKInt) -> (OKInt, OKInt, OKInt) {
    let ring = a.ring();
    assert!(!(a.is_zero() && b.is_zero()), "gcd(0, 0) is undefined");
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (OKInt::one(ring), OKInt::zero(ring));
    let (mut t0, mut t1) = (OKInt::zero(ring), OKInt::one(ring));
    while !r1.is_zero() {
        let (q, r) = div_nearest(&r0, &r1);
        debug_assert!(r.norm() < r1.norm());
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    (r0, s0, t0)
}

/// Whether `a` and `b` generate the unit ideal.
pub fn coprime(a: &OKInt, b: &OKInt) -> bool {
    if a.is_zero() && b.is_zero() {
        return false;
    }
    extended_gcd(a, b).0.is_unit()
}
