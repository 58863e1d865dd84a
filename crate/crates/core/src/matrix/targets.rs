use super::mat2::{Mat2, Point2};
use crate::cf::CFExpansion;
use crate::error::{Error, Result};
use crate::field::{extended_gcd, Dyadic, KRat, OKInt, PReal};

/// `M_k = ((q_k, −p_k), ((−1)^(k−1) q_{k−1}, (−1)^k p_{k−1}))`, for `k ≥ 0`.
pub fn convergent_matrix(exp: &CFExpansion, k: usize) -> Result<Mat2> {
    let k = k as i64;
    let pk: &OKInt = exp.p(k)?;
    Ok(Mat2::new(
        exp.q(k)?.clone(),
        -pk,
        exp.q(k - 1)?.signed(k - 1),
        exp.p(k - 1)?.signed(k),
    ))
}

/// Applies `J` when `|z1/z2| > 1`, so the slope of the result has modulus at
/// most one. A ratio that cannot be separated from 1 counts as "at most one"
/// when its upper bound is within `2^(1 − prec/2)` of 1.
pub fn normalize_slope(z: &Point2) -> Result<(Point2, bool)> {
    let prec = z.z1.prec().max(z.z2.prec());
    let n1 = z.z1.norm();
    let n2 = z.z2.norm();
    let r = n1.div(&n2).map_err(|_| Error::near_zero("normalize_slope: z2 may vanish"))?;
    let one = Dyadic::one();
    if r.upper() <= one {
        return Ok((z.clone(), false));
    }
    if r.lower() > one {
        let ring = z.z1.ring();
        return Ok((Mat2::j(ring).apply(z), true));
    }
    let tol = one.add(&Dyadic::pow2(1 - (prec as i64) / 2));
    if r.upper() <= tol {
        Ok((z.clone(), false))
    } else {
        Err(Error::precision("normalize_slope: |z1/z2| = 1 undecided"))
    }
}

/// `N = ((a, a′), (b, b′))` with determinant one and `|b′| < |b|` (or `b′ = 0`).
pub fn target_matrix_rational(a: &OKInt, b: &OKInt) -> Result<Mat2> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::NotCoprime {
            gcd_norm: "0".into(),
        });
    }
    let (g, x, y) = extended_gcd(a, b);
    if !g.is_unit() {
        return Err(Error::NotCoprime {
            gcd_norm: g.norm().to_string(),
        });
    }
    // a·x + b·y = g, so with g⁻¹ = conj(g): a·(x g⁻¹) − (−y g⁻¹)·b = 1
    let ginv = g.conj();
    let mut bp = &x * &ginv;
    let mut ap = -(&y * &ginv);
    if !b.is_zero() {
        let m = KRat::from_ratio(&bp, b)?.nearest();
        bp = &bp - &(&m * b);
        ap = &ap - &(&m * a);
    }
    let n = Mat2::new(a.clone(), ap, b.clone(), bp);
    debug_assert!(n.is_sl2());
    Ok(n)
}

/// `N_j = ((t_j, (−1)^(j−1) t_{j−1}), (s_j, (−1)^(j−1) s_{j−1}))` from the
/// convergents `t/s` of the target slope.
pub fn target_matrix_irrational(exp_y: &CFExpansion, j: usize) -> Result<Mat2> {
    let j = j as i64;
    Ok(Mat2::new(
        exp_y.p(j)?.clone(),
        exp_y.p(j - 1)?.signed(j - 1),
        exp_y.q(j)?.clone(),
        exp_y.q(j - 1)?.signed(j - 1),
    ))
}

/// `|a| <= |b|`, exact.
pub fn slope_at_most_one(a: &OKInt, b: &OKInt) -> bool {
    a.norm() <= b.norm()
}

/// Modulus of the slope `z1/z2` as a ball.
pub fn slope_abs(z: &Point2) -> Result<PReal> {
    z.z1.abs().div(&z.z2.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{expand_expr, PrecisionPolicy};
    use crate::field::{coprime, Expr, PComplex, Ring};
    use proptest::prelude::*;

    fn sqrt2() -> CFExpansion {
        expand_expr(&Expr::parse("sqrt(2)").unwrap(), Ring::D1, 10, PrecisionPolicy::default()).unwrap()
    }

    #[test]
    fn convergent_matrix_examples() {
        let exp = sqrt2();
        let m0 = convergent_matrix(&exp, 0).unwrap();
        assert_eq!(m0, Mat2::from_i64([[1, -1], [0, 1]], Ring::D1));
        let m2 = convergent_matrix(&exp, 2).unwrap();
        assert_eq!(m2, Mat2::from_i64([[5, -7], [-2, 3]], Ring::D1));
        assert!(m2.is_sl2());
        assert!(convergent_matrix(&exp, 10).is_err());
    }

    #[test]
    fn irrational_target_matrix_example() {
        let exp = sqrt2();
        let n2 = target_matrix_irrational(&exp, 2).unwrap();
        assert_eq!(n2, Mat2::from_i64([[7, -3], [5, -2]], Ring::D1));
        for j in 0..10 {
            assert!(target_matrix_irrational(&exp, j).unwrap().is_sl2());
        }
    }

    #[test]
    fn rational_target_examples() {
        let r = Ring::D1;
        let n = target_matrix_rational(&OKInt::zero(r), &OKInt::one(r)).unwrap();
        assert_eq!(n, Mat2::from_i64([[0, -1], [1, 0]], r));
        let b = OKInt::new(1, 1, r);
        let n = target_matrix_rational(&OKInt::one(r), &b).unwrap();
        assert!(n.is_sl2());
        assert!(n.u2.norm() <= b.norm());
        assert!(matches!(
            target_matrix_rational(&OKInt::from_int(2, r), &OKInt::new(1, 1, r)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn normalize_examples() {
        let r = Ring::D1;
        let p = |a: f64, b: f64| Point2::new(PComplex::from_f64(a, 0.0, r, 64), PComplex::from_f64(b, 0.0, r, 64));
        let (z, flipped) = normalize_slope(&p(1.0, 2.0)).unwrap();
        assert!(!flipped);
        assert_eq!(z.z1.re_f64(), 1.0);
        let (z, flipped) = normalize_slope(&p(2.0, 1.0)).unwrap();
        assert!(flipped);
        assert_eq!((z.z1.re_f64(), z.z2.re_f64()), (-1.0, 2.0));
        let (_, flipped) = normalize_slope(&p(1.0, 1.0)).unwrap();
        assert!(!flipped);
    }

    fn ring() -> impl Strategy<Value = Ring> {
        prop::sample::select(Ring::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn rational_target_is_reduced(r in ring(), a in -300i64..300, b in -300i64..300, c in -300i64..300, d in -300i64..300) {
            let x = OKInt::new(a, b, r);
            let y = OKInt::new(c, d, r);
            prop_assume!(coprime(&x, &y) && !y.is_zero());
            let n = target_matrix_rational(&x, &y).unwrap();
            prop_assert!(n.is_sl2());
            prop_assert_eq!(&n.v1, &x);
            prop_assert_eq!(&n.v2, &y);
            prop_assert!(n.u2.norm() < y.norm());
        }

        #[test]
        fn normalize_preserves_size(r in ring(), a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, d in -5.0f64..5.0) {
            prop_assume!((c * c + d * d) > 1e-6 && (a * a + b * b) > 1e-6);
            let z = Point2::new(PComplex::from_f64(a, b, r, 128), PComplex::from_f64(c, d, r, 128));
            let (w, _) = normalize_slope(&z).unwrap();
            prop_assert!(slope_abs(&w).unwrap().to_f64() <= 1.0 + 1e-12);
            let n0 = z.z1.norm().add(&z.z2.norm());
            let n1 = w.z1.norm().add(&w.z2.norm());
            prop_assert!(n0.overlaps(&n1));
        }
    }
}
