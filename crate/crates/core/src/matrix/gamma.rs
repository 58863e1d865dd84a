//! The composite matrices `γ = N·U^ℓ·M_k` and their residuals `γz − y`.

use super::mat2::{Mat2, Point2};
use super::targets::{convergent_matrix, target_matrix_irrational};
use crate::cf::{constants, CFExpansion};
use crate::error::{Error, Result};
use crate::field::{nearest_integer, Dyadic, OKInt, PComplex, PReal};
use num_bigint::BigInt;
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetClass {
    Origin,
    RationalSlope,
    IrrationalSlope,
}

impl TargetClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TargetClass::Origin => "origin",
            TargetClass::RationalSlope => "rational_slope",
            TargetClass::IrrationalSlope => "irrational_slope",
        }
    }
}

/// `γz − y` computed directly and through the slope form
/// `Λ_i = z2·(v_i ξ + u_i) − y_i`.
#[derive(Clone, Debug)]
pub struct Residual {
    pub direct: Point2,
    pub formula: Point2,
    pub agree: bool,
}

pub fn residual(gamma: &Mat2, z: &Point2, xi: &PComplex, y: &Point2) -> Residual {
    let direct = gamma.apply(z).sub(y);
    let row = |v: &OKInt, u: &OKInt, yi: &PComplex| {
        let prec = xi.prec();
        z.z2.mul(&xi.mul_okint(v).add(&PComplex::from_okint(u, prec))).sub(yi)
    };
    let formula = Point2::new(
        row(&gamma.v1, &gamma.u1, &y.z1),
        row(&gamma.v2, &gamma.u2, &y.z2),
    );
    let agree = direct.overlaps(&formula);
    Residual {
        direct,
        formula,
        agree,
    }
}

/// `ρ = (−1)^(k−1) y2/(z2 s ε_{k−1}) − (−1)^(k−1) ε_k/ε_{k−1} − s′/s`
/// with `s, s′` the bottom row of `N`.
pub fn rho(k: usize, n: &Mat2, z2: &PComplex, y2: &PComplex, exp_z: &CFExpansion) -> Result<PComplex> {
    if k == 0 {
        return Err(Error::IndexOutOfRange {
            index: -1,
            available: "ε_{k−1} needs k >= 1".into(),
        });
    }
    let prec = exp_z.prec();
    let (s, sp) = (&n.v2, &n.u2);
    if s.is_zero() {
        return Err(Error::near_zero("rho: s = 0"));
    }
    let kk = k as i64;
    let e1 = exp_z.eps(kk - 1)?;
    let e0 = exp_z.eps(kk)?;
    let s_c = PComplex::from_okint(s, prec);
    let first = y2
        .div(&z2.mul(&s_c).mul(e1))
        .map_err(|_| Error::near_zero("rho: z2·s·ε_{k−1} may vanish"))?
        .signed(kk - 1);
    let second = e0
        .div(e1)
        .map_err(|_| Error::near_zero("rho: ε_{k−1} may vanish"))?
        .signed(kk - 1);
    let third = PComplex::from_okint(sp, prec).div(&s_c)?;
    Ok(first.sub(&second).sub(&third))
}

/// Lattice point `ℓ` near `ρ` with `|ℓ| <= |ρ|`.
///
/// Candidates are the lattice points within twice the covering radius of
/// `ρ`; among those with `|ℓ| <= |ρ|` certified, the closest to `ρ` wins
/// (ties to the lexicographically smallest). When none qualifies the nearest
/// lattice point is returned with the `relaxed` flag set.
pub fn choose_ell(rho: &PComplex) -> Result<(OKInt, bool)> {
    let ring = rho.ring();
    let (xm, ym) = rho.mid();
    let (a0, b0) = (xm.round_to_int(), ym.round_to_int());
    let tr = BigInt::from(ring.trace());
    let nm = BigInt::from(ring.norm_omega());
    let cover = ring.cover_radius_sq();
    // (2C3)² = 4·cover²
    let reach = Dyadic::div_up(
        &Dyadic::from_int(cover.numer() * 4),
        &Dyadic::from_int(cover.denom().clone()),
        64,
    );
    let rho_norm_lo = rho.norm().lower();
    let mut best: Option<(Dyadic, OKInt)> = None;
    for db in -3i64..=3 {
        for da in -3i64..=3 {
            let c = OKInt::new(&a0 + da, &b0 + db, ring);
            let u = xm.sub(&Dyadic::from_int(c.a().clone()));
            let v = ym.sub(&Dyadic::from_int(c.b().clone()));
            let dist = u.mul(&u).add(&u.mul(&v).mul_int(&tr)).add(&v.mul(&v).mul_int(&nm));
            if dist > reach {
                continue;
            }
            if Dyadic::from_int(c.norm()) > rho_norm_lo {
                continue;
            }
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
    match best {
        Some((_, c)) => Ok((c, false)),
        None => Ok((nearest_integer(rho)?, true)),
    }
}

pub fn build_gamma(n: &Mat2, ell: &OKInt, m_k: &Mat2) -> Mat2 {
    n.mul(&Mat2::u_pow(ell)).mul(m_k)
}

/// Exact check of `|s(ℓq_{k−1} + (−1)^(k−1) q_k)| − |s′q_{k−1}| <= |γ|`.
pub fn height_lower_bound_holds(gamma: &Mat2, n: &Mat2, ell: &OKInt, exp_z: &CFExpansion, k: usize) -> Result<bool> {
    let kk = k as i64;
    let (q0, q1) = (exp_z.q(kk)?, exp_z.q(kk - 1)?);
    let inner = &(ell * q1) + &q0.signed(kk - 1);
    let a = (&n.v2 * &inner).norm();
    let b = (&n.u2 * q1).norm();
    let h = gamma.height_norm();
    if a <= b {
        return Ok(true);
    }
    // √a <= √h + √b  <=>  a − h − b <= 2√(hb)
    let d: BigInt = &a - &h - &b;
    Ok(d <= BigInt::from(0) || &d * &d <= BigInt::from(4) * &h * &b)
}

fn sqrt_f64(n: &BigInt) -> f64 {
    Dyadic::from_int(n.clone()).to_f64().sqrt()
}

#[derive(Clone, Debug)]
pub struct GammaResult {
    pub class: TargetClass,
    pub gamma: Mat2,
    pub k: usize,
    pub j: Option<usize>,
    pub ell: OKInt,
    pub rho: Option<PComplex>,
    /// `choose_ell` found no candidate with `|ℓ| <= |ρ|`.
    pub relaxed: bool,
    pub residual: Residual,
    /// `|γz − y|` (sup norm).
    pub err: PReal,
    pub height: PReal,
    /// Shape of the predicted bound for `err`, without its implicit constant.
    pub predicted: f64,
    /// `err / predicted`.
    pub measured_constant: f64,
    /// Lower height bound of the product lemma, certified exactly.
    pub height_lower_ok: bool,
    /// `|γ| / (|ℓ q_{k−1}|·|N| + |N|·|q_k|)`.
    pub height_upper_constant: f64,
    /// `|γ| / (|q_k|·|q_{k−1}|)`.
    pub height_lower_constant: f64,
    /// `|ℓ| >= |y2 q_k|/(C1 |z2 s|) − (C3 + 2)`; recorded only, `None` without constants.
    pub ell_lower_holds: Option<bool>,
    /// `Λ2 = (−1)^(k−1) z2 s ε_{k−1} (ℓ − ρ)` within the ball radii.
    pub lambda2_factor_ok: bool,
    /// `|Λ1 − ηΛ2| / (|z2|·(|δℓ + δ′|/|q_k| + |δ|/|q_{k+1}|))` with `δ = sη − t`,
    /// `δ′ = s′η − t′`; `None` when `q_{k+1}` is unavailable or the bound vanishes.
    pub slope_residual_constant: Option<f64>,
}

impl GammaResult {
    pub fn height_f64(&self) -> f64 {
        self.height.to_f64()
    }

    pub fn err_f64(&self) -> f64 {
        self.err.to_f64()
    }

    pub fn det_ok(&self) -> bool {
        self.gamma.is_sl2()
    }
}

/// Builds `γ = N·U^ℓ·M_k` against the normalized point `z` and target `y`.
fn compose(
    class: TargetClass,
    exp_z: &CFExpansion,
    n: &Mat2,
    k: usize,
    j: Option<usize>,
    z: &Point2,
    y: &Point2,
) -> Result<GammaResult> {
    let prec = exp_z.prec();
    let kk = k as i64;
    let m_k = convergent_matrix(exp_z, k)?;
    let r = rho(k, n, &z.z2, &y.z2, exp_z)?;
    let (ell, relaxed) = choose_ell(&r)?;
    let gamma = build_gamma(n, &ell, &m_k);
    let res = residual(&gamma, z, exp_z.z(), y);
    let err = res.direct.sup_norm();
    let height = gamma.height(prec);

    let s_c = PComplex::from_okint(&n.v2, prec);
    let factor = z
        .z2
        .mul(&s_c)
        .mul(exp_z.eps(kk - 1)?)
        .mul(&PComplex::from_okint(&ell, prec).sub(&r))
        .signed(kk - 1);
    let lambda2_factor_ok = factor.overlaps(&res.direct.z2);

    let height_lower_ok = height_lower_bound_holds(&gamma, n, &ell, exp_z, k)?;
    let nh = sqrt_f64(&n.height_norm());
    let lq = sqrt_f64(&(&ell * exp_z.q(kk - 1)?).norm());
    let qk = sqrt_f64(&exp_z.q(kk)?.norm());
    let height_upper_constant = height.to_f64() / (lq * nh + nh * qk);
    let qk1 = sqrt_f64(&exp_z.q(kk - 1)?.norm());
    let height_lower_constant = height.to_f64() / (qk * qk1);
    let ell_lower_holds = constants(exp_z.ring()).map(|c| {
        let s_abs = sqrt_f64(&n.v2.norm());
        let lo = y.z2.abs_f64() * qk / (c.c1_f64() * z.z2.abs_f64() * s_abs)
            - (exp_z.ring().cover_radius_f64() + 2.0);
        sqrt_f64(&ell.norm()) >= lo
    });

    // slope form of the first residual coordinate
    let slope_residual_constant = match (exp_z.q(kk + 1), y.z1.div(&y.z2)) {
        (Ok(qn), Ok(eta)) => {
            let delta = eta.mul_okint(&n.v2).sub(&PComplex::from_okint(&n.v1, prec));
            let delta_p = eta.mul_okint(&n.u2).sub(&PComplex::from_okint(&n.u1, prec));
            let bound = z.z2.abs_f64()
                * (delta.mul_okint(&ell).add(&delta_p).abs_f64() / qk
                    + delta.abs_f64() / sqrt_f64(&qn.norm()));
            let lhs = res.direct.z1.sub(&eta.mul(&res.direct.z2)).abs_f64();
            (bound > 0.0).then(|| lhs / bound)
        }
        _ => None,
    };

    Ok(GammaResult {
        class,
        gamma,
        k,
        j,
        ell,
        rho: Some(r),
        relaxed,
        residual: res,
        err,
        height,
        predicted: f64::NAN,
        measured_constant: f64::NAN,
        height_lower_ok,
        height_upper_constant,
        height_lower_constant,
        ell_lower_holds,
        lambda2_factor_ok,
        slope_residual_constant,
    })
}

fn with_prediction(mut g: GammaResult, predicted: f64) -> GammaResult {
    g.predicted = predicted;
    g.measured_constant = g.err.to_f64() / predicted;
    g
}

/// `γ = M_k` against `y = 0`; predicted `|z|/|q_k|`.
pub fn gamma_origin(exp_z: &CFExpansion, k: usize, z: &Point2) -> Result<GammaResult> {
    let prec = exp_z.prec();
    let kk = k as i64;
    let ring = exp_z.ring();
    let gamma = convergent_matrix(exp_z, k)?;
    let zero = Point2::new(PComplex::zero(ring, prec), PComplex::zero(ring, prec));
    let res = residual(&gamma, z, exp_z.z(), &zero);
    let err = res.direct.sup_norm();
    let height = gamma.height(prec);
    // M_k z = z2 (ε_k, (−1)^(k−1) ε_{k−1})
    let expect = Point2::new(
        z.z2.mul(exp_z.eps(kk)?),
        z.z2.mul(exp_z.eps(kk - 1).unwrap_or(&PComplex::one(ring, prec))).signed(kk - 1),
    );
    let identity_ok = k == 0 || expect.overlaps(&res.direct);
    let qk = sqrt_f64(&exp_z.q(kk)?.norm());
    let g = GammaResult {
        class: TargetClass::Origin,
        gamma,
        k,
        j: None,
        ell: OKInt::zero(ring),
        rho: None,
        relaxed: false,
        residual: res,
        err,
        height,
        predicted: f64::NAN,
        measured_constant: f64::NAN,
        height_lower_ok: true,
        height_upper_constant: f64::NAN,
        height_lower_constant: f64::NAN,
        ell_lower_holds: None,
        lambda2_factor_ok: identity_ok,
        slope_residual_constant: None,
    };
    Ok(with_prediction(g, z.sup_norm_f64() / qk))
}

/// `γ = N·U^ℓ·M_k` for the rational target slope `a/b` encoded by `N = ((a, a′), (b, b′))`;
/// predicted `|b z2| / |q_k|`.
pub fn gamma_rational(exp_z: &CFExpansion, n: &Mat2, k: usize, z: &Point2, y: &Point2) -> Result<GammaResult> {
    let g = compose(TargetClass::RationalSlope, exp_z, n, k, None, z, y)?;
    let qk = sqrt_f64(&exp_z.q(k as i64)?.norm());
    let predicted = sqrt_f64(&n.v2.norm()) * z.z2.abs_f64() / qk;
    Ok(with_prediction(g, predicted))
}

/// `γ = N_j·U^ℓ·M_k` for an irrational target slope with expansion `exp_y`;
/// predicted `|q_k|^(e−1)/|s_j s_{j+1}| + |s_j/q_k|` with `e = ω^(r1−1)`.
pub fn gamma_irrational(
    exp_z: &CFExpansion,
    exp_y: &CFExpansion,
    j: usize,
    k: usize,
    z: &Point2,
    y: &Point2,
    exponent: f64,
) -> Result<GammaResult> {
    let n = target_matrix_irrational(exp_y, j)?;
    let g = compose(TargetClass::IrrationalSlope, exp_z, &n, k, Some(j), z, y)?;
    let qk = sqrt_f64(&exp_z.q(k as i64)?.norm());
    let sj = sqrt_f64(&exp_y.q(j as i64)?.norm());
    let sj1 = sqrt_f64(&exp_y.q(j as i64 + 1)?.norm());
    let predicted = qk.powf(exponent - 1.0) / (sj * sj1) + sj / qk;
    Ok(with_prediction(g, predicted))
}
