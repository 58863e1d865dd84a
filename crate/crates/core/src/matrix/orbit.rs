//! Sweeps of `γ` constructions over `k` (or admissible `(j, k)`), with the
//! slope normalization by `J` applied on the way in and undone on the way out.

use super::gamma::{gamma_irrational, gamma_origin, gamma_rational, GammaResult, TargetClass};
use super::mat2::{Mat2, Point2};
use super::select::select_indices;
use super::targets::{normalize_slope, target_matrix_rational};
use crate::cf::{constants, expand, expand_exact, CFExpansion, PrecisionPolicy};
use crate::error::{Error, Result};
use crate::field::{Expr, OKInt, PComplex, Ring, Value};

/// Default `ω`, slightly above the generic irrationality measure 1.
pub const DEFAULT_OMEGA: f64 = 1.0 + 1.0 / 16.0;

#[derive(Clone, Debug)]
pub enum TargetInput {
    Origin,
    /// `y = scale·(a, b)` with `gcd(a, b)` a unit.
    Rational { a: OKInt, b: OKInt, scale: Expr },
    /// `y = (y1, y2)` with slope outside `K`.
    Point { y1: Expr, y2: Expr },
}

impl TargetInput {
    pub fn class(&self) -> TargetClass {
        match self {
            TargetInput::Origin => TargetClass::Origin,
            TargetInput::Rational { .. } => TargetClass::RationalSlope,
            TargetInput::Point { .. } => TargetClass::IrrationalSlope,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitSpec {
    pub ring: Ring,
    pub z1: Expr,
    pub z2: Expr,
    pub target: TargetInput,
    /// Continued fraction terms for the slope of `z`.
    pub depth: usize,
    /// Continued fraction terms for the slope of `y` (irrational targets).
    pub depth_y: usize,
    pub omega: f64,
}

impl OrbitSpec {
    pub fn new(ring: Ring, z1: Expr, z2: Expr, target: TargetInput, depth: usize) -> Self {
        OrbitSpec {
            ring,
            z1,
            z2,
            target,
            depth,
            depth_y: depth,
            omega: DEFAULT_OMEGA,
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitRun {
    pub class: TargetClass,
    pub prec: u32,
    pub z: Point2,
    pub y: Point2,
    pub z_flipped: bool,
    pub y_flipped: bool,
    /// Expansion of the normalized slope of `z`.
    pub exp_z: CFExpansion,
    /// Expansion of the normalized slope of `y` (irrational targets only).
    pub exp_y: Option<CFExpansion>,
    /// `(a, b)` after normalization (rational targets only).
    pub slope: Option<(OKInt, OKInt)>,
    /// Sorted by `(k, j)`, matrices and residuals in the original coordinates.
    pub records: Vec<GammaResult>,
}

fn point(v1: &Value, v2: &Value, prec: u32) -> Point2 {
    Point2::new(v1.to_pcomplex(prec), v2.to_pcomplex(prec))
}

/// Expansion of `w1/w2`, exact when both are exact.
pub(crate) fn expand_slope(w1: &Value, w2: &Value, depth: usize, prec: u32) -> Result<CFExpansion> {
    match (w1.as_exact(), w2.as_exact()) {
        (Some(a), Some(b)) => Ok(expand_exact(&a.div(b)?, depth, prec)),
        _ => {
            let xi = w1
                .to_pcomplex(prec)
                .div(&w2.to_pcomplex(prec))
                .map_err(|_| Error::near_zero("slope denominator may vanish"))?;
            expand(&xi, depth)
        }
    }
}

/// `J(w1, w2) = (−w2, w1)` on evaluated values.
pub(crate) fn flip(w1: &Value, w2: &Value) -> (Value, Value) {
    let neg = match w2 {
        Value::Exact(k) => Value::Exact(k.neg()),
        Value::Ball(b) => Value::Ball(b.neg()),
    };
    (neg, w1.clone())
}

/// Rewrites a result built against normalized points in the original frame:
/// `γ = J_y⁻¹·γ′·J_z`.
fn denormalize(mut g: GammaResult, zf: bool, yf: bool, z: &Point2, y: &Point2) -> GammaResult {
    let ring = g.gamma.ring();
    let j = Mat2::j(ring);
    let jinv = j.inverse_sl2();
    if zf {
        g.gamma = g.gamma.mul(&j);
    }
    if yf {
        g.gamma = jinv.mul(&g.gamma);
        g.residual.formula = jinv.apply(&g.residual.formula);
    }
    if zf || yf {
        g.residual.direct = g.gamma.apply(z).sub(y);
        g.residual.agree = g.residual.direct.overlaps(&g.residual.formula);
        g.err = g.residual.direct.sup_norm();
    }
    g
}

fn run_at(spec: &OrbitSpec, prec: u32) -> Result<OrbitRun> {
    let ring = spec.ring;
    let v1 = spec.z1.eval(ring, prec)?;
    let v2 = spec.z2.eval(ring, prec)?;
    let z = point(&v1, &v2, prec);
    let (_, z_flipped) = normalize_slope(&z)?;
    let (w1, w2) = if z_flipped { flip(&v1, &v2) } else { (v1, v2) };
    let zn = point(&w1, &w2, prec);
    let exp_z = expand_slope(&w1, &w2, spec.depth, prec)?;
    let top = exp_z.len();

    let mut run = OrbitRun {
        class: spec.target.class(),
        prec,
        z: z.clone(),
        y: Point2::new(PComplex::zero(ring, prec), PComplex::zero(ring, prec)),
        z_flipped,
        y_flipped: false,
        exp_z,
        exp_y: None,
        slope: None,
        records: Vec::new(),
    };

    match &spec.target {
        TargetInput::Origin => {
            for k in 1..top {
                let g = gamma_origin(&run.exp_z, k, &zn)?;
                run.records.push(denormalize(g, z_flipped, false, &z, &run.y));
            }
        }
        TargetInput::Rational { a, b, scale } => {
            let c = scale.eval(ring, prec)?.to_pcomplex(prec);
            let y = Point2::new(c.mul_okint(a), c.mul_okint(b));
            // max{1, |a|} <= |b|, otherwise J(a, b) = (−b, a)
            let y_flipped = a.norm() > b.norm() || b.is_zero();
            let (an, bn) = if y_flipped { (-b, a.clone()) } else { (a.clone(), b.clone()) };
            let n = target_matrix_rational(&an, &bn)?;
            let yn = Point2::new(c.mul_okint(&an), c.mul_okint(&bn));
            for k in 1..top {
                let g = gamma_rational(&run.exp_z, &n, k, &zn, &yn)?;
                run.records.push(denormalize(g, z_flipped, y_flipped, &z, &y));
            }
            run.y = y;
            run.y_flipped = y_flipped;
            run.slope = Some((an, bn));
        }
        TargetInput::Point { y1, y2 } => {
            let u1 = y1.eval(ring, prec)?;
            let u2 = y2.eval(ring, prec)?;
            let y = point(&u1, &u2, prec);
            let (_, y_flipped) = normalize_slope(&y)?;
            let (t1, t2) = if y_flipped { flip(&u1, &u2) } else { (u1, u2) };
            let yn = point(&t1, &t2, prec);
            let exp_y = expand_slope(&t1, &t2, spec.depth_y, prec)?;
            if exp_y.terminated() {
                return Err(Error::Domain(format!(
                    "target slope lies in K (expansion stops after {} terms)",
                    exp_y.len()
                )));
            }
            let r1 = constants(ring).map_or(1, |c| c.r1);
            let e = spec.omega.powi(r1 as i32 - 1);
            for (j, k) in select_indices(&run.exp_z, &exp_y) {
                let g = gamma_irrational(&run.exp_z, &exp_y, j, k, &zn, &yn, e)?;
                run.records.push(denormalize(g, z_flipped, y_flipped, &z, &y));
            }
            run.y = y;
            run.y_flipped = y_flipped;
            run.exp_y = Some(exp_y);
        }
    }
    Ok(run)
}

/// Builds every `γ` for the configured target under the precision policy.
pub fn run_orbit(spec: &OrbitSpec, policy: PrecisionPolicy) -> Result<OrbitRun> {
    if spec.depth < 2 {
        return Err(Error::Domain("depth must be at least 2".into()));
    }
    if !(spec.omega > 1.0) {
        return Err(Error::Domain(format!("omega must exceed 1, got {}", spec.omega)));
    }
    policy.run(|prec| run_at(spec, prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Expr {
        Expr::parse(s).unwrap()
    }

    #[test]
    fn origin_heights_increase() {
        let spec = OrbitSpec::new(Ring::D1, e("sqrt(2)"), e("1"), TargetInput::Origin, 41);
        let run = run_orbit(&spec, PrecisionPolicy::default()).unwrap();
        assert_eq!(run.records.len(), 40);
        for w in run.records.windows(2) {
            assert!(w[0].height_f64() < w[1].height_f64());
        }
    }

    #[test]
    fn flipped_start_point_keeps_error() {
        // slope 2√2 > 1 is normalized by J
        let spec = OrbitSpec::new(Ring::D1, e("2*sqrt(2)"), e("1"), TargetInput::Origin, 20);
        let run = run_orbit(&spec, PrecisionPolicy::default()).unwrap();
        assert!(run.z_flipped);
        for g in &run.records {
            assert!(g.det_ok());
            assert!(g.residual.agree);
            let direct = g.gamma.apply(&run.z).sup_norm();
            assert!(direct.overlaps(&g.err));
        }
    }

    #[test]
    fn rational_target_flipped() {
        let r = Ring::D1;
        let t = TargetInput::Rational {
            a: OKInt::new(2, 1, r),
            b: OKInt::new(1, 0, r),
            scale: e("1/3"),
        };
        let spec = OrbitSpec::new(r, e("pi"), e("1 + sqrt(-5)/4"), t, 30);
        let run = run_orbit(&spec, PrecisionPolicy::default()).unwrap();
        assert!(run.y_flipped);
        assert_eq!(run.slope, Some((OKInt::new(-1, 0, r), OKInt::new(2, 1, r))));
        for g in &run.records {
            assert!(g.det_ok() && g.residual.agree && g.lambda2_factor_ok);
            let direct = g.gamma.apply(&run.z).sub(&run.y).sup_norm();
            assert!(direct.overlaps(&g.err));
        }
        let last = run.records.last().unwrap();
        assert!(last.err_f64() < 1e-10);
    }

    #[test]
    fn rational_target_slope_not_in_k() {
        let spec = OrbitSpec::new(
            Ring::D1,
            e("sqrt(2)"),
            e("1"),
            TargetInput::Point { y1: e("1"), y2: e("3") },
            20,
        );
        assert!(matches!(run_orbit(&spec, PrecisionPolicy::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn irrational_target_pairs() {
        let spec = OrbitSpec::new(
            Ring::D3,
            e("sqrt(2) + pi*i/7"),
            e("1"),
            TargetInput::Point { y1: e("sqrt(3)"), y2: e("2 + i/3") },
            60,
        );
        let run = run_orbit(&spec, PrecisionPolicy::default()).unwrap();
        assert!(!run.records.is_empty());
        for g in &run.records {
            assert!(g.det_ok() && g.residual.agree && g.lambda2_factor_ok && g.height_lower_ok);
        }
    }
}
