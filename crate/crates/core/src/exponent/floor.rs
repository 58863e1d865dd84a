//! Exhaustive check that no `γ` of small height beats the residual floor
//! `|γz − y| >= |z2/(3b)|/|q_k|` for target points with slope `a/b ∈ K`.

use crate::cf::{constants, PrecisionPolicy};
use crate::error::{Error, Result};
use crate::field::{extended_gcd, Dyadic, Expr, KRat, OKInt, PComplex, PReal, Ring};
use crate::matrix::{expand_slope, flip, normalize_slope, Mat2, OrbitSpec, Point2, TargetInput};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Ring elements with `|x| <= H`, zero included, in lexicographic order.
pub fn small_elements(ring: Ring, h: u32) -> Vec<OKInt> {
    let h2 = BigInt::from(h) * h;
    let disc = ring.disc() as f64;
    let bmax = (2.0 * h as f64 / disc.sqrt()).ceil() as i64 + 1;
    let amax = h as i64 + bmax + 1;
    let mut out = Vec::new();
    for a in -amax..=amax {
        for b in -bmax..=bmax {
            let x = OKInt::new(a, b, ring);
            if x.norm() <= h2 {
                out.push(x);
            }
        }
    }
    out
}

/// Lower bound on `#{x : |x| <= H}`: the lattice cells meeting the disc of
/// radius `H − diam(cell)` lie inside radius `H`.
fn count_lower_bound(ring: Ring, h: u32) -> u128 {
    let area = (ring.disc() as f64).sqrt() / 2.0;
    let diam = 1.0 + (ring.norm_omega() as f64).sqrt();
    let r = h as f64 - diam;
    if r <= 0.0 {
        0
    } else {
        (std::f64::consts::PI * r * r / area).floor() as u128
    }
}

/// Lattice points `t` with `|t − c| <= r`, found from a bounding box and an
/// exact distance test against `r² = r2`.
fn lattice_disc(c: &KRat, r2: &BigRational) -> Vec<OKInt> {
    let ring = c.ring();
    let cx = c.x().to_f64().expect("finite");
    let cy = c.y().to_f64().expect("finite");
    let r = r2.to_f64().expect("finite").sqrt();
    let disc = ring.disc() as f64;
    let db = (2.0 * r / disc.sqrt()).ceil() as i64 + 1;
    let tr = ring.trace() as f64;
    let mut out = Vec::new();
    for b in (cy.floor() as i64 - db)..=(cy.ceil() as i64 + db) {
        // real part offset of b·ω relative to the centre
        let ac = cx + tr * (cy - b as f64) / 2.0;
        let da = r.ceil() as i64 + 1;
        for a in (ac.floor() as i64 - da)..=(ac.ceil() as i64 + da) {
            let t = OKInt::new(a, b, ring);
            let d = KRat::from_okint(&t).sub(c);
            if &d.norm() <= r2 {
                out.push(t);
            }
        }
    }
    out
}

/// Every `γ ∈ SL₂(O_K)` with `|γ| <= H`: each coprime bottom row `(v2, u2)`
/// with a particular top row from the extended gcd, then all translates
/// `(v1 + t v2, u1 + t u2)` that stay in the ball.
pub fn enumerate_sl2(ring: Ring, h: u32, budget: u128) -> Result<(Vec<Mat2>, u128)> {
    // reject before listing the ball when even the lower bound is too big
    let lo = count_lower_bound(ring, h);
    let needed = lo.saturating_mul(lo).saturating_mul(lo);
    if needed > budget {
        return Err(Error::EnumerationBudgetExceeded { needed, budget });
    }
    let elems = small_elements(ring, h);
    let n = elems.len() as u128;
    // translates per row are bounded by the disc count at |w| = 1
    let per_row = lattice_disc(&KRat::zero(ring), &BigRational::from_integer((h * h).into())).len() as u128;
    let needed = n * n * per_row;
    if needed > budget {
        return Err(Error::EnumerationBudgetExceeded { needed, budget });
    }
    let h2 = BigInt::from(h) * h;
    let mut out = Vec::new();
    let mut tried: u128 = 0;
    for v2 in &elems {
        for u2 in &elems {
            if v2.is_zero() && u2.is_zero() {
                continue;
            }
            let (g, x, y) = extended_gcd(u2, v2);
            if !g.is_unit() {
                continue;
            }
            let ginv = g.conj();
            // v1·u2 − u1·v2 = (x·u2 + y·v2)·g⁻¹ = 1
            let v1 = &x * &ginv;
            let u1 = -(&y * &ginv);
            let (w, base) = if v2.norm() >= u2.norm() { (v2, &v1) } else { (u2, &u1) };
            let centre = KRat::from_ratio(base, w)?.neg();
            let r2 = BigRational::new(h2.clone(), w.norm());
            for t in lattice_disc(&centre, &r2) {
                tried += 1;
                let a = &v1 + &(&t * v2);
                let b = &u1 + &(&t * u2);
                if a.norm() <= h2 && b.norm() <= h2 {
                    let m = Mat2::new(a, b, v2.clone(), u2.clone());
                    debug_assert!(m.is_sl2());
                    out.push(m);
                }
            }
        }
    }
    Ok((out, tried))
}

#[derive(Clone, Debug)]
pub struct FloorRow {
    pub k: usize,
    /// `factor·|z2/(3b)|/|q_k|`
    pub floor: PReal,
    /// Smallest `|γz − y|` over the enumerated matrices (lower end of its ball).
    pub min_err: Dyadic,
    /// `min_err / floor`
    pub margin: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct FloorReport {
    pub h: u32,
    pub factor: f64,
    pub matrices: usize,
    pub candidates: u128,
    /// The matrix achieving the smallest residual.
    pub best: Option<Mat2>,
    /// Rows for each `k` with `|y2/(3 C1 z2)|·|q_k q_{k+1}| >= H`.
    pub rows: Vec<FloorRow>,
}

impl FloorReport {
    pub fn pass(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| r.pass)
    }

    pub fn tightest_margin(&self) -> f64 {
        self.rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Debug)]
pub struct FloorSpec {
    pub ring: Ring,
    pub z1: Expr,
    pub z2: Expr,
    pub a: OKInt,
    pub b: OKInt,
    pub scale: Expr,
    pub h: u32,
    pub depth: usize,
    /// Multiplies the floor; 1 for the check itself.
    pub factor: f64,
    pub budget: u128,
    /// Extra matrices checked alongside the enumeration, in the original
    /// coordinates. Used to plant a known violation.
    pub planted: Vec<Mat2>,
}

impl FloorSpec {
    pub fn new(ring: Ring, z1: Expr, z2: Expr, a: OKInt, b: OKInt, h: u32) -> Self {
        FloorSpec {
            ring,
            z1,
            z2,
            a,
            b,
            scale: Expr::parse("1").expect("literal"),
            h,
            depth: 40,
            factor: 1.0,
            budget: DEFAULT_BUDGET,
            planted: Vec::new(),
        }
    }

    pub fn target(&self) -> TargetInput {
        TargetInput::Rational {
            a: self.a.clone(),
            b: self.b.clone(),
            scale: self.scale.clone(),
        }
    }

    pub fn orbit_spec(&self) -> OrbitSpec {
        OrbitSpec::new(self.ring, self.z1.clone(), self.z2.clone(), self.target(), self.depth)
    }
}

fn check_at(spec: &FloorSpec, mats: &[Mat2], prec: u32) -> Result<FloorReport> {
    let ring = spec.ring;
    let c1 = constants(ring).ok_or(Error::UnsupportedRing(ring.d()))?.c1;
    let v1 = spec.z1.eval(ring, prec)?;
    let v2 = spec.z2.eval(ring, prec)?;
    let z = Point2::new(v1.to_pcomplex(prec), v2.to_pcomplex(prec));
    let (zn, z_flipped) = normalize_slope(&z)?;
    let (w1, w2) = if z_flipped { flip(&v1, &v2) } else { (v1, v2) };
    let exp = expand_slope(&w1, &w2, spec.depth, prec)?;
    // |a| <= |b| after J; the enumerated set is closed under γ ↦ Jγ, γJ
    let (a, b) = if spec.a.norm() > spec.b.norm() || spec.b.is_zero() {
        (-&spec.b, spec.a.clone())
    } else {
        (spec.a.clone(), spec.b.clone())
    };
    let c = spec.scale.eval(ring, prec)?.to_pcomplex(prec);
    let yn = Point2::new(c.mul_okint(&a), c.mul_okint(&b));
    let y = Point2::new(c.mul_okint(&spec.a), c.mul_okint(&spec.b));

    // residuals in the original coordinates; the enumerated set is closed
    // under multiplication by J on either side, so its minimum is unchanged
    let mut min_err: Option<(Dyadic, usize)> = None;
    for (i, m) in mats.iter().chain(&spec.planted).enumerate() {
        let lo = m.apply(&z).sub(&y).sup_norm().lower();
        if min_err.as_ref().is_none_or(|(d, _)| lo < *d) {
            min_err = Some((lo, i));
        }
    }
    let (min_lo, best_i) = min_err.ok_or_else(|| Error::Domain("no matrices enumerated".into()))?;

    let three = PReal::from_int(3, prec);
    let h = PReal::from_int(spec.h, prec);
    let ratio = yn.z2.abs().div(&c1.mul(&three).mul(&zn.z2.abs()))?;
    let b_abs = PComplex::from_okint(&b, prec).abs();
    let base = zn.z2.abs().div(&three.mul(&b_abs))?;
    let factor = PReal::from_f64(spec.factor, prec);
    let qabs = |k: usize| PComplex::from_okint(exp.q(k as i64).expect("in range"), prec).abs();
    let mut rows = Vec::new();
    for k in 1..exp.len().saturating_sub(1) {
        let reach = ratio.mul(&qabs(k)).mul(&qabs(k + 1));
        if !h.certainly_le(&reach) {
            continue;
        }
        let floor = factor.mul(&base).div(&qabs(k))?;
        let pass = floor.upper() <= min_lo;
        let margin = min_lo.to_f64() / floor.to_f64();
        rows.push(FloorRow {
            k,
            floor,
            min_err: min_lo.clone(),
            margin,
            pass,
        });
    }
    Ok(FloorReport {
        h: spec.h,
        factor: spec.factor,
        matrices: mats.len(),
        candidates: 0,
        best: mats.iter().chain(&spec.planted).nth(best_i).cloned(),
        rows,
    })
}

/// The constructed matrix with the smallest residual for the same `z` and
/// target. Its height lies far above `H`, so planting it must break the check.
pub fn planted_violation(spec: &FloorSpec, policy: PrecisionPolicy) -> Result<Mat2> {
    let run = crate::matrix::run_orbit(&spec.orbit_spec(), policy)?;
    run.records
        .iter()
        .min_by(|a, b| a.err_f64().total_cmp(&b.err_f64()))
        .map(|g| g.gamma.clone())
        .ok_or_else(|| Error::InsufficientData("no constructed matrices".into()))
}

/// Enumerates `|γ| <= H` and compares the smallest residual against the floor
/// for every `k` whose height threshold covers `H`.
pub fn residual_floor_check(spec: &FloorSpec, policy: PrecisionPolicy) -> Result<FloorReport> {
    if spec.h == 0 {
        return Err(Error::Domain("H must be positive".into()));
    }
    constants(spec.ring).ok_or(Error::UnsupportedRing(spec.ring.d()))?;
    let (mats, tried) = enumerate_sl2(spec.ring, spec.h, spec.budget)?;
    let mut rep = policy.run(|prec| check_at(spec, &mats, prec))?;
    rep.candidates = tried;
    Ok(rep)
}
