use super::bounds::exact_ratio;
use crate::cf::PrecisionPolicy;
use crate::error::{Error, Result};
use crate::field::{Expr, OKInt, PComplex, PReal, Ring};
use crate::matrix::{run_orbit, OrbitSpec, TargetInput};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug)]
pub struct InhomHit {
    pub q: OKInt,
    pub p: OKInt,
    /// `|qξ + p − y|`
    pub err: PReal,
    /// `|γ|` of the matrix the row came from, and `|γ|²` exactly.
    pub height: PReal,
    pub height_norm: BigInt,
    pub k: usize,
}

impl InhomHit {
    /// `max{|p|, |q|} <= |γ| <= T`, exact.
    pub fn within_cap(&self, t: f64) -> bool {
        let t2 = exact_ratio(t) * exact_ratio(t);
        let h = BigRational::from_integer(self.height_norm.clone());
        self.q.norm() <= self.height_norm && self.p.norm() <= self.height_norm && h <= t2
    }
}

/// `(q, p)` with `max{|p|, |q|} <= T` and small `|qξ + p − y|`, read off the
/// first row of the rational-slope construction for `z = (ξ, 1)`, `y = (y, y)`.
/// Among the constructed matrices of height at most `T` the one with the
/// smallest residual is used.
pub fn inhomogeneous_pair(
    ring: Ring,
    xi: &Expr,
    y: &Expr,
    t: f64,
    depth: usize,
    policy: PrecisionPolicy,
) -> Result<InhomHit> {
    let target = TargetInput::Rational {
        a: OKInt::one(ring),
        b: OKInt::one(ring),
        scale: y.clone(),
    };
    let spec = OrbitSpec::new(ring, xi.clone(), Expr::parse("1")?, target, depth);
    let run = run_orbit(&spec, policy)?;
    let cap = PReal::from_f64(t, run.prec);
    let best = run
        .records
        .iter()
        .filter(|g| g.height.certainly_le(&cap))
        .min_by(|a, b| a.err_f64().total_cmp(&b.err_f64()))
        .ok_or_else(|| Error::InsufficientData(format!("no constructed matrix has height <= {t}")))?;
    let prec = run.prec;
    let xi_b = xi.eval(ring, prec)?.to_pcomplex(prec);
    let y_b = y.eval(ring, prec)?.to_pcomplex(prec);
    let (q, p) = (best.gamma.v1.clone(), best.gamma.u1.clone());
    let err = xi_b
        .mul_okint(&q)
        .add(&PComplex::from_okint(&p, prec))
        .sub(&y_b)
        .abs();
    Ok(InhomHit {
        q,
        p,
        err,
        height: best.height.clone(),
        height_norm: best.gamma.height_norm(),
        k: best.k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::{dirichlet_search, estimate::linear_fit};

    fn e(s: &str) -> Expr {
        Expr::parse(s).unwrap()
    }

    #[test]
    fn rows_respect_height_cap() {
        for t in [1e3, 1e6, 1e9, 1e12] {
            let h = inhomogeneous_pair(Ring::D1, &e("sqrt(2)"), &e("1/3"), t, 40, PrecisionPolicy::default()).unwrap();
            assert!(h.within_cap(t));
        }
    }

    #[test]
    fn exponent_near_one_half() {
        let ts: Vec<f64> = (3..=12).map(|i| 10f64.powi(2 * i)).collect();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &t in &ts {
            let h = inhomogeneous_pair(Ring::D1, &e("sqrt(2)"), &e("1/3"), t, 60, PrecisionPolicy::default()).unwrap();
            xs.push(t.ln());
            ys.push(h.err.to_f64().ln());
        }
        let slope = -linear_fit(&xs, &ys).1;
        assert!(slope >= 0.45, "slope {slope}");
    }

    #[test]
    fn homogeneous_case_matches_dirichlet_scale() {
        // y = 0: the row approximates ξ homogeneously, comparable to the scan
        let xi = e("sqrt(2) + sqrt(3)*i");
        let h = inhomogeneous_pair(Ring::D1, &xi, &e("0"), 1e4, 40, PrecisionPolicy::default()).unwrap();
        let qabs = h.q.norm().to_string().parse::<f64>().unwrap().sqrt().max(2.0) * (1.0 + 1e-9);
        let d = dirichlet_search(&xi.eval_ball(Ring::D1, 128).unwrap(), qabs).unwrap();
        assert!(h.err.to_f64() >= d.err * (1.0 - 1e-9));
        assert!(h.err.to_f64() <= 1e3 * d.err.max(1e-300));
    }
}
