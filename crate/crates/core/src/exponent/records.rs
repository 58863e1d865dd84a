use crate::error::{Error, Result};
use crate::field::{PReal, Ring};
use crate::matrix::{GammaResult, TargetClass};

/// One approximation event: a matrix of height `|γ|` reaching the target
/// within `|γz − y|`.
#[derive(Clone, Debug)]
pub struct OrbitRecord {
    pub class: TargetClass,
    pub d: u32,
    pub k: usize,
    pub j: Option<usize>,
    pub ell: String,
    pub height: PReal,
    pub err: PReal,
    pub predicted: f64,
    pub measured_constant: f64,
    /// Natural logarithms of the midpoints, used by the estimators.
    pub ln_height: f64,
    pub ln_err: f64,
}

impl OrbitRecord {
    pub fn new(class: TargetClass, ring: Ring, k: usize, height: PReal, err: PReal) -> Result<Self> {
        if height.upper() < crate::field::Dyadic::one() {
            return Err(Error::Domain(format!("height {} below 1", height.to_f64())));
        }
        if err.upper().is_negative() {
            return Err(Error::Domain("negative error".into()));
        }
        let ln_height = height.log2_mid() * std::f64::consts::LN_2;
        let ln_err = err.log2_mid() * std::f64::consts::LN_2;
        Ok(OrbitRecord {
            class,
            d: ring.d(),
            k,
            j: None,
            ell: String::new(),
            height,
            err,
            predicted: f64::NAN,
            measured_constant: f64::NAN,
            ln_height,
            ln_err,
        })
    }

    pub fn from_gamma(g: &GammaResult) -> Result<Self> {
        let mut r = OrbitRecord::new(g.class, g.gamma.ring(), g.k, g.height.clone(), g.err.clone())?;
        r.j = g.j;
        r.ell = g.ell.to_string();
        r.predicted = g.predicted;
        r.measured_constant = g.measured_constant;
        Ok(r)
    }

    /// Synthetic record from plain numbers (estimator self-tests).
    pub fn synthetic(height: f64, err: f64) -> Result<Self> {
        OrbitRecord::new(
            TargetClass::Origin,
            Ring::D1,
            0,
            PReal::from_f64(height, 64),
            PReal::from_f64(err, 64),
        )
    }

    /// `−ln|γz − y| / ln|γ|`
    pub fn exponent(&self) -> f64 {
        -self.ln_err / self.ln_height
    }

    pub fn usable(&self) -> bool {
        self.ln_height > 0.0 && self.ln_err.is_finite()
    }
}
