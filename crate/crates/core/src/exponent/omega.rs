use crate::cf::CFExpansion;
use crate::error::{Error, Result};
use crate::field::PReal;

#[derive(Clone, Debug)]
pub struct OmegaEstimate {
    /// Max of `ln|q_{n+1}| / ln|q_n|` over the window.
    pub omega: f64,
    pub argmax: usize,
    pub window_start: usize,
    /// `(n, ln|q_{n+1}| / ln|q_n|)` for every `n` with `|q_n| > 1`.
    pub ratios: Vec<(usize, f64)>,
}

fn ln_abs_q(exp: &CFExpansion, n: usize) -> f64 {
    let norm = exp.q(n as i64).expect("in range").norm();
    // ln|q| = ln N(q) / 2
    PReal::from_int(norm, 64).log2_mid() * std::f64::consts::LN_2 / 2.0
}

/// Growth exponent of the denominators over `n >= window_start`; the default
/// window is the second half of the expansion.
pub fn omega_k_estimate(exp: &CFExpansion, window_start: Option<usize>) -> Result<OmegaEstimate> {
    if exp.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "expansion has {} terms, need at least 10",
            exp.len()
        )));
    }
    let start = window_start.unwrap_or(exp.len() / 2);
    let logs: Vec<f64> = (0..exp.len()).map(|n| ln_abs_q(exp, n)).collect();
    let ratios: Vec<(usize, f64)> = (0..exp.len() - 1)
        .filter(|&n| logs[n] > 0.0)
        .map(|n| (n, logs[n + 1] / logs[n]))
        .collect();
    let (argmax, omega) = ratios
        .iter()
        .filter(|r| r.0 >= start)
        .fold((0, f64::NEG_INFINITY), |acc, &(n, r)| if r > acc.1 { (n, r) } else { acc });
    if !omega.is_finite() {
        return Err(Error::InsufficientData("empty window".into()));
    }
    Ok(OmegaEstimate {
        omega,
        argmax,
        window_start: start,
        ratios,
    })
}
