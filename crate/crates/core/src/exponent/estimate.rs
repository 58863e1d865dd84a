//! Windowed surrogates for the asymptotic exponents: a top-window maximum for
//! "infinitely many solutions" and a tail-grid minimum for "all large `T`".

use super::records::OrbitRecord;
use crate::error::{Error, Result};

/// Least squares `y = a + b·x`; returns `(a, b, rms residual)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - a - b * x).powi(2)).sum();
    (a, b, (rss / n).sqrt())
}

#[derive(Clone, Debug)]
pub struct MuEstimate {
    /// Max of `−ln err / ln height` over the top window.
    pub mu: f64,
    /// Window width in decades of height.
    pub window_decades: f64,
    pub window_len: usize,
    /// Smallest `ln height` inside the window.
    pub window_ln_start: f64,
    /// `−slope` of the least squares fit of `ln err` against `ln height` over all records.
    pub fit_mu: f64,
    pub fit_rms: f64,
    pub n_records: usize,
}

fn usable(records: &[OrbitRecord]) -> Result<Vec<&OrbitRecord>> {
    let v: Vec<&OrbitRecord> = records.iter().filter(|r| r.usable()).collect();
    let mut hs: Vec<f64> = v.iter().map(|r| r.ln_height).collect();
    hs.sort_by(f64::total_cmp);
    hs.dedup();
    if hs.len() < 10 {
        return Err(Error::InsufficientData(format!(
            "{} distinct heights, need at least 10",
            hs.len()
        )));
    }
    Ok(v)
}

pub fn estimate_mu(records: &[OrbitRecord], window_decades: f64) -> Result<MuEstimate> {
    let v = usable(records)?;
    let top = v.iter().map(|r| r.ln_height).fold(f64::NEG_INFINITY, f64::max);
    let lo = top - window_decades * std::f64::consts::LN_10;
    let window: Vec<&&OrbitRecord> = v.iter().filter(|r| r.ln_height >= lo).collect();
    let mu = window
        .iter()
        .map(|r| r.exponent())
        .fold(f64::NEG_INFINITY, f64::max);
    let window_ln_start = window
        .iter()
        .map(|r| r.ln_height)
        .fold(f64::INFINITY, f64::min);
    let xs: Vec<f64> = v.iter().map(|r| r.ln_height).collect();
    let ys: Vec<f64> = v.iter().map(|r| r.ln_err).collect();
    let (_, b, rms) = linear_fit(&xs, &ys);
    Ok(MuEstimate {
        mu,
        window_decades,
        window_len: window.len(),
        window_ln_start,
        fit_mu: -b,
        fit_rms: rms,
        n_records: v.len(),
    })
}

#[derive(Clone, Debug)]
pub struct TRow {
    pub ln_t: f64,
    /// Smallest error among records with height at most `T`.
    pub best_ln_err: Option<f64>,
    /// `−ln best / ln T`
    pub exponent: Option<f64>,
    pub in_tail: bool,
}

#[derive(Clone, Debug)]
pub struct MuHatEstimate {
    pub mu_hat: f64,
    pub table: Vec<TRow>,
    /// Fraction of `ln T_max` where the tail starts.
    pub tail_fraction: f64,
    pub warnings: Vec<String>,
}

/// Grid `T_i = h_min·2^i` up to the largest height.
pub fn geometric_grid(records: &[OrbitRecord]) -> Vec<f64> {
    let hs = records.iter().filter(|r| r.usable()).map(|r| r.ln_height);
    let lo = hs.clone().fold(f64::INFINITY, f64::min);
    let hi = hs.fold(f64::NEG_INFINITY, f64::max);
    let step = std::f64::consts::LN_2;
    let mut grid = Vec::new();
    let mut t = lo;
    while t <= hi + 1e-12 {
        grid.push(t);
        t += step;
    }
    grid
}

/// Consecutive tail grid points sharing one best record before a stream counts as sparse.
pub const SPARSE_RUN: usize = 10;

pub fn estimate_mu_hat(records: &[OrbitRecord], ln_grid: &[f64], tail_fraction: f64) -> Result<MuHatEstimate> {
    let mut v = usable(records)?;
    v.sort_by(|a, b| a.ln_height.total_cmp(&b.ln_height));
    let top = v.last().expect("nonempty").ln_height;
    let mut warnings = Vec::new();
    let mut table = Vec::with_capacity(ln_grid.len());
    let mut idx = 0;
    let mut best: Option<(f64, usize)> = None;
    let mut run = 0usize;
    let mut worst_run = 0usize;
    for &ln_t in ln_grid {
        while idx < v.len() && v[idx].ln_height <= ln_t + 1e-12 {
            if best.is_none_or(|(b, _)| v[idx].ln_err < b) {
                best = Some((v[idx].ln_err, idx));
                run = 0;
            }
            idx += 1;
        }
        let in_tail = ln_t >= tail_fraction * top && ln_t > 0.0;
        if in_tail {
            run += 1;
            worst_run = worst_run.max(run);
        }
        let best_ln_err = best.map(|b| b.0);
        let exponent = best_ln_err.filter(|_| ln_t > 0.0).map(|b| -b / ln_t);
        table.push(TRow {
            ln_t,
            best_ln_err,
            exponent,
            in_tail,
        });
    }
    let missing = table.iter().filter(|r| r.best_ln_err.is_none()).count();
    if missing > 0 {
        warnings.push(format!("{missing} grid points below the smallest height were excluded"));
    }
    if worst_run >= SPARSE_RUN {
        warnings.push(format!(
            "sparse stream: one record is the best for {worst_run} consecutive tail grid points"
        ));
    }
    let mu_hat = table
        .iter()
        .filter(|r| r.in_tail)
        .filter_map(|r| r.exponent)
        .fold(f64::INFINITY, f64::min);
    if !mu_hat.is_finite() {
        return Err(Error::InsufficientData("no tail grid points".into()));
    }
    Ok(MuHatEstimate {
        mu_hat,
        table,
        tail_fraction,
        warnings,
    })
}

#[derive(Clone, Debug)]
pub struct ExponentReport {
    pub mu: MuEstimate,
    pub mu_hat: MuHatEstimate,
}

impl ExponentReport {
    pub fn build(records: &[OrbitRecord], window_decades: f64, tail_fraction: f64) -> Result<Self> {
        let mu = estimate_mu(records, window_decades)?;
        let grid = geometric_grid(records);
        let mu_hat = estimate_mu_hat(records, &grid, tail_fraction)?;
        Ok(ExponentReport { mu, mu_hat })
    }

    /// `μ̂ <= μ + tol`
    pub fn consistent(&self, tol: f64) -> bool {
        self.mu_hat.mu_hat <= self.mu.mu + tol
    }
}
