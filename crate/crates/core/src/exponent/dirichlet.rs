//! Exhaustive search for the best homogeneous approximation `|qz − p|` with
//! `0 < |q| <= Q`. The cost is `Θ(Q²)` ring elements.

use super::estimate::linear_fit;
use crate::error::{Error, Result};
use crate::field::{OKInt, PComplex, Ring};
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fractional bits of the fixed-point scan.
const FRAC: i64 = 48;

#[derive(Clone, Debug, PartialEq)]
pub struct DirichletHit {
    pub q: OKInt,
    pub p: OKInt,
    /// `|qz − p|`
    pub err: f64,
    pub scanned: u64,
}

/// Every `q ≠ 0` with `N(q) <= Q²`, as basis coordinates.
pub fn lattice_ball(ring: Ring, q_max: f64) -> Vec<(i64, i64)> {
    let tr = ring.trace();
    let nm = ring.norm_omega();
    let disc = ring.disc() as f64;
    let r2 = q_max * q_max;
    // a² + tr·ab + nm·b² = (a + tr·b/2)² + disc·b²/4
    let bmax = (2.0 * q_max / disc.sqrt()).floor() as i64 + 1;
    let mut out = Vec::new();
    for b in -bmax..=bmax {
        let rest = r2 - disc * (b * b) as f64 / 4.0;
        if rest < 0.0 {
            continue;
        }
        let c = -(tr * b) as f64 / 2.0;
        let w = rest.sqrt();
        for a in (c - w).floor() as i64 - 1..=(c + w).ceil() as i64 + 1 {
            let n = a * a + tr * a * b + nm * b * b;
            if n > 0 && (n as f64) <= r2 {
                out.push((a, b));
            }
        }
    }
    out
}

struct Fixed {
    tr: i128,
    nm: i128,
    zx: i128,
    zy: i128,
}

impl Fixed {
    fn new(z: &PComplex) -> Result<Self> {
        let (x, y) = z.mid();
        let conv = |d: &crate::field::Dyadic| {
            d.mul_pow2(FRAC)
                .round_to_int()
                .to_i128()
                .filter(|v| v.unsigned_abs() < 1u128 << 100)
                .ok_or_else(|| Error::Domain("z too large for the fixed-point scan".into()))
        };
        Ok(Fixed {
            tr: z.ring().trace() as i128,
            nm: z.ring().norm_omega() as i128,
            zx: conv(x)?,
            zy: conv(y)?,
        })
    }

    /// `(qz − p, N(qz − p))` minimized over `p`, in fixed point.
    fn best(&self, a: i64, b: i64) -> (i64, i64, i128) {
        let (a, b) = (a as i128, b as i128);
        // (a + bω)(x + yω) with ω² = tr·ω − nm
        let wx = a * self.zx - self.nm * b * self.zy;
        let wy = a * self.zy + b * self.zx + self.tr * b * self.zy;
        let one = 1i128 << FRAC;
        let half = one >> 1;
        let (ra, rb) = ((wx + half) >> FRAC, (wy + half) >> FRAC);
        let mut best = (0i64, 0i64, i128::MAX);
        for db in -2..=2 {
            for da in -2..=2 {
                let (pa, pb) = (ra + da, rb + db);
                let u = wx - pa * one;
                let v = wy - pb * one;
                let n = u * u + self.tr * u * v + self.nm * v * v;
                let cand = (pa as i64, pb as i64, n);
                if n < best.2 || (n == best.2 && (cand.0, cand.1) < (best.0, best.1)) {
                    best = cand;
                }
            }
        }
        best
    }
}

fn scan_fixed(z: &PComplex, ball: &[(i64, i64)]) -> Result<DirichletHit> {
    let f = Fixed::new(z)?;
    let ring = z.ring();
    let norm = |a: i64, b: i64| a * a + ring.trace() * a * b + ring.norm_omega() * b * b;
    let mut best: Option<((i64, i64), (i64, i64), i128)> = None;
    for &(a, b) in ball {
        let (pa, pb, n) = f.best(a, b);
        let better = match best {
            None => true,
            // ties go to the smaller |q|, then lexicographic
            Some((q, _, bn)) => {
                n < bn || (n == bn && (norm(a, b), (a, b)) < (norm(q.0, q.1), q))
            }
        };
        if better {
            best = Some(((a, b), (pa, pb), n));
        }
    }
    let ((a, b), (pa, pb), _) = best.ok_or_else(|| Error::Domain("empty scan".into()))?;
    let q = OKInt::new(a, b, ring);
    let p = OKInt::new(pa, pb, ring);
    let err = z.mul_okint(&q).sub(&PComplex::from_okint(&p, z.prec())).abs_f64();
    Ok(DirichletHit {
        q,
        p,
        err,
        scanned: ball.len() as u64,
    })
}

/// Best `(q, p)` over `0 < |q| <= Q`, `p` the nearest ring element to `qz`.
pub fn dirichlet_search(z: &PComplex, q_max: f64) -> Result<DirichletHit> {
    if q_max < 2.0 {
        return Err(Error::Domain(format!("Q must be at least 2, got {q_max}")));
    }
    scan_fixed(z, &lattice_ball(z.ring(), q_max))
}

/// Re-scan of the same ball in a seeded shuffled order, evaluated in `f64`
/// on rectangular coordinates. Returns the minimal error found.
pub fn dirichlet_rescan_shuffled(z: &PComplex, q_max: f64, seed: u64) -> f64 {
    let ring = z.ring();
    let mut ball = lattice_ball(ring, q_max);
    ball.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let (zr, zi) = (z.re_f64(), z.im_f64());
    let om = ring.omega();
    let w = PComplex::from_okint(&om, 64);
    let (wr, wi) = (w.re_f64(), w.im_f64());
    let mut best = f64::INFINITY;
    for (a, b) in ball {
        let qr = a as f64 + b as f64 * wr;
        let qi = b as f64 * wi;
        let (xr, xi) = (qr * zr - qi * zi, qr * zi + qi * zr);
        // nearest lattice point: b' from the imaginary part, then a'
        let bc = (xi / wi).round() as i64;
        for pb in bc - 2..=bc + 2 {
            let ac = (xr - pb as f64 * wr).round() as i64;
            for pa in ac - 2..=ac + 2 {
                let dr = xr - (pa as f64 + pb as f64 * wr);
                let di = xi - pb as f64 * wi;
                best = best.min((dr * dr + di * di).sqrt());
            }
        }
    }
    best
}

#[derive(Clone, Debug)]
pub struct DirichletProfile {
    pub rows: Vec<(f64, DirichletHit)>,
    /// Slope of `ln err` against `ln Q`.
    pub slope: f64,
}

pub fn dirichlet_profile(z: &PComplex, qs: &[f64]) -> Result<DirichletProfile> {
    let rows = qs
        .iter()
        .map(|&q| dirichlet_search(z, q).map(|h| (q, h)))
        .collect::<Result<Vec<_>>>()?;
    let slope = if rows.len() >= 2 && rows.iter().all(|r| r.1.err > 0.0) {
        let xs: Vec<f64> = rows.iter().map(|r| r.0.ln()).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.1.err.ln()).collect();
        linear_fit(&xs, &ys).1
    } else {
        f64::NAN
    };
    Ok(DirichletProfile { rows, slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Expr;

    fn ball(src: &str, ring: Ring) -> PComplex {
        Expr::parse(src).unwrap().eval_ball(ring, 256).unwrap()
    }

    #[test]
    fn ball_counts_match_brute_force() {
        for r in Ring::ALL {
            let got = lattice_ball(r, 7.5);
            let mut brute = 0;
            for a in -30i64..=30 {
                for b in -30i64..=30 {
                    let n = OKInt::new(a, b, r).norm();
                    if n > 0.into() && n <= 56.into() {
                        brute += 1;
                    }
                }
            }
            assert_eq!(got.len(), brute, "{r:?}");
        }
    }

    #[test]
    fn ring_element_is_hit_exactly() {
        let z = ball("2 - 3i", Ring::D1);
        let h = dirichlet_search(&z, 4.0).unwrap();
        assert_eq!(h.err, 0.0);
        assert_eq!(h.q.norm(), 1.into());
    }

    #[test]
    fn sqrt_two_at_sixty_four() {
        let z = ball("sqrt(2)", Ring::D1);
        let h = dirichlet_search(&z, 64.0).unwrap();
        // pigeonhole on ℂ/ℤ[i] with Q² boxes: err <= √2/Q
        assert!(h.err <= 2f64.sqrt() / 64.0);
        assert!(h.err * (h.q.norm().to_string().parse::<f64>().unwrap()).sqrt() <= 1.0);
        let re = dirichlet_rescan_shuffled(&z, 64.0, 3);
        assert!((re - h.err).abs() <= 1e-6 * h.err);
    }

    #[test]
    fn rescan_agrees_in_every_ring() {
        for r in Ring::ALL {
            let z = ball("pi/3 + sqrt(7)*i/5", r);
            let h = dirichlet_search(&z, 40.0).unwrap();
            let re = dirichlet_rescan_shuffled(&z, 40.0, 11);
            assert!((re - h.err).abs() <= 1e-6 * h.err, "{r:?}: {} vs {}", h.err, re);
        }
    }

    #[test]
    fn profile_slope() {
        let z = ball("pi/3 + sqrt(7)*i/5", Ring::D1);
        let qs: Vec<f64> = (3..=9).map(|e| 2f64.powi(e)).collect();
        let prof = dirichlet_profile(&z, &qs).unwrap();
        assert!(prof.slope <= -0.8, "slope {}", prof.slope);
    }
}
