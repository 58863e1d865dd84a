use crate::cf::CFExpansion;
use num_bigint::BigInt;

/// Pairs `(j, k)` with `|q_{k−1}|^(1/3) < |s_j| <= |q_k|^(1/3) < |s_{j+1}|`,
/// decided exactly on norms: `N(q_{k−1}) < N(s_j)³ <= N(q_k) < N(s_{j+1})³`.
///
/// `q` are the denominators of `exp_z`, `s` those of `exp_y`; `k >= 1` and
/// `j + 1` must lie in the available depth. Sorted by `(k, j)`.
pub fn select_indices(exp_z: &CFExpansion, exp_y: &CFExpansion) -> Vec<(usize, usize)> {
    let qn: Vec<BigInt> = (0..exp_z.len() as i64)
        .map(|k| exp_z.q(k).expect("in range").norm())
        .collect();
    let s3: Vec<BigInt> = (0..exp_y.len() as i64)
        .map(|j| {
            let n = exp_y.q(j).expect("in range").norm();
            &n * &n * &n
        })
        .collect();
    let mut out = Vec::new();
    for k in 1..qn.len() {
        for j in 0..s3.len().saturating_sub(1) {
            if qn[k - 1] < s3[j] && s3[j] <= qn[k] && qn[k] < s3[j + 1] {
                out.push((j, k));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{expand_expr, PrecisionPolicy};
    use crate::field::{Expr, Ring};

    fn exp(src: &str, ring: Ring, n: usize) -> CFExpansion {
        expand_expr(&Expr::parse(src).unwrap(), ring, n, PrecisionPolicy::default()).unwrap()
    }

    /// Independent scan: compares `|q|²` against `|s|⁶` via `pow`.
    fn brute(ez: &CFExpansion, ey: &CFExpansion) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for j in 0..ey.len() {
            for k in 0..ez.len() {
                if k == 0 || j + 1 >= ey.len() {
                    continue;
                }
                let q0 = ez.q(k as i64 - 1).unwrap().norm();
                let q1 = ez.q(k as i64).unwrap().norm();
                let s0 = ey.q(j as i64).unwrap().norm().pow(3);
                let s1 = ey.q(j as i64 + 1).unwrap().norm().pow(3);
                if q0 < s0 && s0 <= q1 && q1 < s1 {
                    v.push((j, k));
                }
            }
        }
        v.sort_by_key(|&(j, k)| (k, j));
        v
    }

    #[test]
    fn sqrt2_sqrt3_matches_scan() {
        let ez = exp("sqrt(2)", Ring::D1, 40);
        let ey = exp("sqrt(3)", Ring::D1, 40);
        let got = select_indices(&ez, &ey);
        assert!(!got.is_empty());
        assert_eq!(got, brute(&ez, &ey));
    }

    #[test]
    fn admissible_k_contiguous_per_j() {
        for (zs, ys) in [("pi + sqrt(-2)", "sqrt(5)/3 - i/7"), ("sqrt(7) - i", "sqrt(11)/2 + pi*i/5")] {
            let ez = exp(zs, Ring::D3, 60);
            let ey = exp(ys, Ring::D3, 30);
            let got = select_indices(&ez, &ey);
            assert_eq!(got, brute(&ez, &ey));
            for j in 0..ey.len() {
                let ks: Vec<usize> = got.iter().filter(|p| p.0 == j).map(|p| p.1).collect();
                if let (Some(a), Some(b)) = (ks.first(), ks.last()) {
                    assert_eq!(ks.len(), b - a + 1);
                }
            }
        }
    }
}
