//! One record per index of an expansion, for JSON-lines output.

use super::CFExpansion;
use crate::field::PReal;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DumpRecord {
    pub n: usize,
    pub a: [String; 2],
    pub p: [String; 2],
    pub q: [String; 2],
    /// `q_n p_{n−1} − p_n q_{n−1}` as a coefficient pair.
    pub det: [String; 2],
    pub abs_q: String,
    pub abs_eps: String,
    pub terminated: bool,
}

/// Decimals are rounded half-even to `digits` significant digits.
pub fn dump_records(exp: &CFExpansion, digits: usize) -> Vec<DumpRecord> {
    let prec = exp.prec();
    (0..exp.len())
        .map(|n| {
            let k = n as i64;
            let q = exp.q(k).expect("in range");
            let abs_q = PReal::from_int(q.norm(), prec).sqrt().expect("norm >= 0");
            let eps = exp.eps(k).expect("in range");
            let abs_eps = if eps.is_exact() && eps.contains_zero() {
                PReal::zero(prec)
            } else {
                eps.abs()
            };
            DumpRecord {
                n,
                a: exp.a(n).coeff_strings(),
                p: exp.p(k).expect("in range").coeff_strings(),
                q: q.coeff_strings(),
                det: exp.determinant(k).expect("in range").coeff_strings(),
                abs_q: abs_q.to_sci_string(digits),
                abs_eps: abs_eps.to_sci_string(digits),
                terminated: exp.terminated() && n + 1 == exp.len(),
            }
        })
        .collect()
}
