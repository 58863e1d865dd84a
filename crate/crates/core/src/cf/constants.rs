//! Growth and error constants derived from `(θ, r0)`:
//!
//! - `C0 = r0·θ²/(θ² − 1)`
//! - `C1 = C0 + 1`
//! - `r1` = least positive integer with `C0 / θ^⌊r1/r0⌋ < 1`
//! - `C2 = 1 − C0·θ^(−⌊r1/r0⌋)`

use crate::field::{PReal, Ring, Theta};
use std::cmp::Ordering;

const PREC: u32 = 256;

#[derive(Clone, Debug)]
pub struct CFConstants {
    pub ring: Ring,
    pub theta: Theta,
    pub r0: u32,
    pub c0: PReal,
    pub c1: PReal,
    pub r1: u32,
    pub c2: PReal,
}

impl CFConstants {
    pub fn theta_f64(&self) -> f64 {
        self.theta.to_f64()
    }

    pub fn c0_f64(&self) -> f64 {
        self.c0.to_f64()
    }

    pub fn c1_f64(&self) -> f64 {
        self.c1.to_f64()
    }

    pub fn c2_f64(&self) -> f64 {
        self.c2.to_f64()
    }

    /// `⌊r1/r0⌋`
    pub fn m1(&self) -> u32 {
        self.r1 / self.r0
    }
}

/// Constants for rings with declared growth `(θ, r0)`; `None` for d = 7, 11.
pub fn constants(ring: Ring) -> Option<CFConstants> {
    let g = ring.growth()?;
    let theta = g.theta.to_preal(PREC);
    let t2 = theta.square();
    let c0 = PReal::from_int(g.r0, PREC)
        .mul(&t2)
        .div(&t2.sub(&PReal::one(PREC)))
        .expect("θ > 1");
    let c1 = c0.add(&PReal::one(PREC));
    let mut r1 = 1u32;
    let pow = loop {
        let pow = theta.pow(r1 / g.r0);
        match c0.cmp_certified(&pow) {
            Some(Ordering::Less) => break pow,
            Some(_) => r1 += 1,
            None => panic!("C0 vs θ^m undecided at {PREC} bits"),
        }
    };
    let c2 = PReal::one(PREC).sub(&c0.div(&pow).expect("θ^m > 0"));
    Some(CFConstants {
        ring,
        theta: g.theta,
        r0: g.r0,
        c0,
        c1,
        r1,
        c2,
    })
}
