//! Exact arithmetic in the rings of integers `O_K`, `K = ℚ(√−d)` for
//! d ∈ {1, 3, 7, 11}, and ball arithmetic for points of `ℂ`.

mod dyadic;
mod expr;
mod krat;
mod nearest;
mod okint;
mod pcomplex;
mod preal;
mod ring;

pub use dyadic::Dyadic;
pub use expr::{Expr, Value};
pub use krat::KRat;
pub use nearest::{coprime, div_nearest, extended_gcd, nearest_integer};
pub use okint::OKInt;
pub use pcomplex::PComplex;
pub use preal::{PReal, RAD_BITS};
pub use ring::{Growth, Ring, RingSpec, Theta};

/// `|x|²` as an exact integer.
pub fn norm(x: &OKInt) -> num_bigint::BigInt {
    x.norm()
}

/// Ball enclosure of a ring element; exact at any precision.
pub fn to_complex(x: &OKInt, prec: u32) -> PComplex {
    PComplex::from_okint(x, prec)
}

pub fn units(ring: Ring) -> Vec<OKInt> {
    ring.units()
}
