//! The embedding `SL₂(ℤ[i]) → SL₄(ℤ)` obtained by writing `a + ib` as the
//! real 2×2 block `((a, −b), (b, a))`, together with the matching
//! identification `ℂ² ≅ ℝ⁴`.

use crate::error::{Error, Result};
use crate::exponent::{estimate_mu, OrbitRecord};
use crate::field::{OKInt, PComplex, PReal, Ring};
use crate::matrix::{Mat2, OrbitRun, Point2};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;

/// `a + ib ↦ ((a, −b), (b, a))`.
pub fn embed_scalar(x: &OKInt) -> Result<[[BigInt; 2]; 2]> {
    if x.ring() != Ring::D1 {
        return Err(Error::UnsupportedRing(x.ring().d()));
    }
    let (a, b) = (x.a().clone(), x.b().clone());
    Ok([[a.clone(), -&b], [b, a]])
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat4Z(pub [[BigInt; 4]; 4]);

impl fmt::Debug for Mat4Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

fn det_rec(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(i, _)| i != c).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = &m[0][c] * det_rec(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

impl Mat4Z {
    pub fn from_i64(e: [[i64; 4]; 4]) -> Self {
        Mat4Z(e.map(|r| r.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        let mut m = Self::from_i64([[0; 4]; 4]);
        for i in 0..4 {
            m.0[i][i] = BigInt::one();
        }
        m
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::from_i64([[0; 4]; 4]);
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).map(|k| &self.0[i][k] * &o.0[k][j]).sum();
            }
        }
        out
    }

    /// Cofactor expansion along the first row.
    pub fn det(&self) -> BigInt {
        let rows: Vec<Vec<BigInt>> = self.0.iter().map(|r| r.to_vec()).collect();
        det_rec(&rows)
    }

    /// `max |entry|`.
    pub fn height(&self) -> BigInt {
        self.0
            .iter()
            .flatten()
            .map(|e| e.abs())
            .max()
            .expect("sixteen entries")
    }

    pub fn apply(&self, v: &[PReal; 4]) -> [PReal; 4] {
        let prec = v[0].prec();
        std::array::from_fn(|i| {
            (0..4).fold(PReal::zero(prec), |acc, k| acc.add(&v[k].mul_int(&self.0[i][k])))
        })
    }
}

/// Blockwise embedding of a `ℤ[i]` matrix.
pub fn embed_matrix(g: &Mat2) -> Result<Mat4Z> {
    let mut out = Mat4Z::from_i64([[0; 4]; 4]);
    for (idx, e) in g.entries().into_iter().enumerate() {
        let blk = embed_scalar(e)?;
        let (r0, c0) = (2 * (idx / 2), 2 * (idx % 2));
        for (i, row) in blk.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                out.0[r0 + i][c0 + j] = v;
            }
        }
    }
    Ok(out)
}

/// `h₂(ρ(g)) ∈ [h₁(g)/√2, h₁(g)]`, checked on squares in exact integers.
pub fn height_comparable(g: &Mat2) -> Result<bool> {
    let h1_sq = g.height_norm();
    let h2 = embed_matrix(g)?.height();
    let h2_sq = &h2 * &h2;
    Ok(h2_sq <= h1_sq && h1_sq <= h2_sq * 2)
}

/// `(z1, z2) ↦ (Re z1, Im z1, Re z2, Im z2)`.
pub fn vec_c2_to_r4(z: &Point2) -> Result<[PReal; 4]> {
    if z.z1.ring() != Ring::D1 {
        return Err(Error::UnsupportedRing(z.z1.ring().d()));
    }
    Ok([z.z1.re(), z.z1.im(), z.z2.re(), z.z2.im()])
}

#[derive(Clone, Debug)]
pub struct Compatibility {
    /// `ρ(g)·vec(z)`
    pub lhs: [PReal; 4],
    /// `vec(g·z)`
    pub rhs: [PReal; 4],
    /// Largest midpoint gap over the four coordinates.
    pub max_gap: f64,
    /// Every coordinate pair overlaps within its error radius.
    pub ok: bool,
}

pub fn compatibility_check(g: &Mat2, z: &Point2) -> Result<Compatibility> {
    let lhs = embed_matrix(g)?.apply(&vec_c2_to_r4(z)?);
    let rhs = vec_c2_to_r4(&g.apply(z))?;
    let max_gap = lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a.to_f64() - b.to_f64()).abs())
        .fold(0.0, f64::max);
    let ok = lhs.iter().zip(&rhs).all(|(a, b)| a.overlaps(b));
    Ok(Compatibility { lhs, rhs, max_gap, ok })
}

/// Product of `len` factors drawn from `U^{±1}`, `U^{±i}` and `J`.
pub fn random_generator_product<R: Rng>(rng: &mut R, len: usize) -> Mat2 {
    let r = Ring::D1;
    let gens = [
        Mat2::u_pow(&OKInt::new(1, 0, r)),
        Mat2::u_pow(&OKInt::new(-1, 0, r)),
        Mat2::u_pow(&OKInt::new(0, 1, r)),
        Mat2::u_pow(&OKInt::new(0, -1, r)),
        Mat2::j(r),
    ];
    (0..len).fold(Mat2::identity(r), |acc, _| acc.mul(&gens[rng.gen_range(0..gens.len())]))
}

/// A point of `ℂ²` with rectangular coordinates uniform in `[−2, 2]`.
pub fn random_point<R: Rng>(rng: &mut R, prec: u32) -> Point2 {
    let mut c = || PComplex::from_f64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), Ring::D1, prec);
    let z1 = c();
    Point2::new(z1, c())
}

fn ball_max(xs: impl IntoIterator<Item = PReal>) -> PReal {
    xs.into_iter()
        .reduce(|a, b| {
            if a.lower() >= b.upper() {
                a
            } else if b.lower() >= a.upper() {
                b
            } else {
                let lo = a.lower().max(b.lower());
                let hi = a.upper().max(b.upper());
                PReal::with_radius(lo.add(&hi).mul_pow2(-1), hi.sub(&lo).mul_pow2(-1), a.prec().max(b.prec()))
            }
        })
        .expect("nonempty")
}

#[derive(Clone, Debug)]
pub struct ExponentComparison {
    pub mu_c2: f64,
    pub mu_r4: f64,
    /// `(exponent in ℂ², exponent in ℝ⁴)` per record.
    pub per_record: Vec<(f64, f64)>,
}

impl ExponentComparison {
    pub fn r4_dominates(&self, tol: f64) -> bool {
        self.mu_r4 >= self.mu_c2 - tol
    }
}

/// Windowed exponent of the same record stream measured in both pictures:
/// sup norm of `γz − y` on `ℂ²` against sup norm on `ℝ⁴`, and `|γ|` against
/// `max |entry|` of `ρ(γ)`.
pub fn exponent_comparison(run: &OrbitRun, window_decades: f64) -> Result<ExponentComparison> {
    let ring = run.z.z1.ring();
    if ring != Ring::D1 {
        return Err(Error::UnsupportedRing(ring.d()));
    }
    let mut c2 = Vec::new();
    let mut r4 = Vec::new();
    let mut per_record = Vec::new();
    for g in &run.records {
        let h4 = PReal::from_int(embed_matrix(&g.gamma)?.height(), run.prec);
        if h4.to_f64() <= 1.0 {
            continue;
        }
        let err4 = ball_max(vec_c2_to_r4(&g.residual.direct)?.iter().map(|c| c.abs()));
        let a = OrbitRecord::new(g.class, ring, g.k, g.height.clone(), g.err.clone())?;
        let b = OrbitRecord::new(g.class, ring, g.k, h4, err4)?;
        per_record.push((a.exponent(), b.exponent()));
        c2.push(a);
        r4.push(b);
    }
    Ok(ExponentComparison {
        mu_c2: estimate_mu(&c2, window_decades)?.mu,
        mu_r4: estimate_mu(&r4, window_decades)?.mu,
        per_record,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::PrecisionPolicy;
    use crate::field::Expr;
    use crate::matrix::{run_orbit, OrbitSpec, TargetInput};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(a: i64, b: i64) -> OKInt {
        OKInt::new(a, b, Ring::D1)
    }

    #[test]
    fn scalar_blocks() {
        let one = embed_scalar(&g(1, 0)).unwrap();
        assert_eq!(one, [[1.into(), 0.into()], [0.into(), 1.into()]]);
        let i = embed_scalar(&g(0, 1)).unwrap();
        let m = |x: &[[BigInt; 2]; 2], y: &[[BigInt; 2]; 2]| -> [[BigInt; 2]; 2] {
            std::array::from_fn(|r| std::array::from_fn(|c| &x[r][0] * &y[0][c] + &x[r][1] * &y[1][c]))
        };
        assert_eq!(m(&i, &i), [[(-1).into(), 0.into()], [0.into(), (-1).into()]]);
        assert!(matches!(embed_scalar(&OKInt::one(Ring::D3)), Err(Error::UnsupportedRing(3))));
    }

    proptest! {
        #[test]
        fn scalar_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000) {
            let (x, y) = (g(a, b), g(c, d));
            let ex = embed_scalar(&x).unwrap();
            let ey = embed_scalar(&y).unwrap();
            let prod: [[BigInt; 2]; 2] =
                std::array::from_fn(|r| std::array::from_fn(|c| &ex[r][0] * &ey[0][c] + &ex[r][1] * &ey[1][c]));
            prop_assert_eq!(embed_scalar(&(&x * &y)).unwrap(), prod);
        }

        #[test]
        fn homomorphism_on_words(seed in any::<u64>(), la in 0usize..12, lb in 0usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_generator_product(&mut rng, la);
            let b = random_generator_product(&mut rng, lb);
            let ea = embed_matrix(&a).unwrap();
            let eb = embed_matrix(&b).unwrap();
            prop_assert_eq!(embed_matrix(&a.mul(&b)).unwrap(), ea.mul(&eb));
            prop_assert_eq!(ea.det(), BigInt::one());
            prop_assert!(height_comparable(&a).unwrap());
        }
    }

    #[test]
    fn identity_and_j() {
        assert_eq!(embed_matrix(&Mat2::identity(Ring::D1)).unwrap(), Mat4Z::identity());
        let j = embed_matrix(&Mat2::j(Ring::D1)).unwrap();
        let want = Mat4Z::from_i64([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]);
        assert_eq!(j, want);
        assert_eq!(j.det(), BigInt::one());
    }

    #[test]
    fn det_oracle_on_permutation_matrix() {
        // odd permutation
        let p = Mat4Z::from_i64([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert_eq!(p.det(), BigInt::from(-1));
        let t = Mat4Z::from_i64([[2, 5, 1, 0], [0, 3, 7, 1], [0, 0, -1, 4], [0, 0, 0, 6]]);
        assert_eq!(t.det(), BigInt::from(-36));
    }

    #[test]
    fn height_extremes() {
        // 1 + i: h₁ = √2, h₂ = 1, the ratio sits on the boundary
        let m = Mat2::new(g(1, 1), g(0, 0), g(0, 0), g(1, 1));
        assert!(height_comparable(&m).unwrap());
        let m = Mat2::new(g(3, 0), g(0, 0), g(0, 0), g(0, 0));
        assert_eq!(embed_matrix(&m).unwrap().height(), BigInt::from(3));
    }

    #[test]
    fn j_on_one_i() {
        let r = Ring::D1;
        let z = Point2::new(PComplex::one(r, 128), PComplex::i(r, 128));
        let c = compatibility_check(&Mat2::j(r), &z).unwrap();
        assert!(c.ok);
        // J(1, i) = (−i, 1)
        let got: Vec<f64> = c.lhs.iter().map(|x| x.to_f64()).collect();
        assert_eq!(got, vec![0.0, -1.0, 1.0, 0.0]);
        assert_eq!(c.max_gap, 0.0);
    }

    #[test]
    fn random_actions_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let gm = random_generator_product(&mut rng, 16);
            let z = random_point(&mut rng, 128);
            assert!(compatibility_check(&gm, &z).unwrap().ok);
        }
    }

    #[test]
    fn r4_exponent_not_smaller() {
        let spec = OrbitSpec::new(
            Ring::D1,
            Expr::parse("sqrt(2)").unwrap(),
            Expr::parse("1").unwrap(),
            TargetInput::Origin,
            40,
        );
        let run = run_orbit(&spec, PrecisionPolicy::default()).unwrap();
        let cmp = exponent_comparison(&run, 3.0).unwrap();
        // err < 1 and |γ| > 1 make the pointwise comparison monotone
        for &(a, b) in cmp.per_record.iter().filter(|r| r.0 > 0.0) {
            assert!(b >= a - 1e-9, "{a} {b}");
        }
        assert!(cmp.r4_dominates(0.0));
    }

    #[test]
    fn other_rings_are_rejected() {
        assert!(embed_matrix(&Mat2::identity(Ring::D3)).is_err());
        let z = Point2::new(PComplex::one(Ring::D7, 64), PComplex::one(Ring::D7, 64));
        assert!(vec_c2_to_r4(&z).is_err());
    }
}
