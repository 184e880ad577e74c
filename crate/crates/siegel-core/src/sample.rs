//! Floating sampling oracle.
//!
//! Exact verdicts never depend on this module; it cross-checks them. A
//! polynomial that the symbolic layer declares zero (identically, or
//! identically on the boundary) must evaluate below a small magnitude at
//! random sample points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::Point;
use crate::poly::Poly;
use crate::scalar::ComplexRational;

/// Tolerance for the floating cross-check of exact zeros.
pub const SAMPLE_TOLERANCE: f64 = 1e-9;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational(rng: &mut impl Rng) -> ComplexRational {
    let p = rng.gen_range(-10..=10i64);
    let q = rng.gen_range(1..=10i64);
    let r = rng.gen_range(-10..=10i64);
    let s = rng.gen_range(1..=10i64);
    ComplexRational::new(
        crate::scalar::Rational::new(p.into(), q.into()),
        crate::scalar::Rational::new(r.into(), s.into()),
    )
}

/// Random exact rational point on the boundary: `z'` and `Im(z_n)` are free
/// small rationals and `Re(z_n) = -|z'|^2`.
pub fn random_boundary_point(n: usize, rng: &mut impl Rng) -> Point {
    let mut point: Point = (0..n - 1).map(|_| small_rational(rng)).collect();
    let mut norm = crate::scalar::Rational::from_integer(0.into());
    for z in &point {
        norm += z.norm_sqr();
    }
    let im = small_rational(rng).re;
    point.push(ComplexRational::new(-norm, im));
    point
}

/// Random floating point of C^n with coordinates in the unit box.
pub fn random_float_point(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// Random floating point on the boundary.
pub fn random_float_boundary_point(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut point = random_float_point(n - 1, rng);
    let norm: f64 = point.iter().map(Complex64::norm_sqr).sum();
    point.push(Complex64::new(-norm, rng.gen_range(-1.0..1.0)));
    point
}

/// Largest magnitude of `p` over `samples` random points of C^n.
pub fn max_on_samples(p: &Poly, samples: usize, rng: &mut impl Rng) -> f64 {
    (0..samples)
        .map(|_| p.eval_c64(&random_float_point(p.dim(), rng)).norm())
        .fold(0.0, f64::max)
}

/// Largest magnitude of `p` over `samples` random boundary points.
pub fn max_on_boundary_samples(p: &Poly, samples: usize, rng: &mut impl Rng) -> f64 {
    (0..samples)
        .map(|_| {
            p.eval_c64(&random_float_boundary_point(p.dim(), rng))
                .norm()
        })
        .fold(0.0, f64::max)
}
