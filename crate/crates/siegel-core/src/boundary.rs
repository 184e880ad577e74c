//! Reduction modulo the boundary relation of the Siegel half-plane.
//!
//! On the boundary `Re(z_n) = -|z'|^2`, so the real coordinate `Re(z_n)` can
//! be eliminated while `z_n - zbar_n` (twice the imaginary part) stays free.
//! Reduction substitutes
//!
//! ```text
//! z_n    ->  -|z'|^2 + (z_n - zbar_n)/2
//! zbar_n ->  -|z'|^2 - (z_n - zbar_n)/2
//! ```
//!
//! which is an idempotent ring projection whose kernel is exactly the ideal
//! generated by `rho`. A polynomial vanishes identically on the boundary iff
//! its reduction is the zero polynomial, so equality of functions on the
//! boundary becomes a structural zero-test.

use crate::poly::Poly;
use crate::scalar::ComplexRational;

/// Boundary point utilities: a point is a length-`n` vector of exact complex
/// scalars, on the boundary iff `rho` vanishes there.
pub type Point = Vec<ComplexRational>;

/// Evaluates `rho = Re(z_n) + |z'|^2` at a point, exactly.
pub fn rho_at(point: &[ComplexRational]) -> ComplexRational {
    assert!(!point.is_empty());
    Poly::rho(point.len()).eval(point)
}

pub fn is_on_boundary(point: &[ComplexRational]) -> bool {
    rho_at(point).is_zero()
}

/// The origin of C^n.
pub fn origin(n: usize) -> Point {
    vec![ComplexRational::zero(); n]
}

/// The distinguished interior point `(0, ..., 0, -1)`.
pub fn minus_one(n: usize) -> Point {
    let mut p = origin(n);
    p[n - 1] = ComplexRational::from_int(-1);
    p
}

/// A polynomial in normal form with respect to the boundary relation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryPoly {
    representative: Poly,
}

impl BoundaryPoly {
    pub fn dim(&self) -> usize {
        self.representative.dim()
    }

    /// Zero iff the original polynomial vanishes identically on the boundary.
    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }

    pub fn representative(&self) -> &Poly {
        &self.representative
    }

    pub fn into_poly(self) -> Poly {
        self.representative
    }
}

/// Images of the reduction substitution for dimension `n`.
fn reduction_images(n: usize) -> Vec<Poly> {
    let mut images: Vec<Poly> = (0..n - 1).map(|j| Poly::var(n, j)).collect();
    // -|z'|^2 + (z_n - zbar_n)/2
    let mut last = Poly::zero(n);
    for j in 0..n - 1 {
        last = &last - &(&Poly::var(n, j) * &Poly::conj_var(n, j));
    }
    let half = ComplexRational::from_ratio(1, 2);
    last = &last + &Poly::var(n, n - 1).scale(&half);
    last = &last - &Poly::conj_var(n, n - 1).scale(&half);
    images.push(last);
    images
}

/// Normal form of `p` modulo the relation `z_n + zbar_n = -2|z'|^2`.
pub fn reduce_mod_boundary(p: &Poly) -> BoundaryPoly {
    let n = p.dim();
    assert!(n >= 1);
    BoundaryPoly {
        representative: p.substitute(&reduction_images(n)),
    }
}

/// Whether `p` already is its own boundary normal form.
pub fn is_reduced(p: &Poly) -> bool {
    reduce_mod_boundary(p).representative == *p
}
