//! Exact symbolic toolkit for model almost-complex structures on the Siegel
//! half-plane.
//!
//! The crate works over the Gaussian rationals throughout: polynomials in
//! `(z, zbar)` with `ComplexRational` coefficients carry the structures, the
//! vector fields, the candidate maps and every residual, so each verification
//! is a structural zero-test rather than a numerical tolerance.
//!
//! The main pieces:
//!
//! - [`scalar`], [`poly`], [`boundary`]: the exact-arithmetic kernel —
//!   complex rationals, sparse polynomials with formal conjugate variables,
//!   and reduction modulo the boundary relation `Re(z_n) = -|z'|^2`.
//! - [`structures`]: model structures `J = J_st + L(z)`, simple structures
//!   cut out by an antisymmetric matrix `B`, the complexified matrix, the
//!   boundary frame, and an exact integrability test.
//! - [`levi`]: polynomial vector fields, Lie brackets, the Levi form and an
//!   exact strict-pseudoconvexity verdict.
//! - [`maps`]: residual checks for pseudo-holomorphy, the component system of
//!   a simple structure, boundary invariance, the CR property, and the
//!   product form `(F'(z'), c z_n + phi(zbar'))`.
//! - [`autgroup`]: the automorphism group of the half-plane in rational
//!   normal form `(A, c, zeta)`, with exact composition, inversion and
//!   action.
//! - [`jets`]: base-point normalization, 2-jet extraction, the constraint
//!   chain that pins the jet of a boundary-preserving map, and the
//!   reconstruction of the matching automorphism.
//! - [`serial`], [`sample`]: exact JSON interchange (`"p/q"` strings) and the
//!   floating sampling oracle used as a cross-check.

pub mod autgroup;
pub mod boundary;
pub mod error;
pub mod jets;
pub mod levi;
pub mod maps;
pub mod matrix;
pub mod poly;
pub mod sample;
pub mod scalar;
pub mod serial;
pub mod structures;

pub use boundary::{is_on_boundary, reduce_mod_boundary, rho_at, BoundaryPoly, Point};
pub use matrix::{CMatrix, PolyMatrix};
pub use poly::{Monomial, Poly};
pub use scalar::{ComplexRational, Rational};
