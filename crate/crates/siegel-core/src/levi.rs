//! Polynomial vector fields, Lie brackets, and the Levi form of the boundary.
//!
//! Fields are written over the complexified coordinate frame in block order:
//! components `0..n` multiply `d/dz_1..d/dz_n`, components `n..2n` multiply
//! `dzbar_1..dzbar_n`. A field is real iff the second block is the conjugate
//! of the first.
//!
//! The Levi form at a boundary point `p` evaluates `d(rho)(J[X, JX])` there.
//! It is defined on real fields tangent to the boundary whose image under `J`
//! stays tangent; the full Hermitian matrix over the holomorphic frame is
//! recovered by polarization and its positivity is decided exactly.
//!
//! Values are reported for the fixed defining function
//! `rho = Re(z_n) + |z'|^2`; replacing `rho` by a positive multiple rescales
//! them, so only the positivity verdict is normalization-independent.

use crate::boundary::{reduce_mod_boundary, rho_at, Point};
use crate::error::LeviError;
use crate::matrix::CMatrix;
use crate::poly::Poly;
use crate::scalar::ComplexRational;
use crate::structures::ModelStructure;
use num_traits::Signed;
use std::ops::{Add, Sub};

/// Polynomial vector field over the complexified coordinate frame.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    n: usize,
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(n: usize, components: Vec<Poly>) -> Self {
        assert_eq!(components.len(), 2 * n, "need 2n components");
        assert!(components.iter().all(|p| p.dim() == n));
        Self { n, components }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, vec![Poly::zero(n); 2 * n])
    }

    /// The coordinate field with index `k` in block order: `d/dz_{k+1}` for
    /// `k < n`, `d/dzbar_{k-n+1}` otherwise.
    pub fn coordinate(n: usize, k: usize) -> Self {
        assert!(k < 2 * n);
        let mut comps = vec![Poly::zero(n); 2 * n];
        comps[k] = Poly::one(n);
        Self::new(n, comps)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn component(&self, k: usize) -> &Poly {
        &self.components[k]
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Conjugate field: swaps the blocks and conjugates each component.
    pub fn conj(&self) -> Self {
        let mut comps = Vec::with_capacity(2 * self.n);
        for k in 0..self.n {
            comps.push(self.components[self.n + k].conj());
        }
        for k in 0..self.n {
            comps.push(self.components[k].conj());
        }
        Self::new(self.n, comps)
    }

    /// Real iff the conjugate-frame block is the conjugate of the
    /// holomorphic-frame block.
    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self {
            n: self.n,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every component by a polynomial (module structure over the
    /// function ring).
    pub fn mul_poly(&self, f: &Poly) -> Self {
        Self {
            n: self.n,
            components: self.components.iter().map(|p| p * f).collect(),
        }
    }

    /// Applies the field to a function as a derivation.
    pub fn apply_to(&self, f: &Poly) -> Poly {
        assert_eq!(f.dim(), self.n);
        let mut out = Poly::zero(self.n);
        for j in 0..self.n {
            if !self.components[j].is_zero() {
                out = &out + &(&self.components[j] * &f.d_z(j));
            }
            if !self.components[self.n + j].is_zero() {
                out = &out + &(&self.components[self.n + j] * &f.d_zbar(j));
            }
        }
        out
    }

    /// Exact evaluation of the component vector at a point.
    pub fn eval(&self, point: &[ComplexRational]) -> Vec<ComplexRational> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.n, rhs.n);
        VectorField {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        assert_eq!(self.n, rhs.n);
        VectorField {
            n: self.n,
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Exact Lie bracket `[X, Y]`: component-wise `X(Y_k) - Y(X_k)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    assert_eq!(x.n, y.n, "bracket of fields in different dimensions");
    let components = (0..2 * x.n)
        .map(|k| &x.apply_to(&y.components[k]) - &y.apply_to(&x.components[k]))
        .collect();
    VectorField { n: x.n, components }
}

/// Applies the complexified structure matrix to a field, exactly.
pub fn apply_j(j: &ModelStructure, x: &VectorField) -> VectorField {
    assert_eq!(x.n, j.dim());
    apply_matrix(&j.complexify(), x)
}

/// Applies a `2n x 2n` polynomial matrix in interleaved order (such as a
/// complexified structure, possibly evaluated along a map) to a field given
/// in block order.
pub fn apply_matrix(m: &crate::matrix::PolyMatrix, x: &VectorField) -> VectorField {
    let n = x.n;
    assert_eq!(m.nrows(), 2 * n);
    assert_eq!(m.ncols(), 2 * n);
    let interleaved: Vec<&Poly> = (0..2 * n)
        .map(|r| {
            if r % 2 == 0 {
                &x.components[r / 2]
            } else {
                &x.components[n + r / 2]
            }
        })
        .collect();
    let mut out = vec![Poly::zero(n); 2 * n];
    for r in 0..2 * n {
        let mut acc = Poly::zero(n);
        for c in 0..2 * n {
            if m[(r, c)].is_zero() || interleaved[c].is_zero() {
                continue;
            }
            acc = &acc + &(&m[(r, c)] * interleaved[c]);
        }
        let block_index = if r % 2 == 0 { r / 2 } else { n + r / 2 };
        out[block_index] = acc;
    }
    VectorField::new(n, out)
}

/// Pairs `d(rho)` with a field: `sum_k V_k d(rho)/dz_k + V_{n+k} d(rho)/dzbar_k`.
fn pair_with_drho(v: &VectorField) -> Poly {
    let rho = Poly::rho(v.n);
    let mut out = Poly::zero(v.n);
    for k in 0..v.n {
        out = &out + &(&v.components[k] * &rho.d_z(k));
        out = &out + &(&v.components[v.n + k] * &rho.d_zbar(k));
    }
    out
}

fn check_levi_preconditions(
    j: &ModelStructure,
    x: &VectorField,
    p: &[ComplexRational],
) -> Result<(), LeviError> {
    if !rho_at(p).is_zero() {
        return Err(LeviError::OffBoundary {
            rho: rho_at(p).to_string(),
        });
    }
    if !x.is_real() {
        return Err(LeviError::NotReal);
    }
    let rho = Poly::rho(x.n);
    if !reduce_mod_boundary(&x.apply_to(&rho)).is_zero() {
        return Err(LeviError::NotTangent);
    }
    let jx = apply_j(j, x);
    if !reduce_mod_boundary(&jx.apply_to(&rho)).is_zero() {
        return Err(LeviError::NotJTangent);
    }
    Ok(())
}

/// The Levi form of the boundary at `p`, on a real tangent field `X`:
/// `d(rho)(J[X, JX])` evaluated at `p`. The result is exactly real.
pub fn levi_form(
    j: &ModelStructure,
    x: &VectorField,
    p: &[ComplexRational],
) -> Result<ComplexRational, LeviError> {
    check_levi_preconditions(j, x, p)?;
    Ok(levi_form_unchecked(j, x, p))
}

fn levi_form_unchecked(
    j: &ModelStructure,
    x: &VectorField,
    p: &[ComplexRational],
) -> ComplexRational {
    let jx = apply_j(j, x);
    let bracket = lie_bracket(x, &jx);
    let value = pair_with_drho(&apply_j(j, &bracket)).eval(p);
    debug_assert!(value.is_real(), "Levi value must be real, got {value}");
    value
}

/// Levi data at a boundary point: the polarized Hermitian matrix over the
/// frame fields, the exact positivity verdict, and a witness direction
/// (frame coefficients) when positivity fails.
#[derive(Clone, Debug)]
pub struct LeviReport {
    pub point: Point,
    pub matrix: CMatrix,
    pub positive: bool,
    pub witness: Option<Vec<ComplexRational>>,
}

/// Builds the Hermitian Levi matrix over the frame at `p` by polarization:
/// the real-field values `q(X) = d(rho)(J[X, JX])_p` on the four combinations
/// `X_j + X_k`, `X_j - X_k`, `X_j + JX_k`, `X_j - JX_k` determine the
/// off-diagonal entries. Positivity is decided by exact pivots (equivalently,
/// leading principal minors).
pub fn levi_matrix(j: &ModelStructure, p: &[ComplexRational]) -> Result<LeviReport, LeviError> {
    let n = j.dim();
    if !rho_at(p).is_zero() {
        return Err(LeviError::OffBoundary {
            rho: rho_at(p).to_string(),
        });
    }
    let frame = j.tangent_frame();
    let reals: Vec<VectorField> = frame.l_fields.iter().map(|l| l + &l.conj()).collect();
    let j_reals: Vec<VectorField> = reals.iter().map(|x| apply_j(j, x)).collect();
    // all polarization combinations satisfy the form's preconditions; check
    // the generators once
    for x in &reals {
        check_levi_preconditions(j, x, p)?;
    }
    let q = |x: &VectorField| levi_form_unchecked(j, x, p);
    let quarter = ComplexRational::from_ratio(1, 4);
    let mut h = CMatrix::zero(n - 1, n - 1);
    for a in 0..n - 1 {
        for b in 0..n - 1 {
            if a == b {
                h[(a, b)] = q(&reals[a]);
                continue;
            }
            let plus = q(&(&reals[a] + &reals[b]));
            let minus = q(&(&reals[a] - &reals[b]));
            let plus_j = q(&(&reals[a] + &j_reals[b]));
            let minus_j = q(&(&reals[a] - &j_reals[b]));
            let re_part = (&plus - &minus) * &quarter;
            let im_part = (&plus_j - &minus_j) * &quarter;
            h[(a, b)] = &re_part + &(&ComplexRational::i() * &im_part);
        }
    }
    // Hermitian by construction; breach would be an internal invariant failure
    assert_eq!(h, h.adjoint(), "polarized Levi matrix must be Hermitian");
    let (positive, witness) = hermitian_positive_definite(&h);
    Ok(LeviReport {
        point: p.to_vec(),
        matrix: h,
        positive,
        witness,
    })
}

/// Exact strict-positivity test for a Hermitian matrix via an LDL*
/// factorization with rational pivots; the product of the first `k` pivots is
/// the `k`-th leading principal minor. On a non-positive pivot, returns a
/// witness `v` with `v* H v <= 0`.
pub fn hermitian_positive_definite(h: &CMatrix) -> (bool, Option<Vec<ComplexRational>>) {
    let m = h.nrows();
    let mut lower = CMatrix::identity(m);
    let mut work = h.clone();
    for k in 0..m {
        let pivot = work[(k, k)].clone();
        assert!(pivot.is_real(), "Hermitian diagonal must be real");
        if !pivot.re.is_positive() {
            // witness: solve L* v = e_k; then v* H v equals the pivot
            let mut v = vec![ComplexRational::zero(); m];
            v[k] = ComplexRational::one();
            for r in (0..k).rev() {
                let mut acc = ComplexRational::zero();
                for s in r + 1..=k {
                    acc += &(&lower[(s, r)].conj() * &v[s]);
                }
                v[r] = -&acc;
            }
            return (false, Some(v));
        }
        let pivot_inv = pivot.inv().expect("positive pivot");
        for r in k + 1..m {
            let factor = &work[(r, k)] * &pivot_inv;
            lower[(r, k)] = factor.clone();
            for c in k + 1..m {
                let sub = &factor * &work[(k, c)];
                work[(r, c)] = &work[(r, c)] - &sub;
            }
        }
    }
    (true, None)
}
