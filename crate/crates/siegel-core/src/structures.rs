//! Model almost-complex structures on C^n and the induced boundary frame.
//!
//! A model structure deforms the standard structure only in the last two rows
//! of its matrix, by forms that are linear in `(z', zbar')`. The
//! complexification is a `2n x 2n` polynomial matrix over the interleaved
//! frame `dz_1, dzbar_1, ..., dz_n, dzbar_n`: alternating `+-i` on the
//! diagonal, and the linear forms in the two bottom rows at alternating
//! columns. Simple structures are the subfamily cut out by an antisymmetric
//! matrix `B` acting through `J(d/dz_j) = i d/dz_j + sum_k b_jk z_k d/dzbar_n`.

use crate::error::StructureError;
use crate::levi::{lie_bracket, VectorField};
use crate::matrix::{CMatrix, PolyMatrix};
use crate::poly::Poly;
use crate::scalar::ComplexRational;

/// Model almost-complex structure: the coefficient data of the linear forms
/// occupying the two bottom rows of the complexified matrix.
///
/// `alpha[(i, l)]` and `beta[(i, l)]` are the coefficients of `z_{l+1}` and
/// `zbar_{l+1}` in the form attached to `d/dz_{i+1}` (both 0-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelStructure {
    n: usize,
    alpha: CMatrix,
    beta: CMatrix,
}

impl ModelStructure {
    pub fn new(n: usize, alpha: CMatrix, beta: CMatrix) -> Result<Self, StructureError> {
        if n < 2 {
            return Err(StructureError::DimensionTooSmall(n));
        }
        for m in [&alpha, &beta] {
            if m.nrows() != n - 1 || m.ncols() != n - 1 {
                return Err(StructureError::BadShape {
                    expected: n - 1,
                    rows: m.nrows(),
                    cols: m.ncols(),
                });
            }
        }
        Ok(Self { n, alpha, beta })
    }

    /// The standard structure: all deformation coefficients vanish.
    pub fn standard(n: usize) -> Self {
        Self::new(n, CMatrix::zero(n - 1, n - 1), CMatrix::zero(n - 1, n - 1))
            .expect("standard structure is well-formed")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &CMatrix {
        &self.alpha
    }

    pub fn beta(&self) -> &CMatrix {
        &self.beta
    }

    /// The linear form attached to `d/dz_{i+1}` (0-based `i`):
    /// `sum_l (alpha[i][l] z_{l+1} + beta[i][l] zbar_{l+1})`.
    pub fn ltilde(&self, i: usize) -> Poly {
        assert!(i < self.n - 1);
        let mut p = Poly::zero(self.n);
        for l in 0..self.n - 1 {
            p = &p + &Poly::var(self.n, l).scale(&self.alpha[(i, l)]);
            p = &p + &Poly::conj_var(self.n, l).scale(&self.beta[(i, l)]);
        }
        p
    }

    /// Complexified structure matrix over the interleaved frame.
    pub fn complexify(&self) -> PolyMatrix {
        let n = self.n;
        let mut m = PolyMatrix::zero(2 * n, 2 * n, n);
        let i_const = Poly::constant(n, ComplexRational::i());
        let minus_i = Poly::constant(n, -&ComplexRational::i());
        for j in 0..n {
            m[(2 * j, 2 * j)] = i_const.clone();
            m[(2 * j + 1, 2 * j + 1)] = minus_i.clone();
        }
        for k in 0..n - 1 {
            let form = self.ltilde(k);
            m[(2 * n - 1, 2 * k)] = form.conj().conj(); // keep a fresh copy
            m[(2 * n - 2, 2 * k + 1)] = form.conj();
            m[(2 * n - 1, 2 * k)] = form;
        }
        m
    }

    /// Checks the defining identities on this structure's own matrix.
    pub fn verify(&self) -> StructureReport {
        verify_structure_matrix(self.n, &self.complexify())
    }

    pub fn is_simple(&self) -> bool {
        self.beta.is_zero()
    }

    /// Extracts the antisymmetric matrix of a simple structure.
    pub fn as_simple(&self) -> Result<SimpleModelStructure, StructureError> {
        for i in 0..self.n - 1 {
            for l in 0..self.n - 1 {
                if !self.beta[(i, l)].is_zero() {
                    return Err(StructureError::NotSimple { i, l });
                }
            }
        }
        SimpleModelStructure::new(self.n, self.alpha.clone())
    }

    /// Boundary frame fields of the structure (see `TangentFrame`).
    pub fn tangent_frame(&self) -> TangentFrame {
        let n = self.n;
        let minus_half_i = ComplexRational::gaussian(0, -1, 2);
        let mut fields = Vec::with_capacity(n - 1);
        let mut alphas = Vec::with_capacity(n - 1);
        let mut betas = Vec::with_capacity(n - 1);
        for j in 0..n - 1 {
            let beta_j = self.ltilde(j).scale(&minus_half_i);
            let alpha_j = &(-&beta_j) - &Poly::conj_var(n, j).scale(&ComplexRational::from_int(2));
            let mut comps = vec![Poly::zero(n); 2 * n];
            comps[j] = Poly::one(n);
            comps[n - 1] = alpha_j.clone();
            comps[2 * n - 1] = beta_j.clone();
            fields.push(VectorField::new(n, comps));
            alphas.push(alpha_j);
            betas.push(beta_j);
        }
        let mut t_comps = vec![Poly::zero(n); 2 * n];
        t_comps[n - 1] = Poly::constant(n, ComplexRational::i());
        t_comps[2 * n - 1] = Poly::constant(n, -&ComplexRational::i());
        TangentFrame {
            l_fields: fields,
            t_field: VectorField::new(n, t_comps),
            alphas,
            betas,
        }
    }

    /// Exact integrability test: the torsion tensor
    /// `N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]`
    /// vanishes on every pair of complexified coordinate fields iff it
    /// vanishes identically (it is function-linear in both slots).
    pub fn nijenhuis_vanishes(&self) -> bool {
        let n = self.n;
        let frame: Vec<VectorField> = (0..2 * n).map(|k| VectorField::coordinate(n, k)).collect();
        for a in 0..2 * n {
            for b in a + 1..2 * n {
                if !self.nijenhuis_tensor(&frame[a], &frame[b]).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The torsion tensor on a specific pair of fields.
    pub fn nijenhuis_tensor(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let jx = crate::levi::apply_j(self, x);
        let jy = crate::levi::apply_j(self, y);
        let t1 = lie_bracket(&jx, &jy);
        let t2 = crate::levi::apply_j(self, &lie_bracket(&jx, y));
        let t3 = crate::levi::apply_j(self, &lie_bracket(x, &jy));
        let t4 = lie_bracket(x, y);
        &(&t1 - &t2) - &(&t3 + &t4)
    }
}

/// Simple model structure, determined by an antisymmetric complex matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleModelStructure {
    n: usize,
    b: CMatrix,
}

impl SimpleModelStructure {
    pub fn new(n: usize, b: CMatrix) -> Result<Self, StructureError> {
        if n < 2 {
            return Err(StructureError::DimensionTooSmall(n));
        }
        if b.nrows() != n - 1 || b.ncols() != n - 1 {
            return Err(StructureError::BadShape {
                expected: n - 1,
                rows: b.nrows(),
                cols: b.ncols(),
            });
        }
        for i in 0..n - 1 {
            for j in i..n - 1 {
                let neg = -&b[(j, i)];
                if b[(i, j)] != neg {
                    return Err(StructureError::NotAntisymmetric {
                        i,
                        j,
                        val: b[(i, j)].to_string(),
                        other: b[(j, i)].to_string(),
                    });
                }
            }
        }
        Ok(Self { n, b })
    }

    /// The standard structure seen as a simple structure (`B = 0`).
    pub fn standard(n: usize) -> Self {
        Self::new(n, CMatrix::zero(n - 1, n - 1)).expect("zero matrix is antisymmetric")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn is_standard(&self) -> bool {
        self.b.is_zero()
    }

    /// Embeds into the general model-structure form (`beta = 0`).
    pub fn to_model(&self) -> ModelStructure {
        ModelStructure::new(
            self.n,
            self.b.clone(),
            CMatrix::zero(self.n - 1, self.n - 1),
        )
        .expect("simple structure embeds as a model structure")
    }

    /// The bilinear form `B(u, v) = sum b_jk u_j v_k` on two polynomial
    /// vectors of length `n-1`.
    pub fn bilinear(&self, u: &[Poly], v: &[Poly]) -> Poly {
        assert_eq!(u.len(), self.n - 1);
        assert_eq!(v.len(), self.n - 1);
        let dim = u.first().map_or(self.n, Poly::dim);
        let mut acc = Poly::zero(dim);
        for j in 0..self.n - 1 {
            for k in 0..self.n - 1 {
                if self.b[(j, k)].is_zero() {
                    continue;
                }
                acc = &acc + &(&u[j] * &v[k]).scale(&self.b[(j, k)]);
            }
        }
        acc
    }
}

/// Outcome of checking the structure identities; lists each failed entry.
#[derive(Clone, Debug)]
pub struct StructureReport {
    pub failures: Vec<StructureFailure>,
}

#[derive(Clone, Debug)]
pub struct StructureFailure {
    pub row: usize,
    pub col: usize,
    pub found: String,
    pub expected: String,
    pub check: &'static str,
}

impl StructureReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verifies that a `2n x 2n` polynomial matrix is the complexification of a
/// model structure: the prescribed sparsity shape, the conjugation symmetry
/// between the two bottom rows, and the exact identity `J^2 = -I`.
pub fn verify_structure_matrix(n: usize, m: &PolyMatrix) -> StructureReport {
    let mut failures = Vec::new();
    let two_n = 2 * n;
    assert_eq!(m.nrows(), two_n, "matrix must be 2n x 2n");
    assert_eq!(m.ncols(), two_n, "matrix must be 2n x 2n");
    let i_const = Poly::constant(n, ComplexRational::i());
    let minus_i = Poly::constant(n, -&ComplexRational::i());

    for r in 0..two_n {
        for c in 0..two_n {
            let entry = &m[(r, c)];
            if r == c {
                let expected = if r % 2 == 0 { &i_const } else { &minus_i };
                if entry != expected {
                    failures.push(StructureFailure {
                        row: r,
                        col: c,
                        found: format!("{entry:?}"),
                        expected: format!("{expected:?}"),
                        check: "diagonal",
                    });
                }
                continue;
            }
            let allowed = (r == two_n - 2 && c % 2 == 1 && c < two_n - 1)
                || (r == two_n - 1 && c % 2 == 0 && c < two_n - 2);
            if !allowed {
                if !entry.is_zero() {
                    failures.push(StructureFailure {
                        row: r,
                        col: c,
                        found: format!("{entry:?}"),
                        expected: "0".to_string(),
                        check: "shape",
                    });
                }
                continue;
            }
            if !is_linear_in_z_prime(entry, n) {
                failures.push(StructureFailure {
                    row: r,
                    col: c,
                    found: format!("{entry:?}"),
                    expected: "linear form in z', zbar'".to_string(),
                    check: "linear-form",
                });
            }
        }
    }

    // conjugation symmetry between the two bottom rows
    for k in 0..n - 1 {
        let upper = &m[(two_n - 2, 2 * k + 1)];
        let lower = &m[(two_n - 1, 2 * k)];
        if *upper != lower.conj() {
            failures.push(StructureFailure {
                row: two_n - 2,
                col: 2 * k + 1,
                found: format!("{upper:?}"),
                expected: format!("conj of {lower:?}"),
                check: "conjugation-symmetry",
            });
        }
    }

    // J^2 = -I, entry by entry
    let square = m * m;
    for r in 0..two_n {
        for c in 0..two_n {
            let expected = if r == c {
                Poly::constant(n, ComplexRational::from_int(-1))
            } else {
                Poly::zero(n)
            };
            if square[(r, c)] != expected {
                failures.push(StructureFailure {
                    row: r,
                    col: c,
                    found: format!("{:?}", square[(r, c)]),
                    expected: format!("{expected:?}"),
                    check: "square-is-minus-identity",
                });
            }
        }
    }

    StructureReport { failures }
}

fn is_linear_in_z_prime(p: &Poly, n: usize) -> bool {
    p.iter_terms()
        .all(|(m, _)| m.total_degree() == 1 && m.alpha[n - 1] == 0 && m.beta[n - 1] == 0)
}

/// Frame of the boundary: `n-1` fields spanning the J-holomorphic tangent
/// space together with the transverse field `T`.
#[derive(Clone, Debug)]
pub struct TangentFrame {
    pub l_fields: Vec<VectorField>,
    pub t_field: VectorField,
    pub alphas: Vec<Poly>,
    pub betas: Vec<Poly>,
}
