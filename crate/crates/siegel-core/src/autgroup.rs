//! The automorphism group of the Siegel half-plane with a simple structure.
//!
//! Every element is stored in the rational normal form `(A, c, zeta)`: the
//! action is the boundary translation by `zeta` applied after the linear part
//! `z -> (A z', c z_n)`. The constraints
//!
//! ```text
//! A^t conj(A) = c I,    A^t B A = c B,    rho(zeta) = 0,    c > 0
//! ```
//!
//! are verified exactly on construction. The classical factored picture —
//! an isotropy rotation composed with a dilation and a translation — involves
//! `sqrt(c)` and leaves the rational field, so it is exposed only as a
//! display view; the normal form itself stays rational, which is what makes
//! the reconstruction pipeline exact end to end.

use crate::boundary::{minus_one, origin, rho_at, Point};
use crate::error::AutError;
use crate::maps::PolyMap;
use crate::matrix::CMatrix;
use crate::poly::Poly;
use crate::scalar::{ComplexRational, Rational};
use crate::structures::SimpleModelStructure;
use num_traits::{One, Signed};

/// Element of the automorphism group in rational normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    structure: SimpleModelStructure,
    a: CMatrix,
    c: Rational,
    zeta: Point,
}

impl Automorphism {
    /// Builds and fully verifies an element.
    pub fn try_new(
        structure: SimpleModelStructure,
        a: CMatrix,
        c: Rational,
        zeta: Point,
    ) -> Result<Self, AutError> {
        let n = structure.dim();
        if a.nrows() != n - 1 || a.ncols() != n - 1 || zeta.len() != n {
            return Err(AutError::IncompatibleStructures);
        }
        if !c.is_positive() {
            return Err(AutError::NonPositiveScale(crate::scalar::rational_string(
                &c,
            )));
        }
        let c_scalar = ComplexRational::from_real(c.clone());
        // A^t conj(A) = c I
        let gram = &a.transpose() * &a.conj();
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let expected = if i == j {
                    c_scalar.clone()
                } else {
                    ComplexRational::zero()
                };
                if gram[(i, j)] != expected {
                    return Err(AutError::UnitarityFailed {
                        i,
                        j,
                        got: gram[(i, j)].to_string(),
                        expected: expected.to_string(),
                    });
                }
            }
        }
        // A^t B A = c B
        let atba = &(&a.transpose() * structure.b()) * &a;
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                let expected = &structure.b()[(i, j)] * &c_scalar;
                if atba[(i, j)] != expected {
                    return Err(AutError::BCompatFailed {
                        i,
                        j,
                        got: atba[(i, j)].to_string(),
                        expected: expected.to_string(),
                    });
                }
            }
        }
        let rho = rho_at(&zeta);
        if !rho.is_zero() {
            return Err(AutError::OffBoundary {
                rho: rho.to_string(),
            });
        }
        Ok(Self {
            structure,
            a,
            c,
            zeta,
        })
    }

    pub fn identity(structure: SimpleModelStructure) -> Self {
        let n = structure.dim();
        Self::try_new(
            structure,
            CMatrix::identity(n - 1),
            Rational::one(),
            origin(n),
        )
        .expect("identity satisfies the constraints")
    }

    /// Dilation with rational square root: `s > 0` gives the map
    /// `z -> (z'/s, z_n/s^2)`, i.e. the normal form `((1/s) I, 1/s^2, 0)`.
    pub fn dilation(structure: SimpleModelStructure, s: &Rational) -> Result<Self, AutError> {
        if !s.is_positive() {
            return Err(AutError::NonPositiveDilation(
                crate::scalar::rational_string(s),
            ));
        }
        let n = structure.dim();
        let inv = s.recip();
        let a = CMatrix::scalar(n - 1, &ComplexRational::from_real(inv.clone()));
        Self::try_new(structure, a, &inv * &inv, origin(n))
    }

    /// Boundary translation by `zeta`.
    pub fn translation(structure: SimpleModelStructure, zeta: Point) -> Result<Self, AutError> {
        let n = structure.dim();
        Self::try_new(structure, CMatrix::identity(n - 1), Rational::one(), zeta)
    }

    /// Isotropy rotation: `c = 1`, so `A` must be unitary and `B`-compatible.
    pub fn isotropy(structure: SimpleModelStructure, a: CMatrix) -> Result<Self, AutError> {
        let n = structure.dim();
        Self::try_new(structure, a, Rational::one(), origin(n))
    }

    pub fn structure(&self) -> &SimpleModelStructure {
        &self.structure
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.a
    }

    pub fn scale(&self) -> &Rational {
        &self.c
    }

    pub fn translation_part(&self) -> &Point {
        &self.zeta
    }

    pub fn is_identity(&self) -> bool {
        self.a == CMatrix::identity(self.dim() - 1)
            && self.c.is_one()
            && self.zeta.iter().all(ComplexRational::is_zero)
    }

    /// Exact action on a point.
    pub fn apply(&self, z: &[ComplexRational]) -> Point {
        let n = self.dim();
        assert_eq!(z.len(), n);
        // linear part
        let z_prime: Vec<ComplexRational> = z[..n - 1].to_vec();
        let mut w: Point = self.a.mul_vec(&z_prime);
        let c_scalar = ComplexRational::from_real(self.c.clone());
        w.push(&z[n - 1] * &c_scalar);
        // translation part
        self.translate_point(&w)
    }

    /// The translation acting alone on a point `w`:
    /// `(w' + zeta', w_n + zeta_n - 2<w', zeta'> + i Re B(w', zeta'))`.
    fn translate_point(&self, w: &[ComplexRational]) -> Point {
        let n = self.dim();
        let mut out: Point = (0..n - 1).map(|j| &w[j] + &self.zeta[j]).collect();
        let mut last = &w[n - 1] + &self.zeta[n - 1];
        // -2 <w', zeta'>
        let mut pairing = ComplexRational::zero();
        for j in 0..n - 1 {
            pairing += &(&w[j] * &self.zeta[j].conj());
        }
        last -= &pairing.scale(&Rational::from_integer(2.into()));
        // + i Re B(w', zeta')
        let b = self.structure.b();
        let mut bform = ComplexRational::zero();
        for j in 0..n - 1 {
            for k in 0..n - 1 {
                if b[(j, k)].is_zero() {
                    continue;
                }
                bform += &(&(&b[(j, k)] * &w[j]) * &self.zeta[k]);
            }
        }
        let re_b = ComplexRational::from_real(bform.re.clone());
        last += &(&ComplexRational::i() * &re_b);
        out.push(last);
        out
    }

    /// The action as an exact polynomial map (components of degree at most 1
    /// in `(z, zbar)`, plus constants).
    pub fn as_polymap(&self) -> PolyMap {
        let n = self.dim();
        // linear part: w' = A z', w_n = c z_n
        let z_vars: Vec<Poly> = (0..n - 1).map(|j| Poly::var(n, j)).collect();
        let mut w: Vec<Poly> = (0..n - 1)
            .map(|j| {
                let mut acc = Poly::zero(n);
                for k in 0..n - 1 {
                    if self.a[(j, k)].is_zero() {
                        continue;
                    }
                    acc = &acc + &z_vars[k].scale(&self.a[(j, k)]);
                }
                acc
            })
            .collect();
        let c_scalar = ComplexRational::from_real(self.c.clone());
        w.push(Poly::var(n, n - 1).scale(&c_scalar));

        // translation on top
        let mut components: Vec<Poly> = (0..n - 1)
            .map(|j| &w[j] + &Poly::constant(n, self.zeta[j].clone()))
            .collect();
        let mut last = &w[n - 1] + &Poly::constant(n, self.zeta[n - 1].clone());
        for j in 0..n - 1 {
            let coeff = self.zeta[j].conj().scale(&Rational::from_integer(2.into()));
            last = &last - &w[j].scale(&coeff);
        }
        // i Re B(w', zeta') = (i/2)(B(w', zeta') + conj(B(w', zeta')))
        let b = self.structure.b();
        let mut bform = Poly::zero(n);
        for j in 0..n - 1 {
            for k in 0..n - 1 {
                if b[(j, k)].is_zero() {
                    continue;
                }
                bform = &bform + &w[j].scale(&(&b[(j, k)] * &self.zeta[k]));
            }
        }
        let half_i = ComplexRational::gaussian(0, 1, 2);
        last = &last + &(&bform + &bform.conj()).scale(&half_i);
        components.push(last);
        PolyMap::new(n, components)
    }

    /// Group law: `(self ∘ other)(z) = self(other(z))`, exactly, in normal
    /// form. The composite translation parameter is `self(zeta_other)`.
    pub fn compose(&self, other: &Self) -> Result<Self, AutError> {
        if self.structure != other.structure {
            return Err(AutError::IncompatibleStructures);
        }
        let a = &self.a * &other.a;
        let c = &self.c * &other.c;
        let zeta = self.apply(&other.zeta);
        Self::try_new(self.structure.clone(), a, c, zeta)
    }

    /// Exact inverse. With `A^t conj(A) = c I` the matrix inverse is the
    /// scaled adjoint `conj(A)^t / c`.
    pub fn invert(&self) -> Self {
        let n = self.dim();
        let c_scalar = ComplexRational::from_real(self.c.clone());
        let a_inv = self
            .a
            .adjoint()
            .scale(&c_scalar.inv().expect("positive scale"));
        // inverse translation parameter: psi_zeta^{-1} = psi_xi with
        // xi = (-zeta', -zeta_n - 2|zeta'|^2)
        let mut xi: Point = self.zeta[..n - 1].iter().map(|z| -z).collect();
        let mut norm = Rational::from_integer(0.into());
        for z in &self.zeta[..n - 1] {
            norm += z.norm_sqr();
        }
        let mut last = -&self.zeta[n - 1];
        last -= &ComplexRational::from_real(norm).scale(&Rational::from_integer(2.into()));
        xi.push(last);
        // conjugate the translation through the inverse linear part
        let c_inv = self.c.recip();
        let c_inv_scalar = ComplexRational::from_real(c_inv.clone());
        let mut zeta_new: Point = a_inv.mul_vec(&xi[..n - 1]);
        zeta_new.push(&xi[n - 1] * &c_inv_scalar);
        Self::try_new(self.structure.clone(), a_inv, c_inv, zeta_new)
            .expect("group inverse satisfies the constraints")
    }

    /// Whether the element fixes the distinguished interior point
    /// `(0, ..., 0, -1)`; in normal form this happens exactly when `c = 1`
    /// and `zeta = 0`.
    pub fn fixes_minus_one(&self) -> bool {
        let p = minus_one(self.dim());
        self.apply(&p) == p
    }

    /// Membership in the isotropy subgroup of `(0, ..., 0, -1)`, which is
    /// characterized as the rotations `(A, 1, 0)` only in the non-integrable
    /// regime; for `B = 0` the group is larger and the verdict is refused.
    pub fn isotropy_membership(&self) -> Result<bool, AutError> {
        if self.structure.is_standard() {
            return Err(AutError::IntegrableIsotropyUndecided);
        }
        Ok(self.c.is_one() && self.zeta.iter().all(ComplexRational::is_zero))
    }

    /// Display-only factored view: dilation parameter `tau = 1/c`, rotation
    /// `A' = A / sqrt(c)`, translation `zeta`. Exact matrices are available
    /// only when `sqrt(c)` is rational; the floating entries always are.
    pub fn factored_view(&self) -> FactoredView {
        let sqrt_c = ComplexRational::from_real(self.c.clone()).sqrt_exact();
        let a_prime_exact = sqrt_c
            .as_ref()
            .map(|s| self.a.scale(&ComplexRational::from_real(s.recip())));
        let sqrt_c_f64 = num_traits::ToPrimitive::to_f64(&self.c)
            .map(f64::sqrt)
            .unwrap_or(f64::NAN);
        let m = self.dim() - 1;
        let mut a_prime_float = vec![vec![(0.0, 0.0); m]; m];
        for i in 0..m {
            for j in 0..m {
                let v = self.a[(i, j)].to_c64();
                a_prime_float[i][j] = (v.re / sqrt_c_f64, v.im / sqrt_c_f64);
            }
        }
        FactoredView {
            tau: self.c.recip(),
            sqrt_c,
            a_prime_exact,
            a_prime_float,
            zeta: self.zeta.clone(),
        }
    }
}

/// Factorization of an element into translation ∘ rotation ∘ dilation, for
/// display. The rotation involves `sqrt(c)` and is exact only when that root
/// is rational.
#[derive(Clone, Debug)]
pub struct FactoredView {
    pub tau: Rational,
    pub sqrt_c: Option<Rational>,
    pub a_prime_exact: Option<CMatrix>,
    pub a_prime_float: Vec<Vec<(f64, f64)>>,
    pub zeta: Point,
}

/// An element sending one boundary point to another: the translation by `q`
/// composed with the inverse of the translation by `p`.
pub fn transitivity_witness(
    structure: SimpleModelStructure,
    p: &[ComplexRational],
    q: &[ComplexRational],
) -> Result<Automorphism, AutError> {
    let psi_p = Automorphism::translation(structure.clone(), p.to_vec())?;
    let psi_q = Automorphism::translation(structure, q.to_vec())?;
    psi_q.compose(&psi_p.invert())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::check_pseudoholomorphic;

    fn jb(n: usize, b12: ComplexRational) -> SimpleModelStructure {
        let mut b = CMatrix::zero(n - 1, n - 1);
        b[(0, 1)] = b12.clone();
        b[(1, 0)] = -&b12;
        SimpleModelStructure::new(n, b).unwrap()
    }

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p.into(), q.into())
    }

    #[test]
    fn dilation_action() {
        let s = jb(3, ComplexRational::one());
        let d = Automorphism::dilation(s, &rat(2, 1)).unwrap();
        let z = vec![
            ComplexRational::from_int(2),
            ComplexRational::from_int(4),
            ComplexRational::from_int(8),
        ];
        assert_eq!(
            d.apply(&z),
            vec![
                ComplexRational::from_int(1),
                ComplexRational::from_int(2),
                ComplexRational::from_int(2),
            ]
        );
        // group law of dilations
        let s = jb(3, ComplexRational::one());
        let d2 = Automorphism::dilation(s.clone(), &rat(3, 1)).unwrap();
        let d6 = Automorphism::dilation(s, &rat(6, 1)).unwrap();
        let d_one = Automorphism::dilation(jb(3, ComplexRational::one()), &rat(1, 1)).unwrap();
        assert!(d_one.is_identity());
        assert_eq!(d.compose(&d2).unwrap(), d6);
    }

    #[test]
    fn translation_action_matches_the_formula() {
        // n = 2, B = 0, zeta = (1, -1): z -> (z1 + 1, z2 - 1 - 2 z1)
        let s = SimpleModelStructure::standard(2);
        let zeta = vec![ComplexRational::from_int(1), ComplexRational::from_int(-1)];
        let t = Automorphism::translation(s, zeta).unwrap();
        let map = t.as_polymap();
        let expected_first = &Poly::var(2, 0) + &Poly::one(2);
        assert_eq!(*map.component(0), expected_first);
        let expected_last = &(&Poly::var(2, 1) - &Poly::one(2))
            - &Poly::var(2, 0).scale(&ComplexRational::from_int(2));
        assert_eq!(*map.component(1), expected_last);
    }

    #[test]
    fn translations_preserve_rho_exactly() {
        let s = jb(3, ComplexRational::gaussian(1, 1, 2));
        let zeta = vec![
            ComplexRational::gaussian(1, 1, 1),
            ComplexRational::from_int(1),
            ComplexRational::gaussian(-3, 7, 1),
        ];
        assert!(rho_at(&zeta).is_zero());
        let t = Automorphism::translation(s, zeta).unwrap();
        let pullback = t.as_polymap().rho_pullback();
        assert_eq!(pullback, Poly::rho(3));
    }

    #[test]
    fn rho_scales_by_c_under_the_action() {
        let s = jb(3, ComplexRational::from_ratio(1, 3));
        let g = sample_element(&s);
        let pullback = g.as_polymap().rho_pullback();
        let c = ComplexRational::from_real(g.scale().clone());
        assert_eq!(pullback, Poly::rho(3).scale(&c));
    }

    fn sample_element(s: &SimpleModelStructure) -> Automorphism {
        // 2x2 family: A = [[a, -conj(b)], [b, conj(a)]] gives
        // A^t conj(A) = (|a|^2+|b|^2) I and det A = c, so B-compatibility
        // holds for every antisymmetric 2x2 B.
        let a = ComplexRational::gaussian(1, 2, 1);
        let b = ComplexRational::gaussian(-1, 1, 1);
        let mut m = CMatrix::zero(2, 2);
        m[(0, 0)] = a.clone();
        m[(0, 1)] = -&b.conj();
        m[(1, 0)] = b.clone();
        m[(1, 1)] = a.conj();
        let c = &a.norm_sqr() + &b.norm_sqr();
        let zeta = vec![
            ComplexRational::from_int(1),
            ComplexRational::i(),
            ComplexRational::gaussian(-2, 5, 1),
        ];
        assert!(rho_at(&zeta).is_zero());
        let lin = Automorphism::try_new(s.clone(), m, c, origin(3)).unwrap();
        let tr = Automorphism::translation(s.clone(), zeta).unwrap();
        tr.compose(&lin).unwrap()
    }

    #[test]
    fn isotropy_constraints() {
        // B standard symplectic 2x2, A = diag(i, -i): accepted
        let s = jb(3, ComplexRational::one());
        let mut a = CMatrix::zero(2, 2);
        a[(0, 0)] = ComplexRational::i();
        a[(1, 1)] = -&ComplexRational::i();
        let phi = Automorphism::isotropy(s.clone(), a).unwrap();
        assert!(phi.fixes_minus_one());
        assert!(phi.isotropy_membership().unwrap());
        // A = 2I: rejected
        let two_i_matrix = CMatrix::scalar(2, &ComplexRational::from_int(2));
        assert!(matches!(
            Automorphism::isotropy(s, two_i_matrix),
            Err(AutError::UnitarityFailed { .. })
        ));
    }

    #[test]
    fn isotropy_refused_in_integrable_regime() {
        let s = SimpleModelStructure::standard(3);
        let id = Automorphism::identity(s);
        assert!(matches!(
            id.isotropy_membership(),
            Err(AutError::IntegrableIsotropyUndecided)
        ));
    }

    #[test]
    fn identity_polymap_is_the_identity_map() {
        let s = jb(3, ComplexRational::one());
        let id = Automorphism::identity(s);
        assert_eq!(id.as_polymap(), crate::maps::PolyMap::identity(3));
    }

    #[test]
    fn compose_invert_round_trip() {
        let s = jb(3, ComplexRational::gaussian(2, -1, 3));
        let g = sample_element(&s);
        let id = g.compose(&g.invert()).unwrap();
        assert!(id.is_identity());
        let id = g.invert().compose(&g).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn composition_matches_pointwise_action() {
        let s = jb(3, ComplexRational::one());
        let g1 = sample_element(&s);
        let g2 = Automorphism::dilation(s.clone(), &rat(3, 2)).unwrap();
        let composite = g1.compose(&g2).unwrap();
        let z = vec![
            ComplexRational::gaussian(1, -1, 3),
            ComplexRational::from_ratio(2, 7),
            ComplexRational::gaussian(4, 9, 5),
        ];
        assert_eq!(composite.apply(&z), g1.apply(&g2.apply(&z)));
        // and as polynomial maps
        let composed_map = g1.as_polymap().compose(&g2.as_polymap()).unwrap();
        assert_eq!(composed_map, composite.as_polymap());
    }

    #[test]
    fn linear_part_conjugates_translations() {
        // M ∘ psi_zeta = psi_{M(zeta)} ∘ M for the linear part M = (Az', c z_n)
        let s = jb(3, ComplexRational::gaussian(1, -2, 5));
        let lin = {
            let g = sample_element(&s);
            // strip the translation: keep (A, c) with zeta = 0
            Automorphism::try_new(s.clone(), g.matrix().clone(), g.scale().clone(), origin(3))
                .unwrap()
        };
        let zeta = vec![
            ComplexRational::gaussian(1, 1, 2),
            ComplexRational::from_int(-1),
            ComplexRational::gaussian(-6, 3, 4),
        ];
        assert!(rho_at(&zeta).is_zero());
        let psi = Automorphism::translation(s.clone(), zeta.clone()).unwrap();
        let lhs = lin.compose(&psi).unwrap();
        let rhs = Automorphism::translation(s, lin.apply(&zeta))
            .unwrap()
            .compose(&lin)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_law() {
        let s = jb(3, ComplexRational::gaussian(0, 1, 2));
        let zeta = vec![
            ComplexRational::from_int(1),
            ComplexRational::zero(),
            ComplexRational::gaussian(-1, 2, 1),
        ];
        let xi = vec![
            ComplexRational::i(),
            ComplexRational::from_int(-1),
            ComplexRational::gaussian(-2, -3, 1),
        ];
        assert!(rho_at(&zeta).is_zero() && rho_at(&xi).is_zero());
        let psi_zeta = Automorphism::translation(s.clone(), zeta.clone()).unwrap();
        let psi_xi = Automorphism::translation(s.clone(), xi.clone()).unwrap();
        let lhs = psi_zeta.compose(&psi_xi).unwrap();
        let rhs = Automorphism::translation(s, psi_zeta.apply(&xi)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn automorphisms_are_pseudoholomorphic() {
        let s = jb(3, ComplexRational::gaussian(1, 1, 4));
        let g = sample_element(&s);
        let model = s.to_model();
        let report = check_pseudoholomorphic(&model, &model, &g.as_polymap()).unwrap();
        assert!(report.pass, "{:?}", report.first_offending);
    }

    #[test]
    fn transitivity_witness_moves_p_to_q() {
        let s = jb(3, ComplexRational::one());
        let p = vec![
            ComplexRational::from_int(1),
            ComplexRational::from_int(1),
            ComplexRational::gaussian(-2, 1, 1),
        ];
        let q = vec![
            ComplexRational::zero(),
            ComplexRational::gaussian(1, 2, 2),
            ComplexRational::gaussian(-5, -3, 4),
        ];
        assert!(rho_at(&p).is_zero() && rho_at(&q).is_zero());
        let g = transitivity_witness(s.clone(), &p, &q).unwrap();
        assert_eq!(g.apply(&p), q);
        // from the origin the witness is the plain translation
        let from_origin = transitivity_witness(s.clone(), &origin(3), &q).unwrap();
        assert_eq!(from_origin, Automorphism::translation(s, q).unwrap());
    }

    #[test]
    fn invalid_elements_are_rejected() {
        let s = jb(3, ComplexRational::one());
        // off-boundary translation parameter
        let bad = vec![
            ComplexRational::zero(),
            ComplexRational::zero(),
            ComplexRational::from_int(1),
        ];
        assert!(matches!(
            Automorphism::translation(s.clone(), bad),
            Err(AutError::OffBoundary { .. })
        ));
        // non-positive scale
        assert!(matches!(
            Automorphism::try_new(s.clone(), CMatrix::identity(2), rat(-1, 1), origin(3)),
            Err(AutError::NonPositiveScale(_))
        ));
        // B-incompatible matrix: unitary but det = -1 (swap)
        let mut swap = CMatrix::zero(2, 2);
        swap[(0, 1)] = ComplexRational::one();
        swap[(1, 0)] = ComplexRational::one();
        assert!(matches!(
            Automorphism::isotropy(s, swap),
            Err(AutError::BCompatFailed { .. })
        ));
    }

    #[test]
    fn factored_view_recovers_square_roots() {
        let s = jb(3, ComplexRational::one());
        let g = Automorphism::try_new(
            s,
            CMatrix::scalar(2, &ComplexRational::from_int(2)),
            rat(4, 1),
            origin(3),
        )
        .unwrap();
        let view = g.factored_view();
        assert_eq!(view.tau, rat(1, 4));
        assert_eq!(view.sqrt_c.unwrap(), rat(2, 1));
        assert_eq!(view.a_prime_exact.unwrap(), CMatrix::identity(2));
    }
}
