//! Candidate maps and the symbolic verification battery.
//!
//! A `PolyMap` is an n-tuple of polynomials in `(z, zbar)`, optionally
//! truncated at a stated total degree; every verdict on a truncated map is
//! "modulo terms of higher degree" and each report states the degree up to
//! which it decides. All checks are residual-based: form the defining
//! identity as an exact polynomial (matrix) and test structural vanishing.

use crate::boundary::{reduce_mod_boundary, Point};
use crate::error::MapError;
use crate::levi::VectorField;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::scalar::ComplexRational;
use crate::structures::{ModelStructure, SimpleModelStructure};

/// Polynomial (or truncated-series) map `F : C^n -> C^n` written in `(z, zbar)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    n: usize,
    components: Vec<Poly>,
    truncation_order: Option<u32>,
}

impl PolyMap {
    /// An exact polynomial map.
    pub fn new(n: usize, components: Vec<Poly>) -> Self {
        assert_eq!(components.len(), n, "need n components");
        assert!(components.iter().all(|p| p.dim() == n));
        Self {
            n,
            components,
            truncation_order: None,
        }
    }

    /// A truncated map: terms above the order are dropped on construction and
    /// every assertion about the map holds modulo higher degree.
    pub fn truncated(n: usize, components: Vec<Poly>, order: u32) -> Self {
        assert_eq!(components.len(), n, "need n components");
        Self {
            n,
            components: components.into_iter().map(|p| p.truncate(order)).collect(),
            truncation_order: Some(order),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(n, (0..n).map(|j| Poly::var(n, j)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn component(&self, j: usize) -> &Poly {
        &self.components[j]
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn truncation_order(&self) -> Option<u32> {
        self.truncation_order
    }

    pub fn eval(&self, point: &[ComplexRational]) -> Point {
        self.components.iter().map(|p| p.eval(point)).collect()
    }

    pub fn constant_term(&self, j: usize) -> ComplexRational {
        let zeros = vec![0u32; self.n];
        self.components[j].coefficient(&zeros, &zeros)
    }

    pub fn fixes_origin(&self) -> bool {
        (0..self.n).all(|j| self.constant_term(j).is_zero())
    }

    /// Composition `self ∘ inner`, exact on polynomials. Truncation orders
    /// combine to the minimum; composing a truncated outer map with an inner
    /// map that moves the origin is refused, because the outer expansion is
    /// anchored there.
    pub fn compose(&self, inner: &PolyMap) -> Result<PolyMap, MapError> {
        assert_eq!(self.n, inner.n, "composition dimension mismatch");
        if self.truncation_order.is_some() && !inner.fixes_origin() {
            return Err(MapError::TruncatedComposition);
        }
        let components: Vec<Poly> = self
            .components
            .iter()
            .map(|p| p.substitute(&inner.components))
            .collect();
        let order = match (self.truncation_order, inner.truncation_order) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        Ok(match order {
            None => PolyMap::new(self.n, components),
            Some(k) => PolyMap::truncated(self.n, components, k),
        })
    }

    /// Complexified Jacobian over the interleaved frame: row `2j` holds the
    /// derivatives of `F_{j+1}`, row `2j+1` those of its conjugate.
    pub fn jacobian(&self) -> PolyMatrix {
        let n = self.n;
        let mut m = PolyMatrix::zero(2 * n, 2 * n, n);
        for j in 0..n {
            let f = &self.components[j];
            let fbar = f.conj();
            for k in 0..n {
                m[(2 * j, 2 * k)] = f.d_z(k);
                m[(2 * j, 2 * k + 1)] = f.d_zbar(k);
                m[(2 * j + 1, 2 * k)] = fbar.d_z(k);
                m[(2 * j + 1, 2 * k + 1)] = fbar.d_zbar(k);
            }
        }
        m
    }

    /// `rho ∘ F`, the composite defining function.
    pub fn rho_pullback(&self) -> Poly {
        Poly::rho(self.n).substitute(&self.components)
    }
}

/// Which verification produced a report.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    PseudoHolomorphic,
    ComponentSystem,
    BoundaryInvariance,
    CrOnBoundary,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::PseudoHolomorphic => "pseudo-holomorphic",
            CheckKind::ComponentSystem => "component-system",
            CheckKind::BoundaryInvariance => "boundary-invariance",
            CheckKind::CrOnBoundary => "cr-on-boundary",
        }
    }
}

/// One residual equation: the raw polynomial and, where the statement lives
/// on the boundary, its boundary-reduced form.
#[derive(Clone, Debug)]
pub struct ResidualEntry {
    pub label: String,
    pub residual: Poly,
    pub reduced: Option<Poly>,
}

impl ResidualEntry {
    /// The polynomial whose vanishing the check asserts.
    pub fn effective(&self) -> &Poly {
        self.reduced.as_ref().unwrap_or(&self.residual)
    }
}

/// Location of the first nonzero coefficient of a failing residual.
#[derive(Clone, Debug)]
pub struct OffendingCoefficient {
    pub label: String,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub value: ComplexRational,
}

/// Outcome of a residual check. `pass` means every asserted residual is the
/// zero polynomial up to `valid_up_to_degree` (all degrees when `None`).
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub check: CheckKind,
    pub entries: Vec<ResidualEntry>,
    pub pass: bool,
    pub valid_up_to_degree: Option<u32>,
    pub first_offending: Option<OffendingCoefficient>,
}

fn finish_report(
    check: CheckKind,
    mut entries: Vec<ResidualEntry>,
    decide_bound: Option<u32>,
) -> ResidualReport {
    if let Some(bound) = decide_bound {
        for e in &mut entries {
            e.residual = e.residual.truncate(bound);
            if let Some(r) = &e.reduced {
                e.reduced = Some(r.truncate(bound));
            }
        }
    }
    let mut first_offending = None;
    let mut pass = true;
    for e in &entries {
        if e.effective().is_zero() {
            continue;
        }
        pass = false;
        if first_offending.is_none() {
            let (m, v) = e.effective().leading_term().expect("nonzero");
            first_offending = Some(OffendingCoefficient {
                label: e.label.clone(),
                alpha: m.alpha.clone(),
                beta: m.beta.clone(),
                value: v.clone(),
            });
        }
    }
    ResidualReport {
        check,
        entries,
        pass,
        valid_up_to_degree: decide_bound,
        first_offending,
    }
}

/// Degree up to which a Jacobian-based residual of a truncated map is
/// decidable. `None` for exact maps.
fn jacobian_decide_bound(f: &PolyMap) -> Result<Option<u32>, MapError> {
    match f.truncation_order {
        None => Ok(None),
        Some(k) if k >= 1 => Ok(Some(k - 1)),
        Some(k) => Err(MapError::TruncationTooLow {
            order: k,
            needed: 1,
        }),
    }
}

/// Residual of the defining identity of pseudo-holomorphy:
/// `dF · J(z) - J'(F(z)) · dF`, entry by entry.
pub fn check_pseudoholomorphic(
    j_source: &ModelStructure,
    j_target: &ModelStructure,
    f: &PolyMap,
) -> Result<ResidualReport, MapError> {
    let n = f.n;
    for s in [j_source, j_target] {
        if s.dim() != n {
            return Err(MapError::DimensionMismatch {
                map_dim: n,
                structure_dim: s.dim(),
            });
        }
    }
    let bound = jacobian_decide_bound(f)?;
    let df = f.jacobian();
    let j_at_z = j_source.complexify();
    let j_at_f = j_target.complexify().map(|p| p.substitute(&f.components));
    let residual = &(&df * &j_at_z) - &(&j_at_f * &df);
    let entries = residual
        .entries()
        .filter(|(_, p)| !p.is_zero())
        .map(|((r, c), p)| ResidualEntry {
            label: format!("entry ({r},{c})"),
            residual: p.clone(),
            reduced: None,
        })
        .collect();
    Ok(finish_report(CheckKind::PseudoHolomorphic, entries, bound))
}

/// The `n-1` scalar equations a pseudo-holomorphic map of a simple structure
/// must satisfy:
/// `sum_l Ltilde_l(F) dF_l/dz_j = 2i dFbar_n/dz_j + Ltilde_j(z) dFbar_n/dzbar_n`.
/// This is exactly the bottom-row block of the full matrix identity.
pub fn check_component_system(
    jb: &SimpleModelStructure,
    f: &PolyMap,
) -> Result<ResidualReport, MapError> {
    let n = f.n;
    if jb.dim() != n {
        return Err(MapError::DimensionMismatch {
            map_dim: n,
            structure_dim: jb.dim(),
        });
    }
    let bound = jacobian_decide_bound(f)?;
    let b = jb.b();
    let fbar_n = f.components[n - 1].conj();
    let dfbar_n_dzbar_n = fbar_n.d_zbar(n - 1);
    let two_i = ComplexRational::gaussian(0, 2, 1);
    let model = jb.to_model();
    // Ltilde_l evaluated on F
    let lf: Vec<Poly> = (0..n - 1)
        .map(|l| {
            let mut acc = Poly::zero(n);
            for k in 0..n - 1 {
                if b[(l, k)].is_zero() {
                    continue;
                }
                acc = &acc + &f.components[k].scale(&b[(l, k)]);
            }
            acc
        })
        .collect();
    let mut entries = Vec::with_capacity(n - 1);
    for j in 0..n - 1 {
        let mut lhs = Poly::zero(n);
        for l in 0..n - 1 {
            if lf[l].is_zero() {
                continue;
            }
            lhs = &lhs + &(&lf[l] * &f.components[l].d_z(j));
        }
        let rhs = &fbar_n.d_z(j).scale(&two_i) + &(&model.ltilde(j) * &dfbar_n_dzbar_n);
        entries.push(ResidualEntry {
            label: format!("component equation j={}", j + 1),
            residual: &lhs - &rhs,
            reduced: None,
        });
    }
    Ok(finish_report(CheckKind::ComponentSystem, entries, bound))
}

/// Boundary invariance: `rho ∘ F` must vanish identically on the boundary,
/// i.e. reduce to the zero normal form.
pub fn check_boundary_invariance(f: &PolyMap) -> Result<ResidualReport, MapError> {
    let pullback = f.rho_pullback();
    let reduced = reduce_mod_boundary(&pullback).into_poly();
    let entries = vec![ResidualEntry {
        label: "rho∘F on the boundary".to_string(),
        residual: pullback,
        reduced: Some(reduced),
    }];
    Ok(finish_report(
        CheckKind::BoundaryInvariance,
        entries,
        f.truncation_order,
    ))
}

/// CR property of the boundary restriction: each frame field pushes forward
/// to a field that is (i) tangent to the boundary and (ii) an `i`-eigenvector
/// of the target structure, both identities taken modulo the boundary
/// relation.
pub fn check_cr_on_boundary(
    j_source: &ModelStructure,
    j_target: &ModelStructure,
    f: &PolyMap,
) -> Result<ResidualReport, MapError> {
    let n = f.n;
    for s in [j_source, j_target] {
        if s.dim() != n {
            return Err(MapError::DimensionMismatch {
                map_dim: n,
                structure_dim: s.dim(),
            });
        }
    }
    if !check_boundary_invariance(f)?.pass {
        return Err(MapError::NotBoundaryPreserving);
    }
    let bound = jacobian_decide_bound(f)?;
    let frame = j_source.tangent_frame();
    let j_at_f = j_target.complexify().map(|p| p.substitute(&f.components));
    let rho = Poly::rho(n);
    // gradient of rho pulled through F
    let drho_z: Vec<Poly> = (0..n)
        .map(|k| rho.d_z(k).substitute(&f.components))
        .collect();
    let drho_zbar: Vec<Poly> = (0..n)
        .map(|k| rho.d_zbar(k).substitute(&f.components))
        .collect();
    let mut entries = Vec::new();
    for (idx, l_field) in frame.l_fields.iter().enumerate() {
        let z = pushforward(f, l_field);
        // (i) tangency of the pushforward along the boundary
        let mut tangency = Poly::zero(n);
        for k in 0..n {
            tangency = &tangency + &(z.component(k) * &drho_z[k]);
            tangency = &tangency + &(z.component(n + k) * &drho_zbar[k]);
        }
        entries.push(ResidualEntry {
            label: format!("tangency of dF·L{}", idx + 1),
            residual: tangency.clone(),
            reduced: Some(reduce_mod_boundary(&tangency).into_poly()),
        });
        // (ii) eigenvector property for the target structure
        let jz = crate::levi::apply_matrix(&j_at_f, &z);
        let diff = &jz - &z.scale(&ComplexRational::i());
        for (k, comp) in diff.components().iter().enumerate() {
            if comp.is_zero() {
                continue;
            }
            entries.push(ResidualEntry {
                label: format!("eigenvector defect of dF·L{} in slot {k}", idx + 1),
                residual: comp.clone(),
                reduced: Some(reduce_mod_boundary(comp).into_poly()),
            });
        }
    }
    Ok(finish_report(CheckKind::CrOnBoundary, entries, bound))
}

/// Pushforward `dF · X` of a field through the map, in block order.
fn pushforward(f: &PolyMap, x: &VectorField) -> VectorField {
    let n = f.n;
    let mut comps = vec![Poly::zero(n); 2 * n];
    for k in 0..n {
        let fk = &f.components[k];
        let fk_bar = fk.conj();
        let mut holo = Poly::zero(n);
        let mut anti = Poly::zero(n);
        for m in 0..n {
            if !x.component(m).is_zero() {
                holo = &holo + &(&fk.d_z(m) * x.component(m));
                anti = &anti + &(&fk_bar.d_z(m) * x.component(m));
            }
            if !x.component(n + m).is_zero() {
                holo = &holo + &(&fk.d_zbar(m) * x.component(n + m));
                anti = &anti + &(&fk_bar.d_zbar(m) * x.component(n + m));
            }
        }
        comps[k] = holo;
        comps[n + k] = anti;
    }
    VectorField::new(n, comps)
}

/// Verdict of the product-form test `(F'(z'), c z_n + phi(zbar'))`.
#[derive(Clone, Debug)]
pub struct FormReport {
    pub pass: bool,
    /// The real scale in front of `z_n`, when the form holds.
    pub c: Option<ComplexRational>,
    /// The holomorphic head `F'` (components `1..n-1`), when the form holds.
    pub f_prime: Vec<Poly>,
    /// The antiholomorphic tail `phi(zbar')`, when the form holds.
    pub phi: Option<Poly>,
    pub valid_up_to_degree: Option<u32>,
    pub offending: Option<OffendingCoefficient>,
}

/// Checks the rigid shape of boundary-preserving pseudo-holomorphic maps
/// between non-integrable simple structures: the first `n-1` components
/// depend holomorphically on `z'` alone and the last is `c z_n + phi(zbar')`
/// with `c` real.
pub fn check_form(f: &PolyMap) -> FormReport {
    let n = f.n;
    let mut offending = None;
    let mut record = |component: usize, alpha: &[u32], beta: &[u32], value: &ComplexRational| {
        if offending.is_none() {
            offending = Some(OffendingCoefficient {
                label: format!("component {}", component + 1),
                alpha: alpha.to_vec(),
                beta: beta.to_vec(),
                value: value.clone(),
            });
        }
    };
    for j in 0..n - 1 {
        for (m, v) in f.components[j].iter_terms() {
            let depends_only_on_z_prime = m.beta.iter().all(|&e| e == 0) && m.alpha[n - 1] == 0;
            if !depends_only_on_z_prime {
                record(j, &m.alpha, &m.beta, v);
            }
        }
    }
    let mut c = None;
    let e_n: Vec<u32> = (0..n).map(|k| u32::from(k == n - 1)).collect();
    let zeros = vec![0u32; n];
    for (m, v) in f.components[n - 1].iter_terms() {
        if m.alpha == e_n && m.beta == zeros {
            if v.is_real() {
                c = Some(v.clone());
            } else {
                record(n - 1, &m.alpha, &m.beta, v);
            }
            continue;
        }
        let pure_antiholo_in_z_prime = m.alpha.iter().all(|&e| e == 0) && m.beta[n - 1] == 0;
        if !pure_antiholo_in_z_prime {
            record(n - 1, &m.alpha, &m.beta, v);
        }
    }
    let pass = offending.is_none();
    let f_prime = if pass {
        f.components[..n - 1].to_vec()
    } else {
        Vec::new()
    };
    let phi = if pass {
        let c_val = c.clone().unwrap_or_else(ComplexRational::zero);
        Some(&f.components[n - 1] - &Poly::var(n, n - 1).scale(&c_val))
    } else {
        None
    };
    FormReport {
        pass,
        c: if pass {
            Some(c.unwrap_or_else(ComplexRational::zero))
        } else {
            None
        },
        f_prime,
        phi,
        valid_up_to_degree: f.truncation_order,
        offending,
    }
}
