//! Base-point normalization, 2-jet extraction, the constraint chain that pins
//! the jet of a boundary-preserving pseudo-holomorphic map, and the
//! reconstruction of the matching automorphism.
//!
//! For a map `F` fixing the origin, written in the product form, the chain
//! runs:
//!
//! 1. product form `(F'(z'), c z_n + phi(zbar'))` with `F(0) = 0`;
//! 2. the constant terms of the component system force the antiholomorphic
//!    linear coefficients of `F_n` to vanish;
//! 3. the pure-antiholomorphic quadratic terms of `rho∘F` on the boundary are
//!    exactly the antiholomorphic quadratic coefficients of `F_n`, so they
//!    vanish;
//! 4. the linear coefficient matrix `A` is invertible (local diffeomorphism);
//! 5. the mixed cubic terms of `rho∘F` on the boundary form, for each fixed
//!    holomorphic pair, a linear system with matrix `conj(A)^t`; invertibility
//!    forces the holomorphic quadratic tensor to vanish;
//! 6. the mixed quadratic terms give `A^t conj(A) = c I`;
//! 7. `c` equals the squared norm of any column of `A`, hence is positive.
//!
//! A trace records each step with the values it extracted; reconstruction
//! builds the automorphism `(A, c, 0)` and checks that its 2-jet matches.

use crate::autgroup::Automorphism;
use crate::boundary::{reduce_mod_boundary, rho_at, Point};
use crate::error::{AutError, JetError};
use crate::maps::{check_component_system, check_form, PolyMap};
use crate::matrix::CMatrix;
use crate::scalar::ComplexRational;
use crate::structures::SimpleModelStructure;
use num_traits::Signed;

/// All order-two data of a map fixing the origin.
///
/// The quadratic tensors are stored symmetrized: the `(k, l)` entry is half
/// the coefficient of the mixed monomial and the full coefficient of the
/// square, so a tensor vanishes iff the corresponding monomials do.
#[derive(Clone, Debug)]
pub struct Jet2 {
    pub n: usize,
    /// Linear coefficients of the first `n-1` components on `z'`.
    pub a: CMatrix,
    /// Coefficient of `z_n` in the last component.
    pub c: ComplexRational,
    /// Symmetric tensors `quad_holo[j][(k, l)]`: coefficient data of
    /// `z_k z_l` in component `j`.
    pub quad_holo: Vec<CMatrix>,
    /// Coefficients of `zbar_k` in the last component.
    pub antiholo_lin: Vec<ComplexRational>,
    /// Symmetric tensor of `zbar_k zbar_l` in the last component.
    pub antiholo_quad: CMatrix,
    /// Pure antiholomorphic cubic coefficients of the last component,
    /// reported when the input carries order-3 data; sparse list of
    /// `((p, k, l), coefficient)` monomial reads with `p <= k <= l`.
    pub antiholo_cubic: Option<Vec<([usize; 3], ComplexRational)>>,
    /// Every other order-<=2 coefficient, which must vanish for maps of the
    /// product form: `(component, alpha, beta, value)`.
    pub residual_terms: Vec<(usize, Vec<u32>, Vec<u32>, ComplexRational)>,
}

impl Jet2 {
    pub fn is_linear_normal_form(&self) -> bool {
        self.quad_holo.iter().all(CMatrix::is_zero)
            && self.antiholo_lin.iter().all(ComplexRational::is_zero)
            && self.antiholo_quad.is_zero()
            && self.residual_terms.is_empty()
    }
}

/// Exact coefficient reads of all order-two data. Total: no constraint is
/// enforced beyond `F(0) = 0` and enough truncation to see degree two.
pub fn extract_jet2(f: &PolyMap) -> Result<Jet2, JetError> {
    let n = f.dim();
    if let Some(k) = f.truncation_order() {
        if k < 2 {
            return Err(JetError::TruncationTooLow {
                order: k,
                needed: 2,
            });
        }
    }
    for j in 0..n {
        let c0 = f.constant_term(j);
        if !c0.is_zero() {
            return Err(JetError::NonzeroConstantTerm {
                component: j,
                value: c0.to_string(),
            });
        }
    }
    let m = n - 1;
    let mut a = CMatrix::zero(m, m);
    let mut quad_holo = vec![CMatrix::zero(m, m); m];
    let mut antiholo_lin = vec![ComplexRational::zero(); m];
    let mut antiholo_quad = CMatrix::zero(m, m);
    let mut residual_terms = Vec::new();
    let has_cubic = f.truncation_order().is_none_or(|k| k >= 3);
    let mut antiholo_cubic = if has_cubic { Some(Vec::new()) } else { None };
    let half = ComplexRational::from_ratio(1, 2);

    for j in 0..n {
        for (mono, v) in f.component(j).iter_terms() {
            let deg = mono.total_degree();
            let alpha_support: Vec<usize> = (0..n).filter(|&k| mono.alpha[k] > 0).collect();
            let beta_support: Vec<usize> = (0..n).filter(|&k| mono.beta[k] > 0).collect();
            let pure_holo_prime = beta_support.is_empty() && mono.alpha[n - 1] == 0;
            let pure_anti_prime = alpha_support.is_empty() && mono.beta[n - 1] == 0;
            if j < n - 1 {
                if deg > 2 {
                    continue;
                }
                if deg == 1 && pure_holo_prime {
                    a[(j, alpha_support[0])] = v.clone();
                    continue;
                }
                if deg == 2 && pure_holo_prime {
                    match alpha_support.as_slice() {
                        [k] => quad_holo[j][(*k, *k)] = v.clone(),
                        [k, l] => {
                            let halved = v * &half;
                            quad_holo[j][(*k, *l)] = halved.clone();
                            quad_holo[j][(*l, *k)] = halved;
                        }
                        _ => unreachable!("degree-2 monomial has at most two variables"),
                    }
                    continue;
                }
                residual_terms.push((j, mono.alpha.clone(), mono.beta.clone(), v.clone()));
                continue;
            }
            // last component
            if deg == 1 && mono.alpha[n - 1] == 1 {
                // c z_n
                continue;
            }
            if deg == 1 && pure_anti_prime {
                antiholo_lin[beta_support[0]] = v.clone();
                continue;
            }
            if deg == 2 && pure_anti_prime {
                match beta_support.as_slice() {
                    [k] => antiholo_quad[(*k, *k)] = v.clone(),
                    [k, l] => {
                        let halved = v * &half;
                        antiholo_quad[(*k, *l)] = halved.clone();
                        antiholo_quad[(*l, *k)] = halved;
                    }
                    _ => unreachable!(),
                }
                continue;
            }
            if deg == 3 && pure_anti_prime {
                if let Some(cubic) = antiholo_cubic.as_mut() {
                    let mut idx = Vec::with_capacity(3);
                    for (k, &e) in mono.beta.iter().enumerate() {
                        for _ in 0..e {
                            idx.push(k);
                        }
                    }
                    cubic.push(([idx[0], idx[1], idx[2]], v.clone()));
                }
                continue;
            }
            if deg <= 2 {
                residual_terms.push((j, mono.alpha.clone(), mono.beta.clone(), v.clone()));
            }
        }
    }
    let e_n: Vec<u32> = (0..n).map(|k| u32::from(k == n - 1)).collect();
    let zeros = vec![0u32; n];
    let c = f.component(n - 1).coefficient(&e_n, &zeros);
    Ok(Jet2 {
        n,
        a,
        c,
        quad_holo,
        antiholo_lin,
        antiholo_quad,
        antiholo_cubic,
        residual_terms,
    })
}

/// One verification step of the constraint chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    FormAndBasePoint,
    AntiholoLinearVanishes,
    AntiholoQuadraticVanishes,
    MatrixInvertible,
    HoloQuadraticVanishes,
    ScaledUnitarity,
    PositiveScale,
}

impl StepKind {
    pub fn name(&self) -> &'static str {
        match self {
            StepKind::FormAndBasePoint => "form-and-base-point",
            StepKind::AntiholoLinearVanishes => "antiholomorphic-linear-vanishes",
            StepKind::AntiholoQuadraticVanishes => "antiholomorphic-quadratic-vanishes",
            StepKind::MatrixInvertible => "matrix-invertible",
            StepKind::HoloQuadraticVanishes => "holomorphic-quadratic-vanishes",
            StepKind::ScaledUnitarity => "scaled-unitarity",
            StepKind::PositiveScale => "positive-scale",
        }
    }

    /// Where the constraint comes from, stated as mathematics.
    pub fn anchor(&self) -> &'static str {
        match self {
            StepKind::FormAndBasePoint => {
                "boundary-preserving maps of non-integrable simple structures have the product form (F'(z'), c z_n + phi(zbar')) with c real; the base point is normalized to F(0) = 0"
            }
            StepKind::AntiholoLinearVanishes => {
                "constant terms of the component pseudo-holomorphy system vanish at a fixed origin, forcing the antiholomorphic linear coefficients of the last component to zero"
            }
            StepKind::AntiholoQuadraticVanishes => {
                "the only pure-antiholomorphic quadratic terms of rho∘F on the boundary are the antiholomorphic quadratic coefficients of the last component, so boundary invariance kills them"
            }
            StepKind::MatrixInvertible => {
                "a local diffeomorphism at the origin has an invertible linear coefficient matrix A"
            }
            StepKind::HoloQuadraticVanishes => {
                "matching the z_p z_l zbar_k terms of rho∘F on the boundary yields, for each fixed (p, l), a linear system with matrix conj(A)^t; invertibility forces the holomorphic quadratic tensor to zero"
            }
            StepKind::ScaledUnitarity => {
                "matching the z_p zbar_k terms of rho∘F on the boundary, after substituting Re(z_n) = -|z'|^2, states A^t conj(A) = c I"
            }
            StepKind::PositiveScale => {
                "c equals the squared norm of each column of A; with A invertible the columns are nonzero, so c > 0"
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepStatus {
    Passed,
    Failed { detail: String },
}

/// A recorded step: what was checked, where the constraint comes from,
/// whether it held, and the values extracted along the way.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub step: StepKind,
    pub anchor: &'static str,
    pub status: StepStatus,
    pub data: Vec<(String, String)>,
}

/// Ordered audit log of the constraint chain.
#[derive(Clone, Debug)]
pub struct ReconstructionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReconstructionTrace {
    pub fn pass(&self) -> bool {
        self.steps
            .iter()
            .all(|s| matches!(s.status, StepStatus::Passed))
    }

    pub fn failed_step(&self) -> Option<&TraceStep> {
        self.steps
            .iter()
            .find(|s| matches!(s.status, StepStatus::Failed { .. }))
    }

    fn push_pass(&mut self, step: StepKind, data: Vec<(String, String)>) {
        self.steps.push(TraceStep {
            anchor: step.anchor(),
            step,
            status: StepStatus::Passed,
            data,
        });
    }

    fn push_fail(&mut self, step: StepKind, detail: String, data: Vec<(String, String)>) {
        self.steps.push(TraceStep {
            anchor: step.anchor(),
            step,
            status: StepStatus::Failed { detail },
            data,
        });
    }
}

fn exps(n: usize, pairs: &[(usize, u32)]) -> Vec<u32> {
    let mut v = vec![0u32; n];
    for &(i, e) in pairs {
        v[i] += e;
    }
    v
}

/// Runs the constraint chain on `f` over the structure `jb`. Precondition
/// failures (dimension, integrable regime, truncation below two) are hard
/// errors; every mathematical violation is recorded in the returned trace,
/// which halts at its first failed step.
pub fn verify_constraints(
    f: &PolyMap,
    jb: &SimpleModelStructure,
) -> Result<ReconstructionTrace, JetError> {
    let n = f.dim();
    if n < 3 {
        return Err(JetError::DimensionTooSmall(n));
    }
    if jb.is_standard() {
        return Err(JetError::IntegrableRegime);
    }
    if jb.dim() != n {
        return Err(JetError::Map(crate::error::MapError::DimensionMismatch {
            map_dim: n,
            structure_dim: jb.dim(),
        }));
    }
    if let Some(k) = f.truncation_order() {
        if k < 2 {
            return Err(JetError::TruncationTooLow {
                order: k,
                needed: 2,
            });
        }
    }
    let mut trace = ReconstructionTrace { steps: Vec::new() };

    // step 1: product form and fixed origin
    let form = check_form(f);
    let fixes_origin = f.fixes_origin();
    if !form.pass || !fixes_origin {
        let detail = if !fixes_origin {
            format!(
                "map does not fix the origin: F(0) has component value {}",
                (0..n)
                    .map(|j| f.constant_term(j))
                    .find(|v| !v.is_zero())
                    .expect("some nonzero constant")
            )
        } else {
            let off = form.offending.as_ref().expect("failing form has a witness");
            format!(
                "{}: monomial z^{:?} zbar^{:?} has coefficient {}",
                off.label, off.alpha, off.beta, off.value
            )
        };
        trace.push_fail(StepKind::FormAndBasePoint, detail, Vec::new());
        return Ok(trace);
    }
    let c_form = form.c.clone().expect("passing form extracts c");
    trace.push_pass(
        StepKind::FormAndBasePoint,
        vec![("c".to_string(), c_form.to_string())],
    );

    let jet = extract_jet2(f).expect("constant terms vanish and truncation checked");

    // step 2: antiholomorphic linear coefficients via the component system
    let system = check_component_system(jb, f)?;
    let zeros = vec![0u32; n];
    let mut bad_j = None;
    let mut data = Vec::new();
    for (j, entry) in system.entries.iter().enumerate() {
        let constant = entry.residual.coefficient(&zeros, &zeros);
        // residual constant = -2i * conj(antiholo_lin[j]); cross-checked
        // against the direct jet read
        let expected = &ComplexRational::gaussian(0, -2, 1) * &jet.antiholo_lin[j].conj();
        assert_eq!(constant, expected, "constant-term bookkeeping");
        data.push((
            format!("a_n_bar_{}", j + 1),
            jet.antiholo_lin[j].to_string(),
        ));
        if !constant.is_zero() && bad_j.is_none() {
            bad_j = Some(j);
        }
    }
    match bad_j {
        None => trace.push_pass(StepKind::AntiholoLinearVanishes, data),
        Some(j) => {
            trace.push_fail(
                StepKind::AntiholoLinearVanishes,
                format!(
                    "antiholomorphic linear coefficient on zbar_{} is {}",
                    j + 1,
                    jet.antiholo_lin[j]
                ),
                data,
            );
            return Ok(trace);
        }
    }

    // boundary expansion used by steps 3, 5, 6
    let reduced_pullback = reduce_mod_boundary(&f.rho_pullback()).into_poly();
    let m = n - 1;

    // step 3: pure-antiholomorphic quadratic coefficients. The boundary
    // expansion sees them through Re(F_n), i.e. at half the monomial weight;
    // cross-checked against the direct jet read.
    let mut data = Vec::new();
    let mut failure = None;
    let half = ComplexRational::from_ratio(1, 2);
    for k in 0..m {
        for l in k..m {
            let beta = exps(n, &[(k, 1), (l, 1)]);
            let coeff = reduced_pullback.coefficient(&zeros, &beta);
            let stored = &jet.antiholo_quad[(k, l)];
            let expected = if k == l {
                stored * &half
            } else {
                stored.clone()
            };
            assert_eq!(coeff, expected, "antiholomorphic-quadratic bookkeeping");
            if !coeff.is_zero() && failure.is_none() {
                failure = Some(format!(
                    "zbar_{} zbar_{} coefficient of rho∘F on the boundary is {}",
                    k + 1,
                    l + 1,
                    coeff
                ));
            }
            if !coeff.is_zero() {
                data.push((
                    format!("a_n_bar_{}_bar_{}", k + 1, l + 1),
                    coeff.to_string(),
                ));
            }
        }
    }
    match failure {
        None => trace.push_pass(
            StepKind::AntiholoQuadraticVanishes,
            vec![(
                "antiholomorphic quadratic tensor".to_string(),
                "0".to_string(),
            )],
        ),
        Some(detail) => {
            trace.push_fail(StepKind::AntiholoQuadraticVanishes, detail, data);
            return Ok(trace);
        }
    }

    // step 4: A invertible
    let det = jet.a.det();
    if det.is_zero() {
        trace.push_fail(
            StepKind::MatrixInvertible,
            "linear coefficient matrix A is singular".to_string(),
            vec![("det A".to_string(), det.to_string())],
        );
        return Ok(trace);
    }
    trace.push_pass(
        StepKind::MatrixInvertible,
        vec![("det A".to_string(), det.to_string())],
    );

    // step 5: holomorphic quadratic tensor via the linear systems
    let abar_t = jet.a.conj().transpose();
    let abar_t_inv = abar_t.inverse().expect("A invertible");
    let mut failure = None;
    let mut data = Vec::new();
    for p in 0..m {
        for l in p..m {
            // right-hand side: coefficients of z_p z_l zbar_k
            let alpha = exps(n, &[(p, 1), (l, 1)]);
            let rhs: Vec<ComplexRational> = (0..m)
                .map(|k| reduced_pullback.coefficient(&alpha, &exps(n, &[(k, 1)])))
                .collect();
            // solve conj(A)^t x = rhs; x is the vector of z_p z_l monomial
            // coefficients across components
            let x = abar_t_inv.mul_vec(&rhs);
            for (j, val) in x.iter().enumerate() {
                // cross-check against the direct jet read
                let direct = if p == l {
                    jet.quad_holo[j][(p, l)].clone()
                } else {
                    &jet.quad_holo[j][(p, l)] * &ComplexRational::from_int(2)
                };
                assert_eq!(*val, direct, "quadratic-system bookkeeping");
                if !val.is_zero() && failure.is_none() {
                    failure = Some(format!(
                        "solving the system leaves a nonzero quadratic coefficient on z_{} z_{} in component {}: {}",
                        p + 1,
                        l + 1,
                        j + 1,
                        val
                    ));
                    data.push((
                        format!("a^{}_({},{})", j + 1, p + 1, l + 1),
                        val.to_string(),
                    ));
                }
            }
        }
    }
    match failure {
        None => trace.push_pass(
            StepKind::HoloQuadraticVanishes,
            vec![("holomorphic quadratic tensors".to_string(), "0".to_string())],
        ),
        Some(detail) => {
            trace.push_fail(StepKind::HoloQuadraticVanishes, detail, data);
            return Ok(trace);
        }
    }

    // step 6: A^t conj(A) = c I from the mixed quadratic terms
    let gram = &jet.a.transpose() * &jet.a.conj();
    let mut failure = None;
    for p in 0..m {
        for k in 0..m {
            let alpha = exps(n, &[(p, 1)]);
            let beta = exps(n, &[(k, 1)]);
            let boundary_coeff = reduced_pullback.coefficient(&alpha, &beta);
            let expected = if p == k {
                &gram[(p, k)] - &ComplexRational::from_real(c_form.re.clone())
            } else {
                gram[(p, k)].clone()
            };
            assert_eq!(boundary_coeff, expected, "mixed-term bookkeeping");
            if !boundary_coeff.is_zero() && failure.is_none() {
                failure = Some(format!(
                    "(A^t conj(A))[{}][{}] = {}, expected {}",
                    p + 1,
                    k + 1,
                    gram[(p, k)],
                    if p == k {
                        c_form.to_string()
                    } else {
                        "0".to_string()
                    }
                ));
            }
        }
    }
    match failure {
        None => trace.push_pass(
            StepKind::ScaledUnitarity,
            vec![("A^t conj(A)".to_string(), format!("{} I", c_form))],
        ),
        Some(detail) => {
            trace.push_fail(StepKind::ScaledUnitarity, detail, Vec::new());
            return Ok(trace);
        }
    }

    // step 7: positivity of c
    let mut col_norm = ComplexRational::zero();
    for j in 0..m {
        col_norm += &(&jet.a[(j, 0)] * &jet.a[(j, 0)].conj());
    }
    assert_eq!(col_norm, c_form, "column-norm bookkeeping");
    if c_form.is_real() && c_form.re.is_positive() {
        trace.push_pass(
            StepKind::PositiveScale,
            vec![("c".to_string(), c_form.to_string())],
        );
    } else {
        trace.push_fail(
            StepKind::PositiveScale,
            format!("c = {c_form} is not a positive real"),
            vec![("c".to_string(), c_form.to_string())],
        );
    }
    Ok(trace)
}

/// Failure modes of reconstruction: precondition errors, a failing trace, or
/// jet data that satisfies the chain but not the group constraints.
#[derive(Debug)]
pub enum ReconstructError {
    Precondition(JetError),
    ConstraintsFailed(ReconstructionTrace),
    NotAutomorphism {
        trace: ReconstructionTrace,
        source: AutError,
    },
}

impl std::fmt::Display for ReconstructError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReconstructError::Precondition(e) => write!(f, "precondition failure: {e}"),
            ReconstructError::ConstraintsFailed(trace) => {
                let step = trace.failed_step().map_or("unknown", |s| s.step.name());
                write!(f, "constraint chain failed at step {step}")
            }
            ReconstructError::NotAutomorphism { source, .. } => {
                write!(
                    f,
                    "jet satisfies the chain but is not a group element: {source}"
                )
            }
        }
    }
}

impl std::error::Error for ReconstructError {}

/// Builds the automorphism `(A, c, 0)` matching the 2-jet of `f`, after the
/// full constraint chain passes; the 2-jet agreement is re-checked exactly.
pub fn reconstruct(
    f: &PolyMap,
    jb: &SimpleModelStructure,
) -> Result<(Automorphism, ReconstructionTrace), ReconstructError> {
    let trace = verify_constraints(f, jb).map_err(ReconstructError::Precondition)?;
    if !trace.pass() {
        return Err(ReconstructError::ConstraintsFailed(trace));
    }
    let jet = extract_jet2(f).expect("trace pass implies extractable jet");
    let c = jet.c.re.clone();
    let g = Automorphism::try_new(
        jb.clone(),
        jet.a.clone(),
        c,
        crate::boundary::origin(f.dim()),
    )
    .map_err(|source| ReconstructError::NotAutomorphism {
        trace: trace.clone(),
        source,
    })?;
    // postcondition: the 2-jets agree exactly
    let g_map = g.as_polymap();
    for j in 0..f.dim() {
        let diff = &f.component(j).truncate(2) - &g_map.component(j).truncate(2);
        assert!(
            diff.is_zero(),
            "2-jet of the reconstruction must match the input"
        );
    }
    Ok((g, trace))
}

/// Verdict of comparing a map against a reconstructed automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtensionVerdict {
    /// Exact polynomial input, all coefficients agree: the map extends.
    Extends,
    /// Truncated input agreeing at every decidable order; extension holds by
    /// the jet-determination contract for boundary CR maps.
    AgreesToOrder(u32),
    Disagrees {
        component: usize,
        alpha: Vec<u32>,
        beta: Vec<u32>,
        map_value: ComplexRational,
        aut_value: ComplexRational,
    },
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub verdict: ExtensionVerdict,
}

impl ExtensionReport {
    pub fn extends(&self) -> bool {
        !matches!(self.verdict, ExtensionVerdict::Disagrees { .. })
    }
}

/// Compares all coefficients of `f` against the action of `g`, up to the
/// truncation order of `f` when present.
pub fn verify_extension(f: &PolyMap, g: &Automorphism) -> ExtensionReport {
    let g_map = g.as_polymap();
    let order = f.truncation_order();
    for j in 0..f.dim() {
        let diff = match order {
            None => f.component(j) - g_map.component(j),
            Some(k) => &f.component(j).truncate(k) - &g_map.component(j).truncate(k),
        };
        if let Some((mono, _)) = diff.leading_term() {
            let map_value = f.component(j).coefficient(&mono.alpha, &mono.beta);
            let aut_value = g_map.component(j).coefficient(&mono.alpha, &mono.beta);
            return ExtensionReport {
                verdict: ExtensionVerdict::Disagrees {
                    component: j,
                    alpha: mono.alpha.clone(),
                    beta: mono.beta.clone(),
                    map_value,
                    aut_value,
                },
            };
        }
    }
    ExtensionReport {
        verdict: match order {
            None => ExtensionVerdict::Extends,
            Some(k) => ExtensionVerdict::AgreesToOrder(k),
        },
    }
}

/// Conjugates `f` by boundary translations so the result fixes the origin:
/// `F = psi_q^{-1} ∘ f ∘ psi_p`, where `f(p) = q`.
pub fn normalize_basepoints(
    f: &PolyMap,
    p: &[ComplexRational],
    q: &[ComplexRational],
    jb: &SimpleModelStructure,
) -> Result<PolyMap, JetError> {
    for point in [p, q] {
        let rho = rho_at(point);
        if !rho.is_zero() {
            return Err(JetError::OffBoundary {
                rho: rho.to_string(),
            });
        }
    }
    let image: Point = f.eval(p);
    if image != q {
        return Err(JetError::BasePointMismatch {
            got: format!("{image:?}"),
            expected: format!("{q:?}"),
        });
    }
    let p_is_origin = p.iter().all(ComplexRational::is_zero);
    if f.truncation_order().is_some() && !p_is_origin {
        return Err(JetError::TruncatedOffOrigin);
    }
    let psi_p = Automorphism::translation(jb.clone(), p.to_vec())?;
    let psi_q_inv = Automorphism::translation(jb.clone(), q.to_vec())?.invert();
    let inner = f
        .compose(&psi_p.as_polymap())
        .expect("exact translation composes");
    let normalized = psi_q_inv
        .as_polymap()
        .compose(&inner)
        .expect("affine outer map composes");
    assert!(
        normalized.fixes_origin(),
        "normalization must fix the origin"
    );
    Ok(normalized)
}
