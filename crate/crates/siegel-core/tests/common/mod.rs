//! Shared test support: randomized structures and group elements, the
//! brute-force jet-matching oracle, and the finite-difference Levi oracle.
//!
//! The oracles deliberately avoid the code paths they check: jet matching
//! solves the group-side equations directly from coefficient reads, and the
//! Levi oracle differentiates numerically instead of symbolically.

#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::One;
use rand::Rng;

use siegel_core::autgroup::Automorphism;
use siegel_core::boundary::origin;
use siegel_core::levi::VectorField;
use siegel_core::maps::PolyMap;
use siegel_core::sample::random_boundary_point;
use siegel_core::structures::{ModelStructure, SimpleModelStructure};
use siegel_core::{CMatrix, ComplexRational, Point, Rational};

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn small_complex(rng: &mut impl Rng) -> ComplexRational {
    ComplexRational::new(
        rat(rng.gen_range(-10..=10), rng.gen_range(1..=10)),
        rat(rng.gen_range(-10..=10), rng.gen_range(1..=10)),
    )
}

fn small_nonzero_complex(rng: &mut impl Rng) -> ComplexRational {
    loop {
        let c = small_complex(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random antisymmetric matrix with rational entries of height at most 10.
pub fn random_simple_structure(n: usize, rng: &mut impl Rng) -> SimpleModelStructure {
    let mut b = CMatrix::zero(n - 1, n - 1);
    for i in 0..n - 1 {
        for j in i + 1..n - 1 {
            let entry = small_complex(rng);
            b[(i, j)] = entry.clone();
            b[(j, i)] = -&entry;
        }
    }
    SimpleModelStructure::new(n, b).expect("antisymmetric by construction")
}

/// Random general model structure (both coefficient families populated).
pub fn random_model_structure(n: usize, rng: &mut impl Rng) -> ModelStructure {
    let mut alpha = CMatrix::zero(n - 1, n - 1);
    let mut beta = CMatrix::zero(n - 1, n - 1);
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            alpha[(i, j)] = small_complex(rng);
            beta[(i, j)] = small_complex(rng);
        }
    }
    ModelStructure::new(n, alpha, beta).expect("shape is fixed")
}

/// Nonzero structure whose compatibility group admits a rich rational
/// family: dimension 3 takes any antisymmetric B, dimensions 4 and 5 use a
/// block with a vanishing tail (n = 4) or two blocks (n = 5).
pub fn rich_structure(n: usize, rng: &mut impl Rng) -> SimpleModelStructure {
    let mut b = CMatrix::zero(n - 1, n - 1);
    let b1 = small_nonzero_complex(rng);
    b[(0, 1)] = b1.clone();
    b[(1, 0)] = -&b1;
    if n == 5 {
        let b2 = small_nonzero_complex(rng);
        b[(2, 3)] = b2.clone();
        b[(3, 2)] = -&b2;
    }
    SimpleModelStructure::new(n, b).expect("antisymmetric by construction")
}

/// Gaussian rationals on the unit circle.
fn unit_phase(rng: &mut impl Rng) -> ComplexRational {
    let phases = [
        ComplexRational::from_int(1),
        ComplexRational::from_int(-1),
        ComplexRational::i(),
        -&ComplexRational::i(),
        ComplexRational::gaussian(3, 4, 5),
        ComplexRational::gaussian(3, -4, 5),
        ComplexRational::gaussian(4, 3, 5),
        ComplexRational::gaussian(5, 12, 13),
        ComplexRational::gaussian(-8, 15, 17),
    ];
    phases[rng.gen_range(0..phases.len())].clone()
}

/// Gaussian-rational pairs on the unit sphere of C^2.
fn unit_pair(rng: &mut impl Rng) -> (ComplexRational, ComplexRational) {
    let pairs = [
        (
            ComplexRational::gaussian(1, 2, 3),
            ComplexRational::from_ratio(2, 3),
        ),
        (
            ComplexRational::from_ratio(3, 5),
            ComplexRational::gaussian(0, 4, 5),
        ),
        (
            ComplexRational::gaussian(2, 2, 3),
            ComplexRational::gaussian(0, 1, 3),
        ),
        (
            ComplexRational::gaussian(3, 4, 13),
            ComplexRational::from_ratio(12, 13),
        ),
        (ComplexRational::gaussian(0, 1, 1), ComplexRational::zero()),
        (
            ComplexRational::from_ratio(-5, 13),
            ComplexRational::gaussian(0, -12, 13),
        ),
    ];
    let (a, b) = &pairs[rng.gen_range(0..pairs.len())];
    debug_assert!((&a.norm_sqr() + &b.norm_sqr()).is_one());
    (a.clone(), b.clone())
}

/// The 2x2 block `[[a, -conj(b)], [b, conj(a)]]`: its scaled-unitarity gram
/// is `(|a|^2 + |b|^2) I` and its determinant equals that same scale, so it
/// is compatible with every antisymmetric 2x2 block.
fn su2_block(a: &ComplexRational, b: &ComplexRational) -> CMatrix {
    let mut m = CMatrix::zero(2, 2);
    m[(0, 0)] = a.clone();
    m[(0, 1)] = -&b.conj();
    m[(1, 0)] = b.clone();
    m[(1, 1)] = a.conj();
    m
}

fn positive_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(1..=10), rng.gen_range(1..=10))
}

/// Random element with a nontrivial linear part compatible with a rich
/// structure (as produced by `rich_structure`), zeta = 0.
pub fn random_linear_element(s: &SimpleModelStructure, rng: &mut impl Rng) -> Automorphism {
    let n = s.dim();
    let r = positive_rational(rng);
    let r_scalar = ComplexRational::from_real(r.clone());
    let c = &r * &r;
    let (a0, b0) = unit_pair(rng);
    let block_a = su2_block(&a0, &b0).scale(&r_scalar);
    let m = n - 1;
    let mut a = CMatrix::zero(m, m);
    for i in 0..2 {
        for j in 0..2 {
            a[(i, j)] = block_a[(i, j)].clone();
        }
    }
    match n {
        3 => {}
        4 => {
            // tail entry only needs the right modulus
            a[(2, 2)] = &unit_phase(rng) * &r_scalar;
        }
        5 => {
            let (a1, b1) = unit_pair(rng);
            let block2 = su2_block(&a1, &b1).scale(&r_scalar);
            for i in 0..2 {
                for j in 0..2 {
                    a[(2 + i, 2 + j)] = block2[(i, j)].clone();
                }
            }
        }
        _ => panic!("rich structures exist for n in 3..=5"),
    }
    Automorphism::try_new(s.clone(), a, c, origin(n)).expect("family satisfies the constraints")
}

/// Random group element over a rich structure: a linear element composed
/// with dilations, boundary translations, and the central reflection.
pub fn random_automorphism(s: &SimpleModelStructure, rng: &mut impl Rng) -> Automorphism {
    let n = s.dim();
    let mut g = random_linear_element(s, rng);
    for _ in 0..rng.gen_range(1..=2) {
        let zeta = random_boundary_point(n, rng);
        let t = Automorphism::translation(s.clone(), zeta).expect("point is on the boundary");
        let d =
            Automorphism::dilation(s.clone(), &positive_rational(rng)).expect("positive parameter");
        g = if rng.gen_bool(0.5) {
            t.compose(&d).unwrap().compose(&g).unwrap()
        } else {
            g.compose(&t).unwrap().compose(&d).unwrap()
        };
    }
    if rng.gen_bool(0.3) {
        let minus =
            Automorphism::isotropy(s.clone(), CMatrix::identity(n - 1).neg()).expect("-I works");
        g = g.compose(&minus).unwrap();
    }
    g
}

/// Scalar-family element valid over ANY simple structure (generic random B):
/// `A = ±r I`, `c = r^2`, composed with translations.
pub fn random_scalar_automorphism(s: &SimpleModelStructure, rng: &mut impl Rng) -> Automorphism {
    let n = s.dim();
    let r = positive_rational(rng);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let a = CMatrix::scalar(n - 1, &ComplexRational::from_real(&r * &rat(sign, 1)));
    let lin = Automorphism::try_new(s.clone(), a, &r * &r, origin(n))
        .expect("scalar family satisfies the constraints");
    let t = Automorphism::translation(s.clone(), random_boundary_point(n, rng))
        .expect("point is on the boundary");
    t.compose(&lin).unwrap()
}

/// Independent oracle for criterion-style soundness checks: does any group
/// element share the 2-jet of `f`? All parameters of a matching element are
/// forced by coefficient reads (constant term -> zeta, linear blocks -> A
/// and c), so solving the matching system means checking the forced values.
pub fn jet_matching_automorphism(f: &PolyMap, jb: &SimpleModelStructure) -> Option<Automorphism> {
    let n = f.dim();
    let zeta: Point = (0..n).map(|j| f.constant_term(j)).collect();
    let m = n - 1;
    let mut a = CMatrix::zero(m, m);
    let e = |k: usize| -> Vec<u32> { (0..n).map(|i| u32::from(i == k)).collect() };
    let zeros = vec![0u32; n];
    for j in 0..m {
        for l in 0..m {
            a[(j, l)] = f.component(j).coefficient(&e(l), &zeros);
        }
    }
    let c = f.component(n - 1).coefficient(&e(n - 1), &zeros);
    if !c.is_real() {
        return None;
    }
    let candidate = Automorphism::try_new(jb.clone(), a, c.re, zeta).ok()?;
    let g_map = candidate.as_polymap();
    for j in 0..n {
        let diff = &f.component(j).truncate(2) - &g_map.component(j).truncate(2);
        if !diff.is_zero() {
            return None;
        }
    }
    Some(candidate)
}

const FD_STEP: f64 = 1e-5;

/// Numeric Wirtinger derivative of a function at a point, by centered
/// differences in the real and imaginary directions of coordinate `j`.
fn wirtinger(
    g: &impl Fn(&[Complex64]) -> Complex64,
    p: &[Complex64],
    j: usize,
    conjugate: bool,
) -> Complex64 {
    let mut px = p.to_vec();
    px[j] += Complex64::new(FD_STEP, 0.0);
    let mut mx = p.to_vec();
    mx[j] -= Complex64::new(FD_STEP, 0.0);
    let ddx = (g(&px) - g(&mx)) / (2.0 * FD_STEP);
    let mut py = p.to_vec();
    py[j] += Complex64::new(0.0, FD_STEP);
    let mut my = p.to_vec();
    my[j] -= Complex64::new(0.0, FD_STEP);
    let ddy = (g(&py) - g(&my)) / (2.0 * FD_STEP);
    let i = Complex64::new(0.0, 1.0);
    if conjugate {
        (ddx + i * ddy) / 2.0
    } else {
        (ddx - i * ddy) / 2.0
    }
}

fn eval_field(x: &VectorField, pt: &[Complex64]) -> Vec<Complex64> {
    x.components().iter().map(|c| c.eval_c64(pt)).collect()
}

/// Numeric structure action on block-ordered component vectors.
fn apply_j_numeric(
    jmat: &siegel_core::PolyMatrix,
    n: usize,
    pt: &[Complex64],
    comps: &[Complex64],
) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); 2 * n];
    for r in 0..2 * n {
        let mut acc = Complex64::new(0.0, 0.0);
        for cidx in 0..2 * n {
            if jmat[(r, cidx)].is_zero() {
                continue;
            }
            let entry = jmat[(r, cidx)].eval_c64(pt);
            let comp_block = if cidx % 2 == 0 {
                comps[cidx / 2]
            } else {
                comps[n + cidx / 2]
            };
            acc += entry * comp_block;
        }
        let block_index = if r % 2 == 0 { r / 2 } else { n + r / 2 };
        out[block_index] = acc;
    }
    out
}

/// Numeric derivation: the field with coefficient functions `field` applied
/// to the scalar function `comp` at `pt`.
fn apply_field_numeric(
    field: &impl Fn(&[Complex64]) -> Vec<Complex64>,
    comp: &impl Fn(&[Complex64]) -> Complex64,
    pt: &[Complex64],
    n: usize,
) -> Complex64 {
    let coeffs = field(pt);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        acc += coeffs[k] * wirtinger(comp, pt, k, false);
        acc += coeffs[n + k] * wirtinger(comp, pt, k, true);
    }
    acc
}

/// Finite-difference Levi oracle: evaluates `d(rho)(J[X, JX])` at `p` with
/// numeric brackets and numeric matrix action, never touching the symbolic
/// derivation machinery.
pub fn levi_fd_oracle(j: &ModelStructure, x: &VectorField, p: &[Complex64]) -> f64 {
    let n = j.dim();
    let jmat = j.complexify();
    let x_at = |pt: &[Complex64]| eval_field(x, pt);
    let jx_at = |pt: &[Complex64]| apply_j_numeric(&jmat, n, pt, &eval_field(x, pt));
    // bracket components at p: [X, JX]_k = X((JX)_k) - JX(X_k)
    let mut bracket = vec![Complex64::new(0.0, 0.0); 2 * n];
    for k in 0..2 * n {
        let jx_comp = |pt: &[Complex64]| jx_at(pt)[k];
        let x_comp = |pt: &[Complex64]| x_at(pt)[k];
        bracket[k] =
            apply_field_numeric(&x_at, &jx_comp, p, n) - apply_field_numeric(&jx_at, &x_comp, p, n);
    }
    let v = apply_j_numeric(&jmat, n, p, &bracket);
    // rho and its numeric gradient
    let rho = |pt: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(pt[n - 1].re, 0.0);
        for z in &pt[..n - 1] {
            acc += Complex64::new(z.norm_sqr(), 0.0);
        }
        acc
    };
    let mut value = Complex64::new(0.0, 0.0);
    for k in 0..n {
        value += v[k] * wirtinger(&rho, p, k, false);
        value += v[n + k] * wirtinger(&rho, p, k, true);
    }
    assert!(value.im.abs() < 1e-8, "Levi oracle value must be real");
    value.re
}

pub fn point_to_c64(p: &[ComplexRational]) -> Vec<Complex64> {
    p.iter().map(ComplexRational::to_c64).collect()
}
