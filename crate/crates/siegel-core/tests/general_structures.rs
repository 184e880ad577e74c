//! Exercises the frame and Levi machinery on general model structures, where
//! both coefficient families of the deformation are populated. Unlike the
//! simple subfamily, the deformation shifts the Levi values at the origin, so
//! large coefficients genuinely break pseudoconvexity and the exact witness
//! path gets exercised.

mod common;

use common::{random_model_structure, rat};
use siegel_core::boundary::origin;
use siegel_core::levi::{apply_j, levi_matrix};
use siegel_core::sample::rng_from_seed;
use siegel_core::structures::ModelStructure;
use siegel_core::{CMatrix, ComplexRational, Poly};

#[test]
fn frame_identities_hold_for_general_structures() {
    let mut rng = rng_from_seed(2024);
    for _ in 0..20 {
        let n = 3 + (rand::Rng::gen_range(&mut rng, 0..2usize));
        let j = random_model_structure(n, &mut rng);
        assert!(j.verify().pass());
        let rho = Poly::rho(n);
        let frame = j.tangent_frame();
        for l in &frame.l_fields {
            assert!(l.apply_to(&rho).is_zero());
            assert_eq!(apply_j(&j, l), l.scale(&ComplexRational::i()));
        }
        assert!(frame.t_field.apply_to(&rho).is_zero());
        // the frame coefficients keep the stated shape:
        // alpha_j = -beta_j - 2 zbar_j
        for (k, (alpha_j, beta_j)) in frame.alphas.iter().zip(&frame.betas).enumerate() {
            let expected = &(-beta_j) - &Poly::conj_var(n, k).scale(&ComplexRational::from_int(2));
            assert_eq!(*alpha_j, expected);
        }
    }
}

#[test]
fn levi_matrix_is_hermitian_and_witnesses_are_exact() {
    let mut rng = rng_from_seed(2025);
    let mut saw_nonpositive = false;
    let mut saw_positive = false;
    for _ in 0..20 {
        let n = 3;
        let j = random_model_structure(n, &mut rng);
        let report = levi_matrix(&j, &origin(n)).unwrap();
        assert_eq!(report.matrix, report.matrix.adjoint());
        if report.positive {
            saw_positive = true;
            assert!(report.witness.is_none());
            continue;
        }
        saw_nonpositive = true;
        // the witness direction evaluates non-positively, exactly
        let v = report.witness.expect("failed verdicts carry a witness");
        let hv = report.matrix.mul_vec(&v);
        let mut value = ComplexRational::zero();
        for (vi, hvi) in v.iter().zip(&hv) {
            value += &(&vi.conj() * hvi);
        }
        assert!(value.is_real());
        assert!(value.re <= rat(0, 1));
    }
    assert!(
        saw_nonpositive && saw_positive,
        "the sample must contain both verdicts to be informative"
    );
}

#[test]
fn small_deformations_keep_the_baseline_close() {
    // hand expansion of the frame bracket gives the diagonal Levi value
    // 4 + 2 Im(beta[j][j]) at the origin: a real beta-entry cancels exactly,
    // an imaginary one shifts the value while keeping positivity
    let mut alpha = CMatrix::zero(2, 2);
    let mut beta = CMatrix::zero(2, 2);
    alpha[(0, 1)] = ComplexRational::from_ratio(1, 10);
    alpha[(1, 0)] = ComplexRational::from_ratio(-1, 10);
    beta[(0, 0)] = ComplexRational::gaussian(0, 1, 10);
    let j = ModelStructure::new(3, alpha, beta).unwrap();
    let report = levi_matrix(&j, &origin(3)).unwrap();
    assert!(report.positive);
    let four_i = CMatrix::scalar(2, &ComplexRational::from_int(4));
    assert_ne!(report.matrix, four_i);
    assert_eq!(report.matrix[(0, 0)], ComplexRational::from_ratio(21, 5));
    assert_eq!(report.matrix[(1, 1)], ComplexRational::from_int(4));

    // the real-entry variant reproduces 4I on the diagonal exactly
    let mut beta_real = CMatrix::zero(2, 2);
    beta_real[(0, 0)] = ComplexRational::from_ratio(1, 10);
    let j_real = ModelStructure::new(
        3,
        {
            let mut a = CMatrix::zero(2, 2);
            a[(0, 1)] = ComplexRational::from_ratio(1, 10);
            a[(1, 0)] = ComplexRational::from_ratio(-1, 10);
            a
        },
        beta_real,
    )
    .unwrap();
    let report_real = levi_matrix(&j_real, &origin(3)).unwrap();
    assert_eq!(report_real.matrix[(0, 0)], ComplexRational::from_int(4));
    // and the pure simple part of the same size reproduces 4I exactly
    let simple = ModelStructure::new(
        3,
        {
            let mut a = CMatrix::zero(2, 2);
            a[(0, 1)] = ComplexRational::from_ratio(1, 10);
            a[(1, 0)] = ComplexRational::from_ratio(-1, 10);
            a
        },
        CMatrix::zero(2, 2),
    )
    .unwrap();
    assert_eq!(levi_matrix(&simple, &origin(3)).unwrap().matrix, four_i);
}
