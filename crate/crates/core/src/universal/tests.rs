use super::*;
use crate::algebra::tests::{nil3, quad};
use crate::endos::EndoKind;
use crate::quadring::{QuadInt, QuadRing};
use crate::rational::q;

fn cols(n: usize, images: &[&[i64]]) -> Matrix {
    let v: Vec<Vec<Q>> = images.iter().map(|c| c.iter().map(|&x| q(x)).collect()).collect();
    Matrix::from_columns(n, &v)
}

fn conj2() -> Matrix {
    cols(2, &[&[1, 0], &[0, -1]])
}

/// Derivation on `Z[√d]` (SQRT branch) with `D(s) = a + b·s`.
fn quad_deriv(d: i64, sigma: Matrix, tau: Matrix, a: i64, b: i64) -> GeneralDerivation {
    GeneralDerivation::new(quad(d), sigma, tau, cols(2, &[&[0, 0], &[a, b]])).unwrap()
}

/// Unital endomorphism of `nil3` acting on span{x, y} by the given images.
fn nil_endo(x: [i64; 2], y: [i64; 2]) -> Matrix {
    cols(3, &[&[1, 0, 0], &[0, x[0], x[1]], &[0, y[0], y[1]]])
}

fn nil_deriv(x: [i64; 2], y: [i64; 2]) -> Matrix {
    cols(3, &[&[0, 0, 0], &[0, x[0], x[1]], &[0, y[0], y[1]]])
}

fn case3_instance() -> GeneralDerivation {
    // σ: x↦y, y↦0; τ: x↦x, y↦0; D(x)=y, D(y)=0
    GeneralDerivation::new(nil3(), nil_endo([0, 1], [0, 0]), nil_endo([1, 0], [0, 0]), nil_deriv([0, 1], [0, 0]))
        .unwrap()
}

fn case4_instance() -> GeneralDerivation {
    // σ: x↦x, y↦0; τ: x↦y, y↦0; D(x)=x, D(y)=0
    GeneralDerivation::new(nil3(), nil_endo([1, 0], [0, 0]), nil_endo([0, 1], [0, 0]), nil_deriv([1, 0], [0, 0]))
        .unwrap()
}

fn pure(l: &[i64], r: &[i64]) -> Vec<Q> {
    let idx = TensorIndex { left: l.len(), right: r.len() };
    idx.pure(&l.iter().map(|&x| q(x)).collect::<Vec<_>>(), &r.iter().map(|&x| q(x)).collect::<Vec<_>>())
}

fn f_on(cert: &FactorizationCertificate, t: &[Q]) -> Option<Vec<Q>> {
    cert.carrier.coordinates(t).map(|c| cert.f_matrix.mul_vec(&c))
}

#[test]
fn general_derivation_validation() {
    let a = quad(3);
    let id = Matrix::identity(2);
    assert!(GeneralDerivation::new(a.clone(), id.clone(), conj2(), cols(2, &[&[0, 0], &[1, 0]])).is_ok());
    assert_eq!(
        GeneralDerivation::new(a.clone(), id.clone(), conj2(), cols(2, &[&[1, 0], &[0, 0]])),
        Err(UniversalError::NonzeroOnUnit)
    );
    // D(s) = 1 with σ = τ = id: D(s²) = 0 but D(s)s + sD(s) = 2s
    assert!(matches!(
        GeneralDerivation::new(a.clone(), id.clone(), id.clone(), cols(2, &[&[0, 0], &[1, 0]])),
        Err(UniversalError::LeibnizViolated { .. })
    ));
    assert_eq!(
        GeneralDerivation::new(a.clone(), cols(2, &[&[1, 0], &[0, 2]]), conj2(), Matrix::zeros(2, 2)),
        Err(UniversalError::NotAnEndomorphism(Side::Sigma))
    );
    assert!(matches!(
        GeneralDerivation::new(a, id, Matrix::identity(3), Matrix::zeros(2, 2)),
        Err(UniversalError::DimensionMismatch { .. })
    ));
}

#[test]
fn from_twisted_matches_quadring() {
    let ring = QuadRing::new(5).unwrap();
    let d = TwistedDerivation::new(ring, EndoKind::Conjugation, EndoKind::Identity, QuadInt::new(2, -1)).unwrap();
    let g = GeneralDerivation::from_twisted(&d).unwrap();
    for (a, b) in [(1, 2), (-3, 0), (4, 7)] {
        let x = QuadInt::new(a, b);
        assert_eq!(g.apply(&ring.elem_to_coords(&x)), ring.elem_to_coords(&d.apply(&x)));
    }
}

#[test]
fn case1_sqrt3_hand_values() {
    let d = quad_deriv(3, Matrix::identity(2), conj2(), 1, 0);
    let cert = build_case1(&d).unwrap();
    assert!(cert.all_pass());
    // δ(s) = -(1⊗s) - (s⊗1)
    let expected: Vec<Q> = pure(&[1, 0], &[0, -1])
        .into_iter()
        .zip(pure(&[0, 1], &[1, 0]))
        .map(|(a, b)| a - b)
        .collect();
    assert_eq!(cert.delta_images.column(1), expected);
    assert_eq!(f_on(&cert, &expected), Some(vec![q(1), q(0)]));
    let setup = Setup::new(UnivCase::Case1, &d).unwrap();
    let flat = setup.flat_f(&d);
    // f(1⊗s) = D(τ⁻¹ s) = -1, f(s⊗1) = s·D(1) = 0
    assert_eq!(flat.column(setup.idx.flat(0, 1)), vec![q(-1), q(0)]);
    assert_eq!(flat.column(setup.idx.flat(1, 0)), vec![q(0), q(0)]);
}

#[test]
fn case1_minus5_passes() {
    let d = quad_deriv(-5, conj2(), Matrix::identity(2), 0, 1);
    let cert = build_case1(&d).unwrap();
    assert!(cert.all_pass());
    assert!(verify_certificate(&cert).all_pass);
}

#[test]
fn case2_sqrt3_hand_values() {
    let d = quad_deriv(3, conj2(), Matrix::identity(2), 1, 0);
    let cert = build_case2(&d).unwrap();
    assert!(cert.all_pass());
    let setup = Setup::new(UnivCase::Case2, &d).unwrap();
    let flat = setup.flat_f(&d);
    // f(s⊗1) = -D(σ⁻¹ s) = 1, f(1⊗s) = -D(1)·s = 0
    assert_eq!(flat.column(setup.idx.flat(1, 0)), vec![q(1), q(0)]);
    assert_eq!(flat.column(setup.idx.flat(0, 1)), vec![q(0), q(0)]);
    // δ(s) = 1⊗s + s⊗1
    let delta: Vec<Q> = pure(&[1, 0], &[0, 1])
        .into_iter()
        .zip(pure(&[0, 1], &[1, 0]))
        .map(|(a, b)| a + b)
        .collect();
    assert_eq!(cert.delta_images.column(1), delta);
    assert_eq!(f_on(&cert, &delta), Some(vec![q(1), q(0)]));
}

#[test]
fn zero_derivations_give_trivial_certificates() {
    let a = quad(3);
    let z = GeneralDerivation::zero(a, Matrix::identity(2), conj2()).unwrap();
    for case in [UnivCase::Case1, UnivCase::Case2] {
        let cert = build(case, &z).unwrap();
        assert!(cert.all_pass());
        assert!(cert.f_matrix.columns().iter().flatten().all(Zero::is_zero));
    }
    let z3 = GeneralDerivation::zero(nil3(), nil_endo([0, 1], [0, 0]), nil_endo([1, 0], [0, 0])).unwrap();
    assert!(build_case3(&z3).unwrap().all_pass());
    let z4 = GeneralDerivation::zero(nil3(), nil_endo([1, 0], [0, 0]), nil_endo([0, 1], [0, 0])).unwrap();
    assert!(build_case4(&z4).unwrap().all_pass());
}

#[test]
fn sigma_equals_tau_rejected() {
    let dual = quad(0);
    let z = GeneralDerivation::zero(dual, Matrix::identity(2), Matrix::identity(2)).unwrap();
    for case in UnivCase::ALL {
        assert_eq!(build(case, &z).unwrap_err(), UniversalError::SigmaEqualsTau);
    }
}

#[test]
fn invertibility_guards() {
    let d3 = case3_instance();
    assert_eq!(build_case1(&d3).unwrap_err(), UniversalError::TauNotInvertible);
    assert_eq!(build_case2(&d3).unwrap_err(), UniversalError::SigmaNotInvertible);
    // case 2 with an invertible τ is still fine
    let d = quad_deriv(3, conj2(), Matrix::identity(2), 1, 0);
    assert!(build_case2(&d).is_ok());
    // O_K inputs never reach cases 3/4
    for dd in [2, 3, -1, -5] {
        let d = quad_deriv(dd, Matrix::identity(2), conj2(), 0, 0);
        for case in [UnivCase::Case3, UnivCase::Case4] {
            assert_eq!(build(case, &d).unwrap_err(), UniversalError::InvertibleEndo(Side::Sigma));
        }
    }
}

#[test]
fn case3_instance_hand_values() {
    let d = case3_instance();
    let cert = build_case3(&d).unwrap();
    assert!(cert.all_pass(), "{:?}", cert.checks);
    let setup = Setup::new(UnivCase::Case3, &d).unwrap();
    assert_eq!(setup.right.dim(), 2);
    assert_eq!(setup.idx.dim(), 6);
    // Δ(x) = 1⊗x̄ − y⊗1̄
    let idx = setup.idx;
    let mut expected = vec![q(0); 6];
    expected[idx.flat(0, 1)] = q(1);
    expected[idx.flat(2, 0)] = q(-1);
    assert_eq!(cert.delta_images.column(1), expected);
    assert!(cert.delta_images.column(2).iter().all(Zero::is_zero));
    assert_eq!(f_on(&cert, &expected), Some(vec![q(0), q(0), q(1)]));
    for name in ["psi_recovers_endomorphism", "psi_is_isomorphism_onto_image"] {
        assert!(cert.checks.iter().any(|c| c.name == name && c.passed));
    }
}

#[test]
fn case3_rejections() {
    // σ = swap(x, y) is invertible
    let swap = GeneralDerivation::new(nil3(), nil_endo([0, 1], [1, 0]), nil_endo([1, 0], [0, 0]), nil_deriv([0, 1], [0, 0]))
        .unwrap();
    assert_eq!(build_case3(&swap).unwrap_err(), UniversalError::InvertibleEndo(Side::Sigma));
    let bad = GeneralDerivation::new(nil3(), nil_endo([0, 1], [0, 0]), nil_endo([1, 0], [0, 0]), nil_deriv([0, 1], [1, 0]))
        .unwrap();
    assert_eq!(build_case3(&bad).unwrap_err(), UniversalError::KernelNotContained(Side::Tau));
}

#[test]
fn case4_instance_and_rejections() {
    let cert = build_case4(&case4_instance()).unwrap();
    assert!(cert.all_pass(), "{:?}", cert.checks);
    assert!(!cert.f_matrix.columns().iter().flatten().all(Zero::is_zero));
    let bad = GeneralDerivation::new(nil3(), nil_endo([1, 0], [0, 0]), nil_endo([0, 1], [0, 0]), nil_deriv([0, 0], [1, 0]))
        .unwrap();
    assert_eq!(build_case4(&bad).unwrap_err(), UniversalError::KernelNotContained(Side::Sigma));
    let inv_tau = GeneralDerivation::zero(nil3(), nil_endo([1, 0], [0, 0]), nil_endo([0, 1], [1, 0])).unwrap();
    assert_eq!(build_case4(&inv_tau).unwrap_err(), UniversalError::InvertibleEndo(Side::Tau));
}

#[test]
fn mutations_are_caught() {
    let certs = [
        build_case1(&quad_deriv(3, Matrix::identity(2), conj2(), 1, 0)).unwrap(),
        build_case2(&quad_deriv(-5, conj2(), Matrix::identity(2), 0, 1)).unwrap(),
        build_case3(&case3_instance()).unwrap(),
        build_case4(&case4_instance()).unwrap(),
    ];
    for cert in &certs {
        for r in 0..cert.f_matrix.rows() {
            for c in 0..cert.f_matrix.cols() {
                let mut m = cert.clone();
                m.f_matrix[(r, c)] += q(1);
                assert!(!verify_certificate(&m).all_pass);
            }
        }
        for r in 0..cert.delta_images.rows() {
            for c in 0..cert.delta_images.cols() {
                let mut m = cert.clone();
                m.delta_images[(r, c)] -= q(2);
                assert!(!verify_certificate(&m).all_pass);
            }
        }
    }
}

#[test]
fn zeroed_delta_breaks_composite() {
    let mut cert = build_case1(&quad_deriv(3, Matrix::identity(2), conj2(), 1, 0)).unwrap();
    cert.delta_images = Matrix::zeros(cert.delta_images.rows(), cert.delta_images.cols());
    let report = verify_certificate(&cert);
    assert!(report
        .checks
        .iter()
        .any(|c| c.name == "composite_equals_derivation" && !c.passed));
}

#[test]
fn json_roundtrip() {
    for cert in [build_case1(&case1_for_json()).unwrap(), build_case3(&case3_instance()).unwrap()] {
        let json = cert.to_json();
        let file: CertificateFile = serde_json::from_str(&json).unwrap();
        let back = FactorizationCertificate::from_file(&file).unwrap();
        assert_eq!(back, cert);
        assert!(verify_certificate(&back).all_pass);
        assert_eq!(back.to_json(), json);
    }
}

fn case1_for_json() -> GeneralDerivation {
    quad_deriv(-5, conj2(), Matrix::identity(2), 0, 1)
}

#[test]
fn case_tag_serialization() {
    assert_eq!(serde_json::to_string(&UnivCase::Case3).unwrap(), "3");
    assert!(serde_json::from_str::<UnivCase>("5").is_err());
}
