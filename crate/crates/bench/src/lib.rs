//! Benchmark fixtures.

use sigtau_core::polyring::{Poly, PolyEndo};
use sigtau_core::{EndoKind, GeneralDerivation, Matrix, QuadRing, StructAlgebra, TwistedDerivation, Q};

fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn columns(n: usize, images: &[&[i64]]) -> Matrix {
    let v: Vec<Vec<Q>> = images.iter().map(|c| c.iter().map(|&x| int(x)).collect()).collect();
    Matrix::from_columns(n, &v)
}

/// `D(gen) = α + β·gen` on the ring of integers of `Q(√d)`, with σ = id and
/// τ = conjugation.
pub fn quad_derivation(d: i64, alpha: i64, beta: i64) -> TwistedDerivation {
    let r = QuadRing::new(d).expect("squarefree d");
    TwistedDerivation::from_coeffs(r, EndoKind::Identity, EndoKind::Conjugation, alpha, beta).expect("sigma != tau")
}

pub fn quad_general(d: i64, alpha: i64, beta: i64) -> GeneralDerivation {
    GeneralDerivation::from_twisted(&quad_derivation(d, alpha, beta)).expect("valid derivation")
}

/// Basis `{1, x, y}`, all products of `x`, `y` zero.
pub fn nil3() -> StructAlgebra {
    let e = |i: usize| (0..3).map(|j| int(i64::from(i == j))).collect::<Vec<_>>();
    let z = vec![int(0); 3];
    StructAlgebra::new(
        3,
        e(0),
        vec![vec![e(0), e(1), e(2)], vec![e(1), z.clone(), z.clone()], vec![e(2), z.clone(), z]],
    )
    .expect("valid algebra")
}

/// σ: x↦y, y↦0; τ: x↦x, y↦0; D(x) = y.
pub fn nil3_case3() -> GeneralDerivation {
    GeneralDerivation::new(
        nil3(),
        columns(3, &[&[1, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
        columns(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
        columns(3, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
    )
    .expect("valid derivation")
}

/// `σ(x) = x²`, `τ(x) = x³`.
pub fn poly_pair() -> (PolyEndo, PolyEndo) {
    (
        PolyEndo::new(Poly::from_ints(&[0, 0, 1])),
        PolyEndo::new(Poly::from_ints(&[0, 0, 0, 1])),
    )
}

/// A dense integer polynomial of the given degree.
pub fn dense_poly(degree: usize) -> Poly {
    Poly::from_ints(&(0..=degree as i64).map(|i| (i % 7) - 3).collect::<Vec<_>>())
}
