#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use sigtau_core::{Matrix, StructAlgebra, Q};

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn rat() -> impl Strategy<Value = Q> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Q::new(BigInt::from(n), BigInt::from(d)))
}

pub fn vec_of(n: usize) -> impl Strategy<Value = Vec<Q>> {
    proptest::collection::vec(rat(), n)
}

pub fn cols(n: usize, images: &[&[i64]]) -> Matrix {
    let v: Vec<Vec<Q>> = images.iter().map(|c| c.iter().map(|&x| q(x)).collect()).collect();
    Matrix::from_columns(n, &v)
}

/// `Q[t]/(p)` for monic `p = t^n + c[n-1] t^(n-1) + ... + c[0]`, basis
/// `1, t, ..., t^(n-1)`.
pub fn truncated(c: &[i64]) -> StructAlgebra {
    let n = c.len();
    // t^k for k < 2n-1, reduced
    let mut powers: Vec<Vec<Q>> = Vec::new();
    for k in 0..(2 * n - 1) {
        let v = if k < n {
            let mut v = vec![q(0); n];
            v[k] = q(1);
            v
        } else {
            // t^k = t · t^(k-1); shift and substitute t^n = -Σ c_i t^i
            let prev = &powers[k - 1];
            let top = prev[n - 1].clone();
            let mut v = vec![q(0); n];
            for i in 1..n {
                v[i] = prev[i - 1].clone();
            }
            for i in 0..n {
                v[i] -= &top * q(c[i]);
            }
            v
        };
        powers.push(v);
    }
    let table = (0..n)
        .map(|i| (0..n).map(|j| powers[i + j].clone()).collect())
        .collect();
    let mut unit = vec![q(0); n];
    unit[0] = q(1);
    StructAlgebra::new(n, unit, table).expect("truncated polynomial algebra is valid")
}

pub fn truncated_algebra() -> impl Strategy<Value = StructAlgebra> {
    proptest::collection::vec(-3i64..=3, 1..=4).prop_map(|c| truncated(&c))
}

/// Basis `{1, x, y}` with all products of `x`, `y` zero.
pub fn nil3() -> StructAlgebra {
    let z = vec![q(0); 3];
    let e = |i: usize| {
        let mut v = vec![q(0); 3];
        v[i] = q(1);
        v
    };
    StructAlgebra::new(
        3,
        e(0),
        vec![vec![e(0), e(1), e(2)], vec![e(1), z.clone(), z.clone()], vec![e(2), z.clone(), z]],
    )
    .unwrap()
}

/// Unital map of `nil3` with `x ↦ m[0] x + m[1] y`, `y ↦ m[2] x + m[3] y`.
pub fn nil_endo(m: [i64; 4]) -> Matrix {
    cols(3, &[&[1, 0, 0], &[0, m[0], m[1]], &[0, m[2], m[3]]])
}

pub fn nil_deriv(m: [i64; 4]) -> Matrix {
    cols(3, &[&[0, 0, 0], &[0, m[0], m[1]], &[0, m[2], m[3]]])
}

/// Basis `{1, s}` with `s² = c`.
pub fn quad(c: i64) -> StructAlgebra {
    StructAlgebra::new(
        2,
        vec![q(1), q(0)],
        vec![vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![vec![q(0), q(1)], vec![q(c), q(0)]]],
    )
    .unwrap()
}

pub fn conj2() -> Matrix {
    cols(2, &[&[1, 0], &[0, -1]])
}
