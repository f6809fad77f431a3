//! Nonzero ring endomorphisms of a quadratic ring of integers.
//!
//! An endomorphism fixes `Z`, so it is determined by the image of the
//! generator, and that image must satisfy the generator's minimal
//! polynomial. [`classify`] solves those integer equations directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_endo, kernel, AlgMap, MapKind};
use crate::quadring::{Branch, QuadInt, QuadRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndoKind {
    #[serde(rename = "id")]
    Identity,
    #[serde(rename = "conj")]
    Conjugation,
}

impl EndoKind {
    pub fn name(self) -> &'static str {
        match self {
            EndoKind::Identity => "id",
            EndoKind::Conjugation => "conj",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "id" => Some(EndoKind::Identity),
            "conj" => Some(EndoKind::Conjugation),
            _ => None,
        }
    }

    pub fn compose(self, inner: EndoKind) -> EndoKind {
        if self == inner {
            EndoKind::Identity
        } else {
            EndoKind::Conjugation
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadEndo {
    pub kind: EndoKind,
    pub ring: QuadRing,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EndoError {
    #[error("map is not a unital ring endomorphism")]
    NotAnEndomorphism,
}

impl QuadEndo {
    pub fn new(ring: QuadRing, kind: EndoKind) -> Self {
        QuadEndo { kind, ring }
    }

    pub fn apply(&self, x: &QuadInt) -> QuadInt {
        apply_endo(self, x)
    }

    pub fn compose(&self, inner: &QuadEndo) -> QuadEndo {
        assert_eq!(self.ring, inner.ring, "endomorphisms of different rings");
        QuadEndo::new(self.ring, self.kind.compose(inner.kind))
    }

    /// Image of the generator in integral-basis coordinates.
    pub fn gen_image(&self) -> QuadInt {
        self.apply(&QuadInt::gen())
    }

    /// Matrix over `{1, gen}` acting on `ring.as_algebra()`.
    pub fn to_alg_map(&self) -> AlgMap {
        let coords = |x: QuadInt| self.ring.elem_to_coords(&x);
        AlgMap::from_images(
            2,
            &[coords(self.apply(&QuadInt::one())), coords(self.gen_image())],
            MapKind::EndomorphismClaimed,
        )
    }
}

pub fn apply_endo(phi: &QuadEndo, x: &QuadInt) -> QuadInt {
    match phi.kind {
        EndoKind::Identity => x.clone(),
        EndoKind::Conjugation => phi.ring.conj(x),
    }
}

/// Integer solutions `(a, b)` for the generator image `a + b·gen`.
///
/// SQRT branch, `σ(√d) = a + b√d`: squaring gives `a² + d·b² = d` and
/// `2ab = 0`.
///
/// OMEGA branch, `σ(ω) = a + bω`: then `σ(√d) = (2a + b − 1) + b√d` and
/// squaring gives `(2a + b − 1)² + d·b² = d` and `2b(2a + b − 1) = 0`.
fn generator_images(ring: &QuadRing) -> Vec<(BigInt, BigInt)> {
    let d = BigInt::from(ring.d());
    let mut out = Vec::new();
    let mut push = |a: BigInt, b: BigInt| {
        if !out.contains(&(a.clone(), b.clone())) {
            out.push((a, b));
        }
    };
    let int_sqrt = |n: &BigInt| -> Option<BigInt> {
        if n < &BigInt::zero() {
            return None;
        }
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    match ring.branch() {
        Branch::Sqrt => {
            // a = 0: d·b² = d, so b² = 1.
            for b in [1, -1] {
                push(BigInt::zero(), BigInt::from(b));
            }
            // b = 0: a² = d, impossible for squarefree d ≠ 1.
            if let Some(r) = int_sqrt(&d) {
                push(r.clone(), BigInt::zero());
                push(-r, BigInt::zero());
            }
        }
        Branch::Omega => {
            // 2a + b − 1 = 0: d·b² = d, so b = ±1 and a = (1 − b)/2.
            for b in [1i64, -1] {
                push(BigInt::from((1 - b) / 2), BigInt::from(b));
            }
            // b = 0: (2a − 1)² = d. An integer a needs d to be an odd square,
            // which a squarefree d ≠ 1 is not.
            if let Some(r) = int_sqrt(&d) {
                for c in [r.clone(), -r] {
                    let twice: BigInt = c + 1;
                    if twice.is_even() {
                        push(twice / 2, BigInt::zero());
                    }
                }
            }
        }
    }
    out
}

/// All nonzero ring endomorphisms of `ring`: the identity and conjugation.
pub fn classify(ring: &QuadRing) -> Vec<QuadEndo> {
    let alg = ring.as_algebra();
    let mut endos: Vec<QuadEndo> = generator_images(ring)
        .into_iter()
        .map(|(a, b)| {
            let image = QuadInt::new(a, b);
            let kind = if image == QuadInt::gen() {
                EndoKind::Identity
            } else if image == ring.conj(&QuadInt::gen()) {
                EndoKind::Conjugation
            } else {
                unreachable!("unexpected generator image for d = {}", ring.d())
            };
            QuadEndo::new(*ring, kind)
        })
        .collect();
    endos.sort_by_key(|e| e.kind == EndoKind::Conjugation);
    debug_assert!(endos.iter().all(|e| check_endo(&alg, &e.to_alg_map())));
    endos
}

/// Trivial kernel. Errors if `phi` is not a unital multiplicative map on
/// `ring.as_algebra()`.
pub fn check_injective(ring: &QuadRing, phi: &AlgMap) -> Result<bool, EndoError> {
    if !check_endo(&ring.as_algebra(), phi) {
        return Err(EndoError::NotAnEndomorphism);
    }
    Ok(kernel(phi).rank() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::rational::{q, Q};

    fn endo_matrix_entries(phi: &QuadEndo) -> [[Q; 2]; 2] {
        let m = phi.to_alg_map().matrix;
        [
            [m[(0, 0)].clone(), m[(0, 1)].clone()],
            [m[(1, 0)].clone(), m[(1, 1)].clone()],
        ]
    }

    #[test]
    fn classify_sqrt_branch() {
        let r = QuadRing::new(3).unwrap();
        let e = classify(&r);
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].to_alg_map().matrix, Matrix::identity(2));
        assert_eq!(
            endo_matrix_entries(&e[1]),
            [[q(1), q(0)], [q(0), q(-1)]]
        );
    }

    #[test]
    fn classify_omega_branch() {
        let r = QuadRing::new(5).unwrap();
        let e = classify(&r);
        assert_eq!(e.iter().map(|x| x.kind).collect::<Vec<_>>(), [EndoKind::Identity, EndoKind::Conjugation]);
        // columns (1,0) and (1,-1)
        assert_eq!(endo_matrix_entries(&e[1]), [[q(1), q(1)], [q(0), q(-1)]]);
        assert_eq!(e[1].gen_image(), QuadInt::new(1, -1));
    }

    #[test]
    fn classify_negative_d() {
        let r = QuadRing::new(-5).unwrap();
        let kinds: Vec<_> = classify(&r).iter().map(|e| e.kind).collect();
        assert_eq!(kinds, [EndoKind::Identity, EndoKind::Conjugation]);
    }

    #[test]
    fn apply_examples() {
        let r3 = QuadRing::new(3).unwrap();
        let x = QuadInt::new(1, 1);
        assert_eq!(apply_endo(&QuadEndo::new(r3, EndoKind::Identity), &x), x);
        assert_eq!(apply_endo(&QuadEndo::new(r3, EndoKind::Conjugation), &x), QuadInt::new(1, -1));
        let r5 = QuadRing::new(5).unwrap();
        assert_eq!(
            apply_endo(&QuadEndo::new(r5, EndoKind::Conjugation), &QuadInt::new(2, 3)),
            QuadInt::new(5, -3)
        );
    }

    #[test]
    fn injectivity() {
        let r = QuadRing::new(-7).unwrap();
        for e in classify(&r) {
            assert_eq!(check_injective(&r, &e.to_alg_map()), Ok(true));
        }
        let zero = AlgMap::endo(Matrix::zeros(2, 2));
        assert_eq!(check_injective(&r, &zero), Err(EndoError::NotAnEndomorphism));
    }

    #[test]
    fn conj_twice_is_identity() {
        let r = QuadRing::new(13).unwrap();
        let c = QuadEndo::new(r, EndoKind::Conjugation);
        assert_eq!(c.compose(&c).kind, EndoKind::Identity);
    }
}
