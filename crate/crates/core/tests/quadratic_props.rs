mod common;

use common::q;
use num_bigint::BigInt;
use proptest::prelude::*;
use sigtau_core::algebra::check_endo;
use sigtau_core::endos::{check_injective, classify};
use sigtau_core::twisted::{inner_of, inner_witness};
use sigtau_core::{Branch, EndoKind, QuadInt, QuadRat, QuadRing, TwistedDerivation, Q};

fn squarefree(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let n = d.unsigned_abs();
    (2..).take_while(|p| p * p <= n).all(|p| n % (p * p) != 0)
}

fn sweep() -> Vec<i64> {
    (-200..=200).filter(|&d| squarefree(d)).collect()
}

fn ring() -> impl Strategy<Value = QuadRing> {
    prop::sample::select(sweep()).prop_map(|d| QuadRing::new(d).unwrap())
}

fn elem() -> impl Strategy<Value = QuadInt> {
    (-60i64..=60, -60i64..=60).prop_map(|(a, b)| QuadInt::new(a, b))
}

fn pair() -> impl Strategy<Value = (EndoKind, EndoKind)> {
    prop::bool::ANY.prop_map(|b| {
        if b {
            (EndoKind::Identity, EndoKind::Conjugation)
        } else {
            (EndoKind::Conjugation, EndoKind::Identity)
        }
    })
}

/// Product in coordinates, computed independently of the library.
fn oracle_mul(d: i64, x: (i128, i128), y: (i128, i128)) -> (i128, i128) {
    let d = d as i128;
    let ((a, b), (c, e)) = (x, y);
    if d.rem_euclid(4) == 1 {
        let k = (d - 1) / 4;
        (a * c + k * b * e, a * e + b * c + b * e)
    } else {
        (a * c + d * b * e, a * e + b * c)
    }
}

fn small(x: &QuadInt) -> (i128, i128) {
    (i128::try_from(&x.a).unwrap(), i128::try_from(&x.b).unwrap())
}

fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_matches_oracle(r in ring(), x in elem(), y in elem()) {
        let p = r.mul(&x, &y);
        prop_assert_eq!(small(&p), oracle_mul(r.d(), small(&x), small(&y)));
    }

    #[test]
    fn norm_is_multiplicative(r in ring(), x in elem(), y in elem()) {
        prop_assert_eq!(r.norm(&r.mul(&x, &y)), r.norm(&x) * r.norm(&y));
    }

    #[test]
    fn conj_is_involutive_endomorphism(r in ring(), x in elem(), y in elem()) {
        prop_assert_eq!(r.conj(&r.conj(&x)), x.clone());
        prop_assert_eq!(r.conj(&r.mul(&x, &y)), r.mul(&r.conj(&x), &r.conj(&y)));
        prop_assert_eq!(r.conj(&(&x + &y)), &r.conj(&x) + &r.conj(&y));
    }

    #[test]
    fn member_inverts_embedding(r in ring(), x in elem()) {
        prop_assert_eq!(r.member(&r.to_rat(&x)), Some(x));
    }

    #[test]
    fn member_rejects_fractional_shift(r in ring(), x in elem()) {
        // z + 1/3 is never integral
        let z = r.to_rat(&x);
        let shifted = QuadRat::new(z.u + rat(1, 3), z.v);
        prop_assert_eq!(r.member(&shifted), None);
    }

    #[test]
    fn leibniz_universality(r in ring(), (s, t) in pair(), img in elem(), x in elem(), y in elem()) {
        let d = TwistedDerivation::new(r, s, t, img).unwrap();
        prop_assert!(d.leibniz_holds(&x, &y));
    }

    #[test]
    fn scale_and_bimodule_stay_derivations(
        r in ring(), (s, t) in pair(), img in elem(),
        c in elem(), a1 in elem(), a2 in elem(), x in elem(), y in elem(),
    ) {
        let d = TwistedDerivation::new(r, s, t, img).unwrap();
        prop_assert!(d.scale(&c).leibniz_holds(&x, &y));
        let b = d.bimodule_act(&a1, &a2);
        prop_assert!(b.leibniz_holds(&x, &y));
        // (a₁,a₂)·D (x) = σ(a₁) D(x) τ(a₂)
        let expected = r.mul(&r.mul(&d.sigma().apply(&a1), &d.apply(&x)), &d.tau().apply(&a2));
        prop_assert_eq!(b.apply(&x), expected);
    }

    #[test]
    fn inner_soundness(r in ring(), (s, t) in pair(), img in elem()) {
        let d = TwistedDerivation::new(r, s, t, img).unwrap();
        let dec = inner_witness(&d).unwrap();
        if let Some(w) = dec.witness {
            prop_assert!(inner_of(&r, s, t, &w).unwrap().same_map(&d));
        }
    }

    #[test]
    fn inner_of_is_injective(r in ring(), (s, t) in pair(), w1 in elem(), w2 in elem()) {
        let a = inner_of(&r, s, t, &w1).unwrap();
        let b = inner_of(&r, s, t, &w2).unwrap();
        prop_assert_eq!(a.same_map(&b), w1 == w2);
    }

    #[test]
    fn inner_round_trip(r in ring(), (s, t) in pair(), w in elem()) {
        let d = inner_of(&r, s, t, &w).unwrap();
        prop_assert_eq!(inner_witness(&d).unwrap().witness, Some(w));
    }

    #[test]
    fn innerness_criteria(r in ring(), (s, t) in pair(), alpha in -120i64..=120, beta in -120i64..=120) {
        let d = TwistedDerivation::from_coeffs(r, s, t, alpha, beta).unwrap();
        let inner = inner_witness(&d).unwrap().is_inner();
        let dd = r.d();
        let expected = match r.branch() {
            Branch::Sqrt => alpha % (2 * dd) == 0 && beta % 2 == 0,
            Branch::Omega => (2 * alpha + beta) % dd == 0,
        };
        prop_assert_eq!(inner, expected);
    }
}

#[test]
fn omega_relation() {
    for d in sweep().into_iter().filter(|d| d.rem_euclid(4) == 1) {
        let r = QuadRing::new(d).unwrap();
        let w = QuadInt::gen();
        let w2 = r.mul(&w, &w);
        // ω² − ω − (d−1)/4 = 0
        let k = QuadInt::new((d - 1) / 4, 0);
        assert!((&(&w2 - &w) - &k).is_zero(), "d = {d}");
    }
}

#[test]
fn classification_sweep() {
    for d in sweep() {
        let r = QuadRing::new(d).unwrap();
        let endos = classify(&r);
        assert_eq!(endos.len(), 2, "d = {d}");
        let alg = r.as_algebra();
        for e in &endos {
            let m = e.to_alg_map();
            assert!(check_endo(&alg, &m), "d = {d}");
            assert!(check_injective(&r, &m).unwrap(), "d = {d}");
        }
        let g = QuadInt::gen();
        assert_eq!(endos[0].apply(&g), g);
        assert_eq!(endos[1].apply(&g), r.conj(&g));
        assert_ne!(endos[0].apply(&g), endos[1].apply(&g));
        let cc = endos[1].compose(&endos[1]);
        assert_eq!(cc.kind, EndoKind::Identity);
    }
}

#[test]
fn ordinary_rigidity() {
    for d in sweep().into_iter().filter(|d| d.rem_euclid(4) != 1).take(40) {
        let r = QuadRing::new(d).unwrap();
        for img in [QuadInt::new(1, 0), QuadInt::new(0, 1), QuadInt::new(-3, 2)] {
            let dd = TwistedDerivation::with_any_pair(r, EndoKind::Identity, EndoKind::Identity, img);
            assert!(!dd.leibniz_holds(&QuadInt::gen(), &QuadInt::gen()), "d = {d}");
        }
    }
}

#[test]
fn candidate_is_exact_quotient() {
    // D(gen) / (τ − σ)(gen) for d = 3, σ = id, τ = conj, D(s) = 1: 1/(−2s) = −s/6
    let r = QuadRing::new(3).unwrap();
    let d = TwistedDerivation::from_coeffs(r, EndoKind::Identity, EndoKind::Conjugation, 1, 0).unwrap();
    let dec = inner_witness(&d).unwrap();
    assert_eq!(dec.candidate, QuadRat::new(q(0), rat(-1, 6)));
    assert!(dec.witness.is_none());
}
