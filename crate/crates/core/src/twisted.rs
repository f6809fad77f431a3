//! (σ,τ)-derivations of a quadratic ring of integers.
//!
//! A `Z`-linear `D` with `D(1) = 0` is fixed by its value on the generator:
//! `D(a + b·gen) = b·D(gen)`. When σ ≠ τ every such map satisfies
//! `D(xy) = D(x)τ(y) + σ(x)D(y)`, so the derivations form a free module of
//! rank one over the ring.
//!
//! Innerness is decided exactly. `D` is inner iff `D = δ_w` with
//! `δ_w(a) = w·(τ(a) − σ(a))`; since the ring is a domain and
//! `(τ − σ)(gen) ≠ 0`, the only candidate is `w = D(gen) / (τ − σ)(gen)` in
//! `Q(√d)`, and `D` is inner iff that candidate is integral.
//!
//! Writing `D(gen) = α + β·gen`, this gives:
//! * `Z[√d]`: inner iff `2d | α` and `2 | β`.
//! * `Z[ω]`: the candidate is `±(β/2 + (2α + β)/(2d)·√d)`, integral iff
//!   `d | 2α + β` (the parity condition follows because `d` is odd).
//!   In particular "β even" is neither necessary nor sufficient:
//!   `d = 5, α = 1, β = 2` is not inner, `d = 5, α = 2, β = 1` is.

use num_bigint::BigInt;

use crate::endos::{EndoKind, QuadEndo};
use crate::quadring::{QuadInt, QuadRat, QuadRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TwistedError {
    #[error("sigma and tau must be different endomorphisms")]
    SigmaEqualsTau,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedDerivation {
    ring: QuadRing,
    sigma: EndoKind,
    tau: EndoKind,
    image_of_gen: QuadInt,
}

/// Result of [`inner_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerDecision {
    /// `D(gen) / (τ − σ)(gen)` in `Q(√d)`.
    pub candidate: QuadRat,
    /// The candidate in integral coordinates, when it lies in the ring.
    pub witness: Option<QuadInt>,
}

impl InnerDecision {
    pub fn is_inner(&self) -> bool {
        self.witness.is_some()
    }
}

impl TwistedDerivation {
    pub fn new(
        ring: QuadRing,
        sigma: EndoKind,
        tau: EndoKind,
        image_of_gen: QuadInt,
    ) -> Result<Self, TwistedError> {
        if sigma == tau {
            return Err(TwistedError::SigmaEqualsTau);
        }
        Ok(Self::with_any_pair(ring, sigma, tau, image_of_gen))
    }

    /// The linear map `a + b·gen ↦ b·image_of_gen` paired with `(σ, τ)`
    /// without requiring σ ≠ τ. With σ = τ the Leibniz law generally fails;
    /// this constructor exists to exhibit that.
    pub fn with_any_pair(ring: QuadRing, sigma: EndoKind, tau: EndoKind, image_of_gen: QuadInt) -> Self {
        TwistedDerivation {
            ring,
            sigma,
            tau,
            image_of_gen,
        }
    }

    /// `D(gen) = α + β·gen`.
    pub fn from_coeffs(
        ring: QuadRing,
        sigma: EndoKind,
        tau: EndoKind,
        alpha: impl Into<BigInt>,
        beta: impl Into<BigInt>,
    ) -> Result<Self, TwistedError> {
        Self::new(ring, sigma, tau, QuadInt::new(alpha, beta))
    }

    pub fn ring(&self) -> QuadRing {
        self.ring
    }

    pub fn sigma(&self) -> QuadEndo {
        QuadEndo::new(self.ring, self.sigma)
    }

    pub fn tau(&self) -> QuadEndo {
        QuadEndo::new(self.ring, self.tau)
    }

    pub fn sigma_kind(&self) -> EndoKind {
        self.sigma
    }

    pub fn tau_kind(&self) -> EndoKind {
        self.tau
    }

    pub fn image_of_gen(&self) -> &QuadInt {
        &self.image_of_gen
    }

    pub fn apply(&self, x: &QuadInt) -> QuadInt {
        self.image_of_gen.scale(&x.b)
    }

    pub fn is_zero(&self) -> bool {
        self.image_of_gen.is_zero()
    }

    /// `D(xy) == D(x)τ(y) + σ(x)D(y)`, exactly.
    pub fn leibniz_holds(&self, x: &QuadInt, y: &QuadInt) -> bool {
        let r = &self.ring;
        let lhs = self.apply(&r.mul(x, y));
        let rhs = &r.mul(&self.apply(x), &self.tau().apply(y)) + &r.mul(&self.sigma().apply(x), &self.apply(y));
        lhs == rhs
    }

    /// `c·D`.
    pub fn scale(&self, c: &QuadInt) -> TwistedDerivation {
        TwistedDerivation {
            image_of_gen: self.ring.mul(c, &self.image_of_gen),
            ..self.clone()
        }
    }

    /// `(a₁, a₂)·D : x ↦ σ(a₁)·D(x)·τ(a₂)`.
    pub fn bimodule_act(&self, a1: &QuadInt, a2: &QuadInt) -> TwistedDerivation {
        let r = &self.ring;
        let left = self.sigma().apply(a1);
        let right = self.tau().apply(a2);
        TwistedDerivation {
            image_of_gen: r.mul(&r.mul(&left, &self.image_of_gen), &right),
            ..self.clone()
        }
    }

    /// Agreement on the basis `{1, gen}`, hence everywhere.
    pub fn same_map(&self, other: &TwistedDerivation) -> bool {
        self.ring == other.ring && self.image_of_gen == other.image_of_gen
    }
}

/// `(τ − σ)(gen)`.
pub fn twist_of_gen(ring: &QuadRing, sigma: EndoKind, tau: EndoKind) -> QuadInt {
    let g = QuadInt::gen();
    &QuadEndo::new(*ring, tau).apply(&g) - &QuadEndo::new(*ring, sigma).apply(&g)
}

/// The inner derivation `a ↦ w·(τ(a) − σ(a))`.
pub fn inner_of(
    ring: &QuadRing,
    sigma: EndoKind,
    tau: EndoKind,
    w: &QuadInt,
) -> Result<TwistedDerivation, TwistedError> {
    let image = ring.mul(w, &twist_of_gen(ring, sigma, tau));
    TwistedDerivation::new(*ring, sigma, tau, image)
}

/// Decides whether `d` is inner, returning the unique rational candidate
/// and, when integral, the witness `w` with `inner_of(σ, τ, w) = D`.
pub fn inner_witness(d: &TwistedDerivation) -> Result<InnerDecision, TwistedError> {
    if d.sigma == d.tau {
        return Err(TwistedError::SigmaEqualsTau);
    }
    let ring = d.ring;
    let num = ring.to_rat(&d.image_of_gen);
    let den = ring.to_rat(&twist_of_gen(&ring, d.sigma, d.tau));
    let candidate = num
        .div(&den, ring.d())
        .expect("(tau - sigma)(gen) is nonzero when sigma != tau");
    let witness = ring.member(&candidate);
    Ok(InnerDecision { candidate, witness })
}

/// The derivation `E` with `E(gen) = 1`; every derivation `D` for the same
/// pair equals `D(gen)·E`.
pub fn free_generator(ring: &QuadRing, sigma: EndoKind, tau: EndoKind) -> Result<TwistedDerivation, TwistedError> {
    TwistedDerivation::new(*ring, sigma, tau, QuadInt::one())
}
