//! The generator `Δ = (τ − σ)/g` of the (σ,τ)-derivations of `Q[x]`.
//!
//! Since `(τ − σ)(x)` lies in `(τ − σ)(Q[x])` and divides
//! `(τ − σ)(x^n) = τ(x)^n − σ(x)^n` for every `n`, the gcd of that set is
//! `g = τ(x) − σ(x)` up to a unit. Normalizing with exactly this `g` gives
//! `Δ(x) = 1`.

use super::{Poly, PolyError};

/// The algebra endomorphism `f ↦ f(image_of_x)` of `Q[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyEndo {
    pub image_of_x: Poly,
}

impl PolyEndo {
    pub fn new(image_of_x: Poly) -> Self {
        PolyEndo { image_of_x }
    }

    pub fn identity() -> Self {
        Self::new(Poly::x())
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        f.compose(&self.image_of_x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaGenerator {
    sigma: PolyEndo,
    tau: PolyEndo,
    g: Poly,
}

impl DeltaGenerator {
    pub fn sigma(&self) -> &PolyEndo {
        &self.sigma
    }

    pub fn tau(&self) -> &PolyEndo {
        &self.tau
    }

    /// `τ(x) − σ(x)`.
    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// Monic associate of `g`.
    pub fn g_monic(&self) -> Poly {
        self.g.monic()
    }

    /// Leading coefficient of `g`, so that `g = unit · g_monic`.
    pub fn unit(&self) -> crate::rational::Q {
        self.g.leading().cloned().expect("g is nonzero")
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly, PolyError> {
        delta_apply(self, f)
    }
}

pub fn delta_generator(sigma: PolyEndo, tau: PolyEndo) -> Result<DeltaGenerator, PolyError> {
    let g = &tau.image_of_x - &sigma.image_of_x;
    if g.is_zero() {
        return Err(PolyError::SigmaEqualsTau);
    }
    Ok(DeltaGenerator { sigma, tau, g })
}

/// `((τ − σ)(f)) / g`, with the division checked to be exact.
pub fn delta_apply(delta: &DeltaGenerator, f: &Poly) -> Result<Poly, PolyError> {
    let diff = &delta.tau.apply(f) - &delta.sigma.apply(f);
    diff.exact_div(&delta.g)
}

/// The (σ,τ)-derivation with a given value at `x`: `D = D(x)·Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyDerivation {
    delta: DeltaGenerator,
    image_of_x: Poly,
}

impl PolyDerivation {
    pub fn image_of_x(&self) -> &Poly {
        &self.image_of_x
    }

    pub fn generator(&self) -> &DeltaGenerator {
        &self.delta
    }

    pub fn apply(&self, f: &Poly) -> Result<Poly, PolyError> {
        Ok(&self.image_of_x * &delta_apply(&self.delta, f)?)
    }

    /// `D(fh) == D(f)τ(h) + σ(f)D(h)`.
    pub fn leibniz_holds(&self, f: &Poly, h: &Poly) -> Result<bool, PolyError> {
        let lhs = self.apply(&(f * h))?;
        let rhs = &(&self.apply(f)? * &self.delta.tau.apply(h)) + &(&self.delta.sigma.apply(f) * &self.apply(h)?);
        Ok(lhs == rhs)
    }
}

pub fn poly_derivation(sigma: PolyEndo, tau: PolyEndo, image_of_x: Poly) -> Result<PolyDerivation, PolyError> {
    Ok(PolyDerivation {
        delta: delta_generator(sigma, tau)?,
        image_of_x,
    })
}
