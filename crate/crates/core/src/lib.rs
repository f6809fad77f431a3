//! Exact computation and verification of (σ,τ)-derivations.
//!
//! * [`quadring`], [`endos`], [`twisted`]: twisted derivations on rings of
//!   integers of quadratic fields, their endomorphisms, and an exact
//!   innerness decision with witnesses.
//! * [`polyring`]: twisted derivations on `Q[x]` and the rank-one generator
//!   `Δ = (τ − σ)/g`.
//! * [`algebra`], [`linalg`]: finite-dimensional commutative algebras over
//!   `Q` given by structure constants, with kernels, quotients, tensor
//!   products and ideal closures.
//! * [`universal`]: constructions of universal derivation modules with
//!   checkable factorization certificates `D = f ∘ δ`.

pub mod algebra;
pub mod endos;
pub mod linalg;
pub mod polyring;
pub mod quadring;
pub mod rational;
pub mod twisted;
pub mod universal;

pub use algebra::{AlgElem, AlgMap, MapKind, StructAlgebra};
pub use endos::{EndoKind, QuadEndo};
pub use linalg::{Matrix, Submodule};
pub use quadring::{Branch, QuadInt, QuadRat, QuadRing};
pub use rational::Q;
pub use twisted::{InnerDecision, TwistedDerivation};
pub use universal::{FactorizationCertificate, GeneralDerivation, UnivCase};
