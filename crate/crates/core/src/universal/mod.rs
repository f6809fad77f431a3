//! Universal factorization of (σ,τ)-derivations on finite-dimensional
//! commutative algebras.
//!
//! Given a (σ,τ)-derivation `D: A → A`, each case builds a tensor algebra
//! `L ⊗ R`, an ideal `J` inside it generated by
//! `δ(a) = 1 ⊗ ρ(a) − λ(a) ⊗ 1`, and a one-sided linear map `f: J → A`
//! with `f ∘ δ = D`:
//!
//! | case | hypothesis                      | `L`     | `R`     | `λ`  | `ρ`  | `f` on `l ⊗ r`       |
//! |------|---------------------------------|---------|---------|------|------|----------------------|
//! | 1    | τ invertible                    | `A`     | `A`     | σ    | τ    | `l·D(τ⁻¹ r)`         |
//! | 2    | σ invertible                    | `A`     | `A`     | σ    | τ    | `−D(σ⁻¹ l)·r`        |
//! | 3    | neither invertible, `K_τ ⊆ K_D` | `A`     | `A/K_τ` | σ    | `π_τ`| `l·D(s_τ r)`         |
//! | 4    | neither invertible, `K_σ ⊆ K_D` | `A/K_σ` | `A`     | `π_σ`| τ    | `−D(s_σ l)·r`        |
//!
//! In cases 3 and 4 the quotient `A/K` is identified with the image of the
//! endomorphism through `ψ = τ ∘ s` (resp. `σ ∘ s`), where `s` is a linear
//! section of the projection; `ψ ∘ π` recovers the endomorphism, so
//! `1 ⊗ π_τ(a)` is the image-side element `1 ⊗ τ(a)` transported to the
//! quotient. Cases 1 and 3 yield a left `A`-linear `f` (first tensor
//! factor), cases 2 and 4 a right `A`-linear one (second factor).
//!
//! Two different actions on the tensor algebra are used. The twisted
//! bimodule structure `λ(a)⊗1 · t · 1⊗ρ(b)` makes `δ` a derivation; the
//! plain action on one factor is the one `f` is linear for.

mod certificate;

pub use certificate::{
    verify_certificate, CertificateError, CertificateFile, CheckResult, FactorizationCertificate,
    VerificationReport,
};

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    check_endo, check_hom, ideal_closure, kernel, quotient, tensor_product, AlgMap, AlgebraError, MapKind,
    StructAlgebra, TensorIndex,
};
use crate::linalg::{Matrix, Submodule};
use crate::rational::Q;
use crate::twisted::TwistedDerivation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum UnivCase {
    /// τ invertible.
    Case1,
    /// σ invertible.
    Case2,
    /// Neither invertible, `K_τ ⊆ K_D`.
    Case3,
    /// Neither invertible, `K_σ ⊆ K_D`.
    Case4,
}

impl UnivCase {
    pub const ALL: [UnivCase; 4] = [UnivCase::Case1, UnivCase::Case2, UnivCase::Case3, UnivCase::Case4];

    pub fn number(self) -> u8 {
        match self {
            UnivCase::Case1 => 1,
            UnivCase::Case2 => 2,
            UnivCase::Case3 => 3,
            UnivCase::Case4 => 4,
        }
    }

    /// Whether the factoring map is linear for the first tensor factor.
    pub fn left_linear(self) -> bool {
        matches!(self, UnivCase::Case1 | UnivCase::Case3)
    }
}

impl From<UnivCase> for u8 {
    fn from(c: UnivCase) -> u8 {
        c.number()
    }
}

impl TryFrom<u8> for UnivCase {
    type Error = String;

    fn try_from(n: u8) -> Result<Self, String> {
        match n {
            1 => Ok(UnivCase::Case1),
            2 => Ok(UnivCase::Case2),
            3 => Ok(UnivCase::Case3),
            4 => Ok(UnivCase::Case4),
            _ => Err(format!("case must be 1..=4, got {n}")),
        }
    }
}

impl fmt::Display for UnivCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Sigma,
    Tau,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Sigma => "sigma",
            Side::Tau => "tau",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniversalError {
    #[error("sigma and tau must be different endomorphisms")]
    SigmaEqualsTau,
    #[error("case 1 requires tau to be invertible")]
    TauNotInvertible,
    #[error("case 2 requires sigma to be invertible")]
    SigmaNotInvertible,
    #[error("cases 3 and 4 require non-invertible endomorphisms, but {0} is invertible")]
    InvertibleEndo(Side),
    #[error("kernel of {0} is not contained in the kernel of D")]
    KernelNotContained(Side),
    #[error("{0} is not a unital algebra endomorphism")]
    NotAnEndomorphism(Side),
    #[error("D(1) must be zero")]
    NonzeroOnUnit,
    #[error("Leibniz law fails on basis pair (e{i}, e{j})")]
    LeibnizViolated { i: usize, j: usize },
    #[error("{what}: expected dimension {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("factorization check failed: {0}")]
    DiagramBroken(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A verified (σ,τ)-derivation `D: A → A`, with `A` acting on the left
/// through σ and on the right through τ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralDerivation {
    algebra: StructAlgebra,
    sigma: AlgMap,
    tau: AlgMap,
    values: Matrix,
}

impl GeneralDerivation {
    /// `values` has the image of basis element `i` as column `i`.
    pub fn new(algebra: StructAlgebra, sigma: Matrix, tau: Matrix, values: Matrix) -> Result<Self, UniversalError> {
        let n = algebra.dim();
        for (what, m) in [("sigma", &sigma), ("tau", &tau), ("derivation", &values)] {
            if m.rows() != n || m.cols() != n {
                return Err(UniversalError::DimensionMismatch {
                    what,
                    expected: n,
                    found: if m.rows() != n { m.rows() } else { m.cols() },
                });
            }
        }
        let sigma = AlgMap::endo(sigma);
        let tau = AlgMap::endo(tau);
        if !check_endo(&algebra, &sigma) {
            return Err(UniversalError::NotAnEndomorphism(Side::Sigma));
        }
        if !check_endo(&algebra, &tau) {
            return Err(UniversalError::NotAnEndomorphism(Side::Tau));
        }
        if !values.mul_vec(algebra.unit()).iter().all(Zero::is_zero) {
            return Err(UniversalError::NonzeroOnUnit);
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = values.mul_vec(&algebra.table()[i][j]);
                let rhs: Vec<Q> = algebra
                    .mul_coords(&values.column(i), &tau.image_of_basis(j))
                    .into_iter()
                    .zip(algebra.mul_coords(&sigma.image_of_basis(i), &values.column(j)))
                    .map(|(a, b)| a + b)
                    .collect();
                if lhs != rhs {
                    return Err(UniversalError::LeibnizViolated { i, j });
                }
            }
        }
        Ok(GeneralDerivation {
            algebra,
            sigma,
            tau,
            values,
        })
    }

    /// The zero derivation for a pair of endomorphisms.
    pub fn zero(algebra: StructAlgebra, sigma: Matrix, tau: Matrix) -> Result<Self, UniversalError> {
        let n = algebra.dim();
        Self::new(algebra, sigma, tau, Matrix::zeros(n, n))
    }

    /// The same derivation viewed on `as_algebra` of its ring.
    pub fn from_twisted(d: &TwistedDerivation) -> Result<Self, UniversalError> {
        let ring = d.ring();
        let images = [vec![Q::zero(), Q::zero()], ring.elem_to_coords(d.image_of_gen())];
        Self::new(
            ring.as_algebra(),
            d.sigma().to_alg_map().matrix,
            d.tau().to_alg_map().matrix,
            Matrix::from_columns(2, &images),
        )
    }

    pub fn algebra(&self) -> &StructAlgebra {
        &self.algebra
    }

    pub fn sigma(&self) -> &AlgMap {
        &self.sigma
    }

    pub fn tau(&self) -> &AlgMap {
        &self.tau
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.values.mul_vec(x)
    }

    pub fn kernel(&self) -> Submodule {
        self.values.kernel()
    }
}

/// Everything the construction of one case derives from `(A, σ, τ, D)`.
pub(crate) struct Setup {
    pub case: UnivCase,
    pub left: StructAlgebra,
    pub right: StructAlgebra,
    /// `A → L`.
    pub lam: AlgMap,
    /// `A → R`.
    pub rho: AlgMap,
    /// `R → A` for left-linear cases, `L → A` for right-linear ones.
    pub back: Matrix,
    pub tensor: StructAlgebra,
    pub idx: TensorIndex,
    /// Checks on the quotient identification `ψ` (cases 3 and 4).
    pub psi_checks: Vec<CheckResult>,
}

impl Setup {
    pub fn new(case: UnivCase, d: &GeneralDerivation) -> Result<Self, UniversalError> {
        if d.sigma.matrix == d.tau.matrix {
            return Err(UniversalError::SigmaEqualsTau);
        }
        let a = &d.algebra;
        let sigma_inv = d.sigma.matrix.inverse();
        let tau_inv = d.tau.matrix.inverse();
        let (left, right, lam, rho, back, psi_checks) = match case {
            UnivCase::Case1 => {
                let back = tau_inv.ok_or(UniversalError::TauNotInvertible)?;
                (a.clone(), a.clone(), d.sigma.clone(), d.tau.clone(), back, Vec::new())
            }
            UnivCase::Case2 => {
                let back = sigma_inv.ok_or(UniversalError::SigmaNotInvertible)?;
                (a.clone(), a.clone(), d.sigma.clone(), d.tau.clone(), back, Vec::new())
            }
            UnivCase::Case3 | UnivCase::Case4 => {
                if sigma_inv.is_some() {
                    return Err(UniversalError::InvertibleEndo(Side::Sigma));
                }
                if tau_inv.is_some() {
                    return Err(UniversalError::InvertibleEndo(Side::Tau));
                }
                let (side, endo) = if case == UnivCase::Case3 {
                    (Side::Tau, &d.tau)
                } else {
                    (Side::Sigma, &d.sigma)
                };
                let k = kernel(endo);
                if !d.kernel().contains_submodule(&k) {
                    return Err(UniversalError::KernelNotContained(side));
                }
                let qt = quotient(a, &k)?;
                let psi = AlgMap::new(endo.matrix.mul(&qt.section.matrix), MapKind::EndomorphismClaimed);
                let psi_checks = psi_checks(a, endo, &qt.algebra, &qt.projection, &psi);
                let back = qt.section.matrix.clone();
                if case == UnivCase::Case3 {
                    (a.clone(), qt.algebra, d.sigma.clone(), qt.projection, back, psi_checks)
                } else {
                    (qt.algebra, a.clone(), qt.projection, d.tau.clone(), back, psi_checks)
                }
            }
        };
        let (tensor, idx) = tensor_product(&left, &right);
        Ok(Setup {
            case,
            left,
            right,
            lam,
            rho,
            back,
            tensor,
            idx,
            psi_checks,
        })
    }

    /// `δ(e_i) = 1 ⊗ ρ(e_i) − λ(e_i) ⊗ 1`.
    pub fn generator(&self, i: usize) -> Vec<Q> {
        let first = self.idx.pure(self.left.unit(), &self.rho.image_of_basis(i));
        let second = self.idx.pure(&self.lam.image_of_basis(i), self.right.unit());
        first.into_iter().zip(second).map(|(x, y)| x - y).collect()
    }

    pub fn generators(&self, dim: usize) -> Vec<Vec<Q>> {
        (0..dim).map(|i| self.generator(i)).collect()
    }

    /// The factoring map on the flat tensor basis, as a `dim(A) × dim(L⊗R)`
    /// matrix.
    pub fn flat_f(&self, d: &GeneralDerivation) -> Matrix {
        let a = &d.algebra;
        let cols: Vec<Vec<Q>> = (0..self.idx.dim())
            .map(|k| {
                let (p, q) = self.idx.split(k);
                if self.case.left_linear() {
                    // e_p · D(back(r_q))
                    let dq = d.apply(&self.back.column(q));
                    a.mul_coords(&a.basis(p), &dq)
                } else {
                    // −D(back(l_p)) · e_q
                    let dp = d.apply(&self.back.column(p));
                    a.mul_coords(&dp, &a.basis(q)).into_iter().map(|x| -x).collect()
                }
            })
            .collect();
        Matrix::from_columns(a.dim(), &cols)
    }

    /// Plain one-sided action of basis element `e_a` on `t`: `(e_a ⊗ 1)·t`
    /// for left-linear cases, `t·(1 ⊗ e_a)` otherwise.
    pub fn plain_action(&self, a: usize, t: &[Q]) -> Vec<Q> {
        let e = if self.case.left_linear() {
            self.idx.pure(&self.left.basis(a), self.right.unit())
        } else {
            self.idx.pure(self.left.unit(), &self.right.basis(a))
        };
        self.tensor.mul_coords(&e, t)
    }
}

fn psi_checks(
    a: &StructAlgebra,
    endo: &AlgMap,
    quot: &StructAlgebra,
    projection: &AlgMap,
    psi: &AlgMap,
) -> Vec<CheckResult> {
    let recovers = psi.matrix.mul(&projection.matrix) == endo.matrix;
    let rank_ok = psi.matrix.rank() == quot.dim() && endo.matrix.rank() == quot.dim();
    let hom_ok = check_hom(quot, a, psi);
    vec![
        CheckResult::new("psi_recovers_endomorphism", recovers),
        CheckResult::new("psi_is_isomorphism_onto_image", rank_ok && hom_ok),
    ]
}

/// Builds and verifies the certificate for `case`.
pub fn build(case: UnivCase, d: &GeneralDerivation) -> Result<FactorizationCertificate, UniversalError> {
    let setup = Setup::new(case, d)?;
    let n = d.algebra.dim();
    let gens = setup.generators(n);
    let carrier = ideal_closure(&setup.tensor, &gens);
    let delta_images = Matrix::from_columns(setup.idx.dim(), &gens);
    let basis_cols = Matrix::from_columns(setup.idx.dim(), carrier.basis());
    let f_matrix = setup.flat_f(d).mul(&basis_cols);
    let mut cert = FactorizationCertificate {
        case,
        algebra: d.algebra.clone(),
        sigma: d.sigma.matrix.clone(),
        tau: d.tau.matrix.clone(),
        derivation: d.values.clone(),
        carrier,
        delta_images,
        f_matrix,
        checks: Vec::new(),
    };
    let report = verify_certificate(&cert);
    if let Some(bad) = report.checks.iter().find(|c| !c.passed) {
        return Err(UniversalError::DiagramBroken(bad.name.clone()));
    }
    cert.checks = report.checks;
    Ok(cert)
}

pub fn build_case1(d: &GeneralDerivation) -> Result<FactorizationCertificate, UniversalError> {
    build(UnivCase::Case1, d)
}

pub fn build_case2(d: &GeneralDerivation) -> Result<FactorizationCertificate, UniversalError> {
    build(UnivCase::Case2, d)
}

pub fn build_case3(d: &GeneralDerivation) -> Result<FactorizationCertificate, UniversalError> {
    build(UnivCase::Case3, d)
}

pub fn build_case4(d: &GeneralDerivation) -> Result<FactorizationCertificate, UniversalError> {
    build(UnivCase::Case4, d)
}

#[cfg(test)]
mod tests;
