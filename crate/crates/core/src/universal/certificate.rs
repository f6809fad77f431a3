//! Factorization certificates and their independent re-verification.

use serde::{Deserialize, Serialize};

use super::{GeneralDerivation, Setup, UnivCase};
use crate::algebra::{ideal_closure, is_ideal, AlgebraError, AlgebraFile, MapFile, StructAlgebra};
use crate::linalg::{Matrix, Submodule};
use crate::rational::{from_strs, to_strs, RatStr, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, passed: bool) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail: None,
        }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: false,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: UnivCase,
    pub all_pass: bool,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    fn new(case: UnivCase, checks: Vec<CheckResult>) -> Self {
        let all_pass = checks.iter().all(|c| c.passed);
        VerificationReport { case, all_pass, checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Raw data of a factorization `D = f ∘ δ`.
///
/// `sigma`, `tau` and `derivation` hold images of basis elements as
/// columns. `carrier` is the ideal `J` of the tensor algebra in reduced
/// echelon form; `delta_images` has `δ(e_i)` as column `i`; `f_matrix` has
/// `f(j_k)` as column `k`, where `j_k` is the `k`-th carrier basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCertificate {
    pub case: UnivCase,
    pub algebra: StructAlgebra,
    pub sigma: Matrix,
    pub tau: Matrix,
    pub derivation: Matrix,
    pub carrier: Submodule,
    pub delta_images: Matrix,
    pub f_matrix: Matrix,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{what} has the wrong shape: {detail}")]
    Shape { what: &'static str, detail: String },
    #[error("carrier rows are not in reduced echelon form")]
    NonCanonicalCarrier,
}

/// JSON form of a certificate. Field order is fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub case: UnivCase,
    pub algebra: AlgebraFile,
    pub sigma: MapFile,
    pub tau: MapFile,
    pub derivation: MapFile,
    pub left_dim: usize,
    pub right_dim: usize,
    pub carrier: Vec<Vec<RatStr>>,
    pub delta_images: Vec<Vec<RatStr>>,
    pub f_matrix: Vec<Vec<RatStr>>,
    #[serde(default)]
    pub checks: Vec<CheckResult>,
}

impl FactorizationCertificate {
    pub fn all_pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// Dimensions of the two tensor factors implied by the case and the raw
    /// data.
    fn factor_dims(&self) -> (usize, usize) {
        let n = self.algebra.dim();
        match self.case {
            UnivCase::Case1 | UnivCase::Case2 => (n, n),
            UnivCase::Case3 => (n, self.tau.rank()),
            UnivCase::Case4 => (self.sigma.rank(), n),
        }
    }

    pub fn to_file(&self) -> CertificateFile {
        let (left_dim, right_dim) = self.factor_dims();
        CertificateFile {
            case: self.case,
            algebra: AlgebraFile::from_algebra(&self.algebra),
            sigma: MapFile::from_matrix(&self.sigma),
            tau: MapFile::from_matrix(&self.tau),
            derivation: MapFile::from_matrix(&self.derivation),
            left_dim,
            right_dim,
            carrier: self.carrier.basis().iter().map(|r| to_strs(r)).collect(),
            delta_images: self.delta_images.columns().iter().map(|c| to_strs(c)).collect(),
            f_matrix: self.f_matrix.row_vecs().iter().map(|r| to_strs(r)).collect(),
            checks: self.checks.clone(),
        }
    }

    pub fn from_file(file: &CertificateFile) -> Result<Self, CertificateError> {
        let algebra = file.algebra.to_algebra()?;
        let n = algebra.dim();
        let sigma = file.sigma.to_matrix(n)?;
        let tau = file.tau.to_matrix(n)?;
        let derivation = file.derivation.to_matrix(n)?;
        let tdim = file.left_dim * file.right_dim;
        let rows = rect(&file.carrier, tdim, "carrier")?;
        let carrier = Submodule::span(tdim, &rows);
        if carrier.basis() != rows.as_slice() {
            return Err(CertificateError::NonCanonicalCarrier);
        }
        let delta_cols = rect(&file.delta_images, tdim, "delta_images")?;
        if delta_cols.len() != n {
            return Err(shape("delta_images", format!("expected {n} images, found {}", delta_cols.len())));
        }
        let rank = carrier.rank();
        let f_rows = rect(&file.f_matrix, rank, "f_matrix")?;
        if f_rows.len() != n {
            return Err(shape("f_matrix", format!("expected {n} rows, found {}", f_rows.len())));
        }
        Ok(FactorizationCertificate {
            case: file.case,
            algebra,
            sigma,
            tau,
            derivation,
            carrier,
            delta_images: Matrix::from_columns(tdim, &delta_cols),
            f_matrix: Matrix::from_rows(rank, &f_rows),
            checks: file.checks.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("certificate serializes")
    }
}

fn shape(what: &'static str, detail: String) -> CertificateError {
    CertificateError::Shape { what, detail }
}

fn rect(rows: &[Vec<RatStr>], width: usize, what: &'static str) -> Result<Vec<Vec<Q>>, CertificateError> {
    rows.iter()
        .map(|r| {
            if r.len() == width {
                Ok(from_strs(r))
            } else {
                Err(shape(what, format!("expected length {width}, found {}", r.len())))
            }
        })
        .collect()
}

/// Re-derives every part of the certificate from `(A, σ, τ, D)` and the
/// case, ignoring the stored check list.
pub fn verify_certificate(cert: &FactorizationCertificate) -> VerificationReport {
    let case = cert.case;
    let mut checks = Vec::new();
    let d = match GeneralDerivation::new(
        cert.algebra.clone(),
        cert.sigma.clone(),
        cert.tau.clone(),
        cert.derivation.clone(),
    ) {
        Ok(d) => {
            checks.push(CheckResult::new("derivation_valid", true));
            d
        }
        Err(e) => {
            checks.push(CheckResult::fail("derivation_valid", e.to_string()));
            return VerificationReport::new(case, checks);
        }
    };
    let setup = match Setup::new(case, &d) {
        Ok(s) => {
            checks.push(CheckResult::new("case_hypothesis", true));
            s
        }
        Err(e) => {
            checks.push(CheckResult::fail("case_hypothesis", e.to_string()));
            return VerificationReport::new(case, checks);
        }
    };
    let n = cert.algebra.dim();
    let tdim = setup.idx.dim();
    let r = cert.carrier.rank();
    let dims_ok = cert.carrier.ambient() == tdim
        && cert.delta_images.rows() == tdim
        && cert.delta_images.cols() == n
        && cert.f_matrix.rows() == n
        && cert.f_matrix.cols() == r;
    if !dims_ok {
        checks.push(CheckResult::fail(
            "certificate_shape",
            format!("tensor dimension {tdim}, carrier rank {r}"),
        ));
        return VerificationReport::new(case, checks);
    }
    checks.extend(setup.psi_checks.iter().cloned());

    let gens = setup.generators(n);
    let delta: Vec<Vec<Q>> = cert.delta_images.columns();
    let carrier = &cert.carrier;

    checks.push(CheckResult::new(
        "carrier_is_ideal_closure",
        *carrier == ideal_closure(&setup.tensor, &gens),
    ));
    checks.push(CheckResult::new("carrier_is_ideal", is_ideal(&setup.tensor, carrier).is_ok()));
    checks.push(CheckResult::new("delta_matches_generators", delta == gens));
    checks.push(CheckResult::new("delta_in_carrier", delta.iter().all(|v| carrier.contains(v))));

    let twisted = (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = cert.delta_images.mul_vec(&cert.algebra.table()[i][j]);
            let right_act = setup.idx.pure(setup.left.unit(), &setup.rho.image_of_basis(j));
            let left_act = setup.idx.pure(&setup.lam.image_of_basis(i), setup.right.unit());
            let rhs: Vec<Q> = setup
                .tensor
                .mul_coords(&delta[i], &right_act)
                .into_iter()
                .zip(setup.tensor.mul_coords(&left_act, &delta[j]))
                .map(|(a, b)| a + b)
                .collect();
            lhs == rhs
        })
    });
    checks.push(CheckResult::new("delta_twisted_leibniz", twisted));

    let basis_cols = Matrix::from_columns(tdim, carrier.basis());
    checks.push(CheckResult::new(
        "f_matches_definition",
        cert.f_matrix == setup.flat_f(&d).mul(&basis_cols),
    ));

    let f_of = |t: &[Q]| carrier.coordinates(t).map(|c| cert.f_matrix.mul_vec(&c));
    let linear = (0..n).all(|a| {
        carrier.basis().iter().enumerate().all(|(k, t)| {
            let moved = setup.plain_action(a, t);
            let fk = cert.f_matrix.column(k);
            let expected = if case.left_linear() {
                cert.algebra.mul_coords(&cert.algebra.basis(a), &fk)
            } else {
                cert.algebra.mul_coords(&fk, &cert.algebra.basis(a))
            };
            f_of(&moved) == Some(expected)
        })
    });
    checks.push(CheckResult::new("f_one_sided_linear", linear));

    let composite = (0..n).all(|i| f_of(&delta[i]) == Some(d.values().column(i)));
    checks.push(CheckResult::new("composite_equals_derivation", composite));

    let orbit: Vec<Vec<Q>> = delta
        .iter()
        .flat_map(|v| (0..n).map(|a| setup.plain_action(a, v)).collect::<Vec<_>>())
        .collect();
    checks.push(CheckResult::new(
        "carrier_generated_by_delta",
        Submodule::span(tdim, &orbit) == *carrier,
    ));

    VerificationReport::new(case, checks)
}
