//! Finite-dimensional commutative algebras over the rationals, presented by
//! structure constants, together with the constructions needed to build
//! universal derivation modules: kernels, quotients by ideals, tensor
//! products and ideal closures.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{Matrix, Submodule};
use crate::rational::{from_strs, to_strs, RatStr, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("algebra dimension must be at least 1")]
    ZeroDimension,
    #[error("malformed structure table: {0}")]
    BadShape(String),
    #[error("not commutative: c[{i}][{j}][{k}] != c[{j}][{i}][{k}]")]
    NonCommutative { i: usize, j: usize, k: usize },
    #[error("not associative on basis triple ({i}, {j}, {k})")]
    NonAssociative { i: usize, j: usize, k: usize },
    #[error("unit does not act as identity on basis element {i}")]
    BadUnit { i: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not an ideal: basis vector {row} times e{basis} leaves the subspace")]
    NotAnIdeal { row: usize, basis: usize },
}

/// Commutative, associative, unital algebra with basis `e_0..e_{dim-1}` and
/// `e_i * e_j = sum_k table[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructAlgebra {
    dim: usize,
    unit: Vec<Q>,
    table: Vec<Vec<Vec<Q>>>,
}

/// Element of a [`StructAlgebra`] in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgElem(pub Vec<Q>);

impl AlgElem {
    pub fn coords(&self) -> &[Q] {
        &self.0
    }
}

impl StructAlgebra {
    /// Validates commutativity, associativity and the unit law.
    pub fn new(dim: usize, unit: Vec<Q>, table: Vec<Vec<Vec<Q>>>) -> Result<Self, AlgebraError> {
        let alg = Self::from_parts(dim, unit, table)?;
        alg.validate()?;
        Ok(alg)
    }

    fn from_parts(dim: usize, unit: Vec<Q>, table: Vec<Vec<Vec<Q>>>) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::ZeroDimension);
        }
        if unit.len() != dim {
            return Err(AlgebraError::BadShape(format!(
                "unit has length {}, expected {dim}",
                unit.len()
            )));
        }
        if table.len() != dim {
            return Err(AlgebraError::BadShape(format!(
                "table has {} rows, expected {dim}",
                table.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != dim {
                return Err(AlgebraError::BadShape(format!("table[{i}] has length {}", row.len())));
            }
            for (j, prod) in row.iter().enumerate() {
                if prod.len() != dim {
                    return Err(AlgebraError::BadShape(format!(
                        "table[{i}][{j}] has length {}",
                        prod.len()
                    )));
                }
            }
        }
        Ok(StructAlgebra { dim, unit, table })
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.table[i][j][k] != self.table[j][i][k] {
                        return Err(AlgebraError::NonCommutative { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.mul_coords(ij, &self.basis(k));
                    let right = self.mul_coords(&self.basis(i), &self.table[j][k]);
                    if left != right {
                        return Err(AlgebraError::NonAssociative { i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            if self.mul_coords(&self.unit, &self.basis(i)) != self.basis(i) {
                return Err(AlgebraError::BadUnit { i });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Q] {
        &self.unit
    }

    pub fn table(&self) -> &[Vec<Vec<Q>>] {
        &self.table
    }

    /// The `i`-th standard basis vector.
    pub fn basis(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }

    pub fn zero_vec(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim]
    }

    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem, AlgebraError> {
        for v in [x, y] {
            if v.0.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim,
                    found: v.0.len(),
                });
            }
        }
        Ok(AlgElem(self.mul_coords(&x.0, &y.0)))
    }

    /// Bilinear product on raw coordinate vectors. Panics on length mismatch.
    pub fn mul_coords(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        assert_eq!(x.len(), self.dim, "left factor has wrong length");
        assert_eq!(y.len(), self.dim, "right factor has wrong length");
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `x`.
    pub fn mult_matrix(&self, x: &[Q]) -> Matrix {
        let cols: Vec<Vec<Q>> = (0..self.dim)
            .map(|j| self.mul_coords(x, &self.basis(j)))
            .collect();
        Matrix::from_columns(self.dim, &cols)
    }
}

/// Whether an [`AlgMap`] is meant to be an algebra homomorphism or just a
/// linear map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapKind {
    EndomorphismClaimed,
    LinearOnly,
}

/// Linear map between algebras; column `j` is the image of basis vector `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgMap {
    pub matrix: Matrix,
    pub kind: MapKind,
}

impl AlgMap {
    pub fn new(matrix: Matrix, kind: MapKind) -> Self {
        AlgMap { matrix, kind }
    }

    pub fn endo(matrix: Matrix) -> Self {
        Self::new(matrix, MapKind::EndomorphismClaimed)
    }

    pub fn linear(matrix: Matrix) -> Self {
        Self::new(matrix, MapKind::LinearOnly)
    }

    pub fn identity(dim: usize) -> Self {
        Self::endo(Matrix::identity(dim))
    }

    pub fn from_images(target_dim: usize, images: &[Vec<Q>], kind: MapKind) -> Self {
        Self::new(Matrix::from_columns(target_dim, images), kind)
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.matrix.mul_vec(x)
    }

    pub fn image_of_basis(&self, i: usize) -> Vec<Q> {
        self.matrix.column(i)
    }

    pub fn compose(&self, inner: &AlgMap) -> AlgMap {
        let kind = if self.kind == MapKind::EndomorphismClaimed && inner.kind == MapKind::EndomorphismClaimed {
            MapKind::EndomorphismClaimed
        } else {
            MapKind::LinearOnly
        };
        AlgMap::new(self.matrix.mul(&inner.matrix), kind)
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }
}

/// True iff `phi` is a unital, multiplicative endomorphism of `alg`.
pub fn check_endo(alg: &StructAlgebra, phi: &AlgMap) -> bool {
    check_hom(alg, alg, phi)
}

/// True iff `phi: source -> target` is a unital algebra homomorphism.
pub fn check_hom(source: &StructAlgebra, target: &StructAlgebra, phi: &AlgMap) -> bool {
    if phi.matrix.rows() != target.dim() || phi.matrix.cols() != source.dim() {
        return false;
    }
    if phi.apply(source.unit()) != target.unit() {
        return false;
    }
    let images: Vec<Vec<Q>> = (0..source.dim()).map(|i| phi.image_of_basis(i)).collect();
    for i in 0..source.dim() {
        for j in i..source.dim() {
            let lhs = target.mul_coords(&images[i], &images[j]);
            let rhs = phi.apply(&source.table()[i][j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

pub fn kernel(phi: &AlgMap) -> Submodule {
    phi.matrix.kernel()
}

pub fn image(phi: &AlgMap) -> Submodule {
    phi.matrix.image()
}

/// `ideal` times every basis element stays inside `ideal`.
pub fn is_ideal(alg: &StructAlgebra, ideal: &Submodule) -> Result<(), AlgebraError> {
    if ideal.ambient() != alg.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: alg.dim(),
            found: ideal.ambient(),
        });
    }
    for (row, b) in ideal.basis().iter().enumerate() {
        for j in 0..alg.dim() {
            if !ideal.contains(&alg.mul_coords(b, &alg.basis(j))) {
                return Err(AlgebraError::NotAnIdeal { row, basis: j });
            }
        }
    }
    Ok(())
}

/// Quotient `A/I` with its projection and a linear section.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: StructAlgebra,
    /// `A -> A/I`, an algebra homomorphism.
    pub projection: AlgMap,
    /// `A/I -> A`, linear; `projection . section = id`.
    pub section: AlgMap,
}

/// The quotient basis is the set of standard basis vectors at the non-pivot
/// columns of `ideal`'s echelon basis, so the section is a coordinate
/// inclusion.
pub fn quotient(alg: &StructAlgebra, ideal: &Submodule) -> Result<Quotient, AlgebraError> {
    is_ideal(alg, ideal)?;
    let n = alg.dim();
    let kept: Vec<usize> = (0..n).filter(|c| !ideal.pivots().contains(c)).collect();
    let m = kept.len();
    if m == 0 {
        // A/A is the zero ring, which has no unital presentation of dim >= 1.
        return Err(AlgebraError::ZeroDimension);
    }
    let project = |v: &[Q]| -> Vec<Q> {
        let r = ideal.reduce(v);
        kept.iter().map(|&c| r[c].clone()).collect()
    };
    let proj_cols: Vec<Vec<Q>> = (0..n).map(|i| project(&alg.basis(i))).collect();
    let projection = AlgMap::from_images(m, &proj_cols, MapKind::EndomorphismClaimed);
    let section_cols: Vec<Vec<Q>> = kept.iter().map(|&c| alg.basis(c)).collect();
    let section = AlgMap::from_images(n, &section_cols, MapKind::LinearOnly);

    let table = kept
        .iter()
        .map(|&a| {
            kept.iter()
                .map(|&b| project(&alg.table()[a][b]))
                .collect()
        })
        .collect();
    let unit = project(alg.unit());
    let algebra = StructAlgebra::from_parts(m, unit, table)?;
    Ok(Quotient {
        algebra,
        projection,
        section,
    })
}

/// Flat indexing of `A ⊗ B`: `(i, j) -> i * dim(B) + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorIndex {
    pub left: usize,
    pub right: usize,
}

impl TensorIndex {
    pub fn dim(&self) -> usize {
        self.left * self.right
    }

    pub fn flat(&self, i: usize, j: usize) -> usize {
        assert!(i < self.left && j < self.right);
        i * self.right + j
    }

    pub fn split(&self, k: usize) -> (usize, usize) {
        (k / self.right, k % self.right)
    }

    /// Coordinates of the pure tensor `x ⊗ y`.
    pub fn pure(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        assert_eq!(x.len(), self.left);
        assert_eq!(y.len(), self.right);
        let mut out = vec![Q::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    out[self.flat(i, j)] = xi * yj;
                }
            }
        }
        out
    }
}

/// `A ⊗ B` with `(a ⊗ b)(a' ⊗ b') = aa' ⊗ bb'`.
pub fn tensor_product(a: &StructAlgebra, b: &StructAlgebra) -> (StructAlgebra, TensorIndex) {
    let idx = TensorIndex {
        left: a.dim(),
        right: b.dim(),
    };
    let n = idx.dim();
    let mut table = vec![vec![vec![Q::zero(); n]; n]; n];
    for i in 0..a.dim() {
        for j in 0..b.dim() {
            for k in 0..a.dim() {
                for l in 0..b.dim() {
                    table[idx.flat(i, j)][idx.flat(k, l)] = idx.pure(&a.table()[i][k], &b.table()[j][l]);
                }
            }
        }
    }
    let unit = idx.pure(a.unit(), b.unit());
    let alg = StructAlgebra::from_parts(n, unit, table).expect("tensor shape is consistent");
    (alg, idx)
}

pub fn tensor_square(a: &StructAlgebra) -> (StructAlgebra, TensorIndex) {
    tensor_product(a, a)
}

/// Smallest subspace containing `gens` and closed under multiplication by
/// every basis element.
pub fn ideal_closure(alg: &StructAlgebra, gens: &[Vec<Q>]) -> Submodule {
    let mut current = Submodule::span(alg.dim(), gens);
    loop {
        let mut vecs: Vec<Vec<Q>> = current.basis().to_vec();
        for b in current.basis() {
            for j in 0..alg.dim() {
                vecs.push(alg.mul_coords(b, &alg.basis(j)));
            }
        }
        let next = Submodule::span(alg.dim(), &vecs);
        if next.rank() == current.rank() {
            return next;
        }
        current = next;
    }
}

/// JSON layout `{"dim": n, "unit": [...], "table": [[[...]]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub unit: Vec<RatStr>,
    pub table: Vec<Vec<Vec<RatStr>>>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &StructAlgebra) -> Self {
        AlgebraFile {
            dim: a.dim(),
            unit: to_strs(a.unit()),
            table: a
                .table()
                .iter()
                .map(|row| row.iter().map(|v| to_strs(v)).collect())
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<StructAlgebra, AlgebraError> {
        StructAlgebra::new(
            self.dim,
            from_strs(&self.unit),
            self.table
                .iter()
                .map(|row| row.iter().map(|v| from_strs(v)).collect())
                .collect(),
        )
    }
}

/// JSON layout for a linear map on an algebra: `{"images": [[...], ...]}`,
/// one coordinate vector per basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub images: Vec<Vec<RatStr>>,
}

impl MapFile {
    pub fn from_matrix(m: &Matrix) -> Self {
        MapFile {
            images: m.columns().iter().map(|c| to_strs(c)).collect(),
        }
    }

    /// Columns must all have length `dim`, and there must be `dim` of them.
    pub fn to_matrix(&self, dim: usize) -> Result<Matrix, AlgebraError> {
        if self.images.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: self.images.len(),
            });
        }
        let cols: Vec<Vec<Q>> = self.images.iter().map(|c| from_strs(c)).collect();
        if let Some(c) = cols.iter().find(|c| c.len() != dim) {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: c.len(),
            });
        }
        Ok(Matrix::from_columns(dim, &cols))
    }
}
