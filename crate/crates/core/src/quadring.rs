//! Rings of integers of quadratic number fields.
//!
//! For squarefree `d ∉ {0, 1}` the ring of integers of `Q(√d)` is `Z[√d]` when
//! `d ≢ 1 (mod 4)` and `Z[ω]`, `ω = (1 + √d)/2`, when `d ≡ 1 (mod 4)`.
//! Elements are stored as integer coordinates `(a, b)` of `a + b·gen` in the
//! integral basis `{1, gen}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::StructAlgebra;
use crate::rational::Q;

/// Largest `|d|` accepted. Squarefreeness is decided exactly for every `d`
/// with `|d| <= i64::MAX` by trial division up to `∛|d|` (about 2.1·10⁶)
/// followed by a perfect-square test on the cofactor.
pub const MAX_ABS_D: u64 = i64::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("d = {d} is not squarefree ({p}^2 divides it)")]
    NotSquarefree { d: i64, p: u64 },
    #[error("d = {0} is not allowed (d must not be 0 or 1)")]
    DisallowedD(i64),
    #[error("|d| = {0} exceeds the factoring bound {MAX_ABS_D}")]
    TooLargeToFactor(BigInt),
}

/// Which integral basis the ring uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `d ≢ 1 (mod 4)`, basis `{1, √d}`.
    Sqrt,
    /// `d ≡ 1 (mod 4)`, basis `{1, ω}`.
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadRing {
    d: i64,
    branch: Branch,
}

/// `a + b·gen` with integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

/// `u + v√d` with rational coordinates, always over the `√d` basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadRat {
    pub u: Q,
    pub v: Q,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn gen() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadInt {
            a: &self.a * k,
            b: &self.b * k,
        }
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl QuadRat {
    pub fn new(u: Q, v: Q) -> Self {
        QuadRat { u, v }
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn sub(&self, o: &QuadRat) -> QuadRat {
        QuadRat::new(&self.u - &o.u, &self.v - &o.v)
    }

    /// Product in `Q(√d)`.
    pub fn mul(&self, o: &QuadRat, d: i64) -> QuadRat {
        let d = Q::from_integer(BigInt::from(d));
        QuadRat::new(
            &self.u * &o.u + &d * &self.v * &o.v,
            &self.u * &o.v + &self.v * &o.u,
        )
    }

    /// Quotient in `Q(√d)`; `None` when dividing by zero. `d` must not be a
    /// perfect square, so every nonzero element is invertible.
    pub fn div(&self, o: &QuadRat, d: i64) -> Option<QuadRat> {
        let dq = Q::from_integer(BigInt::from(d));
        let n = &o.u * &o.u - &dq * &o.v * &o.v;
        if n.is_zero() {
            return None;
        }
        let conj = QuadRat::new(o.u.clone(), -o.v.clone());
        let p = self.mul(&conj, d);
        Some(QuadRat::new(p.u / &n, p.v / &n))
    }
}

impl Mul<&Q> for &QuadRat {
    type Output = QuadRat;
    fn mul(self, k: &Q) -> QuadRat {
        QuadRat::new(&self.u * k, &self.v * k)
    }
}

impl QuadRing {
    /// Validates `d` and selects the integral basis.
    pub fn new(d: i64) -> Result<Self, QuadError> {
        if d == 0 || d == 1 {
            return Err(QuadError::DisallowedD(d));
        }
        if let Some(p) = square_factor(d.unsigned_abs()) {
            return Err(QuadError::NotSquarefree { d, p });
        }
        let branch = if d.rem_euclid(4) == 1 {
            Branch::Omega
        } else {
            Branch::Sqrt
        };
        Ok(QuadRing { d, branch })
    }

    /// As [`QuadRing::new`], for arbitrary-size input.
    pub fn from_bigint(d: &BigInt) -> Result<Self, QuadError> {
        match d.to_i64() {
            Some(d) if d.unsigned_abs() <= MAX_ABS_D => Self::new(d),
            _ => Err(QuadError::TooLargeToFactor(d.abs())),
        }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Printable name of the generator.
    pub fn gen_symbol(&self) -> String {
        match self.branch {
            Branch::Sqrt => format!("sqrt({})", self.d),
            Branch::Omega => "omega".to_string(),
        }
    }

    /// `(d - 1)/4`, the constant term in `ω² = ω + (d-1)/4`. Only meaningful
    /// in the OMEGA branch.
    pub fn omega_const(&self) -> BigInt {
        BigInt::from((self.d - 1) / 4)
    }

    pub fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        let bb = &x.b * &y.b;
        let cross = &x.a * &y.b + &x.b * &y.a;
        match self.branch {
            Branch::Sqrt => QuadInt {
                a: &x.a * &y.a + BigInt::from(self.d) * bb,
                b: cross,
            },
            Branch::Omega => QuadInt {
                a: &x.a * &y.a + self.omega_const() * &bb,
                b: cross + bb,
            },
        }
    }

    /// The nontrivial automorphism: `√d ↦ −√d`, equivalently `ω ↦ 1 − ω`.
    pub fn conj(&self, x: &QuadInt) -> QuadInt {
        match self.branch {
            Branch::Sqrt => QuadInt {
                a: x.a.clone(),
                b: -&x.b,
            },
            Branch::Omega => QuadInt {
                a: &x.a + &x.b,
                b: -&x.b,
            },
        }
    }

    pub fn norm(&self, x: &QuadInt) -> BigInt {
        let n = self.mul(x, &self.conj(x));
        assert!(n.b.is_zero(), "norm has a nonzero generator coordinate");
        n.a
    }

    /// `a + b·gen` rewritten over `{1, √d}`.
    pub fn to_rat(&self, x: &QuadInt) -> QuadRat {
        let a = Q::from_integer(x.a.clone());
        let b = Q::from_integer(x.b.clone());
        match self.branch {
            Branch::Sqrt => QuadRat::new(a, b),
            Branch::Omega => {
                let half = Q::new(BigInt::one(), BigInt::from(2));
                QuadRat::new(a + &b * &half, b * half)
            }
        }
    }

    /// Integral-basis coordinates of `z`, if `z` lies in the ring.
    pub fn member(&self, z: &QuadRat) -> Option<QuadInt> {
        match self.branch {
            Branch::Sqrt => {
                if z.u.is_integer() && z.v.is_integer() {
                    Some(QuadInt::new(z.u.to_integer(), z.v.to_integer()))
                } else {
                    None
                }
            }
            Branch::Omega => {
                let n = &z.v * Q::from_integer(BigInt::from(2));
                let m = &z.u - &z.v;
                if n.is_integer() && m.is_integer() {
                    Some(QuadInt::new(m.to_integer(), n.to_integer()))
                } else {
                    None
                }
            }
        }
    }

    /// The ring tensored with `Q`, as a two-dimensional structure-constant
    /// algebra over the same basis `{1, gen}`.
    pub fn as_algebra(&self) -> StructAlgebra {
        let i = |n: i64| Q::from_integer(BigInt::from(n));
        let gen_sq = match self.branch {
            Branch::Sqrt => vec![i(self.d), i(0)],
            Branch::Omega => vec![Q::from_integer(self.omega_const()), i(1)],
        };
        StructAlgebra::new(
            2,
            vec![i(1), i(0)],
            vec![
                vec![vec![i(1), i(0)], vec![i(0), i(1)]],
                vec![vec![i(0), i(1)], gen_sq],
            ],
        )
        .expect("quadratic presentation is a valid algebra")
    }

    pub fn elem_to_coords(&self, x: &QuadInt) -> Vec<Q> {
        vec![Q::from_integer(x.a.clone()), Q::from_integer(x.b.clone())]
    }

    pub fn display(&self, x: &QuadInt) -> String {
        format!("{}", DisplayQuadInt { ring: self, x })
    }
}

struct DisplayQuadInt<'a> {
    ring: &'a QuadRing,
    x: &'a QuadInt,
}

impl fmt::Display for DisplayQuadInt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.ring.gen_symbol();
        let (a, b) = (&self.x.a, &self.x.b);
        let term = |c: &BigInt| {
            if c.is_one() {
                g.clone()
            } else {
                format!("{c}*{g}")
            }
        };
        match (a.is_zero(), b.is_zero()) {
            (_, true) => write!(f, "{a}"),
            (true, false) if b.is_negative() => write!(f, "-{}", term(&-b)),
            (true, false) => write!(f, "{}", term(b)),
            (false, false) if b.is_negative() => write!(f, "{a} - {}", term(&-b)),
            (false, false) => write!(f, "{a} + {}", term(b)),
        }
    }
}

/// Smallest prime `p` with `p² | n`, if any.
fn square_factor(n: u64) -> Option<u64> {
    let mut m = n;
    let mut p: u64 = 2;
    while p.saturating_mul(p).saturating_mul(p) <= n {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return Some(p);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // Every prime factor of m now exceeds ∛n, so m is 1, p, pq or p².
    let r = m.sqrt();
    (m > 1 && r * r == m).then_some(r)
}
