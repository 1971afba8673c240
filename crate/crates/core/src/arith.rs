//! Integer lattice vectors, 3x3 determinants and exact rationals.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

/// A vector of `Z^3`. Also used for covectors (linear functionals `Z^3 -> Z`), paired
/// with vectors through [`LatticeVector::dot`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub [BigInt; 3]);

pub type Covector = LatticeVector;

impl LatticeVector {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        LatticeVector([x.into(), y.into(), z.into()])
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    /// Standard basis vector `e_{k+1}` (or the dual covector `e_{k+1}^*`).
    pub fn basis(k: usize) -> Self {
        let mut v = Self::zero();
        v.0[k] = BigInt::one();
        v
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector([&self.0[0] * k, &self.0[1] * k, &self.0[2] * k])
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector([
            &self.0[0] + &rhs.0[0],
            &self.0[1] + &rhs.0[1],
            &self.0[2] + &rhs.0[2],
        ])
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector([
            &self.0[0] - &rhs.0[0],
            &self.0[1] - &rhs.0[1],
            &self.0[2] - &rhs.0[2],
        ])
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector([-&self.0[0], -&self.0[1], -&self.0[2]])
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

/// `det(a, b, c)` with `a, b, c` as columns.
pub fn det3(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> BigInt {
    let [a0, a1, a2] = &a.0;
    let [b0, b1, b2] = &b.0;
    let [c0, c1, c2] = &c.0;
    a0 * (b1 * c2 - b2 * c1) - b0 * (a1 * c2 - a2 * c1) + c0 * (a1 * b2 - a2 * b1)
}

/// Cross product `a x b`; `det(a, b, c) = <a x b, c>`.
pub fn cross(a: &LatticeVector, b: &LatticeVector) -> LatticeVector {
    let [a0, a1, a2] = &a.0;
    let [b0, b1, b2] = &b.0;
    LatticeVector([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
}

/// Dual basis of a lattice basis `(a, b, c)`: covectors `(alpha, beta, gamma)` with
/// `<alpha, a> = 1`, `<alpha, b> = <alpha, c> = 0` and so on. `None` unless
/// `det(a, b, c) = ±1`.
pub fn dual_basis(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> Option<[Covector; 3]> {
    let d = det3(a, b, c);
    if d.abs() != BigInt::one() {
        return None;
    }
    // rows of the inverse are the normalized cross products
    Some([
        cross(b, c).scale(&d),
        cross(c, a).scale(&d),
        cross(a, b).scale(&d),
    ])
}

/// An integer 3x3 matrix acting on lattice vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix3(pub [[BigInt; 3]; 3]);

impl Matrix3 {
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Matrix3(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    pub fn row(&self, k: usize) -> LatticeVector {
        LatticeVector(self.0[k].clone())
    }

    pub fn det(&self) -> BigInt {
        // det of rows equals det of columns
        det3(&self.row(0), &self.row(1), &self.row(2))
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector([self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v)])
    }
}

pub fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn rational_sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let r: BigRational = s.parse().ok()?;
    Some(r)
}

pub fn rational_from_int(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}
