use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use super::{Fan3, FanError};
use crate::arith::{det3, LatticeVector};

/// Shape of the star-shaped sphere `st(K)` at a wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convexity {
    Convex,
    Flat,
    Concave,
}

impl std::fmt::Display for Convexity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Convexity::Convex => "convex",
            Convexity::Flat => "flat",
            Convexity::Concave => "concave",
        })
    }
}

/// A wall `J = {i1, i2}` of a unimodular fan with its two apexes `i, i'`.
///
/// Vertices are ordered so that `λ(i1), λ(i2), λ(i)` is a positive lattice basis and
/// `λ(i1), λ(i2), λ(i')` a negative one; then `λ(i) + λ(i') = a1·λ(i1) + a2·λ(i2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub vertices: [usize; 2],
    pub apexes: [usize; 2],
    pub a: [BigInt; 2],
    /// `2 - a1 - a2`.
    pub curvature: BigInt,
    /// `det(λ(i1) - λ(i'), λ(i2) - λ(i'), λ(i) - λ(i'))`.
    pub convexity_det: BigInt,
    pub convexity: Convexity,
}

impl Wall {
    pub(super) fn compute(fan: &Fan3, wall: [usize; 2]) -> Result<Wall, FanError> {
        let sphere = fan.sphere();
        let (x, y) = sphere.apexes(wall[0], wall[1]).expect("wall of the sphere");
        let l = |k: usize| fan.ray(k);
        // keep i1 < i2 and choose which apex is i
        let (i1, i2) = (wall[0], wall[1]);
        let dx = det3(l(i1), l(i2), l(x));
        let dy = det3(l(i1), l(i2), l(y));
        let one = BigInt::one();
        let (i, ip) = if dx == one && dy == -&one {
            (x, y)
        } else if dy == one && dx == -&one {
            (y, x)
        } else {
            return Err(FanError::Orientation { wall, dets: [dx, dy] });
        };
        let a1 = det3(l(ip), l(i2), l(i));
        let a2 = det3(l(i1), l(ip), l(i));
        let lhs = l(i) + l(ip);
        let rhs = &l(i1).scale(&a1) + &l(i2).scale(&a2);
        if lhs != rhs {
            return Err(FanError::RelationMismatch(wall));
        }
        let curvature = BigInt::from(2) - &a1 - &a2;
        let convexity_det = convexity_det(l(i1), l(i2), l(i), l(ip));
        let convexity = if convexity_det.is_positive() {
            Convexity::Convex
        } else if convexity_det.is_negative() {
            Convexity::Concave
        } else {
            Convexity::Flat
        };
        Ok(Wall { vertices: [i1, i2], apexes: [i, ip], a: [a1, a2], curvature, convexity_det, convexity })
    }

    /// The wall as a sorted pair.
    pub fn key(&self) -> [usize; 2] {
        let [p, q] = self.vertices;
        if p < q { [p, q] } else { [q, p] }
    }

    /// Coefficient `a_s` at wall vertex `v`.
    pub fn coefficient_at(&self, v: usize) -> Option<&BigInt> {
        self.vertices.iter().position(|&x| x == v).map(|s| &self.a[s])
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

fn convexity_det(
    i1: &LatticeVector,
    i2: &LatticeVector,
    i: &LatticeVector,
    ip: &LatticeVector,
) -> BigInt {
    det3(&(i1 - ip), &(i2 - ip), &(i - ip))
}
