use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{dual_basis, Covector};
use crate::charfunc::CharacteristicPair;
use crate::fan::UnimodularFan;

/// A degree-3 monomial `v_i v_j v_k` as a sorted multiset of indices.
pub type Monomial = [usize; 3];

fn sorted(mut t: [usize; 3]) -> Monomial {
    t.sort_unstable();
    t
}

/// Covector `μ` with `⟨μ, λ(i)⟩ = 1` and `⟨μ, λ(j)⟩ = ⟨μ, λ(k)⟩ = 0`.
fn dual_of(pair: &CharacteristicPair, i: usize, j: usize, k: usize) -> Covector {
    let l = pair.lambda();
    let [mu, _, _] = dual_basis(l.value(i), l.value(j), l.value(k))
        .expect("(⋆) makes every triangle a lattice basis");
    mu
}

/// `∫ v_i² v_j` for `i ≠ j`, eliminating `v_i` with the relation of the dual covector of
/// `λ(i)` in the basis `λ(i), λ(j), λ(apex)`.
fn square_times(pair: &CharacteristicPair, i: usize, j: usize, apex_choice: usize) -> BigInt {
    let sphere = pair.sphere();
    let Some((x, y)) = sphere.apexes(i, j) else {
        return BigInt::zero();
    };
    let (p, q) = if apex_choice == 0 { (x, y) } else { (y, x) };
    let mu = dual_of(pair, i, j, p);
    // v_i v_j · v_t survives only for t ∈ {p, q}; ⟨μ, λ(p)⟩ = ⟨μ, λ(j)⟩ = 0
    -mu.dot(pair.lambda().value(q)) * BigInt::from(pair.vertex_sign(i, j, q))
}

/// `∫ v_i³` eliminating `v_i` with the dual covector of `λ(i)` in the cone `(i, j, k)`.
fn cube_via(pair: &CharacteristicPair, i: usize, j: usize, k: usize) -> BigInt {
    let mu = dual_of(pair, i, j, k);
    let lambda = pair.lambda();
    pair.sphere()
        .link(i)
        .iter()
        .map(|&t| -mu.dot(lambda.value(t)) * square_times(pair, i, t, 0))
        .sum()
}

fn first_triangle_at(pair: &CharacteristicPair, i: usize) -> (usize, usize) {
    let t = pair
        .sphere()
        .triangles()
        .iter()
        .find(|t| t.contains(&i))
        .expect("every vertex lies in a triangle");
    let others: Vec<usize> = t.iter().copied().filter(|&x| x != i).collect();
    (others[0], others[1])
}

/// `∫ v_i v_j v_k` over the (quasi)toric manifold of a characteristic pair, with the
/// orientation induced by the sphere: a positively oriented triangle `(i, j, k)`
/// integrates to `det(λ(i), λ(j), λ(k)) = ±1`.
pub fn signed_triple_intersection(pair: &CharacteristicPair, monomial: Monomial) -> BigInt {
    let [a, b, c] = sorted(monomial);
    if a != b && b != c {
        BigInt::from(pair.vertex_sign(a, b, c))
    } else if a == b && b == c {
        let (j, k) = first_triangle_at(pair, a);
        cube_via(pair, a, j, k)
    } else {
        let (i, j) = if a == b { (a, c) } else { (b, a) };
        if !pair.sphere().contains_wall(i, j) {
            return BigInt::zero();
        }
        square_times(pair, i, j, 0)
    }
}

/// `∫ v_i v_j v_k` on a smooth complete toric variety by the closed-form case analysis
/// of the wall relation: distinct indices give cone membership, `∫ v_i² v_j = -a_s`
/// where `s` is the position of `i` in the wall `{i, j}`, and `∫ v_i³` reduces to the
/// previous case through the dual covector of `λ(i)` in the first cone containing `i`.
pub fn triple_intersection(fan: &UnimodularFan, monomial: Monomial) -> BigInt {
    let [a, b, c] = sorted(monomial);
    let sphere = fan.sphere();
    let square = |i: usize, j: usize| -> BigInt {
        fan.wall(i, j)
            .and_then(|w| w.coefficient_at(i))
            .map_or_else(BigInt::zero, |a| -a)
    };
    if a != b && b != c {
        BigInt::from(sphere.contains_triangle(a, b, c) as i64)
    } else if a == b && b == c {
        let t = sphere.triangles().iter().find(|t| t.contains(&a)).unwrap();
        let o: Vec<usize> = t.iter().copied().filter(|&x| x != a).collect();
        let [mu, _, _] = dual_basis(fan.ray(a), fan.ray(o[0]), fan.ray(o[1])).unwrap();
        sphere.link(a).iter().map(|&t| -mu.dot(fan.ray(t)) * square(a, t)).sum()
    } else {
        let (i, j) = if a == b { (a, c) } else { (b, a) };
        square(i, j)
    }
}

/// All non-zero top intersection numbers, keyed by sorted monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionTable {
    m: usize,
    values: BTreeMap<Monomial, BigInt>,
}

impl IntersectionTable {
    /// Table of a characteristic pair via relation elimination. Only monomials whose
    /// support is a face of the sphere can be non-zero, so only those are visited.
    pub fn for_pair(pair: &CharacteristicPair) -> Self {
        let sphere = pair.sphere();
        let m = sphere.vertex_count();
        let mut values = BTreeMap::new();
        let mut put = |key: Monomial, v: BigInt| {
            if !v.is_zero() {
                values.insert(key, v);
            }
        };
        for t in sphere.triangles() {
            let key = sorted(*t);
            put(key, signed_triple_intersection(pair, key));
        }
        for w in sphere.walls() {
            let [p, q] = *w;
            put([p, p, q], signed_triple_intersection(pair, [p, p, q]));
            put([p, q, q], signed_triple_intersection(pair, [p, q, q]));
        }
        for i in 0..m {
            put([i, i, i], signed_triple_intersection(pair, [i, i, i]));
        }
        IntersectionTable { m, values }
    }

    pub fn for_fan(fan: &UnimodularFan) -> Self {
        Self::for_pair(&fan.characteristic_pair())
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> BigInt {
        self.values.get(&sorted([i, j, k])).cloned().unwrap_or_default()
    }

    /// Non-zero entries in lexicographic order of the monomial.
    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.values.iter()
    }

    /// `(∫ v_J v_t)_t`, the pairing vector of the wall class `v_J = v_p v_q`.
    pub fn pairing(&self, p: usize, q: usize) -> Vec<BigInt> {
        (0..self.m).map(|t| self.get(p, q, t)).collect()
    }
}

/// `∫ v_i³` computed through the cone `(i, j, k)`; any cone containing `i` gives the
/// same value.
pub fn self_intersection_via_cone(pair: &CharacteristicPair, i: usize, j: usize, k: usize) -> BigInt {
    cube_via(pair, i, j, k)
}

/// `∫ v_i² v_j` computed through either apex of the wall `{i, j}` (`apex` is 0 or 1).
pub fn square_via_apex(pair: &CharacteristicPair, i: usize, j: usize, apex: usize) -> BigInt {
    square_times(pair, i, j, apex)
}
