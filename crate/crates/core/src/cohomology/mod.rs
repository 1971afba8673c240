//! Top-degree intersection numbers in `H^*(X) = Z[K]/Θ` and the volume polynomial.
//!
//! The ring itself is never built. Integrals of degree-3 monomials are computed by
//! eliminating repeated variables with linear relations `Σ_t ⟨μ, λ(t)⟩ v_t = 0`, and
//! squarefree monomials are read off the sphere: `∫ v_i v_j v_k` is the sign of the
//! vertex `{i, j, k}` (`+1` for every cone of a fan) or `0` if it is not a triangle.

mod intersection;
mod volume;

pub use intersection::{
    self_intersection_via_cone, signed_triple_intersection, square_via_apex, triple_intersection,
    IntersectionTable, Monomial,
};
pub use volume::{edge_functional, evaluate_volume, Polynomial, VolumePolynomial};

use num_bigint::BigInt;

use crate::arith::{Covector, LatticeVector};
use crate::combinatorics::SimplicialSphere2;
use crate::fan::UnimodularFan;

/// The linear form `Σ_i ⟨μ, λ(i)⟩ v_i`, which vanishes in `H^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelation {
    pub mu: Covector,
    pub coeffs: Vec<BigInt>,
}

pub fn linear_relation(lambda: &[LatticeVector], mu: &Covector) -> LinearRelation {
    LinearRelation { mu: mu.clone(), coeffs: lambda.iter().map(|v| mu.dot(v)).collect() }
}

/// `(b0, b2, b4, b6)`: the h-vector of the sphere.
pub fn betti_numbers(sphere: &SimplicialSphere2) -> [i64; 4] {
    sphere.betti_numbers()
}

/// `∫ c1·c2 = Σ_J Σ_t ∫ v_J v_t` with `c2 = Σ_J v_J` and `c1 = Σ_t v_t`.
pub fn chern_number_c1c2(fan: &UnimodularFan, table: &IntersectionTable) -> BigInt {
    let m = fan.ray_count();
    fan.walls()
        .iter()
        .map(|w| {
            let [p, q] = w.key();
            (0..m).map(|t| table.get(p, q, t)).sum::<BigInt>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::fan::DEFAULT_SEED;

    #[test]
    fn relations_of_projective_space_and_cube() {
        let cp3 = UnimodularFan::parse(corpus::fan("cp3").unwrap().text, DEFAULT_SEED).unwrap();
        let r = linear_relation(cp3.fan().rays(), &LatticeVector::basis(0));
        assert_eq!(r.coeffs, [1, 0, 0, -1].map(BigInt::from));
        let cube = UnimodularFan::parse(corpus::fan("cube").unwrap().text, DEFAULT_SEED).unwrap();
        let r = linear_relation(cube.fan().rays(), &LatticeVector::basis(0));
        assert_eq!(r.coeffs, [1, -1, 0, 0, 0, 0].map(BigInt::from));
        let r = linear_relation(cube.fan().rays(), &LatticeVector::zero());
        assert!(r.coeffs.iter().all(|c| *c == BigInt::from(0)));
    }

    #[test]
    fn betti_numbers_of_small_spheres() {
        let cp3 = UnimodularFan::parse(corpus::fan("cp3").unwrap().text, DEFAULT_SEED).unwrap();
        assert_eq!(betti_numbers(cp3.sphere()), [1, 1, 1, 1]);
        let cube = UnimodularFan::parse(corpus::fan("cube").unwrap().text, DEFAULT_SEED).unwrap();
        assert_eq!(betti_numbers(cube.sphere()), [1, 3, 3, 1]);
    }

    #[test]
    fn chern_number_is_24() {
        for name in corpus::fan_names() {
            let f = UnimodularFan::parse(corpus::fan(name).unwrap().text, DEFAULT_SEED).unwrap();
            let table = IntersectionTable::for_fan(&f);
            assert_eq!(chern_number_c1c2(&f, &table), BigInt::from(24), "{name}");
        }
    }
}
