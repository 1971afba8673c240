mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::sample::{select, Index};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use toriclab::arith::{LatticeVector, Matrix3};
use toriclab::charfunc::{check_star_condition, coloring_to_charfunc, four_color, CharacteristicFunction, CharacteristicPair};
use toriclab::cohomology::{
    evaluate_volume, linear_relation, self_intersection_via_cone, signed_triple_intersection, square_via_apex,
    IntersectionTable, Polynomial,
};
use toriclab::combinatorics::SimplePolytope3;
use toriclab::cone::{analyze_classes, cone_membership, extremal_walls, phase_one, PhaseOne, WallClass};
use toriclab::cone::lp::{apply, apply_transpose};
use toriclab::corpus;
use toriclab::fan::{Fan3, UnimodularFan, DEFAULT_SEED};

fn fan_name() -> impl Strategy<Value = &'static str> {
    select(corpus::fan_names().collect::<Vec<_>>())
}

fn polytope_name() -> impl Strategy<Value = &'static str> {
    select(corpus::polytope_names().collect::<Vec<_>>())
}

fn unimodular(seed: u64, positive: bool) -> Matrix3 {
    random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), 4, positive)
}

fn permutation(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    p
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (k, &x) in p.iter().enumerate() {
        inv[x] = k;
    }
    inv
}

/// Relabels facets and vertices of a polytope.
fn relabel_polytope(p: &SimplePolytope3, seed: u64) -> SimplePolytope3 {
    let fp = permutation(p.facet_count(), seed);
    let vp = permutation(p.vertex_count(), seed ^ 0xABCD);
    let facets = fp.iter().map(|&f| p.facets()[f].iter().map(|&v| vp[v]).collect()).collect();
    SimplePolytope3::new(p.name(), facets).unwrap()
}

/// The fan whose ray `k` is ray `perm[k]` of `f`.
fn relabel_fan(f: &UnimodularFan, perm: &[usize]) -> UnimodularFan {
    let inv = inverse(perm);
    let rays = perm.iter().map(|&i| f.ray(i).clone()).collect();
    let cones = f.fan().cones().iter().map(|c| c.map(|i| inv[i])).collect();
    let support = f.support().map(|s| perm.iter().map(|&i| s[i].clone()).collect());
    UnimodularFan::new(Fan3::new("relabeled", rays, cones, support).unwrap(), DEFAULT_SEED).unwrap()
}

fn small_rational() -> impl Strategy<Value = Q> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, r)| frac(p, r))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0usize..6, 0..=3), small_rational()), 0..10).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (mono, coeff) in terms {
            p.add_term(mono, coeff);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn poly3_round_trip(name in polytope_name(), seed in any::<u64>()) {
        let p = relabel_polytope(&SimplePolytope3::parse(corpus::polytope(name).unwrap().text).unwrap(), seed);
        prop_assert_eq!(SimplePolytope3::parse(&p.to_poly3()).unwrap(), p);
    }

    #[test]
    fn fan3_round_trip(name in fan_name(), seed in any::<u64>()) {
        let f = smooth(name).fan().transformed(&unimodular(seed, false)).unwrap();
        prop_assert_eq!(Fan3::parse(&f.to_fan3()).unwrap(), f);
    }

    #[test]
    fn charfunc_round_trip(name in polytope_name(), seed in any::<u64>()) {
        let k = SimplePolytope3::parse(corpus::polytope(name).unwrap().text).unwrap().dual_sphere();
        let lambda = coloring_to_charfunc(&four_color(&k).unwrap()).transformed(&unimodular(seed, false));
        prop_assert_eq!(CharacteristicFunction::parse(&lambda.to_charfunc()).unwrap(), lambda);
    }

    #[test]
    fn polynomial_round_trip(p in polynomial()) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<Polynomial>().unwrap(), p);
    }

    #[test]
    fn facet_relabeling_invariance(name in polytope_name(), seed in any::<u64>()) {
        let p = SimplePolytope3::parse(corpus::polytope(name).unwrap().text).unwrap();
        let r = relabel_polytope(&p, seed);
        prop_assert_eq!(r.f_vector(), p.f_vector());
        prop_assert_eq!(r.face_histogram(), p.face_histogram());
        prop_assert_eq!(r.is_fullerene(), p.is_fullerene());
        let k = r.dual_sphere();
        prop_assert_eq!(k.betti_numbers(), p.dual_sphere().betti_numbers());
        let lambda = coloring_to_charfunc(&four_color(&k).unwrap());
        prop_assert!(check_star_condition(&k, &lambda).unwrap().is_empty());
    }

    #[test]
    fn quasitoric_tables_scale_with_determinant(name in polytope_name(), seed in any::<u64>()) {
        let k = SimplePolytope3::parse(corpus::polytope(name).unwrap().text).unwrap().dual_sphere();
        let lambda = coloring_to_charfunc(&four_color(&k).unwrap());
        let u = unimodular(seed, false);
        let pair = CharacteristicPair::new(k.clone(), lambda.clone()).unwrap();
        let moved = CharacteristicPair::new(k, lambda.transformed(&u)).unwrap();
        let base = IntersectionTable::for_pair(&pair);
        let scaled = IntersectionTable::for_pair(&moved);
        let d = u.det();
        for (mono, value) in base.entries() {
            prop_assert_eq!(scaled.get(mono[0], mono[1], mono[2]), value * &d);
        }
        prop_assert_eq!(base.entries().count(), scaled.entries().count());
    }

    #[test]
    fn unimodular_transform_invariance(name in fan_name(), seed in any::<u64>()) {
        let f = smooth(name);
        let g = UnimodularFan::new(f.fan().transformed(&unimodular(seed, false)).unwrap(), seed).unwrap();
        let data = |h: &UnimodularFan| -> Vec<_> { h.walls().iter().map(|w| (w.key(), w.a.clone(), w.curvature.clone())).collect() };
        prop_assert_eq!(data(&g), data(&f));
        prop_assert_eq!(IntersectionTable::for_fan(&g), IntersectionTable::for_fan(&f));
        let c = f.support().unwrap();
        prop_assert_eq!(evaluate_volume(&g, c).unwrap(), evaluate_volume(&f, c).unwrap());
    }

    #[test]
    fn relation_choice_invariance(name in fan_name(), mu in prop::array::uniform3(-5i64..=5)) {
        let f = smooth(name);
        let pair = f.characteristic_pair();
        let table = IntersectionTable::for_fan(&f);
        let rel = linear_relation(f.fan().rays(), &LatticeVector::new(mu[0], mu[1], mu[2]));
        for w in f.sphere().walls() {
            let total: BigInt = rel.coeffs.iter().zip(table.pairing(w[0], w[1])).map(|(a, b)| a * b).sum();
            prop_assert!(total.is_zero());
            prop_assert_eq!(square_via_apex(&pair, w[0], w[1], 0), square_via_apex(&pair, w[0], w[1], 1));
            prop_assert_eq!(square_via_apex(&pair, w[1], w[0], 0), square_via_apex(&pair, w[1], w[0], 1));
        }
        for t in f.sphere().triangles() {
            for r in 0..3 {
                let (i, j, k) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                prop_assert_eq!(self_intersection_via_cone(&pair, i, j, k), signed_triple_intersection(&pair, [i, i, i]));
            }
        }
    }

    #[test]
    fn random_support_volume(name in fan_name(), shifts in prop::collection::vec(-4i64..=4, 6)) {
        let f = smooth(name);
        let c: Vec<Q> = f.support().unwrap().iter().zip(&shifts).map(|(x, &s)| x + frac(s, 7)).collect();
        match evaluate_volume(&f, &c) {
            Ok(v) => prop_assert_eq!(v, polytope_volume(f.fan().rays(), &c)),
            Err(_) => prop_assert!(f.validate_support(&c).is_err()),
        }
    }

    #[test]
    fn lp_certificates_verify(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..=4),
        b in prop::collection::vec(-4i64..=4, 4),
    ) {
        let a: Vec<Vec<Q>> = rows.iter().map(|r| qv(r)).collect();
        let b = qv(&b[..a.len()]);
        match phase_one(&a, 5, &b) {
            PhaseOne::Feasible(x) => {
                prop_assert!(x.iter().all(|x| !x.is_negative()));
                prop_assert_eq!(apply(&a, &x), b);
            }
            PhaseOne::Infeasible(w) => {
                prop_assert!(apply_transpose(&a, 5, &w).iter().all(|x| !x.is_positive()));
                let bw: Q = b.iter().zip(&w).map(|(x, y)| x * y).sum();
                prop_assert!(bw.is_positive());
            }
        }
    }

    #[test]
    fn membership_matches_bruteforce(
        gens in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=5),
        x in prop::collection::vec(-3i64..=3, 3),
    ) {
        let gens: Vec<Vec<Q>> = gens.iter().map(|g| qv(g)).collect();
        let x = qv(&x);
        let m = cone_membership(&x, &gens);
        prop_assert!(m.verify(&x, &gens));
        prop_assert_eq!(m.is_feasible(), in_cone_bruteforce(&x, &gens));
    }

    #[test]
    fn extremality_ignores_positive_rescaling(name in fan_name(), scales in prop::collection::vec(1i64..=5, 12)) {
        let f = smooth(name);
        let a = extremal_walls(&f).unwrap();
        let scaled: Vec<WallClass> = a
            .classes
            .iter()
            .zip(scales.iter().cycle())
            .map(|(c, &s)| WallClass { wall: c.wall, pairing: c.pairing.iter().map(|x| x * s).collect() })
            .collect();
        let b = analyze_classes(scaled, f.ray_count(), None);
        prop_assert_eq!(b.extremal_walls().collect::<Vec<_>>(), a.extremal_walls().collect::<Vec<_>>());
        prop_assert_eq!(b.convexity.functional().is_some(), a.convexity.functional().is_some());
    }

    #[test]
    fn extremality_follows_ray_relabeling(name in fan_name(), seed in any::<u64>(), idx in any::<Index>()) {
        let f = smooth(name);
        let perm = permutation(f.ray_count(), seed);
        let inv = inverse(&perm);
        let g = relabel_fan(&f, &perm);
        let map = |w: [usize; 2]| {
            let (x, y) = (inv[w[0]], inv[w[1]]);
            [x.min(y), x.max(y)]
        };
        let expected: BTreeSet<[usize; 2]> = extremal_walls(&f).unwrap().extremal_walls().map(map).collect();
        let actual: BTreeSet<[usize; 2]> = extremal_walls(&g).unwrap().extremal_walls().collect();
        prop_assert_eq!(actual, expected);
        prop_assert_eq!(g.gauss_bonnet_sum(), f.gauss_bonnet_sum());
        let t = f.sphere().triangles()[idx.index(f.sphere().triangles().len())];
        let tg = t.map(|i| inv[i]);
        prop_assert_eq!(
            IntersectionTable::for_fan(&g).get(tg[0], tg[0], tg[1]),
            IntersectionTable::for_fan(&f).get(t[0], t[0], t[1])
        );
    }
}
