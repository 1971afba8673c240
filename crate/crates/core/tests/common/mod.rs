//! Independent oracles. Nothing here calls into the cohomology or cone modules; they
//! are recomputed from scratch with plain exact linear algebra.

#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use toriclab::arith::{BigRational, LatticeVector, Matrix3};
use toriclab::combinatorics::SimplicialSphere2;
use toriclab::corpus;
use toriclab::fan::{UnimodularFan, DEFAULT_SEED};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn qv(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn frac(p: i64, r: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(r))
}

pub fn smooth(name: &str) -> UnimodularFan {
    UnimodularFan::parse(corpus::fan(name).unwrap().text, DEFAULT_SEED).unwrap()
}

pub fn corpus_fans() -> Vec<(&'static str, UnimodularFan)> {
    corpus::fan_names().map(|n| (n, smooth(n))).collect()
}

fn to_q3(v: &LatticeVector) -> [Q; 3] {
    [0, 1, 2].map(|k| Q::from_integer(v.0[k].clone()))
}

fn det3q(a: &[Q; 3], b: &[Q; 3], c: &[Q; 3]) -> Q {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn sub3(a: &[Q; 3], b: &[Q; 3]) -> [Q; 3] {
    [0, 1, 2].map(|k| &a[k] - &b[k])
}

fn dot3(a: &[Q; 3], b: &[Q; 3]) -> Q {
    (0..3).map(|k| &a[k] * &b[k]).sum()
}

/// Vertices of `{x : ⟨n_i, x⟩ ≤ c_i}` by solving every triple of equalities.
pub fn polytope_vertices(normals: &[LatticeVector], c: &[Q]) -> Vec<[Q; 3]> {
    let n: Vec<[Q; 3]> = normals.iter().map(to_q3).collect();
    let m = n.len();
    let mut out: Vec<[Q; 3]> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for d in b + 1..m {
                let det = det3q(&n[a], &n[b], &n[d]);
                if det.is_zero() {
                    continue;
                }
                // Cramer on the rows n_a, n_b, n_d
                let cols = |k: usize| [n[a][k].clone(), n[b][k].clone(), n[d][k].clone()];
                let rhs = [c[a].clone(), c[b].clone(), c[d].clone()];
                let (c0, c1, c2) = (cols(0), cols(1), cols(2));
                let p = [
                    det3q(&rhs, &c1, &c2) / &det,
                    det3q(&c0, &rhs, &c2) / &det,
                    det3q(&c0, &c1, &rhs) / &det,
                ];
                if n.iter().zip(c).all(|(ni, ci)| dot3(ni, &p) <= *ci) && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Volume of `{x : ⟨n_i, x⟩ ≤ c_i}` (assumed bounded and full-dimensional): every facet
/// polygon is sorted by angle around one of its vertices, fanned into triangles, and
/// coned off to the centroid of all vertices.
pub fn polytope_volume(normals: &[LatticeVector], c: &[Q]) -> Q {
    let verts = polytope_vertices(normals, c);
    let count = q(verts.len() as i64);
    let g: [Q; 3] = [0, 1, 2].map(|k| verts.iter().map(|v| v[k].clone()).sum::<Q>() / &count);
    let mut total = Q::zero();
    for (ni, ci) in normals.iter().zip(c) {
        let n = to_q3(ni);
        let on: Vec<&[Q; 3]> = verts.iter().filter(|v| dot3(&n, v) == *ci).collect();
        if on.len() < 3 {
            continue;
        }
        let p0 = on[0];
        let mut rest: Vec<&[Q; 3]> = on[1..].to_vec();
        rest.sort_by(|x, y| {
            let d = det3q(&n, &sub3(x, p0), &sub3(y, p0));
            if d.is_positive() {
                Ordering::Less
            } else if d.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        });
        for w in rest.windows(2) {
            let t = det3q(&sub3(p0, &g), &sub3(w[0], &g), &sub3(w[1], &g));
            total += t.abs();
        }
    }
    total / q(6)
}

/// `∂_i ∂_j ∂_k vol` at `c` as a third forward difference with step `h`. Exact when the
/// whole stencil stays in the chamber, since the volume is a cubic polynomial there.
pub fn volume_third_difference(fan: &UnimodularFan, c: &[Q], ijk: [usize; 3], h: &Q) -> Q {
    let rays = fan.fan().rays();
    let mut acc = Q::zero();
    for mask in 0u8..8 {
        let mut point = c.to_vec();
        let mut sign = Q::one();
        for (bit, &v) in ijk.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                point[v] += h;
            } else {
                sign = -sign;
            }
        }
        acc += sign * polytope_volume(rays, &point);
    }
    acc / (h * h * h)
}

/// Unique solution of `Σ r_t cols_t = target` when `cols` are linearly independent and
/// `target` lies in their span.
pub fn solve_independent(cols: &[&Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let rows = target.len();
    let n = cols.len();
    // augmented matrix rows × (n + 1)
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).chain(std::iter::once(target[r].clone())).collect())
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            return None; // dependent columns
        };
        a.swap(pivot_row, p);
        let inv = Q::one() / &a[pivot_row][col];
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let prow = a[pivot_row].clone();
                for (x, y) in a[r].iter_mut().zip(prow) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..rows).any(|r| !a[r][n].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| a[r][n].clone()).collect())
}

/// Carathéodory: `x ∈ cone(gens)` iff `x` is a non-negative combination of some linearly
/// independent subset. Enumerates every subset of size at most `x.len()`.
pub fn in_cone_bruteforce(x: &[Q], gens: &[Vec<Q>]) -> bool {
    if x.iter().all(Zero::is_zero) {
        return true;
    }
    let n = gens.len();
    assert!(n <= 16, "brute force limited to 16 generators");
    for mask in 1u32..(1 << n) {
        if mask.count_ones() as usize > x.len() {
            continue;
        }
        let cols: Vec<&Vec<Q>> = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| &gens[k]).collect();
        if let Some(r) = solve_independent(&cols, x) {
            if r.iter().all(|v| !v.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Whether some non-zero non-negative combination of `gens` vanishes, i.e. whether no
/// functional is positive on every generator (Gordan).
pub fn positively_dependent_bruteforce(gens: &[Vec<Q>]) -> bool {
    gens.iter().any(|g| g.iter().all(Zero::is_zero))
        || gens.iter().any(|g| {
            let neg: Vec<Q> = g.iter().map(|v| -v).collect();
            in_cone_bruteforce(&neg, gens)
        })
}

/// Whether the 1-skeleton of `sphere` admits a proper 3-coloring (exhaustive).
pub fn three_colorable_bruteforce(sphere: &SimplicialSphere2) -> bool {
    let m = sphere.vertex_count();
    let total = 3usize.pow(m as u32);
    (0..total).any(|mut code| {
        let mut colors = vec![0usize; m];
        for c in colors.iter_mut() {
            *c = code % 3;
            code /= 3;
        }
        sphere.walls().iter().all(|w| colors[w[0]] != colors[w[1]])
    })
}

/// Uniform-ish random matrix with entries in `[-bound, bound]` and determinant `±1`,
/// by rejection.
pub fn random_unimodular<R: Rng>(rng: &mut R, bound: i64, positive: bool) -> Matrix3 {
    loop {
        let mut rows = [[0i64; 3]; 3];
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x = rng.random_range(-bound..=bound);
            }
        }
        let u = Matrix3::from_i64(rows);
        let d = u.det();
        if d == BigInt::one() || (!positive && d == -BigInt::one()) {
            return u;
        }
    }
}

pub fn ints_to_q(v: &[BigInt]) -> Vec<Q> {
    v.iter().cloned().map(Q::from_integer).collect()
}
