//! Exact phase-1 simplex over `Q` with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::arith::BigRational;

/// Outcome of deciding `∃ x ≥ 0 : A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseOne {
    /// A non-negative solution.
    Feasible(Vec<BigRational>),
    /// `w` with `Aᵀ w ≤ 0` and `bᵀ w > 0`.
    Infeasible(Vec<BigRational>),
}

/// Decides `∃ x ≥ 0 : A x = b` for `A` with `rows.len()` rows and `n` columns by
/// minimizing the sum of artificial variables. Bland's rule (lowest index enters, ties
/// in the ratio test broken by lowest basic index) rules out cycling.
pub fn phase_one(rows: &[Vec<BigRational>], n: usize, b: &[BigRational]) -> PhaseOne {
    let d = rows.len();
    assert_eq!(b.len(), d, "right-hand side length");
    let width = n + d + 1;
    let rhs = n + d;
    let flip: Vec<bool> = b.iter().map(|x| x.is_negative()).collect();

    let mut t: Vec<Vec<BigRational>> = (0..d)
        .map(|k| {
            assert_eq!(rows[k].len(), n, "row {k} length");
            let mut row = vec![BigRational::zero(); width];
            for j in 0..n {
                row[j] = if flip[k] { -&rows[k][j] } else { rows[k][j].clone() };
            }
            row[n + k] = BigRational::one();
            row[rhs] = if flip[k] { -&b[k] } else { b[k].clone() };
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + d).collect();
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in (0..n).chain(std::iter::once(rhs)) {
            obj[j] -= &row[j];
        }
    }

    while let Some(enter) = (0..n + d).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for k in 0..d {
            if !t[k][enter].is_positive() {
                continue;
            }
            let ratio = &t[k][rhs] / &t[k][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[k] < basis[*l]),
            };
            if better {
                leave = Some((k, ratio));
            }
        }
        let (p, _) = leave.expect("phase-1 objective is bounded below");
        let pivot = t[p][enter].clone();
        for x in t[p].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[p].clone();
        for (k, row) in t.iter_mut().enumerate() {
            if k != p && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        let f = obj[enter].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            *x -= &f * y;
        }
        basis[p] = enter;
    }

    if obj[rhs].is_zero() {
        let mut x = vec![BigRational::zero(); n];
        for (k, &j) in basis.iter().enumerate() {
            if j < n {
                x[j] = t[k][rhs].clone();
            }
        }
        PhaseOne::Feasible(x)
    } else {
        // dual values of the sign-normalized rows, read off the artificial columns
        let w = (0..d)
            .map(|k| {
                let wk = BigRational::one() - &obj[n + k];
                if flip[k] { -wk } else { wk }
            })
            .collect();
        PhaseOne::Infeasible(w)
    }
}

/// `A x`.
pub fn apply(rows: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// `Aᵀ w`.
pub fn apply_transpose(rows: &[Vec<BigRational>], n: usize, w: &[BigRational]) -> Vec<BigRational> {
    (0..n).map(|j| rows.iter().zip(w).map(|(r, wk)| &r[j] * wk).sum()).collect()
}
