//! Characteristic functions over simple 3-polytopes.
//!
//! A characteristic function assigns a primitive vector `λ(i) ∈ Z^3` to every facet so
//! that the three vectors at each vertex form a lattice basis. Every simple 3-polytope
//! carries one: a proper 4-coloring of the facets, with colors replaced by
//! `e1, e2, e3, e1+e2+e3`, is enough since any three of those four vectors form a basis.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::{det3, LatticeVector, Matrix3};
use crate::combinatorics::{
    content_lines, header, parse_count, split_record, ParseError, SimplicialSphere2,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharFuncError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("λ({0}) = ({1}) is not primitive")]
    NonPrimitive(usize, LatticeVector),
    #[error("λ has {got} values but the sphere has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("condition (⋆) fails on {} triangle(s), first {:?} with det {}", .0.len(), .0[0].triangle, .0[0].det)]
    StarCondition(Vec<StarViolation>),
    #[error("internal error: exhaustive 4-coloring search failed on a {0}-vertex sphere")]
    ColoringFailed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    A,
    B,
    C,
    D,
}

impl Color {
    pub const ALL: [Color; 4] = [Color::A, Color::B, Color::C, Color::D];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `a ↦ e1`, `b ↦ e2`, `c ↦ e3`, `d ↦ e1 + e2 + e3`.
    pub fn vector(self) -> LatticeVector {
        match self {
            Color::A => LatticeVector::new(1, 0, 0),
            Color::B => LatticeVector::new(0, 1, 0),
            Color::C => LatticeVector::new(0, 0, 1),
            Color::D => LatticeVector::new(1, 1, 1),
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Color::A => 'a',
            Color::B => 'b',
            Color::C => 'c',
            Color::D => 'd',
        };
        write!(f, "{c}")
    }
}

/// A proper coloring of the vertices of a sphere (facets of the dual polytope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetColoring {
    colors: Vec<Color>,
}

impl FacetColoring {
    /// Checks properness against the walls of `sphere`.
    pub fn new(sphere: &SimplicialSphere2, colors: Vec<Color>) -> Option<Self> {
        if colors.len() != sphere.vertex_count() {
            return None;
        }
        let proper = sphere.walls().iter().all(|w| colors[w[0]] != colors[w[1]]);
        proper.then_some(FacetColoring { colors })
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn colors_used(&self) -> usize {
        let mut used = [false; 4];
        for c in &self.colors {
            used[c.index()] = true;
        }
        used.iter().filter(|u| **u).count()
    }
}

/// Proper 4-coloring of the 1-skeleton of `sphere` by deterministic DSATUR backtracking.
///
/// A color is only tried if it is at most one more than the largest color already in
/// use, so the first vertex always gets `a` and the first neighbour colored after it `b`.
pub fn four_color(sphere: &SimplicialSphere2) -> Result<FacetColoring, CharFuncError> {
    let m = sphere.vertex_count();
    let mut colors: Vec<Option<Color>> = vec![None; m];
    if !dsatur(sphere, &mut colors, 0) {
        return Err(CharFuncError::ColoringFailed(m));
    }
    let colors = colors.into_iter().map(Option::unwrap).collect();
    FacetColoring::new(sphere, colors).ok_or(CharFuncError::ColoringFailed(m))
}

fn dsatur(sphere: &SimplicialSphere2, colors: &mut [Option<Color>], max_used: usize) -> bool {
    let mut best: Option<(usize, usize, usize)> = None; // (saturation, degree, vertex)
    for v in 0..colors.len() {
        if colors[v].is_some() {
            continue;
        }
        let mut seen = [false; 4];
        for &u in sphere.link(v) {
            if let Some(c) = colors[u] {
                seen[c.index()] = true;
            }
        }
        let sat = seen.iter().filter(|s| **s).count();
        let deg = sphere.degree(v);
        let better = match best {
            None => true,
            Some((bs, bd, _)) => sat > bs || (sat == bs && deg > bd),
        };
        if better {
            best = Some((sat, deg, v));
        }
    }
    let Some((_, _, v)) = best else {
        return true;
    };
    let limit = (max_used + 1).min(4);
    for &c in &Color::ALL[..limit] {
        if sphere.link(v).iter().any(|&u| colors[u] == Some(c)) {
            continue;
        }
        colors[v] = Some(c);
        let used = max_used.max(c.index() + 1);
        if dsatur(sphere, colors, used) {
            return true;
        }
        colors[v] = None;
    }
    false
}

/// Values `λ(i)` of a characteristic function. Every value is primitive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicFunction {
    lambda: Vec<LatticeVector>,
}

impl CharacteristicFunction {
    pub fn new(lambda: Vec<LatticeVector>) -> Result<Self, CharFuncError> {
        if let Some((i, v)) = lambda.iter().enumerate().find(|(_, v)| !v.is_primitive()) {
            return Err(CharFuncError::NonPrimitive(i, v.clone()));
        }
        Ok(CharacteristicFunction { lambda })
    }

    /// Parses a CHARFUNC block: `lambda <m>` followed by `L <id>: <x> <y> <z>` lines.
    pub fn parse(text: &str) -> Result<Self, CharFuncError> {
        let mut lines = content_lines(text);
        let (no, count) = header(lines.next(), "lambda")?;
        let m = parse_count(no, count)?;
        let mut lambda = Vec::with_capacity(m);
        for expected in 0..m {
            let (no, line) = lines
                .next()
                .ok_or_else(|| ParseError::new(no, format!("expected {m} `L` lines")))?;
            let (id, rest) = split_record(no, line, "L")?;
            if id != Some(expected) {
                return Err(ParseError::new(no, format!("expected id {expected}")).into());
            }
            lambda.push(parse_vector(no, rest)?);
        }
        if let Some((no, _)) = lines.next() {
            return Err(ParseError::new(no, "trailing content after lambda block").into());
        }
        CharacteristicFunction::new(lambda)
    }

    pub fn to_charfunc(&self) -> String {
        let mut out = format!("lambda {}\n", self.lambda.len());
        for (i, v) in self.lambda.iter().enumerate() {
            let _ = writeln!(out, "L {i}: {v}");
        }
        out
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn values(&self) -> &[LatticeVector] {
        &self.lambda
    }

    pub fn value(&self, i: usize) -> &LatticeVector {
        &self.lambda[i]
    }

    /// `U·λ(i)` for every `i`.
    pub fn transformed(&self, u: &Matrix3) -> CharacteristicFunction {
        CharacteristicFunction { lambda: self.lambda.iter().map(|v| u.apply(v)).collect() }
    }
}

pub(crate) fn parse_vector(no: usize, text: &str) -> Result<LatticeVector, ParseError> {
    let coords = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<BigInt>()
                .map_err(|_| ParseError::new(no, format!("bad integer `{tok}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let coords: [BigInt; 3] = coords
        .try_into()
        .map_err(|_| ParseError::new(no, "expected exactly 3 coordinates"))?;
    Ok(LatticeVector(coords))
}

/// `λ` from a coloring: `a ↦ e1`, `b ↦ e2`, `c ↦ e3`, `d ↦ e1 + e2 + e3`.
pub fn coloring_to_charfunc(coloring: &FacetColoring) -> CharacteristicFunction {
    CharacteristicFunction { lambda: coloring.colors.iter().map(|c| c.vector()).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarViolation {
    /// Positively oriented triangle.
    pub triangle: [usize; 3],
    pub det: BigInt,
}

/// Triangles `(i, j, k)` of `sphere` (positively oriented) where
/// `det(λ(i), λ(j), λ(k)) ≠ ±1`. Empty means condition (⋆) holds.
pub fn check_star_condition(
    sphere: &SimplicialSphere2,
    lambda: &CharacteristicFunction,
) -> Result<Vec<StarViolation>, CharFuncError> {
    if lambda.len() != sphere.vertex_count() {
        return Err(CharFuncError::SizeMismatch {
            expected: sphere.vertex_count(),
            got: lambda.len(),
        });
    }
    Ok(sphere
        .triangles()
        .iter()
        .filter_map(|t| {
            let det = det3(lambda.value(t[0]), lambda.value(t[1]), lambda.value(t[2]));
            (!det.abs().is_one()).then_some(StarViolation { triangle: *t, det })
        })
        .collect())
}

/// A simplicial sphere together with a characteristic function satisfying (⋆).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPair {
    sphere: SimplicialSphere2,
    lambda: CharacteristicFunction,
}

impl CharacteristicPair {
    pub fn new(
        sphere: SimplicialSphere2,
        lambda: CharacteristicFunction,
    ) -> Result<Self, CharFuncError> {
        let violations = check_star_condition(&sphere, &lambda)?;
        if !violations.is_empty() {
            return Err(CharFuncError::StarCondition(violations));
        }
        Ok(CharacteristicPair { sphere, lambda })
    }

    pub fn sphere(&self) -> &SimplicialSphere2 {
        &self.sphere
    }

    pub fn lambda(&self) -> &CharacteristicFunction {
        &self.lambda
    }

    /// Orientation-corrected determinant at a triangle: `det(λ(i), λ(j), λ(k))` for
    /// `(i, j, k)` positively oriented. `0` for non-triangles.
    pub fn vertex_sign(&self, i: usize, j: usize, k: usize) -> i8 {
        let o = self.sphere.orientation(i, j, k);
        if o == 0 {
            return 0;
        }
        let d = det3(self.lambda.value(i), self.lambda.value(j), self.lambda.value(k));
        o * crate::arith::sign(&d)
    }
}
