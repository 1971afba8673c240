//! Complete simplicial fans in `Z^3`.
//!
//! [`Fan3`] is a validated simplicial fan whose maximal cones form a simplicial 2-sphere.
//! [`UnimodularFan`] additionally certifies unimodularity and completeness and carries
//! the wall table (coefficients `a1, a2`, curvature, convexity) that everything in
//! [`crate::cohomology`] and [`crate::cone`] is built on.

mod completeness;
mod wall;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use completeness::{check_complete, CompletenessCertificate, IncompleteFan, DEFAULT_SEED};
pub use wall::{Convexity, Wall};

use crate::arith::{det3, parse_rational, rational_from_int, BigRational, LatticeVector, Matrix3};
use crate::charfunc::{parse_vector, CharacteristicFunction, CharacteristicPair};
use crate::combinatorics::{
    content_lines, header, parse_count, split_record, IndexSet, ParseError, SimplicialSphere2,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("ray {ray} = ({vector}) is not primitive")]
    NonPrimitiveRay { ray: usize, vector: LatticeVector },
    #[error("cone {cone} refers to ray {index} but there are only {m} rays")]
    ConeIndex { cone: usize, index: usize, m: usize },
    #[error("cone {} is degenerate (det = 0)", IndexSet(.0))]
    DegenerateCone([usize; 3]),
    #[error("support has {got} parameters, expected {expected}")]
    SupportLength { expected: usize, got: usize },
    #[error("incomplete fan: {0}")]
    Incomplete(#[from] IncompleteFan),
    #[error("fan is not unimodular: {} cone(s) with |det| != 1, first {} with det {}",
        .0.len(), IndexSet(&.0[0].cone), .0[0].det)]
    NotUnimodular(Vec<ConeViolation>),
    #[error("wall {} admits no positive-basis ordering (dets {} and {})", IndexSet(.wall), .dets[0], .dets[1])]
    Orientation { wall: [usize; 2], dets: [BigInt; 2] },
    #[error("wall relation fails at wall {}", IndexSet(.0))]
    RelationMismatch([usize; 2]),
    #[error("support parameters invalid: {} wall(s) with non-positive edge functional, first {} = {}",
        .0.len(), IndexSet(&.0[0].0), .0[0].1)]
    SupportInvalid(Vec<([usize; 2], BigRational)>),
    #[error("no wall of positive curvature")]
    NoPositiveCurvature,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeViolation {
    /// Positively oriented cone.
    pub cone: [usize; 3],
    pub det: BigInt,
}

/// A simplicial fan in `Z^3`: primitive rays and non-degenerate maximal cones forming a
/// simplicial 2-sphere, optionally with support parameters `c̃_i` of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan3 {
    name: String,
    rays: Vec<LatticeVector>,
    cones: Vec<[usize; 3]>,
    sphere: SimplicialSphere2,
    support: Option<Vec<BigRational>>,
}

impl Fan3 {
    pub fn new(
        name: impl Into<String>,
        rays: Vec<LatticeVector>,
        cones: Vec<[usize; 3]>,
        support: Option<Vec<BigRational>>,
    ) -> Result<Self, FanError> {
        let m = rays.len();
        if let Some((ray, v)) = rays.iter().enumerate().find(|(_, v)| !v.is_primitive()) {
            return Err(FanError::NonPrimitiveRay { ray, vector: v.clone() });
        }
        let mut oriented = Vec::with_capacity(cones.len());
        for (k, c) in cones.iter().enumerate() {
            if let Some(&index) = c.iter().find(|&&i| i >= m) {
                return Err(FanError::ConeIndex { cone: k, index, m });
            }
            let d = if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
                BigInt::zero()
            } else {
                det3(&rays[c[0]], &rays[c[1]], &rays[c[2]])
            };
            if d.is_zero() {
                return Err(FanError::DegenerateCone(*c));
            }
            oriented.push(if d.is_positive() { *c } else { [c[0], c[2], c[1]] });
        }
        if let Some(s) = &support {
            if s.len() != m {
                return Err(FanError::SupportLength { expected: m, got: s.len() });
            }
        }
        let sphere = SimplicialSphere2::new(m, &oriented)
            .map_err(|e| FanError::Incomplete(IncompleteFan::NotASphere(e)))?;
        Ok(Fan3 { name: name.into(), rays, cones, sphere, support })
    }

    /// Parses a FAN3 document.
    pub fn parse(text: &str) -> Result<Self, FanError> {
        let mut lines = content_lines(text);
        let (_, name) = header(lines.next(), "fan3")?;
        let (no, count) = header(lines.next(), "rays")?;
        let m = parse_count(no, count)?;
        let mut rays = Vec::with_capacity(m);
        let mut last = no;
        for expected in 0..m {
            let (no, line) = lines
                .next()
                .ok_or_else(|| ParseError::new(last, format!("expected {m} ray lines")))?;
            last = no;
            let (id, rest) = split_record(no, line, "R")?;
            if id != Some(expected) {
                return Err(ParseError::new(no, format!("expected ray id {expected}")).into());
            }
            rays.push(parse_vector(no, rest)?);
        }
        let (no, count) = header(lines.next(), "cones")?;
        let f = parse_count(no, count)?;
        let mut cones = Vec::with_capacity(f);
        last = no;
        for _ in 0..f {
            let (no, line) = lines
                .next()
                .ok_or_else(|| ParseError::new(last, format!("expected {f} cone lines")))?;
            last = no;
            let (id, rest) = split_record(no, line, "C")?;
            if id.is_some() {
                return Err(ParseError::new(no, "cone lines have the form `C: i j k`").into());
            }
            let idx = rest
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| ParseError::new(no, format!("bad ray index `{tok}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cone: [usize; 3] = idx
                .try_into()
                .map_err(|_| ParseError::new(no, "a cone has exactly 3 rays"))?;
            cones.push(cone);
        }
        let mut support = None;
        if let Some((no, line)) = lines.next() {
            let (id, rest) = split_record(no, line, "support")?;
            if id.is_some() {
                return Err(ParseError::new(no, "expected `support: c1 ... cm`").into());
            }
            support = Some(parse_support_list(no, rest.split_whitespace())?);
        }
        if let Some((no, _)) = lines.next() {
            return Err(ParseError::new(no, "trailing content after fan").into());
        }
        Fan3::new(name, rays, cones, support)
    }

    pub fn to_fan3(&self) -> String {
        let mut out = format!("fan3 {}\nrays {}\n", self.name, self.rays.len());
        for (i, r) in self.rays.iter().enumerate() {
            let _ = writeln!(out, "R {i}: {r}");
        }
        let _ = writeln!(out, "cones {}", self.cones.len());
        for c in &self.cones {
            let _ = writeln!(out, "C: {} {} {}", c[0], c[1], c[2]);
        }
        if let Some(s) = &self.support {
            out.push_str("support:");
            for c in s {
                let _ = write!(out, " {c}");
            }
            out.push('\n');
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    /// Maximal cones as given in the input.
    pub fn cones(&self) -> &[[usize; 3]] {
        &self.cones
    }

    /// The cone complex as an oriented sphere. The first cone is oriented so that its
    /// determinant is positive; for a complete fan this holds for every cone.
    pub fn sphere(&self) -> &SimplicialSphere2 {
        &self.sphere
    }

    pub fn support(&self) -> Option<&[BigRational]> {
        self.support.as_deref()
    }

    pub fn with_support(&self, support: Option<Vec<BigRational>>) -> Result<Fan3, FanError> {
        Fan3::new(self.name.clone(), self.rays.clone(), self.cones.clone(), support)
    }

    /// Cones (positively oriented) with `|det| != 1`.
    pub fn check_unimodular(&self) -> Vec<ConeViolation> {
        self.sphere
            .triangles()
            .iter()
            .filter_map(|t| {
                let det = det3(&self.rays[t[0]], &self.rays[t[1]], &self.rays[t[2]]);
                (!det.abs().is_one()).then_some(ConeViolation { cone: *t, det })
            })
            .collect()
    }

    pub fn check_complete(&self, seed: u64) -> Result<CompletenessCertificate, IncompleteFan> {
        check_complete(&self.rays, &self.cones, seed)
    }

    /// All rays mapped by `u`; cones and support parameters are unchanged.
    pub fn transformed(&self, u: &Matrix3) -> Result<Fan3, FanError> {
        let rays = self.rays.iter().map(|r| u.apply(r)).collect();
        Fan3::new(self.name.clone(), rays, self.cones.clone(), self.support.clone())
    }
}

pub(crate) fn parse_support_list<'a>(
    no: usize,
    tokens: impl Iterator<Item = &'a str>,
) -> Result<Vec<BigRational>, ParseError> {
    tokens
        .map(|tok| {
            parse_rational(tok).ok_or_else(|| ParseError::new(no, format!("bad rational `{tok}`")))
        })
        .collect()
}

/// Parses a comma- or whitespace-separated list of rationals (`p/q` or integers).
pub fn parse_support(text: &str) -> Result<Vec<BigRational>, ParseError> {
    parse_support_list(1, text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()))
}

/// A complete unimodular fan with its wall table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularFan {
    fan: Fan3,
    walls: Vec<Wall>,
    certificate: CompletenessCertificate,
}

impl UnimodularFan {
    /// Certifies unimodularity and completeness, computes every wall, and checks that
    /// the support parameters (if any) give positive edge functionals.
    pub fn new(fan: Fan3, seed: u64) -> Result<Self, FanError> {
        let violations = fan.check_unimodular();
        if !violations.is_empty() {
            return Err(FanError::NotUnimodular(violations));
        }
        let certificate = fan.check_complete(seed)?;
        let walls = fan
            .sphere
            .walls()
            .iter()
            .map(|w| Wall::compute(&fan, *w))
            .collect::<Result<Vec<_>, _>>()?;
        let smooth = UnimodularFan { fan, walls, certificate };
        if let Some(c) = smooth.fan.support() {
            smooth.validate_support(c)?;
        }
        Ok(smooth)
    }

    pub fn parse(text: &str, seed: u64) -> Result<Self, FanError> {
        UnimodularFan::new(Fan3::parse(text)?, seed)
    }

    pub fn fan(&self) -> &Fan3 {
        &self.fan
    }

    pub fn sphere(&self) -> &SimplicialSphere2 {
        &self.fan.sphere
    }

    pub fn ray_count(&self) -> usize {
        self.fan.ray_count()
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        self.fan.ray(i)
    }

    pub fn support(&self) -> Option<&[BigRational]> {
        self.fan.support()
    }

    pub fn certificate(&self) -> &CompletenessCertificate {
        &self.certificate
    }

    /// Walls in lexicographic order of their sorted vertex pair.
    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// Wall data for `{i, j}` (either order).
    pub fn wall(&self, i: usize, j: usize) -> Option<&Wall> {
        let key = if i < j { [i, j] } else { [j, i] };
        self.walls
            .binary_search_by(|w| w.key().cmp(&key))
            .ok()
            .map(|k| &self.walls[k])
    }

    pub fn wall_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { [i, j] } else { [j, i] };
        self.walls.binary_search_by(|w| w.key().cmp(&key)).ok()
    }

    /// `Σ_J curv(J)`; equals 24 for every complete unimodular 3-fan.
    pub fn gauss_bonnet_sum(&self) -> BigInt {
        self.walls.iter().map(|w| &w.curvature).sum()
    }

    /// First wall (in wall order) of positive curvature.
    pub fn positive_curvature_wall(&self) -> Result<usize, FanError> {
        self.walls
            .iter()
            .position(|w| w.curvature.is_positive())
            .ok_or(FanError::NoPositiveCurvature)
    }

    /// Edge functional at each wall from the wall relation:
    /// `c̃_i + c̃_i' - a1·c̃_i1 - a2·c̃_i2`.
    pub fn edge_lengths(&self, support: &[BigRational]) -> Vec<BigRational> {
        self.walls
            .iter()
            .map(|w| {
                let [i1, i2] = w.vertices;
                let [i, ip] = w.apexes;
                &support[i] + &support[ip]
                    - rational_from_int(w.a[0].clone()) * &support[i1]
                    - rational_from_int(w.a[1].clone()) * &support[i2]
            })
            .collect()
    }

    /// Rejects support parameters with a non-positive edge functional on some wall.
    pub fn validate_support(&self, support: &[BigRational]) -> Result<(), FanError> {
        if support.len() != self.ray_count() {
            return Err(FanError::SupportLength { expected: self.ray_count(), got: support.len() });
        }
        let bad: Vec<_> = self
            .walls
            .iter()
            .zip(self.edge_lengths(support))
            .filter(|(_, e)| !e.is_positive())
            .map(|(w, e)| (w.key(), e))
            .collect();
        if bad.is_empty() { Ok(()) } else { Err(FanError::SupportInvalid(bad)) }
    }

    /// Replaces the support parameters, validating them.
    pub fn with_support(&self, support: Vec<BigRational>) -> Result<UnimodularFan, FanError> {
        self.validate_support(&support)?;
        let fan = self.fan.with_support(Some(support))?;
        Ok(UnimodularFan { fan, walls: self.walls.clone(), certificate: self.certificate.clone() })
    }

    /// The fan as a characteristic pair: its sphere with `λ(i)` the ray generators.
    pub fn characteristic_pair(&self) -> CharacteristicPair {
        let lambda = CharacteristicFunction::new(self.fan.rays.clone())
            .expect("fan rays are primitive");
        CharacteristicPair::new(self.fan.sphere.clone(), lambda).expect("unimodular fan satisfies (⋆)")
    }
}
