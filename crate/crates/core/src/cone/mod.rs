//! Effective cone of curves generated by wall classes, extremality, strict convexity and
//! the degree-3/4 obstruction witness for smooth projective toric 3-folds.
//!
//! A wall class `v_J` is represented by its pairing vector `(∫ v_J v_t)_t ∈ Z^m`. The
//! pairing is injective on `H^4`, so proportionality and cone membership can be decided
//! on these vectors directly.

pub mod lp;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rational_from_int, BigRational};
use crate::cohomology::IntersectionTable;
use crate::combinatorics::{IndexSet, SimplicialSphere2};
use crate::fan::UnimodularFan;

pub use lp::{phase_one, PhaseOne};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("wall classes are not contained in an open half-space")]
    NoWitness { certificate: Vec<BigRational> },
    #[error("no extremal wall of positive curvature")]
    NoPositiveExtremalWall,
    #[error("vertex {vertex} was claimed to have degree {claimed} but has degree {actual}")]
    CertificationFailure { vertex: usize, claimed: usize, actual: usize },
}

/// Answer to `∃ r ≥ 0 : Σ_s r_s S_s = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Feasible { coefficients: Vec<BigRational> },
    /// `y` with `⟨y, S_s⟩ ≤ 0` for every generator and `⟨y, x⟩ > 0`.
    Infeasible { separator: Vec<BigRational> },
}

impl Membership {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Membership::Feasible { .. })
    }

    /// Exact check of the coefficients or the separator against the instance.
    pub fn verify(&self, x: &[BigRational], generators: &[Vec<BigRational>]) -> bool {
        let dot = |a: &[BigRational], b: &[BigRational]| -> BigRational { a.iter().zip(b).map(|(p, q)| p * q).sum() };
        match self {
            Membership::Feasible { coefficients: r } => {
                if r.len() != generators.len() || r.iter().any(|c| c.is_negative()) {
                    return false;
                }
                let mut sum = vec![BigRational::zero(); x.len()];
                for (c, s) in r.iter().zip(generators) {
                    for (acc, v) in sum.iter_mut().zip(s) {
                        *acc += c * v;
                    }
                }
                sum == x
            }
            Membership::Infeasible { separator: y } => {
                y.len() == x.len()
                    && dot(y, x).is_positive()
                    && generators.iter().all(|s| !dot(y, s).is_positive())
            }
        }
    }
}

/// Decides whether `x` lies in the cone spanned by `generators` with an exact phase-1
/// simplex. Every generator must have the length of `x`.
pub fn cone_membership(x: &[BigRational], generators: &[Vec<BigRational>]) -> Membership {
    let d = x.len();
    let rows: Vec<Vec<BigRational>> =
        (0..d).map(|k| generators.iter().map(|s| s[k].clone()).collect()).collect();
    match phase_one(&rows, generators.len(), x) {
        PhaseOne::Feasible(coefficients) => Membership::Feasible { coefficients },
        PhaseOne::Infeasible(separator) => Membership::Infeasible { separator },
    }
}

/// The class `v_J` of a wall and its pairing vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallClass {
    pub wall: [usize; 2],
    pub pairing: Vec<BigInt>,
}

/// One class per wall of the sphere, in wall order.
pub fn wall_classes(sphere: &SimplicialSphere2, table: &IntersectionTable) -> Vec<WallClass> {
    sphere
        .walls()
        .iter()
        .map(|&[p, q]| WallClass { wall: [p, q], pairing: table.pairing(p, q) })
        .collect()
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive_direction(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(rational_from_int).collect()
}

/// Walls whose classes span the same ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallGroup {
    pub walls: Vec<[usize; 2]>,
    /// Primitive integer vector on the common ray.
    pub direction: Vec<BigInt>,
    pub extremal: bool,
    /// Membership of the direction in the cone of the other groups: infeasible exactly
    /// when the group is extremal.
    pub certificate: Membership,
}

/// Groups classes by positive proportionality, in order of first appearance.
pub fn group_classes(classes: &[WallClass]) -> Vec<(Vec<BigInt>, Vec<[usize; 2]>)> {
    let mut groups: Vec<(Vec<BigInt>, Vec<[usize; 2]>)> = Vec::new();
    for c in classes {
        let dir = primitive_direction(&c.pairing);
        match groups.iter_mut().find(|(d, _)| *d == dir) {
            Some((_, walls)) => walls.push(c.wall),
            None => groups.push((dir, vec![c.wall])),
        }
    }
    groups
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// The support parameters `c̃` of a polytope.
    Support,
    /// A solution of `⟨y, v_J⟩ ≥ 1` for all walls.
    Lp,
}

impl fmt::Display for WitnessSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessSource::Support => "support",
            WitnessSource::Lp => "lp",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictConvexity {
    /// A functional positive on every wall class.
    Witness { functional: Vec<BigRational>, source: WitnessSource },
    /// `r ≥ 0`, one entry per class, not all zero, with `Σ r_J v_J = 0`.
    NoWitness { certificate: Vec<BigRational> },
}

impl StrictConvexity {
    pub fn functional(&self) -> Option<&[BigRational]> {
        match self {
            StrictConvexity::Witness { functional, .. } => Some(functional),
            StrictConvexity::NoWitness { .. } => None,
        }
    }
}

/// `⟨y, v_J⟩` for every class.
pub fn functional_values(y: &[BigRational], classes: &[WallClass]) -> Vec<BigRational> {
    classes
        .iter()
        .map(|c| y.iter().zip(&c.pairing).map(|(a, b)| a * rational_from_int(b.clone())).sum())
        .collect()
}

/// Solves `⟨y, v_J⟩ ≥ 1 ∀J` with `y = y⁺ − y⁻` and slacks. When infeasible the phase-1
/// dual vector is the Farkas certificate.
pub fn lp_convexity_witness(classes: &[WallClass], m: usize) -> StrictConvexity {
    let w = classes.len();
    let n = 2 * m + w;
    let rows: Vec<Vec<BigRational>> = classes
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut row = vec![BigRational::zero(); n];
            for (t, x) in c.pairing.iter().enumerate() {
                row[t] = rational_from_int(x.clone());
                row[m + t] = -rational_from_int(x.clone());
            }
            row[2 * m + k] = -BigRational::one();
            row
        })
        .collect();
    match phase_one(&rows, n, &vec![BigRational::one(); w]) {
        PhaseOne::Feasible(x) => StrictConvexity::Witness {
            functional: (0..m).map(|t| &x[t] - &x[m + t]).collect(),
            source: WitnessSource::Lp,
        },
        PhaseOne::Infeasible(certificate) => StrictConvexity::NoWitness { certificate },
    }
}

/// `c̃` itself when it is positive on every class, otherwise the LP witness.
pub fn strict_convexity_witness(
    classes: &[WallClass],
    m: usize,
    support: Option<&[BigRational]>,
) -> StrictConvexity {
    if let Some(c) = support {
        if functional_values(c, classes).iter().all(|v| v.is_positive()) {
            return StrictConvexity::Witness { functional: c.to_vec(), source: WitnessSource::Support };
        }
    }
    lp_convexity_witness(classes, m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeAnalysis {
    pub classes: Vec<WallClass>,
    pub groups: Vec<WallGroup>,
    pub convexity: StrictConvexity,
    /// Set when no support parameters were supplied.
    pub uncertified: Option<&'static str>,
}

impl ConeAnalysis {
    pub fn extremal_walls(&self) -> impl Iterator<Item = [usize; 2]> + '_ {
        self.groups.iter().filter(|g| g.extremal).flat_map(|g| g.walls.iter().copied())
    }

    pub fn is_extremal(&self, wall: [usize; 2]) -> bool {
        self.groups.iter().any(|g| g.extremal && g.walls.contains(&wall))
    }
}

/// Groups, extremality of every group against the union of the others, and a strict
/// convexity witness.
pub fn analyze_classes(classes: Vec<WallClass>, m: usize, support: Option<&[BigRational]>) -> ConeAnalysis {
    let grouped = group_classes(&classes);
    let dirs: Vec<Vec<BigRational>> = grouped.iter().map(|(d, _)| to_rational(d)).collect();
    let groups = grouped
        .into_iter()
        .enumerate()
        .map(|(g, (direction, walls))| {
            let others: Vec<Vec<BigRational>> =
                dirs.iter().enumerate().filter(|&(h, _)| h != g).map(|(_, d)| d.clone()).collect();
            let certificate = cone_membership(&dirs[g], &others);
            WallGroup { walls, direction, extremal: !certificate.is_feasible(), certificate }
        })
        .collect();
    let convexity = strict_convexity_witness(&classes, m, support);
    let uncertified = support.is_none().then_some("uncertified: no strict convexity witness supplied");
    ConeAnalysis { classes, groups, convexity, uncertified }
}

/// Cone analysis of a smooth complete fan, certified by its support parameters when
/// present.
pub fn extremal_walls(fan: &UnimodularFan) -> Result<ConeAnalysis, ConeError> {
    let table = IntersectionTable::for_fan(fan);
    let classes = wall_classes(fan.sphere(), &table);
    let analysis = analyze_classes(classes, fan.ray_count(), fan.support());
    if let StrictConvexity::NoWitness { certificate } = &analysis.convexity {
        return Err(ConeError::NoWitness { certificate: certificate.clone() });
    }
    Ok(analysis)
}

/// A vertex of `K` of degree 3 or 4, i.e. a triangular or quadrangular face of the
/// dual polytope, produced from an extremal wall of positive curvature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionWitness {
    /// `(i1, i2)` relabelled so that `a1 ≤ a2`.
    pub wall: [usize; 2],
    pub a: [BigInt; 2],
    pub curvature: BigInt,
    pub vertex: usize,
    pub neighbors: Vec<usize>,
    /// 3 when `a1 < 0`, 4 when `a1 = 0`; verified against the sphere.
    pub degree: usize,
}

impl fmt::Display for ObstructionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "wall ({}, {}) a = ({}, {}) curv {}: vertex {} of degree {}, neighbors {}",
            self.wall[0],
            self.wall[1],
            self.a[0],
            self.a[1],
            self.curvature,
            self.vertex,
            self.degree,
            IndexSet(&self.neighbors)
        )
    }
}

/// Among extremal walls of positive curvature, picks the one with the smallest
/// coefficient `min(a1, a2)`, ties broken by wall order, and certifies the degree of the
/// vertex opposite to the minimum.
pub fn obstruction_from_analysis(
    fan: &UnimodularFan,
    analysis: &ConeAnalysis,
) -> Result<ObstructionWitness, ConeError> {
    let wall = fan
        .walls()
        .iter()
        .filter(|w| w.curvature.is_positive() && analysis.is_extremal(w.key()))
        .min_by(|x, y| {
            let mx = x.a[0].clone().min(x.a[1].clone());
            let my = y.a[0].clone().min(y.a[1].clone());
            mx.cmp(&my).then(x.key().cmp(&y.key()))
        })
        .ok_or(ConeError::NoPositiveExtremalWall)?;
    let (first, second) = if wall.a[0] <= wall.a[1] { (0, 1) } else { (1, 0) };
    let a1 = wall.a[first].clone();
    let claimed = if a1.is_negative() {
        3
    } else if a1.is_zero() {
        4
    } else {
        return Err(ConeError::CertificationFailure { vertex: wall.vertices[second], claimed: 0, actual: 0 });
    };
    let vertex = wall.vertices[second];
    let actual = fan.sphere().degree(vertex);
    if actual != claimed {
        return Err(ConeError::CertificationFailure { vertex, claimed, actual });
    }
    Ok(ObstructionWitness {
        wall: [wall.vertices[first], vertex],
        a: [a1, wall.a[second].clone()],
        curvature: wall.curvature.clone(),
        vertex,
        neighbors: fan.sphere().link(vertex).to_vec(),
        degree: actual,
    })
}

pub fn delzant_obstruction_witness(fan: &UnimodularFan) -> Result<ObstructionWitness, ConeError> {
    let analysis = extremal_walls(fan)?;
    obstruction_from_analysis(fan, &analysis)
}
