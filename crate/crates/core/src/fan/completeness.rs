use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{det3, sign, LatticeVector};
use crate::combinatorics::{IndexSet, SimplicialSphere2, SphereError};

pub const DEFAULT_SEED: u64 = 0x70_71C1AB;

const MAX_SAMPLES: usize = 64;
const SAMPLE_RANGE: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IncompleteFan {
    #[error("cone complex is not a simplicial 2-sphere: {0}")]
    NotASphere(SphereError),
    #[error("apexes of wall {} are not strictly on opposite sides (det signs {} and {})",
        IndexSet(.wall), .signs[0], .signs[1])]
    SameSide { wall: [usize; 2], signs: [i8; 2] },
    #[error("generic direction ({direction}) lies in {count} maximal cones, expected 1")]
    Coverage { direction: LatticeVector, count: usize },
    #[error("no generic direction found after {0} samples")]
    NoGenericDirection(usize),
}

/// Evidence that a simplicial fan is complete: the sphere and wall tests passed and
/// `direction` lies in the interior of exactly one maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessCertificate {
    pub direction: LatticeVector,
    pub containing_cone: [usize; 3],
    pub samples: usize,
}

/// Completeness test for a simplicial fan given by rays and maximal cones:
/// (a) the cones form a simplicial 2-sphere, (b) at every wall the two apex rays lie
/// strictly on opposite sides of the wall's plane, (c) a pseudo-random direction drawn
/// from `seed` lies in exactly one maximal cone (redrawn while it hits a wall).
pub fn check_complete(
    rays: &[LatticeVector],
    cones: &[[usize; 3]],
    seed: u64,
) -> Result<CompletenessCertificate, IncompleteFan> {
    if let Some(c) = cones.iter().find(|c| c.iter().any(|&i| i >= rays.len())) {
        return Err(IncompleteFan::NotASphere(SphereError::VertexOutOfRange {
            triangle: cones.iter().position(|x| x == c).unwrap(),
            vertex: *c.iter().max().unwrap(),
            m: rays.len(),
        }));
    }
    let sphere = SimplicialSphere2::new(rays.len(), cones).map_err(IncompleteFan::NotASphere)?;
    for w in sphere.walls() {
        let (x, y) = sphere.apexes(w[0], w[1]).expect("wall of sphere");
        let sx = sign(&det3(&rays[w[0]], &rays[w[1]], &rays[x]));
        let sy = sign(&det3(&rays[w[0]], &rays[w[1]], &rays[y]));
        if sx == 0 || sy == 0 || sx == sy {
            return Err(IncompleteFan::SameSide { wall: *w, signs: [sx, sy] });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sample in 1..=MAX_SAMPLES {
        let d = LatticeVector([
            rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE).into(),
            rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE).into(),
            rng.random_range(-SAMPLE_RANGE..=SAMPLE_RANGE).into(),
        ]);
        if d.is_zero() {
            continue;
        }
        let mut containing = Vec::new();
        let mut degenerate = false;
        for t in sphere.triangles() {
            match locate(&d, &rays[t[0]], &rays[t[1]], &rays[t[2]]) {
                Location::Inside => containing.push(*t),
                Location::Boundary => {
                    degenerate = true;
                    break;
                }
                Location::Outside => {}
            }
        }
        if degenerate {
            continue;
        }
        if containing.len() != 1 {
            return Err(IncompleteFan::Coverage { direction: d, count: containing.len() });
        }
        return Ok(CompletenessCertificate {
            direction: d,
            containing_cone: containing[0],
            samples: sample,
        });
    }
    Err(IncompleteFan::NoGenericDirection(MAX_SAMPLES))
}

enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Position of `d` relative to the simplicial cone spanned by `a, b, c` (Cramer's rule).
fn locate(d: &LatticeVector, a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> Location {
    let det = det3(a, b, c);
    let coords = [det3(d, b, c), det3(a, d, c), det3(a, b, d)];
    let s = det.signum();
    let signs: Vec<BigInt> = coords.iter().map(|x| x.signum() * &s).collect();
    if signs.iter().any(|x| x.is_negative()) {
        Location::Outside
    } else if signs.iter().any(Zero::is_zero) {
        Location::Boundary
    } else {
        Location::Inside
    }
}
