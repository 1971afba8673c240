//! Exact lattice geometry and cohomology of toric spaces over simple 3-polytopes.
//!
//! The crate works with three kinds of input:
//!
//! * combinatorial simple 3-polytopes ([`combinatorics::SimplePolytope3`]) and their
//!   dual simplicial 2-spheres,
//! * characteristic functions over such polytopes ([`charfunc`]), i.e. the combinatorial
//!   data of quasitoric manifolds,
//! * complete simplicial fans in `Z^3` ([`fan::Fan3`]), the data of compact toric varieties.
//!
//! Everything is computed with arbitrary-precision integers and rationals. There is no
//! floating point anywhere in the library.

pub mod arith;
pub mod charfunc;
pub mod cohomology;
pub mod combinatorics;
pub mod commands;
pub mod cone;
pub mod corpus;
pub mod fan;
pub mod report;

pub use arith::{BigRational, LatticeVector};
pub use charfunc::{CharacteristicFunction, CharacteristicPair, FacetColoring};
pub use combinatorics::{SimplePolytope3, SimplicialSphere2};
pub use fan::{Fan3, UnimodularFan, Wall};
