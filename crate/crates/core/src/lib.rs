//! Exact polytope algebra at desk scale.
//!
//! Polytopes with rational coordinates, the ring of polytopal simple
//! functions under the Minkowski product, the translation quotient with its
//! dilations and grading, Minkowski weights on simple polytopes, and the
//! classical valuations (Euler characteristic, volume, mixed volume, lattice
//! point enumeration) that come out of it.

pub mod algebra;
pub mod arrangement;
pub mod corpus;
pub mod error;
pub mod faces;
pub mod fan;
pub mod grading;
pub mod io;
pub mod linalg;
pub mod polytope;
pub mod rational;
pub mod simple_function;
pub mod summand_cone;
pub mod valuations;
pub mod volume;
pub mod weights;

pub use error::{PolyError, Result};
pub use faces::{face_in_direction, f_vector, Face, FaceLattice};
pub use fan::{fan_refines, normal_fan, NormalCone, NormalFan};
pub use polytope::{convex_hull, minkowski_sum, Halfspace, Hyperplane, Polytope};
pub use rational::{Rational, RationalVector};
pub use simple_function::{equal_as_functions, star_product, AffineMapping, SimpleFunction};
pub use volume::{affine_data, volume, Convention, Measure};
pub use algebra::{class_of, AlgebraElement};
pub use corpus::{corpus, verify_figure};
pub use weights::{minkowski_map, MinkowskiWeight, WeightVector};
