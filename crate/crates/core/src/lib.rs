//! Exact combinatorics of center-of-mass hyperplane arrangements.
//!
//! For `k` labeled points in the plane and a subset size `t`, the
//! configurations whose `t`-subset centroids are pairwise distinct form the
//! complement of a central complex hyperplane arrangement. This crate builds
//! those arrangements exactly over the rationals, computes their intersection
//! lattices and the invariants that follow (Mobius function, characteristic
//! and Poincare polynomials, region counts of the real shadow), decides
//! membership of concrete configurations with exact witnesses, and implements
//! the subset-sums maps and the stabilization map with pointwise
//! verification. An independent finite-field point-counting oracle
//! cross-checks every characteristic polynomial.
//!
//! Everything is exact: scalars are arbitrary-precision rationals and there
//! is no floating point anywhere.

pub mod arrangement;
pub mod combin;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod lattice;
pub mod maps;
pub mod poly;
pub mod sampler;

pub use arrangement::{Arrangement, ArrangementKind, Hyperplane, SubsetPair};
pub use error::{Error, Result};
pub use exact::{GaussianRational, IntCovector, QMatrix, Rational};
pub use geometry::{CollisionWitness, Configuration, Parallelogram};
pub use lattice::IntersectionLattice;
pub use maps::{PullbackReport, SubsetSums, SubsetTuples};
pub use poly::IntPolynomial;
pub use sampler::{SampleMode, SamplerSpec};
