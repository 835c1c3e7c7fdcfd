//! Exact spectral analysis of face-semigroup random walks on the chambers of
//! a central essential hyperplane arrangement.
//!
//! The pipeline is entirely combinatorial and rational-exact:
//!
//! 1. [`arrangement`] builds the arrangement from rational normal vectors and
//!    enumerates its faces as feasible sign vectors (LP-pruned search).
//! 2. [`lattice`] derives the intersection lattice with its Möbius function
//!    and Betti numbers.
//! 3. [`algebra`] provides the face product, the module action on chamber
//!    vectors, and exhaustive semigroup-law checks.
//! 4. [`cochains`] implements the Varchenko–Gel′fand machinery: Heaviside
//!    monomials, the degree filtration, flags, orientation signs, and flag
//!    cochains.
//! 5. [`spectra`] assembles the walk's transition matrix, its eigenvalues
//!    indexed by flats, the exact stationary vector, and a full eigenbasis
//!    built from flag cochains paired with restricted stationary vectors.
//! 6. [`sim`] runs seeded Monte Carlo chains and compares them to the exact
//!    stationary distribution in total variation.
//!
//! All scalar arithmetic uses arbitrary-precision rationals; there are no
//! tolerances anywhere in the eigen computations.

pub mod algebra;
pub mod arrangement;
pub mod cochains;
pub mod complex;
pub mod error;
pub mod generators;
pub mod golden;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod sign;
pub mod simplex;
pub mod sim;
pub mod spectra;
pub mod verify;

pub use arrangement::{Arrangement, Face};
pub use complex::{FaceComplex, FaceId};
pub use error::Error;
pub use lattice::{Flat, FlatId, IntersectionLattice};
pub use matrix::RatMatrix;
pub use rational::Rational;
pub use sign::Sign;
