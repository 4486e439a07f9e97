//! Exact calculus of continuous multivalued maps over finite topological
//! spaces, and the multivalued singular homology they generate.
//!
//! The crate is organised bottom-up:
//!
//! - [`finspace`]: finite spaces as specialization preorders, continuous and
//!   closed maps.
//! - [`corr`]: correspondences (continuous multivalued maps): validity,
//!   composition, box products, pullback and pushforward, gluing, images,
//!   multivalued paths.
//! - [`affine`]: exact rational affine maps between products of simplices
//!   and the interval, with the face, degeneracy and prism identities.
//! - [`simplicial`]: finite models of simplices, the interval, faces and
//!   prisms.
//! - [`chain`]: integral chains of multivalued simplices, boundaries, Smith
//!   normal form, chain homotopies.
//! - [`engine`]: simplex enumeration, finite-model homology, the contraction
//!   homotopies of a discrete space and nullhomotopy certificates.
//! - [`fixedset`]: fixed subsets and the greatest fixed subset of a
//!   self-correspondence.
//!
//! Loops over independent work items run on rayon when the `parallel`
//! feature is enabled (the default); see [`exec::Exec`].

pub mod affine;
pub mod chain;
pub mod corr;
pub mod engine;
pub mod error;
pub mod exec;
pub mod finspace;
pub mod fixedset;
pub mod json;
pub mod sample;
pub mod simplicial;

pub use corr::{Corr, Validity};
pub use error::{Error, Result};
pub use exec::Exec;
pub use finspace::{ContMap, FinSpace, PointSet};
