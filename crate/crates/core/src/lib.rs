//! Additive energy and the Gowers u2 norm on Hamming spheres of F_2^n.
//!
//! The crate computes, checks and numerically certifies the extremal value
//!
//! ```text
//! mu(S(n,k)) = max ||f||_{u2}^4 / ||f||_2^4  over  supp f ⊆ S(n,k)
//!            = E(S(n,k)) / (2^n |S(n,k)|^2)
//! ```
//!
//! i.e. that the constant function on a Hamming sphere maximizes the ratio.
//!
//! * [`hypercube`]: points, spheres, coordinate pairs and their cosets.
//! * [`spectral`]: Walsh-Hadamard transforms with explicit normalization.
//! * [`functionals`]: l2, l4, three independent u2 evaluators, exact energy.
//! * [`compression`]: the (i,j) l2-compression and its fixpoint iteration.
//! * [`optimize`]: multi-start projected gradient ascent on the ratio.
//! * [`verify`]: certification reports tying the routes together.
//! * [`io`] and [`cli`]: text file formats and the command-line front end.

// `!(x > 0.0)` is used on purpose so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod compression;
mod error;
pub mod functionals;
pub mod hypercube;
pub mod io;
pub mod optimize;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use hypercube::{PairIndex, Point, PointSet, SphereSpec};
pub use spectral::{DenseFunction, Normalization, Spectrum};

/// Largest supported ambient dimension.
pub const MAX_DIM: u32 = 24;
