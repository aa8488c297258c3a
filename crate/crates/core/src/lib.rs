//! Numerical toolkit for the deformation theory of hyperbolic cone-3-manifold
//! holonomy at the level of surface-group representation varieties.
//!
//! The crate is organized around the objects the theory manipulates:
//!
//! - [`algebra`]: SL(2,C) kernel — variation function, one-parameter
//!   centralizer subgroups, isometry classification, conjugator solves.
//! - [`surface`]: punctured-sphere and genus-g surface groups, their
//!   representations, irreducibility, unitarization, trace fingerprints.
//! - [`pants`]: separating curves, pair-of-pants decompositions, and the
//!   inductive construction of admissible decompositions.
//! - [`flow`]: complex twist flows along separating and non-separating
//!   curves, flow commutation, and numerical submersion (Jacobian rank)
//!   checks for trace maps.
//! - [`chart`]: action-angle coordinates (tr, τ) through an explicit SU(2)
//!   pants-gluing section, lift/split signs, splitting deformations, and the
//!   cone-angle/edge-length coordinate map Ψ.
//! - [`cone`]: triangulated spherical cone-surfaces, developing maps,
//!   holonomy, the cone angle |∫dθ| along a curve, and the splitting
//!   condition with its geometric sign.
//! - [`experiments`]: Dehn-twist automorphisms, the twist-limit experiment,
//!   and the bundled property-check suites behind the CLI.

pub mod algebra;
pub mod chart;
pub mod cone;
pub mod error;
pub mod experiments;
pub mod flow;
pub mod pants;
pub mod surface;
pub mod wire;

pub use algebra::{
    classify, conjugator_solve, exp_traceless, fixed_points, one_param, trace_form, variation,
    GroupElem, IsometryClass, Mat2, TangentVec, C64, DEFAULT_TOL,
};
pub use error::{Error, Result};
