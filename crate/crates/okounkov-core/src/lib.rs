//! Exact computation of Newton-Okounkov bodies, filtration stability
//! invariants and convex-body limits.
//!
//! The crate is organized bottom-up:
//!
//! * [`wfield`] — exact arithmetic and decidable ordering for weight values
//!   that are rational combinations of finitely many fixed irrationals;
//! * [`series`] — truncated multivariate power series over exact
//!   coefficients, with composition, system inversion and branch
//!   factorization at a split node;
//! * [`valuation`] — quasi-monomial valuations, flag valuations, log
//!   discrepancies and the weight-matrix transform under blow-ups;
//! * [`bodies`] — an exact convex-polytope engine (hulls, half-space slices,
//!   volumes, piecewise-polynomial volume functions, limits of body
//!   sequences);
//! * [`filtration`] — jumping-number tables and the invariant family
//!   `T_m`, `S_{m,k}`, `S^tau`, `Q_tau`, `alpha_m`, `delta^tau`;
//! * [`models`] — concrete section generators: polarized toric surfaces
//!   (used as independent oracles) and a nodal cubic on the projective
//!   plane with its chamber structure;
//! * [`verify`] — the self-check suite exposed by the CLI.
//!
//! No floating point enters any reported value; `f64` appears only in the
//! empirical-rate regression of [`verify`], which is report-only.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod wfield;
pub mod field;
pub mod poly;
pub mod series;
pub mod valuation;
pub mod bodies;
pub mod filtration;
pub mod models;
pub mod verify;

pub use error::Error;
