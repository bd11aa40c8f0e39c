//! Core algorithms for the connected components of the sparse random graph
//! G(n, c/n).
//!
//! The crate is organised around the vertex-saturation view of the graph: a
//! queue process whose excursions are the components. On top of that sit
//!
//! * [`exploration`] — the saturation process itself, component extraction,
//!   a quadratic-time direct sampler, and the discrete Skorohod reflection;
//! * [`exact`] — exhaustive enumeration of the joint component law for small
//!   `n`, the ground truth for every stochastic module;
//! * [`rates`] — closed-form large-deviation rate functions for component
//!   counts, giant sizes and excess edges, plus the phase-transition points;
//! * [`critical`] — the moderate-deviation rate functions in the critical
//!   window;
//! * [`variational`] — optimal trajectories and quadrature evaluation of the
//!   process-level action functionals;
//! * [`limits`] — Gaussian fluctuation parameters and the critical-window
//!   limit process (reflected Brownian motion with parabolic drift).
//!
//! Everything is deterministic given an [`rng::RngSeed`]; no global state.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod critical;
pub mod exact;
pub mod exploration;
pub mod limits;
pub mod rates;
pub mod rng;
pub mod variational;

mod math;
mod solve;

pub use exploration::{ComponentSpectrum, ExplorationTrace, GraphParams};
pub use rng::RngSeed;
pub use variational::Trajectory;
