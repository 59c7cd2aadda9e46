//! Equilibrium droplets of the elliptic Ginibre ensemble conditioned on a
//! point charge.
//!
//! The external potential is
//!
//! ```text
//! Q(ζ) = (|ζ|² − τ Re ζ²)/(1 − τ²) − 2c log|ζ − p|
//! ```
//!
//! and its droplet is doubly connected (Regime I), simply connected
//! (Regime II) or splits into two components (Regime III). This crate
//! classifies a parameter triple `(p, c, τ)`, builds the explicit geometry
//! in Regimes I and II, evaluates energies and variational certificates,
//! and ships a Fekete-point minimiser that serves as an independent check.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use droplet_core::{classify, ModelParams, Phase};
//!
//! let params = ModelParams::new(0.3, 0.4, 0.5).unwrap();
//! assert_eq!(classify(&params).regime.phase, Phase::DoublyConnected);
//! ```

#![no_std]
#![warn(missing_docs)]
// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod critical;
pub mod cubic;
pub mod energy;
mod error;
pub mod fekete;
pub mod geometry;
pub mod oracle;
pub mod params;
pub mod phase;
pub mod quadrature;
pub mod univalence;

pub use num_complex::Complex64 as Complex;

pub use critical::{
    critical_points, h_function, kappa_bounds, kappa_cri, z_star, CriticalPoints, KappaBounds,
};
pub use energy::{
    energy, energy_doubly, energy_simply, moments_coeff, potential_q, u_gap, EnergyReport,
};
pub use error::Error;
pub use fekete::{
    droplet_match, minimize, Ensemble, FeketeConfig, FeketeResult, MatchReport, StepPolicy,
};
pub use geometry::{build_droplet, BoundaryComponent, ConformalMap, Droplet};
pub use params::{
    kappa_max, kappa_min, kappa_one, regime1_max_p, triple_point, ConformalParams, ModelParams,
};
pub use phase::{
    classify, forward_map, in_regime1, invert_regime2, phase_diagram_scan, Classification,
    Classifier, Phase, Regime,
};
pub use univalence::{is_univalent, pz_coeffs, schur_cohn_quadratic};

/// Shorthand for results produced by this crate.
pub type Result<T> = core::result::Result<T, Error>;
