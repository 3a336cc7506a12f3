//! Finite-state Markov models of dynamical systems reconstructed from
//! sampled telemetry.
//!
//! The pipeline runs in five stages:
//!
//! 1. [`signals`]: multichannel telemetry, lagged channels and a synthetic
//!    damped oscillator.
//! 2. [`embedding`]: division of every channel by its measurement error, which
//!    makes the delay space dimensionless.
//! 3. [`states`]: greedy selection of characteristic points, neighbor counts,
//!    a dimension estimate and an adequacy check for the exclusion radius.
//! 4. [`markov`]: crisp and fuzzy transition-matrix estimation, propagation and
//!    sparsified forecasts.
//! 5. [`modal`]: the spectrum of the transition matrix read as attractors,
//!    oscillation periods and damping decrements.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod embedding;
mod error;
pub mod linalg;
pub mod markov;
mod math;
pub mod modal;
pub mod signals;
pub mod states;

pub use embedding::{embed, grid_index, information_estimate, DelayPointSeries, EmbeddingSpec};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use markov::{
    assign_state, expected_coordinates, fit_crisp, fit_crisp_strided, fit_fuzzy, fit_fuzzy_strided,
    forecast, fuzzy_membership, stationary, step, MarkovModel, Scheme, Sparsify, StateDistribution,
    TransitionCounts,
};
pub use modal::{
    attractor_count, decompose, eigenform_table, mode_damping, mode_frequency,
    real_eigenvalue_count, EigenformRow, ModalResult, ModeFrequency,
};
pub use signals::{
    add_lag_channels, synth_oscillator, Channel, LagSpec, OscillatorSpec, Telemetry,
};
pub use states::{
    adequacy, estimate_dimension, neighbor_counts, select_points, select_points_with, Adequacy,
    CharacteristicPointSet, SelectionConfig,
};
