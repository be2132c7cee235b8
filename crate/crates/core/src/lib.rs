//! Photon propagation through one-dimensional photonic crystals `(AB)^N`.
//!
//! The crate computes transmissivity and reflectivity with a block-scalar
//! transfer-matrix chain, evaluates the photon probability density and
//! probability current inside the stack, and carries an independent classical
//! characteristic-matrix calculator used to cross-check the results.
//!
//! Module map:
//!
//! - [`stack`]: layer geometry, periodic and mirror builders.
//! - [`wave`]: per-frequency wave parameters (`K0`, `C` coefficients).
//! - [`quantum`]: entry/layer transfer blocks and the scattering solve.
//! - [`observables`]: density, current and flux profiles.
//! - [`classical`]: TE characteristic-matrix oracle.
//! - [`spectra`]: frequency sweeps, band gaps, decay lengths, statistics.
//! - [`exec`]: sequential or rayon-backed evaluation of independent points.

pub mod classical;
pub mod error;
pub mod exec;
pub mod observables;
pub mod quantum;
pub mod spectra;
pub mod stack;
pub mod wave;

pub use error::{Error, Result};
pub use exec::Execution;
pub use num_complex::Complex64;
pub use stack::{Layer, LayerKind, Stack};
pub use wave::WaveParams;

/// Three complex wavefunction components.
pub type Amplitude3 = [Complex64; 3];
