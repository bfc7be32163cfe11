//! Dispersion, numerical damping and spurious interface reflection of the
//! one-dimensional viscoelastic (Kelvin–Voigt) wave equation discretized with
//! two-node finite elements and integrated by the Newmark average-acceleration
//! method.
//!
//! Every quantity is expressed in a dimensionless normalization: ω = 2π,
//! T = 1, v_r = 1, λ = 1, so that Δt = 1/a, ℓ = 1/b and c = γ/π for the mesh
//! parameters `a` (steps per period) and `b` (elements per wavelength).
//!
//! The closed forms live in [`continuum`], [`dispersion`] and [`reflection`];
//! [`simulator`] is an independent time-domain finite element run used to
//! cross-check them, and [`report`] turns everything into CSV/JSON rows.

pub mod complex;
pub mod continuum;
pub mod discretization;
pub mod dispersion;
pub mod error;
pub mod reflection;
pub mod report;
pub mod setting;
pub mod simulator;

pub use complex::ComplexValue;
pub use continuum::{continuum_wavenumber, ContinuumWave};
pub use dispersion::{dispersion_errors, numerical_wave, DispersionErrors, NumericalWave};
pub use error::{Error, Result};
pub use reflection::{reflection_amplitude, ReflectionResult};
pub use setting::{DerivedGroups, MassModel, WaveSetting};
