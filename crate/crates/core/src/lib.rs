//! Analytic and numerical toolkit for the conditionally integrable
//! bi-confluent Heun potential
//!
//! ```text
//! V(x) = V0 + 5ħ²/(32 m x²) + V1 x^{-3/2} - 16 m² V1³ / (ħ⁴ √x)
//! ```
//!
//! on the half-axis `x > 0`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: Gamma, Kummer `M` and Hermite functions of arbitrary real order.
//! * [`model`]: physical parameters, the potential family and the energy ↔ `(a, ε)` map.
//! * [`analytic`]: fundamental solutions built from pairs of Hermite functions, wave tables,
//!   normalisation and the Schrödinger residual.
//! * [`spectrum`]: the exact spectrum equation, its trigonometric approximation and the
//!   closed-form level formula.
//! * [`oracle`]: an independent Numerov shooting eigensolver used to cross-check everything above.
//! * [`validate`]: the aggregated check suite behind `biconfluent validate`.
//!
//! Every kernel is generic over [`Real`] (implemented for `f32` and `f64`); the `*64` aliases
//! below fix the scalar to `f64`, which is what the CLI and the validation suite use.

// `!(x > 0)` style guards are deliberate: they also reject NaN. Reference
// constants keep the digits of their source.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analytic;
pub mod error;
pub mod model;
pub mod oracle;
pub mod scalar;
pub mod specfun;
pub mod spectrum;
pub mod validate;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

pub use analytic::{WaveSample, WaveSource, WaveTable};
pub use model::{Branch, PhysParams};
pub use oracle::ShootingConfig;
pub use specfun::AxisValue;
pub use spectrum::{Level, Provenance};

/// Complex value used for Hermite functions of imaginary argument and plus-branch solutions.
pub type ComplexValue<T> = Complex<T>;

pub type PhysParams64 = PhysParams<f64>;
pub type Level64 = Level<f64>;
pub type WaveTable64 = WaveTable<f64>;
pub type WaveSample64 = WaveSample<f64>;
pub type ShootingConfig64 = ShootingConfig<f64>;
pub type AxisValue64 = AxisValue<f64>;
pub type Complex64 = Complex<f64>;
