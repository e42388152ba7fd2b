//! Special functions: Gamma, Kummer's confluent hypergeometric `M`, and the Hermite
//! function `H_ν(z)` of arbitrary real order on the real and imaginary axes.
//!
//! All functions are pure and generic over [`Real`](crate::Real).

mod gamma;
mod hermite;
mod kummer;
mod quad;

pub use gamma::{b0_constant, gamma, rgamma};
pub use hermite::{hermite_h, hermite_pair, hermite_real, AxisValue};
pub use kummer::{kummer_m, kummer_m_estimate, KummerValue, KUMMER_TRANSFORM_BELOW};
