//! High-precision evaluation of the generalized Koshliakov function
//! `Psi_{rho,k}(x)` and numerical verification of transformation formulas
//! for `zeta(2m+1)^k`, generalized Eisenstein series, the Dedekind eta
//! function and Lerch's identity.
//!
//! Layers, bottom up:
//!
//! * [`hp`]: precision context and arbitrary-precision real/complex numbers
//! * [`special`]: Gamma, zeta, Bernoulli numbers, Bessel `K_0`, divisor sieve, Lambert series
//! * [`mellin`]: vertical-line quadrature and Cauchy-circle derivatives
//! * [`psi`]: `Psi_{rho,k}(x)` and the weighted series built from it
//! * [`identities`]: both sides of every identity and verification reports

pub mod error;
pub mod hp;
pub mod identities;
pub mod mellin;
pub mod psi;
pub mod selftest;
pub mod special;

pub use error::{Error, Result};
pub use hp::{with_precision, HpComplex, HpReal, PrecisionContext};
