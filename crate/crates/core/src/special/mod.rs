//! Scalar special functions and integer sequences.

mod bessel;
pub(crate) mod bernoulli;
mod divisor;
mod gamma;
mod lambert;
pub(crate) mod zeta;

pub use bernoulli::{bernoulli, factorial, BernoulliTable};
pub use bessel::{bessel_k0, bessel_k_half, k0_asymptotic_threshold};
pub use divisor::{divisor_sieve, DivisorTable};
pub use gamma::gamma;
pub(crate) use gamma::gamma_pow;
pub use lambert::{lambert_series, lambert_series_sigma};
pub use zeta::zeta;
