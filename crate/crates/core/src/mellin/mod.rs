//! Vertical-line Mellin-Barnes quadrature and Cauchy-circle derivatives.

mod circle;
mod kernel;
mod quadrature;

pub use circle::{cauchy_derivative, cauchy_derivative_traced, CircleSettings};
pub use kernel::{cos_half_pi_pow, lambda_line_integral, lambda_abscissa, meijer_g_psi_kernel, psi_kernel, KERNEL_ABSCISSA};
pub use quadrature::{line_integral, line_integral_traced, truncation_height, Quadrature, QuadratureSettings, TraceStep};
