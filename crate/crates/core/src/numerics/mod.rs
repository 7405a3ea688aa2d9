//! Deterministic numerical kernel: quadrature, root finding, finite
//! differences, special functions and Chebyshev interpolation.

mod chebyshev;
mod diff;
mod quadrature;
mod roots;
mod special;

pub use chebyshev::Chebyshev;
pub use diff::{derivative, derivative_step, try_derivative_step, try_second_derivative_step};
pub use quadrature::{
    integrate_1d, integrate_2d, integrate_partitioned, GaussLegendre, Integral, Integrand, QuadratureError,
    QuadratureSpec, Window,
};
pub use roots::{find_all_roots, find_root, RootBracket};
pub use special::{
    bessel_j0, bessel_j1, bessel_k0, bessel_k0_scaled, bessel_k1, bessel_k1_scaled, erf, erf_ratio, sinc,
};
