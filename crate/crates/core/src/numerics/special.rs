use std::f64::consts::PI;

const SERIES_SWITCH: f64 = 1e-4;

/// erf(x)/x, finite and smooth down to x = 0.
pub fn erf_ratio(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_SWITCH {
        let x2 = x * x;
        2.0 / PI.sqrt() * (1.0 - x2 / 3.0 + x2 * x2 / 10.0)
    } else {
        libm::erf(x) / x
    }
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// sin(x)/x with sinc(0) = 1.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_SWITCH {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// J0 and J1 Bessel functions of the first kind.
pub fn bessel_j0(x: f64) -> f64 {
    libm::j0(x)
}

pub fn bessel_j1(x: f64) -> f64 {
    libm::j1(x)
}

/// K0 and K1 modified Bessel functions of the second kind, x > 0.
pub fn bessel_k0(x: f64) -> f64 {
    puruspe::Kn(0, x)
}

pub fn bessel_k1(x: f64) -> f64 {
    puruspe::Kn(1, x)
}

const K_ASYMPTOTIC_SWITCH: f64 = 40.0;

/// Exponentially scaled `e^x K_nu(x)` for nu = 0, 1; finite for large x.
fn bessel_k_scaled(nu: u32, x: f64) -> f64 {
    if x < K_ASYMPTOTIC_SWITCH {
        return x.exp() * puruspe::Kn(nu, x);
    }
    let mu = 4.0 * (nu * nu) as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=12 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * 8.0 * x);
        sum += term;
    }
    (PI / (2.0 * x)).sqrt() * sum
}

pub fn bessel_k0_scaled(x: f64) -> f64 {
    bessel_k_scaled(0, x)
}

pub fn bessel_k1_scaled(x: f64) -> f64 {
    bessel_k_scaled(1, x)
}
