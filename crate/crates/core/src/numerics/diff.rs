use std::convert::Infallible;

/// Five-point central first derivative with step `h = scale * max(|x|, 1) * eps^(1/3)`.
pub fn derivative(f: impl Fn(f64) -> f64, x: f64, scale: f64) -> f64 {
    let h = scale * x.abs().max(1.0) * f64::EPSILON.cbrt();
    derivative_step(f, x, h)
}

/// Five-point central first derivative with an explicit step.
pub fn derivative_step(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    match try_derivative_step(|t| Ok::<_, Infallible>(f(t)), x, h) {
        Ok(v) => v,
        Err(never) => match never {},
    }
}

/// Fallible five-point central first derivative.
pub fn try_derivative_step<E>(mut f: impl FnMut(f64) -> Result<f64, E>, x: f64, h: f64) -> Result<f64, E> {
    let fp2 = f(x + 2.0 * h)?;
    let fp1 = f(x + h)?;
    let fm1 = f(x - h)?;
    let fm2 = f(x - 2.0 * h)?;
    Ok(((fm2 - fp2) + 8.0 * (fp1 - fm1)) / (12.0 * h))
}

/// Fallible five-point central second derivative.
pub fn try_second_derivative_step<E>(mut f: impl FnMut(f64) -> Result<f64, E>, x: f64, h: f64) -> Result<f64, E> {
    let fp2 = f(x + 2.0 * h)?;
    let fp1 = f(x + h)?;
    let f0 = f(x)?;
    let fm1 = f(x - h)?;
    let fm2 = f(x - 2.0 * h)?;
    Ok((16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f0) / (12.0 * h * h))
}
