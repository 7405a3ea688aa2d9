/// Coefficient of determination of the least-squares line through the
/// points; `None` with fewer than three points or constant abscissae.
pub fn linear_r2(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len().min(ys.len());
    if n < 3 {
        return None;
    }
    let mean = |v: &[f64]| v[..n].iter().sum::<f64>() / n as f64;
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return None;
    }
    if syy == 0.0 {
        return Some(1.0);
    }
    Some(sxy * sxy / (sxx * syy))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_and_noise() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        assert!((linear_r2(&xs, &[1.0, 3.0, 5.0, 7.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!(linear_r2(&xs, &[0.0, 1.0, 0.0, 1.0]).unwrap() < 0.5);
        assert_eq!(linear_r2(&xs[..2], &[1.0, 2.0]), None);
    }
}
