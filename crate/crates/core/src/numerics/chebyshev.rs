use std::f64::consts::PI;

/// Chebyshev series on [a, b], with its first two derivative series.
#[derive(Debug, Clone)]
pub struct Chebyshev {
    a: f64,
    b: f64,
    c0: Vec<f64>,
    c1: Vec<f64>,
    c2: Vec<f64>,
}

impl Chebyshev {
    /// Chebyshev points of the first kind on [a, b].
    pub fn nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
        (0..n)
            .map(|k| {
                let t = (PI * (k as f64 + 0.5) / n as f64).cos();
                0.5 * (a + b) + 0.5 * (b - a) * t
            })
            .collect()
    }

    /// Interpolant through `values` sampled at `Chebyshev::nodes(a, b, n)`.
    pub fn from_values(a: f64, b: f64, values: &[f64]) -> Self {
        let n = values.len();
        assert!(n >= 3 && a < b);
        let mut c0 = vec![0.0; n];
        for (j, c) in c0.iter_mut().enumerate() {
            let mut s = 0.0;
            for (k, v) in values.iter().enumerate() {
                s += v * (PI * j as f64 * (k as f64 + 0.5) / n as f64).cos();
            }
            *c = 2.0 * s / n as f64;
        }
        c0[0] *= 0.5;
        let scale = 2.0 / (b - a);
        let c1 = derivative_coefficients(&c0, scale);
        let c2 = derivative_coefficients(&c1, scale);
        Self { a, b, c0, c1, c2 }
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    /// Magnitude of the trailing coefficients relative to the leading one.
    pub fn tail_ratio(&self) -> f64 {
        let n = self.c0.len();
        let head = self.c0.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let tail = self.c0[n - 3..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
        tail / head
    }

    fn t(&self, x: f64) -> f64 {
        (2.0 * x - self.a - self.b) / (self.b - self.a)
    }

    pub fn value(&self, x: f64) -> f64 {
        clenshaw(&self.c0, self.t(x))
    }

    pub fn first_derivative(&self, x: f64) -> f64 {
        clenshaw(&self.c1, self.t(x))
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        clenshaw(&self.c2, self.t(x))
    }
}

fn clenshaw(c: &[f64], t: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c[0]
}

/// Coefficients of d/dx of the series, `scale` = dt/dx.
fn derivative_coefficients(c: &[f64], scale: f64) -> Vec<f64> {
    let n = c.len();
    let mut d = vec![0.0; n];
    if n < 2 {
        return d;
    }
    for k in (1..n).rev() {
        let next = if k + 1 < n { d[k + 1] } else { 0.0 };
        d[k - 1] = next + 2.0 * k as f64 * c[k];
    }
    d[0] *= 0.5;
    for v in &mut d {
        *v *= scale;
    }
    d
}
