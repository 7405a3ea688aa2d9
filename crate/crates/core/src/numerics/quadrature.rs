//! Adaptive Gauss–Legendre quadrature with dyadic panel splitting.
//!
//! Every panel carries a coarse estimate (one rule on the whole panel) and a
//! fine estimate (the same rule on both halves). The panel with the largest
//! `|coarse - fine|` is split until the summed discrepancy meets the
//! tolerance. Panels are kept sorted by their left endpoint and summed in
//! that order, so a given integrand and spec always produce the same bits.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Axis, Error, Result};

/// Values that can be integrated: reals and complex numbers.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub panel_order: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-7,
            abs_tol: 1e-30,
            max_subdivisions: 2000,
            panel_order: 15,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !self.rel_tol.is_finite() {
            return Err(Error::InvalidQuadratureSpec(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) || !self.abs_tol.is_finite() {
            return Err(Error::InvalidQuadratureSpec(format!(
                "abs_tol must be non-negative, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidQuadratureSpec(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if self.panel_order < 2 {
            return Err(Error::InvalidQuadratureSpec(format!(
                "panel_order must be at least 2, got {}",
                self.panel_order
            )));
        }
        Ok(())
    }

    /// Same spec with a different relative tolerance.
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on [a, b].
    pub fn apply<T: Integrand>(&self, f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> T {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }

    /// Nodes and weights mapped onto [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, w * half))
    }
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of a quadrature: value, error estimate and number of panels used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error: f64,
    pub subdivisions: usize,
}

/// Quadrature failure. `NotConverged` keeps the best available estimate.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadratureError<T> {
    Invalid(Error),
    NotConverged(Integral<T>),
}

impl<T: Integrand> QuadratureError<T> {
    pub fn best_estimate(&self) -> Option<&Integral<T>> {
        match self {
            QuadratureError::NotConverged(i) => Some(i),
            QuadratureError::Invalid(_) => None,
        }
    }

    pub fn into_error(self, axis: Option<Axis>) -> Error {
        match self {
            QuadratureError::Invalid(e) => e,
            QuadratureError::NotConverged(i) => Error::NotConverged {
                axis,
                estimate: i.value.magnitude(),
                error: i.error,
                subdivisions: i.subdivisions,
            },
        }
    }
}

impl<T: Integrand> From<QuadratureError<T>> for Error {
    fn from(e: QuadratureError<T>) -> Self {
        e.into_error(None)
    }
}

struct Panel<T> {
    a: f64,
    b: f64,
    left: T,
    right: T,
    error: f64,
}

fn make_panel<T: Integrand>(
    rule: &GaussLegendre,
    f: &mut impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    coarse: T,
) -> Panel<T> {
    let m = 0.5 * (a + b);
    let left = rule.apply(f, a, m);
    let right = rule.apply(f, m, b);
    let error = (coarse - (left + right)).magnitude();
    Panel {
        a,
        b,
        left,
        right,
        error,
    }
}

/// Adaptive integral of `f` over [a, b].
pub fn integrate_1d<T, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral<T>, QuadratureError<T>>
where
    T: Integrand,
    F: FnMut(f64) -> T,
{
    integrate_partitioned(f, &[a, b], spec)
}

/// Adaptive integral over the union of the consecutive intervals given by
/// `breakpoints`, each of which starts as its own panel.
pub fn integrate_partitioned<T, F>(
    mut f: F,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<Integral<T>, QuadratureError<T>>
where
    T: Integrand,
    F: FnMut(f64) -> T,
{
    spec.validate().map_err(QuadratureError::Invalid)?;
    if breakpoints.len() < 2 {
        return Err(QuadratureError::Invalid(Error::InvalidInterval {
            a: f64::NAN,
            b: f64::NAN,
        }));
    }
    for w in breakpoints.windows(2) {
        if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(QuadratureError::Invalid(Error::InvalidInterval { a: w[0], b: w[1] }));
        }
    }
    let rule = GaussLegendre::new(spec.panel_order);
    let mut panels: Vec<Panel<T>> = breakpoints
        .windows(2)
        .map(|w| {
            let coarse = rule.apply(&mut f, w[0], w[1]);
            make_panel(&rule, &mut f, w[0], w[1], coarse)
        })
        .collect();

    loop {
        let mut total = T::zero();
        let mut err = 0.0;
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            total = total + p.left + p.right;
            err += p.error;
            if p.error > panels[worst].error {
                worst = i;
            }
        }
        let target = (spec.rel_tol * total.magnitude()).max(spec.abs_tol);
        let result = Integral {
            value: total,
            error: err,
            subdivisions: panels.len(),
        };
        if !err.is_finite() || !total.magnitude().is_finite() {
            return Err(QuadratureError::NotConverged(result));
        }
        if err <= target {
            return Ok(result);
        }
        if panels.len() >= spec.max_subdivisions {
            return Err(QuadratureError::NotConverged(result));
        }
        let p = panels.remove(worst);
        let m = 0.5 * (p.a + p.b);
        if !(p.a < m && m < p.b) {
            // Panel can no longer be halved in floating point.
            return Err(QuadratureError::NotConverged(result));
        }
        let lp = make_panel(&rule, &mut f, p.a, m, p.left);
        let rp = make_panel(&rule, &mut f, m, p.b, p.right);
        panels.insert(worst, rp);
        panels.insert(worst, lp);
    }
}

/// Axis-aligned integration rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Window {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Self {
        Self {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    pub fn area(&self) -> f64 {
        (self.x_max - self.x_min) * (self.y_max - self.y_min)
    }
}

/// Iterated adaptive integral of `f(x, y)` over `window`; each inner
/// integral over `y` converges on its own.
pub fn integrate_2d<F>(mut f: F, window: &Window, spec: &QuadratureSpec) -> Result<Integral<f64>>
where
    F: FnMut(f64, f64) -> f64,
{
    if !(window.area() > 0.0) || !(window.x_max > window.x_min) {
        return Err(Error::InvalidInterval {
            a: window.x_min,
            b: window.x_max,
        });
    }
    let mut inner_failure: Option<Error> = None;
    let mut inner_error = 0.0;
    let outer = integrate_1d(
        |x| {
            if inner_failure.is_some() {
                return 0.0;
            }
            match integrate_1d(|y| f(x, y), window.y_min, window.y_max, spec) {
                Ok(i) => {
                    inner_error += i.error;
                    i.value
                }
                Err(e) => {
                    inner_failure = Some(e.into_error(Some(Axis::Inner)));
                    0.0
                }
            }
        },
        window.x_min,
        window.x_max,
        spec,
    );
    if let Some(e) = inner_failure {
        return Err(e);
    }
    let outer = outer.map_err(|e| e.into_error(Some(Axis::Outer)))?;
    Ok(Integral {
        value: outer.value,
        error: outer.error + inner_error * (window.x_max - window.x_min) / outer.subdivisions.max(1) as f64,
        subdivisions: outer.subdivisions,
    })
}
