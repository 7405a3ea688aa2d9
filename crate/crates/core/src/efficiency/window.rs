//! Integration windows in the signal-idler half-difference δ = (ω_s − ω_i)/2
//! at fixed sum ω_s + ω_i. A window spans the phase-matched root of
//! `D(δ)` out to where `|L D / 2|` first reaches a given bound, never
//! crossing the pump exclusions or the midpoint to a neighbouring root.

use crate::error::{Axis, Error, Result};
use crate::numerics::{find_all_roots, find_root, integrate_1d, Integral, QuadratureSpec, RootBracket};
use crate::sfwm::Source;

const ROOT_SCAN: usize = 200;
const FIRST_STEP_LOG2: i32 = -40;

/// Allowed δ interval containing `delta_ref` at signal-idler sum `omega_sum`.
pub(crate) fn allowed_interval(source: &Source, omega_sum: f64, delta_ref: f64) -> (f64, f64) {
    let (lo, hi) = source.band();
    let half = 0.5 * omega_sum;
    let mut a = 0.0f64;
    let mut b = (hi - half).min(half - lo);
    let (p1, p2) = source.pumps();
    for p in [p1, p2] {
        let ex = source.exclusion(p);
        // signal near the pump, then idler near the pump
        for centre in [p.omega - half, half - p.omega] {
            let (l, u) = (centre - ex, centre + ex);
            if u <= delta_ref {
                a = a.max(u);
            } else if l >= delta_ref {
                b = b.min(l);
            }
        }
    }
    (a, b)
}

/// Window on one row: `lo < anchor < hi`, with the anchor at the root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RowWindow {
    pub cap_lo: f64,
    pub cap_hi: f64,
    pub anchor: f64,
}

/// Locates the root of `d` nearest to `delta_ref` inside the allowed interval
/// and narrows the caps to the nearest turning points of `d` (zeros of its
/// derivative `slope`) on either side, so the window covers one lobe only.
pub(crate) fn row_window(
    d: &mut impl FnMut(f64) -> f64,
    slope: &mut impl FnMut(f64) -> f64,
    caps: (f64, f64),
    delta_ref: f64,
) -> Option<RowWindow> {
    let (a, b) = caps;
    if !(a < b) {
        return None;
    }
    let roots = find_all_roots(&mut *d, a, b, ROOT_SCAN, 1e-13 * b.abs().max(1.0));
    let nearest = roots
        .iter()
        .enumerate()
        .min_by(|x, y| (x.1 - delta_ref).abs().total_cmp(&(y.1 - delta_ref).abs()));
    let anchor = nearest.map(|(_, &r)| r).unwrap_or(delta_ref.clamp(a, b));
    let turning = find_all_roots(&mut *slope, a, b, ROOT_SCAN, 1e-13 * b.abs().max(1.0));
    let cap_lo = turning.iter().rev().find(|&&t| t < anchor).copied().unwrap_or(a);
    let cap_hi = turning.iter().find(|&&t| t > anchor).copied().unwrap_or(b);
    Some(RowWindow {
        cap_lo,
        cap_hi,
        anchor,
    })
}

/// First δ beyond `anchor` towards `cap` at which `|L D / 2| >= x_max`,
/// or `cap` if the bound is never reached.
pub(crate) fn edge(
    d: &mut impl FnMut(f64) -> f64,
    anchor: f64,
    cap: f64,
    half_length: f64,
    x_max: f64,
) -> Result<f64> {
    let span = cap - anchor;
    if span == 0.0 {
        return Ok(cap);
    }
    let mut x = |t: f64| (half_length * d(anchor + t * span)).abs() - x_max;
    let mut prev = 0.0;
    let mut f_prev = x(0.0);
    if f_prev >= 0.0 {
        return Ok(anchor);
    }
    let mut t = 2f64.powi(FIRST_STEP_LOG2);
    loop {
        let t_now = t.min(1.0);
        let f_now = x(t_now);
        if f_now >= 0.0 {
            let bracket = RootBracket::new(prev, t_now, f_prev, f_now)?;
            let t_edge = find_root(&mut x, bracket, 1e-12)?;
            return Ok(anchor + t_edge * span);
        }
        if t_now >= 1.0 {
            return Ok(cap);
        }
        prev = t_now;
        f_prev = f_now;
        t *= 2.0;
    }
}

/// Integral of `g` over the part of the row's lobe where the phase bound
/// lies between `x_in` and `x_out` (`x_in == 0` means the whole window).
#[allow(clippy::too_many_arguments)]
pub(crate) fn lobe_integral(
    source: &Source,
    omega_sum: f64,
    delta_ref: f64,
    mut d: impl FnMut(f64) -> Result<f64>,
    mut slope: impl FnMut(f64) -> Result<f64>,
    mut g: impl FnMut(f64) -> Result<f64>,
    x_in: f64,
    x_out: f64,
    spec: &QuadratureSpec,
) -> Result<Integral<f64>> {
    let half_length = 0.5 * source.length();
    let mut failure: Option<Error> = None;
    let mut d_val = |x: f64| match d(x) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    };
    let mut slope_failure: Option<Error> = None;
    let mut slope_val = |x: f64| match slope(x) {
        Ok(v) => v,
        Err(e) => {
            slope_failure.get_or_insert(e);
            f64::NAN
        }
    };
    let caps = allowed_interval(source, omega_sum, delta_ref);
    let row = row_window(&mut d_val, &mut slope_val, caps, delta_ref);
    if let Some(e) = slope_failure {
        return Err(e);
    }
    let Some(row) = row else {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
            subdivisions: 0,
        });
    };
    let lo_out = edge(&mut d_val, row.anchor, row.cap_lo, half_length, x_out)?;
    let hi_out = edge(&mut d_val, row.anchor, row.cap_hi, half_length, x_out)?;
    let pieces: Vec<[f64; 2]> = if x_in == 0.0 {
        vec![[lo_out, row.anchor], [row.anchor, hi_out]]
    } else {
        let lo_in = edge(&mut d_val, row.anchor, row.cap_lo, half_length, x_in)?;
        let hi_in = edge(&mut d_val, row.anchor, row.cap_hi, half_length, x_in)?;
        vec![[lo_out, lo_in], [hi_in, hi_out]]
    };
    if let Some(e) = failure {
        return Err(e);
    }
    let mut total = Integral {
        value: 0.0,
        error: 0.0,
        subdivisions: 0,
    };
    for [a, b] in pieces {
        if !(a < b) {
            continue;
        }
        let mut inner_failure: Option<Error> = None;
        let out = integrate_1d(
            |x: f64| match g(x) {
                Ok(v) => v,
                Err(e) => {
                    inner_failure.get_or_insert(e);
                    0.0
                }
            },
            a,
            b,
            spec,
        );
        if let Some(e) = inner_failure {
            return Err(e);
        }
        let out = out.map_err(|e| e.into_error(Some(Axis::Inner)))?;
        total.value += out.value;
        total.error += out.error;
        total.subdivisions += out.subdivisions;
    }
    Ok(total)
}
