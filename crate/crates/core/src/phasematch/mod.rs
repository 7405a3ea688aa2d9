//! Phase-matching cartography: the Δk = 0 contour in pump-frequency and
//! detuning space, branch labels and the joint-spectrum orientation angle.

use serde::Serialize;

use crate::constants::{omega_from_wavelength, wavelength_from_omega};
use crate::dispersion::Dispersion;
use crate::efficiency::{eta_dp_closed, eta_pulsed_numeric, EfficiencyResult};
use crate::error::{Error, Result};
use crate::numerics::try_derivative_step;
use crate::sfwm::{Branch, Side, Source};

/// Relative step for the Δk gradient.
const GRADIENT_STEP: f64 = 1e-4;
/// Gradients smaller than this fraction of β1 leave the angle undefined.
const GRADIENT_FLOOR: f64 = 1e-12;

/// Angle in degrees folded into (−90, 90].
pub fn fold_angle(deg: f64) -> f64 {
    let mut a = deg % 180.0;
    if a <= -90.0 {
        a += 180.0;
    } else if a > 90.0 {
        a -= 180.0;
    }
    a
}

/// Orientation of the Δk = 0 level curve through (ω_s, ω_i) with respect to
/// the ω_s axis, `atan2(−∂Δk/∂ω_s, ∂Δk/∂ω_i)` folded into (−90°, 90°].
/// The first pump stays at its carrier.
pub fn orientation_angle(omega_s: f64, omega_i: f64, source: &Source) -> Result<f64> {
    let w1 = source.pumps().0.omega;
    let h = GRADIENT_STEP * omega_s;
    let gs = try_derivative_step(|x| source.phase_mismatch(w1, x, omega_i), omega_s, h)?;
    let gi = try_derivative_step(|x| source.phase_mismatch(w1, omega_s, x), omega_i, h)?;
    let scale = source.fiber().beta1(omega_s)?.abs();
    if gs.hypot(gi) < GRADIENT_FLOOR * scale {
        return Err(Error::UndefinedOrientation);
    }
    Ok(fold_angle((-gs).atan2(gi).to_degrees()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchLabel {
    Outer,
    Inner,
}

impl BranchLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            BranchLabel::Outer => "outer",
            BranchLabel::Inner => "inner",
        }
    }
}

/// One point of the degenerate-pump phase-matching contour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourPoint {
    pub pump_frequency: f64,
    /// ω_s − ω_p, rad/s.
    pub detuning_signal: f64,
    /// ω_i − ω_p, rad/s.
    pub detuning_idler: f64,
    pub theta_si: f64,
    pub branch: BranchLabel,
}

impl ContourPoint {
    pub fn pump_wavelength(&self) -> f64 {
        wavelength_from_omega(self.pump_frequency)
    }
}

/// Labels each positive detuning outer or inner by two-means clustering
/// of the magnitudes; a lone solution is outer.
pub fn label_branches(detunings: &[f64]) -> Vec<BranchLabel> {
    let n = detunings.len();
    if n < 2 {
        return vec![BranchLabel::Outer; n];
    }
    let mags: Vec<f64> = detunings.iter().map(|d| d.abs()).collect();
    let (mut lo, mut hi) = (
        mags.iter().copied().fold(f64::INFINITY, f64::min),
        mags.iter().copied().fold(0.0, f64::max),
    );
    let mut labels = vec![BranchLabel::Outer; n];
    for _ in 0..50 {
        for (l, m) in labels.iter_mut().zip(&mags) {
            *l = if (m - hi).abs() <= (m - lo).abs() {
                BranchLabel::Outer
            } else {
                BranchLabel::Inner
            };
        }
        let mean = |want: BranchLabel| {
            let sel: Vec<f64> = mags.iter().zip(&labels).filter(|(_, l)| **l == want).map(|(m, _)| *m).collect();
            (!sel.is_empty()).then(|| sel.iter().sum::<f64>() / sel.len() as f64)
        };
        let (new_hi, new_lo) = (mean(BranchLabel::Outer).unwrap_or(hi), mean(BranchLabel::Inner).unwrap_or(lo));
        if new_hi == hi && new_lo == lo {
            break;
        }
        hi = new_hi;
        lo = new_lo;
    }
    labels
}

/// Evenly spaced pump wavelengths (m) over `range`, inclusive.
pub fn pump_grid(range: (f64, f64), n_points: usize) -> Vec<f64> {
    let n = n_points.max(2);
    (0..n)
        .map(|k| range.0 + (range.1 - range.0) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Source with both pumps moved to `lambda_p`, sharing the fiber table.
pub fn retuned(source: &Source, lambda_p: f64) -> Result<Source> {
    let (p1, _) = source.pumps();
    let pump = crate::sfwm::PumpSpec {
        omega: omega_from_wavelength(lambda_p),
        ..*p1
    };
    source.with_pumps(pump, pump)
}

/// Δk = 0 contour for degenerate pumps swept over `pump_range` (m).
/// Pump wavelengths without a solution contribute no points.
pub fn contour(source: &Source, pump_range: (f64, f64), n_points: usize) -> Result<Vec<ContourPoint>> {
    let mut points = Vec::new();
    let mut lambdas = pump_grid(pump_range, n_points);
    lambdas.sort_by(|a, b| b.total_cmp(a)); // ascending pump frequency
    for lambda_p in lambdas {
        let src = retuned(source, lambda_p)?;
        let wp = src.pumps().0.omega;
        let roots = src.phasematch_roots(Side::SignalAbove)?;
        let detunings: Vec<f64> = roots.iter().map(|ws| ws - wp).collect();
        let labels = label_branches(&detunings);
        for (d, label) in detunings.iter().zip(labels) {
            for sign in [1.0, -1.0] {
                let (ws, wi) = (wp + sign * d, wp - sign * d);
                let theta = orientation_angle(ws, wi, &src)?;
                points.push(ContourPoint {
                    pump_frequency: wp,
                    detuning_signal: ws - wp,
                    detuning_idler: wi - wp,
                    theta_si: theta,
                    branch: label,
                });
            }
        }
    }
    Ok(points)
}

/// Efficiency at one outer-branch contour point.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientationRow {
    pub pump_wavelength: f64,
    pub theta_si: f64,
    pub numeric: Result<EfficiencyResult>,
    pub closed: Result<EfficiencyResult>,
}

/// Numerical and closed-form efficiencies along the outer branch of the
/// contour, one row per pump wavelength that phase-matches.
pub fn efficiency_vs_orientation(source: &Source, pump_range: (f64, f64), n_points: usize) -> Result<Vec<OrientationRow>> {
    let mut rows = Vec::new();
    for lambda_p in pump_grid(pump_range, n_points) {
        let src = retuned(source, lambda_p)?;
        let center = match src.phasematch_center(Branch::Outer, Side::SignalAbove) {
            Ok(c) => c,
            Err(Error::NoPhasematch { .. }) => continue,
            Err(e) => return Err(e),
        };
        let theta_si = orientation_angle(center.omega_s, center.omega_i, &src)?;
        rows.push(OrientationRow {
            pump_wavelength: lambda_p,
            theta_si,
            numeric: eta_pulsed_numeric(&src),
            closed: eta_dp_closed(&src),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folding() {
        assert_eq!(fold_angle(139.98), 139.98 - 180.0);
        assert_eq!(fold_angle(-90.0), 90.0);
        assert_eq!(fold_angle(90.0), 90.0);
        assert_eq!(fold_angle(-45.0), -45.0);
        assert_eq!(fold_angle(-135.0), 45.0);
    }

    #[test]
    fn two_means_split() {
        let labels = label_branches(&[1.0, 1.1, 5.0, 5.2]);
        use BranchLabel::*;
        assert_eq!(labels, vec![Inner, Inner, Outer, Outer]);
        assert_eq!(label_branches(&[3.0]), vec![Outer]);
    }
}
