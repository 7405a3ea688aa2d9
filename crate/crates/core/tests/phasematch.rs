mod common;

use common::*;
use sfwm_core::dispersion::{DispersionModel, FiberSpec, TaylorDispersion};
use sfwm_core::phasematch::{contour, efficiency_vs_orientation, orientation_angle, retuned, BranchLabel};
use sfwm_core::sfwm::{Branch, PumpSpec, Side, Source, SourceConfig};

fn angle_at_center(src: &Source) -> f64 {
    let c = src.phasematch_center(Branch::Outer, Side::SignalAbove).unwrap();
    orientation_angle(c.omega_s, c.omega_i, src).unwrap()
}

#[test]
fn operating_point_angles() {
    let d = angle_at_center(&degenerate(0.5));
    assert!((d + 40.0).abs() <= 3.0, "{d}");
    let n = angle_at_center(&non_degenerate(0.5));
    assert!((n + 41.0).abs() <= 3.0, "{n}");
}

#[test]
fn equal_group_velocities_give_minus_45() {
    // β = β0 + β1 x + β3 x³/6 about ω0 makes β1 even in the detuning, so
    // signal and idler placed symmetrically share it.
    let w0 = w(0.8);
    let taylor = TaylorDispersion::new(w0, vec![1.1e7, 4.9e-9, 0.0, 5e-41]).unwrap();
    let mut spec = FiberSpec::step_index(0.97e-6, 0.91, 0.5);
    spec.model = DispersionModel::Taylor(taylor);
    let pump = PumpSpec::pulsed(0.8e-6, 3e12, 300e-6, 80e6);
    let src = Source::new(SourceConfig::degenerate(spec, pump)).unwrap();
    let d = 0.2 * w0;
    let theta = orientation_angle(w0 + d, w0 - d, &src).unwrap();
    assert!((theta + 45.0).abs() < 1e-6, "{theta}");
}

#[test]
fn angle_ignores_gradient_scale() {
    let src = degenerate(0.5);
    let c = src.phasematch_center(Branch::Outer, Side::SignalAbove).unwrap();
    let a = orientation_angle(c.omega_s, c.omega_i, &src).unwrap();
    let longer = src.with_length(2.0).unwrap();
    let b = orientation_angle(c.omega_s, c.omega_i, &longer).unwrap();
    assert_eq!(a, b);
    assert!(a > -90.0 && a <= 90.0);
}

#[test]
fn thin_fiber_loop() {
    let src = thin_degenerate(0.75);
    let points = contour(&src, (0.63e-6, 0.89e-6), 105).unwrap();
    assert!(!points.is_empty());
    let lams: Vec<f64> = points.iter().map(|p| p.pump_wavelength() * 1e6).collect();
    let lo = lams.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = lams.iter().copied().fold(0.0, f64::max);
    assert!((lo - 0.666).abs() <= 0.015, "{lo}");
    assert!((hi - 0.843).abs() <= 0.015, "{hi}");
    let thetas: Vec<f64> = points.iter().map(|p| p.theta_si).collect();
    assert!(thetas.iter().any(|t| *t < -85.0) && thetas.iter().any(|t| *t > 85.0));
    for pair in points.windows(2) {
        assert!(pair[1].pump_frequency >= pair[0].pump_frequency);
    }
}

#[test]
fn contour_points_are_phase_matched_and_symmetric() {
    let src = thin_degenerate(0.75);
    let points = contour(&src, (0.67e-6, 0.84e-6), 18).unwrap();
    for p in &points {
        let s = retuned(&src, p.pump_wavelength()).unwrap();
        let (ws, wi) = (p.pump_frequency + p.detuning_signal, p.pump_frequency + p.detuning_idler);
        let dk = s.phase_mismatch(p.pump_frequency, ws, wi).unwrap();
        assert!(dk.abs() < 1e-6, "{dk}");
        assert!((p.detuning_signal + p.detuning_idler).abs() <= 1e-6 * p.detuning_signal.abs());
        let mirrored = points.iter().any(|q| {
            q.pump_frequency == p.pump_frequency && q.detuning_signal == p.detuning_idler && q.branch == p.branch
        });
        assert!(mirrored);
    }
    let mut by_pump: Vec<f64> = points.iter().map(|p| p.pump_frequency).collect();
    by_pump.dedup();
    for wp in by_pump {
        let at: Vec<_> = points.iter().filter(|p| p.pump_frequency == wp).collect();
        let outer = at.iter().filter(|p| p.branch == BranchLabel::Outer).map(|p| p.detuning_signal.abs());
        let inner = at.iter().filter(|p| p.branch == BranchLabel::Inner).map(|p| p.detuning_signal.abs());
        let min_outer = outer.fold(f64::INFINITY, f64::min);
        let max_inner = inner.fold(0.0, f64::max);
        assert!(min_outer > max_inner);
    }
}

#[test]
fn outside_the_band_is_empty() {
    let src = thin_degenerate(0.75);
    assert!(contour(&src, (0.60e-6, 0.64e-6), 5).unwrap().is_empty());
    assert!(contour(&src, (0.88e-6, 0.92e-6), 5).unwrap().is_empty());
}

#[test]
fn efficiency_peaks_near_minus_45() {
    let src = thin_degenerate(0.75);
    let rows = efficiency_vs_orientation(&src, (0.666e-6, 0.843e-6), 12).unwrap();
    assert!(rows.len() >= 10);
    let eta = |r: &sfwm_core::phasematch::OrientationRow| r.numeric.as_ref().unwrap().eta;
    let best = rows.iter().max_by(|a, b| eta(a).total_cmp(&eta(b))).unwrap();
    let nearest = rows
        .iter()
        .min_by(|a, b| (a.theta_si + 45.0).abs().total_cmp(&(b.theta_si + 45.0).abs()))
        .unwrap();
    assert_eq!(best.pump_wavelength, nearest.pump_wavelength);
    for r in rows.iter().filter(|r| (r.theta_si + 45.0).abs() >= 15.0) {
        let c = r.closed.as_ref().unwrap().eta;
        assert!(((eta(r) - c) / c).abs() <= 0.1, "{} {} {c}", r.pump_wavelength, eta(r));
    }
}
