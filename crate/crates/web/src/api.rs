use serde_json::{json, Value};
use sfwm_core::config::parse_config;
use sfwm_core::constants::{omega_from_wavelength, wavelength_from_omega};
use sfwm_core::dispersion::{find_zero_dispersion, Dispersion, Fiber};
use sfwm_core::phasematch::contour;
use sfwm_core::sfwm::{jsa_grid, Branch, Side, Source, SourceConfig};

const MAX_POINTS: usize = 2000;
const MAX_GRID: usize = 201;

fn config(text: &str) -> Result<SourceConfig, String> {
    parse_config(text).map_err(|e| e.to_string())
}

fn axis(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, String> {
    if !(lo > 0.0 && hi > lo) {
        return Err("range must be positive and increasing".into());
    }
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must be between 2 and {MAX_POINTS}"));
    }
    let m = (points - 1) as f64;
    Ok((0..points).map(|k| (lo * (m - k as f64) + hi * k as f64) / m).collect())
}

fn um(omega: f64) -> f64 {
    wavelength_from_omega(omega) * 1e6
}

/// β2 (ps²/m) over `lo_um..hi_um`; entries are null where the mode is cut off.
pub fn dispersion_curve(text: &str, lo_um: f64, hi_um: f64, points: usize) -> Result<String, String> {
    let cfg = config(text)?;
    let fiber = Fiber::new(cfg.fiber).map_err(|e| e.to_string())?;
    let lambda = axis(lo_um, hi_um, points)?;
    let beta2: Vec<Value> = lambda
        .iter()
        .map(|&l| match fiber.beta2(omega_from_wavelength(l * 1e-6)) {
            Ok(b) => json!(b * 1e24),
            Err(_) => Value::Null,
        })
        .collect();
    let zdw: Vec<f64> = find_zero_dispersion(&fiber, lo_um * 1e-6, hi_um * 1e-6)
        .map(|z| z.iter().map(|l| l * 1e6).collect())
        .unwrap_or_default();
    Ok(json!({ "lambda_um": lambda, "beta2_ps2_per_m": beta2, "zdw_um": zdw }).to_string())
}

/// |f| on a `points × points` grid around the outer phase-matched centre,
/// scaled to a maximum of 1. `abs[s][i]`.
pub fn joint_spectrum(text: &str, points: usize) -> Result<String, String> {
    if !(2..=MAX_GRID).contains(&points) {
        return Err(format!("points must be between 2 and {MAX_GRID}"));
    }
    let src = Source::new(config(text)?).map_err(|e| e.to_string())?;
    let center = src
        .phasematch_center(Branch::Outer, Side::SignalAbove)
        .map_err(|e| e.to_string())?;
    let grid = jsa_grid(&src, None, points, points).map_err(|e| e.to_string())?;
    let peak = grid.amplitude.iter().flatten().map(|f| f.norm()).fold(0.0, f64::max);
    let scale = if peak > 0.0 { 1.0 / peak } else { 0.0 };
    let abs: Vec<Vec<f64>> = grid
        .amplitude
        .iter()
        .map(|row| row.iter().map(|f| f.norm() * scale).collect())
        .collect();
    Ok(json!({
        "omega_s_rad_s": grid.omega_s,
        "omega_i_rad_s": grid.omega_i,
        "lambda_s_um": grid.omega_s.iter().map(|&w| um(w)).collect::<Vec<_>>(),
        "lambda_i_um": grid.omega_i.iter().map(|&w| um(w)).collect::<Vec<_>>(),
        "center_um": [um(center.omega_s), um(center.omega_i)],
        "peak_abs": peak,
        "abs": abs,
    })
    .to_string())
}

/// Phase-matched signal and idler wavelengths as the pump is tuned over
/// `lo_um..hi_um`, for degenerate pumps.
pub fn phasematch_contour(text: &str, lo_um: f64, hi_um: f64, points: usize) -> Result<String, String> {
    axis(lo_um, hi_um, points)?;
    let src = Source::new(config(text)?).map_err(|e| e.to_string())?;
    let pts = contour(&src, (lo_um * 1e-6, hi_um * 1e-6), points).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = pts
        .iter()
        .map(|p| {
            json!({
                "lambda_p_um": p.pump_wavelength() * 1e6,
                "lambda_s_um": um(p.pump_frequency + p.detuning_signal),
                "lambda_i_um": um(p.pump_frequency + p.detuning_idler),
                "theta_si_deg": p.theta_si,
                "branch": p.branch.as_str(),
            })
        })
        .collect();
    Ok(json!({ "points": rows }).to_string())
}
