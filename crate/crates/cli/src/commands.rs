//! Subcommand implementations. Each returns an [`Output`] without touching
//! the filesystem.

use rayon::prelude::*;
use serde::Serialize;
use num_complex::Complex64;
use serde_json::json;

use sfwm_core::config::THZ;
use sfwm_core::constants::{omega_from_wavelength, wavelength_from_omega};
use sfwm_core::dispersion::{find_zero_dispersion, nonlinear_parameters, Dispersion, DispersionModel, Fiber};
use sfwm_core::efficiency::{
    eta_cw, eta_dp_closed, eta_ndp_closed, eta_pulsed_numeric, l_max, sigma_max, EfficiencyResult,
};
use sfwm_core::phasematch::{contour, orientation_angle, retuned};
use sfwm_core::sfwm::{
    default_window, jsa, peak_power, photons_per_pulse, Branch, PumpSpec, Side, Source, SourceConfig,
};

use crate::args::{Command, MethodArg, SweepMethod, SweepParameter};
use crate::error::CliError;
use crate::stats::linear_r2;
use crate::svg::{heatmap, line_plot, scatter_plot, Series};
use crate::table::{fixed, opt, sci, Table};
use crate::Output;

/// Minimum fraction of sweep points that must succeed.
pub const SWEEP_SUCCESS_FRACTION: f64 = 0.9;

pub fn dispatch(command: &Command, config: SourceConfig) -> Result<Output, CliError> {
    match command {
        Command::Dispersion { range, points } => dispersion(&config, pair(range, "--range")?, *points),
        Command::Gamma => gamma(&Source::new(config)?),
        Command::Efficiency { method } => efficiency(&Source::new(config)?, *method),
        Command::Sweep {
            parameter,
            range,
            points,
            method,
            with_cw,
        } => sweep(&Source::new(config)?, *parameter, pair(range, "--range")?, *points, *method, *with_cw),
        Command::Jsa { points } => {
            let (ns, ni) = (points[0], points[1]);
            joint_spectrum(&Source::new(config)?, ns, ni)
        }
        Command::Contour { pump_range, points } => {
            phase_contour(&Source::new(config)?, pair(pump_range, "--pump-range")?, *points)
        }
    }
}

fn pair(v: &[f64], flag: &str) -> Result<(f64, f64), CliError> {
    match v {
        [a, b] if a.is_finite() && b.is_finite() && a < b => Ok((*a, *b)),
        _ => Err(CliError::Config(format!("{flag} needs two finite values in increasing order"))),
    }
}

/// Point `k` of `n` evenly spaced values from `range.0` to `range.1`.
fn grid_value(range: (f64, f64), k: usize, n: usize) -> f64 {
    let m = (n - 1) as f64;
    (range.0 * (m - k as f64) + range.1 * k as f64) / m
}

fn um(omega: f64) -> f64 {
    wavelength_from_omega(omega) * 1e6
}

fn json_bytes(value: &impl Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("results serialize");
    s.push('\n');
    s.into_bytes()
}

/// Human-readable echo of the loaded configuration.
pub fn summary(config: &SourceConfig) -> Vec<String> {
    let f = &config.fiber;
    let model = match f.model {
        DispersionModel::StepIndexPcf => "step_index_pcf",
        DispersionModel::Taylor(_) => "taylor_coefficients",
    };
    let mut lines = vec![format!(
        "fiber: core radius {:.4} um, air fill {}, length {} m, n2 {:e} m^2/W, model {model}",
        f.core_radius * 1e6,
        f.air_fill_fraction,
        f.length,
        f.n2
    )];
    let pumps: Vec<(&str, &PumpSpec)> = if config.degenerate {
        vec![("pump (degenerate)", &config.pump1)]
    } else {
        vec![("pump1", &config.pump1), ("pump2", &config.pump2)]
    };
    for (name, p) in pumps {
        let line = match peak_power(p) {
            Ok(peak) => format!(
                "{name}: {:.4} um, sigma {:e} rad/s, average {:e} W, peak power {:.4} W",
                p.wavelength() * 1e6,
                p.sigma,
                p.avg_power,
                peak
            ),
            Err(_) => format!("{name}: {:.4} um, monochromatic, power {:e} W", p.wavelength() * 1e6, p.avg_power),
        };
        lines.push(line);
    }
    lines
}

fn dispersion(config: &SourceConfig, range: (f64, f64), points: usize) -> Result<Output, CliError> {
    if points < 2 {
        return Err(CliError::Config("--points must be at least 2".into()));
    }
    if range.0 <= 0.0 {
        return Err(CliError::Config("--range must be positive wavelengths in um".into()));
    }
    let fiber = Fiber::new(config.fiber.clone())?;
    let mut table = Table::new(vec!["lambda_um", "n_eff", "beta1_ps_per_m", "beta2_ps2_per_m"]);
    let mut warnings = Vec::new();
    let mut curve = Vec::new();
    for k in 0..points {
        let lambda = grid_value(range, k, points);
        let w = omega_from_wavelength(lambda * 1e-6);
        let values = fiber
            .effective_index(w)
            .and_then(|n| Ok((n, fiber.beta1(w)?, fiber.beta2(w)?)));
        match values {
            Ok((n, b1, b2)) => {
                curve.push((lambda, b2 * 1e24));
                table.rows.push(vec![fixed(lambda, 6), sci(n), sci(b1 * 1e12), sci(b2 * 1e24)]);
            }
            Err(e) => {
                warnings.push(format!("{lambda:.6} um: {e}"));
                table.rows.push(vec![fixed(lambda, 6), String::new(), String::new(), String::new()]);
            }
        }
    }
    match find_zero_dispersion(&fiber, range.0 * 1e-6, range.1 * 1e-6) {
        Ok(zdw) => table.footer.extend(zdw.iter().map(|l| format!("zdw_um {}", fixed(l * 1e6, 6)))),
        Err(e) => warnings.push(format!("zero-dispersion search failed: {e}")),
    }
    let svg = line_plot(
        "Group-velocity dispersion",
        "wavelength (um)",
        "beta2 (ps^2/m)",
        &[Series { name: "beta2".into(), points: curve }],
    );
    Ok(Output {
        primary: table.to_bytes(),
        svg: Some(svg),
        warnings,
        status: None,
    })
}

fn gamma(src: &Source) -> Result<Output, CliError> {
    let (p1, p2) = src.pumps();
    let center = src.phasematch_center(Branch::Outer, Side::SignalAbove)?;
    let nl = nonlinear_parameters(&src.config().fiber, p1.omega, p2.omega, center.omega_s, center.omega_i)?;
    let peak = |p: &PumpSpec| peak_power(p).ok();
    let photons = |p: &PumpSpec| photons_per_pulse(p).ok();
    let value = json!({
        "gamma_per_W_km": nl.gamma_sfwm * 1e3,
        "gamma_pump1_per_W_km": nl.gamma_pump_1 * 1e3,
        "gamma_pump2_per_W_km": nl.gamma_pump_2 * 1e3,
        "a_eff_um2": nl.a_eff * 1e12,
        "lambda_s_um": um(center.omega_s),
        "lambda_i_um": um(center.omega_i),
        "peak_power_W": [peak(p1), peak(p2)],
        "photons_per_pulse": [photons(p1), photons(p2)],
        "nonlinear_shift_per_m": src.nonlinear_shift(),
    });
    Ok(Output {
        primary: json_bytes(&value),
        ..Output::default()
    })
}

fn closed_for(src: &Source) -> sfwm_core::Result<EfficiencyResult> {
    if src.config().degenerate {
        eta_dp_closed(src)
    } else {
        eta_ndp_closed(src)
    }
}

/// The same source with monochromatic pumps at the average powers.
fn cw_companion(src: &Source) -> sfwm_core::Result<Source> {
    let (p1, p2) = src.pumps();
    src.with_pumps(PumpSpec::cw(p1.wavelength(), p1.avg_power), PumpSpec::cw(p2.wavelength(), p2.avg_power))
}

fn efficiency(src: &Source, method: MethodArg) -> Result<Output, CliError> {
    let cw = src.config().is_cw();
    let regime = |want_cw: bool, name: &str| -> Result<(), CliError> {
        if want_cw == cw {
            Ok(())
        } else if cw {
            Err(CliError::Config(format!("method {name} needs pulsed pumps (sigma_THz > 0)")))
        } else {
            Err(CliError::Config(format!("method {name} needs monochromatic pumps (sigma_THz = 0)")))
        }
    };
    let attempts: Vec<(&str, sfwm_core::Result<EfficiencyResult>)> = match method {
        MethodArg::Numeric => {
            regime(false, "numeric")?;
            vec![("numeric_pulsed", eta_pulsed_numeric(src))]
        }
        MethodArg::Closed => {
            regime(false, "closed")?;
            vec![("closed", closed_for(src))]
        }
        MethodArg::Cw => {
            regime(true, "cw")?;
            vec![("cw", eta_cw(src))]
        }
        MethodArg::All if cw => vec![("cw", eta_cw(src))],
        MethodArg::All => vec![("numeric_pulsed", eta_pulsed_numeric(src)), ("closed", closed_for(src))],
    };
    let mut results = Vec::new();
    let mut failures = Vec::new();
    let mut status = None;
    for (name, r) in attempts {
        match r {
            Ok(r) => results.push(r),
            Err(e) => {
                failures.push(json!({ "method": name, "error": e.to_string() }));
                status.get_or_insert(CliError::from(e));
            }
        }
    }
    let mut differences = Vec::new();
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            differences.push(json!({
                "a": a.method.as_str(),
                "b": b.method.as_str(),
                "relative_difference": (a.eta - b.eta) / b.eta,
            }));
        }
    }
    let value = json!({
        "results": results,
        "relative_differences": differences,
        "failures": failures,
    });
    Ok(Output {
        primary: json_bytes(&value),
        status,
        ..Output::default()
    })
}

fn point_source(base: &Source, parameter: SweepParameter, value: f64) -> sfwm_core::Result<Source> {
    let (p1, p2) = (*base.pumps().0, *base.pumps().1);
    match parameter {
        SweepParameter::Length => base.with_length(value),
        SweepParameter::Power => base.with_pumps(p1.with_power(value * 1e-3), p2.with_power(value * 1e-3)),
        SweepParameter::Bandwidth => base.with_pumps(p1.with_sigma(value * THZ), p2.with_sigma(value * THZ)),
        SweepParameter::PumpWavelength if base.config().degenerate => retuned(base, value * 1e-6),
        SweepParameter::PumpWavelength => {
            let moved = PumpSpec {
                omega: omega_from_wavelength(value * 1e-6),
                ..p1
            };
            base.with_pumps(moved, p2)
        }
    }
}

#[derive(Debug, Default)]
struct SweepRow {
    value: f64,
    numeric: Option<EfficiencyResult>,
    closed: Option<EfficiencyResult>,
    cw: Option<EfficiencyResult>,
    theta_si: Option<f64>,
    errors: Vec<String>,
    ok: bool,
}

fn sweep_point(base: &Source, parameter: SweepParameter, value: f64, method: SweepMethod, with_cw: bool) -> SweepRow {
    let mut row = SweepRow {
        value,
        ..SweepRow::default()
    };
    let src = match point_source(base, parameter, value) {
        Ok(s) => s,
        Err(e) => {
            row.errors.push(e.to_string());
            return row;
        }
    };
    let keep = |label: &str, r: sfwm_core::Result<EfficiencyResult>, errors: &mut Vec<String>| match r {
        Ok(r) => Some(r),
        Err(e) => {
            errors.push(format!("{label}: {e}"));
            None
        }
    };
    if src.config().is_cw() {
        row.cw = keep("cw", eta_cw(&src), &mut row.errors);
        row.ok = row.cw.is_some();
    } else {
        if method != SweepMethod::Closed {
            row.numeric = keep("numeric", eta_pulsed_numeric(&src), &mut row.errors);
        }
        if method != SweepMethod::Numeric {
            row.closed = keep("closed", closed_for(&src), &mut row.errors);
        }
        if with_cw {
            row.cw = keep("cw", cw_companion(&src).and_then(|s| eta_cw(&s)), &mut row.errors);
        }
        row.ok = match method {
            SweepMethod::Closed => row.closed.is_some(),
            _ => row.numeric.is_some(),
        };
    }
    row.theta_si = src
        .phasematch_center(Branch::Outer, Side::SignalAbove)
        .and_then(|c| orientation_angle(c.omega_s, c.omega_i, &src))
        .ok();
    row
}

fn sweep(
    base: &Source,
    parameter: SweepParameter,
    range: (f64, f64),
    points: usize,
    method: SweepMethod,
    with_cw: bool,
) -> Result<Output, CliError> {
    if points < 2 {
        return Err(CliError::Config("--points must be at least 2".into()));
    }
    let values: Vec<f64> = (0..points).map(|k| grid_value(range, k, points)).collect();
    // Probe the first point for configuration errors before fanning out.
    point_source(base, parameter, values[0])?;
    let rows: Vec<SweepRow> = values
        .par_iter()
        .map(|&v| sweep_point(base, parameter, v, method, with_cw))
        .collect();

    let (column, axis) = match parameter {
        SweepParameter::Length => ("length_m", "fiber length (m)"),
        SweepParameter::Power => ("power_mW", "average pump power (mW)"),
        SweepParameter::Bandwidth => ("sigma_THz", "pump bandwidth sigma (THz)"),
        SweepParameter::PumpWavelength => ("pump_wavelength_um", "pump wavelength (um)"),
    };
    let mut table = Table::new(vec![
        column,
        "eta_numeric",
        "eta_closed",
        "eta_cw",
        "pairs_per_second",
        "theta_si_deg",
        "error",
    ]);
    let eta = |r: &Option<EfficiencyResult>| r.as_ref().map(|r| r.eta);
    for r in &rows {
        let pairs = r.numeric.as_ref().or(r.closed.as_ref()).or(r.cw.as_ref()).map(|r| r.pairs_per_second);
        table.rows.push(vec![
            sci(r.value),
            opt(eta(&r.numeric)),
            opt(eta(&r.closed)),
            opt(eta(&r.cw)),
            opt(pairs),
            r.theta_si.map(|t| fixed(t, 4)).unwrap_or_default(),
            r.errors.join("; "),
        ]);
    }
    let succeeded = rows.iter().filter(|r| r.ok).count();
    table.footer.push(format!("points_succeeded {succeeded}/{}", rows.len()));
    let mut series = Vec::new();
    for (name, pick) in [
        ("eta_numeric", &(|r: &SweepRow| eta(&r.numeric)) as &dyn Fn(&SweepRow) -> Option<f64>),
        ("eta_closed", &|r: &SweepRow| eta(&r.closed)),
        ("eta_cw", &|r: &SweepRow| eta(&r.cw)),
    ] {
        let pts: Vec<(f64, f64)> = rows.iter().filter_map(|r| pick(r).map(|y| (r.value, y))).collect();
        if pts.is_empty() {
            continue;
        }
        let (xs, ys): (Vec<f64>, Vec<f64>) = pts.iter().copied().unzip();
        if let Some(r2) = linear_r2(&xs, &ys) {
            table.footer.push(format!("linear_fit_r2 {name} {}", fixed(r2, 8)));
        }
        series.push(Series {
            name: name.into(),
            points: pts,
        });
    }
    if !base.config().is_cw() && !base.config().degenerate {
        if let Ok(l) = l_max(base) {
            table.footer.push(format!("l_max_m {}", sci(l)));
        }
        if let Ok(s) = sigma_max(base) {
            table.footer.push(format!("sigma_max_rad_s {}", sci(s)));
        }
    }
    let status = (succeeded as f64) < SWEEP_SUCCESS_FRACTION * rows.len() as f64;
    Ok(Output {
        primary: table.to_bytes(),
        svg: Some(line_plot("Conversion efficiency", axis, "eta", &series)),
        warnings: Vec::new(),
        status: status.then(|| {
            CliError::Numerical(format!("only {succeeded} of {} sweep points succeeded", rows.len()))
        }),
    })
}

fn joint_spectrum(src: &Source, ns: usize, ni: usize) -> Result<Output, CliError> {
    if ns < 2 || ni < 2 {
        return Err(CliError::Config("--points needs at least 2 x 2".into()));
    }
    if src.config().is_cw() {
        return Err(CliError::Config("the joint spectrum needs pulsed pumps".into()));
    }
    let center = src.phasematch_center(Branch::Outer, Side::SignalAbove)?;
    let window = default_window(src, &center)?;
    let axis = |(a, b): (f64, f64), n: usize| -> Vec<f64> {
        (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
    };
    let (ws, wi) = (axis(window.omega_s, ns), axis(window.omega_i, ni));
    let rows: Vec<sfwm_core::Result<Vec<Complex64>>> = ws
        .par_iter()
        .map(|&s| wi.iter().map(|&i| jsa(s, i, src)).collect())
        .collect();
    let mut grid = Vec::with_capacity(rows.len());
    for r in rows {
        grid.push(r?);
    }
    let mut table = Table::new(vec![
        "omega_s_rad_s",
        "omega_i_rad_s",
        "lambda_s_um",
        "lambda_i_um",
        "abs_f",
        "re_f",
        "im_f",
    ]);
    for (s, row) in ws.iter().zip(&grid) {
        for (i, f) in wi.iter().zip(row) {
            table.rows.push(vec![
                sci(*s),
                sci(*i),
                fixed(um(*s), 6),
                fixed(um(*i), 6),
                sci(f.norm()),
                sci(f.re),
                sci(f.im),
            ]);
        }
    }
    table.footer.push(format!(
        "center_lambda_s_um {} center_lambda_i_um {}",
        fixed(um(center.omega_s), 6),
        fixed(um(center.omega_i), 6)
    ));
    let mags: Vec<Vec<f64>> = grid.iter().map(|r| r.iter().map(|f| f.norm()).collect()).collect();
    let scale = |v: &[f64]| v.iter().map(|w| w * 1e-15).collect::<Vec<_>>();
    let svg = heatmap(
        "Joint spectral amplitude |f|",
        "omega_s (1e15 rad/s)",
        "omega_i (1e15 rad/s)",
        &scale(&ws),
        &scale(&wi),
        &mags,
    );
    Ok(Output {
        primary: table.to_bytes(),
        svg: Some(svg),
        ..Output::default()
    })
}

fn phase_contour(src: &Source, range: (f64, f64), points: usize) -> Result<Output, CliError> {
    if points < 2 {
        return Err(CliError::Config("--points must be at least 2".into()));
    }
    if !src.config().degenerate {
        return Err(CliError::Config("the contour is defined for degenerate pumps (omit pump2)".into()));
    }
    let mut pts = contour(src, (range.0 * 1e-6, range.1 * 1e-6), points)?;
    pts.sort_by(|a, b| a.pump_wavelength().total_cmp(&b.pump_wavelength()));
    let mut table = Table::new(vec!["lambda_p_um", "delta_s_rad_s", "delta_i_rad_s", "theta_si_deg", "branch"]);
    for p in &pts {
        table.rows.push(vec![
            fixed(p.pump_wavelength() * 1e6, 6),
            sci(p.detuning_signal),
            sci(p.detuning_idler),
            fixed(p.theta_si, 4),
            p.branch.as_str().to_string(),
        ]);
    }
    let mut warnings = Vec::new();
    if pts.is_empty() {
        warnings.push(format!("no phase-matched solutions for pump wavelengths {}-{} um", range.0, range.1));
    } else {
        let lo = pts.first().map(|p| p.pump_wavelength() * 1e6).unwrap_or_default();
        let hi = pts.last().map(|p| p.pump_wavelength() * 1e6).unwrap_or_default();
        table.footer.push(format!("pump_band_um {} {}", fixed(lo, 6), fixed(hi, 6)));
    }
    let scatter: Vec<(f64, f64, f64)> = pts
        .iter()
        .map(|p| (p.detuning_signal * 1e-15, p.pump_wavelength() * 1e6, p.theta_si))
        .collect();
    let svg = scatter_plot(
        "Phase-matching contour",
        "signal detuning (1e15 rad/s)",
        "pump wavelength (um)",
        &scatter,
        (-90.0, 90.0),
        "theta_si (deg)",
    );
    Ok(Output {
        primary: table.to_bytes(),
        svg: Some(svg),
        warnings,
        status: None,
    })
}
