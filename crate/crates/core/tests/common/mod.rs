#![allow(dead_code)]

use sfwm_core::constants::omega_from_wavelength;
use sfwm_core::dispersion::FiberSpec;
use sfwm_core::sfwm::{PumpSpec, Source, SourceConfig};

pub fn w(lambda_um: f64) -> f64 {
    omega_from_wavelength(lambda_um * 1e-6)
}

pub fn um(omega: f64) -> f64 {
    sfwm_core::constants::wavelength_from_omega(omega) * 1e6
}

pub fn within(value: f64, target: f64, rel: f64) -> bool {
    ((value - target) / target).abs() <= rel
}

pub fn thick_fiber(length: f64) -> FiberSpec {
    FiberSpec::step_index(0.97e-6, 0.91, length)
}

pub fn degenerate(length: f64) -> Source {
    let pump = PumpSpec::pulsed(0.708e-6, 3e12, 300e-6, 80e6);
    Source::new(SourceConfig::degenerate(thick_fiber(length), pump)).unwrap()
}

pub fn non_degenerate(length: f64) -> Source {
    let p1 = PumpSpec::pulsed(0.521e-6, 3e12, 300e-6, 80e6);
    let p2 = PumpSpec::pulsed(1.042e-6, 3e12, 300e-6, 80e6);
    Source::new(SourceConfig::non_degenerate(thick_fiber(length), p1, p2)).unwrap()
}

pub fn thin_degenerate(lambda_p_um: f64) -> Source {
    let pump = PumpSpec::pulsed(lambda_p_um * 1e-6, 5e12, 300e-6, 80e6);
    Source::new(SourceConfig::degenerate(FiberSpec::step_index(0.5e-6, 0.6, 1.0), pump)).unwrap()
}

pub fn cw(source: &Source) -> Source {
    let (p1, p2) = source.pumps();
    let (a, b) = (PumpSpec::cw(p1.wavelength(), p1.avg_power), PumpSpec::cw(p2.wavelength(), p2.avg_power));
    source.with_pumps(a, b).unwrap()
}
