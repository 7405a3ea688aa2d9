use crate::constants::wavelength_from_omega;
use crate::error::{Error, Result};

const B: [f64; 3] = [0.696_166_3, 0.407_942_6, 0.897_479_4];
const L: [f64; 3] = [0.068_404_3, 0.116_241_4, 9.896_161];

/// Sellmeier validity range of fused silica, in micrometres.
pub const SELLMEIER_RANGE_UM: (f64, f64) = (0.21, 3.71);

/// Three-term Sellmeier index of fused silica at a wavelength in micrometres.
pub fn silica_index_um(lambda_um: f64) -> Result<f64> {
    if !(SELLMEIER_RANGE_UM.0..=SELLMEIER_RANGE_UM.1).contains(&lambda_um) {
        return Err(Error::OutOfRange { wavelength_um: lambda_um });
    }
    let l2 = lambda_um * lambda_um;
    let sum: f64 = B.iter().zip(L.iter()).map(|(b, l)| b * l2 / (l2 - l * l)).sum();
    Ok((1.0 + sum).sqrt())
}

/// Fused-silica refractive index at angular frequency `omega` (rad/s).
pub fn silica_index(omega: f64) -> Result<f64> {
    silica_index_um(wavelength_from_omega(omega) * 1e6)
}
