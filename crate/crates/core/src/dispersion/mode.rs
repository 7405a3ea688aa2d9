//! Fundamental (HE11) mode of a step-index fiber whose cladding is the
//! air-filled region of a photonic crystal fiber.

use std::f64::consts::PI;

use crate::constants::C;
use crate::error::{Error, Result};
use crate::numerics::{
    bessel_j0, bessel_j1, bessel_k0_scaled, bessel_k1_scaled, find_root, integrate_partitioned, QuadratureSpec, RootBracket,
};

use super::silica::silica_index;

/// First zero of J0; the fundamental-mode u always lies below it.
const J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;
const SCAN_POINTS: usize = 48;

/// Effective index of the air/silica cladding: volume average of the two indices.
pub fn cladding_index(n_silica: f64, air_fill_fraction: f64) -> f64 {
    air_fill_fraction + (1.0 - air_fill_fraction) * n_silica
}

/// Eigenvalue solution of the fundamental mode at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSolution {
    pub omega: f64,
    pub core_radius: f64,
    /// Transverse wavenumber in the core, times the core radius.
    pub u: f64,
    /// Transverse decay constant in the cladding, times the core radius.
    pub w: f64,
    pub n_core: f64,
    pub n_clad: f64,
    pub n_eff: f64,
}

impl ModeSolution {
    pub fn v_number(&self) -> f64 {
        (self.u * self.u + self.w * self.w).sqrt()
    }

    pub fn beta(&self) -> f64 {
        self.n_eff * self.omega / C
    }
}

/// Solves the exact HE11 eigenvalue equation
/// `(A + B)(A + (n_cl/n_co)^2 B) = (beta/(k0 n_co))^2 (1/u^2 + 1/w^2)^2`
/// with `A = J1'(u)/(u J1(u))` and `B = K1'(w)/(w K1(w))`.
pub fn solve_fundamental(omega: f64, core_radius: f64, air_fill_fraction: f64) -> Result<ModeSolution> {
    let n_core = silica_index(omega)?;
    let n_clad = cladding_index(n_core, air_fill_fraction);
    let k0 = omega / C;
    let v = core_radius * k0 * (n_core * n_core - n_clad * n_clad).sqrt();
    if !(v > 0.0) {
        return Err(Error::Cutoff { omega });
    }
    let ratio = (n_clad / n_core).powi(2);
    let kn = k0 * n_core;
    let g = |u: f64| -> f64 {
        let w = (v * v - u * u).max(0.0).sqrt();
        let q = u / core_radius;
        let b2 = (kn * kn - q * q) / (kn * kn);
        let (j0, j1) = (bessel_j0(u), bessel_j1(u));
        let a = (j0 - j1 / u) / (u * j1);
        let bk = -bessel_k0_scaled(w) / (w * bessel_k1_scaled(w)) - 1.0 / (w * w);
        let s = 1.0 / (u * u) + 1.0 / (w * w);
        (a + bk) * (a + ratio * bk) / (s * s) - b2
    };

    let u_hi = v.min(J0_FIRST_ZERO) * (1.0 - 1e-12);
    let u_lo = u_hi * 1e-4;
    let mut x0 = u_lo;
    let mut f0 = g(x0);
    for k in 1..=SCAN_POINTS {
        let x1 = u_lo + (u_hi - u_lo) * k as f64 / SCAN_POINTS as f64;
        let f1 = g(x1);
        if f0.is_finite() && f1.is_finite() && f0 * f1 <= 0.0 {
            let u = find_root(g, RootBracket::new(x0, x1, f0, f1)?, 1e-15 * x1)?;
            let w = (v * v - u * u).sqrt();
            let q = u / core_radius;
            let n_eff = (kn * kn - q * q).sqrt() / k0;
            return Ok(ModeSolution {
                omega,
                core_radius,
                u,
                w,
                n_core,
                n_clad,
                n_eff,
            });
        }
        x0 = x1;
        f0 = f1;
    }
    Err(Error::Cutoff { omega })
}

/// Normalized radial field of the fundamental mode at one carrier,
/// `J0(u rho/r)/J0(u)` in the core and `K0(w rho/r)/K0(w)` outside,
/// scaled so that the transverse integral of its square is one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeProfile {
    pub carrier_frequency: f64,
    pub core_radius: f64,
    pub u: f64,
    pub w: f64,
    /// Amplitude scale making the profile unit-normalized.
    pub normalization: f64,
}

impl ModeProfile {
    pub fn from_solution(sol: &ModeSolution) -> Self {
        let (u, w, r) = (sol.u, sol.w, sol.core_radius);
        let (j0, j1) = (bessel_j0(u), bessel_j1(u));
        let k_ratio = bessel_k1_scaled(w) / bessel_k0_scaled(w);
        let core = 0.5 * r * r * (j0 * j0 + j1 * j1) / (j0 * j0);
        let clad = 0.5 * r * r * (k_ratio * k_ratio - 1.0);
        let power = 2.0 * PI * (core + clad);
        Self {
            carrier_frequency: sol.omega,
            core_radius: r,
            u,
            w,
            normalization: 1.0 / power.sqrt(),
        }
    }

    /// Field amplitude at radius `rho` (m).
    pub fn amplitude(&self, rho: f64) -> f64 {
        let x = rho / self.core_radius;
        let shape = if x <= 1.0 {
            bessel_j0(self.u * x) / bessel_j0(self.u)
        } else {
            bessel_k0_scaled(self.w * x) / bessel_k0_scaled(self.w) * (-self.w * (x - 1.0)).exp()
        };
        self.normalization * shape
    }

    /// `(rho, amplitude)` samples on `n` equally spaced radii in [0, rho_max].
    pub fn radial_amplitude(&self, rho_max: f64, n: usize) -> Vec<(f64, f64)> {
        let n = n.max(2);
        (0..n)
            .map(|k| {
                let rho = rho_max * k as f64 / (n - 1) as f64;
                (rho, self.amplitude(rho))
            })
            .collect()
    }
}

/// Radius beyond which the product of the given cladding decays is negligible.
fn outer_radius(core_radius: f64, total_decay: f64) -> f64 {
    core_radius * (1.0 + 60.0 / total_decay)
}

fn overlap_spec() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-11,
        abs_tol: 0.0,
        max_subdivisions: 400,
        panel_order: 15,
    }
}

/// Transverse integral of the product of the given profiles, using azimuthal symmetry.
pub fn transverse_overlap(profiles: &[&ModeProfile]) -> Result<f64> {
    let r = profiles.iter().map(|p| p.core_radius).fold(0.0, f64::max);
    let decay: f64 = profiles.iter().map(|p| p.w).sum();
    let r_out = outer_radius(r, decay);
    let integrand = |rho: f64| 2.0 * PI * rho * profiles.iter().map(|p| p.amplitude(rho)).product::<f64>();
    let out = integrate_partitioned(integrand, &[0.0, r, r_out], &overlap_spec())?;
    Ok(out.value)
}

/// Effective interaction area `1 / ∬ f1 f2 fs fi dx dy` of four real profiles.
pub fn effective_area(profiles: [&ModeProfile; 4]) -> Result<f64> {
    let overlap = transverse_overlap(&profiles)?;
    if !(overlap > 0.0) || !overlap.is_finite() {
        return Err(Error::DegenerateOverlap);
    }
    Ok(1.0 / overlap)
}
