use crate::em::CarrierConfig;
use crate::error::{Error, Result};
use crate::numerics::{bessel_j0, sinc};

/// Isotropic-scattering correlation kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClarkeKernel {
    /// 3D isotropic, `sin(k0 d)/(k0 d)`.
    #[default]
    Spherical,
    /// 2D (horizontal-plane) isotropic, `J0(k0 d)`.
    Planar,
}

/// Clarke autocorrelation with the spherical kernel.
pub fn clarke_autocorrelation(distance_m: f64, carrier: &CarrierConfig) -> Result<f64> {
    clarke_autocorrelation_with(distance_m, carrier, ClarkeKernel::Spherical)
}

pub fn clarke_autocorrelation_with(distance_m: f64, carrier: &CarrierConfig, kernel: ClarkeKernel) -> Result<f64> {
    if !(distance_m.is_finite() && distance_m >= 0.0) {
        return Err(Error::validation(format!("distance must be non-negative, got {distance_m}")));
    }
    let x = carrier.k0() * distance_m;
    Ok(match kernel {
        ClarkeKernel::Spherical => sinc(x),
        ClarkeKernel::Planar => bessel_j0(x),
    })
}
