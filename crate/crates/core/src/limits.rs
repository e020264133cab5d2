//! Closed-form antenna limits: Chu and Harrington bounds on directivity and
//! Q for an antenna inside a sphere, Hannan's element-gain limit for dense
//! arrays, embedded element efficiency, and the sectored beam model.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::em::CarrierConfig;
use crate::error::{Error, Result};
use crate::numerics::gauss_legendre;

/// Smallest sphere enclosing the antenna.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereEnclosure {
    pub radius_m: f64,
    /// `k0 · r_e`
    pub electrical_size: f64,
}

impl SphereEnclosure {
    pub fn new(radius_m: f64, carrier: &CarrierConfig) -> Result<Self> {
        if !(radius_m.is_finite() && radius_m > 0.0) {
            return Err(Error::validation("enclosing radius must be positive"));
        }
        Ok(SphereEnclosure {
            radius_m,
            electrical_size: carrier.k0() * radius_m,
        })
    }

    pub fn from_electrical_size(ka: f64, carrier: &CarrierConfig) -> Result<Self> {
        if !(ka.is_finite() && ka > 0.0) {
            return Err(Error::validation("electrical size must be positive"));
        }
        Ok(SphereEnclosure {
            radius_m: ka / carrier.k0(),
            electrical_size: ka,
        })
    }
}

/// Maximum directivity `(k0 r)² + k0 r`. Only accurate for `k0 r > 3`;
/// evaluated for any positive size.
pub fn chu_gain(enc: &SphereEnclosure) -> f64 {
    let x = enc.electrical_size;
    x * x + x
}

/// Minimum Q with a single spherical mode, `1/(k0 r)³ + 1/(k0 r)`.
pub fn chu_q(enc: &SphereEnclosure) -> f64 {
    let x = enc.electrical_size;
    1.0 / (x * x * x) + 1.0 / x
}

/// Normal gain with both TE and TM modes, `(k0 r)² + 2 k0 r`.
pub fn harrington_gain(enc: &SphereEnclosure) -> f64 {
    let x = enc.electrical_size;
    x * x + 2.0 * x
}

pub fn harrington_q(enc: &SphereEnclosure) -> f64 {
    let x = enc.electrical_size;
    1.0 / (2.0 * x * x * x) + 1.0 / x
}

/// Per-element allotment in a large array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementAllotment {
    pub area_m2: f64,
    pub scan_angle_rad: f64,
}

impl ElementAllotment {
    pub fn new(area_m2: f64, scan_angle_rad: f64) -> Result<Self> {
        if !(area_m2.is_finite() && area_m2 > 0.0) {
            return Err(Error::validation("allotted area must be positive"));
        }
        if !(0.0..PI / 2.0).contains(&scan_angle_rad) {
            return Err(Error::validation(format!(
                "scan angle must lie in [0, π/2), got {scan_angle_rad}"
            )));
        }
        Ok(ElementAllotment {
            area_m2,
            scan_angle_rad,
        })
    }
}

/// Hannan element-gain limit `(4πA/λ²) cos θ`.
pub fn hannan_gain(alloc: &ElementAllotment, carrier: &CarrierConfig) -> f64 {
    let lam = carrier.wavelength();
    4.0 * PI * alloc.area_m2 / (lam * lam) * alloc.scan_angle_rad.cos()
}

/// Hannan gain derated by the embedded element efficiency.
pub fn realized_gain(alloc: &ElementAllotment, carrier: &CarrierConfig, efficiency: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&efficiency) {
        return Err(Error::validation(format!(
            "efficiency must lie in [0, 1], got {efficiency}"
        )));
    }
    Ok(hannan_gain(alloc, carrier) * efficiency)
}

/// `πA/λ²`, the dense-array element efficiency ceiling.
///
/// Derived for half-wavelength allotments (where it evaluates to π/4); the
/// formula is exposed as-is for other areas without a claim of validity.
pub fn max_element_efficiency(area_m2: f64, carrier: &CarrierConfig) -> f64 {
    let lam = carrier.wavelength();
    PI * area_m2 / (lam * lam)
}

const EFFICIENCY_GRID: usize = 64;

/// `1 − (1/π²) ∬ |R(α, β)|² dα dβ` over `[0, π]²`, on a fixed 64×64
/// Gauss–Legendre grid.
pub fn embedded_efficiency_reflection<F>(reflection: F) -> Result<f64>
where
    F: Fn(f64, f64) -> Complex64,
{
    let (x, w) = gauss_legendre(EFFICIENCY_GRID);
    let half = PI / 2.0;
    let mut acc = 0.0;
    for (xa, wa) in x.iter().zip(&w) {
        let a = half * (xa + 1.0);
        for (xb, wb) in x.iter().zip(&w) {
            let b = half * (xb + 1.0);
            let r2 = reflection(a, b).norm_sqr();
            if !r2.is_finite() {
                return Err(Error::Numerical {
                    stage: "embedded efficiency quadrature".into(),
                    residual: f64::INFINITY,
                });
            }
            if r2 > 1.0 + 1e-12 {
                return Err(Error::validation(format!(
                    "|R({a:.4}, {b:.4})| = {} exceeds 1",
                    r2.sqrt()
                )));
            }
            acc += wa * wb * r2;
        }
    }
    let integral = acc * half * half;
    Ok((1.0 - integral / (PI * PI)).clamp(0.0, 1.0))
}

/// `1 − Σ|S_ij|²` over one row of a passive scattering matrix.
pub fn embedded_efficiency_sparams(s_row: &[Complex64]) -> Result<f64> {
    let total: f64 = s_row.iter().map(|s| s.norm_sqr()).sum();
    if !total.is_finite() || total > 1.0 + 1e-12 {
        return Err(Error::validation(format!(
            "Σ|S_ij|² = {total} exceeds 1: network is not passive"
        )));
    }
    Ok((1.0 - total).max(0.0))
}

/// Two-level sectored gain pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectoredPattern {
    pub gain_max: f64,
    pub gain_min: f64,
    pub beamwidth_rad: f64,
}

impl SectoredPattern {
    pub fn new(gain_max: f64, gain_min: f64, beamwidth_rad: f64) -> Result<Self> {
        if !(gain_min >= 0.0 && gain_max >= gain_min) {
            return Err(Error::validation("need gain_max ≥ gain_min ≥ 0"));
        }
        if !(beamwidth_rad > 0.0) {
            return Err(Error::validation("beamwidth must be positive"));
        }
        Ok(SectoredPattern {
            gain_max,
            gain_min,
            beamwidth_rad,
        })
    }
}

/// The boundary `|angle| = beamwidth` belongs to the main sector.
pub fn sectored_gain(pattern: &SectoredPattern, angle_rad: f64) -> f64 {
    if angle_rad.abs() <= pattern.beamwidth_rad {
        pattern.gain_max
    } else {
        pattern.gain_min
    }
}

/// Total gain of an aligned BS/user pair with sectored patterns.
pub fn link_gain(bs: &SectoredPattern, bs_angle: f64, user: &SectoredPattern, user_angle: f64) -> f64 {
    sectored_gain(bs, bs_angle) * sectored_gain(user, user_angle)
}
