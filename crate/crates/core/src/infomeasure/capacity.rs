use std::f64::consts::PI;

use super::spectrum::{singular_spectrum, EigenSpectrum};
use crate::channels::{los_dyadic_channel, ChannelMatrix, PlanarAperture};
use crate::em::{CarrierConfig, Point3};
use crate::error::{Error, Result};

/// Achievable rate with its per-mode power split.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityResult {
    pub bits_per_s_per_hz: f64,
    pub allocation: Vec<f64>,
    pub snr: f64,
}

/// Default stream count: `min(rows, cols)` of the matrix, which is
/// `min(3M, 3N)` for polarized channels.
pub fn default_streams(h: &ChannelMatrix) -> usize {
    h.nrows().min(h.ncols())
}

/// `Σ_{p ≤ P} log₂(1 + ρ·snr·γ_p²)`; every stream gets power `snr`, so
/// the allocation sums to `P·snr`.
pub fn capacity_uniform(spec: &EigenSpectrum, snr: f64, rho: f64, streams: usize) -> Result<CapacityResult> {
    if !(snr.is_finite() && snr >= 0.0) {
        return Err(Error::validation(format!("snr must be non-negative, got {snr}")));
    }
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::validation(format!("rho must be non-negative, got {rho}")));
    }
    if streams > spec.len() {
        return Err(Error::validation(format!(
            "{streams} streams requested but the spectrum has {} modes",
            spec.len()
        )));
    }
    let bits = spec.singular_values()[..streams]
        .iter()
        .map(|g| (1.0 + rho * snr * g * g).log2())
        .sum();
    Ok(CapacityResult {
        bits_per_s_per_hz: bits,
        allocation: vec![snr; streams],
        snr,
    })
}

const WATER_LEVEL_TOL: f64 = 1e-12;

/// Optimal split of `total_power` over the parallel modes with noise power
/// `noise`: `p_k = max(0, μ − noise/γ_k²)`, `μ` found by bisection.
pub fn capacity_waterfilling(spec: &EigenSpectrum, total_power: f64, noise: f64) -> Result<CapacityResult> {
    if !(total_power.is_finite() && total_power > 0.0) {
        return Err(Error::validation("total power must be positive"));
    }
    if !(noise.is_finite() && noise > 0.0) {
        return Err(Error::validation("noise power must be positive"));
    }
    let gains: Vec<f64> = spec.singular_values().iter().map(|g| g * g / noise).collect();
    let snr = total_power / noise;
    if gains.iter().all(|&g| g == 0.0) {
        return Ok(CapacityResult {
            bits_per_s_per_hz: 0.0,
            allocation: vec![0.0; gains.len()],
            snr,
        });
    }
    let fill = |mu: f64| -> f64 {
        gains
            .iter()
            .filter(|&&g| g > 0.0)
            .map(|&g| (mu - 1.0 / g).max(0.0))
            .sum()
    };
    let best = gains.iter().cloned().fold(0.0, f64::max);
    let mut lo = 1.0 / best;
    let mut hi = lo + total_power;
    while fill(hi) < total_power {
        hi *= 2.0;
    }
    while hi - lo > WATER_LEVEL_TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if fill(mid) < total_power {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = 0.5 * (lo + hi);
    let allocation: Vec<f64> = gains
        .iter()
        .map(|&g| if g > 0.0 { (mu - 1.0 / g).max(0.0) } else { 0.0 })
        .collect();
    let bits = allocation.iter().zip(&gains).map(|(p, g)| (1.0 + p * g).log2()).sum();
    Ok(CapacityResult {
        bits_per_s_per_hz: bits,
        allocation,
        snr,
    })
}

/// Distance coefficients `(ε₁, ε₂, ε₃)` of the Frobenius energy of the
/// dyadic Green's function along separation `d`:
/// `‖G‖²_F = ε₁/d² + ε₂/d⁴ + ε₃/d⁶`.
pub fn epsilon_coefficients(d: Point3, k0: f64) -> Result<[f64; 3]> {
    let n2 = d.dot(&d);
    if !(n2 > 0.0 && n2.is_finite()) {
        return Err(Error::domain("separation must be a non-zero finite vector"));
    }
    let tr = (d.x * d.x + d.y * d.y + d.z * d.z) / n2;
    let c = 1.0 / (16.0 * PI * PI);
    Ok([
        c * (3.0 - tr),
        c / (k0 * k0) * (5.0 * tr - 3.0),
        c / k0.powi(4) * (3.0 * tr + 3.0),
    ])
}

fn bound_sum(tx: &PlanarAperture, rx: &PlanarAperture, carrier: &CarrierConfig, far_field_only: bool) -> Result<f64> {
    let k0 = carrier.k0();
    let mut s = 0.0;
    for r in rx.element_centers() {
        for t in tx.element_centers() {
            let dv = *r - *t;
            let d2 = dv.dot(&dv);
            if d2 == 0.0 {
                return Err(Error::validation("transmit and receive apertures share an element position"));
            }
            let [e1, e2, e3] = epsilon_coefficients(dv, k0)?;
            s += e1 / d2;
            if !far_field_only {
                s += e2 / (d2 * d2) + e3 / (d2 * d2 * d2);
            }
        }
    }
    Ok(s)
}

fn bound(tx: &PlanarAperture, rx: &PlanarAperture, carrier: &CarrierConfig, snr: f64, streams: usize, far: bool) -> Result<f64> {
    if !(snr.is_finite() && snr >= 0.0) {
        return Err(Error::validation("snr must be non-negative"));
    }
    if streams == 0 {
        return Err(Error::validation("need at least one stream"));
    }
    let p = streams as f64;
    let s = bound_sum(tx, rx, carrier, far)?;
    let arg = carrier.rho() * snr / p * rx.element_area_m2() * tx.element_area_m2() * s;
    Ok(p * (1.0 + arg).log2())
}

/// `P·log₂(1 + (ρ·snr/P)·a_R·a_T·Σ_mn (ε₁/d² + ε₂/d⁴ + ε₃/d⁶))`.
///
/// Dominates [`los_capacity_uniform`] whenever `a_R·a_T ≤ 1 m²`.
pub fn capacity_upper_bound(tx: &PlanarAperture, rx: &PlanarAperture, carrier: &CarrierConfig, snr: f64, streams: usize) -> Result<f64> {
    bound(tx, rx, carrier, snr, streams, false)
}

/// [`capacity_upper_bound`] keeping only the `1/d²` term.
pub fn capacity_upper_bound_far_field(
    tx: &PlanarAperture,
    rx: &PlanarAperture,
    carrier: &CarrierConfig,
    snr: f64,
    streams: usize,
) -> Result<f64> {
    bound(tx, rx, carrier, snr, streams, true)
}

/// Uniform-allocation capacity of the polarized line-of-sight channel.
/// The channel entries already carry `ωμ a_R a_T`, so `ρ = 1` here.
pub fn los_capacity_uniform(tx: &PlanarAperture, rx: &PlanarAperture, carrier: &CarrierConfig, snr: f64, streams: usize) -> Result<CapacityResult> {
    let h = los_dyadic_channel(tx, rx, carrier)?;
    capacity_uniform(&singular_spectrum(&h)?, snr, 1.0, streams)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::rng_from_seed;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn uniform_examples() {
        let s = EigenSpectrum::from_values(vec![1.0]).unwrap();
        assert!((capacity_uniform(&s, 1.0, 1.0, 1).unwrap().bits_per_s_per_hz - 1.0).abs() < 1e-15);
        assert_eq!(capacity_uniform(&s, 0.0, 1.0, 1).unwrap().bits_per_s_per_hz, 0.0);
        assert!(capacity_uniform(&s, 1.0, 1.0, 2).is_err());
    }

    #[test]
    fn waterfilling_equal_modes_is_uniform() {
        let s = EigenSpectrum::from_values(vec![0.7; 4]).unwrap();
        let w = capacity_waterfilling(&s, 8.0, 0.5).unwrap();
        let u = capacity_uniform(&s, 8.0 / 4.0 / 0.5, 1.0, 4).unwrap();
        assert!((w.bits_per_s_per_hz - u.bits_per_s_per_hz).abs() < 1e-9);
        assert!(w.allocation.iter().all(|p| (p - 2.0).abs() < 1e-9));
    }

    #[test]
    fn waterfilling_low_power_single_mode() {
        let s = EigenSpectrum::from_values(vec![2.0, 0.5, 0.1]).unwrap();
        let w = capacity_waterfilling(&s, 1e-3, 1.0).unwrap();
        assert!((w.allocation[0] - 1e-3).abs() < 1e-12);
        assert!(w.allocation[1..].iter().all(|&p| p == 0.0));
        let z = capacity_waterfilling(&EigenSpectrum::from_values(vec![0.0, 0.0]).unwrap(), 1.0, 1.0).unwrap();
        assert_eq!(z.bits_per_s_per_hz, 0.0);
    }

    #[test]
    fn epsilon_trace_identity() {
        let mut r = rng_from_seed(4);
        for _ in 0..50 {
            let d = Point3::new(r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0), r.gen_range(0.1..5.0));
            let e = epsilon_coefficients(d, 2.0 * PI).unwrap();
            assert!((e[0] - 1.0 / (8.0 * PI * PI)).abs() < 1e-17);
        }
    }

    proptest! {
        #[test]
        fn waterfilling_dominates_uniform(vals in proptest::collection::vec(0.0..3.0f64, 1..12), p in 0.01..100.0f64, noise in 0.01..10.0f64) {
            let s = EigenSpectrum::from_values(vals).unwrap();
            let w = capacity_waterfilling(&s, p, noise).unwrap();
            let n = s.len();
            let u = capacity_uniform(&s, p / n as f64 / noise, 1.0, n).unwrap();
            prop_assert!(w.bits_per_s_per_hz >= u.bits_per_s_per_hz - 1e-9);
            if s.singular_values()[0] > 0.0 {
                let total: f64 = w.allocation.iter().sum();
                prop_assert!((total - p).abs() <= 1e-9 * p.max(1.0));
            }
            prop_assert!(w.allocation.iter().all(|&x| x >= 0.0));
        }

        #[test]
        fn uniform_increasing_in_snr(vals in proptest::collection::vec(0.01..3.0f64, 1..8), a in 0.0..50.0f64, b in 0.0..50.0f64) {
            let s = EigenSpectrum::from_values(vals).unwrap();
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi > lo);
            let cl = capacity_uniform(&s, lo, 1.0, s.len()).unwrap().bits_per_s_per_hz;
            let ch = capacity_uniform(&s, hi, 1.0, s.len()).unwrap().bits_per_s_per_hz;
            prop_assert!(ch > cl);
        }
    }
}
