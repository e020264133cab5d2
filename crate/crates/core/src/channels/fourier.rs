use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::correlation::{FieldModel, FieldSampler};
use super::{ChannelMatrix, PlanarAperture};
use crate::em::{CarrierConfig, Point3};
use crate::error::{Error, Result};
use crate::montecarlo::{complex_normal, rng_from_seed};
use crate::numerics::gauss_legendre;

/// One sampled propagation direction `(k_x, k_y)` in rad/m with its share
/// of the angular power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavenumberSample {
    pub kx: f64,
    pub ky: f64,
    pub variance: f64,
}

impl WavenumberSample {
    fn kz(&self, k0: f64) -> f64 {
        (k0 * k0 - self.kx * self.kx - self.ky * self.ky).max(0.0).sqrt()
    }

    fn response(&self, k0: f64, p: &Point3) -> Complex64 {
        let phase = self.kx * p.x + self.ky * p.y + self.kz(k0) * p.z;
        Complex64::from_polar(1.0, -phase)
    }
}

/// Sampled receive and transmit angular spectra for one carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct WavenumberSpectrum {
    receive: Vec<WavenumberSample>,
    transmit: Vec<WavenumberSample>,
    wavenumber: f64,
    seed: u64,
}

// Gauss–Legendre order per smooth piece of a lattice cell.
const CELL_QUAD_ORDER: usize = 16;

/// Isotropic samples on a lattice of pitch `2π/side` per axis, restricted
/// to the propagating disk. Each cell's variance is the solid angle it
/// subtends (the `1/k_z` spectral measure integrated over cell ∩ disk);
/// the sample sits at the measure-weighted centroid. Variances sum to 1.
pub fn isotropic_samples(k0: f64, side_x_m: f64, side_y_m: f64) -> Result<Vec<WavenumberSample>> {
    for (name, v) in [("wavenumber", k0), ("side x", side_x_m), ("side y", side_y_m)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::validation(format!("{name} must be positive, got {v}")));
        }
    }
    // unit-disk coordinates u = k_x/k0, v = k_y/k0
    let du = 2.0 * PI / (side_x_m * k0);
    let dv = 2.0 * PI / (side_y_m * k0);
    let (nodes, weights) = gauss_legendre(CELL_QUAD_ORDER);
    let ni = (1.0 / du + 0.5).ceil() as i64;
    let nj = (1.0 / dv + 0.5).ceil() as i64;
    let mut out = Vec::new();
    let mut total = 0.0;
    for i in -ni..=ni {
        let u0 = ((i as f64 - 0.5) * du).max(-1.0);
        let u1 = ((i as f64 + 0.5) * du).min(1.0);
        if u1 <= u0 {
            continue;
        }
        for j in -nj..=nj {
            let v0 = ((j as f64 - 0.5) * dv).max(-1.0);
            let v1 = ((j as f64 + 0.5) * dv).min(1.0);
            if v1 <= v0 {
                continue;
            }
            let (w, cu, cv) = cell_moments(u0, u1, v0, v1, &nodes, &weights);
            if w <= 0.0 {
                continue;
            }
            let (mut u, mut v) = (cu / w, cv / w);
            let r = (u * u + v * v).sqrt();
            if r >= 1.0 - 1e-12 {
                let s = (1.0 - 1e-12) / r;
                u *= s;
                v *= s;
            }
            total += w;
            out.push(WavenumberSample {
                kx: u * k0,
                ky: v * k0,
                variance: w,
            });
        }
    }
    for s in &mut out {
        s.variance /= total;
    }
    Ok(out)
}

/// Zeroth and first moments of `1/√(1−u²−v²)` over the cell ∩ unit disk.
/// The v-integral is closed form; u is integrated piecewise between the
/// points where the disk edge crosses the cell's v-bounds, with a cosine
/// map on each piece to absorb the square-root behavior at its ends.
fn cell_moments(u0: f64, u1: f64, v0: f64, v1: f64, nodes: &[f64], weights: &[f64]) -> (f64, f64, f64) {
    let mut cuts = vec![u0, u1];
    for v in [v0, v1] {
        if v.abs() < 1.0 {
            let e = (1.0 - v * v).sqrt();
            for c in [-e, e] {
                if c > u0 && c < u1 {
                    cuts.push(c);
                }
            }
        }
    }
    cuts.sort_by(|a, b| a.total_cmp(b));
    let (mut w, mut mu, mut mv) = (0.0, 0.0, 0.0);
    for seg in cuts.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        for (x, wt) in nodes.iter().zip(weights) {
            // u = mid − half·cos(π(x+1)/2), du = half·(π/2)·sin(π(x+1)/2) dx
            let t = PI * (x + 1.0) / 2.0;
            let u = mid - half * t.cos();
            let wt = wt * t.sin() * PI / 2.0;
            let r2 = 1.0 - u * u;
            if r2 <= 0.0 {
                continue;
            }
            let r = r2.sqrt();
            let lo = v0.clamp(-r, r);
            let hi = v1.clamp(-r, r);
            let inner = (hi / r).clamp(-1.0, 1.0).asin() - (lo / r).clamp(-1.0, 1.0).asin();
            let inner_v = (r2 - lo * lo).max(0.0).sqrt() - (r2 - hi * hi).max(0.0).sqrt();
            w += wt * half * inner;
            mu += wt * half * u * inner;
            mv += wt * half * inner_v;
        }
    }
    (w, mu, mv)
}

fn validate_samples(samples: &[WavenumberSample], k0: f64, side: &str) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::validation(format!("{side} spectrum is empty")));
    }
    for s in samples {
        if !(s.variance.is_finite() && s.variance >= 0.0) {
            return Err(Error::validation(format!("{side} spectrum has invalid variance {}", s.variance)));
        }
        if !(s.kx * s.kx + s.ky * s.ky < k0 * k0) {
            return Err(Error::validation(format!(
                "{side} sample ({}, {}) is outside the propagating disk",
                s.kx, s.ky
            )));
        }
    }
    Ok(())
}

impl WavenumberSpectrum {
    pub fn new(receive: Vec<WavenumberSample>, transmit: Vec<WavenumberSample>, wavenumber: f64, seed: u64) -> Result<Self> {
        if !(wavenumber.is_finite() && wavenumber > 0.0) {
            return Err(Error::validation("wavenumber must be positive"));
        }
        validate_samples(&receive, wavenumber, "receive")?;
        validate_samples(&transmit, wavenumber, "transmit")?;
        Ok(WavenumberSpectrum {
            receive,
            transmit,
            wavenumber,
            seed,
        })
    }

    /// Isotropic spectra on lattices matched to square apertures of the
    /// given sides.
    pub fn isotropic(carrier: &CarrierConfig, receive_side_m: f64, transmit_side_m: f64, seed: u64) -> Result<Self> {
        let k0 = carrier.k0();
        WavenumberSpectrum::new(
            isotropic_samples(k0, receive_side_m, receive_side_m)?,
            isotropic_samples(k0, transmit_side_m, transmit_side_m)?,
            k0,
            seed,
        )
    }

    /// Isotropic spectra with lattice pitch set by each aperture's extent.
    pub fn for_apertures(tx: &PlanarAperture, rx: &PlanarAperture, carrier: &CarrierConfig, seed: u64) -> Result<Self> {
        let k0 = carrier.k0();
        let (rx_x, rx_y) = rx.extent_m();
        let (tx_x, tx_y) = tx.extent_m();
        WavenumberSpectrum::new(
            isotropic_samples(k0, rx_x, rx_y)?,
            isotropic_samples(k0, tx_x, tx_y)?,
            k0,
            seed,
        )
    }

    pub fn receive(&self) -> &[WavenumberSample] {
        &self.receive
    }

    pub fn transmit(&self) -> &[WavenumberSample] {
        &self.transmit
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

fn check_z_normal(a: &PlanarAperture) -> Result<()> {
    let n = a.normal();
    if (n[2].abs() - 1.0).abs() > 1e-9 {
        return Err(Error::validation("plane-wave model needs apertures parallel to z = 0"));
    }
    Ok(())
}

/// Geometry-dependent factors of the plane-wave channel, reusable across
/// realizations: `H = (1/2π)² · R · W · T` with `R = A_r diag(σ_r)`,
/// `T = diag(σ_t) A_sᵀ` and `W` an i.i.d. unit complex Gaussian matrix.
#[derive(Debug, Clone)]
pub struct FourierChannelModel {
    receive_side: DMatrix<Complex64>,
    transmit_side: DMatrix<Complex64>,
}

impl FourierChannelModel {
    pub fn new(tx: &PlanarAperture, rx: &PlanarAperture, spectrum: &WavenumberSpectrum) -> Result<Self> {
        check_z_normal(tx)?;
        check_z_normal(rx)?;
        let k0 = spectrum.wavenumber;
        let (kr, kt) = (spectrum.receive(), spectrum.transmit());
        let scale = 1.0 / (4.0 * PI * PI);
        let receive_side = DMatrix::from_fn(rx.len(), kr.len(), |m, i| {
            kr[i].response(k0, &rx.element_centers()[m]) * (kr[i].variance.sqrt() * scale)
        });
        let transmit_side = DMatrix::from_fn(kt.len(), tx.len(), |i, n| {
            kt[i].response(k0, &tx.element_centers()[n]) * kt[i].variance.sqrt()
        });
        Ok(FourierChannelModel {
            receive_side,
            transmit_side,
        })
    }

    /// Draws the angular coupling coefficients from `seed`.
    pub fn realize(&self, seed: u64) -> ChannelMatrix {
        let mut rng = rng_from_seed(seed);
        let (nr, nt) = (self.receive_side.ncols(), self.transmit_side.nrows());
        let w = DMatrix::from_fn(nr, nt, |_, _| complex_normal(&mut rng, 1.0));
        ChannelMatrix::from_parts_unchecked(&self.receive_side * w * &self.transmit_side, false)
    }
}

/// Scalar far-field scattering channel from the plane-wave expansion,
/// drawn with the spectrum's seed.
pub fn fourier_planewave_channel(tx: &PlanarAperture, rx: &PlanarAperture, spectrum: &WavenumberSpectrum) -> Result<ChannelMatrix> {
    Ok(FourierChannelModel::new(tx, rx, spectrum)?.realize(spectrum.seed))
}

/// Receive-side random field `f(p) = Σ_k σ_k w_k e^{−j k·p}` of the
/// isotropic plane-wave model.
#[derive(Debug, Clone)]
pub struct FourierField {
    samples: Vec<WavenumberSample>,
    k0: f64,
}

impl FourierField {
    pub fn new(samples: Vec<WavenumberSample>, k0: f64) -> Result<Self> {
        validate_samples(&samples, k0, "field")?;
        Ok(FourierField { samples, k0 })
    }

    /// Isotropic field on a square lattice matched to a `side`-wide window.
    pub fn isotropic(carrier: &CarrierConfig, side_m: f64) -> Result<Self> {
        let k0 = carrier.k0();
        FourierField::new(isotropic_samples(k0, side_m, side_m)?, k0)
    }

    pub fn samples(&self) -> &[WavenumberSample] {
        &self.samples
    }
}

pub struct FourierFieldSampler {
    steering: DMatrix<Complex64>,
}

impl FieldModel for FourierField {
    type Sampler = FourierFieldSampler;

    fn prepare(&self, points: &[Point3]) -> Result<FourierFieldSampler> {
        let steering = DMatrix::from_fn(points.len(), self.samples.len(), |p, i| {
            let s = &self.samples[i];
            s.response(self.k0, &points[p]) * s.variance.sqrt()
        });
        Ok(FourierFieldSampler { steering })
    }
}

impl FieldSampler for FourierFieldSampler {
    fn components(&self) -> usize {
        1
    }

    fn sample(&self, seed: u64, out: &mut [Complex64]) {
        let mut rng = rng_from_seed(seed);
        let w: Vec<Complex64> = (0..self.steering.ncols()).map(|_| complex_normal(&mut rng, 1.0)).collect();
        for (p, o) in out.iter_mut().enumerate() {
            *o = self.steering.row(p).iter().zip(&w).map(|(a, b)| a * b).sum();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::sinc;

    #[test]
    fn raw_weights_cover_hemisphere() {
        // Before normalization the cell weights integrate the 1/k_z measure
        // over the unit disk, which is the hemisphere solid angle 2π.
        let (n, w) = gauss_legendre(CELL_QUAD_ORDER);
        let du = 0.1;
        let mut total = 0.0;
        for i in -11i64..=11 {
            for j in -11i64..=11 {
                let u0 = ((i as f64 - 0.5) * du).max(-1.0);
                let u1 = ((i as f64 + 0.5) * du).min(1.0);
                let v0 = ((j as f64 - 0.5) * du).max(-1.0);
                let v1 = ((j as f64 + 0.5) * du).min(1.0);
                if u1 > u0 && v1 > v0 {
                    total += cell_moments(u0, u1, v0, v1, &n, &w).0;
                }
            }
        }
        assert!((total - 2.0 * PI).abs() < 1e-6, "total={total}");
    }

    #[test]
    fn samples_inside_disk_and_normalized() {
        let s = isotropic_samples(2.0 * PI, 8.0, 6.0).unwrap();
        let sum: f64 = s.iter().map(|x| x.variance).sum();
        assert!((sum - 1.0).abs() < 1e-12);
        assert!(s.iter().all(|x| x.kx.hypot(x.ky) < 2.0 * PI && x.variance >= 0.0));
    }

    #[test]
    fn spectral_correlation_is_sinc() {
        // The exact ensemble correlation of the sampled field, Σ σ² e^{-jk·d}.
        let k0 = 2.0 * PI;
        let s = isotropic_samples(k0, 32.0, 32.0).unwrap();
        for step in 0..=16 {
            let d = step as f64 * 0.125;
            let c: f64 = s.iter().map(|x| x.variance * (x.kx * d).cos()).sum();
            assert!((c - sinc(k0 * d)).abs() < 0.01, "d={d}: {c} vs {}", sinc(k0 * d));
        }
    }

    #[test]
    fn determinism_and_zero_spectrum() {
        let c = CarrierConfig::from_wavelength(1.0).unwrap();
        let tx = PlanarAperture::grid(3, 3, 0.5, Point3::ORIGIN).unwrap();
        let rx = PlanarAperture::grid(2, 2, 0.25, Point3::new(0.0, 0.0, 5.0)).unwrap();
        let spec = WavenumberSpectrum::for_apertures(&tx, &rx, &c, 9).unwrap();
        let a = fourier_planewave_channel(&tx, &rx, &spec).unwrap();
        let b = fourier_planewave_channel(&tx, &rx, &spec).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, fourier_planewave_channel(&tx, &rx, &spec.clone().with_seed(10)).unwrap());
        let zeroed: Vec<_> = spec.receive().iter().map(|s| WavenumberSample { variance: 0.0, ..*s }).collect();
        let z = WavenumberSpectrum::new(zeroed, spec.transmit().to_vec(), spec.wavenumber(), 1).unwrap();
        let h = fourier_planewave_channel(&tx, &rx, &z).unwrap();
        assert!(h.entries().iter().all(|e| *e == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn empty_or_outside_spectrum_rejected() {
        assert!(WavenumberSpectrum::new(vec![], vec![], 1.0, 0).is_err());
        let s = WavenumberSample { kx: 1.0, ky: 0.0, variance: 1.0 };
        assert!(WavenumberSpectrum::new(vec![s], vec![s], 1.0, 0).is_err());
    }
}
