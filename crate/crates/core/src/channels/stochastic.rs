use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;
use rand::Rng;

use crate::em::{DyadicTensor, Point3};
use crate::error::{Error, Result};
use crate::montecarlo::{rng_from_seed, TrialRng};

pub const DEFAULT_WAVES_PER_MODE: usize = 100;

/// Statistical cavity: random-matrix eigenvalues around the operating
/// wavenumber and random-plane-wave eigenfunctions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityModel {
    pub mode_count: usize,
    pub quality_factor: f64,
    pub waves_per_mode: usize,
    /// Operating wavenumber `k` in rad/m.
    pub wavenumber: f64,
    /// Sets the mean modal density through Weyl's law.
    pub volume_m3: f64,
    pub seed: u64,
}

impl CavityModel {
    pub fn new(mode_count: usize, quality_factor: f64, wavenumber: f64, volume_m3: f64) -> Result<Self> {
        let m = CavityModel {
            mode_count,
            quality_factor,
            waves_per_mode: DEFAULT_WAVES_PER_MODE,
            wavenumber,
            volume_m3,
            seed: 0,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_waves_per_mode(mut self, n: usize) -> Result<Self> {
        self.waves_per_mode = n;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.mode_count == 0 {
            return Err(Error::validation("cavity needs at least one mode"));
        }
        if self.waves_per_mode == 0 {
            return Err(Error::validation("eigenfunctions need at least one plane wave"));
        }
        for (name, v) in [
            ("quality factor", self.quality_factor),
            ("wavenumber", self.wavenumber),
            ("volume", self.volume_m3),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::validation(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// Mean spacing of `k_i²` near `k²` from Weyl's law,
    /// `N(k) ≈ V k³ / (3π²)`.
    pub fn mean_eigenvalue_spacing(&self) -> f64 {
        2.0 * PI * PI / (self.volume_m3 * self.wavenumber)
    }

    /// Draws eigenvalues (Wigner-surmise spacings centered on `k²`) and
    /// eigenfunctions from the model seed.
    pub fn realize(&self) -> Result<CavityRealization> {
        self.validate()?;
        let mut rng = rng_from_seed(self.seed);
        let delta = self.mean_eigenvalue_spacing();
        let mut levels = Vec::with_capacity(self.mode_count);
        let mut acc = 0.0;
        for i in 0..self.mode_count {
            if i > 0 {
                let u: f64 = rng.gen();
                acc += (-(4.0 / PI) * (1.0 - u).ln()).sqrt();
            }
            levels.push(acc);
        }
        let mid = levels[self.mode_count / 2];
        let jitter: f64 = rng.gen_range(-0.5..0.5);
        let k2 = self.wavenumber * self.wavenumber;
        let eigenvalues = levels.iter().map(|l| (k2 + (l - mid + jitter) * delta).max(0.0)).collect();
        Ok(self.build(eigenvalues, &mut rng))
    }

    /// Uses caller-supplied `k_i²` and draws only the eigenfunctions.
    pub fn realize_with_eigenvalues(&self, eigenvalues: Vec<f64>) -> Result<CavityRealization> {
        self.validate()?;
        if eigenvalues.is_empty() || eigenvalues.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(Error::validation("eigenvalues must be non-empty, finite and non-negative"));
        }
        let mut rng = rng_from_seed(self.seed);
        Ok(self.build(eigenvalues, &mut rng))
    }

    fn build(&self, eigenvalues: Vec<f64>, rng: &mut TrialRng) -> CavityRealization {
        let amp = 1.0 / (self.waves_per_mode as f64).sqrt();
        let modes = eigenvalues
            .iter()
            .map(|_| (0..self.waves_per_mode).map(|_| PlaneWave::draw(rng, amp)).collect())
            .collect();
        CavityRealization {
            eigenvalues,
            modes,
            wavenumber: self.wavenumber,
            quality_factor: self.quality_factor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct PlaneWave {
    direction: [f64; 3],
    /// `a (cos ψ θ̂ + sin ψ φ̂)`.
    polarization: [f64; 3],
    phase: f64,
}

impl PlaneWave {
    fn draw(rng: &mut TrialRng, amplitude: f64) -> Self {
        let cos_t: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * PI);
        let psi: f64 = rng.gen_range(0.0..2.0 * PI);
        let phase: f64 = rng.gen_range(0.0..2.0 * PI);
        let sin_t = (1.0 - cos_t * cos_t).sqrt();
        let (sp, cp) = phi.sin_cos();
        let theta_hat = [cos_t * cp, cos_t * sp, -sin_t];
        let phi_hat = [-sp, cp, 0.0];
        let (s, c) = psi.sin_cos();
        PlaneWave {
            direction: [sin_t * cp, sin_t * sp, cos_t],
            polarization: [0, 1, 2].map(|i| amplitude * (c * theta_hat[i] + s * phi_hat[i])),
            phase,
        }
    }
}

/// One draw of the cavity's eigen-decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityRealization {
    eigenvalues: Vec<f64>,
    modes: Vec<Vec<PlaneWave>>,
    wavenumber: f64,
    quality_factor: f64,
}

/// Mode sum split into near-resonant and off-resonant parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenSplit {
    pub coherent: DyadicTensor,
    pub incoherent: DyadicTensor,
}

impl CavityRealization {
    /// The `k_i²`.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Real vector eigenfunction `Ψ_i(r)`.
    pub fn eigenfunction(&self, mode: usize, r: &Point3) -> [f64; 3] {
        let ki = self.eigenvalues[mode].sqrt();
        let mut out = [0.0; 3];
        for w in &self.modes[mode] {
            let arg = ki * (w.direction[0] * r.x + w.direction[1] * r.y + w.direction[2] * r.z) + w.phase;
            let c = arg.cos();
            for i in 0..3 {
                out[i] += c * w.polarization[i];
            }
        }
        out
    }

    fn denominator(&self, mode: usize) -> Complex64 {
        let k2 = self.wavenumber * self.wavenumber;
        Complex64::new(k2 - self.eigenvalues[mode], -k2 / self.quality_factor)
    }

    /// Near-resonant modes: `|k_i² − k²| < k²/Q̃`.
    pub fn is_coherent(&self, mode: usize) -> bool {
        let k2 = self.wavenumber * self.wavenumber;
        (self.eigenvalues[mode] - k2).abs() < k2 / self.quality_factor
    }

    fn term(&self, mode: usize, r: &Point3, rp: &Point3) -> Matrix3<Complex64> {
        let a = self.eigenfunction(mode, r);
        let b = self.eigenfunction(mode, rp);
        let inv = 1.0 / self.denominator(mode);
        Matrix3::from_fn(|i, j| inv * (a[i] * b[j]))
    }

    pub fn green(&self, r: &Point3, rp: &Point3) -> Result<DyadicTensor> {
        let s = self.green_split(r, rp)?;
        Ok(s.coherent + s.incoherent)
    }

    pub fn green_split(&self, r: &Point3, rp: &Point3) -> Result<GreenSplit> {
        if r.distance(rp) == 0.0 {
            return Err(Error::domain("stochastic Green's function needs distinct points"));
        }
        let mut coherent = Matrix3::zeros();
        let mut incoherent = Matrix3::zeros();
        for i in 0..self.eigenvalues.len() {
            if self.is_coherent(i) {
                coherent += self.term(i, r, rp);
            } else {
                incoherent += self.term(i, r, rp);
            }
        }
        Ok(GreenSplit {
            coherent: DyadicTensor(coherent),
            incoherent: DyadicTensor(incoherent),
        })
    }
}

/// One realization of `Σ_i Ψ_i(r) Ψ_i(r')ᵀ / (k² − k_i² − j k²/Q̃)`.
pub fn stochastic_green_channel(model: &CavityModel, r: &Point3, rp: &Point3) -> Result<DyadicTensor> {
    model.realize()?.green(r, rp)
}

/// Coherent and incoherent parts of one realization.
pub fn green_split(model: &CavityModel, r: &Point3, rp: &Point3) -> Result<GreenSplit> {
    model.realize()?.green_split(r, rp)
}
