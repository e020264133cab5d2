//! Kolmogorov ε-capacity of a line-to-line link by lattice packing of
//! ε-balls inside the singular-value ellipsoid, optionally restricted to
//! modes that satisfy a radiation-pattern mask.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::em::{scalar_green_at, CarrierConfig};
use crate::error::{Error, Result};
use crate::infomeasure::singular_spectrum_of;

/// Parallel source and observation segments along x, centered on the same
/// axis and separated along z. Lengths are in wavelengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineLinkConfig {
    pub source_length: f64,
    pub observation_length: f64,
    pub separation: f64,
    pub source_points: usize,
    pub observation_points: usize,
    /// `√Ê`, radius of the source-energy ball.
    pub energy_radius: f64,
    pub epsilon: f64,
    /// Number of leading ellipsoid axes used for packing.
    pub packing_dim: usize,
}

impl LineLinkConfig {
    /// 10λ source, 6λ observation line, 10λ apart, 64 samples each,
    /// planar packing.
    pub fn reference_geometry(energy_radius: f64, epsilon: f64) -> Self {
        LineLinkConfig {
            source_length: 10.0,
            observation_length: 6.0,
            separation: 10.0,
            source_points: 64,
            observation_points: 64,
            energy_radius,
            epsilon,
            packing_dim: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("source length", self.source_length),
            ("observation length", self.observation_length),
            ("separation", self.separation),
            ("epsilon", self.epsilon),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::validation(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.energy_radius.is_finite() && self.energy_radius >= 0.0) {
            return Err(Error::validation("energy radius must be non-negative"));
        }
        if self.source_points < 2 || self.observation_points < 2 {
            return Err(Error::validation("each line needs at least two samples"));
        }
        if self.packing_dim == 0 {
            return Err(Error::validation("packing dimension must be at least 1"));
        }
        Ok(())
    }

    /// Midpoint sample abscissas in meters.
    fn samples(length_wl: f64, n: usize, wavelength: f64) -> Vec<f64> {
        let step = length_wl * wavelength / n as f64;
        (0..n).map(|i| -length_wl * wavelength / 2.0 + (i as f64 + 0.5) * step).collect()
    }

    pub fn source_abscissas(&self, carrier: &CarrierConfig) -> Vec<f64> {
        Self::samples(self.source_length, self.source_points, carrier.wavelength())
    }

    pub fn observation_abscissas(&self, carrier: &CarrierConfig) -> Vec<f64> {
        Self::samples(self.observation_length, self.observation_points, carrier.wavelength())
    }
}

/// Radiation-pattern mask: the field outside `(low, high)` must stay
/// below `leakage_threshold` times the mode's own peak.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternConstraint {
    pub angular_window_rad: (f64, f64),
    pub leakage_threshold: f64,
    pub grid_step_rad: f64,
}

impl PatternConstraint {
    pub fn new(low_rad: f64, high_rad: f64, leakage_threshold: f64) -> Result<Self> {
        let c = PatternConstraint {
            angular_window_rad: (low_rad, high_rad),
            leakage_threshold,
            grid_step_rad: PI / 180.0,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_grid_step(mut self, step_rad: f64) -> Result<Self> {
        self.grid_step_rad = step_rad;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.angular_window_rad;
        if !(lo < hi) {
            return Err(Error::validation("pattern window needs low < high"));
        }
        if lo < -PI / 2.0 - 1e-12 || hi > PI / 2.0 + 1e-12 {
            return Err(Error::validation("pattern window must lie within [-90°, 90°]"));
        }
        if !(self.leakage_threshold.is_finite() && self.leakage_threshold >= 0.0) {
            return Err(Error::validation("leakage threshold must be non-negative"));
        }
        let step = self.grid_step_rad;
        if !(step.is_finite() && step > 0.0 && step <= PI) {
            return Err(Error::validation("empty angular grid"));
        }
        Ok(())
    }

    fn grid(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let step = self.grid_step_rad;
        let n = (PI / step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| -PI / 2.0 + i as f64 * step).collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PackingResult {
    pub ball_count: u64,
    pub capacity_bits: f64,
    /// Balls lost to the pattern constraint (0 when unconstrained).
    pub removed_by_constraint: u64,
    pub semiaxes: Vec<f64>,
    pub modes: Vec<ModeReport>,
}

/// Per-mode outcome of the pattern check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeReport {
    pub semiaxis: f64,
    pub leakage: f64,
    pub kept: bool,
}

/// `A[m][n] = g(obs_m, src_n)·Δs`, mapping source samples to observed
/// field samples.
pub fn build_line_operator(cfg: &LineLinkConfig, carrier: &CarrierConfig) -> Result<DMatrix<Complex64>> {
    cfg.validate()?;
    let src = cfg.source_abscissas(carrier);
    let obs = cfg.observation_abscissas(carrier);
    let z = cfg.separation * carrier.wavelength();
    let ds = cfg.source_length * carrier.wavelength() / cfg.source_points as f64;
    let k0 = carrier.k0();
    Ok(DMatrix::from_fn(obs.len(), src.len(), |m, n| {
        let d = (obs[m] - src[n]).hypot(z);
        scalar_green_at(d, k0) * ds
    }))
}

/// [`build_line_operator`] divided by `√Δs`. A unit excitation vector then
/// carries unit current energy `∫|J|² ds`, so singular values converge as
/// the source sampling is refined.
pub fn energy_weighted_operator(cfg: &LineLinkConfig, carrier: &CarrierConfig) -> Result<DMatrix<Complex64>> {
    let ds = cfg.source_length * carrier.wavelength() / cfg.source_points as f64;
    Ok(build_line_operator(cfg, carrier)? / Complex64::new(ds.sqrt(), 0.0))
}

/// `σ_k·√Ê`, descending.
pub fn ellipsoid_semiaxes(op: &DMatrix<Complex64>, energy_radius: f64) -> Result<Vec<f64>> {
    if !(energy_radius.is_finite() && energy_radius >= 0.0) {
        return Err(Error::validation("energy radius must be non-negative"));
    }
    let s = singular_spectrum_of(op)?;
    Ok(s.singular_values().iter().map(|v| v * energy_radius).collect())
}

/// Lattice points of pitch `2ε` inside the ellipsoid spanned by the first
/// `dim` semi-axes. Balls of radius ε at these centers are pairwise
/// disjoint.
pub fn pack_epsilon_balls(semiaxes: &[f64], epsilon: f64, dim: usize) -> Result<u64> {
    if dim < 1 {
        return Err(Error::validation("packing dimension must be at least 1"));
    }
    if dim > semiaxes.len() {
        return Err(Error::validation(format!(
            "packing dimension {dim} exceeds the {} available axes",
            semiaxes.len()
        )));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::validation("epsilon must be positive"));
    }
    if semiaxes[..dim].iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
        return Err(Error::validation("semi-axes must be finite and non-negative"));
    }
    Ok(count_lattice(&semiaxes[..dim], 2.0 * epsilon, 1.0))
}

fn count_lattice(axes: &[f64], pitch: f64, budget: f64) -> u64 {
    let Some((&a, rest)) = axes.split_first() else {
        return 1;
    };
    // reach along this axis given the remaining quadratic budget
    let reach = a * budget.max(0.0).sqrt();
    let n = (reach / pitch + 1e-12).floor() as i64;
    let mut total = 0;
    for i in -n..=n {
        let t = if a > 0.0 { i as f64 * pitch / a } else { 0.0 };
        let left = budget - t * t;
        if left < -1e-12 {
            continue;
        }
        total += count_lattice(rest, pitch, left.max(0.0));
    }
    total
}

/// Array-factor pattern of each right-singular excitation; modes whose
/// out-of-window peak exceeds `threshold × own peak` are dropped.
pub fn pattern_constraint_filter(
    op: &DMatrix<Complex64>,
    cfg: &LineLinkConfig,
    constraint: &PatternConstraint,
    carrier: &CarrierConfig,
) -> Result<(Vec<f64>, usize)> {
    let reports = mode_reports(op, cfg, constraint, carrier)?;
    let kept: Vec<f64> = reports.iter().filter(|r| r.kept).map(|r| r.semiaxis).collect();
    let removed = reports.len() - kept.len();
    Ok((kept, removed))
}

fn mode_reports(
    op: &DMatrix<Complex64>,
    cfg: &LineLinkConfig,
    constraint: &PatternConstraint,
    carrier: &CarrierConfig,
) -> Result<Vec<ModeReport>> {
    constraint.validate()?;
    let angles = constraint.grid()?;
    let spec = singular_spectrum_of(op)?;
    let v_t = match spec.factors() {
        Some(f) => &f.v_t,
        None => return Ok(vec![]),
    };
    let x = cfg.source_abscissas(carrier);
    if x.len() != op.ncols() {
        return Err(Error::validation("operator columns do not match the source sampling"));
    }
    let k0 = carrier.k0();
    let (lo, hi) = constraint.angular_window_rad;
    let steer: Vec<Vec<Complex64>> = angles
        .iter()
        .map(|t| x.iter().map(|xn| Complex64::from_polar(1.0, k0 * xn * t.sin())).collect())
        .collect();
    Ok(spec
        .singular_values()
        .iter()
        .enumerate()
        .map(|(k, &sigma)| {
            let (mut peak, mut outside) = (0.0f64, 0.0f64);
            for (t, a) in angles.iter().zip(&steer) {
                let af: Complex64 = (0..x.len()).map(|n| v_t[(k, n)].conj() * a[n]).sum();
                let m = af.norm();
                peak = peak.max(m);
                if *t < lo - 1e-12 || *t > hi + 1e-12 {
                    outside = outside.max(m);
                }
            }
            let leakage = if peak > 0.0 { outside / peak } else { 0.0 };
            ModeReport {
                semiaxis: sigma * cfg.energy_radius,
                leakage,
                kept: leakage <= constraint.leakage_threshold,
            }
        })
        .collect())
}

fn bits(count: u64) -> f64 {
    if count >= 1 {
        (count as f64).log2()
    } else {
        0.0
    }
}

/// Build → semi-axes → optional pattern filter → pack.
pub fn epsilon_capacity(cfg: &LineLinkConfig, carrier: &CarrierConfig, constraint: Option<&PatternConstraint>) -> Result<PackingResult> {
    let op = energy_weighted_operator(cfg, carrier)?;
    let semiaxes = ellipsoid_semiaxes(&op, cfg.energy_radius)?;
    let unconstrained = pack_epsilon_balls(&semiaxes, cfg.epsilon, cfg.packing_dim)?;
    let Some(c) = constraint else {
        let modes = semiaxes
            .iter()
            .map(|&s| ModeReport {
                semiaxis: s,
                leakage: f64::NAN,
                kept: true,
            })
            .collect();
        return Ok(PackingResult {
            ball_count: unconstrained,
            capacity_bits: bits(unconstrained),
            removed_by_constraint: 0,
            semiaxes,
            modes,
        });
    };
    let modes = mode_reports(&op, cfg, c, carrier)?;
    let mut kept: Vec<f64> = modes.iter().filter(|r| r.kept).map(|r| r.semiaxis).collect();
    // missing axes contribute nothing beyond the origin
    kept.resize(kept.len().max(cfg.packing_dim), 0.0);
    let count = pack_epsilon_balls(&kept, cfg.epsilon, cfg.packing_dim)?;
    Ok(PackingResult {
        ball_count: count,
        capacity_bits: bits(count),
        removed_by_constraint: unconstrained.saturating_sub(count),
        semiaxes,
        modes,
    })
}
