use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::em::{dyadic_green_unchecked, CarrierConfig, Point3};
use crate::error::{Error, Result};
use crate::montecarlo::{complex_normal, derive_seed, rng_from_seed, run_trials};

/// A random field that can be evaluated at a fixed set of points.
pub trait FieldModel: Sync {
    type Sampler: FieldSampler;

    /// Precomputes whatever depends only on the observation points.
    fn prepare(&self, points: &[Point3]) -> Result<Self::Sampler>;
}

pub trait FieldSampler: Sync {
    /// Field components per point (1 for scalar, 3 for vector fields).
    fn components(&self) -> usize;

    /// Writes one realization, point-major, into `out`.
    fn sample(&self, seed: u64, out: &mut [Complex64]);
}

/// Where the antenna pairs sit and how trials are seeded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutocorrelationOptions {
    /// Midpoint of every pair.
    pub center: Point3,
    /// Unit direction along which pairs are separated.
    pub direction: Point3,
    pub master_seed: u64,
    pub workers: Option<usize>,
}

impl Default for AutocorrelationOptions {
    fn default() -> Self {
        AutocorrelationOptions {
            center: Point3::ORIGIN,
            direction: Point3::new(1.0, 0.0, 0.0),
            master_seed: 0,
            workers: None,
        }
    }
}

// Stream tag separating autocorrelation trials from other seeded work.
const AUTOCORR_STREAM: u64 = 0xAC;

/// Normalized correlation `Re Σ f(a) f*(b) / √(Σ|f(a)|² Σ|f(b)|²)` for
/// points `a, b = c ∓ (d/2)·u`, summed over trials and field components.
pub fn empirical_autocorrelation<M: FieldModel>(
    model: &M,
    distances: &[f64],
    trials: usize,
    opts: &AutocorrelationOptions,
) -> Result<Vec<(f64, f64)>> {
    if trials == 0 {
        return Err(Error::validation("autocorrelation needs at least one trial"));
    }
    if distances.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
        return Err(Error::validation("distances must be finite and non-negative"));
    }
    let u = opts.direction;
    let un = u.norm();
    if !(un.is_finite() && un > 0.0) {
        return Err(Error::validation("pair direction must be non-zero"));
    }
    let u = u * (1.0 / un);
    let mut points = Vec::with_capacity(2 * distances.len());
    for &d in distances {
        points.push(opts.center - u * (d / 2.0));
        points.push(opts.center + u * (d / 2.0));
    }
    let sampler = model.prepare(&points)?;
    let nc = sampler.components();
    let per_trial = run_trials(trials, opts.workers, |t| {
        let mut f = vec![Complex64::new(0.0, 0.0); points.len() * nc];
        sampler.sample(derive_seed(opts.master_seed, AUTOCORR_STREAM, t as u64), &mut f);
        (0..distances.len())
            .map(|i| {
                let a = &f[2 * i * nc..(2 * i + 1) * nc];
                let b = &f[(2 * i + 1) * nc..(2 * i + 2) * nc];
                let cross: f64 = a.iter().zip(b).map(|(x, y)| (x * y.conj()).re).sum();
                let pa: f64 = a.iter().map(|x| x.norm_sqr()).sum();
                let pb: f64 = b.iter().map(|x| x.norm_sqr()).sum();
                (cross, pa, pb)
            })
            .collect::<Vec<_>>()
    });
    let mut acc = vec![(0.0, 0.0, 0.0); distances.len()];
    for trial in &per_trial {
        for (s, t) in acc.iter_mut().zip(trial) {
            s.0 += t.0;
            s.1 += t.1;
            s.2 += t.2;
        }
    }
    acc.iter()
        .zip(distances)
        .map(|(&(c, pa, pb), &d)| {
            let den = (pa * pb).sqrt();
            if den > 0.0 && den.is_finite() {
                Ok((d, c / den))
            } else {
                Err(Error::Numerical {
                    stage: "autocorrelation normalization".into(),
                    residual: den,
                })
            }
        })
        .collect()
}

/// Rich-scattering line-of-sight field: each realization places point
/// sources with i.i.d. complex Gaussian vector currents uniformly on a
/// sphere around the observation region and radiates them through the
/// free-space dyadic Green's function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicScatterField {
    pub carrier: CarrierConfig,
    pub shell_radius_m: f64,
    pub sources_per_trial: usize,
}

impl DyadicScatterField {
    pub fn new(carrier: CarrierConfig, shell_radius_m: f64, sources_per_trial: usize) -> Result<Self> {
        if !(shell_radius_m.is_finite() && shell_radius_m > 0.0) {
            return Err(Error::validation("shell radius must be positive"));
        }
        if sources_per_trial == 0 {
            return Err(Error::validation("need at least one scatterer per trial"));
        }
        Ok(DyadicScatterField {
            carrier,
            shell_radius_m,
            sources_per_trial,
        })
    }
}

pub struct DyadicScatterSampler {
    field: DyadicScatterField,
    points: Vec<Point3>,
}

impl FieldModel for DyadicScatterField {
    type Sampler = DyadicScatterSampler;

    fn prepare(&self, points: &[Point3]) -> Result<DyadicScatterSampler> {
        if points.iter().any(|p| p.norm() >= self.shell_radius_m) {
            return Err(Error::validation("observation points must lie inside the scatterer shell"));
        }
        Ok(DyadicScatterSampler {
            field: *self,
            points: points.to_vec(),
        })
    }
}

impl FieldSampler for DyadicScatterSampler {
    fn components(&self) -> usize {
        3
    }

    fn sample(&self, seed: u64, out: &mut [Complex64]) {
        let mut rng = rng_from_seed(seed);
        let k0 = self.field.carrier.k0();
        out.iter_mut().for_each(|o| *o = Complex64::new(0.0, 0.0));
        for _ in 0..self.field.sources_per_trial {
            let cos_t: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..2.0 * PI);
            let sin_t = (1.0 - cos_t * cos_t).sqrt();
            let s = Point3::new(sin_t * phi.cos(), sin_t * phi.sin(), cos_t) * self.field.shell_radius_m;
            let j = [
                complex_normal(&mut rng, 1.0),
                complex_normal(&mut rng, 1.0),
                complex_normal(&mut rng, 1.0),
            ];
            for (p, o) in self.points.iter().zip(out.chunks_mut(3)) {
                let dv = *p - s;
                let e = dyadic_green_unchecked(dv, dv.norm(), k0).apply(&j);
                for c in 0..3 {
                    o[c] += e[c];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::FourierField;

    #[test]
    fn self_correlation_is_one_and_deterministic() {
        let c = CarrierConfig::from_wavelength(1.0).unwrap();
        let f = FourierField::isotropic(&c, 8.0).unwrap();
        let opts = AutocorrelationOptions { master_seed: 5, ..Default::default() };
        let a = empirical_autocorrelation(&f, &[0.0, 0.3], 50, &opts).unwrap();
        assert!((a[0].1 - 1.0).abs() < 1e-9);
        let b = empirical_autocorrelation(&f, &[0.0, 0.3], 50, &AutocorrelationOptions { workers: Some(1), ..opts }).unwrap();
        assert_eq!(a, b);
        assert!(empirical_autocorrelation(&f, &[0.0], 0, &opts).is_err());
    }

    #[test]
    fn scatter_field_self_correlation() {
        let c = CarrierConfig::from_wavelength(1.0).unwrap();
        let f = DyadicScatterField::new(c, 50.0, 4).unwrap();
        let r = empirical_autocorrelation(&f, &[0.0], 20, &AutocorrelationOptions::default()).unwrap();
        assert!((r[0].1 - 1.0).abs() < 1e-9);
        assert!(f.prepare(&[Point3::new(60.0, 0.0, 0.0)]).is_err());
    }
}
