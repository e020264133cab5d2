use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{ExperimentConfig, ExperimentOutput, PlotSpec, Table};
use crate::channels::{
    clarke_autocorrelation_with, empirical_autocorrelation, los_dyadic_channel, AutocorrelationOptions,
    ChannelMatrix, ClarkeKernel, DyadicScatterField, FieldModel, FourierChannelModel, FourierField, PlanarAperture,
    WavenumberSpectrum,
};
use crate::em::{CarrierConfig, Point3, Polarization};
use crate::error::Result;
use crate::infomeasure::{
    capacity_upper_bound, capacity_upper_bound_far_field, default_streams, effective_dof, los_capacity_uniform,
    precoder_spectral_efficiency, singular_spectrum, singular_spectrum_of, PrecoderKind,
};
use crate::limits::{chu_gain, chu_q, harrington_gain, harrington_q, SphereEnclosure};
use crate::montecarlo::derive_seed;
use crate::packing::{epsilon_capacity, LineLinkConfig, PatternConstraint};

fn plot(title: &str, x: &str, ys: &[String], x_label: &str, y_label: &str, log_y: bool) -> PlotSpec {
    PlotSpec {
        title: title.into(),
        x: x.into(),
        ys: ys.to_vec(),
        x_label: x_label.into(),
        y_label: y_label.into(),
        log_y,
    }
}

fn names(prefix: &str, tags: &[String]) -> Vec<String> {
    tags.iter().map(|t| format!("{prefix}_{t}")).collect()
}

fn num_tag(v: f64) -> String {
    format!("{v}")
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn bound_table(cfg: &ExperimentConfig) -> Result<(CarrierConfig, Vec<f64>)> {
    Ok((cfg.carrier()?, cfg.grid("sweep", "k0re")?))
}

pub(super) fn limits(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let (carrier, sizes) = bound_table(cfg)?;
    let mut t = Table::new(["k0re", "G_chu", "G_harr", "Q_chu", "Q_harr"]);
    for ka in sizes {
        let e = SphereEnclosure::from_electrical_size(ka, &carrier)?;
        t.push(vec![ka, chu_gain(&e), harrington_gain(&e), chu_q(&e), harrington_q(&e)]);
    }
    let ys = ["G_chu", "G_harr", "Q_chu", "Q_harr"].map(String::from);
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Antenna limits", "k0re", &ys, "electrical size k0 r", "gain / Q", true),
        summary: vec![],
    })
}

pub(super) fn directivity(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let (carrier, sizes) = bound_table(cfg)?;
    let mut t = Table::new(["k0re", "G_chu", "G_harr"]);
    for ka in sizes {
        let e = SphereEnclosure::from_electrical_size(ka, &carrier)?;
        t.push(vec![ka, chu_gain(&e), harrington_gain(&e)]);
    }
    let ys = ["G_chu", "G_harr"].map(String::from);
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Maximum directivity", "k0re", &ys, "electrical size k0 r", "directivity", false),
        summary: vec![],
    })
}

pub(super) fn quality_factor(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let (carrier, sizes) = bound_table(cfg)?;
    let mut t = Table::new(["k0re", "Q_chu", "Q_harr"]);
    for ka in sizes {
        let e = SphereEnclosure::from_electrical_size(ka, &carrier)?;
        t.push(vec![ka, chu_q(&e), harrington_q(&e)]);
    }
    let ys = ["Q_chu", "Q_harr"].map(String::from);
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Minimum quality factor", "k0re", &ys, "electrical size k0 r", "Q", true),
        summary: vec![],
    })
}

fn autocorr<M: FieldModel>(cfg: &ExperimentConfig, carrier: &CarrierConfig, model: &M, title: &str) -> Result<ExperimentOutput> {
    let d_wl = cfg.grid("sweep", "distance")?;
    let trials = cfg.usize("monte_carlo", "trials")?;
    let lambda = carrier.wavelength();
    let d: Vec<f64> = d_wl.iter().map(|x| x * lambda).collect();
    let opts = AutocorrelationOptions {
        master_seed: cfg.seed,
        ..Default::default()
    };
    let emp = empirical_autocorrelation(model, &d, trials, &opts)?;
    let mut t = Table::new(["d_over_lambda", "empirical", "clarke_sinc", "clarke_j0"]);
    for (i, (_, c)) in emp.iter().enumerate() {
        t.push(vec![
            d_wl[i],
            *c,
            clarke_autocorrelation_with(d[i], carrier, ClarkeKernel::Spherical)?,
            clarke_autocorrelation_with(d[i], carrier, ClarkeKernel::Planar)?,
        ]);
    }
    let ys = ["empirical", "clarke_sinc", "clarke_j0"].map(String::from);
    Ok(ExperimentOutput {
        table: t,
        plot: plot(title, "d_over_lambda", &ys, "distance / wavelength", "autocorrelation", false),
        summary: vec![("trials".into(), trials.to_string())],
    })
}

pub(super) fn autocorr_fourier(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let carrier = cfg.carrier()?;
    let window = cfg.f64("field", "window_wavelengths")? * carrier.wavelength();
    let field = FourierField::isotropic(&carrier, window)?;
    autocorr(cfg, &carrier, &field, "Fourier plane-wave field autocorrelation")
}

pub(super) fn autocorr_green(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let carrier = cfg.carrier()?;
    let radius = cfg.f64("field", "shell_radius_wavelengths")? * carrier.wavelength();
    let sources = cfg.usize("field", "sources_per_trial")?;
    let field = DyadicScatterField::new(carrier, radius, sources)?;
    autocorr(cfg, &carrier, &field, "Dyadic scattering field autocorrelation")
}

pub(super) fn dof_saturation(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let carrier = cfg.carrier()?;
    let lambda = carrier.wavelength();
    let side = cfg.f64("aperture", "side_wavelengths")? * lambda;
    let counts = cfg.usize_list("aperture", "tx_elements_per_side")?;
    let rx_n = cfg.usize("aperture", "rx_elements_per_side")?;
    let distances = cfg.f64_list("link", "distances_wavelengths")?;
    let eps = cfg.f64("dof", "threshold")?;
    if rx_n == 0 || counts.contains(&0) {
        return Err(crate::Error::Config("[aperture] element counts must be positive".into()));
    }
    let tags: Vec<String> = distances.iter().map(|&d| num_tag(d)).collect();
    let cols = names("dof_r", &tags);
    let mut headers = vec!["elements".to_string()];
    headers.extend(cols.iter().cloned());
    let mut t = Table::new(headers);
    let rx0 = PlanarAperture::grid(rx_n, rx_n, side / rx_n as f64, Point3::ORIGIN)?;
    for &n in &counts {
        let tx = PlanarAperture::grid(n, n, side / n as f64, Point3::ORIGIN)?;
        let mut row = vec![(n * n) as f64];
        for &r in &distances {
            let rx = rx0.translated(Point3::new(0.0, 0.0, r * lambda));
            let h = los_dyadic_channel(&tx, &rx, &carrier)?;
            row.push(effective_dof(&singular_spectrum(&h)?, eps)?.count as f64);
        }
        t.push(row);
    }
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Effective DOF saturation", "elements", &cols, "transmit elements", "effective DOF", false),
        summary: vec![],
    })
}

/// Receive arrays at several spacings against one transmit array, all
/// driven by the isotropic Fourier plane-wave model.
struct SpacingSweep {
    tags: Vec<String>,
    models: Vec<FourierChannelModel>,
    rx_side: usize,
    realizations: usize,
    seed: u64,
}

fn spacing_sweep(cfg: &ExperimentConfig) -> Result<SpacingSweep> {
    let carrier = cfg.carrier()?;
    let lambda = carrier.wavelength();
    let rx_side = cfg.usize("arrays", "rx_side_elements")?;
    let divisors = cfg.usize_list("arrays", "rx_spacing_divisors")?;
    let tx_side = cfg.usize("arrays", "tx_side_elements")?;
    let tx_spacing = cfg.f64("arrays", "tx_spacing_wavelengths")? * lambda;
    let realizations = cfg.usize("monte_carlo", "realizations")?;
    if realizations == 0 {
        return Err(crate::Error::Config("[monte_carlo] realizations must be positive".into()));
    }
    let tx = PlanarAperture::grid(tx_side, tx_side, tx_spacing, Point3::ORIGIN)?;
    let mut models = Vec::new();
    let mut tags = Vec::new();
    for &dv in &divisors {
        if dv == 0 {
            return Err(crate::Error::Config("[arrays] spacing divisors must be positive".into()));
        }
        let rx = PlanarAperture::grid(rx_side, rx_side, lambda / dv as f64, Point3::ORIGIN)?;
        let spectrum = WavenumberSpectrum::for_apertures(&tx, &rx, &carrier, cfg.seed)?;
        models.push(FourierChannelModel::new(&tx, &rx, &spectrum)?);
        tags.push(format!("l{dv}"));
    }
    Ok(SpacingSweep {
        tags,
        models,
        rx_side,
        realizations,
        seed: cfg.seed,
    })
}

/// Scales `h` so that `‖H‖²_F = rows·cols`.
fn normalize(h: &ChannelMatrix) -> Result<DMatrix<Complex64>> {
    let m = h.entries();
    let f = m.norm();
    if !(f > 0.0) {
        return Err(crate::Error::Numerical {
            stage: "channel normalization".into(),
            residual: f,
        });
    }
    let target = ((m.nrows() * m.ncols()) as f64).sqrt();
    Ok(m * Complex64::new(target / f, 0.0))
}

impl SpacingSweep {
    fn realization(&self, model: usize, r: usize) -> Result<DMatrix<Complex64>> {
        normalize(&self.models[model].realize(derive_seed(self.seed, model as u64, r as u64)))
    }
}

pub(super) fn eigen_spacing(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let sweep = spacing_sweep(cfg)?;
    let eps = cfg.f64("dof", "threshold")?;
    let mut curves = Vec::new();
    let mut summary = vec![("realizations".to_string(), sweep.realizations.to_string())];
    for (mi, tag) in sweep.tags.iter().enumerate() {
        let mut mean: Vec<f64> = Vec::new();
        let mut dof = 0.0;
        for r in 0..sweep.realizations {
            let s = singular_spectrum_of(&sweep.realization(mi, r)?)?;
            let ev = s.eigenvalues();
            if mean.is_empty() {
                mean = vec![0.0; ev.len()];
            }
            for (m, e) in mean.iter_mut().zip(&ev) {
                *m += e / ev[0] / sweep.realizations as f64;
            }
            dof += effective_dof(&s, eps)?.count as f64 / sweep.realizations as f64;
        }
        summary.push((format!("dominant_eigenvalues_{tag}"), format!("{dof}")));
        curves.push(mean);
    }
    let cols = names("eig", &sweep.tags);
    let mut headers = vec!["index".to_string()];
    headers.extend(cols.iter().cloned());
    let mut t = Table::new(headers);
    let len = curves.iter().map(Vec::len).min().unwrap_or(0);
    for i in 0..len {
        let mut row = vec![(i + 1) as f64];
        row.extend(curves.iter().map(|c| c[i]));
        t.push(row);
    }
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Normalized channel eigenvalues", "index", &cols, "eigenvalue index", "λ_i / λ_1", true),
        summary,
    })
}

pub(super) fn capacity_spacing(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let sweep = spacing_sweep(cfg)?;
    let snr_db = cfg.grid("snr", "snr_db")?;
    let mut curves = vec![vec![0.0; snr_db.len()]; sweep.models.len()];
    for (mi, curve) in curves.iter_mut().enumerate() {
        for r in 0..sweep.realizations {
            let h = sweep.realization(mi, r)?;
            let nt = h.ncols() as f64;
            let ev = singular_spectrum_of(&h)?.eigenvalues();
            for (c, &db) in curve.iter_mut().zip(&snr_db) {
                let snr = db_to_linear(db);
                let bits: f64 = ev.iter().map(|l| (1.0 + snr / nt * l).log2()).sum();
                *c += bits / sweep.realizations as f64;
            }
        }
    }
    let cols = names("c", &sweep.tags);
    let mut headers = vec!["snr_db".to_string()];
    headers.extend(cols.iter().cloned());
    let mut t = Table::new(headers);
    for (i, &db) in snr_db.iter().enumerate() {
        let mut row = vec![db];
        row.extend(curves.iter().map(|c| c[i]));
        t.push(row);
    }
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Capacity vs receive spacing", "snr_db", &cols, "SNR (dB)", "capacity (bit/s/Hz)", false),
        summary: vec![("realizations".into(), sweep.realizations.to_string())],
    })
}

/// Users are the receive elements on a regular sub-grid with the given
/// stride.
fn user_rows(rx_side: usize, stride: usize) -> Vec<usize> {
    let mut rows = Vec::new();
    for j in (0..rx_side).step_by(stride) {
        for i in (0..rx_side).step_by(stride) {
            rows.push(j * rx_side + i);
        }
    }
    rows
}

pub(super) fn precoders(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let sweep = spacing_sweep(cfg)?;
    let stride = cfg.usize("users", "stride")?;
    if stride == 0 {
        return Err(crate::Error::Config("[users] stride must be positive".into()));
    }
    let snr_db = cfg.grid("snr", "snr_db")?;
    let rows = user_rows(sweep.rx_side, stride);
    let mut cols = Vec::new();
    let mut curves = Vec::new();
    for (mi, tag) in sweep.tags.iter().enumerate() {
        let mut per_kind = vec![vec![0.0; snr_db.len()]; PrecoderKind::ALL.len()];
        for r in 0..sweep.realizations {
            let full = sweep.realization(mi, r)?;
            let h = ChannelMatrix::scalar(full.select_rows(&rows))?;
            for (ki, kind) in PrecoderKind::ALL.iter().enumerate() {
                for (si, &db) in snr_db.iter().enumerate() {
                    per_kind[ki][si] +=
                        precoder_spectral_efficiency(&h, *kind, db_to_linear(db))? / sweep.realizations as f64;
                }
            }
        }
        for (ki, kind) in PrecoderKind::ALL.iter().enumerate() {
            cols.push(format!("{}_{tag}", kind.label().to_lowercase()));
            curves.push(per_kind[ki].clone());
        }
    }
    let mut headers = vec!["snr_db".to_string()];
    headers.extend(cols.iter().cloned());
    let mut t = Table::new(headers);
    for (i, &db) in snr_db.iter().enumerate() {
        let mut row = vec![db];
        row.extend(curves.iter().map(|c| c[i]));
        t.push(row);
    }
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Precoder spectral efficiency", "snr_db", &cols, "SNR (dB)", "sum rate (bit/s/Hz)", false),
        summary: vec![
            ("users".into(), rows.len().to_string()),
            ("realizations".into(), sweep.realizations.to_string()),
        ],
    })
}

pub(super) fn polarization(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let carrier = cfg.carrier()?;
    let lambda = carrier.wavelength();
    let n = cfg.usize("arrays", "side_elements")?;
    let spacing = cfg.f64("arrays", "spacing_wavelengths")? * lambda;
    let dist = cfg.f64("link", "distance_wavelengths")? * lambda;
    let tx = PlanarAperture::grid(n, n, spacing, Point3::ORIGIN)?;
    let rx = tx.translated(Point3::new(0.0, 0.0, dist));
    let h = los_dyadic_channel(&tx, &rx, &carrier)?;
    use Polarization::{X, Y, Z};
    let pairs = [(X, X), (Y, Y), (Z, Z), (X, Y), (X, Z), (Y, Z)];
    let mut spectra = Vec::new();
    for (a, b) in pairs {
        spectra.push(singular_spectrum_of(&h.block(a, b)?)?.singular_values().to_vec());
    }
    let top = spectra[..3].iter().map(|s| s[0]).fold(0.0, f64::max);
    let cols: Vec<String> = pairs.iter().map(|(a, b)| format!("{}{}", a.label(), b.label())).collect();
    let mut headers = vec!["index".to_string()];
    headers.extend(cols.iter().cloned());
    let mut t = Table::new(headers);
    for i in 0..spectra[0].len() {
        let mut row = vec![(i + 1) as f64];
        row.extend(spectra.iter().map(|s| s[i] / top));
        t.push(row);
    }
    let summary = cols
        .iter()
        .zip(&spectra)
        .map(|(c, s)| (format!("energy_{c}"), format!("{}", s.iter().map(|v| v * v).sum::<f64>() / (top * top))))
        .collect();
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Polarized LoS singular values", "index", &cols, "index", "σ_i / max co-polar σ_1", true),
        summary,
    })
}

pub(super) fn capacity_bound(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let carrier = cfg.carrier()?;
    let lambda = carrier.wavelength();
    let n = cfg.usize("arrays", "side_elements")?;
    let spacing = cfg.f64("arrays", "spacing_wavelengths")? * lambda;
    let area = cfg.f64("arrays", "element_area_m2")?;
    let distances = cfg.f64_list("link", "distances_m")?;
    let snr_db = cfg.grid("snr", "snr_db")?;
    let tx = PlanarAperture::grid(n, n, spacing, Point3::ORIGIN)?.with_element_area(area)?;
    let mut headers = vec!["snr_db".to_string()];
    let mut curves: Vec<Vec<f64>> = Vec::new();
    for &d in &distances {
        let rx = tx.translated(Point3::new(0.0, 0.0, d));
        let streams = default_streams(&los_dyadic_channel(&tx, &rx, &carrier)?);
        let tag = num_tag(d);
        let (mut exact, mut full, mut far) = (vec![], vec![], vec![]);
        for &db in &snr_db {
            let snr = db_to_linear(db);
            exact.push(los_capacity_uniform(&tx, &rx, &carrier, snr, streams)?.bits_per_s_per_hz);
            full.push(capacity_upper_bound(&tx, &rx, &carrier, snr, streams)?);
            far.push(capacity_upper_bound_far_field(&tx, &rx, &carrier, snr, streams)?);
        }
        headers.extend([format!("exact_{tag}m"), format!("bound_{tag}m"), format!("farfield_{tag}m")]);
        curves.extend([exact, full, far]);
    }
    let mut t = Table::new(headers.clone());
    for (i, &db) in snr_db.iter().enumerate() {
        let mut row = vec![db];
        row.extend(curves.iter().map(|c| c[i]));
        t.push(row);
    }
    Ok(ExperimentOutput {
        table: t,
        plot: plot("LoS capacity and upper bound", "snr_db", &headers[1..], "transmit SNR (dB)", "capacity (bit/s/Hz)", false),
        summary: vec![],
    })
}

pub(super) fn packing(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let carrier = cfg.carrier()?;
    let link = LineLinkConfig {
        source_length: cfg.f64("geometry", "source_length_wavelengths")?,
        observation_length: cfg.f64("geometry", "observation_length_wavelengths")?,
        separation: cfg.f64("geometry", "separation_wavelengths")?,
        source_points: cfg.usize("geometry", "source_points")?,
        observation_points: cfg.usize("geometry", "observation_points")?,
        energy_radius: cfg.f64("packing", "energy_radius")?,
        epsilon: cfg.f64("packing", "epsilon")?,
        packing_dim: cfg.usize("packing", "dim")?,
    };
    let deg = PI / 180.0;
    let constraint = PatternConstraint::new(
        cfg.f64("constraint", "window_low_deg")? * deg,
        cfg.f64("constraint", "window_high_deg")? * deg,
        cfg.f64("constraint", "leakage_threshold")?,
    )?
    .with_grid_step(cfg.f64("constraint", "grid_step_deg")? * deg)?;
    let free = epsilon_capacity(&link, &carrier, None)?;
    let held = epsilon_capacity(&link, &carrier, Some(&constraint))?;
    let mut t = Table::new(["mode", "semiaxis", "leakage", "kept"]);
    for (i, m) in held.modes.iter().enumerate() {
        t.push(vec![(i + 1) as f64, m.semiaxis, m.leakage, if m.kept { 1.0 } else { 0.0 }]);
    }
    let summary = vec![
        ("balls_unconstrained".into(), free.ball_count.to_string()),
        ("balls_constrained".into(), held.ball_count.to_string()),
        ("removed_by_constraint".into(), held.removed_by_constraint.to_string()),
        ("capacity_bits_unconstrained".into(), format!("{}", free.capacity_bits)),
        ("capacity_bits_constrained".into(), format!("{}", held.capacity_bits)),
    ];
    let ys = ["semiaxis", "leakage"].map(String::from);
    Ok(ExperimentOutput {
        table: t,
        plot: plot("Source-mode semi-axes and pattern leakage", "mode", &ys, "mode index", "value", true),
        summary,
    })
}
