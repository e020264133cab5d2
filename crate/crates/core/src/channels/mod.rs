//! Channel generators: deterministic line-of-sight (dyadic and scalar),
//! the isotropic plane-wave scattering model, the stochastic cavity Green's
//! function, and empirical spatial autocorrelation with the Clarke kernel
//! as reference.

mod aperture;
mod clarke;
mod correlation;
mod fourier;
mod los;
mod matrix;
mod stochastic;

pub use aperture::PlanarAperture;
pub use clarke::{clarke_autocorrelation, clarke_autocorrelation_with, ClarkeKernel};
pub use correlation::{
    empirical_autocorrelation, AutocorrelationOptions, DyadicScatterField, DyadicScatterSampler, FieldModel,
    FieldSampler,
};
pub use fourier::{
    fourier_planewave_channel, isotropic_samples, FourierChannelModel, FourierField, FourierFieldSampler,
    WavenumberSample, WavenumberSpectrum,
};
pub use los::{los_dyadic_channel, los_scalar_channel};
pub use matrix::ChannelMatrix;
pub use stochastic::{
    green_split, stochastic_green_channel, CavityModel, CavityRealization, GreenSplit, DEFAULT_WAVES_PER_MODE,
};
