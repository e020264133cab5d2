//! Information measures over channel operators: singular spectra, degrees
//! of freedom, capacities and precoder rates.

mod capacity;
mod dof;
mod kit;
mod precoding;
mod spectrum;

pub use capacity::{
    capacity_uniform, capacity_upper_bound, capacity_upper_bound_far_field, capacity_waterfilling, default_streams,
    epsilon_coefficients, los_capacity_uniform, CapacityResult,
};
pub use dof::{
    ball_packing_dof, landau_dof, landau_dof_time_limited, minmax_spatial_dof, spatial_dof_circular, temporal_dof,
    unit_ball_volume,
};
pub use kit::{sinr_kit, snr_kit, snr_sit};
pub use precoding::{precoder, precoder_spectral_efficiency, PrecoderKind};
pub use spectrum::{
    effective_dof, singular_spectrum, singular_spectrum_of, DofEstimate, DofMethod, EigenSpectrum, SvdFactors,
    DEFAULT_DOF_THRESHOLD,
};
