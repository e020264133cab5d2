//! Downlink MRT, ZF and MMSE precoding for users on a Fourier plane-wave
//! channel.
//!
//! ```bash
//! cargo run --release --example precoding
//! ```

use emit_holo::channels::{ChannelMatrix, FourierChannelModel, PlanarAperture, WavenumberSpectrum};
use emit_holo::em::{CarrierConfig, Point3};
use emit_holo::infomeasure::{precoder_spectral_efficiency, PrecoderKind};
use num_complex::Complex64;

fn main() -> emit_holo::Result<()> {
    let carrier = CarrierConfig::from_wavelength(1.0)?;
    let bs = PlanarAperture::grid(12, 12, 0.5, Point3::ORIGIN)?;
    // four single-antenna users spread over a 3λ × 3λ area
    let users = PlanarAperture::grid(2, 2, 1.5, Point3::ORIGIN)?;
    let spectrum = WavenumberSpectrum::for_apertures(&bs, &users, &carrier, 1)?;
    let model = FourierChannelModel::new(&bs, &users, &spectrum)?;

    println!("{:>6} {:>8} {:>8} {:>8}", "SNR", "MRT", "ZF", "MMSE");
    for snr_db in [-10.0, 0.0, 10.0, 20.0] {
        let snr = 10f64.powf(snr_db / 10.0);
        let mut avg = [0.0; 3];
        for seed in 0..20 {
            // unit average gain per entry
            let m = model.realize(seed).into_entries();
            let scale = ((m.nrows() * m.ncols()) as f64).sqrt() / m.norm();
            let h = ChannelMatrix::scalar(m * Complex64::new(scale, 0.0))?;
            for (k, kind) in PrecoderKind::ALL.iter().enumerate() {
                avg[k] += precoder_spectral_efficiency(&h, *kind, snr)? / 20.0;
            }
        }
        println!("{snr_db:>6} {:>8.2} {:>8.2} {:>8.2}", avg[0], avg[1], avg[2]);
    }
    Ok(())
}
