//! Channel capacity: waterfilling versus uniform power on a Fourier
//! plane-wave channel, and the closed-form LoS upper bound.
//!
//! ```bash
//! cargo run --release --example capacity
//! ```

use emit_holo::channels::{fourier_planewave_channel, PlanarAperture, WavenumberSpectrum};
use emit_holo::em::{CarrierConfig, Point3};
use emit_holo::infomeasure::*;

fn main() -> emit_holo::Result<()> {
    let carrier = CarrierConfig::from_wavelength(1.0)?;
    let tx = PlanarAperture::grid(10, 10, 0.5, Point3::ORIGIN)?;
    let rx = PlanarAperture::grid(6, 6, 0.25, Point3::ORIGIN)?;
    let spectrum = WavenumberSpectrum::for_apertures(&tx, &rx, &carrier, 42)?;
    let h = fourier_planewave_channel(&tx, &rx, &spectrum)?;
    let s = singular_spectrum(&h)?;
    let n = s.len();
    println!("Fourier channel {}×{}, {} dominant modes", h.nrows(), h.ncols(), effective_dof(&s, 0.01)?.count);
    for snr_db in [0.0, 10.0, 20.0] {
        let p = 10f64.powf(snr_db / 10.0);
        let w = capacity_waterfilling(&s, p, 1.0)?;
        let u = capacity_uniform(&s, p / n as f64, 1.0, n)?;
        let active = w.allocation.iter().filter(|&&x| x > 0.0).count();
        println!(
            "  {snr_db:>4} dB: waterfilling {:.2} bit/s/Hz on {active} modes, uniform {:.2}",
            w.bits_per_s_per_hz, u.bits_per_s_per_hz
        );
    }

    let small = PlanarAperture::grid(3, 3, 0.5, Point3::ORIGIN)?;
    let far = small.translated(Point3::new(0.0, 0.0, 2.0));
    let streams = default_streams(&emit_holo::channels::los_dyadic_channel(&small, &far, &carrier)?);
    println!("\nLoS 3×3 ↔ 3×3 at 2λ, {streams} streams");
    for snr_db in [-60.0, -50.0, -40.0] {
        let snr = 10f64.powf(snr_db / 10.0);
        println!(
            "  {snr_db} dB: exact {:.3}, bound {:.3}, far-field bound {:.3}",
            los_capacity_uniform(&small, &far, &carrier, snr, streams)?.bits_per_s_per_hz,
            capacity_upper_bound(&small, &far, &carrier, snr, streams)?,
            capacity_upper_bound_far_field(&small, &far, &carrier, snr, streams)?
        );
    }
    Ok(())
}
