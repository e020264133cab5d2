//! Empirical spatial autocorrelation of two random field models compared
//! with the Clarke kernels.
//!
//! ```bash
//! cargo run --release --example spatial_correlation
//! ```

use emit_holo::channels::*;
use emit_holo::em::CarrierConfig;

fn main() -> emit_holo::Result<()> {
    let carrier = CarrierConfig::from_wavelength(1.0)?;
    let distances: Vec<f64> = (0..=8).map(|i| i as f64 * 0.25).collect();
    let opts = AutocorrelationOptions {
        master_seed: 42,
        ..Default::default()
    };

    let fourier = FourierField::isotropic(&carrier, 16.0)?;
    let green = DyadicScatterField::new(carrier, 100.0, 16)?;
    let a = empirical_autocorrelation(&fourier, &distances, 2000, &opts)?;
    let b = empirical_autocorrelation(&green, &distances, 2000, &opts)?;

    println!("{:>6} {:>9} {:>9} {:>9} {:>9}", "d/λ", "fourier", "green", "sinc", "J0");
    for ((d, fa), (_, gb)) in a.iter().zip(&b) {
        println!(
            "{d:>6.2} {fa:>9.4} {gb:>9.4} {:>9.4} {:>9.4}",
            clarke_autocorrelation(*d, &carrier)?,
            clarke_autocorrelation_with(*d, &carrier, ClarkeKernel::Planar)?
        );
    }
    Ok(())
}
