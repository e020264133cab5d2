//! Rectangular and hexagonal element lattices against the half-wavelength
//! Nyquist pitch.
//!
//! ```bash
//! cargo run --example sampling_lattices
//! ```

use emit_holo::em::CarrierConfig;
use emit_holo::sampling::*;

fn main() -> emit_holo::Result<()> {
    let carrier = CarrierConfig::from_frequency(28e9)?;
    let lambda = carrier.wavelength();
    let side = 10.0 * lambda;
    println!("Nyquist pitch {:.3} mm", nyquist_spacing(&carrier) * 1e3);
    for div in [2.0, 3.0, 4.0, 6.0] {
        let pitch = lambda / div;
        let rect = generate_lattice(side, side, LatticeKind::Rectangular, pitch)?;
        let hex = generate_lattice(side, side, LatticeKind::Hexagonal, pitch)?;
        println!(
            "pitch λ/{div}: oversampling {:.2}, rectangular {} points, hexagonal {}",
            oversampling_factor(pitch, &carrier)?,
            rect.len(),
            hex.len()
        );
    }
    Ok(())
}
