//! Directivity and Q limits for an antenna in a sphere, plus the element
//! gain ceiling of a dense array.
//!
//! ```bash
//! cargo run --example antenna_limits
//! ```

use emit_holo::em::CarrierConfig;
use emit_holo::limits::*;

fn main() -> emit_holo::Result<()> {
    let carrier = CarrierConfig::from_frequency(3.5e9)?;
    println!("{:>6} {:>9} {:>9} {:>9} {:>9}", "k0r", "G_chu", "G_harr", "Q_chu", "Q_harr");
    for ka in [0.5, 1.0, 2.0, 3.0, 5.0, 10.0] {
        let s = SphereEnclosure::from_electrical_size(ka, &carrier)?;
        println!(
            "{ka:>6.1} {:>9.3} {:>9.3} {:>9.3} {:>9.3}",
            chu_gain(&s),
            harrington_gain(&s),
            chu_q(&s),
            harrington_q(&s)
        );
    }

    let lambda = carrier.wavelength();
    let cell = ElementAllotment::new((lambda / 2.0).powi(2), 0.0)?;
    let g = hannan_gain(&cell, &carrier);
    println!("\nhalf-wave cell: Hannan gain {g:.3}, realized at 80% efficiency {:.3}", realized_gain(&cell, &carrier, 0.8)?);

    // a matched, weakly coupled element in a 4-port network
    let s_row = [0.1, 0.05, 0.05, 0.02].map(|m| num_complex::Complex64::new(m, 0.0));
    println!("embedded efficiency from S-parameters: {:.4}", embedded_efficiency_sparams(&s_row)?);
    Ok(())
}
