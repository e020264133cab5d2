//! Polarized near-field line-of-sight channel between two planar arrays:
//! polarization blocks, singular values and effective DOF.
//!
//! ```bash
//! cargo run --release --example los_channel
//! ```

use emit_holo::channels::{los_dyadic_channel, PlanarAperture};
use emit_holo::em::{CarrierConfig, Point3, Polarization};
use emit_holo::infomeasure::{effective_dof, singular_spectrum, singular_spectrum_of, DEFAULT_DOF_THRESHOLD};

fn main() -> emit_holo::Result<()> {
    let carrier = CarrierConfig::from_wavelength(1.0)?;
    let tx = PlanarAperture::grid(8, 8, 0.5, Point3::ORIGIN)?;

    for r in [1.0, 3.0, 10.0, 40.0] {
        let rx = tx.translated(Point3::new(0.0, 0.0, r));
        let h = los_dyadic_channel(&tx, &rx, &carrier)?;
        let dof = effective_dof(&singular_spectrum(&h)?, DEFAULT_DOF_THRESHOLD)?;
        print!("r = {r:>4} λ: {:>3} modes;", dof.count);
        for (a, b) in [(Polarization::X, Polarization::X), (Polarization::Z, Polarization::Z), (Polarization::X, Polarization::Z)] {
            let s = singular_spectrum_of(&h.block(a, b)?)?;
            print!("  σ1({}{}) = {:.3e}", a.label(), b.label(), s.singular_values()[0]);
        }
        println!();
    }
    Ok(())
}
