//! Free-space Green's functions, the Weyl plane-wave split and the
//! Rayleigh distance.
//!
//! ```bash
//! cargo run --example green_functions
//! ```

use emit_holo::em::*;

fn main() -> emit_holo::Result<()> {
    let carrier = CarrierConfig::from_wavelength(1.0)?;
    let src = Point3::ORIGIN;

    for d in [0.1, 0.5, 2.0, 10.0] {
        let obs = Point3::new(0.3 * d, 0.0, d);
        let g = scalar_green(&obs, &src, &carrier)?;
        let t = dyadic_green_terms(&obs, &src, &carrier)?;
        println!(
            "d = {:>5.2} λ  |g| = {:.3e}  ‖G‖ far {:.3e} mid {:.3e} near {:.3e}",
            obs.distance(&src),
            g.norm(),
            t.far.frobenius_norm(),
            t.middle.frobenius_norm(),
            t.near.frobenius_norm()
        );
    }

    let (x, y, z) = (0.4, -0.2, 1.3);
    let h = weyl_homogeneous(x, y, z, &carrier)?;
    let e = weyl_evanescent(x, y, z, &carrier)?;
    let d = (x * x + y * y + z * z).sqrt();
    let exact = num_complex::Complex64::from_polar(1.0 / d, -carrier.k0() * d);
    println!("\nWeyl: homogeneous {h:.4}, evanescent {e:.4}, sum error {:.2e}", (h + e - exact).norm());

    let wifi = CarrierConfig::from_frequency(2.4e9)?;
    println!("2 m × 3 m aperture at 2.4 GHz: Rayleigh distance {:.1} m", rayleigh_distance(13f64.sqrt(), &wifi)?);
    Ok(())
}
