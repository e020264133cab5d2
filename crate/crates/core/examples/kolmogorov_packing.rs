//! Kolmogorov ε-capacity of a line-to-line link, with and without a
//! radiation-pattern constraint.
//!
//! ```bash
//! cargo run --release --example kolmogorov_packing
//! ```

use emit_holo::em::CarrierConfig;
use emit_holo::packing::*;

fn main() -> emit_holo::Result<()> {
    let carrier = CarrierConfig::from_wavelength(1.0)?;
    let window = PatternConstraint::new(-10f64.to_radians(), 10f64.to_radians(), 0.8)?;

    let cfg = LineLinkConfig::reference_geometry(1.0, 0.0208);
    let free = epsilon_capacity(&cfg, &carrier, None)?;
    let held = epsilon_capacity(&cfg, &carrier, Some(&window))?;
    println!("leading semi-axes: {:?}", &free.semiaxes[..6].iter().map(|a| format!("{a:.4}")).collect::<Vec<_>>());
    for (i, m) in held.modes.iter().take(6).enumerate() {
        println!("  mode {}: leakage {:.3} {}", i + 1, m.leakage, if m.kept { "kept" } else { "dropped" });
    }
    println!(
        "unconstrained {} balls ({:.2} bits), constrained {} balls ({:.2} bits)",
        free.ball_count, free.capacity_bits, held.ball_count, held.capacity_bits
    );

    println!("\nε sweep:");
    for eps in [0.01, 0.015, 0.02, 0.03, 0.05] {
        let r = epsilon_capacity(&LineLinkConfig::reference_geometry(1.0, eps), &carrier, None)?;
        println!("  ε = {eps:<5} → {:>4} balls, {:.2} bits", r.ball_count, r.capacity_bits);
    }
    Ok(())
}
