use std::f64::consts::PI;

use crate::error::{Error, Result};

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::validation(format!("{name} must be positive, got {v}")))
    }
}

/// Leading-order time–bandwidth DOF, `BT/π` (B in rad/s).
pub fn temporal_dof(bandwidth_rad: f64, duration_s: f64) -> Result<f64> {
    positive("bandwidth", bandwidth_rad)?;
    positive("duration", duration_s)?;
    Ok(bandwidth_rad * duration_s / PI)
}

/// Leading-order spatial DOF on a circular boundary, `f·2πr̃/π`, with `r̃`
/// the radius normalized by the speed of light.
pub fn spatial_dof_circular(frequency: f64, normalized_radius: f64) -> Result<f64> {
    positive("frequency", frequency)?;
    positive("normalized radius", normalized_radius)?;
    Ok(frequency * 2.0 * PI * normalized_radius / PI)
}

/// Space–time DOF of a band-limited source, `(BT/π)·(2πr̃B/2π)`.
pub fn landau_dof(bandwidth_rad: f64, duration_s: f64, normalized_radius: f64) -> Result<f64> {
    positive("normalized radius", normalized_radius)?;
    Ok(temporal_dof(bandwidth_rad, duration_s)? * (2.0 * PI * normalized_radius * bandwidth_rad / (2.0 * PI)))
}

/// Time-limited counterpart of [`landau_dof`]. Only the vanishing
/// correction differs, so the leading term is identical.
pub fn landau_dof_time_limited(bandwidth_rad: f64, duration_s: f64, normalized_radius: f64) -> Result<f64> {
    landau_dof(bandwidth_rad, duration_s, normalized_radius)
}

/// Spatial DOF limited by the weaker side, `min(A_t|Ω_t|, A_r|Ω_r|)`.
pub fn minmax_spatial_dof(area_tx: f64, solid_angle_tx: f64, area_rx: f64, solid_angle_rx: f64) -> Result<f64> {
    for (name, v) in [
        ("transmit area", area_tx),
        ("transmit solid angle", solid_angle_tx),
        ("receive area", area_rx),
        ("receive solid angle", solid_angle_rx),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::validation(format!("{name} must be non-negative, got {v}")));
        }
    }
    Ok((area_tx * solid_angle_tx).min(area_rx * solid_angle_rx))
}

/// Volume of the unit ball in 1, 2, 3 dimensions.
pub fn unit_ball_volume(dim: usize) -> Result<f64> {
    match dim {
        1 => Ok(2.0),
        2 => Ok(PI),
        3 => Ok(4.0 * PI / 3.0),
        _ => Err(Error::validation(format!("ball dimension must be 1, 2 or 3, got {dim}"))),
    }
}

/// Number of balls with diameters `δ_x, δ_y, δ_z` (first `dim` used) that
/// fit a set of the given measure.
pub fn ball_packing_dof(measure: f64, delta_x: f64, delta_y: f64, delta_z: f64, dim: usize) -> Result<f64> {
    let beta = unit_ball_volume(dim)?;
    if !(measure.is_finite() && measure >= 0.0) {
        return Err(Error::validation("measure must be non-negative"));
    }
    let deltas = [delta_x, delta_y, delta_z];
    for d in &deltas[..dim] {
        positive("ball diameter", *d)?;
    }
    let ball: f64 = deltas[..dim].iter().map(|d| d / 2.0).product();
    Ok(measure / (beta * ball))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn temporal_and_spatial_examples() {
        assert!((temporal_dof(PI, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((temporal_dof(2.0 * PI, 5.0).unwrap() - 10.0).abs() < 1e-13);
        assert!((spatial_dof_circular(1.0, 1.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((spatial_dof_circular(2.0, 5.0).unwrap() - 20.0).abs() < 1e-13);
        assert!(temporal_dof(0.0, 1.0).is_err());
    }

    #[test]
    fn landau_examples() {
        // B = π, T = 1, r̃B = 2
        let v = landau_dof(PI, 1.0, 2.0 / PI).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
        assert_eq!(v, landau_dof_time_limited(PI, 1.0, 2.0 / PI).unwrap());
    }

    #[test]
    fn minmax_examples() {
        assert_eq!(minmax_spatial_dof(2.0, 3.0, 3.0, 2.0).unwrap(), 6.0);
        // transmitter-limited: enlarging the receiver changes nothing
        let a = minmax_spatial_dof(1.0, 1.0, 4.0, 1.0).unwrap();
        let b = minmax_spatial_dof(1.0, 1.0, 2.0, 1.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(minmax_spatial_dof(1.0, 0.0, 4.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn ball_examples() {
        assert!((unit_ball_volume(3).unwrap() - 4.0 * PI / 3.0).abs() < 1e-15);
        assert_eq!(ball_packing_dof(2.0, 2.0, 9.0, 9.0, 1).unwrap(), 1.0);
        assert!(ball_packing_dof(1.0, 1.0, 1.0, 1.0, 4).is_err());
    }

    proptest! {
        #[test]
        fn landau_factorizes(b in 0.1..100.0f64, t in 0.1..100.0f64, r in 0.01..10.0f64) {
            let v = landau_dof(b, t, r).unwrap();
            let want = temporal_dof(b, t).unwrap() * r * b;
            prop_assert!((v - want).abs() <= 1e-12 * want);
        }

        #[test]
        fn halving_diameters_in_3d_gives_eight(m in 0.1..10.0f64, dx in 0.1..2.0f64, dy in 0.1..2.0f64, dz in 0.1..2.0f64) {
            let a = ball_packing_dof(m, dx, dy, dz, 3).unwrap();
            let b = ball_packing_dof(m, dx / 2.0, dy / 2.0, dz / 2.0, 3).unwrap();
            prop_assert!((b / a - 8.0).abs() < 1e-12);
        }

        #[test]
        fn temporal_linear_in_duration(b in 0.1..100.0f64, t in 0.1..100.0f64) {
            let r = temporal_dof(b, 2.0 * t).unwrap() / temporal_dof(b, t).unwrap();
            prop_assert!((r - 2.0).abs() < 1e-14);
        }
    }
}
