//! Field-sampling lattices over planar apertures.

use std::fmt::Write as _;

use crate::em::{CarrierConfig, Point3};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Rectangular,
    Hexagonal,
}

/// Sample points in the `z = 0` plane over `[0, width] × [0, height]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingLattice {
    pub kind: LatticeKind,
    pub pitch_m: f64,
    pub points: Vec<Point3>,
}

impl SamplingLattice {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `x,y,z` per line with a header row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,y,z\n");
        for p in &self.points {
            let _ = writeln!(s, "{},{},{}", p.x, p.y, p.z);
        }
        s
    }
}

/// Half-wavelength spacing.
pub fn nyquist_spacing(carrier: &CarrierConfig) -> f64 {
    carrier.wavelength() / 2.0
}

/// Ratio of the Nyquist spacing to the actual pitch (> 1 means denser
/// than Nyquist).
pub fn oversampling_factor(pitch_m: f64, carrier: &CarrierConfig) -> Result<f64> {
    if !(pitch_m.is_finite() && pitch_m > 0.0) {
        return Err(Error::validation("pitch must be positive"));
    }
    Ok(nyquist_spacing(carrier) / pitch_m)
}

// Absorbs round-off so boundary points on an exact multiple are kept.
const EDGE_SLACK: f64 = 1e-9;

/// Lattice anchored at the `(0, 0)` corner, boundary inclusive. A pitch
/// larger than both sides collapses to the single center point.
pub fn generate_lattice(width_m: f64, height_m: f64, kind: LatticeKind, pitch_m: f64) -> Result<SamplingLattice> {
    for (name, v) in [("width", width_m), ("height", height_m), ("pitch", pitch_m)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::validation(format!("{name} must be positive, got {v}")));
        }
    }
    if pitch_m > width_m && pitch_m > height_m {
        return Ok(SamplingLattice {
            kind,
            pitch_m,
            points: vec![Point3::new(width_m / 2.0, height_m / 2.0, 0.0)],
        });
    }
    let slack = EDGE_SLACK * pitch_m;
    let mut points = Vec::new();
    match kind {
        LatticeKind::Rectangular => {
            let nx = ((width_m + slack) / pitch_m).floor() as usize + 1;
            let ny = ((height_m + slack) / pitch_m).floor() as usize + 1;
            for j in 0..ny {
                for i in 0..nx {
                    points.push(Point3::new(i as f64 * pitch_m, j as f64 * pitch_m, 0.0));
                }
            }
        }
        LatticeKind::Hexagonal => {
            let row = pitch_m * 3f64.sqrt() / 2.0;
            let ny = ((height_m + slack) / row).floor() as usize + 1;
            for j in 0..ny {
                let offset = if j % 2 == 1 { pitch_m / 2.0 } else { 0.0 };
                let mut i = 0usize;
                loop {
                    let x = offset + i as f64 * pitch_m;
                    if x > width_m + slack {
                        break;
                    }
                    points.push(Point3::new(x, j as f64 * row, 0.0));
                    i += 1;
                }
            }
        }
    }
    Ok(SamplingLattice {
        kind,
        pitch_m,
        points,
    })
}
