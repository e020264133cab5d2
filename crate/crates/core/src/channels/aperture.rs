use crate::em::Point3;
use crate::error::{Error, Result};

/// Discretized planar aperture: element centers plus per-element area.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarAperture {
    element_centers: Vec<Point3>,
    element_area_m2: f64,
    spacing_m: f64,
    normal: [f64; 3],
    extent_m: (f64, f64),
}

fn in_plane_basis(n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    // Pick the coordinate axis least aligned with n, Gram-Schmidt it.
    let a = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let dot = a[0] * n[0] + a[1] * n[1] + a[2] * n[2];
    let mut u = [a[0] - dot * n[0], a[1] - dot * n[1], a[2] - dot * n[2]];
    let un = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    u.iter_mut().for_each(|c| *c /= un);
    let v = [
        n[1] * u[2] - n[2] * u[1],
        n[2] * u[0] - n[0] * u[2],
        n[0] * u[1] - n[1] * u[0],
    ];
    (u, v)
}

impl PlanarAperture {
    /// `nx × ny` grid in a plane parallel to `z = 0`, centered on `center`.
    /// Each element owns a full `spacing²` cell.
    pub fn grid(nx: usize, ny: usize, spacing_m: f64, center: Point3) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::validation("aperture needs at least one element per side"));
        }
        if !(spacing_m.is_finite() && spacing_m > 0.0) {
            return Err(Error::validation("element spacing must be positive"));
        }
        let x0 = -(nx as f64 - 1.0) * spacing_m / 2.0;
        let y0 = -(ny as f64 - 1.0) * spacing_m / 2.0;
        let mut element_centers = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                element_centers.push(
                    center + Point3::new(x0 + i as f64 * spacing_m, y0 + j as f64 * spacing_m, 0.0),
                );
            }
        }
        Ok(PlanarAperture {
            element_centers,
            element_area_m2: spacing_m * spacing_m,
            spacing_m,
            normal: [0.0, 0.0, 1.0],
            extent_m: (nx as f64 * spacing_m, ny as f64 * spacing_m),
        })
    }

    /// Arbitrary coplanar element set.
    pub fn from_points(points: Vec<Point3>, element_area_m2: f64, spacing_m: f64, normal: [f64; 3]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::validation("aperture has no elements"));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::validation("element centers must be finite"));
        }
        if !(spacing_m.is_finite() && spacing_m > 0.0) {
            return Err(Error::validation("element spacing must be positive"));
        }
        let nn = (normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]).sqrt();
        if !(nn > 0.0 && nn.is_finite()) {
            return Err(Error::validation("normal must be a nonzero vector"));
        }
        let normal = [normal[0] / nn, normal[1] / nn, normal[2] / nn];
        let mut sorted: Vec<[f64; 3]> = points.iter().map(|p| p.to_array()).collect();
        sorted.sort_by(|a, b| {
            a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])).then(a[2].total_cmp(&b[2]))
        });
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::validation("element centers must be pairwise distinct"));
        }
        let (u, v) = in_plane_basis(normal);
        let proj = |p: &Point3, b: [f64; 3]| p.x * b[0] + p.y * b[1] + p.z * b[2];
        let span = |b: [f64; 3]| {
            let (lo, hi) = points
                .iter()
                .map(|p| proj(p, b))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(x), h.max(x)));
            hi - lo + spacing_m
        };
        let extent_m = (span(u), span(v));
        let ap = PlanarAperture {
            element_centers: points,
            element_area_m2: spacing_m * spacing_m,
            spacing_m,
            normal,
            extent_m,
        };
        ap.with_element_area(element_area_m2)
    }

    /// Replace the per-element area; must not exceed the cell `spacing²`.
    pub fn with_element_area(mut self, area_m2: f64) -> Result<Self> {
        if !(area_m2.is_finite() && area_m2 > 0.0) {
            return Err(Error::validation("element area must be positive"));
        }
        if area_m2 > self.spacing_m * self.spacing_m * (1.0 + 1e-12) {
            return Err(Error::validation(format!(
                "element area {area_m2} exceeds its cell {}",
                self.spacing_m * self.spacing_m
            )));
        }
        self.element_area_m2 = area_m2;
        Ok(self)
    }

    pub fn translated(&self, offset: Point3) -> Self {
        let mut out = self.clone();
        out.element_centers.iter_mut().for_each(|p| *p = *p + offset);
        out
    }

    pub fn element_centers(&self) -> &[Point3] {
        &self.element_centers
    }

    pub fn len(&self) -> usize {
        self.element_centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.element_centers.is_empty()
    }

    pub fn element_area_m2(&self) -> f64 {
        self.element_area_m2
    }

    pub fn spacing_m(&self) -> f64 {
        self.spacing_m
    }

    pub fn normal(&self) -> [f64; 3] {
        self.normal
    }

    /// Side lengths of the aperture (element count × spacing per side).
    pub fn extent_m(&self) -> (f64, f64) {
        self.extent_m
    }

    /// Diagonal of the aperture, the diameter used for the Rayleigh distance.
    pub fn diameter_m(&self) -> f64 {
        self.extent_m.0.hypot(self.extent_m.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_geometry() {
        let a = PlanarAperture::grid(4, 2, 0.5, Point3::new(0.0, 0.0, 3.0)).unwrap();
        assert_eq!(a.len(), 8);
        assert_eq!(a.extent_m(), (2.0, 1.0));
        assert_eq!(a.element_area_m2(), 0.25);
        let cx: f64 = a.element_centers().iter().map(|p| p.x).sum::<f64>() / 8.0;
        assert!(cx.abs() < 1e-15);
        assert!(a.element_centers().iter().all(|p| p.z == 3.0));
    }

    #[test]
    fn area_cannot_exceed_cell() {
        let a = PlanarAperture::grid(2, 2, 0.5, Point3::ORIGIN).unwrap();
        assert!(a.clone().with_element_area(0.3).is_err());
        assert!(a.with_element_area(0.1).is_ok());
    }

    #[test]
    fn duplicate_points_rejected() {
        let p = vec![Point3::ORIGIN, Point3::new(1.0, 0.0, 0.0), Point3::ORIGIN];
        assert!(PlanarAperture::from_points(p, 0.1, 0.5, [0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn from_points_extent() {
        let p = vec![Point3::new(0.0, 0.0, 1.0), Point3::new(1.0, 0.0, 1.0), Point3::new(0.0, 2.0, 1.0)];
        let a = PlanarAperture::from_points(p, 0.1, 0.5, [0.0, 0.0, 2.0]).unwrap();
        let (ex, ey) = a.extent_m();
        let mut e = [ex, ey];
        e.sort_by(f64::total_cmp);
        assert!((e[0] - 1.5).abs() < 1e-12 && (e[1] - 2.5).abs() < 1e-12);
        assert_eq!(a.normal(), [0.0, 0.0, 1.0]);
    }
}
