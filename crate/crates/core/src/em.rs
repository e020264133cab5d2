//! Free-space electromagnetics: carrier bookkeeping, geometry, scalar and
//! dyadic Green's functions, and the Weyl plane-wave split of the scalar
//! kernel into propagating and evanescent parts.
//!
//! Time convention is `e^{+jωt}`, so outgoing waves carry `e^{-j k0 d}`.

use std::f64::consts::PI;
use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::{bessel_j0, integrate_partitioned, Tolerance};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Vacuum permeability, H/m.
pub const MU_0: f64 = 4.0e-7 * PI;

/// Frequency / wavelength / wavenumber bundle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierConfig {
    pub frequency_hz: f64,
    pub wavelength_m: f64,
    pub wavenumber_rad_per_m: f64,
    pub angular_frequency_rad_per_s: f64,
    pub permeability: f64,
}

impl CarrierConfig {
    pub fn from_frequency(frequency_hz: f64) -> Result<Self> {
        if !(frequency_hz.is_finite() && frequency_hz > 0.0) {
            return Err(Error::validation(format!(
                "frequency must be positive, got {frequency_hz}"
            )));
        }
        let wavelength_m = SPEED_OF_LIGHT / frequency_hz;
        Ok(CarrierConfig {
            frequency_hz,
            wavelength_m,
            wavenumber_rad_per_m: 2.0 * PI / wavelength_m,
            angular_frequency_rad_per_s: 2.0 * PI * frequency_hz,
            permeability: MU_0,
        })
    }

    pub fn from_wavelength(wavelength_m: f64) -> Result<Self> {
        if !(wavelength_m.is_finite() && wavelength_m > 0.0) {
            return Err(Error::validation(format!(
                "wavelength must be positive, got {wavelength_m}"
            )));
        }
        let mut c = Self::from_frequency(SPEED_OF_LIGHT / wavelength_m)?;
        c.wavelength_m = wavelength_m;
        c.wavenumber_rad_per_m = 2.0 * PI / wavelength_m;
        Ok(c)
    }

    pub fn with_permeability(mut self, permeability: f64) -> Result<Self> {
        if !(permeability.is_finite() && permeability > 0.0) {
            return Err(Error::validation("permeability must be positive"));
        }
        self.permeability = permeability;
        Ok(self)
    }

    #[inline]
    pub fn k0(&self) -> f64 {
        self.wavenumber_rad_per_m
    }

    #[inline]
    pub fn wavelength(&self) -> f64 {
        self.wavelength_m
    }

    /// `ρ = ω²μ²`, the gain constant in front of the LoS capacity expression.
    pub fn rho(&self) -> f64 {
        let wm = self.angular_frequency_rad_per_s * self.permeability;
        wm * wm
    }
}

/// Point (or displacement) in 3-space, meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(&self, o: &Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(&self, o: &Point3) -> f64 {
        (*self - *o).norm()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

/// Cartesian polarization index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Polarization {
    pub const ALL: [Polarization; 3] = [Polarization::X, Polarization::Y, Polarization::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Polarization::X => "X",
            Polarization::Y => "Y",
            Polarization::Z => "Z",
        }
    }
}

/// 3×3 complex dyad, rows/columns indexed by [`Polarization`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicTensor(pub Matrix3<Complex64>);

impl DyadicTensor {
    pub fn zeros() -> Self {
        DyadicTensor(Matrix3::zeros())
    }

    pub fn get(&self, row: Polarization, col: Polarization) -> Complex64 {
        self.0[(row.index(), col.index())]
    }

    pub fn transpose(&self) -> Self {
        DyadicTensor(self.0.transpose())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        DyadicTensor(self.0 * s)
    }

    /// `G · v` for a complex 3-vector.
    pub fn apply(&self, v: &[Complex64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                *o += self.0[(i, j)] * vj;
            }
        }
        out
    }
}

impl Index<(Polarization, Polarization)> for DyadicTensor {
    type Output = Complex64;
    fn index(&self, (r, c): (Polarization, Polarization)) -> &Complex64 {
        &self.0[(r.index(), c.index())]
    }
}

impl Add for DyadicTensor {
    type Output = DyadicTensor;
    fn add(self, o: DyadicTensor) -> DyadicTensor {
        DyadicTensor(self.0 + o.0)
    }
}

fn separation(r: &Point3, rp: &Point3) -> Result<(Point3, f64)> {
    if !r.is_finite() || !rp.is_finite() {
        return Err(Error::validation("points must have finite coordinates"));
    }
    let d = *r - *rp;
    let dist = d.norm();
    if dist == 0.0 {
        return Err(Error::domain(
            "coincident source and field points: Green's function is singular",
        ));
    }
    Ok((d, dist))
}

/// `e^{-j k0 d} / (4π d)`.
pub fn scalar_green(r: &Point3, rp: &Point3, carrier: &CarrierConfig) -> Result<Complex64> {
    let (_, d) = separation(r, rp)?;
    Ok(scalar_green_at(d, carrier.k0()))
}

#[inline]
pub(crate) fn scalar_green_at(d: f64, k0: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (4.0 * PI * d), -k0 * d)
}

/// Radial decomposition of the dyadic Green's function: `G = g·Σ_n T_n`
/// where `T_n` collects the `(k0 d)^{-n}` terms (n = 0, 1, 2), so the
/// entries carry 1/d, 1/d², 1/d³ radial dependence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadicTerms {
    pub far: DyadicTensor,
    pub middle: DyadicTensor,
    pub near: DyadicTensor,
}

impl DyadicTerms {
    pub fn total(&self) -> DyadicTensor {
        self.far + self.middle + self.near
    }
}

/// Term-by-term closed form of `[I + ∇∇/k0²] g`.
pub fn dyadic_green_terms(r: &Point3, rp: &Point3, carrier: &CarrierConfig) -> Result<DyadicTerms> {
    let (dv, d) = separation(r, rp)?;
    let k0 = carrier.k0();
    let g = scalar_green_at(d, k0);
    let u = [dv.x / d, dv.y / d, dv.z / d];
    let inv = 1.0 / (k0 * d);
    // (I − d̂d̂ᵀ), (I − 3d̂d̂ᵀ)
    let mut transverse = Matrix3::<Complex64>::zeros();
    let mut quad = Matrix3::<Complex64>::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            let uu = u[i] * u[j];
            transverse[(i, j)] = Complex64::new(delta - uu, 0.0);
            quad[(i, j)] = Complex64::new(delta - 3.0 * uu, 0.0);
        }
    }
    Ok(DyadicTerms {
        far: DyadicTensor(transverse * g),
        middle: DyadicTensor(quad * (g * Complex64::new(0.0, -inv))),
        near: DyadicTensor(quad * (g * Complex64::new(-inv * inv, 0.0))),
    })
}

/// Free-space dyadic Green's function
/// `G = g[(1 − j/(k0d) − 1/(k0d)²) I + (−1 + 3j/(k0d) + 3/(k0d)²) d̂d̂ᵀ]`.
pub fn dyadic_green(r: &Point3, rp: &Point3, carrier: &CarrierConfig) -> Result<DyadicTensor> {
    let (dv, d) = separation(r, rp)?;
    Ok(dyadic_green_unchecked(dv, d, carrier.k0()))
}

#[inline]
pub(crate) fn dyadic_green_unchecked(dv: Point3, d: f64, k0: f64) -> DyadicTensor {
    let g = scalar_green_at(d, k0);
    let inv = 1.0 / (k0 * d);
    let a = g * Complex64::new(1.0 - inv * inv, -inv);
    let b = g * Complex64::new(-1.0 + 3.0 * inv * inv, 3.0 * inv);
    let u = [dv.x / d, dv.y / d, dv.z / d];
    let mut m = Matrix3::<Complex64>::zeros();
    for i in 0..3 {
        for j in 0..3 {
            let mut v = b * (u[i] * u[j]);
            if i == j {
                v += a;
            }
            m[(i, j)] = v;
        }
    }
    DyadicTensor(m)
}

fn weyl_tolerance() -> Tolerance {
    Tolerance {
        abs: 1e-10,
        rel: 1e-8,
        max_intervals: 20_000,
    }
}

/// Propagating (homogeneous) part of the Weyl expansion of `e^{-j k0 r}/r`:
/// `−j k0 ∫_0^1 e^{−jα v} J0(β√(1−v²)) dv` with `α = k0|z|`, `β = k0ρ`.
///
/// Evaluated after the substitution `v = sin t`, which removes the square
/// root endpoint behaviour.
pub fn weyl_homogeneous(x: f64, y: f64, z: f64, carrier: &CarrierConfig) -> Result<Complex64> {
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err(Error::validation("coordinates must be finite"));
    }
    if x == 0.0 && y == 0.0 && z == 0.0 {
        return Err(Error::domain("Weyl expansion is singular at the origin"));
    }
    let k0 = carrier.k0();
    let alpha = k0 * z.abs();
    let beta = k0 * x.hypot(y);
    let pieces = (((alpha + beta) / PI).ceil() as usize).clamp(1, 2000);
    let res = integrate_partitioned(
        |t| {
            let (s, c) = t.sin_cos();
            Complex64::from_polar(bessel_j0(beta * c) * c, -alpha * s)
        },
        0.0,
        PI / 2.0,
        pieces,
        weyl_tolerance(),
    )
    .map_err(|e| relabel(e, "weyl_homogeneous"))?;
    Ok(Complex64::new(0.0, -k0) * res.value)
}

/// Evanescent part of the Weyl expansion:
/// `k0 ∫_0^∞ e^{−α v} J0(β√(v²+1)) dv`, truncated where `e^{−αv} < 1e−12`.
pub fn weyl_evanescent(x: f64, y: f64, z: f64, carrier: &CarrierConfig) -> Result<Complex64> {
    if !(x.is_finite() && y.is_finite() && z.is_finite()) {
        return Err(Error::validation("coordinates must be finite"));
    }
    if z == 0.0 {
        return Err(Error::domain(
            "evanescent integral does not decay on the source plane z = 0",
        ));
    }
    let k0 = carrier.k0();
    let alpha = k0 * z.abs();
    let beta = k0 * x.hypot(y);
    let v_max = (1e12f64).ln() / alpha;
    let pieces = ((beta * v_max / PI).ceil() as usize + 1).clamp(1, 4000);
    let res = integrate_partitioned(
        |v| Complex64::new((-alpha * v).exp() * bessel_j0(beta * (v * v + 1.0).sqrt()), 0.0),
        0.0,
        v_max,
        pieces,
        weyl_tolerance(),
    )
    .map_err(|e| relabel(e, "weyl_evanescent"))?;
    Ok(Complex64::new(k0 * res.value.re, 0.0))
}

fn relabel(e: Error, stage: &str) -> Error {
    match e {
        Error::Numerical { residual, .. } => Error::Numerical {
            stage: stage.to_string(),
            residual,
        },
        other => other,
    }
}

/// `2D²/λ`, the near-/far-field boundary of an aperture of diameter `D`.
pub fn rayleigh_distance(aperture_diameter_m: f64, carrier: &CarrierConfig) -> Result<f64> {
    if !(aperture_diameter_m.is_finite() && aperture_diameter_m > 0.0) {
        return Err(Error::validation("aperture diameter must be positive"));
    }
    Ok(2.0 * aperture_diameter_m * aperture_diameter_m / carrier.wavelength())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_carrier() -> CarrierConfig {
        CarrierConfig::from_wavelength(1.0).unwrap()
    }

    #[test]
    fn carrier_invariants() {
        let c = CarrierConfig::from_frequency(2.4e9).unwrap();
        assert!((c.k0() * c.wavelength() / (2.0 * PI) - 1.0).abs() < 1e-12);
        assert!((c.angular_frequency_rad_per_s / (2.0 * PI * c.frequency_hz) - 1.0).abs() < 1e-12);
        assert!(CarrierConfig::from_frequency(0.0).is_err());
        assert!(CarrierConfig::from_wavelength(-1.0).is_err());
    }

    #[test]
    fn scalar_green_full_wavelength() {
        let c = unit_carrier();
        let g = scalar_green(&Point3::new(0.3, -0.4, 0.0), &Point3::new(0.3, 0.6, 0.0), &c).unwrap();
        assert!((g - Complex64::new(1.0 / (4.0 * PI), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn scalar_green_half_wavelength() {
        let c = unit_carrier();
        let g = scalar_green(&Point3::ORIGIN, &Point3::new(0.0, 0.0, 0.5), &c).unwrap();
        assert!((g - Complex64::new(-1.0 / (2.0 * PI), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn coincident_points_are_domain_errors() {
        let c = unit_carrier();
        let p = Point3::new(1.0, 2.0, 3.0);
        assert!(matches!(scalar_green(&p, &p, &c), Err(Error::Domain(_))));
        assert!(matches!(dyadic_green(&p, &p, &c), Err(Error::Domain(_))));
    }

    #[test]
    fn dyadic_axial_symmetry() {
        let c = unit_carrier();
        let g = dyadic_green(&Point3::new(0.0, 0.0, 1.7), &Point3::ORIGIN, &c).unwrap();
        use Polarization::*;
        assert!((g[(X, X)] - g[(Y, Y)]).norm() < 1e-15);
        for (a, b) in [(X, Z), (Z, X), (Y, Z), (Z, Y), (X, Y), (Y, X)] {
            assert_eq!(g[(a, b)].norm(), 0.0, "{a:?}{b:?}");
        }
    }

    // Independent oracle: I·g + ∇∇g / k0² via central differences of the
    // scalar kernel.
    fn dyadic_by_finite_differences(r: Point3, rp: Point3, c: &CarrierConfig) -> Matrix3<Complex64> {
        let h = 1e-4 * c.wavelength();
        let k2 = c.k0() * c.k0();
        let g = |p: Point3| scalar_green(&p, &rp, c).unwrap();
        let e = [Point3::new(h, 0.0, 0.0), Point3::new(0.0, h, 0.0), Point3::new(0.0, 0.0, h)];
        let mut m = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                let d2 = if i == j {
                    (g(r + e[i]) - g(r) * 2.0 + g(r - e[i])) / (h * h)
                } else {
                    (g(r + e[i] + e[j]) - g(r + e[i] - e[j]) - g(r - e[i] + e[j]) + g(r - e[i] - e[j]))
                        / (4.0 * h * h)
                };
                m[(i, j)] = d2 / k2 + if i == j { g(r) } else { Complex64::new(0.0, 0.0) };
            }
        }
        m
    }

    #[test]
    fn dyadic_matches_finite_difference_hessian() {
        let c = unit_carrier();
        for (r, rp) in [
            (Point3::new(0.3, 0.2, 0.9), Point3::ORIGIN),
            (Point3::new(-1.1, 2.3, 0.4), Point3::new(0.5, 0.1, -0.7)),
            (Point3::new(0.05, 0.1, 0.08), Point3::ORIGIN),
        ] {
            let exact = dyadic_green(&r, &rp, &c).unwrap().0;
            let fd = dyadic_by_finite_differences(r, rp, &c);
            let rel = (exact - fd).norm() / exact.norm();
            assert!(rel < 1e-5, "rel={rel}");
        }
    }

    #[test]
    fn dyadic_terms_sum_to_total() {
        let c = unit_carrier();
        let r = Point3::new(0.4, -0.2, 1.1);
        let t = dyadic_green_terms(&r, &Point3::ORIGIN, &c).unwrap();
        let g = dyadic_green(&r, &Point3::ORIGIN, &c).unwrap();
        assert!((t.total().0 - g.0).norm() < 1e-14 * g.0.norm());
    }

    #[test]
    fn far_field_terms_are_small_at_k0d_100() {
        let c = unit_carrier();
        let d = 100.0 / c.k0();
        let r = Point3::new(d * 0.6, 0.0, d * 0.8);
        let t = dyadic_green_terms(&r, &Point3::ORIGIN, &c).unwrap();
        let ratio = (t.middle.0 + t.near.0).norm() / t.far.frobenius_norm();
        // √3·(1/(k0d) + 1/(k0d)²) bounds this ratio: ≈ 0.01750
        assert!(ratio < 0.02, "ratio={ratio}");
        assert!(ratio <= 3f64.sqrt() * (0.01 + 1e-4) + 1e-12);
    }

    #[test]
    fn unit_dyad_trace_is_one() {
        for v in [Point3::new(1.0, 2.0, 3.0), Point3::new(-0.2, 0.0, 5.0)] {
            let n = v.norm();
            let tr = (v.x * v.x + v.y * v.y + v.z * v.z) / (n * n);
            assert!((tr - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn weyl_homogeneous_on_axis_full_period_vanishes() {
        let c = unit_carrier();
        let v = weyl_homogeneous(0.0, 0.0, 1.0, &c).unwrap();
        assert!(v.norm() < 1e-9, "{v}");
    }

    #[test]
    fn weyl_homogeneous_depends_only_on_radius() {
        let c = unit_carrier();
        let a = weyl_homogeneous(0.3, 0.4, 0.7, &c).unwrap();
        let b = weyl_homogeneous(0.5, 0.0, 0.7, &c).unwrap();
        assert!((a - b).norm() < 1e-9 * a.norm());
    }

    #[test]
    fn weyl_split_sums_to_spherical_wave_at_k0d_20() {
        let c = unit_carrier();
        let d = 20.0 / c.k0();
        let (x, y, z) = (d * 0.48, d * 0.36, d * 0.8);
        let total = weyl_homogeneous(x, y, z, &c).unwrap() + weyl_evanescent(x, y, z, &c).unwrap();
        let exact = Complex64::from_polar(1.0 / d, -c.k0() * d);
        assert!((total - exact).norm() < 1e-8 * exact.norm() * 10.0, "{total} vs {exact}");
    }

    #[test]
    fn weyl_evanescent_is_real_and_decays() {
        let c = unit_carrier();
        let near = weyl_evanescent(0.3, 0.1, 1.0, &c).unwrap();
        let far = weyl_evanescent(0.3, 0.1, 2.0, &c).unwrap();
        assert_eq!(near.im, 0.0);
        assert!(near.norm() > far.norm());
        assert!(matches!(weyl_evanescent(0.3, 0.1, 0.0, &c), Err(Error::Domain(_))));
    }

    // On axis both parts have closed forms: g_E = 1/|z| and
    // g_H = (e^{-j k0 |z|} - 1)/|z|. The evanescent part therefore decays
    // algebraically, not exponentially, away from the source plane.
    #[test]
    fn weyl_on_axis_closed_forms() {
        let c = unit_carrier();
        for z in [0.25, 1.3, 50.0 / c.k0()] {
            let e = weyl_evanescent(0.0, 0.0, z, &c).unwrap();
            let h = weyl_homogeneous(0.0, 0.0, z, &c).unwrap();
            assert!((e.re - 1.0 / z).abs() < 1e-8 / z, "z={z}: {e}");
            let expect = (Complex64::from_polar(1.0, -c.k0() * z) - 1.0) / z;
            assert!((h - expect).norm() < 1e-8 / z, "z={z}: {h} vs {expect}");
        }
    }

    #[test]
    fn rayleigh_examples() {
        let c = CarrierConfig::from_frequency(2.4e9).unwrap();
        let r = rayleigh_distance(13f64.sqrt(), &c).unwrap();
        assert!((r - 208.0).abs() / 208.0 < 0.05, "r={r}");
        let d = c.wavelength();
        assert!((rayleigh_distance(d, &c).unwrap() - 2.0 * d).abs() < 1e-15);
        let r1 = rayleigh_distance(1.0, &c).unwrap();
        let r2 = rayleigh_distance(2.0, &c).unwrap();
        assert!((r2 / r1 - 4.0).abs() < 1e-12);
        assert!(rayleigh_distance(0.0, &c).is_err());
    }

    fn point() -> impl Strategy<Value = Point3> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| Point3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn scalar_reciprocity(a in point(), b in point()) {
            prop_assume!(a.distance(&b) > 1e-3);
            let c = unit_carrier();
            prop_assert_eq!(scalar_green(&a, &b, &c).unwrap(), scalar_green(&b, &a, &c).unwrap());
        }

        #[test]
        fn dyadic_reciprocity(a in point(), b in point()) {
            prop_assume!(a.distance(&b) > 1e-3);
            let c = unit_carrier();
            let g1 = dyadic_green(&a, &b, &c).unwrap();
            let g2 = dyadic_green(&b, &a, &c).unwrap().transpose();
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!((g1.0[(i, j)] - g2.0[(i, j)]).norm() <= 1e-12 * g1.frobenius_norm().max(1.0));
                }
            }
            prop_assert!(g1.is_finite());
        }
    }
}
