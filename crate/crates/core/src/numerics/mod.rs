//! Numerical building blocks shared by the physics modules: adaptive
//! quadrature, Gauss–Legendre rules and the order-zero Bessel function.

mod quadrature;

pub use quadrature::{gauss_legendre, integrate, integrate_partitioned, QuadResult, Tolerance};

/// Bessel function of the first kind, order zero.
///
/// Backed by the musl/FreeBSD `j0` (rational approximation below 2, Hankel
/// asymptotic form with rational P/Q corrections above), accurate to a few
/// ulp over the whole real line.
#[inline]
pub fn bessel_j0(x: f64) -> f64 {
    libm::j0(x)
}

/// Unnormalized sinc, `sin(x)/x` with the removable singularity filled in.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // J0(x) = (1/π) ∫_0^π cos(x sin t) dt; the periodic trapezoid rule is
    // spectrally accurate, so this is an independent oracle.
    fn j0_trapezoid(x: f64) -> f64 {
        let n = 4096;
        let h = PI / n as f64;
        let mut s = 0.5 * (1.0 + (x * PI.sin()).cos());
        for i in 1..n {
            s += (x * (i as f64 * h).sin()).cos();
        }
        s * h / PI
    }

    #[test]
    fn j0_matches_integral_representation() {
        for &x in &[0.0, 0.3, 1.0, 2.404825557695773, 5.0, 7.99, 8.0, 8.01, 25.0, 120.0, 999.0] {
            let a = bessel_j0(x);
            let b = j0_trapezoid(x);
            assert!((a - b).abs() < 1e-12, "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn j0_first_zero() {
        assert!(bessel_j0(2.404_825_557_695_773).abs() < 1e-14);
    }

    #[test]
    fn sinc_limits() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(PI).abs() < 1e-15);
    }
}
