use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [0, 1] (symmetric), with the embedded
// 7-point Gauss rule at the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Absolute/relative stopping tolerance for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-10,
            rel: 1e-8,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let pair = f(c - h * x) + f(c + h * x);
        k += pair * w;
        if j % 2 == 1 {
            g += pair * WG[j / 2];
        }
    }
    let k = k * h;
    let g = g * h;
    (k, (k - g).norm())
}

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature of a complex
/// integrand over `[a, b]`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
) -> Result<QuadResult> {
    integrate_partitioned(f, a, b, 1, tol)
}

/// Same as [`integrate`] but seeds the adaptive loop with `pieces` equal
/// subintervals, which helps strongly oscillatory integrands.
pub fn integrate_partitioned<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    pieces: usize,
    tol: Tolerance,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration bounds must be finite"));
    }
    if a == b {
        return Ok(QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        });
    }
    let pieces = pieces.max(1);
    let mut heap = BinaryHeap::with_capacity(pieces * 2);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let step = (b - a) / pieces as f64;
    for i in 0..pieces {
        let lo = a + step * i as f64;
        let hi = if i + 1 == pieces { b } else { lo + step };
        let (v, e) = kronrod(&f, lo, hi);
        total += v;
        err += e;
        heap.push(Segment { a: lo, b: hi, value: v, error: e });
    }
    let mut evaluations = 15 * pieces;

    loop {
        if !total.re.is_finite() || !total.im.is_finite() {
            return Err(Error::Numerical {
                stage: "adaptive quadrature".into(),
                residual: f64::INFINITY,
            });
        }
        if err <= tol.abs.max(tol.rel * total.norm()) {
            break;
        }
        if heap.len() >= tol.max_intervals {
            return Err(Error::Numerical {
                stage: "adaptive quadrature".into(),
                residual: err,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split in floating point.
            return Err(Error::Numerical {
                stage: "adaptive quadrature".into(),
                residual: err,
            });
        }
        let (v1, e1) = kronrod(&f, worst.a, mid);
        let (v2, e2) = kronrod(&f, mid, worst.b);
        evaluations += 30;
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
    }

    // Re-sum to shed accumulated round-off from the incremental updates.
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for s in heap.iter() {
        value += s.value;
        error += s.error;
    }
    Ok(QuadResult {
        value,
        error,
        evaluations,
    })
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "rule needs at least one node");
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                let jf = j as f64;
                p0 = ((2.0 * jf + 1.0) * z * p1 - jf * p2) / (jf + 1.0);
            }
            // p0 = P_n(z), p1 = P_{n-1}(z)
            dp = nf * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| Complex64::new(x * x * x - 2.0 * x, 0.0), 0.0, 2.0, Tolerance::default()).unwrap();
        assert!((r.value.re - 0.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_complex_exponential() {
        // ∫_0^1 e^{-j 2π v} dv = 0; ∫_0^1 e^{-j v} dv = (1 - e^{-j}) / j
        let r = integrate(|v| Complex64::new(0.0, -2.0 * PI * v).exp(), 0.0, 1.0, Tolerance::default()).unwrap();
        assert!(r.value.norm() < 1e-12);
        let r = integrate(|v| Complex64::new(0.0, -v).exp(), 0.0, 1.0, Tolerance::default()).unwrap();
        let exact = (Complex64::new(1.0, 0.0) - Complex64::new(0.0, -1.0).exp()) / Complex64::new(0.0, 1.0);
        assert!((r.value - exact).norm() < 1e-13);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        let r = integrate(|x| Complex64::new(x.sqrt(), 0.0), 0.0, 1.0, Tolerance::default()).unwrap();
        assert!((r.value.re - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn non_convergence_reports_residual() {
        let tol = Tolerance { abs: 1e-14, rel: 0.0, max_intervals: 3 };
        let err = integrate(|x| Complex64::new((50.0 * x).sin() / (x + 1e-3), 0.0), 0.0, 10.0, tol).unwrap_err();
        match err {
            Error::Numerical { residual, .. } => assert!(residual > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gauss_legendre_weights_and_moments() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n}");
            // exact for degree 2n-1
            let deg = 2 * n - 2;
            let m: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
            assert!((m - 2.0 / (deg as f64 + 1.0)).abs() < 1e-12, "n={n}");
        }
    }
}
