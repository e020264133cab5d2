use crate::error::{Error, Result};

/// Shannon-picture SNR: signal power `P·N` over uncertainty radius `σ√N`,
/// which cancels to `P/σ²`.
pub fn snr_sit(symbol_power: f64, noise_sigma: f64, n: usize) -> Result<f64> {
    if !(symbol_power > 0.0 && noise_sigma > 0.0 && n > 0) {
        return Err(Error::validation("symbol power, noise and length must be positive"));
    }
    let radius = noise_sigma * (n as f64).sqrt();
    Ok(symbol_power * n as f64 / (radius * radius))
}

/// Kolmogorov-picture SNR, `Ê/ε²`.
pub fn snr_kit(energy: f64, epsilon: f64) -> Result<f64> {
    sinr_kit(energy, epsilon, 0.0)
}

/// Multi-user form, `Ê/(ε² + 𝓘)`.
pub fn sinr_kit(energy: f64, epsilon: f64, interference: f64) -> Result<f64> {
    if !(energy.is_finite() && energy >= 0.0) {
        return Err(Error::validation("energy must be non-negative"));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::validation("uncertainty radius must be positive"));
    }
    if !(interference.is_finite() && interference >= 0.0) {
        return Err(Error::validation("interference must be non-negative"));
    }
    Ok(energy / (epsilon * epsilon + interference))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        for n in [1, 10, 1000] {
            assert!((snr_sit(2.0, 2f64.sqrt(), n).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!((snr_sit(4.0, 1.0, 100).unwrap() - 4.0).abs() < 1e-14);
        assert!((snr_kit(1.0, 0.1).unwrap() - 100.0).abs() < 1e-12);
        assert_eq!(sinr_kit(3.0, 0.5, 0.0).unwrap(), snr_kit(3.0, 0.5).unwrap());
    }

    proptest! {
        #[test]
        fn sinr_decreasing_in_interference(e in 0.01..10.0f64, eps in 0.01..2.0f64, a in 0.0..5.0f64, b in 0.0..5.0f64) {
            prop_assume!(a != b);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(sinr_kit(e, eps, hi).unwrap() < sinr_kit(e, eps, lo).unwrap());
        }
    }
}
