use nalgebra::DMatrix;
use num_complex::Complex64;

use super::spectrum::singular_spectrum_of;
use crate::channels::ChannelMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrecoderKind {
    Mrt,
    Zf,
    Mmse,
}

impl PrecoderKind {
    pub const ALL: [PrecoderKind; 3] = [PrecoderKind::Mrt, PrecoderKind::Zf, PrecoderKind::Mmse];

    pub fn label(self) -> &'static str {
        match self {
            PrecoderKind::Mrt => "MRT",
            PrecoderKind::Zf => "ZF",
            PrecoderKind::Mmse => "MMSE",
        }
    }
}

// Relative singular-value floor below which ZF is declared rank deficient.
const RANK_TOL: f64 = 1e-10;

/// Unit-norm beamformer columns for a `K × N` downlink channel whose rows
/// are the users' receive vectors.
pub fn precoder(h: &DMatrix<Complex64>, kind: PrecoderKind, snr: f64) -> Result<DMatrix<Complex64>> {
    let k = h.nrows();
    let hh = h.adjoint();
    let mut w = match kind {
        PrecoderKind::Mrt => hh,
        PrecoderKind::Zf | PrecoderKind::Mmse => {
            if kind == PrecoderKind::Zf {
                let s = singular_spectrum_of(h)?;
                let sv = s.singular_values();
                let rank = sv.iter().filter(|&&x| x > RANK_TOL * sv[0]).count();
                if k > h.ncols() || rank < k {
                    return Err(Error::validation(format!(
                        "zero-forcing needs full row rank: {k} users but rank {rank} over {} transmit ports",
                        h.ncols()
                    )));
                }
            }
            let mut gram = h * &hh;
            if kind == PrecoderKind::Mmse {
                let reg = Complex64::new(k as f64 / snr, 0.0);
                for i in 0..k {
                    gram[(i, i)] += reg;
                }
            }
            let inv = gram.cholesky().map(|c| c.inverse()).ok_or_else(|| Error::Numerical {
                stage: format!("{} precoder inversion", kind.label()),
                residual: f64::NAN,
            })?;
            hh * inv
        }
    };
    for mut col in w.column_iter_mut() {
        let n = col.norm();
        if n > 0.0 {
            col /= Complex64::new(n, 0.0);
        }
    }
    Ok(w)
}

/// Sum of `log₂(1 + SINR_k)` with power `snr/K` per user and unit noise.
pub fn precoder_spectral_efficiency(h: &ChannelMatrix, kind: PrecoderKind, snr: f64) -> Result<f64> {
    if !(snr.is_finite() && snr > 0.0) {
        return Err(Error::validation(format!("snr must be positive and finite, got {snr}")));
    }
    let hm = h.entries();
    let k = hm.nrows();
    if k == 0 || hm.ncols() == 0 {
        return Err(Error::validation("empty channel"));
    }
    let w = precoder(hm, kind, snr)?;
    let g = hm * w;
    let p = snr / k as f64;
    let mut total = 0.0;
    for u in 0..k {
        let signal = p * g[(u, u)].norm_sqr();
        let interference: f64 = (0..k).filter(|&j| j != u).map(|j| p * g[(u, j)].norm_sqr()).sum();
        total += (1.0 + signal / (interference + 1.0)).log2();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::{complex_normal, rng_from_seed};

    fn random(k: usize, n: usize, seed: u64) -> ChannelMatrix {
        let mut r = rng_from_seed(seed);
        ChannelMatrix::scalar(DMatrix::from_fn(k, n, |_, _| complex_normal(&mut r, 1.0))).unwrap()
    }

    #[test]
    fn single_antenna_all_coincide() {
        let h = ChannelMatrix::scalar(DMatrix::from_element(1, 1, Complex64::new(0.3, -0.4))).unwrap();
        let want = (1.0 + 10.0 * 0.25f64).log2();
        for kind in PrecoderKind::ALL {
            assert!((precoder_spectral_efficiency(&h, kind, 10.0).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zf_rank_deficiency_reported() {
        let row = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)];
        let m = DMatrix::from_fn(2, 3, |_, j| row[j]);
        let h = ChannelMatrix::scalar(m).unwrap();
        let err = precoder_spectral_efficiency(&h, PrecoderKind::Zf, 10.0).unwrap_err();
        assert!(err.to_string().contains("rank"));
        assert!(precoder_spectral_efficiency(&h, PrecoderKind::Mmse, 10.0).is_ok());
    }

    #[test]
    fn zf_nulls_interference() {
        let h = random(3, 6, 2);
        let w = precoder(h.entries(), PrecoderKind::Zf, 1.0).unwrap();
        let g = h.entries() * w;
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(g[(i, j)].norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn mmse_approaches_zf_at_high_snr() {
        let h = random(4, 8, 9);
        let snr = 1e4;
        let z = precoder_spectral_efficiency(&h, PrecoderKind::Zf, snr).unwrap();
        let m = precoder_spectral_efficiency(&h, PrecoderKind::Mmse, snr).unwrap();
        assert!((m / z - 1.0).abs() < 0.02);
    }
}
