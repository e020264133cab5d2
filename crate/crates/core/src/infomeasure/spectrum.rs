use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::channels::ChannelMatrix;
use crate::error::{Error, Result};

/// Left and right singular vectors, ordered like the singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    pub u: DMatrix<Complex64>,
    pub v_t: DMatrix<Complex64>,
}

/// Descending singular values of an M×N operator.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    singular_values: Vec<f64>,
    rows: usize,
    cols: usize,
    factors: Option<SvdFactors>,
}

impl EigenSpectrum {
    /// Spectrum from raw values; they are sorted descending.
    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::validation("singular values must be finite and non-negative"));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let n = values.len();
        Ok(EigenSpectrum {
            singular_values: values,
            rows: n,
            cols: n,
            factors: None,
        })
    }

    pub fn singular_values(&self) -> &[f64] {
        &self.singular_values
    }

    pub fn len(&self) -> usize {
        self.singular_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.singular_values.is_empty()
    }

    /// (rows, cols) of the decomposed matrix.
    pub fn dimensions(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn factors(&self) -> Option<&SvdFactors> {
        self.factors.as_ref()
    }

    /// `U diag(σ) Vᴴ`, when factors were retained.
    pub fn reconstruct(&self) -> Option<DMatrix<Complex64>> {
        let f = self.factors.as_ref()?;
        let s = DMatrix::from_diagonal(&DVector::from_iterator(
            self.len(),
            self.singular_values.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        Some(&f.u * s * &f.v_t)
    }

    /// `σ_k²`, the eigenvalues of `HᴴH`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.singular_values.iter().map(|s| s * s).collect()
    }
}

/// Thin SVD with factors retained.
pub fn singular_spectrum(h: &ChannelMatrix) -> Result<EigenSpectrum> {
    singular_spectrum_of(h.entries())
}

pub fn singular_spectrum_of(m: &DMatrix<Complex64>) -> Result<EigenSpectrum> {
    if m.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::validation("cannot decompose a matrix with non-finite entries"));
    }
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Ok(EigenSpectrum {
            singular_values: vec![],
            rows,
            cols,
            factors: None,
        });
    }
    let svd = m.clone().svd(true, true);
    let (u, v_t) = match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => (u, v_t),
        _ => {
            return Err(Error::Numerical {
                stage: "singular value decomposition".into(),
                residual: f64::NAN,
            })
        }
    };
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let singular_values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let u = DMatrix::from_fn(rows, order.len(), |r, c| u[(r, order[c])]);
    let v_t = DMatrix::from_fn(order.len(), cols, |r, c| v_t[(order[r], c)]);
    Ok(EigenSpectrum {
        singular_values,
        rows,
        cols,
        factors: Some(SvdFactors { u, v_t }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofMethod {
    Truncation,
    Landau,
    Minmax,
    BallPacking,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DofEstimate {
    pub count: usize,
    pub threshold: f64,
    pub method: DofMethod,
}

/// Default relative truncation threshold on `σ_k² / σ_1²`.
pub const DEFAULT_DOF_THRESHOLD: f64 = 0.01;

/// Number of modes with `σ_k² ≥ ε σ_1²`.
pub fn effective_dof(spec: &EigenSpectrum, epsilon: f64) -> Result<DofEstimate> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::validation(format!("threshold must lie in (0, 1), got {epsilon}")));
    }
    if spec.is_empty() {
        return Err(Error::validation("empty spectrum"));
    }
    let top = spec.singular_values[0] * spec.singular_values[0];
    let count = if top > 0.0 {
        spec.singular_values.iter().filter(|s| *s * *s >= epsilon * top).count()
    } else {
        0
    };
    Ok(DofEstimate {
        count,
        threshold: epsilon,
        method: DofMethod::Truncation,
    })
}
