use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::em::Polarization;
use crate::error::{Error, Result};

/// Complex transfer matrix, rows = receive ports, columns = transmit ports.
///
/// A polarized matrix interleaves polarizations per element: row `3m + p`
/// is receive element `m`, polarization `p`; likewise for columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    entries: DMatrix<Complex64>,
    polarized: bool,
}

impl ChannelMatrix {
    pub fn scalar(entries: DMatrix<Complex64>) -> Result<Self> {
        check_finite(&entries)?;
        Ok(ChannelMatrix {
            entries,
            polarized: false,
        })
    }

    pub fn polarized(entries: DMatrix<Complex64>) -> Result<Self> {
        check_finite(&entries)?;
        if entries.nrows() % 3 != 0 || entries.ncols() % 3 != 0 {
            return Err(Error::validation(format!(
                "polarized matrix must be 3M×3N, got {}×{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(ChannelMatrix {
            entries,
            polarized: true,
        })
    }

    pub(crate) fn from_parts_unchecked(entries: DMatrix<Complex64>, polarized: bool) -> Self {
        ChannelMatrix { entries, polarized }
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn is_polarized(&self) -> bool {
        self.polarized
    }

    pub fn nrows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.entries.ncols()
    }

    /// (receive elements, transmit elements).
    pub fn element_counts(&self) -> (usize, usize) {
        if self.polarized {
            (self.nrows() / 3, self.ncols() / 3)
        } else {
            (self.nrows(), self.ncols())
        }
    }

    /// M×N sub-matrix coupling transmit polarization `tx` into receive
    /// polarization `rx`.
    pub fn block(&self, rx: Polarization, tx: Polarization) -> Result<DMatrix<Complex64>> {
        if !self.polarized {
            return Err(Error::validation("polarization blocks need a polarized matrix"));
        }
        let (m, n) = self.element_counts();
        Ok(DMatrix::from_fn(m, n, |i, j| {
            self.entries[(3 * i + rx.index(), 3 * j + tx.index())]
        }))
    }

    /// Inverse of [`ChannelMatrix::block`]: `blocks[rx][tx]`.
    pub fn from_blocks(blocks: &[[DMatrix<Complex64>; 3]; 3]) -> Result<Self> {
        let (m, n) = blocks[0][0].shape();
        if blocks.iter().flatten().any(|b| b.shape() != (m, n)) {
            return Err(Error::validation("all polarization blocks must share one shape"));
        }
        let mut out = DMatrix::zeros(3 * m, 3 * n);
        for (p, row) in blocks.iter().enumerate() {
            for (q, b) in row.iter().enumerate() {
                for i in 0..m {
                    for j in 0..n {
                        out[(3 * i + p, 3 * j + q)] = b[(i, j)];
                    }
                }
            }
        }
        ChannelMatrix::polarized(out)
    }

    pub fn scaled(&self, s: f64) -> Self {
        ChannelMatrix {
            entries: &self.entries * Complex64::new(s, 0.0),
            polarized: self.polarized,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Row-major CSV, one matrix row per line as `re,im` pairs, no header.
    pub fn to_csv(&self) -> String {
        let mut s = String::with_capacity(self.nrows() * self.ncols() * 24);
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                let z = self.entries[(i, j)];
                if j > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{},{}", z.re, z.im);
            }
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str, polarized: bool) -> Result<Self> {
        let mut rows: Vec<Vec<Complex64>> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let vals: std::result::Result<Vec<f64>, _> = line.split(',').map(|t| t.trim().parse::<f64>()).collect();
            let vals = vals.map_err(|e| Error::validation(format!("line {}: {e}", ln + 1)))?;
            if vals.len() % 2 != 0 {
                return Err(Error::validation(format!("line {}: odd number of values", ln + 1)));
            }
            rows.push(vals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect());
        }
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::validation("ragged channel CSV"));
        }
        let m = DMatrix::from_fn(rows.len(), ncols, |i, j| rows[i][j]);
        if polarized {
            ChannelMatrix::polarized(m)
        } else {
            ChannelMatrix::scalar(m)
        }
    }
}

fn check_finite(m: &DMatrix<Complex64>) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::validation("channel matrix has non-finite entries"))
    }
}
