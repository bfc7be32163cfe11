//! Symmetric tridiagonal matrices and their LDLᵀ factorization.

use crate::error::{Error, Result};

/// `diag[i]` on the diagonal, `off[i]` coupling rows `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn zeros(n: usize) -> Self {
        SymTridiag {
            diag: vec![0.0; n],
            off: vec![0.0; n.saturating_sub(1)],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Add the 2×2 symmetric block `[[p, q], [q, p']]` at rows `i`, `i + 1`.
    pub fn add_block(&mut self, i: usize, block: [[f64; 2]; 2]) {
        self.diag[i] += block[0][0];
        self.diag[i + 1] += block[1][1];
        self.off[i] += block[0][1];
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.off[i.min(j)],
            _ => 0.0,
        }
    }

    /// `y = A x`.
    pub fn mul(&self, x: &[f64], y: &mut [f64]) {
        let n = self.len();
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.off[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.off[i] * x[i + 1];
            }
            y[i] = acc;
        }
    }

    /// `xᵀ A x`.
    pub fn quad(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.len() {
            acc += self.diag[i] * x[i] * x[i];
        }
        for i in 0..self.off.len() {
            acc += 2.0 * self.off[i] * x[i] * x[i + 1];
        }
        acc
    }

    /// Linear combination `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &SymTridiag, b: f64) -> SymTridiag {
        SymTridiag {
            diag: self.diag.iter().zip(&other.diag).map(|(x, y)| a * x + b * y).collect(),
            off: self.off.iter().zip(&other.off).map(|(x, y)| a * x + b * y).collect(),
        }
    }

    /// Trailing principal submatrix starting at row `start`.
    pub fn tail(&self, start: usize) -> SymTridiag {
        SymTridiag {
            diag: self.diag[start..].to_vec(),
            off: self.off[start..].to_vec(),
        }
    }

    /// Leading principal submatrix of size `n`.
    pub fn head(&self, n: usize) -> SymTridiag {
        SymTridiag {
            diag: self.diag[..n].to_vec(),
            off: self.off[..n.saturating_sub(1)].to_vec(),
        }
    }

    pub fn factor(&self) -> Result<LdlFactor> {
        let n = self.len();
        let mut d = vec![0.0; n];
        let mut l = vec![0.0; n.saturating_sub(1)];
        for i in 0..n {
            let mut di = self.diag[i];
            if i > 0 {
                di -= l[i - 1] * l[i - 1] * d[i - 1];
            }
            if !(di.is_finite() && di != 0.0) {
                return Err(Error::domain("pivot", di, "tridiagonal matrix is singular"));
            }
            d[i] = di;
            if i + 1 < n {
                l[i] = self.off[i] / di;
            }
        }
        Ok(LdlFactor { d, l })
    }
}

/// `A = L D Lᵀ` with unit lower-bidiagonal `L`.
#[derive(Debug, Clone)]
pub struct LdlFactor {
    d: Vec<f64>,
    l: Vec<f64>,
}

impl LdlFactor {
    /// Overwrite `b` with `A⁻¹ b`.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 1..n {
            b[i] -= self.l[i - 1] * b[i - 1];
        }
        for i in 0..n {
            b[i] /= self.d[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            b[i] -= self.l[i] * b[i + 1];
        }
    }
}
