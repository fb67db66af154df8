//! The metric geometry: a self-adjoint positive definite operator `B`
//! defining `‖x‖ = ⟨Bx, x⟩^{1/2}`.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("matrix has {rows} rows but row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("entry ({i},{j})={a} vs ({j},{i})={b} breaks symmetry beyond 1e-12 relative")]
    NotSymmetric { i: usize, j: usize, a: f64, b: f64 },
    #[error("not positive definite: leading minor of order {order} (direction e_{index}) failed")]
    NotPositiveDefinite { order: usize, index: usize },
    #[error("dimension must be at least 1")]
    EmptyMatrix,
}

/// Validated SPD operator with its Cholesky factor cached at construction.
///
/// The factor `L` (with `B = L Lᵀ`) turns every norm and inner product into
/// plain Euclidean operations on `Lᵀx`, which keeps `‖x‖ ≥ 0` exact and the
/// Cauchy-Schwartz bound tight in floating point.
#[derive(Clone, Debug)]
pub struct Metric {
    dim: usize,
    b: Vec<f64>,    // row-major dim x dim, exactly symmetric after validation
    chol: Vec<f64>, // lower-triangular factor, row-major
}

impl Metric {
    pub fn new(rows: &[Vec<f64>]) -> Result<Self, MetricError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(MetricError::EmptyMatrix);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(MetricError::NotSquare {
                    rows: dim,
                    row: i,
                    cols: r.len(),
                });
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let (a, b) = (rows[i][j], rows[j][i]);
                if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                    return Err(MetricError::NotSymmetric { i, j, a, b });
                }
            }
        }
        // Symmetrize exactly so inner products cannot depend on argument order.
        let mut b = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                b[i * dim + j] = 0.5 * (rows[i][j] + rows[j][i]);
            }
        }
        let chol = cholesky(&b, dim)?;
        Ok(Metric { dim, b, chol })
    }

    pub fn identity(dim: usize) -> Self {
        let mut b = vec![0.0; dim * dim];
        for i in 0..dim {
            b[i * dim + i] = 1.0;
        }
        Metric {
            dim,
            b: b.clone(),
            chol: b,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn b_entry(&self, i: usize, j: usize) -> f64 {
        self.b[i * self.dim + j]
    }

    pub fn b_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.b[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    /// `B x`.
    pub fn apply_b(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.b[i * self.dim + j] * x[j])
                    .sum()
            })
            .collect()
    }

    /// `Lᵀ x`, the whitening map.
    pub fn whiten(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| (i..self.dim).map(|j| self.chol[j * self.dim + i] * x[j]).sum())
            .collect()
    }

    /// `L^{-T} z`: maps a Euclidean-isotropic vector to a `B`-isotropic one.
    pub fn unwhiten(&self, z: &[f64]) -> Vec<f64> {
        assert_eq!(z.len(), self.dim);
        let n = self.dim;
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = z[i];
            for j in (i + 1)..n {
                s -= self.chol[j * n + i] * x[j];
            }
            x[i] = s / self.chol[i * n + i];
        }
        x
    }

    /// `‖x‖ = ⟨Bx, x⟩^{1/2}`, computed as the Euclidean norm of `Lᵀx`.
    pub fn norm(&self, x: &[f64]) -> f64 {
        self.whiten(x).iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `⟨Bx, y⟩`.
    pub fn inner(&self, x: &[f64], y: &[f64]) -> f64 {
        self.whiten(x)
            .iter()
            .zip(self.whiten(y))
            .map(|(a, b)| a * b)
            .sum()
    }

    /// `x / ‖x‖`, or `None` for the zero vector.
    pub fn normalize(&self, x: &[f64]) -> Option<Vec<f64>> {
        let n = self.norm(x);
        if n == 0.0 {
            return None;
        }
        Some(x.iter().map(|v| v / n).collect())
    }
}

fn cholesky(b: &[f64], dim: usize) -> Result<Vec<f64>, MetricError> {
    let mut l = vec![0.0; dim * dim];
    for j in 0..dim {
        let mut diag = b[j * dim + j];
        for k in 0..j {
            diag -= l[j * dim + k] * l[j * dim + k];
        }
        // negated form so a NaN pivot also fails
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(diag > 0.0) {
            return Err(MetricError::NotPositiveDefinite {
                order: j + 1,
                index: j,
            });
        }
        let root = diag.sqrt();
        l[j * dim + j] = root;
        for i in (j + 1)..dim {
            let mut s = b[i * dim + j];
            for k in 0..j {
                s -= l[i * dim + k] * l[j * dim + k];
            }
            l[i * dim + j] = s / root;
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_norm() {
        let m = Metric::new(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(m.norm(&[3.0, 4.0]), 5.0);
    }

    #[test]
    fn weighted_norm() {
        let m = Metric::new(&[vec![4.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(m.norm(&[1.0, 0.0]), 2.0);
    }

    #[test]
    fn indefinite_rejected() {
        // eigenvalues 3 and -1
        let err = Metric::new(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap_err();
        assert_eq!(
            err,
            MetricError::NotPositiveDefinite { order: 2, index: 1 }
        );
    }

    #[test]
    fn asymmetry_rejected() {
        let err = Metric::new(&[vec![1.0, 0.5], vec![0.4, 1.0]]).unwrap_err();
        assert!(matches!(err, MetricError::NotSymmetric { i: 0, j: 1, .. }));
    }

    #[test]
    fn ragged_rejected() {
        let err = Metric::new(&[vec![1.0, 0.0], vec![0.0]]).unwrap_err();
        assert!(matches!(err, MetricError::NotSquare { row: 1, .. }));
    }

    #[test]
    fn whitening_consistency() {
        let m = Metric::new(&[vec![2.0, 0.3, 0.0], vec![0.3, 1.5, 0.2], vec![0.0, 0.2, 1.0]])
            .unwrap();
        let x = [0.7, -1.2, 0.4];
        let bx = m.apply_b(&x);
        let direct: f64 = bx.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        assert!((m.norm(&x).powi(2) - direct).abs() < 1e-12);
        // inner via whitening agrees with Bx . y
        let y = [1.0, 0.5, -2.0];
        let by: f64 = bx.iter().zip(y.iter()).map(|(a, b)| a * b).sum();
        assert!((m.inner(&x, &y) - by).abs() < 1e-12);
    }

    #[test]
    fn unwhiten_inverts_whiten() {
        let m = Metric::new(&[vec![2.0, 0.3], vec![0.3, 1.5]]).unwrap();
        let z = [0.3, -0.8];
        let x = m.unwhiten(&z);
        let back = m.whiten(&x);
        for (a, b) in back.iter().zip(z.iter()) {
            assert!((a - b).abs() < 1e-13);
        }
        // B-norm of the unwhitened vector equals the Euclidean norm of z
        let zn: f64 = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((m.norm(&x) - zn).abs() < 1e-13);
    }
}
