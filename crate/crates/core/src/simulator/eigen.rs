//! Exact eigensystem oracle for hermitian operators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::DenseOperator;
use crate::error::{Error, Result};

/// Eigenvalues in ascending order with matching eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

impl EigenSystem {
    pub fn eigenvector(&self, i: usize) -> DVector<Complex64> {
        self.eigenvectors.column(i).into_owned()
    }

    /// Max residual ||H v - lambda v|| over all pairs.
    pub fn residual(&self, op: &DenseOperator) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(i);
            let r = (op.matrix() * &v - v * Complex64::new(lambda, 0.0)).norm();
            worst = worst.max(r);
        }
        worst
    }
}

/// Diagonalize a hermitian operator; eigenvalues come back ascending.
pub fn exact_eigensystem(op: &DenseOperator) -> Result<EigenSystem> {
    if !op.is_hermitian() {
        return Err(Error::NotHermitian {
            residual: (op.matrix() - op.matrix().adjoint()).norm(),
        });
    }
    hermitian_eigensystem(op.matrix())
}

/// Same solver on a bare matrix of any square size (restricted symmetry
/// blocks are usually not power-of-two dimensional).
pub fn hermitian_eigensystem(matrix: &DMatrix<Complex64>) -> Result<EigenSystem> {
    let residual = (matrix - matrix.adjoint()).norm();
    if residual > 1e-10 {
        return Err(Error::NotHermitian { residual });
    }
    let eig = matrix.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let dim = matrix.nrows();
    let mut eigenvectors = DMatrix::zeros(dim, dim);
    for (col, &i) in order.iter().enumerate() {
        eigenvectors.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok(EigenSystem {
        eigenvalues,
        eigenvectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pauli_z_eigenvalues() {
        let z = DenseOperator::hermitian(dmatrix![
            c(1.0, 0.0), c(0.0, 0.0);
            c(0.0, 0.0), c(-1.0, 0.0);
        ])
        .unwrap();
        let sys = exact_eigensystem(&z).unwrap();
        assert!((sys.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((sys.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert!(sys.residual(&z) < 1e-12);
    }

    #[test]
    fn complex_hermitian_residual() {
        // Pauli Y has complex entries; checks the solver handles them.
        let y = DenseOperator::hermitian(dmatrix![
            c(0.0, 0.0), c(0.0, -1.0);
            c(0.0, 1.0), c(0.0, 0.0);
        ])
        .unwrap();
        let sys = exact_eigensystem(&y).unwrap();
        assert!((sys.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((sys.eigenvalues[1] - 1.0).abs() < 1e-12);
        assert!(sys.residual(&y) < 1e-12);
    }

    #[test]
    fn two_site_ising_bond_is_diagonal() {
        // -J Z(x)Z with J=1 on two qubits: eigenvalues (-1, -1, 1, 1).
        let mut m = DMatrix::zeros(4, 4);
        for b in 0..4usize {
            let z0 = if b & 2 == 0 { 1.0 } else { -1.0 };
            let z1 = if b & 1 == 0 { 1.0 } else { -1.0 };
            m[(b, b)] = c(-z0 * z1, 0.0);
        }
        let op = DenseOperator::hermitian(m).unwrap();
        let sys = exact_eigensystem(&op).unwrap();
        assert_eq!(sys.eigenvalues.len(), 4);
        assert!((sys.eigenvalues[0] + 1.0).abs() < 1e-12);
        assert!((sys.eigenvalues[1] + 1.0).abs() < 1e-12);
        assert!((sys.eigenvalues[2] - 1.0).abs() < 1e-12);
        assert!((sys.eigenvalues[3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = dmatrix![
            c(0.0, 0.0), c(1.0, 0.0);
            c(0.0, 0.0), c(0.0, 0.0);
        ];
        let op = DenseOperator::new(m).unwrap();
        assert!(exact_eigensystem(&op).is_err());
    }
}
