//! The quantum character transform (QCT): the character table, rescaled row
//! by row with sqrt(|C|/|G|), as an explicit unitary on the irrep ancilla.
//!
//! The ancilla dimension rounds the class count up to a power of two; padded
//! basis states carry identity action, and the index maps from irreps and
//! classes to basis states are exported so nothing downstream assumes the
//! class count is a power of two. For cyclic groups of order 2^m the QCT is
//! the quantum Fourier transform.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupKind};
use crate::simulator::DenseOperator;
use crate::wire::{matrix_to_wire, WireComplex};

/// A QCT with its irrep/class index maps.
#[derive(Debug, Clone)]
pub struct QctMatrix {
    unitary: DenseOperator,
    n_ancilla: usize,
    n_conj: usize,
    group_name: String,
    irrep_labels: Vec<String>,
    class_labels: Vec<String>,
}

impl QctMatrix {
    pub fn operator(&self) -> &DenseOperator {
        &self.unitary
    }

    /// Ancilla qubits: ceil(log2 N_conj).
    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    pub fn n_conj(&self) -> usize {
        self.n_conj
    }

    /// Ancilla basis index encoding irrep `i`; indices >= N_conj are padding.
    pub fn irrep_basis_index(&self, irrep: usize) -> usize {
        debug_assert!(irrep < self.n_conj);
        irrep
    }

    /// Ancilla basis index encoding class `c`.
    pub fn class_basis_index(&self, class: usize) -> usize {
        debug_assert!(class < self.n_conj);
        class
    }

    pub fn to_wire(&self) -> QctWire {
        QctWire {
            group: self.group_name.clone(),
            n_ancilla: self.n_ancilla,
            n_conj: self.n_conj,
            irrep_basis: self.irrep_labels.clone(),
            class_basis: self.class_labels.clone(),
            matrix: matrix_to_wire(self.unitary.matrix()),
        }
    }
}

/// JSON view: the padded matrix plus the irrep/class index maps (position in
/// the list = ancilla basis index).
#[derive(Debug, Serialize)]
pub struct QctWire {
    pub group: String,
    pub n_ancilla: usize,
    pub n_conj: usize,
    pub irrep_basis: Vec<String>,
    pub class_basis: Vec<String>,
    pub matrix: Vec<Vec<WireComplex>>,
}

/// Ancilla qubits needed to index `n_conj` classes.
pub fn ancilla_qubits_for(n_conj: usize) -> usize {
    usize::max(1, (n_conj.max(1) as f64).log2().ceil() as usize)
}

/// Build the QCT of a group: entry (Gamma, C) = sqrt(|C|/|G|) chi_Gamma(C) on
/// the leading N_conj x N_conj block, identity on the padding. Fails with a
/// non-unitarity error if the character table is inconsistent.
pub fn build_qct(group: &FiniteGroup) -> Result<QctMatrix> {
    let table = group.character_table();
    let n_conj = table.n_classes();
    let order = group.order() as f64;
    let n_ancilla = ancilla_qubits_for(n_conj);
    let dim = 1 << n_ancilla;

    let mut m = DMatrix::<Complex64>::identity(dim, dim);
    for irrep in 0..n_conj {
        for class in 0..n_conj {
            let weight = (table.class_size(class) as f64 / order).sqrt();
            m[(irrep, class)] = table.chi(irrep, class) * weight;
        }
    }
    let unitary = DenseOperator::unitary(m).map_err(|_| Error::InvariantViolation {
        property: "qct unitarity".into(),
        detail: format!(
            "character table of {} does not produce a unitary transform",
            group.name()
        ),
    })?;
    Ok(QctMatrix {
        unitary,
        n_ancilla,
        n_conj,
        group_name: group.name().to_owned(),
        irrep_labels: table
            .irreps()
            .iter()
            .map(|(label, _)| label.to_string())
            .collect(),
        class_labels: table
            .classes()
            .iter()
            .map(|(label, _)| label.to_string())
            .collect(),
    })
}

/// The m-qubit quantum Fourier transform (1/sqrt(M)) exp(2 pi i k v / M),
/// row k, column v.
pub fn qft_matrix(m: usize) -> Result<DenseOperator> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    let dim = 1usize << m;
    let norm = 1.0 / (dim as f64).sqrt();
    let matrix = DMatrix::from_fn(dim, dim, |k, v| {
        let angle = TAU * ((k * v) % dim) as f64 / dim as f64;
        Complex64::from_polar(norm, angle)
    });
    DenseOperator::unitary(matrix)
}

/// Residual of identifying the group Fourier transform with the QCT, defined
/// for groups where every irrep is one-dimensional (abelian groups and S_2,
/// where the element basis and the class basis coincide): the transforms are
/// compared entry by entry over group elements.
pub fn verify_qct_equals_abelian_fourier(group: &FiniteGroup) -> Result<f64> {
    let one_dimensional = group
        .character_table()
        .irreps()
        .iter()
        .all(|(_, dim)| *dim == 1);
    let is_s2 = matches!(group.kind(), GroupKind::Symmetric { n: 2 });
    if !(group.is_abelian() || is_s2) || !one_dimensional {
        return Err(Error::NonAbelianGroup(group.name().to_owned()));
    }

    // Element-indexed Fourier transform: entry (Gamma, g) = chi_Gamma(g)/sqrt|G|.
    let order = group.order();
    let table = group.character_table();
    let fourier = DMatrix::from_fn(order, order, |irrep, g| {
        let class = group
            .class_index_of(&group.elements()[g])
            .expect("element of its own group");
        table.chi(irrep, class) / (order as f64).sqrt()
    });

    let qct = build_qct(group)?;
    let block = qct
        .operator()
        .matrix()
        .view((0, 0), (order, order))
        .into_owned();
    Ok((block - fourier).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic_group, product_group, symmetric_group};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn s2_qct_is_hadamard() {
        let qct = build_qct(&symmetric_group(2).unwrap()).unwrap();
        let s = 0.5f64.sqrt();
        let m = qct.operator().matrix();
        assert_eq!(qct.n_ancilla(), 1);
        assert!((m[(0, 0)] - c(s, 0.0)).norm() < 1e-12);
        assert!((m[(0, 1)] - c(s, 0.0)).norm() < 1e-12);
        assert!((m[(1, 0)] - c(s, 0.0)).norm() < 1e-12);
        assert!((m[(1, 1)] - c(-s, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn z2_qct_is_hadamard() {
        let qct = build_qct(&cyclic_group(2).unwrap()).unwrap();
        let h = qft_matrix(1).unwrap();
        assert!((qct.operator().matrix() - h.matrix()).norm() < 1e-12);
    }

    #[test]
    fn s3_qct_matches_scaled_character_matrix() {
        let qct = build_qct(&symmetric_group(3).unwrap()).unwrap();
        assert_eq!(qct.n_ancilla(), 2);
        let m = qct.operator().matrix();
        let f = 1.0 / 6f64.sqrt();
        let expected = [
            [1.0, 3f64.sqrt(), 2f64.sqrt(), 0.0],
            [1.0, -(3f64.sqrt()), 2f64.sqrt(), 0.0],
            [2.0, 0.0, -(2f64.sqrt()), 0.0],
            [0.0, 0.0, 0.0, 1.0 / f],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert!(
                    (m[(i, j)] - c(f * v, 0.0)).norm() < 1e-12,
                    "entry ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn qft_small_sizes() {
        // m=1 is the Hadamard
        let f1 = qft_matrix(1).unwrap();
        let s = 0.5f64.sqrt();
        assert!((f1.matrix()[(1, 1)] - c(-s, 0.0)).norm() < 1e-14);
        // m=2: fourth roots of unity, unitary by construction
        let f2 = qft_matrix(2).unwrap();
        assert!((f2.matrix()[(1, 1)] - c(0.0, 0.5)).norm() < 1e-14);
        assert!(f2.is_unitary());
    }

    #[test]
    fn qft_equals_cyclic_qct() {
        for m in 1..=5 {
            let qct = build_qct(&cyclic_group(1 << m).unwrap()).unwrap();
            let qft = qft_matrix(m).unwrap();
            assert!(
                (qct.operator().matrix() - qft.matrix()).norm() < 1e-12,
                "m = {m}"
            );
        }
    }

    #[test]
    fn qct_unitarity_across_catalog() {
        let groups = vec![
            cyclic_group(3).unwrap(),
            cyclic_group(8).unwrap(),
            symmetric_group(4).unwrap(),
            symmetric_group(5).unwrap(),
            product_group(cyclic_group(8).unwrap(), cyclic_group(2).unwrap()).unwrap(),
            product_group(symmetric_group(3).unwrap(), cyclic_group(2).unwrap()).unwrap(),
        ];
        for g in groups {
            let qct = build_qct(&g).unwrap();
            assert!(qct.operator().is_unitary(), "{}", g.name());
        }
    }

    #[test]
    fn trivial_irrep_row_is_positive_unit_vector() {
        let g = symmetric_group(4).unwrap();
        let qct = build_qct(&g).unwrap();
        let m = qct.operator().matrix();
        let mut norm_sq = 0.0;
        for class in 0..qct.n_conj() {
            let v = m[(0, class)];
            assert!(v.re > 0.0 && v.im.abs() < 1e-14);
            norm_sq += v.norm_sqr();
        }
        assert!((norm_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn padding_is_identity() {
        let g = symmetric_group(3).unwrap();
        let qct = build_qct(&g).unwrap();
        let m = qct.operator().matrix();
        assert!((m[(3, 3)] - c(1.0, 0.0)).norm() < 1e-14);
        for i in 0..3 {
            assert!(m[(i, 3)].norm() < 1e-14);
            assert!(m[(3, i)].norm() < 1e-14);
        }
    }

    #[test]
    fn product_qct_factorizes_on_unpadded_block() {
        // entries over (irrep pair, class pair) multiply, under the
        // lexicographic pair indexing of the product table
        let g1 = symmetric_group(3).unwrap();
        let g2 = cyclic_group(2).unwrap();
        let q1 = build_qct(&g1).unwrap();
        let q2 = build_qct(&g2).unwrap();
        let prod = product_group(g1, g2).unwrap();
        let qp = build_qct(&prod).unwrap();
        let (n1, n2) = (q1.n_conj(), q2.n_conj());
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                for c1 in 0..n1 {
                    for c2 in 0..n2 {
                        let got = qp.operator().matrix()[(i1 * n2 + i2, c1 * n2 + c2)];
                        let want =
                            q1.operator().matrix()[(i1, c1)] * q2.operator().matrix()[(i2, c2)];
                        assert!((got - want).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn abelian_fourier_identification() {
        for g in [
            cyclic_group(4).unwrap(),
            symmetric_group(2).unwrap(),
            product_group(cyclic_group(2).unwrap(), cyclic_group(2).unwrap()).unwrap(),
        ] {
            assert!(verify_qct_equals_abelian_fourier(&g).unwrap() < 1e-12);
        }
        assert!(verify_qct_equals_abelian_fourier(&symmetric_group(3).unwrap()).is_err());
    }

    #[test]
    fn broken_table_reports_non_unitary() {
        // direct negative control on the unitarity gate inside build_qct
        let g = symmetric_group(3).unwrap();
        let qct = build_qct(&g).unwrap();
        let mut m = qct.operator().matrix().clone();
        m[(0, 0)] += c(0.2, 0.0);
        assert!(DenseOperator::unitary(m).is_err());
    }
}
