//! Character tables with their orthogonality checks and JSON export.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::wire::{matrix_to_wire, WireComplex};

use super::{ClassLabel, IrrepLabel};

/// The N_conj x N_conj table of characters chi_Gamma(C), with irrep dimensions
/// and class sizes. Characters are stored as complex values; symmetric-group
/// tables carry an exact integer copy alongside.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub(crate) group_name: String,
    pub(crate) irreps: Vec<(IrrepLabel, usize)>,
    pub(crate) classes: Vec<(ClassLabel, usize)>,
    pub(crate) chi: DMatrix<Complex64>,
    pub(crate) chi_int: Option<Vec<Vec<i64>>>,
}

impl CharacterTable {
    pub fn group_name(&self) -> &str {
        &self.group_name
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn irreps(&self) -> &[(IrrepLabel, usize)] {
        &self.irreps
    }

    pub fn classes(&self) -> &[(ClassLabel, usize)] {
        &self.classes
    }

    pub fn irrep_dim(&self, irrep: usize) -> usize {
        self.irreps[irrep].1
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.classes[class].1
    }

    pub fn group_order(&self) -> usize {
        self.classes.iter().map(|(_, size)| size).sum()
    }

    /// chi_Gamma(C) by row (irrep) and column (class).
    pub fn chi(&self, irrep: usize, class: usize) -> Complex64 {
        self.chi[(irrep, class)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.chi
    }

    /// Exact integer characters, present for symmetric groups and products of
    /// integer-valued tables.
    pub fn integer_characters(&self) -> Option<&Vec<Vec<i64>>> {
        self.chi_int.as_ref()
    }

    /// Maximum deviations of the weighted row form
    /// sum_C (|C|/|G|) chi_G(C) chi*_G'(C) = delta and the column form
    /// sum_G chi_G(C) chi*_G(C') = delta |G|/|C| from their targets.
    pub fn orthogonality_residuals(&self) -> (f64, f64) {
        let n = self.n_classes();
        let order = self.group_order() as f64;
        let mut row_residual: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let mut acc = Complex64::default();
                for c in 0..n {
                    let weight = self.class_size(c) as f64 / order;
                    acc += self.chi(a, c) * self.chi(b, c).conj() * weight;
                }
                let target = if a == b { 1.0 } else { 0.0 };
                row_residual = row_residual.max((acc - target).norm());
            }
        }
        let mut col_residual: f64 = 0.0;
        for c in 0..n {
            for d in 0..n {
                let mut acc = Complex64::default();
                for g in 0..n {
                    acc += self.chi(g, c) * self.chi(g, d).conj();
                }
                let target = if c == d {
                    order / self.class_size(c) as f64
                } else {
                    0.0
                };
                col_residual = col_residual.max((acc - target).norm());
            }
        }
        (row_residual, col_residual)
    }

    /// A copy with one entry shifted by `delta`; a diagnostic negative control
    /// for the orthogonality checks.
    pub fn perturbed(&self, irrep: usize, class: usize, delta: f64) -> CharacterTable {
        let mut chi = self.chi.clone();
        chi[(irrep, class)] += Complex64::new(delta, 0.0);
        CharacterTable {
            group_name: format!("{} (perturbed)", self.group_name),
            irreps: self.irreps.clone(),
            classes: self.classes.clone(),
            chi,
            chi_int: None,
        }
    }

    pub fn to_wire(&self) -> CharacterTableWire {
        CharacterTableWire {
            group: self.group_name.clone(),
            irreps: self
                .irreps
                .iter()
                .map(|(label, dim)| IrrepWire {
                    label: label.to_string(),
                    dim: *dim,
                })
                .collect(),
            classes: self
                .classes
                .iter()
                .map(|(label, size)| ClassWire {
                    label: label.to_string(),
                    size: *size,
                })
                .collect(),
            chi: matrix_to_wire(&self.chi),
        }
    }
}

/// Convenience wrapper matching the exported JSON schema.
#[derive(Debug, Serialize)]
pub struct CharacterTableWire {
    pub group: String,
    pub irreps: Vec<IrrepWire>,
    pub classes: Vec<ClassWire>,
    pub chi: Vec<Vec<WireComplex>>,
}

#[derive(Debug, Serialize)]
pub struct IrrepWire {
    pub label: String,
    pub dim: usize,
}

#[derive(Debug, Serialize)]
pub struct ClassWire {
    pub label: String,
    pub size: usize,
}

/// Residual pair (row, column) for a table; see
/// [`CharacterTable::orthogonality_residuals`].
pub fn verify_orthogonality(table: &CharacterTable) -> (f64, f64) {
    table.orthogonality_residuals()
}
