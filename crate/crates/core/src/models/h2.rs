//! Two-electron molecular Hamiltonian in first quantization on four qubits.
//!
//! The basis is |j1, a1> (x) |j2, a2> with one orbital qubit (bonding Phi_1 /
//! antibonding Phi_2) and one spin qubit per electron, so qubits run
//! (orbital1, spin1, orbital2, spin2). No exchange statistics are imposed by
//! the encoding; fermionic and bosonic sectors are carved out afterwards by
//! the exchange-symmetry transforms. Full particle exchange and spin-only
//! exchange commute, and their product group labels the four
//! (statistics, spin) sectors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::groups::{product_group, symmetric_group};
use crate::reps::{permutation_rep, product_rep, spin_only_permutation_rep, UnitaryRep};
use crate::simulator::{DenseOperator, Register, RegisterLayout, StateVector};
use crate::tgsa::{tgsa_apply, TgsaInput, TgsaOutcome};

use super::ModelHamiltonian;

pub const H2_N_QUBITS: usize = 4;

/// One- and two-electron integrals over the bonding/antibonding orbital pair,
/// in hartree. `g[p][q][r][s]` is the spin-free matrix element
/// <p q|V|r s> with electron one taking p <- r and electron two q <- s.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct H2Integrals {
    /// One-electron energies (eps_g, eps_u).
    pub eps: [f64; 2],
    pub g: [[[[f64; 2]; 2]; 2]; 2],
}

impl H2Integrals {
    /// Permutational symmetry: g_pqrs = g_qpsr (electron relabeling) and
    /// g_pqrs = g_rspq (hermiticity of the real integrals).
    pub fn validate(&self) -> Result<()> {
        for p in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        let v = self.g[p][q][r][s];
                        if (v - self.g[q][p][s][r]).abs() > 1e-12 {
                            return Err(Error::IntegralSymmetry(format!(
                                "g[{p}{q}{r}{s}] != g[{q}{p}{s}{r}]"
                            )));
                        }
                        if (v - self.g[r][s][p][q]).abs() > 1e-12 {
                            return Err(Error::IntegralSymmetry(format!(
                                "g[{p}{q}{r}{s}] != g[{r}{s}{p}{q}]"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sample minimal-basis integrals of a realistic magnitude, used by the CLI
/// when no config file is given. Energy checks are always relative to the
/// exact diagonalization of the same matrix, so these numbers only need to be
/// symmetric, not tied to any particular bond length.
pub fn sample_integrals() -> H2Integrals {
    let mut g = [[[[0.0; 2]; 2]; 2]; 2];
    let j_gg = 0.6746;
    let j_uu = 0.6975;
    let j_gu = 0.6636;
    let k_gu = 0.1813;
    g[0][0][0][0] = j_gg;
    g[1][1][1][1] = j_uu;
    // direct open-shell
    g[0][1][0][1] = j_gu;
    g[1][0][1][0] = j_gu;
    // exchange and the double excitation, equal for real orbitals
    g[0][1][1][0] = k_gu;
    g[1][0][0][1] = k_gu;
    g[0][0][1][1] = k_gu;
    g[1][1][0][0] = k_gu;
    H2Integrals {
        eps: [-1.2524, -0.4759],
        g,
    }
}

fn exchange_rep() -> Result<UnitaryRep> {
    let group = product_group(symmetric_group(2)?, symmetric_group(2)?)?;
    let full = permutation_rep(2, 2)?;
    let spin_only = spin_only_permutation_rep(
        H2_N_QUBITS,
        Register::new(1, 1),
        Register::new(3, 1),
    )?;
    product_rep(group, full, spin_only)
}

/// The 16 x 16 first-quantized Hamiltonian h(1) + h(2) + V(1,2) with h
/// spin-diagonal and V spin-conserving on both electrons.
pub fn h2_hamiltonian(ints: &H2Integrals) -> Result<ModelHamiltonian> {
    ints.validate()?;
    let dim = 1usize << H2_N_QUBITS;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let index = |p: usize, sigma: usize, q: usize, tau: usize| p * 8 + sigma * 4 + q * 2 + tau;
    for p in 0..2 {
        for sigma in 0..2 {
            for q in 0..2 {
                for tau in 0..2 {
                    let row = index(p, sigma, q, tau);
                    m[(row, row)] += Complex64::new(ints.eps[p] + ints.eps[q], 0.0);
                    for r in 0..2 {
                        for s in 0..2 {
                            let col = index(r, sigma, s, tau);
                            m[(row, col)] += Complex64::new(ints.g[p][q][r][s], 0.0);
                        }
                    }
                }
            }
        }
    }
    Ok(ModelHamiltonian {
        name: "h2".into(),
        hamiltonian: DenseOperator::hermitian(m)?,
        layout: RegisterLayout::new(&[
            ("orbital1", 1),
            ("spin1", 1),
            ("orbital2", 1),
            ("spin2", 1),
        ]),
        group: product_group(symmetric_group(2)?, symmetric_group(2)?)?,
        rep: exchange_rep()?,
        metadata: json!({
            "eps": ints.eps,
            "g": ints.g,
        }),
    })
}

/// Split a four-qubit state into the four (statistics, spin) sectors by the
/// chained exchange transforms: the first ancilla labels bosonic (0) versus
/// fermionic (1) under full particle exchange, the second labels triplet (0,
/// spin-symmetric) versus singlet (1, spin-antisymmetric).
pub fn h2_sector_label(state: &StateVector) -> Result<TgsaOutcome> {
    if state.n_qubits() != H2_N_QUBITS {
        return Err(Error::DimensionMismatch {
            expected: 1 << H2_N_QUBITS,
            got: state.dim(),
        });
    }
    let rep = exchange_rep()?;
    tgsa_apply(&rep, TgsaInput::Irrep(0), state)
}

/// Human-readable (statistics, spin) name of a sector index from
/// [`h2_sector_label`].
pub fn h2_sector_name(irrep: usize) -> (&'static str, &'static str) {
    let statistics = if irrep / 2 == 0 { "bosonic" } else { "fermionic" };
    let spin = if irrep % 2 == 0 { "triplet" } else { "singlet" };
    (statistics, spin)
}

/// The product state (|Phi1 up> - |Phi1 down>)/sqrt2 (x)
/// (|Phi2 up> + |Phi2 down>)/sqrt2, which overlaps all four
/// (statistics, spin) sectors; the standard demonstration input.
pub fn mixed_sector_state() -> StateVector {
    let mut v = nalgebra::DVector::<Complex64>::zeros(1 << H2_N_QUBITS);
    let index = |p: usize, sigma: usize, q: usize, tau: usize| p * 8 + sigma * 4 + q * 2 + tau;
    for (sigma, sign) in [(0usize, 0.5), (1usize, -0.5)] {
        for tau in 0..2usize {
            v[index(0, sigma, 1, tau)] = Complex64::new(sign, 0.0);
        }
    }
    StateVector::new(v).expect("normalized by construction")
}
