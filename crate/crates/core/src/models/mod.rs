//! Worked physical systems as dense Hamiltonians with their symmetry
//! structures: a disordered Ising chain, the Harper-Hofstadter torus, the H2
//! molecule in first quantization, and three-particle exchange sectors.

mod h2;
mod harper;
mod ising;
mod para;

pub use h2::{
    h2_hamiltonian, h2_sector_label, h2_sector_name, mixed_sector_state, sample_integrals,
    H2Integrals, H2_N_QUBITS,
};
pub use harper::{
    block_diagonalization_residual, butterfly_sweep, harper_hamiltonian, harper_momentum_blocks,
    harper_pseudospin_half, momentum_block_direct_sum, reduced_fractions, ButterflyPoint,
};
pub use ising::{
    ising_hamiltonian, ising_projected_block, ising_symmetry_projectors, IsingParams,
};
pub use para::{expected_ranks, three_particle_projectors, SectorProjector};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::groups::FiniteGroup;
use crate::reps::UnitaryRep;
use crate::simulator::{hermitian_eigensystem, DenseOperator, RegisterLayout};

/// A model Hamiltonian bundled with its register layout and declared
/// symmetry structure. The commutators [H, rho(g)] vanish when the model
/// parameters respect the symmetry; disorder terms deliberately break it.
#[derive(Debug, Clone)]
pub struct ModelHamiltonian {
    pub name: String,
    pub hamiltonian: DenseOperator,
    pub layout: RegisterLayout,
    pub group: FiniteGroup,
    pub rep: UnitaryRep,
    pub metadata: serde_json::Value,
}

/// Restrict a hermitian operator to the range of a projector: returns the
/// compressed matrix W^dagger H W where the columns of W span range(P).
/// The restricted dimension equals the projector rank.
pub fn restrict_to_projector_range(
    hamiltonian: &DMatrix<Complex64>,
    projector: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    let eig = hermitian_eigensystem(projector)?;
    let dim = projector.nrows();
    let kept: Vec<usize> = (0..dim)
        .filter(|&i| (eig.eigenvalues[i] - 1.0).abs() < 1e-8)
        .collect();
    let mut basis = DMatrix::<Complex64>::zeros(dim, kept.len());
    for (col, &i) in kept.iter().enumerate() {
        basis.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok(basis.adjoint() * hamiltonian * basis)
}

/// Sorted eigenvalues of a hermitian matrix; shorthand used all over the
/// model checks.
pub fn sorted_spectrum(matrix: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    Ok(hermitian_eigensystem(matrix)?.eigenvalues)
}
