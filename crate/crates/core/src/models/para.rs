//! Exchange sectors of three identical particles: bosonic, fermionic, and the
//! two-dimensional mixed-symmetry sector with no physical statistics.
//!
//! Each particle lives on ceil(log2 d) qubits; the three S_3 projectors act on
//! the full qubit space, and ranks are evaluated on the physical d^3-dim
//! subspace (all single-particle labels below d), which the permutation action
//! leaves invariant.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::reps::permutation_rep;
use crate::simulator::{hermitian_eigensystem, DenseOperator, STATE_QUBIT_CAP};
use crate::tgsa::projector_matrix;

/// One exchange sector: the projector on the full qubit register, its
/// restriction to the physical subspace, and the numerical rank there.
#[derive(Debug, Clone)]
pub struct SectorProjector {
    pub irrep: usize,
    pub label: String,
    pub irrep_dim: usize,
    pub full: DenseOperator,
    pub physical: DMatrix<Complex64>,
    pub rank: usize,
}

/// Numerical rank of a projector: eigenvalues must cluster at 0 and 1 within
/// `tol`, and the rank counts the 1-cluster.
fn projector_rank(matrix: &DMatrix<Complex64>, tol: f64) -> Result<usize> {
    let eig = hermitian_eigensystem(matrix)?;
    let mut rank = 0;
    for &v in &eig.eigenvalues {
        if (v - 1.0).abs() <= tol {
            rank += 1;
        } else if v.abs() > tol {
            return Err(Error::InvariantViolation {
                property: "projector spectrum".into(),
                detail: format!("eigenvalue {v} is neither 0 nor 1"),
            });
        }
    }
    Ok(rank)
}

/// Ranks on the physical subspace: symmetric C(d+2,3), antisymmetric C(d,3),
/// and the mixed-symmetry remainder d^3 - C(d+2,3) - C(d,3).
pub fn three_particle_projectors(d: usize) -> Result<Vec<SectorProjector>> {
    if d < 1 {
        return Err(Error::InvalidArgument(
            "single-particle dimension must be >= 1".into(),
        ));
    }
    let block_width = usize::max(1, (d as f64).log2().ceil() as usize);
    if 3 * block_width > STATE_QUBIT_CAP {
        return Err(Error::SizeCap {
            what: "three-particle qubits",
            requested: 3 * block_width,
            cap: STATE_QUBIT_CAP,
        });
    }
    let rep = permutation_rep(3, block_width)?;
    let physical_indices = physical_subspace_indices(d, block_width);

    let table = rep.group().character_table().clone();
    let mut out = Vec::with_capacity(3);
    for irrep in 0..3 {
        let full = projector_matrix(&rep, irrep)?;
        let physical = restrict_to_indices(full.matrix(), &physical_indices);
        let rank = projector_rank(&physical, 1e-8)?;
        let (label, dim) = &table.irreps()[irrep];
        out.push(SectorProjector {
            irrep,
            label: label.to_string(),
            irrep_dim: *dim,
            full,
            physical,
            rank,
        });
    }
    Ok(out)
}

fn physical_subspace_indices(d: usize, block_width: usize) -> Vec<usize> {
    let side = 1usize << block_width;
    let mut out = Vec::with_capacity(d * d * d);
    for x1 in 0..d {
        for x2 in 0..d {
            for x3 in 0..d {
                out.push((x1 * side + x2) * side + x3);
            }
        }
    }
    out
}

fn restrict_to_indices(m: &DMatrix<Complex64>, indices: &[usize]) -> DMatrix<Complex64> {
    DMatrix::from_fn(indices.len(), indices.len(), |i, j| {
        m[(indices[i], indices[j])]
    })
}

/// Expected sector ranks (symmetric, antisymmetric, mixed) for dimension d.
pub fn expected_ranks(d: usize) -> (usize, usize, usize) {
    let sym = d * (d + 1) * (d + 2) / 6;
    let anti = if d >= 3 { d * (d - 1) * (d - 2) / 6 } else { 0 };
    (sym, anti, d * d * d - sym - anti)
}

#[cfg(test)]
mod tests {
    use super::*;
    
    use crate::simulator::StateVector;
    use nalgebra::DVector;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qubit_particle_ranks() {
        let sectors = three_particle_projectors(2).unwrap();
        let ranks: Vec<usize> = sectors.iter().map(|s| s.rank).collect();
        assert_eq!(ranks, vec![4, 0, 4]);
    }

    #[test]
    fn four_level_particle_ranks() {
        let sectors = three_particle_projectors(4).unwrap();
        let ranks: Vec<usize> = sectors.iter().map(|s| s.rank).collect();
        assert_eq!(ranks, vec![20, 4, 40]);
        assert_eq!(ranks.iter().sum::<usize>(), 64);
    }

    #[test]
    fn three_level_particle_ranks_on_padded_register() {
        // d = 3 needs the physical-subspace restriction to see C(3,3) = 1
        let sectors = three_particle_projectors(3).unwrap();
        let ranks: Vec<usize> = sectors.iter().map(|s| s.rank).collect();
        let (sym, anti, mixed) = expected_ranks(3);
        assert_eq!(ranks, vec![sym, anti, mixed]);
        assert_eq!(ranks.iter().sum::<usize>(), 27);
    }

    #[test]
    fn projectors_are_complete_on_full_register() {
        let sectors = three_particle_projectors(2).unwrap();
        let dim = 8;
        let total = sectors
            .iter()
            .fold(DMatrix::<Complex64>::zeros(dim, dim), |acc, s| {
                acc + s.full.matrix()
            });
        assert!((total - DMatrix::<Complex64>::identity(dim, dim)).norm() < 1e-10);
    }

    #[test]
    fn symmetrizer_produces_the_six_term_superposition() {
        // P^sym on a product basis state spreads 1/6 over all orderings
        let sectors = three_particle_projectors(4).unwrap();
        let sym = &sectors[0].full;
        let d = 4usize;
        let (a, b, cc) = (0usize, 1usize, 2usize);
        let idx = |x1: usize, x2: usize, x3: usize| (x1 * d + x2) * d + x3;
        let input = StateVector::basis(6, idx(a, b, cc));
        let projected = sym.matrix() * input.amplitudes();

        let mut expected = DVector::<Complex64>::zeros(64);
        let perms = [
            (a, b, cc),
            (cc, a, b),
            (b, cc, a),
            (b, a, cc),
            (a, cc, b),
            (cc, b, a),
        ];
        for (x1, x2, x3) in perms {
            expected[idx(x1, x2, x3)] = c(1.0 / 6.0, 0.0);
        }
        assert!((projected - expected).norm() < 1e-12);
    }

    #[test]
    fn antisymmetrizer_signs_follow_parity() {
        let sectors = three_particle_projectors(4).unwrap();
        let anti = &sectors[1].full;
        let d = 4usize;
        let idx = |x1: usize, x2: usize, x3: usize| (x1 * d + x2) * d + x3;
        let input = StateVector::basis(6, idx(0, 1, 2));
        let projected = anti.matrix() * input.amplitudes();
        // even permutations +1/6, odd -1/6
        assert!((projected[idx(0, 1, 2)] - c(1.0 / 6.0, 0.0)).norm() < 1e-12);
        assert!((projected[idx(1, 0, 2)] - c(-1.0 / 6.0, 0.0)).norm() < 1e-12);
        assert!((projected[idx(2, 0, 1)] - c(1.0 / 6.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn mixed_sector_state_is_orthogonal_to_both_statistics() {
        let sectors = three_particle_projectors(2).unwrap();
        let mixed = &sectors[2].full;
        let input = StateVector::basis(3, 0b001);
        let projected = mixed.matrix() * input.amplitudes();
        assert!(projected.norm() > 0.1, "mixed component exists");
        for s in &sectors[..2] {
            let overlap = (s.full.matrix() * &projected).norm();
            assert!(overlap < 1e-12);
        }
    }

    #[test]
    fn standard_projector_matches_class_sum_combination() {
        // (1/3)(2 rho~(identity) - 2 rho~(3-cycles)) on single-qubit blocks
        let rep = permutation_rep(3, 1).unwrap();
        let sectors = three_particle_projectors(2).unwrap();
        let dim = 8;
        let mut expected = DMatrix::<Complex64>::identity(dim, dim) * c(2.0 / 3.0, 0.0);
        let group = rep.group().clone();
        for g in &group.classes()[2].members {
            expected -= rep.dense(g).matrix() * c(1.0 / 3.0, 0.0);
        }
        assert!((sectors[2].full.matrix() - expected).norm() < 1e-12);
    }
}
