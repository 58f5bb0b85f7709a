//! Quantum phase estimation and its symmetry-adapted composition.
//!
//! The symmetry-adapted variant first splits the input state into coherent
//! irrep branches, then runs textbook phase estimation of U = exp(2 pi i H')
//! on the system register, where H' = s (H - E_min I) rescales the spectrum
//! into [0, 1). Measuring the irrep and phase registers together yields a
//! joint (irrep, energy-bin) distribution whose per-irrep peaks sit at the
//! eigenvalues of H restricted to that irrep's subspace.
//!
//! Controlled powers U^(2^j) are computed by repeated squaring of the dense
//! matrix; no Trotterization is involved.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::qct::qft_matrix;
use crate::reps::{BasisAction, UnitaryRep};
use crate::simulator::{
    apply_operator, controlled_apply, exact_eigensystem, register_distribution, DenseOperator,
    Register, StateVector,
};
use crate::tgsa::{tgsa_joint, TgsaInput};

/// Linear map between phase bins and energies: E = E_min + (u / 2^n) / scale.
///
/// The scale s = (1 - 2^-n) / (E_max - E_min + eps) with eps = 1e-6 keeps the
/// largest eigenphase strictly below 1, so no eigenvalue aliases across the
/// [0, 1) boundary.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Calibration {
    pub e_min: f64,
    pub e_max: f64,
    pub scale: f64,
}

pub const CALIBRATION_PADDING: f64 = 1e-6;

impl Calibration {
    pub fn for_spectrum(e_min: f64, e_max: f64, n_phase_qubits: usize) -> Self {
        let bins = (1u64 << n_phase_qubits) as f64;
        let scale = (1.0 - 1.0 / bins) / (e_max - e_min + CALIBRATION_PADDING);
        Calibration {
            e_min,
            e_max,
            scale,
        }
    }

    /// Width of one phase bin in energy units.
    pub fn bin_width(&self, n_phase_qubits: usize) -> f64 {
        1.0 / ((1u64 << n_phase_qubits) as f64 * self.scale)
    }

    /// Eigenphase of an energy under this calibration.
    pub fn phase_of(&self, energy: f64) -> f64 {
        self.scale * (energy - self.e_min)
    }
}

/// E = E_min + (u / 2^n) / scale; inverse of the spectrum normalization.
pub fn phase_to_energy(u: u64, n_phase_qubits: usize, calibration: &Calibration) -> f64 {
    let frac = u as f64 / (1u64 << n_phase_qubits) as f64;
    calibration.e_min + frac / calibration.scale
}

/// Outcome distribution over the phase register.
#[derive(Debug, Clone)]
pub struct PhaseDistribution {
    pub n_phase_qubits: usize,
    /// probabilities[u] for u in [0, 2^n).
    pub probabilities: Vec<f64>,
    pub calibration: Option<Calibration>,
}

impl PhaseDistribution {
    pub fn peak(&self) -> (u64, f64) {
        let mut best = (0u64, f64::MIN);
        for (u, &p) in self.probabilities.iter().enumerate() {
            if p > best.1 {
                best = (u as u64, p);
            }
        }
        best
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// Textbook phase estimation of a unitary: uniform phase register, controlled
/// U^(2^j) powers, inverse Fourier transform, read out.
pub fn qpe(u_op: &DenseOperator, state: &StateVector, n_phase_qubits: usize) -> Result<PhaseDistribution> {
    if !u_op.is_unitary() {
        return Err(Error::NotUnitary { residual: f64::NAN });
    }
    if n_phase_qubits == 0 {
        return Err(Error::InvalidArgument("need at least one phase qubit".into()));
    }
    if u_op.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            got: u_op.dim(),
        });
    }
    let n_sys = state.n_qubits();
    let sys_reg = Register::new(0, n_sys);
    let phase_reg = Register::new(n_sys, n_phase_qubits);

    let joint = state.tensor(&uniform_state(n_phase_qubits));
    let joint = controlled_powers(u_op, joint, sys_reg, phase_reg)?;
    let joint = apply_operator(&qft_matrix(n_phase_qubits)?.adjoint(), &joint, phase_reg)?;

    Ok(PhaseDistribution {
        n_phase_qubits,
        probabilities: register_distribution(&joint, phase_reg),
        calibration: None,
    })
}

fn uniform_state(n: usize) -> StateVector {
    let dim = 1usize << n;
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    StateVector::new(DVector::from_element(dim, amp)).expect("uniform state is normalized")
}

/// Apply controlled U^(2^(n-1-j)) from phase qubit j onto the system register,
/// with the powers obtained by repeated squaring.
fn controlled_powers(
    u_op: &DenseOperator,
    mut joint: StateVector,
    sys_reg: Register,
    phase_reg: Register,
) -> Result<StateVector> {
    let n = phase_reg.width;
    let mut powers = Vec::with_capacity(n);
    powers.push(u_op.clone());
    for j in 1..n {
        let prev = &powers[j - 1];
        powers.push(prev.compose(prev)?);
    }
    for j in 0..n {
        let control = Register::new(phase_reg.start + j, 1);
        let power = &powers[n - 1 - j];
        joint = controlled_apply(control, 1, power, &joint, sys_reg)?;
    }
    Ok(joint)
}

/// One irrep branch of the joint symmetry-adapted distribution.
#[derive(Debug, Clone)]
pub struct SqpeBranch {
    pub irrep: usize,
    pub label: String,
    pub dim: usize,
    /// Joint probabilities p(irrep, u), including all post-selections.
    pub probabilities: Vec<f64>,
}

impl SqpeBranch {
    /// Probability of landing in this irrep at all.
    pub fn weight(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn peak(&self) -> (u64, f64) {
        let mut best = (0u64, f64::MIN);
        for (u, &p) in self.probabilities.iter().enumerate() {
            if p > best.1 {
                best = (u as u64, p);
            }
        }
        best
    }
}

/// Joint (irrep, phase-bin) distribution of the symmetry-adapted circuit.
#[derive(Debug, Clone)]
pub struct SqpeDistribution {
    pub group: String,
    pub n_phase_qubits: usize,
    pub calibration: Calibration,
    pub lcu_probability: f64,
    pub branches: Vec<SqpeBranch>,
}

impl SqpeDistribution {
    /// CSV rows (irrep_label, u, probability, energy), ordered by irrep then u.
    pub fn rows(&self) -> Vec<(String, u64, f64, f64)> {
        let mut out = Vec::new();
        for branch in &self.branches {
            for (u, &p) in branch.probabilities.iter().enumerate() {
                let u = u as u64;
                out.push((
                    branch.label.clone(),
                    u,
                    p,
                    phase_to_energy(u, self.n_phase_qubits, &self.calibration),
                ));
            }
        }
        out
    }
}

/// Tolerance on the symmetry commutators checked before running the circuit.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// ||H rho - rho H|| for a basis action, in O(dim^2).
fn commutator_norm(h: &DMatrix<Complex64>, action: &BasisAction) -> f64 {
    let dim = h.nrows();
    let targets = action.targets();
    let phases = action.phases();
    let mut inverse = vec![0usize; dim];
    for (b, &t) in targets.iter().enumerate() {
        inverse[t] = b;
    }
    let mut acc = 0.0;
    for i in 0..dim {
        let k = inverse[i];
        for j in 0..dim {
            let ha = h[(i, targets[j])] * phases[j];
            let ah = phases[k] * h[(k, j)];
            acc += (ha - ah).norm_sqr();
        }
    }
    acc.sqrt()
}

/// Symmetry-adapted phase estimation: the symmetry transform followed by QPE
/// of exp(2 pi i H') on the system register. Fails up front if H does not
/// commute with every group action, naming the violating element.
pub fn sqpe(
    rep: &UnitaryRep,
    hamiltonian: &DenseOperator,
    state: &StateVector,
    n_phase_qubits: usize,
    anc_input: TgsaInput,
) -> Result<SqpeDistribution> {
    if !hamiltonian.is_hermitian() {
        return Err(Error::NotHermitian { residual: f64::NAN });
    }
    if hamiltonian.dim() != 1usize << rep.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: 1usize << rep.n_qubits(),
            got: hamiltonian.dim(),
        });
    }
    let group = rep.group().clone();
    for g in group.elements() {
        let residual = commutator_norm(hamiltonian.matrix(), &rep.action(g));
        if residual > SYMMETRY_TOL {
            return Err(Error::SymmetryViolation {
                element: g.to_string(),
                residual,
            });
        }
    }

    let eig = exact_eigensystem(hamiltonian)?;
    let e_min = eig.eigenvalues[0];
    let e_max = *eig.eigenvalues.last().expect("non-empty spectrum");
    let calibration = Calibration::for_spectrum(e_min, e_max, n_phase_qubits);

    // U = exp(2 pi i s (H - E_min)) assembled from the eigendecomposition.
    let dim = hamiltonian.dim();
    let mut u_matrix = DMatrix::<Complex64>::zeros(dim, dim);
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, TAU * calibration.phase_of(lambda));
        let v = eig.eigenvector(k);
        u_matrix += (&v * v.adjoint()) * phase;
    }
    let u_op = DenseOperator::unitary(u_matrix)?;

    let transformed = tgsa_joint(rep, anc_input, state)?;
    let n_anc = transformed.state.n_qubits() - rep.n_qubits();
    let sys_reg = Register::new(n_anc, rep.n_qubits());
    let phase_reg = Register::new(n_anc + rep.n_qubits(), n_phase_qubits);
    let anc_reg = Register::new(0, n_anc);

    let joint = transformed.state.tensor(&uniform_state(n_phase_qubits));
    let joint = controlled_powers(&u_op, joint, sys_reg, phase_reg)?;
    let joint = apply_operator(&qft_matrix(n_phase_qubits)?.adjoint(), &joint, phase_reg)?;

    // joint (irrep, u) probabilities, rescaled by the LCU success probability
    let bins = 1usize << n_phase_qubits;
    let table = group.character_table();
    let mut branch_probs = vec![vec![0.0; bins]; group.n_classes()];
    let n_total = joint.n_qubits();
    for b in 0..joint.dim() {
        let anc = anc_reg.value_of(b, n_total);
        if anc >= group.n_classes() {
            continue;
        }
        let u = phase_reg.value_of(b, n_total);
        branch_probs[anc][u] += joint.amplitudes()[b].norm_sqr() * transformed.probability;
    }

    let branches = branch_probs
        .into_iter()
        .enumerate()
        .map(|(irrep, probabilities)| {
            let (label, dim) = &table.irreps()[irrep];
            SqpeBranch {
                irrep,
                label: label.to_string(),
                dim: *dim,
                probabilities,
            }
        })
        .collect();

    Ok(SqpeDistribution {
        group: group.name().to_owned(),
        n_phase_qubits,
        calibration,
        lcu_probability: transformed.probability,
        branches,
    })
}
