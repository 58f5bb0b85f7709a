//! The generalized symmetry-adapted transform: QCT-dagger, SELECT over
//! conjugacy classes, QCT. Acting on a trivial-irrep ancilla it leaves branch
//! Gamma of the joint state holding (1/d_Gamma) P^Gamma |psi>, so measuring
//! the ancilla post-selects an irrep component with probability
//! |a_Gamma / d_Gamma|^2.
//!
//! Class mixers rho~(C) = (1/|C|) sum_{g in C} rho(g) are realized as LCU
//! circuits: PREPARE a uniform superposition over the class members on a
//! scratch register, SELECT the member actions, undo PREPARE, and post-select
//! zero, with mid-circuit measurement folding the scratch register away. Every
//! circuit-path operation has a dense-matrix oracle twin (`*_dense`,
//! [`projector_matrix`]) used for differential testing; post-selection is
//! exact projection with probability bookkeeping, never sampling.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::qct::{ancilla_qubits_for, build_qct};
use crate::reps::UnitaryRep;
use crate::simulator::{
    apply_operator, discard_fixed_register, measure_register, multi_controlled_apply,
    DenseOperator, PostSelectedState, Register, StateVector,
};
use crate::wire::{vector_to_wire, WireComplex};

/// Ancilla input of the transform: an irrep basis label or a raw state on the
/// irrep register.
#[derive(Debug, Clone)]
pub enum TgsaInput {
    Irrep(usize),
    Raw(StateVector),
}

/// One irrep branch of the joint output state.
#[derive(Debug, Clone)]
pub struct TgsaBranch {
    pub irrep: usize,
    pub label: String,
    pub dim: usize,
    /// Norm of the unnormalized branch; |a_Gamma / d_Gamma| for a
    /// trivial-irrep ancilla input.
    pub amplitude: f64,
    /// amplitude^2; includes every post-selection folded in.
    pub probability: f64,
    /// Normalized branch state; `None` when the branch has no weight.
    pub state: Option<StateVector>,
}

#[derive(Debug, Clone)]
pub struct TgsaOutcome {
    pub group: String,
    pub n_ancilla: usize,
    /// Probability that all mid-circuit LCU post-selections succeed.
    pub lcu_probability: f64,
    pub branches: Vec<TgsaBranch>,
}

impl TgsaOutcome {
    pub fn branch(&self, irrep: usize) -> &TgsaBranch {
        &self.branches[irrep]
    }

    pub fn to_wire(&self) -> TgsaOutcomeWire {
        TgsaOutcomeWire {
            group: self.group.clone(),
            n_ancilla: self.n_ancilla,
            lcu_probability: self.lcu_probability,
            branches: self
                .branches
                .iter()
                .map(|b| TgsaBranchWire {
                    label: b.label.clone(),
                    dim: b.dim,
                    amplitude: WireComplex(b.amplitude, 0.0),
                    probability: b.probability,
                    state: b.state.as_ref().map(|s| vector_to_wire(s.amplitudes())),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TgsaOutcomeWire {
    pub group: String,
    pub n_ancilla: usize,
    pub lcu_probability: f64,
    pub branches: Vec<TgsaBranchWire>,
}

#[derive(Debug, Serialize)]
pub struct TgsaBranchWire {
    pub label: String,
    pub dim: usize,
    pub amplitude: WireComplex,
    pub probability: f64,
    pub state: Option<Vec<WireComplex>>,
}

/// A unitary whose first column is the uniform superposition of the first
/// `dim` basis states of the enclosing power-of-two register (a Householder
/// reflection exchanging |0> with that superposition).
pub fn prepare_uniform(dim: usize) -> Result<DenseOperator> {
    if dim == 0 {
        return Err(Error::InvalidArgument("prepare dimension must be >= 1".into()));
    }
    let width = ancilla_qubits_for(dim);
    let padded = 1usize << width;
    let mut target = DVector::<Complex64>::zeros(padded);
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    for i in 0..dim {
        target[i] = amp;
    }
    let mut w = -target.clone();
    w[0] += Complex64::new(1.0, 0.0);
    let norm_sq = w.norm_squared();
    let matrix = if norm_sq < 1e-24 {
        DMatrix::identity(padded, padded)
    } else {
        let scale = Complex64::new(2.0 / norm_sq, 0.0);
        DMatrix::identity(padded, padded) - (&w * w.adjoint()) * scale
    };
    DenseOperator::unitary(matrix)
}

/// LCU realization metadata for the class sum of one conjugacy class.
#[derive(Debug, Clone)]
pub struct ClassMixer {
    pub class_index: usize,
    pub label: String,
    pub size: usize,
    /// Scratch qubits for the member superposition: ceil(log2 |C|), zero for
    /// singleton classes.
    pub prep_qubits: usize,
}

pub fn class_mixer(group: &FiniteGroup, class_index: usize) -> Result<ClassMixer> {
    let class = group
        .classes()
        .get(class_index)
        .ok_or_else(|| Error::InvalidArgument(format!("no class {class_index}")))?;
    Ok(ClassMixer {
        class_index,
        label: class.label.to_string(),
        size: class.size(),
        prep_qubits: if class.size() == 1 {
            0
        } else {
            ancilla_qubits_for(class.size())
        },
    })
}

/// Dense oracle for the class mixer rho~(C) = (1/|C|) sum_{g in C} rho(g).
/// Subnormalized for |C| > 1; always commutes with every rho(h).
pub fn class_mixer_dense(rep: &UnitaryRep, class_index: usize) -> Result<DenseOperator> {
    let group = rep.group();
    let class = group
        .classes()
        .get(class_index)
        .ok_or_else(|| Error::InvalidArgument(format!("no class {class_index}")))?;
    let dim = 1usize << rep.n_qubits();
    let weight = Complex64::new(1.0 / class.size() as f64, 0.0);
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for g in &class.members {
        let action = rep.action(g);
        let dense = action.to_dense();
        m += dense.matrix() * weight;
    }
    DenseOperator::new(m)
}

/// Apply the class mixer through its LCU circuit: PREP on a scratch register,
/// member actions selected on it, PREP-dagger, post-select zero. The recorded
/// probability is || rho~(C) |psi> ||^2.
pub fn class_mixer_apply(
    rep: &UnitaryRep,
    class_index: usize,
    state: &StateVector,
) -> Result<PostSelectedState> {
    let group = rep.group();
    let class = group
        .classes()
        .get(class_index)
        .ok_or_else(|| Error::InvalidArgument(format!("no class {class_index}")))?
        .clone();
    if state.n_qubits() != rep.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: 1 << rep.n_qubits(),
            got: state.dim(),
        });
    }
    if class.size() == 1 {
        let out = rep.action(&class.representative).apply(state)?;
        return Ok(PostSelectedState {
            state: out.normalized()?,
            probability: 1.0,
        });
    }

    let n_sys = state.n_qubits();
    let scratch = ancilla_qubits_for(class.size());
    let sys_reg = Register::new(0, n_sys);
    let prep_reg = Register::new(n_sys, scratch);
    let prep = prepare_uniform(class.size())?;

    let mut joint = state.tensor(&StateVector::zero(scratch));
    joint = apply_operator(&prep, &joint, prep_reg)?;
    for (i, g) in class.members.iter().enumerate() {
        joint = multi_controlled_apply(&[(prep_reg, i)], &rep.dense(g), &joint, sys_reg)?;
    }
    joint = apply_operator(&prep.adjoint(), &joint, prep_reg)?;
    let measured = measure_register(&joint, prep_reg, 0)?;
    let reduced = discard_fixed_register(&measured.state, prep_reg, 0)?;
    Ok(PostSelectedState {
        state: reduced,
        probability: measured.probability,
    })
}

/// Dense oracle for SELECT: sum_C |C><C| (x) rho~(C), identity on ancilla
/// padding.
pub fn select_dense(rep: &UnitaryRep, n_ancilla: usize) -> Result<DenseOperator> {
    let group = rep.group();
    if (1usize << n_ancilla) < group.n_classes() {
        return Err(Error::InvalidArgument(format!(
            "{n_ancilla} ancilla qubits cannot index {} classes",
            group.n_classes()
        )));
    }
    let sys_dim = 1usize << rep.n_qubits();
    let anc_dim = 1usize << n_ancilla;
    let dim = anc_dim * sys_dim;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for anc in 0..anc_dim {
        if anc < group.n_classes() {
            let mixer = class_mixer_dense(rep, anc)?;
            for row in 0..sys_dim {
                for col in 0..sys_dim {
                    let v = mixer.matrix()[(row, col)];
                    if v.norm_sqr() > 0.0 {
                        m[(anc * sys_dim + row, anc * sys_dim + col)] = v;
                    }
                }
            }
        } else {
            for row in 0..sys_dim {
                m[(anc * sys_dim + row, anc * sys_dim + row)] = Complex64::new(1.0, 0.0);
            }
        }
    }
    DenseOperator::new(m)
}

/// Apply SELECT over conjugacy classes to a joint (ancilla, system) state.
/// Ancilla values beyond the class count act as identity. Each class with
/// more than one member runs its LCU with mid-circuit measurement and reset
/// of the shared scratch register; all post-selection probabilities are
/// folded into the result.
pub fn select_over_classes(
    rep: &UnitaryRep,
    joint: &StateVector,
    n_ancilla: usize,
) -> Result<PostSelectedState> {
    let group = rep.group().clone();
    if (1usize << n_ancilla) < group.n_classes() {
        return Err(Error::InvalidArgument(format!(
            "{n_ancilla} ancilla qubits cannot index {} classes",
            group.n_classes()
        )));
    }
    let n_sys = rep.n_qubits();
    if joint.n_qubits() != n_ancilla + n_sys {
        return Err(Error::DimensionMismatch {
            expected: 1 << (n_ancilla + n_sys),
            got: joint.dim(),
        });
    }
    let anc_reg = Register::new(0, n_ancilla);
    let sys_reg = Register::new(n_ancilla, n_sys);

    let mut current = joint.clone();
    let mut probability = 1.0;
    for (c, class) in group.classes().iter().enumerate() {
        if class.size() == 1 {
            current = multi_controlled_apply(
                &[(anc_reg, c)],
                &rep.dense(&class.representative),
                &current,
                sys_reg,
            )?;
            continue;
        }
        let scratch = ancilla_qubits_for(class.size());
        let prep_reg = Register::new(n_ancilla + n_sys, scratch);
        let prep = prepare_uniform(class.size())?;
        let mut extended = current.tensor(&StateVector::zero(scratch));
        extended = apply_operator(&prep, &extended, prep_reg)?;
        for (i, g) in class.members.iter().enumerate() {
            extended = multi_controlled_apply(
                &[(anc_reg, c), (prep_reg, i)],
                &rep.dense(g),
                &extended,
                sys_reg,
            )?;
        }
        extended = apply_operator(&prep.adjoint(), &extended, prep_reg)?;
        let measured = measure_register(&extended, prep_reg, 0)?;
        probability *= measured.probability;
        current = discard_fixed_register(&measured.state, prep_reg, 0)?;
    }
    Ok(PostSelectedState {
        state: current,
        probability,
    })
}

/// The full transform on a joint (ancilla, system) register: QCT-dagger,
/// SELECT, QCT, with the LCU post-selection probability carried along. The
/// returned state is normalized; scaling it by sqrt(probability) recovers the
/// unnormalized coherent superposition of irrep branches.
pub fn tgsa_joint(rep: &UnitaryRep, anc_input: TgsaInput, sys: &StateVector) -> Result<PostSelectedState> {
    let group = rep.group();
    let qct = build_qct(group)?;
    let n_anc = qct.n_ancilla();
    let anc = match anc_input {
        TgsaInput::Irrep(i) => {
            if i >= group.n_classes() {
                return Err(Error::InvalidArgument(format!(
                    "irrep index {i} out of range for {}",
                    group.name()
                )));
            }
            StateVector::basis(n_anc, qct.irrep_basis_index(i))
        }
        TgsaInput::Raw(state) => {
            if state.n_qubits() != n_anc {
                return Err(Error::DimensionMismatch {
                    expected: 1 << n_anc,
                    got: state.dim(),
                });
            }
            state
        }
    };
    let anc_reg = Register::new(0, n_anc);
    let mut joint = anc.tensor(sys);
    joint = apply_operator(&qct.operator().adjoint(), &joint, anc_reg)?;
    let selected = select_over_classes(rep, &joint, n_anc)?;
    let out = apply_operator(qct.operator(), &selected.state, anc_reg)?;
    Ok(PostSelectedState {
        state: out,
        probability: selected.probability,
    })
}

/// Run the transform and split the joint state into labeled irrep branches.
/// For a trivial-irrep ancilla input, branch Gamma holds
/// (1/d_Gamma) P^Gamma |psi> with probability |a_Gamma / d_Gamma|^2.
pub fn tgsa_apply(rep: &UnitaryRep, anc_input: TgsaInput, sys: &StateVector) -> Result<TgsaOutcome> {
    let joint = tgsa_joint(rep, anc_input, sys)?;
    branches_from_joint(rep.group(), &joint, rep.n_qubits())
}

fn branches_from_joint(
    group: &FiniteGroup,
    joint: &PostSelectedState,
    n_sys: usize,
) -> Result<TgsaOutcome> {
    let table = group.character_table();
    let n_anc = joint.state.n_qubits() - n_sys;
    let sys_dim = 1usize << n_sys;
    let scale = joint.probability.sqrt();

    let mut branches = Vec::with_capacity(group.n_classes());
    for irrep in 0..group.n_classes() {
        let (label, dim) = &table.irreps()[irrep];
        let mut raw = DVector::<Complex64>::zeros(sys_dim);
        for s in 0..sys_dim {
            raw[s] = joint.state.amplitudes()[irrep * sys_dim + s] * scale;
        }
        let amplitude = raw.norm();
        let probability = amplitude * amplitude;
        let state = if probability > 1e-20 {
            Some(StateVector::new(raw / Complex64::new(amplitude, 0.0))?)
        } else {
            None
        };
        branches.push(TgsaBranch {
            irrep,
            label: label.to_string(),
            dim: *dim,
            amplitude,
            probability,
            state,
        });
    }
    Ok(TgsaOutcome {
        group: group.name().to_owned(),
        n_ancilla: n_anc,
        lcu_probability: joint.probability,
        branches,
    })
}

/// Dense projector oracle P^Gamma = (d_Gamma/|G|) sum_C chi_Gamma(C)
/// sum_{g in C} rho(g); idempotent, hermitian, and central.
pub fn projector_matrix(rep: &UnitaryRep, irrep: usize) -> Result<DenseOperator> {
    let group = rep.group();
    let table = group.character_table();
    if irrep >= table.n_classes() {
        return Err(Error::InvalidArgument(format!(
            "irrep index {irrep} out of range for {}",
            group.name()
        )));
    }
    let dim = 1usize << rep.n_qubits();
    let d = table.irrep_dim(irrep) as f64;
    let order = group.order() as f64;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for (c, class) in group.classes().iter().enumerate() {
        let coeff = table.chi(irrep, c) * (d / order);
        for g in &class.members {
            let action = rep.action(g);
            for (b, &t) in action.targets().iter().enumerate() {
                m[(t, b)] += coeff * action.phases()[b];
            }
        }
    }
    DenseOperator::hermitian(m)
}

/// Project onto one irrep through the circuit: run the transform with a
/// trivial-irrep ancilla and measure the ancilla at `irrep`. The recorded
/// probability is |a_Gamma / d_Gamma|^2 including the LCU post-selections.
pub fn project_and_postselect(
    rep: &UnitaryRep,
    irrep: usize,
    state: &StateVector,
) -> Result<PostSelectedState> {
    let group = rep.group();
    let trivial = group.trivial_irrep_index();
    let joint = tgsa_joint(rep, TgsaInput::Irrep(trivial), state)?;
    let qct = build_qct(group)?;
    let anc_reg = Register::new(0, qct.n_ancilla());
    let measured = measure_register(&joint.state, anc_reg, qct.irrep_basis_index(irrep))?;
    let sys = discard_fixed_register(&measured.state, anc_reg, qct.irrep_basis_index(irrep))?;
    Ok(PostSelectedState {
        state: sys,
        probability: joint.probability * measured.probability,
    })
}

/// Abelian-only projection variant: PREPARE the uniform ancilla superposition,
/// SELECT, then a single QCT. Branch Gamma holds a_Gamma |psi^Gamma> exactly
/// (no dimension rescaling; every d_Gamma = 1 here), and no ancilla-side
/// post-selection is needed because singleton classes make SELECT unitary.
pub fn prepare_projection_abelian(rep: &UnitaryRep, sys: &StateVector) -> Result<TgsaOutcome> {
    let group = rep.group();
    if !group.is_abelian() {
        return Err(Error::NonAbelianGroup(group.name().to_owned()));
    }
    let qct = build_qct(group)?;
    let n_anc = qct.n_ancilla();
    let anc_reg = Register::new(0, n_anc);

    let mut joint = StateVector::zero(n_anc).tensor(sys);
    joint = apply_operator(&prepare_uniform(group.n_classes())?, &joint, anc_reg)?;
    let selected = select_over_classes(rep, &joint, n_anc)?;
    let out = apply_operator(qct.operator(), &selected.state, anc_reg)?;
    branches_from_joint(
        group,
        &PostSelectedState {
            state: out,
            probability: selected.probability,
        },
        rep.n_qubits(),
    )
}

#[cfg(test)]
mod tests;
