//! Dense statevector and operator engine.
//!
//! Basis convention: qubit 0 is the most significant bit, so an n-qubit basis
//! state |q0 q1 ... q(n-1)> has index q0*2^(n-1) + ... + q(n-1)*2^0. A register
//! is a contiguous qubit range; its value occupies a contiguous bit field of
//! the basis index. This matches the binary decomposition used everywhere in
//! this crate, including the character-transform ancilla and the coordinate
//! registers of the lattice models.
//!
//! States and operators are immutable values; every operation returns a new
//! value. Post-selection is exact projection plus renormalization with the
//! probability recorded; a seeded sampling mode exists separately for
//! statistical tests.

mod eigen;
mod sampling;

pub use eigen::{exact_eigensystem, hermitian_eigensystem, EigenSystem};
pub use sampling::{sample_register, RNG_ALGORITHM};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::wire::{matrix_to_wire, vector_to_wire, WireComplex};

/// Hard cap on qubits for dense operators.
pub const OPERATOR_QUBIT_CAP: usize = 16;
/// Hard cap on qubits for pure statevector paths.
pub const STATE_QUBIT_CAP: usize = 24;

/// Tolerance for the normalization and flag checks performed on construction.
pub const CONSTRUCTION_TOL: f64 = 1e-10;

/// A contiguous range of qubits inside a wider system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Register {
    pub start: usize,
    pub width: usize,
}

impl Register {
    pub fn new(start: usize, width: usize) -> Self {
        Register { start, width }
    }

    pub fn dim(&self) -> usize {
        1 << self.width
    }

    fn end(&self) -> usize {
        self.start + self.width
    }

    /// Bit shift of this register's field inside an n-qubit basis index.
    fn shift(&self, n_qubits: usize) -> usize {
        n_qubits - self.end()
    }

    /// Value held by this register in basis index `b` of an n-qubit system.
    pub fn value_of(&self, b: usize, n_qubits: usize) -> usize {
        (b >> self.shift(n_qubits)) & (self.dim() - 1)
    }

    fn overlaps(&self, other: &Register) -> bool {
        self.start < other.end() && other.start < self.end()
    }
}

/// Named disjoint registers covering an n-qubit system.
#[derive(Debug, Clone)]
pub struct RegisterLayout {
    names: Vec<String>,
    registers: Vec<Register>,
    n_qubits: usize,
}

impl RegisterLayout {
    /// Build a layout from `(name, width)` pairs, packed from qubit 0 upward.
    pub fn new(parts: &[(&str, usize)]) -> Self {
        let mut registers = Vec::with_capacity(parts.len());
        let mut names = Vec::with_capacity(parts.len());
        let mut start = 0;
        for (name, width) in parts {
            names.push((*name).to_owned());
            registers.push(Register::new(start, *width));
            start += width;
        }
        RegisterLayout {
            names,
            registers,
            n_qubits: start,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn get(&self, name: &str) -> Option<Register> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.registers[i])
    }

    /// Panics if the name is unknown; use for layouts built in the same module.
    pub fn reg(&self, name: &str) -> Register {
        self.get(name)
            .unwrap_or_else(|| panic!("no register named {name}"))
    }
}

/// A pure state of `n_qubits` qubits as a dense amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: DVector<Complex64>,
    n_qubits: usize,
    subnormalized: bool,
}

impl StateVector {
    /// A normalized state. Fails if the length is not a power of two or the
    /// norm deviates from 1 by more than the construction tolerance.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let state = Self::subnormalized(amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > CONSTRUCTION_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(StateVector {
            subnormalized: false,
            ..state
        })
    }

    /// A state that is explicitly allowed to have norm <= 1 (e.g. an
    /// unnormalized post-selection branch).
    pub fn subnormalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "statevector length {len} is not a power of two"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > STATE_QUBIT_CAP {
            return Err(Error::SizeCap {
                what: "statevector qubits",
                requested: n_qubits,
                cap: STATE_QUBIT_CAP,
            });
        }
        Ok(StateVector {
            amplitudes,
            n_qubits,
            subnormalized: true,
        })
    }

    /// The computational basis state |index> on `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!(index < 1 << n_qubits, "basis index out of range");
        let mut v = DVector::zeros(1 << n_qubits);
        v[index] = Complex64::new(1.0, 0.0);
        StateVector {
            amplitudes: v,
            n_qubits,
            subnormalized: false,
        }
    }

    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    /// A seeded pseudo-random normalized state (ChaCha12 stream). The same
    /// seed always yields the same state, on every platform.
    pub fn random(n_qubits: usize, seed: u64) -> Self {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let dim = 1 << n_qubits;
        let mut v = DVector::zeros(dim);
        for i in 0..dim {
            v[i] = Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
        }
        let norm = v.norm();
        v /= Complex64::new(norm, 0.0);
        StateVector {
            amplitudes: v,
            n_qubits,
            subnormalized: false,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Result<StateVector> {
        let norm = self.norm();
        if norm < 1e-14 {
            return Err(Error::ZeroProbability(
                "cannot normalize a zero vector".into(),
            ));
        }
        let mut amps = self.amplitudes.clone();
        amps /= Complex64::new(norm, 0.0);
        Ok(StateVector {
            amplitudes: amps,
            n_qubits: self.n_qubits,
            subnormalized: false,
        })
    }

    /// Tensor product; `self` occupies the most significant qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let amps = self.amplitudes.kronecker(&other.amplitudes);
        StateVector {
            amplitudes: amps,
            n_qubits: self.n_qubits + other.n_qubits,
            subnormalized: self.subnormalized || other.subnormalized,
        }
    }

    /// <self|other>.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn register_full(&self) -> Register {
        Register::new(0, self.n_qubits)
    }

    pub fn to_wire(&self) -> Vec<WireComplex> {
        vector_to_wire(&self.amplitudes)
    }
}

/// A dense operator on `n_qubits` qubits with verified structure flags.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    matrix: DMatrix<Complex64>,
    n_qubits: usize,
    hermitian: bool,
    unitary: bool,
}

fn dims_of(matrix: &DMatrix<Complex64>) -> Result<usize> {
    let dim = matrix.nrows();
    if matrix.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: matrix.ncols(),
        });
    }
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "operator dimension {dim} is not a power of two"
        )));
    }
    let n = dim.trailing_zeros() as usize;
    if n > OPERATOR_QUBIT_CAP {
        return Err(Error::SizeCap {
            what: "operator qubits",
            requested: n,
            cap: OPERATOR_QUBIT_CAP,
        });
    }
    Ok(n)
}

fn hermiticity_residual(m: &DMatrix<Complex64>) -> f64 {
    (m - m.adjoint()).norm()
}

fn unitarity_residual(m: &DMatrix<Complex64>) -> f64 {
    let dim = m.nrows();
    (m.adjoint() * m - DMatrix::<Complex64>::identity(dim, dim)).norm()
}

impl DenseOperator {
    /// Wrap a matrix, detecting the hermitian and unitary flags numerically.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let n_qubits = dims_of(&matrix)?;
        let hermitian = hermiticity_residual(&matrix) <= CONSTRUCTION_TOL;
        let unitary = unitarity_residual(&matrix) <= CONSTRUCTION_TOL;
        Ok(DenseOperator {
            matrix,
            n_qubits,
            hermitian,
            unitary,
        })
    }

    /// Wrap a matrix whose flags the caller has already established (basis
    /// permutations, projector sums); skips the O(dim^3) unitarity product.
    pub(crate) fn from_verified_parts(
        matrix: DMatrix<Complex64>,
        hermitian: bool,
        unitary: bool,
    ) -> Result<Self> {
        let n_qubits = dims_of(&matrix)?;
        Ok(DenseOperator {
            matrix,
            n_qubits,
            hermitian,
            unitary,
        })
    }

    /// Wrap a matrix that must be unitary.
    pub fn unitary(matrix: DMatrix<Complex64>) -> Result<Self> {
        let op = Self::new(matrix)?;
        if !op.unitary {
            return Err(Error::NotUnitary {
                residual: unitarity_residual(&op.matrix),
            });
        }
        Ok(op)
    }

    /// Wrap a matrix that must be hermitian. Only the O(dim^2) hermiticity
    /// check runs; the unitary flag is left unset.
    pub fn hermitian(matrix: DMatrix<Complex64>) -> Result<Self> {
        let n_qubits = dims_of(&matrix)?;
        let residual = hermiticity_residual(&matrix);
        if residual > CONSTRUCTION_TOL {
            return Err(Error::NotHermitian { residual });
        }
        Ok(DenseOperator {
            matrix,
            n_qubits,
            hermitian: true,
            unitary: false,
        })
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        DenseOperator {
            matrix: DMatrix::identity(dim, dim),
            n_qubits,
            hermitian: true,
            unitary: true,
        }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator {
            matrix: self.matrix.adjoint(),
            n_qubits: self.n_qubits,
            hermitian: self.hermitian,
            unitary: self.unitary,
        }
    }

    /// Operator product `self * other`.
    pub fn compose(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        DenseOperator::new(&self.matrix * &other.matrix)
    }

    /// Kronecker product; `self` acts on the most significant qubits.
    pub fn tensor(&self, other: &DenseOperator) -> Result<DenseOperator> {
        DenseOperator::new(self.matrix.kronecker(&other.matrix))
    }

    pub fn scale(&self, factor: Complex64) -> DenseOperator {
        DenseOperator::new(self.matrix.clone() * factor).expect("scaling preserves dimensions")
    }

    pub fn add(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        DenseOperator::new(&self.matrix + &other.matrix)
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }

    pub fn to_wire(&self) -> Vec<Vec<WireComplex>> {
        matrix_to_wire(&self.matrix)
    }
}

/// A normalized state together with the cumulative probability of the
/// post-selections that produced it.
#[derive(Debug, Clone)]
pub struct PostSelectedState {
    pub state: StateVector,
    pub probability: f64,
}

impl PostSelectedState {
    /// Fold a further post-selection step into this one.
    pub fn then(self, next: PostSelectedState) -> PostSelectedState {
        PostSelectedState {
            state: next.state,
            probability: self.probability * next.probability,
        }
    }
}

/// Apply `op` to a contiguous register of `state`, identity elsewhere.
pub fn apply_operator(
    op: &DenseOperator,
    state: &StateVector,
    target: Register,
) -> Result<StateVector> {
    if target.end() > state.n_qubits() {
        return Err(Error::InvalidArgument(format!(
            "target register [{}..{}) exceeds system width {}",
            target.start,
            target.end(),
            state.n_qubits()
        )));
    }
    if op.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            got: op.dim(),
        });
    }
    let mut out = apply_on_register(op.matrix(), state, target, None);
    out.subnormalized = state.subnormalized || !op.is_unitary();
    Ok(out)
}

/// Apply `op` on `target` only on components where `control` reads `index`.
pub fn controlled_apply(
    control: Register,
    index: usize,
    op: &DenseOperator,
    state: &StateVector,
    target: Register,
) -> Result<StateVector> {
    let n = state.n_qubits();
    if control.end() > n || target.end() > n {
        return Err(Error::InvalidArgument(
            "control or target register exceeds system width".into(),
        ));
    }
    if control.overlaps(&target) {
        return Err(Error::InvalidArgument(
            "control and target registers overlap".into(),
        ));
    }
    if index >= control.dim() {
        return Err(Error::InvalidArgument(format!(
            "control index {index} out of range for a {}-qubit register",
            control.width
        )));
    }
    if op.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            got: op.dim(),
        });
    }
    let mut out = apply_on_register(op.matrix(), state, target, Some((control, index)));
    out.subnormalized = state.subnormalized || !op.is_unitary();
    Ok(out)
}

/// Apply `op` on `target` only on components where every control register
/// reads its paired index.
pub fn multi_controlled_apply(
    controls: &[(Register, usize)],
    op: &DenseOperator,
    state: &StateVector,
    target: Register,
) -> Result<StateVector> {
    let n = state.n_qubits();
    for (creg, cidx) in controls {
        if creg.end() > n {
            return Err(Error::InvalidArgument(
                "control register exceeds system width".into(),
            ));
        }
        if creg.overlaps(&target) {
            return Err(Error::InvalidArgument(
                "control and target registers overlap".into(),
            ));
        }
        if *cidx >= creg.dim() {
            return Err(Error::InvalidArgument(format!(
                "control index {cidx} out of range for a {}-qubit register",
                creg.width
            )));
        }
    }
    if target.end() > n {
        return Err(Error::InvalidArgument(
            "target register exceeds system width".into(),
        ));
    }
    if op.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: target.dim(),
            got: op.dim(),
        });
    }
    let mut out = apply_on_multi_controlled(op.matrix(), state, target, controls);
    out.subnormalized = state.subnormalized || !op.is_unitary();
    Ok(out)
}

/// Drop a register known to hold the basis value `value`; fails if any
/// amplitude lives outside that slice.
pub fn discard_fixed_register(
    state: &StateVector,
    register: Register,
    value: usize,
) -> Result<StateVector> {
    let n = state.n_qubits();
    if register.end() > n {
        return Err(Error::InvalidArgument(
            "register exceeds system width".into(),
        ));
    }
    let reduced_n = n - register.width;
    let mut out = DVector::zeros(1 << reduced_n);
    let shift = register.shift(n);
    let low_mask = (1usize << shift) - 1;
    let mut leaked = 0.0;
    for b in 0..state.dim() {
        let amp = state.amplitudes()[b];
        if register.value_of(b, n) == value {
            let reduced = ((b >> (shift + register.width)) << shift) | (b & low_mask);
            out[reduced] = amp;
        } else {
            leaked += amp.norm_sqr();
        }
    }
    if leaked > 1e-20 {
        return Err(Error::InvariantViolation {
            property: "register discard".into(),
            detail: format!("register is not fixed at {value}: stray weight {leaked:.3e}"),
        });
    }
    Ok(StateVector {
        amplitudes: out,
        n_qubits: reduced_n,
        subnormalized: state.subnormalized,
    })
}

/// Register-local kernel: gather the target field with its stride, multiply by
/// the operator block, scatter back. `control` restricts the action to basis
/// components whose control field equals the given index.
fn apply_on_register(
    op: &DMatrix<Complex64>,
    state: &StateVector,
    target: Register,
    control: Option<(Register, usize)>,
) -> StateVector {
    match control {
        Some(pair) => apply_on_multi_controlled(op, state, target, &[pair]),
        None => apply_on_multi_controlled(op, state, target, &[]),
    }
}

/// Register-local kernel: gather the target field with its stride, multiply by
/// the operator block, scatter back. Controls restrict the action to basis
/// components whose control fields match.
fn apply_on_multi_controlled(
    op: &DMatrix<Complex64>,
    state: &StateVector,
    target: Register,
    controls: &[(Register, usize)],
) -> StateVector {
    let n = state.n_qubits();
    let dim = state.dim();
    let block = target.dim();
    let stride = 1 << target.shift(n);
    let mut out = state.amplitudes().clone();
    let mut gathered = vec![Complex64::default(); block];

    // Basis index decomposition: b = high * block * stride + v * stride + low,
    // where v is the target-register value.
    for high in 0..dim / (block * stride) {
        for low in 0..stride {
            let base = high * block * stride + low;
            if controls
                .iter()
                .any(|(creg, cidx)| creg.value_of(base, n) != *cidx)
            {
                continue;
            }
            for v in 0..block {
                gathered[v] = state.amplitudes()[base + v * stride];
            }
            for r in 0..block {
                let mut acc = Complex64::default();
                for v in 0..block {
                    acc += op[(r, v)] * gathered[v];
                }
                out[base + r * stride] = acc;
            }
        }
    }

    StateVector {
        amplitudes: out,
        n_qubits: n,
        subnormalized: true,
    }
}

/// Project `state` onto `register == outcome`, renormalize, and record the
/// branch probability.
pub fn measure_register(
    state: &StateVector,
    register: Register,
    outcome: usize,
) -> Result<PostSelectedState> {
    let n = state.n_qubits();
    if register.end() > n {
        return Err(Error::InvalidArgument(
            "measured register exceeds system width".into(),
        ));
    }
    if outcome >= register.dim() {
        return Err(Error::InvalidArgument(format!(
            "outcome {outcome} out of range for a {}-qubit register",
            register.width
        )));
    }
    let mut projected = DVector::zeros(state.dim());
    let mut prob = 0.0;
    for b in 0..state.dim() {
        if register.value_of(b, n) == outcome {
            let amp = state.amplitudes()[b];
            prob += amp.norm_sqr();
            projected[b] = amp;
        }
    }
    if prob < 1e-14 {
        return Err(Error::ZeroProbability(format!(
            "outcome {outcome} on register [{}..{}) has probability {prob:.3e}",
            register.start,
            register.end()
        )));
    }
    projected /= Complex64::new(prob.sqrt(), 0.0);
    Ok(PostSelectedState {
        state: StateVector {
            amplitudes: projected,
            n_qubits: n,
            subnormalized: false,
        },
        probability: prob,
    })
}

/// Probabilities of every outcome of `register`, in outcome order.
pub fn register_distribution(state: &StateVector, register: Register) -> Vec<f64> {
    let n = state.n_qubits();
    let mut probs = vec![0.0; register.dim()];
    for b in 0..state.dim() {
        probs[register.value_of(b, n)] += state.amplitudes()[b].norm_sqr();
    }
    probs
}

/// <state| op |state>.
pub fn expectation(state: &StateVector, op: &DenseOperator) -> Result<Complex64> {
    if op.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            got: op.dim(),
        });
    }
    let applied = op.matrix() * state.amplitudes();
    Ok(state.amplitudes().dotc(&applied))
}

/// JSON view of a state: amplitudes as `[re, im]` pairs.
#[derive(Debug, Serialize)]
pub struct StateWire {
    pub n_qubits: usize,
    pub amplitudes: Vec<WireComplex>,
}

impl From<&StateVector> for StateWire {
    fn from(s: &StateVector) -> Self {
        StateWire {
            n_qubits: s.n_qubits(),
            amplitudes: s.to_wire(),
        }
    }
}

#[cfg(test)]
mod tests;
