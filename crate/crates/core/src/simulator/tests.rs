use super::*;
use nalgebra::dmatrix;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hadamard() -> DenseOperator {
    let s = 0.5f64.sqrt();
    DenseOperator::unitary(dmatrix![
        c(s, 0.0), c(s, 0.0);
        c(s, 0.0), c(-s, 0.0);
    ])
    .unwrap()
}

fn pauli_x() -> DenseOperator {
    DenseOperator::unitary(dmatrix![
        c(0.0, 0.0), c(1.0, 0.0);
        c(1.0, 0.0), c(0.0, 0.0);
    ])
    .unwrap()
}

fn pauli_z() -> DenseOperator {
    DenseOperator::unitary(dmatrix![
        c(1.0, 0.0), c(0.0, 0.0);
        c(0.0, 0.0), c(-1.0, 0.0);
    ])
    .unwrap()
}

fn swap_gate() -> DenseOperator {
    let mut m = DMatrix::zeros(4, 4);
    m[(0, 0)] = c(1.0, 0.0);
    m[(1, 2)] = c(1.0, 0.0);
    m[(2, 1)] = c(1.0, 0.0);
    m[(3, 3)] = c(1.0, 0.0);
    DenseOperator::unitary(m).unwrap()
}

#[test]
fn identity_leaves_state_unchanged() {
    let state = StateVector::random(3, 11);
    let out = apply_operator(&DenseOperator::identity(3), &state, Register::new(0, 3)).unwrap();
    assert!((out.amplitudes() - state.amplitudes()).norm() < 1e-14);
}

#[test]
fn hadamard_on_zero_gives_plus() {
    let out = apply_operator(&hadamard(), &StateVector::zero(1), Register::new(0, 1)).unwrap();
    let s = 0.5f64.sqrt();
    assert!((out.amplitudes()[0] - c(s, 0.0)).norm() < 1e-15);
    assert!((out.amplitudes()[1] - c(s, 0.0)).norm() < 1e-15);
}

#[test]
fn swap_exchanges_basis_labels() {
    // |01> -> |10>
    let out = apply_operator(&swap_gate(), &StateVector::basis(2, 0b01), Register::new(0, 2))
        .unwrap();
    assert!((out.amplitudes()[0b10] - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn operator_on_inner_register() {
    // X on qubit 1 of 3: |000> -> |010>
    let out = apply_operator(&pauli_x(), &StateVector::zero(3), Register::new(1, 1)).unwrap();
    assert!((out.amplitudes()[0b010] - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn controlled_apply_inactive_on_wrong_control() {
    let state = StateVector::zero(2);
    let out = controlled_apply(
        Register::new(0, 1),
        1,
        &pauli_x(),
        &state,
        Register::new(1, 1),
    )
    .unwrap();
    assert!((out.amplitudes() - state.amplitudes()).norm() < 1e-15);
}

#[test]
fn controlled_apply_active_branch() {
    // control |1>, X on target |0>: |10> -> |11>
    let state = StateVector::basis(2, 0b10);
    let out = controlled_apply(
        Register::new(0, 1),
        1,
        &pauli_x(),
        &state,
        Register::new(1, 1),
    )
    .unwrap();
    assert!((out.amplitudes()[0b11] - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn controlled_apply_entangles() {
    // (|0>+|1>)/sqrt(2) control, X on target: Bell state
    let plus = apply_operator(&hadamard(), &StateVector::zero(2), Register::new(0, 1)).unwrap();
    let out = controlled_apply(
        Register::new(0, 1),
        1,
        &pauli_x(),
        &plus,
        Register::new(1, 1),
    )
    .unwrap();
    let s = 0.5f64.sqrt();
    assert!((out.amplitudes()[0b00] - c(s, 0.0)).norm() < 1e-12);
    assert!((out.amplitudes()[0b11] - c(s, 0.0)).norm() < 1e-12);
    assert!(out.amplitudes()[0b01].norm() < 1e-12);
}

#[test]
fn measure_certain_outcome() {
    let got = measure_register(&StateVector::zero(2), Register::new(0, 1), 0).unwrap();
    assert!((got.probability - 1.0).abs() < 1e-12);
}

#[test]
fn measure_bell_branch() {
    let plus = apply_operator(&hadamard(), &StateVector::zero(2), Register::new(0, 1)).unwrap();
    let bell = controlled_apply(
        Register::new(0, 1),
        1,
        &pauli_x(),
        &plus,
        Register::new(1, 1),
    )
    .unwrap();
    let got = measure_register(&bell, Register::new(0, 1), 1).unwrap();
    assert!((got.probability - 0.5).abs() < 1e-12);
    assert!((got.state.amplitudes()[0b11] - c(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn measure_zero_probability_branch_errors() {
    let err = measure_register(&StateVector::zero(2), Register::new(0, 1), 1);
    assert!(matches!(err, Err(Error::ZeroProbability(_))));
}

#[test]
fn measure_probabilities_sum_to_one() {
    let state = StateVector::random(4, 3);
    let reg = Register::new(1, 2);
    let total: f64 = register_distribution(&state, reg).iter().sum();
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn expectation_values() {
    assert!((expectation(&StateVector::zero(1), &pauli_z()).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    let plus = apply_operator(&hadamard(), &StateVector::zero(1), Register::new(0, 1)).unwrap();
    assert!((expectation(&plus, &pauli_x()).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn expectation_conjugate_symmetry() {
    // <A> = <A>* for hermitian A on a random state
    let state = StateVector::random(3, 19);
    let mut m = DMatrix::<Complex64>::zeros(8, 8);
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
    for i in 0..8 {
        for j in i..8 {
            let z = c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5);
            if i == j {
                m[(i, j)] = c(z.re, 0.0);
            } else {
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
    }
    let op = DenseOperator::hermitian(m).unwrap();
    let val = expectation(&state, &op).unwrap();
    assert!((val - val.conj()).norm() < 1e-10);
}

/// Two-path check: register-local kernel vs full Kronecker-expanded matrix.
#[test]
fn kernel_matches_kronecker_expansion() {
    let n = 8;
    for (seed, start, width) in [(1u64, 0usize, 2usize), (2, 3, 2), (3, 6, 2), (4, 2, 3)] {
        let state = StateVector::random(n, seed);
        let op = {
            // random unitary from QR of a random matrix
            use rand::Rng;
            use rand_chacha::rand_core::SeedableRng;
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed + 100);
            let dim = 1 << width;
            let m = DMatrix::from_fn(dim, dim, |_, _| {
                c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            let qr = m.qr();
            DenseOperator::unitary(qr.q()).unwrap()
        };
        let fast = apply_operator(&op, &state, Register::new(start, width)).unwrap();

        let left = DMatrix::<Complex64>::identity(1 << start, 1 << start);
        let right_qubits = n - start - width;
        let right = DMatrix::<Complex64>::identity(1 << right_qubits, 1 << right_qubits);
        let full = left.kronecker(op.matrix()).kronecker(&right);
        let slow = &full * state.amplitudes();

        assert!(
            (fast.amplitudes() - slow).norm() < 1e-10,
            "register [{start},{width}) mismatch"
        );
    }
}

#[test]
fn operator_flags_detected() {
    assert!(hadamard().is_unitary());
    assert!(hadamard().is_hermitian());
    let m = dmatrix![
        c(1.0, 0.0), c(1.0, 0.0);
        c(0.0, 0.0), c(1.0, 0.0);
    ];
    let op = DenseOperator::new(m).unwrap();
    assert!(!op.is_unitary());
    assert!(!op.is_hermitian());
}

#[test]
fn post_selection_composition_multiplies_probabilities() {
    let plus2 = {
        let s = apply_operator(&hadamard(), &StateVector::zero(2), Register::new(0, 1)).unwrap();
        apply_operator(&hadamard(), &s, Register::new(1, 1)).unwrap()
    };
    let first = measure_register(&plus2, Register::new(0, 1), 0).unwrap();
    let second = measure_register(&first.state, Register::new(1, 1), 0).unwrap();
    let folded = first.clone().then(second);
    assert!((folded.probability - 0.25).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn unitary_application_preserves_norm(seed in 0u64..1000, start in 0usize..3) {
        let state = StateVector::random(4, seed);
        let out = apply_operator(&hadamard(), &state, Register::new(start, 1)).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn register_distribution_is_normalized(seed in 0u64..1000, start in 0usize..3, width in 1usize..3) {
        prop_assume!(start + width <= 4);
        let state = StateVector::random(4, seed);
        let total: f64 = register_distribution(&state, Register::new(start, width)).iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }
}
