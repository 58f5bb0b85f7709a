//! The release acceptance suite: eleven numbered criteria with tolerances
//! pinned here, runnable from the CLI (`symmetra selftest`) and from the
//! integration tests. Each criterion reports one pass/fail line plus the
//! sub-check details that produced it.
//!
//! The `SYMMETRA_TOL` environment variable scales every tolerance by a
//! positive factor (default 1.0); the factor is echoed in the report header
//! so tightened or loosened runs are distinguishable.
//!
//! Criterion 7's commutation clause is expected to fail for incommensurate
//! fluxes: the identity it asks for is unattainable on a finite qubit
//! register (see the note on [`crate::reps::magnetic_translation_reps`]); the
//! check runs as stated and reports the honest residual.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::groups::{
    cyclic_group, frobenius_character, murnaghan_nakayama, product_group, symmetric_group,
    CharacterTable, Partition,
};
use crate::models::{
    block_diagonalization_residual, butterfly_sweep, h2_hamiltonian, harper_momentum_blocks,
    harper_pseudospin_half, ising_hamiltonian, ising_symmetry_projectors,
    restrict_to_projector_range, sample_integrals, sorted_spectrum, IsingParams,
};
use crate::qct::{build_qct, qft_matrix};
use crate::qpe::{phase_to_energy, sqpe};
use crate::reps::{
    cyclic_shift_rep, magnetic_translation_reps, parity_flip_rep, permutation_rep, product_rep,
    site_translation_rep, Flux, UnitaryRep,
};
use crate::resources::{
    cyclic_increment_resources, cyclic_select_resources, unary_iteration_resources, CyclicScheme,
};
use crate::simulator::{sample_register, Register, StateVector};
use crate::tgsa::{
    prepare_projection_abelian, projector_matrix, tgsa_apply, tgsa_joint, TgsaInput,
};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub tolerance_scale: f64,
    pub results: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

/// Tolerance multiplier from SYMMETRA_TOL; 1.0 when unset or unparsable.
pub fn tolerance_scale_from_env() -> f64 {
    std::env::var("SYMMETRA_TOL")
        .ok()
        .and_then(|v| v.parse::<f64>().ok())
        .filter(|v| *v > 0.0)
        .unwrap_or(1.0)
}

struct Checks {
    passed: bool,
    details: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            passed: true,
            details: Vec::new(),
        }
    }

    fn le(&mut self, label: &str, value: f64, tol: f64) {
        if value <= tol {
            self.details.push(format!("ok   {label}: {value:.3e} <= {tol:.1e}"));
        } else {
            self.passed = false;
            self.details
                .push(format!("FAIL {label}: {value:.3e} > {tol:.1e}"));
        }
    }

    fn ok(&mut self, label: &str, cond: bool) {
        if cond {
            self.details.push(format!("ok   {label}"));
        } else {
            self.passed = false;
            self.details.push(format!("FAIL {label}"));
        }
    }

    fn finish(self, id: usize, name: &'static str) -> CriterionResult {
        CriterionResult {
            id,
            name,
            passed: self.passed,
            details: self.details,
        }
    }
}

fn orthogonality_gate(table: &CharacterTable, tol: f64, checks: &mut Checks) {
    let (row, col) = table.orthogonality_residuals();
    checks.le(
        &format!("orthogonality rows of {}", table.group_name()),
        row,
        tol,
    );
    checks.le(
        &format!("orthogonality columns of {}", table.group_name()),
        col,
        tol,
    );
}

/// The representation pairs exercised by the projector and circuit criteria.
fn catalog_pairs() -> Vec<UnitaryRep> {
    let zn_z2 = {
        let group = product_group(cyclic_group(4).unwrap(), cyclic_group(2).unwrap()).unwrap();
        product_rep(
            group,
            site_translation_rep(4).unwrap(),
            parity_flip_rep(4).unwrap(),
        )
        .unwrap()
    };
    vec![
        cyclic_shift_rep(3).unwrap(),
        parity_flip_rep(8).unwrap(),
        permutation_rep(2, 2).unwrap(),
        permutation_rep(3, 1).unwrap(),
        zn_z2,
    ]
}

/// Criterion 1: character tables, the two character routes, orthogonality.
pub fn criterion_1_characters(scale: f64) -> CriterionResult {
    let tol = 1e-10 * scale;
    let mut checks = Checks::new();

    let s2 = symmetric_group(2).unwrap();
    checks.ok(
        "S2 integer table is [[1,1],[1,-1]]",
        s2.character_table().integer_characters().unwrap() == &vec![vec![1, 1], vec![1, -1]],
    );
    let s3 = symmetric_group(3).unwrap();
    checks.ok(
        "S3 integer table is [[1,1,1],[1,-1,1],[2,0,-1]]",
        s3.character_table().integer_characters().unwrap()
            == &vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]],
    );

    let mut agree = true;
    for n in 1..=5 {
        let partitions = Partition::all_of(n);
        for lambda in &partitions {
            for mu in &partitions {
                if frobenius_character(lambda, mu).unwrap()
                    != murnaghan_nakayama(lambda, mu).unwrap()
                {
                    agree = false;
                }
            }
        }
    }
    checks.ok(
        "Frobenius and border-strip characters agree exactly for N <= 5",
        agree,
    );

    let mut worst_cyclic = 0.0f64;
    for m in 1..=64 {
        let g = cyclic_group(m).unwrap();
        let (row, col) = g.character_table().orthogonality_residuals();
        worst_cyclic = worst_cyclic.max(row).max(col);
    }
    checks.le("orthogonality of Z_M for M <= 64", worst_cyclic, tol);
    for n in 2..=5 {
        orthogonality_gate(symmetric_group(n).unwrap().character_table(), tol, &mut checks);
    }
    for g in [
        product_group(cyclic_group(8).unwrap(), cyclic_group(2).unwrap()).unwrap(),
        product_group(symmetric_group(3).unwrap(), cyclic_group(2).unwrap()).unwrap(),
        product_group(cyclic_group(4).unwrap(), cyclic_group(4).unwrap()).unwrap(),
    ] {
        orthogonality_gate(g.character_table(), tol, &mut checks);
    }

    checks.finish(1, "character correctness")
}

/// Criterion 2: QCT unitarity and the pinned small transforms.
pub fn criterion_2_qct(scale: f64) -> CriterionResult {
    let unitary_tol = 1e-10 * scale;
    let entry_tol = 1e-12 * scale;
    let mut checks = Checks::new();

    for g in [
        cyclic_group(3).unwrap(),
        cyclic_group(8).unwrap(),
        cyclic_group(12).unwrap(),
        symmetric_group(2).unwrap(),
        symmetric_group(3).unwrap(),
        symmetric_group(4).unwrap(),
        symmetric_group(5).unwrap(),
        product_group(cyclic_group(8).unwrap(), cyclic_group(2).unwrap()).unwrap(),
        product_group(symmetric_group(3).unwrap(), cyclic_group(2).unwrap()).unwrap(),
    ] {
        let qct = build_qct(&g).unwrap();
        let m = qct.operator().matrix();
        let dim = m.nrows();
        let residual = (m.adjoint() * m - DMatrix::<Complex64>::identity(dim, dim)).norm();
        checks.le(&format!("unitarity of QCT({})", g.name()), residual, unitary_tol);
    }

    for m in 1..=5 {
        let qct = build_qct(&cyclic_group(1 << m).unwrap()).unwrap();
        let diff = (qct.operator().matrix() - qft_matrix(m).unwrap().matrix()).norm();
        checks.le(&format!("QCT(Z_{}) equals QFT", 1 << m), diff, entry_tol);
    }

    let s2 = build_qct(&symmetric_group(2).unwrap()).unwrap();
    let s = 0.5f64.sqrt();
    let hadamard = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(-s, 0.0),
        ],
    );
    checks.le(
        "QCT(S2) equals the Hadamard",
        (s2.operator().matrix() - hadamard).norm(),
        entry_tol,
    );

    let s3 = build_qct(&symmetric_group(3).unwrap()).unwrap();
    let f = 1.0 / 6f64.sqrt();
    let mut expected = DMatrix::<Complex64>::zeros(4, 4);
    let rows = [
        [1.0, 3f64.sqrt(), 2f64.sqrt()],
        [1.0, -(3f64.sqrt()), 2f64.sqrt()],
        [2.0, 0.0, -(2f64.sqrt())],
    ];
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            expected[(i, j)] = Complex64::new(f * v, 0.0);
        }
    }
    expected[(3, 3)] = Complex64::new(1.0, 0.0);
    checks.le(
        "QCT(S3) equals the padded scaled character matrix",
        (s3.operator().matrix() - expected).norm(),
        entry_tol,
    );

    checks.finish(2, "QCT unitarity and identities")
}

/// Criterion 3: projector algebra over the representation catalog.
pub fn criterion_3_projectors(scale: f64) -> CriterionResult {
    let tol = 1e-10 * scale;
    let trace_tol = 1e-8 * scale;
    let mut checks = Checks::new();

    for rep in catalog_pairs() {
        let name = rep.group().name().to_owned();
        let n = rep.group().n_classes();
        let dim = 1usize << rep.n_qubits();
        let projs: Vec<DMatrix<Complex64>> = (0..n)
            .map(|i| projector_matrix(&rep, i).unwrap().matrix().clone())
            .collect();
        let mut worst_idem = 0.0f64;
        let mut worst_herm = 0.0f64;
        let mut worst_cross = 0.0f64;
        let mut worst_trace = 0.0f64;
        let mut total = DMatrix::<Complex64>::zeros(dim, dim);
        for (i, p) in projs.iter().enumerate() {
            worst_idem = worst_idem.max((p * p - p).norm());
            worst_herm = worst_herm.max((p - p.adjoint()).norm());
            for (j, q) in projs.iter().enumerate() {
                if i != j {
                    worst_cross = worst_cross.max((p * q).norm());
                }
            }
            let d = rep.group().character_table().irrep_dim(i) as f64;
            let ratio = p.trace().re / d;
            worst_trace = worst_trace.max((ratio - ratio.round()).abs());
            total += p;
        }
        let completeness = (total - DMatrix::<Complex64>::identity(dim, dim)).norm();
        checks.le(&format!("{name} idempotence"), worst_idem, tol);
        checks.le(&format!("{name} hermiticity"), worst_herm, tol);
        checks.le(&format!("{name} mutual orthogonality"), worst_cross, tol);
        checks.le(&format!("{name} completeness"), completeness, tol);
        checks.le(&format!("{name} trace quantization"), worst_trace, trace_tol);
    }

    checks.finish(3, "projector algebra")
}

/// Criterion 4: circuit branches against the dense projector oracle, and the
/// abelian PREPARE variant, over 50 seeded states per pair.
pub fn criterion_4_circuit_oracle(scale: f64) -> CriterionResult {
    let tol = 1e-10 * scale;
    let mut checks = Checks::new();

    for rep in catalog_pairs() {
        let name = rep.group().name().to_owned();
        let n_conj = rep.group().n_classes();
        let projectors: Vec<DMatrix<Complex64>> = (0..n_conj)
            .map(|i| projector_matrix(&rep, i).unwrap().matrix().clone())
            .collect();
        let dims: Vec<f64> = (0..n_conj)
            .map(|i| rep.group().character_table().irrep_dim(i) as f64)
            .collect();

        let mut worst_state = 0.0f64;
        let mut worst_prob = 0.0f64;
        for seed in 0..50u64 {
            let sys = StateVector::random(rep.n_qubits(), 1000 + seed);
            let outcome = tgsa_apply(&rep, TgsaInput::Irrep(0), &sys).unwrap();
            for branch in &outcome.branches {
                let expected =
                    (&projectors[branch.irrep] * sys.amplitudes()) / Complex64::new(dims[branch.irrep], 0.0);
                worst_prob = worst_prob.max((branch.probability - expected.norm_squared()).abs());
                if let Some(state) = &branch.state {
                    let got = state.amplitudes() * Complex64::new(branch.amplitude, 0.0);
                    worst_state = worst_state.max((got - expected).norm());
                } else {
                    worst_state = worst_state.max(expected.norm());
                }
            }
        }
        checks.le(&format!("{name} branch states vs (1/d) P"), worst_state, tol);
        checks.le(&format!("{name} branch probabilities vs |a/d|^2"), worst_prob, tol);

        if rep.group().is_abelian() {
            let mut worst_prep = 0.0f64;
            for seed in 0..50u64 {
                let sys = StateVector::random(rep.n_qubits(), 2000 + seed);
                let outcome = prepare_projection_abelian(&rep, &sys).unwrap();
                for branch in &outcome.branches {
                    let expected = &projectors[branch.irrep] * sys.amplitudes();
                    if let Some(state) = &branch.state {
                        let got = state.amplitudes() * Complex64::new(branch.amplitude, 0.0);
                        worst_prep = worst_prep.max((got - expected).norm());
                    } else {
                        worst_prep = worst_prep.max(expected.norm());
                    }
                }
            }
            checks.le(
                &format!("{name} PREPARE variant gives unscaled P"),
                worst_prep,
                tol,
            );
        }
    }

    checks.finish(4, "circuit/oracle equivalence")
}

/// Criterion 5: pinned state reproductions (GHZ branches, the quarter
/// amplitude fermionic superposition, Pauli exclusion).
pub fn criterion_5_states(scale: f64) -> CriterionResult {
    let tol = 1e-12 * scale;
    let mut checks = Checks::new();

    let n = 8;
    let projs = ising_symmetry_projectors(n).unwrap();
    let zero = StateVector::zero(n);
    let mut worst_ghz = 0.0f64;
    for ((k, sigma), p) in &projs {
        let projected = p.matrix() * zero.amplitudes();
        if *k == 0 {
            let sign = if *sigma == 0 { 1.0 } else { -1.0 };
            let mut expected = DVector::<Complex64>::zeros(1 << n);
            expected[0] = Complex64::new(0.5, 0.0);
            expected[(1 << n) - 1] = Complex64::new(0.5 * sign, 0.0);
            worst_ghz = worst_ghz.max((projected - expected).norm());
        } else {
            worst_ghz = worst_ghz.max(projected.norm());
        }
    }
    checks.le("GHZ branches of P^(0,sigma) on |0...0>", worst_ghz, tol);

    // the mixed product state and its fermionic quarter-amplitude projection
    let input = crate::models::mixed_sector_state();
    let rep = permutation_rep(2, 2).unwrap();
    let outcome = tgsa_apply(&rep, TgsaInput::Irrep(0), &input).unwrap();
    let fermionic = &outcome.branches[1];
    let mut expected = DVector::<Complex64>::zeros(16);
    let index = |p: usize, sg: usize, q: usize, tu: usize| p * 8 + sg * 4 + q * 2 + tu;
    for (orb, osign) in [((0usize, 1usize), 1.0), ((1usize, 0usize), -1.0)] {
        for (spin, ssign) in [((0usize, 0usize), 1.0), ((1usize, 1usize), -1.0)] {
            expected[index(orb.0, spin.0, orb.1, spin.1)] +=
                Complex64::new(osign * ssign * 0.25, 0.0);
        }
    }
    for (orb, osign) in [((0usize, 1usize), 1.0), ((1usize, 0usize), 1.0)] {
        for (spin, ssign) in [((0usize, 1usize), 1.0), ((1usize, 0usize), -1.0)] {
            expected[index(orb.0, spin.0, orb.1, spin.1)] +=
                Complex64::new(osign * ssign * 0.25, 0.0);
        }
    }
    let got = fermionic
        .state
        .as_ref()
        .map(|s| s.amplitudes() * Complex64::new(fermionic.amplitude, 0.0))
        .unwrap_or_else(|| DVector::zeros(16));
    checks.le(
        "fermionic projection of the mixed product state",
        (got - expected).norm(),
        tol,
    );

    let aligned = StateVector::basis(4, 0);
    let aligned_outcome = tgsa_apply(&rep, TgsaInput::Irrep(0), &aligned).unwrap();
    checks.le(
        "Pauli exclusion of aligned spins",
        aligned_outcome.branches[1].probability,
        tol,
    );

    checks.finish(5, "paper state reproductions")
}

/// Criterion 6: longitudinal-field elimination and block spectra of the
/// 8-site chain.
pub fn criterion_6_ising(scale: f64) -> CriterionResult {
    let tol = 1e-10 * scale;
    let spectrum_tol = 1e-9 * scale;
    let mut checks = Checks::new();

    let n = 8;
    let projs = ising_symmetry_projectors(n).unwrap();

    // random longitudinal field, seeded
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(616);
    let w: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
    let dim = 1usize << n;
    let mut longitudinal = DMatrix::<Complex64>::zeros(dim, dim);
    for b in 0..dim {
        let mut diag = 0.0;
        for (j, wj) in w.iter().enumerate() {
            let z = if (b >> (n - 1 - j)) & 1 == 0 { 1.0 } else { -1.0 };
            diag += wj * z;
        }
        longitudinal[(b, b)] = Complex64::new(diag, 0.0);
    }
    let mut worst = 0.0f64;
    for (_, p) in &projs {
        worst = worst.max((p.matrix() * &longitudinal * p.matrix()).norm());
    }
    checks.le("P (sum w_j Z_j) P vanishes for all (k,sigma)", worst, tol);

    let model = ising_hamiltonian(&IsingParams::uniform(n, 0.9, 1.0)).unwrap();
    let mut union = Vec::new();
    for (_, p) in &projs {
        let block = restrict_to_projector_range(model.hamiltonian.matrix(), p.matrix()).unwrap();
        union.extend(sorted_spectrum(&block).unwrap());
    }
    union.sort_by(|a, b| a.total_cmp(b));
    let full = sorted_spectrum(model.hamiltonian.matrix()).unwrap();
    let mut worst_eig = 0.0f64;
    checks.ok(
        "block spectra have the full dimension",
        union.len() == full.len(),
    );
    for (a, b) in union.iter().zip(&full) {
        worst_eig = worst_eig.max((a - b).abs());
    }
    checks.le("union of block spectra equals full spectrum", worst_eig, spectrum_tol);

    checks.finish(6, "ising projections")
}

/// Criterion 7: magnetic translation algebra, block diagonalization, the
/// pseudo-spin form, and the butterfly sweep.
pub fn criterion_7_harper(scale: f64) -> CriterionResult {
    let tol = 1e-10 * scale;
    let mut checks = Checks::new();
    let m = 3;
    let side = 1usize << m;

    for b in [
        Flux::Rational(0, 1),
        Flux::Rational(1, 2),
        Flux::Rational(1, 3),
        Flux::Real(0.123),
    ] {
        let (u, v) = magnetic_translation_reps(m, b).unwrap();
        let comm = u.matrix() * v.matrix() * u.matrix().adjoint() * v.matrix().adjoint();
        let dim = comm.nrows();
        let target = DMatrix::<Complex64>::identity(dim, dim)
            * Complex64::from_polar(1.0, TAU * b.value());
        // Unattainable for incommensurate fluxes (flux quantization on the
        // torus forces exp(2 pi i b 4^m) = 1); run it as stated regardless.
        checks.le(
            &format!("commutation phase at b = {:?}", b),
            (comm - target).norm(),
            tol,
        );
    }

    for b in [
        Flux::Rational(0, 1),
        Flux::Rational(1, 2),
        Flux::Rational(1, 3),
        Flux::Real(0.123),
    ] {
        let residual = block_diagonalization_residual(m, b, 1.0, 0.8).unwrap();
        checks.le(
            &format!("QFT_y block diagonalization at b = {:?}", b),
            residual,
            tol,
        );
    }

    let blocks = harper_momentum_blocks(m, Flux::Rational(1, 2), 1.0, 0.8).unwrap();
    let mut worst_ps = 0.0f64;
    for k in 0..side {
        let ps = harper_pseudospin_half(m, k, 1.0, 0.8).unwrap();
        let a = sorted_spectrum(&ps).unwrap();
        let b = sorted_spectrum(&blocks[k]).unwrap();
        for (x, y) in a.iter().zip(&b) {
            worst_ps = worst_ps.max((x - y).abs());
        }
    }
    checks.le("pseudo-spin spectra match blocks at b = 1/2", worst_ps, tol);

    let start = Instant::now();
    let sweep = butterfly_sweep(m, 16, 1.0, 1.0);
    let elapsed = start.elapsed().as_secs_f64();
    match sweep {
        Ok(points) => {
            checks.ok(
                &format!(
                    "butterfly sweep q <= 16 with block unions ({} points, {elapsed:.1}s)",
                    points.len()
                ),
                elapsed < 60.0,
            );
        }
        Err(e) => checks.ok(&format!("butterfly sweep failed: {e}"), false),
    }

    checks.finish(7, "harper model")
}

/// Criterion 8: symmetry-adapted phase estimation on the two-electron model,
/// peak energies within one phase bin per sector for n = 4..8.
pub fn criterion_8_sqpe(_scale: f64) -> CriterionResult {
    let mut checks = Checks::new();
    let ints = sample_integrals();
    let model = h2_hamiltonian(&ints).unwrap();

    // product state overlapping all four sectors
    let input = crate::models::mixed_sector_state();

    // reference spectra per sector and the dominant eigenvalue of the input
    let mut last_error = f64::INFINITY;
    for n in 4..=8usize {
        let dist = sqpe(&model.rep, &model.hamiltonian, &input, n, TgsaInput::Irrep(0)).unwrap();
        let bin = dist.calibration.bin_width(n);
        let mut worst = 0.0f64;
        for branch in &dist.branches {
            if branch.weight() < 1e-12 {
                continue;
            }
            let p = projector_matrix(&model.rep, branch.irrep).unwrap();
            let restricted =
                restrict_to_projector_range(model.hamiltonian.matrix(), p.matrix()).unwrap();
            // dominant eigenvalue: the restricted component of the input
            let eig = crate::simulator::hermitian_eigensystem(&restricted).unwrap();
            let basis = {
                let peig = crate::simulator::hermitian_eigensystem(p.matrix()).unwrap();
                let kept: Vec<usize> = (0..p.matrix().nrows())
                    .filter(|&i| (peig.eigenvalues[i] - 1.0).abs() < 1e-8)
                    .collect();
                let mut w = DMatrix::<Complex64>::zeros(p.matrix().nrows(), kept.len());
                for (col, &i) in kept.iter().enumerate() {
                    w.set_column(col, &peig.eigenvectors.column(i));
                }
                w
            };
            let component = basis.adjoint() * input.amplitudes();
            let mut best = (0usize, 0.0f64);
            for col in 0..eig.eigenvectors.ncols() {
                let overlap = (eig.eigenvectors.column(col).adjoint() * &component)[(0, 0)].norm();
                if overlap > best.1 {
                    best = (col, overlap);
                }
            }
            let expected_e = eig.eigenvalues[best.0];
            let (u, _) = branch.peak();
            let got_e = phase_to_energy(u, n, &dist.calibration);
            worst = worst.max((got_e - expected_e).abs());
        }
        checks.le(
            &format!("peak energies within one bin at n = {n} (bin {bin:.2e})"),
            worst,
            bin,
        );
        checks.ok(
            &format!("bin error at n = {n} does not grow ({worst:.2e})"),
            worst <= last_error + bin,
        );
        last_error = worst;
    }

    checks.finish(8, "symmetry-adapted phase estimation")
}

/// Criterion 9: three-particle sector ranks.
pub fn criterion_9_parastatistics(_scale: f64) -> CriterionResult {
    let mut checks = Checks::new();
    let d2 = crate::models::three_particle_projectors(2).unwrap();
    let ranks2: Vec<usize> = d2.iter().map(|s| s.rank).collect();
    checks.ok("d = 2 ranks are (4, 0, 4)", ranks2 == vec![4, 0, 4]);

    let d4 = crate::models::three_particle_projectors(4).unwrap();
    let ranks4: Vec<usize> = d4.iter().map(|s| s.rank).collect();
    checks.ok("d = 4 ranks sum to 64", ranks4.iter().sum::<usize>() == 64);
    checks.ok("d = 4 antisymmetric rank is 4", ranks4[1] == 4);

    checks.finish(9, "parastatistics ranks")
}

/// Criterion 10: gate-count formulas over m in [1, 10].
pub fn criterion_10_resources(_scale: f64) -> CriterionResult {
    let mut checks = Checks::new();
    let mut ok = true;
    for m in 1..=10u64 {
        let inc = cyclic_increment_resources(m, CyclicScheme::Incrementer);
        ok &= inc.t_count == 12 * (m + 1) && inc.toffoli_count == 3 * (m + 1);
        let add = cyclic_increment_resources(m, CyclicScheme::Adder);
        ok &= add.t_count == 8 * m && add.toffoli_count == 4 * m;
        let sel = cyclic_select_resources(m, CyclicScheme::Adder);
        ok &= sel.t_count == 8 * m * m && sel.toffoli_count == 4 * m * m;
        let seq = cyclic_select_resources(m, CyclicScheme::Incrementer);
        ok &= seq.t_count == ((1 << m) - 1) * 12 * (m + 1);
    }
    checks.ok("increment and select formulas for m in [1, 10]", ok);

    let unary = unary_iteration_resources(3, 3);
    checks.ok(
        "unary iteration (3, 3) costs T = 32, Toffoli = 8",
        unary.t_count == 32 && unary.toffoli_count == 8,
    );

    checks.finish(10, "resource estimates")
}

/// Criterion 11: seeded sampling reproduces the branch probabilities within
/// four standard errors at 1e5 shots.
pub fn criterion_11_sampling(_scale: f64) -> CriterionResult {
    let mut checks = Checks::new();
    let shots = 100_000u64;

    // abelian pair: no LCU, the ancilla histogram is the full physical record
    {
        let group = product_group(cyclic_group(4).unwrap(), cyclic_group(2).unwrap()).unwrap();
        let rep = product_rep(
            group,
            site_translation_rep(4).unwrap(),
            parity_flip_rep(4).unwrap(),
        )
        .unwrap();
        let sys = StateVector::random(4, 4242);
        let outcome = tgsa_apply(&rep, TgsaInput::Irrep(0), &sys).unwrap();
        let joint = tgsa_joint(&rep, TgsaInput::Irrep(0), &sys).unwrap();
        let anc_reg = Register::new(0, 3);
        let counts = sample_register(&joint.state, anc_reg, shots, 7777);
        let mut worst_sigmas = 0.0f64;
        for branch in &outcome.branches {
            let p = branch.probability;
            let se = (p * (1.0 - p) / shots as f64).sqrt().max(1e-9);
            let observed = counts[branch.irrep] as f64 / shots as f64;
            worst_sigmas = worst_sigmas.max((observed - p).abs() / se);
        }
        checks.ok(
            &format!("Z4xZ2 sampled branch frequencies within 4 SE (worst {worst_sigmas:.2})"),
            worst_sigmas <= 4.0,
        );
    }

    // non-abelian pair: sample the post-selected ensemble, compare against
    // the conditional probabilities
    {
        let rep = permutation_rep(3, 1).unwrap();
        let sys = StateVector::random(3, 515);
        let outcome = tgsa_apply(&rep, TgsaInput::Irrep(0), &sys).unwrap();
        let joint = tgsa_joint(&rep, TgsaInput::Irrep(0), &sys).unwrap();
        let anc_reg = Register::new(0, 2);
        let counts = sample_register(&joint.state, anc_reg, shots, 8888);
        let mut worst_sigmas = 0.0f64;
        for branch in &outcome.branches {
            let p = branch.probability / outcome.lcu_probability;
            let se = (p * (1.0 - p) / shots as f64).sqrt().max(1e-9);
            let observed = counts[branch.irrep] as f64 / shots as f64;
            worst_sigmas = worst_sigmas.max((observed - p).abs() / se);
        }
        checks.ok(
            &format!("S3 sampled post-selected frequencies within 4 SE (worst {worst_sigmas:.2})"),
            worst_sigmas <= 4.0,
        );
    }

    checks.finish(11, "statistical post-selection")
}

/// Run all criteria at the given tolerance scale.
pub fn run_all(scale: f64) -> SelftestReport {
    let results = vec![
        criterion_1_characters(scale),
        criterion_2_qct(scale),
        criterion_3_projectors(scale),
        criterion_4_circuit_oracle(scale),
        criterion_5_states(scale),
        criterion_6_ising(scale),
        criterion_7_harper(scale),
        criterion_8_sqpe(scale),
        criterion_9_parastatistics(scale),
        criterion_10_resources(scale),
        criterion_11_sampling(scale),
    ];
    SelftestReport {
        tolerance_scale: scale,
        results,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_character_table_fails_the_orthogonality_gate() {
        let g = symmetric_group(3).unwrap();
        let bad = g.character_table().perturbed(2, 1, 0.03);
        let mut checks = Checks::new();
        orthogonality_gate(&bad, 1e-10, &mut checks);
        assert!(!checks.passed);
    }

    #[test]
    fn tolerance_scale_defaults_to_one() {
        // the env var is unset in the test harness
        if std::env::var("SYMMETRA_TOL").is_err() {
            assert_eq!(tolerance_scale_from_env(), 1.0);
        }
    }
}
