//! Harper-Hofstadter model on an M x M torus (M = 2^m): a single particle
//! hopping under a perpendicular magnetic flux b per plaquette,
//! H = Jx (U + U^dag) + Jy (V + V^dag) built from the magnetic translations.
//!
//! Only V carries x-dependent phases, so H commutes with bare y-translations
//! for every flux and a Fourier transform on the y register cuts it into M
//! momentum blocks: H_k = Jx ring hopping in x plus the onsite potential
//! 2 Jy cos(2 pi (x b - k/M)). Sweeping b over reduced fractions and stacking
//! the spectra draws the butterfly.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::json;
use std::collections::HashMap;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::groups::{cyclic_group, GroupElement};
use crate::qct::qft_matrix;
use crate::reps::{magnetic_translation_reps, rep_from_actions, BasisAction, Flux, UnitaryRep};
use crate::simulator::{DenseOperator, RegisterLayout};

use super::{sorted_spectrum, ModelHamiltonian};

/// Dense cap: 2m qubits total.
pub const HARPER_QUBIT_CAP: usize = 14;

/// The y-translation representation of Z_M on the torus register, with the
/// decrement convention rho(u)|x,y> = |x,y-u>: irrep k of this rep pairs with
/// momentum block k of [`harper_momentum_blocks`].
fn y_translation_rep(m: usize) -> Result<UnitaryRep> {
    let side = 1usize << m;
    let dim = side * side;
    let group = cyclic_group(side)?;
    let mut actions = HashMap::new();
    for u in 0..side {
        let mut target = vec![0usize; dim];
        for x in 0..side {
            for y in 0..side {
                target[x * side + y] = x * side + (y + side - u) % side;
            }
        }
        actions.insert(
            GroupElement::Cyclic(u),
            BasisAction::new(2 * m, target, vec![Complex64::new(1.0, 0.0); dim])?,
        );
    }
    rep_from_actions(group, 2 * m, actions)
}

pub fn harper_hamiltonian(m: usize, b: Flux, jx: f64, jy: f64) -> Result<ModelHamiltonian> {
    if 2 * m > HARPER_QUBIT_CAP {
        return Err(Error::SizeCap {
            what: "harper torus qubits",
            requested: 2 * m,
            cap: HARPER_QUBIT_CAP,
        });
    }
    let (u, v) = magnetic_translation_reps(m, b)?;
    let matrix = (u.matrix() + u.matrix().adjoint()) * Complex64::new(jx, 0.0)
        + (v.matrix() + v.matrix().adjoint()) * Complex64::new(jy, 0.0);
    Ok(ModelHamiltonian {
        name: "harper".into(),
        hamiltonian: DenseOperator::hermitian(matrix)?,
        layout: RegisterLayout::new(&[("x", m), ("y", m)]),
        group: cyclic_group(1 << m)?,
        rep: y_translation_rep(m)?,
        metadata: json!({
            "m": m,
            "b": b.value(),
            "jx": jx,
            "jy": jy,
        }),
    })
}

/// The momentum blocks H_k on the x register: ring hopping Jx plus the
/// onsite potential 2 Jy cos(2 pi (x b - k/M)), for k = 0..M.
pub fn harper_momentum_blocks(m: usize, b: Flux, jx: f64, jy: f64) -> Result<Vec<DMatrix<Complex64>>> {
    let side = 1usize << m;
    let mut blocks = Vec::with_capacity(side);
    for k in 0..side {
        let mut block = DMatrix::<Complex64>::zeros(side, side);
        for x in 0..side {
            let phase = b.phase(x as i64) * Complex64::from_polar(1.0, -TAU * k as f64 / side as f64);
            block[(x, x)] = Complex64::new(2.0 * jy * phase.re, 0.0);
            let next = (x + 1) % side;
            block[(x, next)] += Complex64::new(jx, 0.0);
            block[(next, x)] += Complex64::new(jx, 0.0);
        }
        blocks.push(block);
    }
    Ok(blocks)
}

/// Assemble the direct sum of the momentum blocks in the Fourier basis
/// |x, k>; conjugating the real-space Hamiltonian by the y-register QFT must
/// reproduce this matrix exactly.
pub fn momentum_block_direct_sum(blocks: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let side = blocks.len();
    let dim = side * side;
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    for (k, block) in blocks.iter().enumerate() {
        for x in 0..side {
            for x2 in 0..side {
                out[(x * side + k, x2 * side + k)] = block[(x, x2)];
            }
        }
    }
    out
}

/// Residual of the QFT_y block-diagonalization identity for the given flux.
pub fn block_diagonalization_residual(m: usize, b: Flux, jx: f64, jy: f64) -> Result<f64> {
    let model = harper_hamiltonian(m, b, jx, jy)?;
    let side = 1usize << m;
    let eye = DMatrix::<Complex64>::identity(side, side);
    let f = qft_matrix(m)?;
    let qft_y = eye.kronecker(f.matrix());
    let conjugated = &qft_y * model.hamiltonian.matrix() * qft_y.adjoint();
    let assembled = momentum_block_direct_sum(&harper_momentum_blocks(m, b, jx, jy)?);
    Ok((conjugated - assembled).norm())
}

/// The b = 1/2 pseudo-spin form of a momentum block: M/2 unit cells with an
/// up/down index for even/odd sites, onsite potential +/- 2 Jy cos(2 pi k/M),
/// and Jx hopping inside the cell and across to the next cell.
pub fn harper_pseudospin_half(m: usize, k: usize, jx: f64, jy: f64) -> Result<DMatrix<Complex64>> {
    let side = 1usize << m;
    if side < 2 {
        return Err(Error::InvalidArgument(
            "pseudo-spin form needs at least two sites".into(),
        ));
    }
    let cells = side / 2;
    let onsite = 2.0 * jy * (TAU * k as f64 / side as f64).cos();
    let mut h = DMatrix::<Complex64>::zeros(side, side);
    for n in 0..cells {
        let up = 2 * n;
        let down = 2 * n + 1;
        h[(up, up)] = Complex64::new(onsite, 0.0);
        h[(down, down)] = Complex64::new(-onsite, 0.0);
        // intra-cell and inter-cell hops; += keeps the doubled bond at M = 2
        h[(up, down)] += Complex64::new(jx, 0.0);
        h[(down, up)] += Complex64::new(jx, 0.0);
        let next_up = (2 * n + 2) % side;
        h[(down, next_up)] += Complex64::new(jx, 0.0);
        h[(next_up, down)] += Complex64::new(jx, 0.0);
    }
    Ok(h)
}

/// All reduced fractions p/q in [0, 1) with q <= q_max, ascending.
pub fn reduced_fractions(q_max: u64) -> Vec<(u64, u64)> {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = b;
            b = a % b;
            a = t;
        }
        a
    }
    let mut out = vec![(0, 1)];
    for q in 2..=q_max {
        for p in 1..q {
            if gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out
}

#[derive(Debug, Clone)]
pub struct ButterflyPoint {
    pub p: u64,
    pub q: u64,
    pub b: f64,
    pub eigenvalues: Vec<f64>,
}

/// Spectrum of the torus Hamiltonian over every reduced flux with q <= q_max.
/// Each point is cross-checked: the union of the momentum-block spectra must
/// reproduce the full spectrum, else the sweep aborts with an invariant error.
pub fn butterfly_sweep(m: usize, q_max: u64, jx: f64, jy: f64) -> Result<Vec<ButterflyPoint>> {
    let mut out = Vec::new();
    for (p, q) in reduced_fractions(q_max) {
        let b = Flux::Rational(p as i64, q);
        let model = harper_hamiltonian(m, b, jx, jy)?;
        let eigenvalues = sorted_spectrum(model.hamiltonian.matrix())?;

        let mut union = Vec::new();
        for block in harper_momentum_blocks(m, b, jx, jy)? {
            union.extend(sorted_spectrum(&block)?);
        }
        union.sort_by(|a, b| a.total_cmp(b));
        let worst = eigenvalues
            .iter()
            .zip(&union)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if worst > 1e-9 {
            return Err(Error::InvariantViolation {
                property: "harper block spectrum union".into(),
                detail: format!("flux {p}/{q}: union deviates by {worst:.3e}"),
            });
        }
        out.push(ButterflyPoint {
            p,
            q,
            b: b.value(),
            eigenvalues,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::restrict_to_projector_range;
    use crate::tgsa::projector_matrix;

    #[test]
    fn zero_flux_spectrum_is_two_decoupled_rings() {
        // analytic cross-check: 2 Jx cos(2 pi p / M) + 2 Jy cos(2 pi q / M)
        let (m, jx, jy) = (2, 1.0, 0.6);
        let model = harper_hamiltonian(m, Flux::Rational(0, 1), jx, jy).unwrap();
        let got = sorted_spectrum(model.hamiltonian.matrix()).unwrap();
        let side = 1usize << m;
        let mut expected = Vec::new();
        for p in 0..side {
            for q in 0..side {
                expected.push(
                    2.0 * jx * (TAU * p as f64 / side as f64).cos()
                        + 2.0 * jy * (TAU * q as f64 / side as f64).cos(),
                );
            }
        }
        expected.sort_by(|a, b| a.total_cmp(b));
        for (a, b) in got.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian_for_any_flux() {
        for b in [Flux::Rational(1, 3), Flux::Real(0.123), Flux::Rational(1, 2)] {
            let model = harper_hamiltonian(2, b, 1.0, 1.0).unwrap();
            assert!(model.hamiltonian.is_hermitian());
        }
    }

    #[test]
    fn qft_block_diagonalization_is_exact() {
        for b in [
            Flux::Rational(0, 1),
            Flux::Rational(1, 2),
            Flux::Rational(1, 3),
            Flux::Real(0.123),
        ] {
            let residual = block_diagonalization_residual(2, b, 1.0, 0.7).unwrap();
            assert!(residual < 1e-10, "flux {:?}: {residual:e}", b);
        }
    }

    #[test]
    fn momentum_blocks_match_projector_restrictions() {
        // irrep k of the y-translation rep spans exactly the block-k subspace
        let (m, jx, jy) = (2, 1.0, 0.8);
        let b = Flux::Rational(1, 2);
        let model = harper_hamiltonian(m, b, jx, jy).unwrap();
        let blocks = harper_momentum_blocks(m, b, jx, jy).unwrap();
        for k in 0..(1usize << m) {
            let p = projector_matrix(&model.rep, k).unwrap();
            let restricted =
                restrict_to_projector_range(model.hamiltonian.matrix(), p.matrix()).unwrap();
            let a = sorted_spectrum(&restricted).unwrap();
            let bspec = sorted_spectrum(&blocks[k]).unwrap();
            assert_eq!(a.len(), bspec.len());
            for (x, y) in a.iter().zip(&bspec) {
                assert!((x - y).abs() < 1e-9, "k = {k}");
            }
        }
    }

    #[test]
    fn pseudospin_matches_block_at_half_flux() {
        let (m, jx, jy) = (3, 1.0, 0.9);
        let blocks = harper_momentum_blocks(m, Flux::Rational(1, 2), jx, jy).unwrap();
        for k in 0..(1usize << m) {
            let ps = harper_pseudospin_half(m, k, jx, jy).unwrap();
            let a = sorted_spectrum(&ps).unwrap();
            let b = sorted_spectrum(&blocks[k]).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-10, "k = {k}");
            }
        }
    }

    #[test]
    fn pseudospin_onsite_signs_alternate() {
        let h = harper_pseudospin_half(3, 1, 0.0, 1.0).unwrap();
        // Jx = 0 leaves the flat alternating diagonal
        let onsite = 2.0 * (TAU / 8.0).cos();
        for n in 0..4 {
            assert!((h[(2 * n, 2 * n)].re - onsite).abs() < 1e-12);
            assert!((h[(2 * n + 1, 2 * n + 1)].re + onsite).abs() < 1e-12);
            assert!(h[(2 * n, 2 * n + 1)].norm() < 1e-12);
        }
    }

    #[test]
    fn reduced_fraction_enumeration() {
        let fr = reduced_fractions(4);
        assert_eq!(
            fr,
            vec![(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4)]
        );
    }

    #[test]
    fn small_butterfly_sweep_self_checks() {
        let points = butterfly_sweep(2, 4, 1.0, 1.0).unwrap();
        assert_eq!(points.len(), 6);
        for point in &points {
            assert_eq!(point.eigenvalues.len(), 16);
        }
    }
}
