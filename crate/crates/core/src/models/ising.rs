//! One-dimensional quantum Ising chain in random transverse and longitudinal
//! fields, with the Z_N x Z_2 translation-parity symmetry machinery.
//!
//! H = -sum_j a_j X_j - J sum_j Z_j Z_{j+1} - sum_j w_j Z_j, periodic
//! boundary. Uniform transverse field and zero longitudinal field make the
//! chain translation and parity symmetric; the projectors P^{k,sigma} then
//! cut it into momentum-parity blocks. Any single-Z term is parity odd, so
//! the sigma projection eliminates the longitudinal field identically even
//! at nonzero disorder.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::json;

use crate::error::{Error, Result};
use crate::groups::{cyclic_group, product_group, FiniteGroup};
use crate::reps::{parity_flip_rep, product_rep, site_translation_rep, UnitaryRep};
use crate::simulator::{DenseOperator, RegisterLayout};
use crate::tgsa::projector_matrix;

use super::ModelHamiltonian;

/// Dense cap on the chain length.
pub const ISING_SITE_CAP: usize = 12;

#[derive(Debug, Clone)]
pub struct IsingParams {
    pub n_sites: usize,
    /// Transverse fields a_j.
    pub transverse: Vec<f64>,
    /// Longitudinal fields w_j.
    pub longitudinal: Vec<f64>,
    /// Ising coupling J.
    pub coupling: f64,
}

impl IsingParams {
    pub fn uniform(n_sites: usize, a: f64, j: f64) -> Self {
        IsingParams {
            n_sites,
            transverse: vec![a; n_sites],
            longitudinal: vec![0.0; n_sites],
            coupling: j,
        }
    }
}

fn symmetry_group(n: usize) -> Result<FiniteGroup> {
    product_group(cyclic_group(n)?, cyclic_group(2)?)
}

fn symmetry_rep(n: usize) -> Result<UnitaryRep> {
    product_rep(
        symmetry_group(n)?,
        site_translation_rep(n)?,
        parity_flip_rep(n)?,
    )
}

pub fn ising_hamiltonian(params: &IsingParams) -> Result<ModelHamiltonian> {
    let n = params.n_sites;
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one site".into()));
    }
    if n > ISING_SITE_CAP {
        return Err(Error::SizeCap {
            what: "ising chain sites",
            requested: n,
            cap: ISING_SITE_CAP,
        });
    }
    if params.transverse.len() != n || params.longitudinal.len() != n {
        return Err(Error::InvalidArgument(
            "field arrays must have one entry per site".into(),
        ));
    }
    let dim = 1usize << n;
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for b in 0..dim {
        // Z eigenvalue +1 for bit 0; site j is the j-th most significant bit
        let z = |j: usize| -> f64 {
            if (b >> (n - 1 - j)) & 1 == 0 {
                1.0
            } else {
                -1.0
            }
        };
        let mut diag = 0.0;
        for j in 0..n {
            diag -= params.coupling * z(j) * z((j + 1) % n);
            diag -= params.longitudinal[j] * z(j);
        }
        m[(b, b)] = Complex64::new(diag, 0.0);
        for j in 0..n {
            let flipped = b ^ (1 << (n - 1 - j));
            m[(flipped, b)] += Complex64::new(-params.transverse[j], 0.0);
        }
    }
    Ok(ModelHamiltonian {
        name: "ising".into(),
        hamiltonian: DenseOperator::hermitian(m)?,
        layout: RegisterLayout::new(&[("sites", n)]),
        group: symmetry_group(n)?,
        rep: symmetry_rep(n)?,
        metadata: json!({
            "n_sites": n,
            "transverse": params.transverse,
            "longitudinal": params.longitudinal,
            "coupling": params.coupling,
        }),
    })
}

/// The projector family P^{k,sigma} onto momentum k and parity sigma,
/// indexed (k, sigma) with k in [0, N) and sigma in {0, 1}.
pub fn ising_symmetry_projectors(n: usize) -> Result<Vec<((usize, usize), DenseOperator)>> {
    if n > ISING_SITE_CAP {
        return Err(Error::SizeCap {
            what: "ising chain sites",
            requested: n,
            cap: ISING_SITE_CAP,
        });
    }
    let rep = symmetry_rep(n)?;
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        for sigma in 0..2 {
            let irrep = k * 2 + sigma;
            out.push(((k, sigma), projector_matrix(&rep, irrep)?));
        }
    }
    Ok(out)
}

/// The (k, sigma) diagonal block as a full-space operator P H P. The block's
/// spectrum lives on range(P); restrict with
/// [`super::restrict_to_projector_range`] to get the compressed matrix.
pub fn ising_projected_block(
    model: &ModelHamiltonian,
    projector: &DenseOperator,
) -> Result<DenseOperator> {
    if projector.dim() != model.hamiltonian.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.hamiltonian.dim(),
            got: projector.dim(),
        });
    }
    let m = projector.matrix() * model.hamiltonian.matrix() * projector.matrix();
    DenseOperator::new(m)
}
