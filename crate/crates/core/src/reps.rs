//! Catalog of unitary group representations on qubit registers.
//!
//! Every representation here acts as a basis permutation with a per-basis
//! phase, so application is exact and O(2^n); dense matrices are materialized
//! on demand. The action convention for block permutations is
//! rho(g)|x_1 ... x_N> = |x_{g^-1(1)} ... x_{g^-1(N)}> (content moves with the
//! permutation), which is what makes rho a homomorphism.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::groups::{
    cyclic_group, symmetric_group, FiniteGroup, GroupElement, GroupKind, Permutation,
};
use crate::simulator::{DenseOperator, Register, StateVector};

/// A unitary of the form rho|b> = phase[b] * |target[b]>.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisAction {
    n_qubits: usize,
    target: Vec<usize>,
    phase: Vec<Complex64>,
}

impl BasisAction {
    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        BasisAction {
            n_qubits,
            target: (0..dim).collect(),
            phase: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    pub fn new(n_qubits: usize, target: Vec<usize>, phase: Vec<Complex64>) -> Result<Self> {
        let dim = 1 << n_qubits;
        if target.len() != dim || phase.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: target.len().max(phase.len()),
            });
        }
        let mut seen = vec![false; dim];
        for &t in &target {
            if t >= dim || seen[t] {
                return Err(Error::InvalidArgument(
                    "target map is not a permutation of the basis".into(),
                ));
            }
            seen[t] = true;
        }
        Ok(BasisAction {
            n_qubits,
            target,
            phase,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// rho|b> = phases()[b] * |targets()[b]>.
    pub fn targets(&self) -> &[usize] {
        &self.target
    }

    pub fn phases(&self) -> &[Complex64] {
        &self.phase
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: state.dim(),
            });
        }
        let mut out = nalgebra::DVector::zeros(self.dim());
        for (b, amp) in state.amplitudes().iter().enumerate() {
            out[self.target[b]] += self.phase[b] * amp;
        }
        StateVector::subnormalized(out)
    }

    /// Function composition: `(self.compose(o))|b> = self(o|b>)`.
    pub fn compose(&self, other: &BasisAction) -> BasisAction {
        debug_assert_eq!(self.dim(), other.dim());
        let dim = self.dim();
        let mut target = vec![0; dim];
        let mut phase = vec![Complex64::default(); dim];
        for b in 0..dim {
            let mid = other.target[b];
            target[b] = self.target[mid];
            phase[b] = other.phase[b] * self.phase[mid];
        }
        BasisAction {
            n_qubits: self.n_qubits,
            target,
            phase,
        }
    }

    pub fn adjoint(&self) -> BasisAction {
        let dim = self.dim();
        let mut target = vec![0; dim];
        let mut phase = vec![Complex64::default(); dim];
        for b in 0..dim {
            target[self.target[b]] = b;
            phase[self.target[b]] = self.phase[b].conj();
        }
        BasisAction {
            n_qubits: self.n_qubits,
            target,
            phase,
        }
    }

    pub fn to_dense(&self) -> DenseOperator {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        let mut hermitian = true;
        for b in 0..dim {
            m[(self.target[b], b)] = self.phase[b];
            // hermitian iff the permutation is an involution with
            // conjugate-symmetric phases
            if self.target[self.target[b]] != b
                || (self.phase[self.target[b]] - self.phase[b].conj()).norm() > 1e-12
            {
                hermitian = false;
            }
        }
        DenseOperator::from_verified_parts(m, hermitian, true).expect("valid square matrix")
    }

    /// Frobenius-norm distance to another action of the same width.
    pub fn distance(&self, other: &BasisAction) -> f64 {
        let mut acc = 0.0;
        for b in 0..self.dim() {
            if self.target[b] == other.target[b] {
                acc += (self.phase[b] - other.phase[b]).norm_sqr();
            } else {
                acc += self.phase[b].norm_sqr() + other.phase[b].norm_sqr();
            }
        }
        acc.sqrt()
    }
}

#[derive(Debug, Clone)]
enum RepKind {
    /// Z_{2^m} as the binary increment |j> -> |j+v mod 2^m>.
    CyclicShift,
    /// Z_N rotating N single-qubit sites: site j takes the content of j+1.
    SiteTranslation,
    /// Z_2 as a global bit flip X on every qubit.
    ParityFlip,
    /// S_N permuting N contiguous blocks of `block_width` qubits.
    BlockPermutation { block_width: usize },
    /// S_2 exchanging two designated equal-width registers.
    RegisterExchange { a: Register, b: Register },
    /// Component-wise action of a product group on a shared system.
    Product(Box<UnitaryRep>, Box<UnitaryRep>),
    /// Explicit table of actions (used for custom and corrupted reps).
    Table(Arc<HashMap<GroupElement, BasisAction>>),
}

/// A homomorphism from group elements to unitary actions on `n_qubits`.
#[derive(Debug, Clone)]
pub struct UnitaryRep {
    group: FiniteGroup,
    n_qubits: usize,
    kind: RepKind,
}

impl UnitaryRep {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// The basis action of a single group element.
    pub fn action(&self, g: &GroupElement) -> BasisAction {
        let dim = 1usize << self.n_qubits;
        match (&self.kind, g) {
            (RepKind::CyclicShift, GroupElement::Cyclic(v)) => {
                let target: Vec<usize> = (0..dim).map(|j| (j + v) % dim).collect();
                BasisAction {
                    n_qubits: self.n_qubits,
                    target,
                    phase: vec![Complex64::new(1.0, 0.0); dim],
                }
            }
            (RepKind::SiteTranslation, GroupElement::Cyclic(v)) => {
                let n = self.n_qubits;
                let target: Vec<usize> = (0..dim)
                    .map(|b| {
                        let mut out = 0usize;
                        for j in 0..n {
                            let src = (j + v) % n;
                            let bit = (b >> (n - 1 - src)) & 1;
                            out |= bit << (n - 1 - j);
                        }
                        out
                    })
                    .collect();
                BasisAction {
                    n_qubits: n,
                    target,
                    phase: vec![Complex64::new(1.0, 0.0); dim],
                }
            }
            (RepKind::ParityFlip, GroupElement::Cyclic(v)) => {
                let mask = dim - 1;
                let target: Vec<usize> = if v % 2 == 0 {
                    (0..dim).collect()
                } else {
                    (0..dim).map(|b| !b & mask).collect()
                };
                BasisAction {
                    n_qubits: self.n_qubits,
                    target,
                    phase: vec![Complex64::new(1.0, 0.0); dim],
                }
            }
            (RepKind::BlockPermutation { block_width }, GroupElement::Perm(p)) => {
                block_permutation_action(self.n_qubits, *block_width, p)
            }
            (RepKind::RegisterExchange { a, b }, GroupElement::Perm(p)) => {
                if p.is_identity() {
                    BasisAction::identity(self.n_qubits)
                } else {
                    swap_registers_action(self.n_qubits, *a, *b)
                }
            }
            (RepKind::Product(rep1, rep2), GroupElement::Pair(g1, g2)) => {
                rep1.action(g1).compose(&rep2.action(g2))
            }
            (RepKind::Table(map), _) => map
                .get(g)
                .cloned()
                .unwrap_or_else(|| panic!("element {g} missing from rep table")),
            _ => panic!(
                "element {g} does not match the representation of {}",
                self.group.name()
            ),
        }
    }

    pub fn dense(&self, g: &GroupElement) -> DenseOperator {
        self.action(g).to_dense()
    }
}

fn block_permutation_action(n_qubits: usize, block_width: usize, p: &Permutation) -> BasisAction {
    let blocks = p.n();
    debug_assert_eq!(blocks * block_width, n_qubits);
    let dim = 1 << n_qubits;
    let inv = p.inverse();
    let block_mask = (1usize << block_width) - 1;
    let target: Vec<usize> = (0..dim)
        .map(|bidx| {
            let mut out = 0usize;
            for i in 0..blocks {
                let src = inv.apply(i);
                let shift_src = block_width * (blocks - 1 - src);
                let val = (bidx >> shift_src) & block_mask;
                let shift_dst = block_width * (blocks - 1 - i);
                out |= val << shift_dst;
            }
            out
        })
        .collect();
    BasisAction {
        n_qubits,
        target,
        phase: vec![Complex64::new(1.0, 0.0); dim],
    }
}

fn swap_registers_action(n_qubits: usize, a: Register, b: Register) -> BasisAction {
    debug_assert_eq!(a.width, b.width);
    let dim = 1 << n_qubits;
    let shift_a = n_qubits - (a.start + a.width);
    let shift_b = n_qubits - (b.start + b.width);
    let mask = (1usize << a.width) - 1;
    let target: Vec<usize> = (0..dim)
        .map(|idx| {
            let va = (idx >> shift_a) & mask;
            let vb = (idx >> shift_b) & mask;
            let cleared = idx & !(mask << shift_a) & !(mask << shift_b);
            cleared | (vb << shift_a) | (va << shift_b)
        })
        .collect();
    BasisAction {
        n_qubits,
        target,
        phase: vec![Complex64::new(1.0, 0.0); dim],
    }
}

/// Z_{2^m} acting on m qubits as the modular increment.
pub fn cyclic_shift_rep(m: usize) -> Result<UnitaryRep> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    Ok(UnitaryRep {
        group: cyclic_group(1 << m)?,
        n_qubits: m,
        kind: RepKind::CyclicShift,
    })
}

/// Z_N acting on N single-qubit sites by cyclic relabeling: the generator
/// moves the content of site j+1 to site j (|110...0> -> |10...01>).
pub fn site_translation_rep(n_sites: usize) -> Result<UnitaryRep> {
    if n_sites == 0 {
        return Err(Error::InvalidArgument("need at least one site".into()));
    }
    Ok(UnitaryRep {
        group: cyclic_group(n_sites)?,
        n_qubits: n_sites,
        kind: RepKind::SiteTranslation,
    })
}

/// Z_2 acting on N qubits with the nontrivial element X on every qubit.
pub fn parity_flip_rep(n_qubits: usize) -> Result<UnitaryRep> {
    if n_qubits == 0 {
        return Err(Error::InvalidArgument("need at least one qubit".into()));
    }
    Ok(UnitaryRep {
        group: cyclic_group(2)?,
        n_qubits,
        kind: RepKind::ParityFlip,
    })
}

/// S_N permuting N contiguous blocks of `block_width` qubits each.
pub fn permutation_rep(n_blocks: usize, block_width: usize) -> Result<UnitaryRep> {
    if block_width == 0 {
        return Err(Error::InvalidArgument("block width must be >= 1".into()));
    }
    let n_qubits = n_blocks * block_width;
    if n_qubits > crate::simulator::STATE_QUBIT_CAP {
        return Err(Error::SizeCap {
            what: "permutation rep qubits",
            requested: n_qubits,
            cap: crate::simulator::STATE_QUBIT_CAP,
        });
    }
    Ok(UnitaryRep {
        group: symmetric_group(n_blocks)?,
        n_qubits,
        kind: RepKind::BlockPermutation { block_width },
    })
}

/// S_2 exchanging two designated equal-width sub-registers (e.g. the spin
/// qubits of a two-particle register), leaving everything else in place.
pub fn spin_only_permutation_rep(
    n_qubits: usize,
    spin_a: Register,
    spin_b: Register,
) -> Result<UnitaryRep> {
    if spin_a.width != spin_b.width {
        return Err(Error::InvalidArgument(
            "exchanged registers must have equal width".into(),
        ));
    }
    Ok(UnitaryRep {
        group: symmetric_group(2)?,
        n_qubits,
        kind: RepKind::RegisterExchange {
            a: spin_a,
            b: spin_b,
        },
    })
}

/// Component-wise representation of a product group: both factors act on the
/// same system and must commute element by element for the result to be a
/// homomorphism; that is checked exhaustively on construction.
pub fn product_rep(group: FiniteGroup, rep1: UnitaryRep, rep2: UnitaryRep) -> Result<UnitaryRep> {
    let (f1, f2) = match group.kind() {
        GroupKind::Product(a, b) => (a.clone(), b.clone()),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{} is not a product group",
                group.name()
            )))
        }
    };
    if f1.order() != rep1.group().order() || f2.order() != rep2.group().order() {
        return Err(Error::InvalidArgument(
            "factor representations do not match the product group factors".into(),
        ));
    }
    if rep1.n_qubits() != rep2.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: rep1.n_qubits(),
            got: rep2.n_qubits(),
        });
    }
    for g1 in f1.elements() {
        let a1 = rep1.action(g1);
        for g2 in f2.elements() {
            let a2 = rep2.action(g2);
            let forward = a1.compose(&a2);
            let backward = a2.compose(&a1);
            let dist = forward.distance(&backward);
            if dist > 1e-10 {
                return Err(Error::InvalidArgument(format!(
                    "factor actions do not commute at ({g1},{g2}): distance {dist:.3e}"
                )));
            }
        }
    }
    Ok(UnitaryRep {
        group,
        n_qubits: rep1.n_qubits(),
        kind: RepKind::Product(Box::new(rep1), Box::new(rep2)),
    })
}

/// A representation from an explicit element-to-action table.
pub fn rep_from_actions(
    group: FiniteGroup,
    n_qubits: usize,
    actions: HashMap<GroupElement, BasisAction>,
) -> Result<UnitaryRep> {
    for g in group.elements() {
        match actions.get(g) {
            None => {
                return Err(Error::InvalidArgument(format!(
                    "missing action for element {g}"
                )))
            }
            Some(a) if a.n_qubits() != n_qubits => {
                return Err(Error::DimensionMismatch {
                    expected: 1 << n_qubits,
                    got: a.dim(),
                })
            }
            _ => {}
        }
    }
    Ok(UnitaryRep {
        group,
        n_qubits,
        kind: RepKind::Table(Arc::new(actions)),
    })
}

/// Magnetic flux per plaquette, kept rational when possible so translation
/// phases stay exact in the algebra checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Flux {
    /// b = p/q.
    Rational(i64, u64),
    Real(f64),
}

impl Flux {
    pub fn value(&self) -> f64 {
        match self {
            Flux::Rational(p, q) => *p as f64 / *q as f64,
            Flux::Real(b) => *b,
        }
    }

    /// exp(2 pi i x b), with the angle reduced mod 1 exactly for rational b.
    pub fn phase(&self, x: i64) -> Complex64 {
        let angle = match self {
            Flux::Rational(p, q) => {
                let q = *q as i64;
                let num = (x * p).rem_euclid(q);
                TAU * num as f64 / q as f64
            }
            Flux::Real(b) => TAU * (x as f64 * b).fract(),
        };
        Complex64::new(angle.cos(), angle.sin())
    }
}

/// The magnetic translation pair (U_b, V_b) on a 2m-qubit torus register
/// (x first, then y): U_b|x,y> = |x-1,y> and V_b|x,y> = exp(2 pi i x b)|x,y-1>
/// with periodic wrap on both axes.
///
/// The torus algebra U_b V_b = exp(2 pi i b) V_b U_b holds exactly on the
/// interior columns for every flux, and as a full operator identity exactly
/// when M b is an integer (M = 2^m). That commensurability condition is not an
/// implementation artifact: for unitaries on a D-dimensional space the
/// identity forces exp(2 pi i b D) = 1 by taking determinants, so fluxes such
/// as 1/3 admit no exact finite qubit-register realization. The x = M-1
/// column carries the compensating flux instead.
pub fn magnetic_translation_reps(m: usize, b: Flux) -> Result<(DenseOperator, DenseOperator)> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "need at least one qubit per axis".into(),
        ));
    }
    let side = 1usize << m;
    let dim = side * side;
    let n_qubits = 2 * m;

    let mut u_target = vec![0usize; dim];
    let mut v_target = vec![0usize; dim];
    let mut v_phase = vec![Complex64::default(); dim];
    for x in 0..side {
        for y in 0..side {
            let idx = x * side + y;
            u_target[idx] = ((x + side - 1) % side) * side + y;
            v_target[idx] = x * side + (y + side - 1) % side;
            v_phase[idx] = b.phase(x as i64);
        }
    }
    let u = BasisAction::new(n_qubits, u_target, vec![Complex64::new(1.0, 0.0); dim])?;
    let v = BasisAction::new(n_qubits, v_target, v_phase)?;
    Ok((u.to_dense(), v.to_dense()))
}

/// Max ||rho(g)rho(h) - rho(gh)|| over element pairs: exhaustive when the
/// group has at most 64 elements, otherwise over `samples` seeded pairs.
pub fn verify_homomorphism(rep: &UnitaryRep, samples: usize, seed: u64) -> f64 {
    let group = rep.group();
    let n = group.order();
    let mut worst: f64 = 0.0;
    let check = |g: &GroupElement, h: &GroupElement| {
        let composed = rep.action(g).compose(&rep.action(h));
        let direct = rep.action(&group.multiply(g, h));
        composed.distance(&direct)
    };
    if n <= 64 {
        for g in group.elements() {
            for h in group.elements() {
                worst = worst.max(check(g, h));
            }
        }
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let g = &group.elements()[rng.gen_range(0..n)];
            let h = &group.elements()[rng.gen_range(0..n)];
            worst = worst.max(check(g, h));
        }
    }
    worst
}
