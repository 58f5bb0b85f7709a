//! Parsers for the little command-line specification strings: groups,
//! representations, states, and rational fluxes.

use std::fmt;

use symmetra::groups::{cyclic_group, product_group, symmetric_group, FiniteGroup};
use symmetra::reps::{
    cyclic_shift_rep, parity_flip_rep, permutation_rep, product_rep, site_translation_rep,
    spin_only_permutation_rep, Flux, UnitaryRep,
};
use symmetra::simulator::{Register, StateVector};

/// CLI-level error with its process exit code: 2 for usage problems, 1 for
/// numerical invariant violations.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(symmetra::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<symmetra::Error> for CliError {
    fn from(e: symmetra::Error) -> Self {
        use symmetra::Error as E;
        match e {
            // bad arguments or configs are usage problems, not numerics
            E::SizeCap { .. }
            | E::InvalidArgument(_)
            | E::InvalidPartition(_)
            | E::NonAbelianGroup(_)
            | E::IntegralSymmetry(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parse `z8`, `s3`, or products like `z4xz2` (left associative).
pub fn parse_group(text: &str) -> CliResult<FiniteGroup> {
    let lower = text.to_ascii_lowercase();
    let mut group: Option<FiniteGroup> = None;
    for part in lower.split('x') {
        let factor = parse_atomic_group(part)?;
        group = Some(match group {
            None => factor,
            Some(g) => product_group(g, factor)?,
        });
    }
    group.ok_or_else(|| CliError::usage(format!("empty group spec `{text}`")))
}

fn parse_atomic_group(part: &str) -> CliResult<FiniteGroup> {
    let (kind, number) = part.split_at(1.min(part.len()));
    let n: usize = number
        .parse()
        .map_err(|_| CliError::usage(format!("bad group `{part}`: expected zN or sN")))?;
    match kind {
        "z" => Ok(cyclic_group(n)?),
        "s" => Ok(symmetric_group(n)?),
        _ => Err(CliError::usage(format!(
            "bad group `{part}`: expected zN or sN"
        ))),
    }
}

/// Parse a representation spec and return it with a one-line description.
///
/// Forms: `shift:m` (Z_2^m increment), `sites:n` (Z_n site translation),
/// `parity:n` (Z_2 global flip), `blocks:n:m` (S_n on m-qubit blocks),
/// `ising:n` (Z_n x Z_2 translation and parity), `exchange` (the two-electron
/// S_2 x S_2 pair of full and spin-only swaps).
pub fn parse_rep(text: &str) -> CliResult<UnitaryRep> {
    let lower = text.to_ascii_lowercase();
    let parts: Vec<&str> = lower.split(':').collect();
    let usage = || CliError::usage(format!("bad rep `{text}`"));
    let number = |s: &str| s.parse::<usize>().map_err(|_| usage());
    match parts.as_slice() {
        ["shift", m] => Ok(cyclic_shift_rep(number(m)?)?),
        ["sites", n] => Ok(site_translation_rep(number(n)?)?),
        ["parity", n] => Ok(parity_flip_rep(number(n)?)?),
        ["blocks", n, m] => Ok(permutation_rep(number(n)?, number(m)?)?),
        ["ising", n] => {
            let n = number(n)?;
            let group = product_group(cyclic_group(n)?, cyclic_group(2)?)?;
            Ok(product_rep(
                group,
                site_translation_rep(n)?,
                parity_flip_rep(n)?,
            )?)
        }
        ["exchange"] => {
            let group = product_group(symmetric_group(2)?, symmetric_group(2)?)?;
            Ok(product_rep(
                group,
                permutation_rep(2, 2)?,
                spin_only_permutation_rep(4, Register::new(1, 1), Register::new(3, 1))?,
            )?)
        }
        _ => Err(usage()),
    }
}

/// Parse `zero`, `basis:BITS`, or `random:SEED` into a state of `n_qubits`.
pub fn parse_state(text: &str, n_qubits: usize) -> CliResult<StateVector> {
    let lower = text.to_ascii_lowercase();
    if lower == "zero" || lower == "default" {
        return Ok(StateVector::zero(n_qubits));
    }
    if let Some(bits) = lower.strip_prefix("basis:") {
        if bits.len() != n_qubits || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(CliError::usage(format!(
                "basis state `{bits}` must be {n_qubits} binary digits"
            )));
        }
        let index = usize::from_str_radix(bits, 2).expect("validated binary");
        return Ok(StateVector::basis(n_qubits, index));
    }
    if let Some(seed) = lower.strip_prefix("random:") {
        let seed: u64 = seed
            .parse()
            .map_err(|_| CliError::usage(format!("bad seed in `{text}`")))?;
        return Ok(StateVector::random(n_qubits, seed));
    }
    Err(CliError::usage(format!(
        "bad state `{text}`: expected zero, basis:BITS, or random:SEED"
    )))
}

/// Parse a flux: `p/q` rational or a decimal.
pub fn parse_flux(text: &str) -> CliResult<Flux> {
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad rational `{text}`")))?;
        let q: u64 = q
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad rational `{text}`")))?;
        if q == 0 {
            return Err(CliError::usage("rational denominator must be nonzero"));
        }
        Ok(Flux::Rational(p, q))
    } else {
        let b: f64 = text
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad flux `{text}`")))?;
        Ok(Flux::Real(b))
    }
}

/// Parse the sweep spec `q<=N`.
pub fn parse_sweep(text: &str) -> CliResult<u64> {
    let trimmed = text.trim().to_ascii_lowercase();
    let digits = trimmed
        .strip_prefix("q<=")
        .ok_or_else(|| CliError::usage(format!("bad sweep `{text}`: expected q<=N")))?;
    digits
        .parse()
        .map_err(|_| CliError::usage(format!("bad sweep bound in `{text}`")))
}
