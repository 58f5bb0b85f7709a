//! Symmetric-group characters, computed two independent ways.
//!
//! [`frobenius_character`] expands a multivariate polynomial and reads off one
//! coefficient; [`murnaghan_nakayama`] recursively strips border strips. The
//! two share no code and are cross-checked exactly (both are integer-valued),
//! which is the correctness anchor for everything downstream of the character
//! tables.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groups::partition::Partition;
use crate::groups::permutation::{permutation_from_index, Permutation};

/// Sparse integer polynomial in `k` variables, keyed by exponent vectors.
struct Poly {
    k: usize,
    terms: HashMap<Vec<u8>, i64>,
}

impl Poly {
    fn constant(k: usize, value: i64) -> Self {
        let mut terms = HashMap::new();
        terms.insert(vec![0u8; k], value);
        Poly { k, terms }
    }

    fn add_term(&mut self, exponents: Vec<u8>, coeff: i64) {
        use std::collections::hash_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    /// Multiply by the power sum x_1^q + ... + x_k^q.
    fn mul_power_sum(&self, q: u8) -> Poly {
        let mut terms: HashMap<Vec<u8>, i64> = HashMap::with_capacity(self.terms.len() * self.k);
        for (expo, &coeff) in &self.terms {
            for var in 0..self.k {
                let mut e = expo.clone();
                e[var] += q;
                *terms.entry(e).or_insert(0) += coeff;
            }
        }
        terms.retain(|_, v| *v != 0);
        Poly { k: self.k, terms }
    }

    fn coefficient(&self, exponents: &[u8]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }
}

/// The Vandermonde determinant prod_{a<b} (x_a - x_b), expanded as the signed
/// sum over the k! permutations. Exact integer arithmetic throughout.
fn vandermonde(k: usize) -> Poly {
    if k == 0 {
        return Poly::constant(0, 1);
    }
    let order: usize = (1..=k).product();
    let mut poly = Poly {
        k,
        terms: HashMap::with_capacity(order),
    };
    for idx in 0..order {
        let sigma = permutation_from_index(k, idx).expect("index in range");
        let sign = permutation_sign(&sigma);
        let expo: Vec<u8> = (0..k).map(|a| (k - 1 - sigma.apply(a)) as u8).collect();
        poly.add_term(expo, sign);
    }
    poly
}

fn permutation_sign(g: &Permutation) -> i64 {
    let transpositions: usize = g.cycle_type().parts().iter().map(|&l| l - 1).sum();
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Character of the symmetric-group irrep `lambda` on the conjugacy class of
/// cycle type `mu`, as the coefficient of x_1^{l_1} ... x_k^{l_k} with
/// l_n = lambda_n + k - n in the product of the Vandermonde determinant and
/// the power sums of `mu`. Always an exact integer.
pub fn frobenius_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.n() != mu.n() {
        return Err(Error::InvalidArgument(format!(
            "irrep label {lambda} and cycle type {mu} partition different integers"
        )));
    }
    let k = lambda.len();
    let mut poly = vandermonde(k);
    for &q in mu.parts() {
        poly = poly.mul_power_sum(q as u8);
    }
    let target: Vec<u8> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(n, &part)| (part + k - 1 - n) as u8)
        .collect();
    Ok(poly.coefficient(&target))
}

/// Irrep dimension d_lambda = chi_lambda(identity class).
pub fn irrep_dimension(lambda: &Partition) -> Result<i64> {
    let identity_type = Partition::new(vec![1; lambda.n()])?;
    frobenius_character(lambda, &identity_type)
}

/// Independent recursion for the same characters: strip border strips of the
/// cycle lengths one at a time, tracking the (-1)^height sign. Implemented on
/// beta-sets (first-column hook lengths), so removing a strip of length t
/// means lowering one beta number by t.
pub fn murnaghan_nakayama(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.n() != mu.n() {
        return Err(Error::InvalidArgument(format!(
            "irrep label {lambda} and cycle type {mu} partition different integers"
        )));
    }
    let beta: Vec<i64> = beta_set(lambda);
    Ok(mn_recurse(&beta, mu.parts()))
}

/// Beta numbers lambda_i + (rows - 1 - i) for a fixed number of rows.
fn beta_set(lambda: &Partition) -> Vec<i64> {
    let rows = lambda.len().max(1);
    let mut beta = Vec::with_capacity(rows);
    for i in 0..rows {
        let part = lambda.parts().get(i).copied().unwrap_or(0) as i64;
        beta.push(part + (rows - 1 - i) as i64);
    }
    beta
}

fn mn_recurse(beta: &[i64], cycles: &[usize]) -> i64 {
    if cycles.is_empty() {
        return 1;
    }
    let t = cycles[0] as i64;
    let rest = &cycles[1..];
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let lowered = b - t;
        if lowered < 0 || beta.contains(&lowered) {
            continue;
        }
        // height of the strip = number of beta numbers passed over
        let crossings = beta
            .iter()
            .filter(|&&other| other > lowered && other < b)
            .count();
        let sign = if crossings % 2 == 0 { 1 } else { -1 };
        let mut next = beta.to_vec();
        next[i] = lowered;
        total += sign * mn_recurse(&next, rest);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trivial_irrep_is_all_ones() {
        for mu in Partition::all_of(5) {
            assert_eq!(frobenius_character(&p(&[5]), &mu).unwrap(), 1);
        }
    }

    #[test]
    fn sign_irrep_values() {
        // chi_(1^n)(mu) = (-1)^(n - #parts(mu))
        for mu in Partition::all_of(4) {
            let expected = if (4 - mu.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(frobenius_character(&p(&[1, 1, 1, 1]), &mu).unwrap(), expected);
        }
    }

    #[test]
    fn s3_standard_irrep_row() {
        // (2,1) of S_3: values 2, 0, -1 on classes (1,1,1), (2,1), (3)
        assert_eq!(frobenius_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(frobenius_character(&p(&[2, 1]), &p(&[2, 1])).unwrap(), 0);
        assert_eq!(frobenius_character(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
    }

    #[test]
    fn s4_two_two_on_two_one_one() {
        // frozen from the border-strip recursion
        assert_eq!(
            frobenius_character(&p(&[2, 2]), &p(&[2, 1, 1])).unwrap(),
            0
        );
        assert_eq!(
            murnaghan_nakayama(&p(&[2, 2]), &p(&[2, 1, 1])).unwrap(),
            0
        );
    }

    #[test]
    fn mismatched_sizes_rejected() {
        assert!(frobenius_character(&p(&[2, 1]), &p(&[2, 2])).is_err());
        assert!(murnaghan_nakayama(&p(&[3]), &p(&[2, 2])).is_err());
    }

    #[test]
    fn two_routes_agree_exactly_up_to_n5() {
        for n in 1..=5 {
            let partitions = Partition::all_of(n);
            for lambda in &partitions {
                for mu in &partitions {
                    let a = frobenius_character(lambda, mu).unwrap();
                    let b = murnaghan_nakayama(lambda, mu).unwrap();
                    assert_eq!(a, b, "chi_{lambda}({mu})");
                }
            }
        }
    }

    #[test]
    fn dimensions_square_sum_to_group_order() {
        for n in 1..=5 {
            let sum: i64 = Partition::all_of(n)
                .iter()
                .map(|l| {
                    let d = irrep_dimension(l).unwrap();
                    d * d
                })
                .sum();
            let order: i64 = (1..=n as i64).product();
            assert_eq!(sum, order);
        }
    }
}
