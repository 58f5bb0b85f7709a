//! Permutations of N points with cycle-type extraction and the canonical
//! transposition-word indexing.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::partition::Partition;

/// A bijection of {0, ..., n-1}; `images[i]` is the image of point i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::InvalidArgument(format!(
                    "images {images:?} are not a bijection of 0..{n}"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// One-based images, matching the usual two-line notation.
    pub fn from_one_based(images: Vec<usize>) -> Result<Self> {
        let shifted: Vec<usize> = images.iter().map(|&i| i.wrapping_sub(1)).collect();
        Self::from_images(shifted)
    }

    /// The transposition (i j) inside S_n (zero-based points).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation { images }
    }

    /// The full cycle (0 1 ... k-1) inside S_n, fixing points >= k.
    pub fn cycle(n: usize, k: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        for x in 0..k {
            images[x] = if x + 1 < k { x + 1 } else { 0 };
        }
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// Composition acting as functions: `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.n());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Cycle lengths sorted decreasing; partitions of n label conjugacy classes.
    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(lengths).expect("cycle lengths form a partition")
    }

    /// Disjoint cycles of length >= 2, each rotated to start at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            if cycle.len() >= 2 {
                cycles.push(cycle);
            }
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    /// One-based cycle notation, `e` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Index of `g` in the canonical transposition-word order: write
/// g = c_(1..n)^{i_(n-1)} ... c_(1,2,3)^{i_2} c_(1,2)^{i_1} with i_j in [0, j+1),
/// then i = sum_j i_j * n!/(j+1)!.
pub fn canonical_index(g: &Permutation) -> usize {
    let n = g.n();
    let mut digits = vec![0usize; n.saturating_sub(1)];
    let mut current = g.clone();
    for size in (2..=n).rev() {
        // sigma_size^a maps point (size-1) to a-1, so the image of the last
        // point determines the digit.
        let image = current.apply(size - 1);
        let digit = if image == size - 1 { 0 } else { image + 1 };
        digits[size - 2] = digit;
        if digit > 0 {
            let sigma = Permutation::cycle(n, size);
            current = sigma.pow(size - digit).compose(&current);
        }
    }
    debug_assert!(current.is_identity());
    let nf = factorial(n);
    digits
        .iter()
        .enumerate()
        .map(|(j0, &d)| d * nf / factorial(j0 + 2))
        .sum()
}

/// Inverse of [`canonical_index`].
pub fn permutation_from_index(n: usize, index: usize) -> Result<Permutation> {
    let nf = factorial(n);
    if index >= nf {
        return Err(Error::InvalidArgument(format!(
            "index {index} out of range for S_{n} of order {nf}"
        )));
    }
    let mut rem = index;
    let mut g = Permutation::identity(n);
    // digits from the largest weight (j = 1) down; weight(j) = n!/(j+1)!
    let mut digits = vec![0usize; n.saturating_sub(1)];
    for j in 1..n {
        let weight = nf / factorial(j + 1);
        digits[j - 1] = rem / weight;
        rem %= weight;
    }
    // g = sigma_n^{i_(n-1)} ... sigma_2^{i_1}: rightmost factor acts first
    for (j0, &d) in digits.iter().enumerate() {
        let size = j0 + 2;
        if d > 0 {
            g = Permutation::cycle(n, size).pow(d).compose(&g);
        }
    }
    Ok(g)
}
