//! Serialization helpers shared by the JSON/CSV export surfaces.
//!
//! Complex numbers are always emitted as `[re, im]` pairs and matrices in
//! row-major order, so every exported artifact uses one convention.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex number on the wire: `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WireComplex(pub f64, pub f64);

impl From<Complex64> for WireComplex {
    fn from(z: Complex64) -> Self {
        WireComplex(z.re, z.im)
    }
}

impl From<WireComplex> for Complex64 {
    fn from(w: WireComplex) -> Self {
        Complex64::new(w.0, w.1)
    }
}

/// Row-major complex matrix as nested `[re, im]` pairs.
pub fn matrix_to_wire(m: &DMatrix<Complex64>) -> Vec<Vec<WireComplex>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].into()).collect())
        .collect()
}

/// Complex vector as `[re, im]` pairs.
pub fn vector_to_wire(v: &DVector<Complex64>) -> Vec<WireComplex> {
    v.iter().map(|&z| z.into()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_round_trip() {
        let z = Complex64::new(0.5, -1.25);
        let w: WireComplex = z.into();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "[0.5,-1.25]");
        let back: WireComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(Complex64::from(back), z);
    }
}
