//! Closed-form fault-tolerant gate-count estimators for the cyclic-group
//! circuits and the unary-iteration SELECT bound.
//!
//! All formulas are exact integer arithmetic on the leading terms; dropped
//! O(1) corrections are flagged on the estimate. Two compilation schemes are
//! modeled for the cyclic shift: a bare controlled incrementer (cheap per
//! step, exponentially many steps inside SELECT) and a modular adder (linear
//! cost per step, quadratic SELECT).

use serde::Serialize;

/// Symbolic growth class of the circuit depth in the size parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthClass {
    Linear,
    Quadratic,
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResourceEstimate {
    pub t_count: u64,
    pub toffoli_count: u64,
    pub ancilla_qubits: u64,
    pub depth_class: DepthClass,
    /// Counts are leading-term exact; additive O(1) terms are dropped.
    pub leading_term_only: bool,
}

/// Compilation scheme for the controlled cyclic shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicScheme {
    Incrementer,
    Adder,
}

fn ceil_log2(x: u64) -> u64 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros() as u64
    }
}

/// Cost of one controlled +1 shift on an m-qubit register.
pub fn cyclic_increment_resources(m: u64, scheme: CyclicScheme) -> ResourceEstimate {
    match scheme {
        CyclicScheme::Incrementer => ResourceEstimate {
            t_count: 12 * (m + 1),
            toffoli_count: 3 * (m + 1),
            ancilla_qubits: ceil_log2(m),
            depth_class: DepthClass::Linear,
            leading_term_only: false,
        },
        CyclicScheme::Adder => ResourceEstimate {
            t_count: 8 * m,
            toffoli_count: 4 * m,
            ancilla_qubits: m,
            depth_class: DepthClass::Linear,
            leading_term_only: true,
        },
    }
}

/// Cost of the full SELECT over all 2^m shift powers. The incrementer scheme
/// pays 2^m - 1 sequential controlled increments; the adder scheme implements
/// each controlled power at fixed cost, one per control bit.
pub fn cyclic_select_resources(m: u64, scheme: CyclicScheme) -> ResourceEstimate {
    match scheme {
        CyclicScheme::Incrementer => {
            let applications = (1u64 << m) - 1;
            ResourceEstimate {
                t_count: applications * 12 * (m + 1),
                toffoli_count: applications * 3 * (m + 1),
                ancilla_qubits: ceil_log2(m),
                depth_class: DepthClass::Exponential,
                leading_term_only: false,
            }
        }
        CyclicScheme::Adder => ResourceEstimate {
            t_count: 8 * m * m,
            toffoli_count: 4 * m * m,
            ancilla_qubits: m,
            depth_class: DepthClass::Quadratic,
            leading_term_only: true,
        },
    }
}

/// Unary-iteration bound for a SELECT indexed on N_conj classes with at most
/// `max_class_size` members each: D = N_conj * max|C| indexed operations cost
/// 4D - 4 T gates and D - 1 Toffolis.
pub fn unary_iteration_resources(n_conj: u64, max_class_size: u64) -> ResourceEstimate {
    let d = n_conj * max_class_size;
    ResourceEstimate {
        t_count: 4 * d - 4,
        toffoli_count: d - 1,
        ancilla_qubits: (ceil_log2(n_conj) + ceil_log2(max_class_size)).saturating_sub(1),
        depth_class: DepthClass::Linear,
        leading_term_only: true,
    }
}
