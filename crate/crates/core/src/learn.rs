//! Degree classification of variables for functions whose ANF is a sum of
//! variable-disjoint monomials of degree at most three.
//!
//! A variable alone in a degree-`r` monomial has influence `2^(1-r)`, so
//! its column in the circuit output is one with that probability: always
//! for linear terms, half the time for quadratic ones, a quarter for cubic.

use serde::Serialize;
use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::estimate::{hoeffding_failure_bound, QuantumOracle};

pub const DEFAULT_RHO: usize = 20;
pub const DEFAULT_LAMBDA: usize = 2000;
pub const DEFAULT_WINDOW: f64 = 0.1;
pub const MIN_RHO: usize = 2;
pub const MIN_LAMBDA: usize = 4;

/// The structural assumption the learners rely on; it cannot be checked
/// from output marginals, so reports carry it verbatim.
pub const ASSUMED_MODEL: &str = "each variable appears in at most one monomial";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LearnError {
    #[error("monomial degree must be at least 1")]
    Degree,
    #[error("rho = {0} below the minimum of {MIN_RHO}")]
    Rho(usize),
    #[error("lambda = {0} below the minimum of {MIN_LAMBDA}")]
    Lambda(usize),
    #[error("window half-width {0} outside (0, 1/8)")]
    Window(f64),
}

/// Influence of a variable appearing in exactly one degree-`r` monomial.
pub fn lemma1_influence(r: u32) -> Result<Dyadic, LearnError> {
    if r == 0 {
        return Err(LearnError::Degree);
    }
    Ok(Dyadic::new(1, r - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermClass {
    Linear,
    Quadratic,
    Cubic,
    Absent,
    Unclassified,
}

/// Open interval `(center - half_width, center + half_width)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub low: f64,
    pub high: f64,
}

impl Window {
    pub fn around(center: f64, half_width: f64) -> Self {
        Window { low: center - half_width, high: center + half_width }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.low < x && x < self.high
    }

    pub fn intersects(&self, other: &Window) -> bool {
        self.low < other.high && other.low < self.high
    }
}

/// Acceptance windows around 1/2 (quadratic) and 1/4 (cubic).
pub fn windows(epsilon: f64) -> Result<(Window, Window), LearnError> {
    if !(epsilon > 0.0 && epsilon < 0.125) {
        return Err(LearnError::Window(epsilon));
    }
    Ok((Window::around(0.5, epsilon), Window::around(0.25, epsilon)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariableClass {
    pub variable: usize,
    pub class: TermClass,
    pub ones: u64,
    pub trials: usize,
    /// `ones / trials`
    pub observed: f64,
    /// The window that accepted the variable, if any.
    pub window: Option<Window>,
}

/// Two-class rule: all ones, all zeros, or mixed.
pub fn classify_two(ones: u64, rho: usize) -> TermClass {
    match ones {
        0 => TermClass::Absent,
        l if l == rho as u64 => TermClass::Linear,
        _ => TermClass::Quadratic,
    }
}

/// Window rule. All-ones and all-zeros columns take precedence over the
/// windows; fractions outside every window stay unclassified.
pub fn classify_windowed(ones: u64, lambda: usize, quadratic: &Window, cubic: &Window) -> (TermClass, Option<Window>) {
    if ones == 0 {
        return (TermClass::Absent, None);
    }
    if ones == lambda as u64 {
        return (TermClass::Linear, None);
    }
    let fraction = ones as f64 / lambda as f64;
    if quadratic.contains(fraction) {
        (TermClass::Quadratic, Some(*quadratic))
    } else if cubic.contains(fraction) {
        (TermClass::Cubic, Some(*cubic))
    } else {
        (TermClass::Unclassified, None)
    }
}

/// Error probabilities attached to a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum ErrorBudget {
    TwoClass {
        /// A quadratic variable read as all ones (or as all zeros): `2^-rho`.
        quadratic_read_one_way: f64,
        /// A quadratic variable misclassified either way: `2^(1-rho)`.
        quadratic_misclassified: f64,
        /// Linear variables produce all-ones columns with certainty.
        linear_misclassified: f64,
    },
    Windowed {
        /// `2 exp(-2 lambda eps^2)` for a quadratic or cubic variable
        /// falling outside its window.
        windowed_failure: f64,
        /// Bound carried over from the two-class analysis; not separately
        /// derived for the windowed rule.
        linear_misclassified: f64,
        linear_bound_inherited: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearnReport {
    pub trials: usize,
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub assumed_model: &'static str,
    pub variables: Vec<VariableClass>,
    pub error_budget: ErrorBudget,
}

impl LearnReport {
    pub fn class_of(&self, i: usize) -> Option<TermClass> {
        self.variables.get(i.checked_sub(1)?).map(|v| v.class)
    }

    pub fn with_class(&self, class: TermClass) -> Vec<usize> {
        self.variables.iter().filter(|v| v.class == class).map(|v| v.variable).collect()
    }
}

/// Runs the circuit `rho` times: all-ones columns are linear, mixed
/// columns quadratic, all-zero columns absent.
pub fn algorithm2(oracle: &QuantumOracle, rho: usize, seed: u64) -> Result<LearnReport, LearnError> {
    if rho < MIN_RHO {
        return Err(LearnError::Rho(rho));
    }
    let ones = oracle.run(rho, seed).column_ones();
    let variables = ones
        .iter()
        .enumerate()
        .map(|(k, &l)| VariableClass {
            variable: k + 1,
            class: classify_two(l, rho),
            ones: l,
            trials: rho,
            observed: l as f64 / rho as f64,
            window: None,
        })
        .collect();
    let one_way = (-(rho as f64)).exp2();
    Ok(LearnReport {
        trials: rho,
        epsilon: None,
        seed,
        assumed_model: ASSUMED_MODEL,
        variables,
        error_budget: ErrorBudget::TwoClass {
            quadratic_read_one_way: one_way,
            quadratic_misclassified: 2.0 * one_way,
            linear_misclassified: 0.0,
        },
    })
}

/// Runs the circuit `lambda` times and sorts columns into linear,
/// quadratic, cubic, absent or unclassified.
pub fn algorithm3(oracle: &QuantumOracle, lambda: usize, epsilon: f64, seed: u64) -> Result<LearnReport, LearnError> {
    if lambda < MIN_LAMBDA {
        return Err(LearnError::Lambda(lambda));
    }
    let (quadratic, cubic) = windows(epsilon)?;
    let ones = oracle.run(lambda, seed).column_ones();
    let variables = ones
        .iter()
        .enumerate()
        .map(|(k, &l)| {
            let (class, window) = classify_windowed(l, lambda, &quadratic, &cubic);
            VariableClass {
                variable: k + 1,
                class,
                ones: l,
                trials: lambda,
                observed: l as f64 / lambda as f64,
                window,
            }
        })
        .collect();
    Ok(LearnReport {
        trials: lambda,
        epsilon: Some(epsilon),
        seed,
        assumed_model: ASSUMED_MODEL,
        variables,
        error_budget: ErrorBudget::Windowed {
            windowed_failure: hoeffding_failure_bound(lambda, epsilon),
            linear_misclassified: 0.0,
            linear_bound_inherited: true,
        },
    })
}
