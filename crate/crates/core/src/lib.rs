//! Variable influences of Boolean functions, exactly and through simulated
//! Bernstein-Vazirani sampling.
//!
//! Measuring the Bernstein-Vazirani circuit for `f` yields `y` with
//! probability `S_f(y)^2`, and the probability that `y_i = 1` is exactly
//! the influence of `x_i` on `f`. This crate computes both sides of that
//! identity in integer arithmetic, estimates influences from samples, and
//! uses the estimates to sort variables of low-degree functions by the
//! degree of the monomial they occur in.

pub mod boolfn;
pub mod bvsim;
pub mod dyadic;
pub mod estimate;
pub mod learn;
pub mod spectrum;
pub mod table_format;
pub mod verify;

pub use boolfn::{random_function, Anf, BoolFnError, PointMask, TruthTable, MAX_VARS};
pub use bvsim::{bv_distribution, bv_sample, statevector_bv, BvDistribution, SampleBatch};
pub use dyadic::Dyadic;
pub use estimate::{
    algorithm1, classical_estimate, hoeffding_radius, influential_list, samples_needed, EstimateReport,
    QuantumOracle,
};
pub use learn::{algorithm2, algorithm3, lemma1_influence, LearnReport, TermClass};
pub use spectrum::{
    correlation, influence_by_definition, influence_by_spectrum, influence_vector, walsh_spectrum, Correlation,
    InfluenceVector, WalshSpectrum,
};
