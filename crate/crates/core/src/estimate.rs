//! Sampled influence estimation: the quantum estimator that reads every
//! influence off one batch of circuit outputs, its Hoeffding bounds, the
//! "listed once seen" variable filter, and the classical pair-query
//! baseline.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::boolfn::{check_index, BoolFnError, TruthTable};
use crate::bvsim::{bv_distribution, bv_sample, seeded_rng, BvDistribution, SampleBatch};
use crate::spectrum::{influence_vector_from_spectrum, walsh_spectrum, InfluenceVector};

/// Accuracy radius and failure probability behind [`DEFAULT_SAMPLES`].
pub const DEFAULT_EPSILON: f64 = 0.05;
pub const DEFAULT_DELTA: f64 = 0.01;
/// `samples_needed(0.05, 0.01)`.
pub const DEFAULT_SAMPLES: usize = 1060;
/// Default sensitivity constant for [`influential_list`].
pub const DEFAULT_C: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("failure probability {0} outside (0, 1)")]
    Delta(f64),
    #[error("accuracy radius {0} must be positive and finite")]
    Epsilon(f64),
    #[error("sensitivity constant {0} must be positive and finite")]
    Constant(f64),
    #[error(transparent)]
    Function(#[from] BoolFnError),
}

/// Classical query access to `f`.
pub trait BooleanOracle {
    fn arity(&self) -> usize;
    fn query(&self, x: u32) -> bool;
}

impl BooleanOracle for TruthTable {
    fn arity(&self) -> usize {
        self.n()
    }

    fn query(&self, x: u32) -> bool {
        self.eval(x)
    }
}

/// A function known only through evaluations.
pub struct BlackBox<F> {
    n: usize,
    f: F,
}

impl<F: Fn(u32) -> bool> BlackBox<F> {
    pub fn new(n: usize, f: F) -> Result<Self, BoolFnError> {
        crate::boolfn::check_arity(n)?;
        Ok(BlackBox { n, f })
    }
}

impl<F: Fn(u32) -> bool> BooleanOracle for BlackBox<F> {
    fn arity(&self) -> usize {
        self.n
    }

    fn query(&self, x: u32) -> bool {
        (self.f)(x)
    }
}

/// A function together with its simulated circuit. The output law is
/// computed once, so repeated runs cost only the draws.
#[derive(Debug, Clone)]
pub struct QuantumOracle {
    table: TruthTable,
    distribution: BvDistribution,
    influences: InfluenceVector,
}

impl QuantumOracle {
    pub fn new(table: TruthTable) -> Self {
        let spectrum = walsh_spectrum(&table);
        let distribution = bv_distribution(&spectrum);
        let influences = influence_vector_from_spectrum(&spectrum);
        QuantumOracle { table, distribution, influences }
    }

    pub fn n(&self) -> usize {
        self.table.n()
    }

    pub fn table(&self) -> &TruthTable {
        &self.table
    }

    pub fn distribution(&self) -> &BvDistribution {
        &self.distribution
    }

    /// Exact influences, for reference.
    pub fn influences(&self) -> &InfluenceVector {
        &self.influences
    }

    /// `m` circuit runs.
    pub fn run(&self, m: usize, seed: u64) -> SampleBatch {
        bv_sample(&self.distribution, m, seed)
    }
}

impl BooleanOracle for QuantumOracle {
    fn arity(&self) -> usize {
        self.n()
    }

    fn query(&self, x: u32) -> bool {
        self.table.eval(x)
    }
}

/// Failure probability `2 exp(-2 m eps^2)` of the two-sided Hoeffding
/// bound for the mean of `m` values in `[0, 1]`.
pub fn hoeffding_failure_bound(m: usize, epsilon: f64) -> f64 {
    2.0 * (-2.0 * m as f64 * epsilon * epsilon).exp()
}

/// Radius `eps = sqrt(ln(2/delta) / 2m)` at which the failure bound equals
/// `delta`.
pub fn hoeffding_radius(m: usize, delta: f64) -> Result<f64, EstimateError> {
    if m == 0 {
        return Err(EstimateError::ZeroSamples);
    }
    check_delta(delta)?;
    Ok(((2.0 / delta).ln() / (2.0 * m as f64)).sqrt())
}

/// Smallest `m` with failure bound at most `delta` at radius `epsilon`.
pub fn samples_needed(epsilon: f64, delta: f64) -> Result<usize, EstimateError> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(EstimateError::Epsilon(epsilon));
    }
    check_delta(delta)?;
    Ok(((2.0 / delta).ln() / (2.0 * epsilon * epsilon)).ceil() as usize)
}

fn check_delta(delta: f64) -> Result<(), EstimateError> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(EstimateError::Delta(delta))
    }
}

/// Output of the quantum estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// `l_i`: runs with `y_i = 1`.
    pub ones: Vec<u64>,
    /// `p_i = l_i / m`.
    pub estimates: Vec<f64>,
    /// `sum_i l_i / m`, the total-influence estimate.
    pub total: f64,
    /// One circuit run queries the oracle once.
    pub oracle_calls: u64,
}

impl EstimateReport {
    fn from_batch(batch: &SampleBatch) -> Self {
        let ones = batch.column_ones();
        let m = batch.m as f64;
        let estimates = ones.iter().map(|&l| l as f64 / m).collect();
        let total = ones.iter().sum::<u64>() as f64 / m;
        EstimateReport {
            n: batch.n,
            m: batch.m,
            seed: batch.seed,
            ones,
            estimates,
            total,
            oracle_calls: batch.m as u64,
        }
    }

    /// Radius that holds for every single `p_i` with probability at least
    /// `confidence`.
    pub fn epsilon_at(&self, confidence: f64) -> Result<f64, EstimateError> {
        hoeffding_radius(self.m, 1.0 - confidence)
    }
}

/// Runs the circuit `m` times and reports the per-position one-fractions.
pub fn algorithm1(oracle: &QuantumOracle, m: usize, seed: u64) -> Result<EstimateReport, EstimateError> {
    if m == 0 {
        return Err(EstimateError::ZeroSamples);
    }
    Ok(EstimateReport::from_batch(&oracle.run(m, seed)))
}

/// Variables seen at least once in `m` runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfluentialList {
    pub m: usize,
    pub seed: u64,
    pub variables: Vec<usize>,
    pub ones: Vec<u64>,
    pub c: f64,
    /// Influence level `c / m` the guarantee applies to.
    pub threshold: f64,
    /// `1 - e^(-c)`: lower bound on the chance that a variable with
    /// influence at least `c / m` is listed.
    pub guarantee: f64,
}

/// Lists every `x_i` with `l_i >= 1`.
///
/// Soundness is unconditional: a variable of influence 0 never produces a
/// one, so it is never listed.
pub fn influential_list(
    oracle: &QuantumOracle,
    m: usize,
    c: f64,
    seed: u64,
) -> Result<InfluentialList, EstimateError> {
    if !(c.is_finite() && c > 0.0) {
        return Err(EstimateError::Constant(c));
    }
    let report = algorithm1(oracle, m, seed)?;
    let variables = (1..=report.n).filter(|&i| report.ones[i - 1] > 0).collect();
    Ok(InfluentialList {
        m,
        seed,
        variables,
        ones: report.ones,
        c,
        threshold: c / m as f64,
        guarantee: 1.0 - (-c).exp(),
    })
}

/// Estimate of a single influence from `m` uniform input pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassicalEstimate {
    pub variable: usize,
    pub m: usize,
    pub seed: u64,
    /// Sampled `x` with `f(x XOR alpha^i) != f(x)`.
    pub changed: u64,
    /// `q_i = changed / m`.
    pub estimate: f64,
    /// Two evaluations per sample.
    pub oracle_calls: u64,
}

/// Draws `m` inputs uniformly with replacement and counts those on which
/// `x_i` is pivotal.
pub fn classical_estimate<O: BooleanOracle + ?Sized>(
    oracle: &O,
    i: usize,
    m: usize,
    seed: u64,
) -> Result<ClassicalEstimate, EstimateError> {
    let mut rng = seeded_rng(seed);
    classical_with_rng(oracle, i, m, seed, &mut rng)
}

fn classical_with_rng<O: BooleanOracle + ?Sized, R: Rng>(
    oracle: &O,
    i: usize,
    m: usize,
    seed: u64,
    rng: &mut R,
) -> Result<ClassicalEstimate, EstimateError> {
    let n = oracle.arity();
    check_index(i, n)?;
    if m == 0 {
        return Err(EstimateError::ZeroSamples);
    }
    let mask = 1u32 << (i - 1);
    let size = 1u64 << n;
    let changed = (0..m)
        .filter(|_| {
            let x = rng.gen_range(0..size) as u32;
            oracle.query(x) != oracle.query(x ^ mask)
        })
        .count() as u64;
    Ok(ClassicalEstimate {
        variable: i,
        m,
        seed,
        changed,
        estimate: changed as f64 / m as f64,
        oracle_calls: 2 * m as u64,
    })
}

/// Classical estimates for `x_1..x_n`, each from its own fresh sample set,
/// all drawn from one generator stream in variable order.
pub fn classical_all<O: BooleanOracle + ?Sized>(
    oracle: &O,
    m: usize,
    seed: u64,
) -> Result<Vec<ClassicalEstimate>, EstimateError> {
    let mut rng = seeded_rng(seed);
    (1..=oracle.arity()).map(|i| classical_with_rng(oracle, i, m, seed, &mut rng)).collect()
}

/// Query cost of estimating all `n` influences to the same `(m, eps, delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QueryLedger {
    pub n: usize,
    pub m: usize,
    pub quantum_runs: u64,
    pub quantum_oracle_calls: u64,
    pub classical_samples: u64,
    pub classical_oracle_calls: u64,
}

impl QueryLedger {
    pub fn new(n: usize, m: usize) -> Self {
        let (n64, m64) = (n as u64, m as u64);
        QueryLedger {
            n,
            m,
            quantum_runs: m64,
            quantum_oracle_calls: m64,
            classical_samples: n64 * m64,
            classical_oracle_calls: 2 * n64 * m64,
        }
    }

    /// Classical samples per quantum run; equals `n`.
    pub fn sample_ratio(&self) -> f64 {
        self.classical_samples as f64 / self.quantum_runs as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::Anf;

    fn oracle(src: &str, n: usize) -> QuantumOracle {
        QuantumOracle::new(Anf::parse(src, n).unwrap().to_truth_table())
    }

    #[test]
    fn linear_function_is_exact() {
        let r = algorithm1(&oracle("x1 + x3", 3), 250, 4).unwrap();
        assert_eq!(r.estimates, vec![1.0, 0.0, 1.0]);
        assert_eq!(r.total, 2.0);
        assert_eq!(r.oracle_calls, 250);
    }

    #[test]
    fn constant_function_reads_zero() {
        let r = algorithm1(&oracle("1", 5), 100, 9).unwrap();
        assert!(r.estimates.iter().all(|&p| p == 0.0));
        assert!(algorithm1(&oracle("1", 5), 0, 9).is_err());
    }

    #[test]
    fn and2_estimate_within_radius() {
        // 2 exp(-2 * 10^4 * 0.05^2) = 2e^-50
        let r = algorithm1(&oracle("x1*x2", 2), 10_000, 31).unwrap();
        for p in &r.estimates {
            assert!((p - 0.5).abs() < 0.05, "p = {p}");
        }
    }

    #[test]
    fn estimates_match_batch_columns() {
        let o = QuantumOracle::new(crate::boolfn::random_function(6, 12).unwrap());
        let r = algorithm1(&o, 777, 5).unwrap();
        let batch = o.run(777, 5);
        for i in 0..6 {
            let col = batch.outcomes.iter().filter(|&&y| (y >> i) & 1 == 1).count();
            assert_eq!(r.ones[i], col as u64);
            assert_eq!(r.estimates[i], col as f64 / 777.0);
        }
        assert_eq!(r.total, r.ones.iter().sum::<u64>() as f64 / 777.0);
    }

    #[test]
    fn hoeffding_examples() {
        let bound = hoeffding_failure_bound(100, 0.1);
        assert!((bound - 0.270_670_566_473_225_4).abs() < 1e-15);
        // the radius inverts the bound
        let eps = hoeffding_radius(100, bound).unwrap();
        assert!((eps - 0.1).abs() < 1e-12);
        let near_one = hoeffding_radius(50, 1.0 - 1e-12).unwrap();
        assert!((near_one - (2f64.ln() / 100.0).sqrt()).abs() < 1e-6);
        assert_eq!(samples_needed(0.05, 1e-6).unwrap(), 2902);
        assert_eq!(samples_needed(DEFAULT_EPSILON, DEFAULT_DELTA).unwrap(), DEFAULT_SAMPLES);
        assert!(hoeffding_failure_bound(2902, 0.05) <= 1e-6);
        assert!(hoeffding_failure_bound(2901, 0.05) > 1e-6);
    }

    #[test]
    fn hoeffding_domain_errors() {
        assert_eq!(hoeffding_radius(10, 0.0), Err(EstimateError::Delta(0.0)));
        assert_eq!(hoeffding_radius(10, 1.0), Err(EstimateError::Delta(1.0)));
        assert_eq!(hoeffding_radius(0, 0.5), Err(EstimateError::ZeroSamples));
        assert!(samples_needed(0.0, 0.5).is_err());
        assert!(samples_needed(0.1, -0.5).is_err());
    }

    #[test]
    fn epsilon_at_uses_report_size() {
        let r = algorithm1(&oracle("x1", 1), 1000, 0).unwrap();
        let eps = r.epsilon_at(0.95).unwrap();
        assert!((eps - hoeffding_radius(1000, 0.05).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn influential_list_examples() {
        let lin = influential_list(&oracle("x2 + x4", 5), 10, DEFAULT_C, 1).unwrap();
        assert_eq!(lin.variables, vec![2, 4]);
        assert!((lin.guarantee - 0.950_212_931_632_136).abs() < 1e-12);
        let cubic = influential_list(&oracle("x1*x2*x3", 6), 64, 16.0, 3).unwrap();
        assert!(cubic.variables.iter().all(|&i| i <= 3));
        assert_eq!(cubic.threshold, 0.25);
        assert!(influential_list(&oracle("x1", 2), 10, 0.0, 1).is_err());
    }

    #[test]
    fn classical_examples() {
        let zero = Anf::parse("0", 4).unwrap().to_truth_table();
        assert_eq!(classical_estimate(&zero, 2, 500, 1).unwrap().estimate, 0.0);
        let and2 = Anf::parse("x1*x2", 2).unwrap().to_truth_table();
        let q = classical_estimate(&and2, 1, 10_000, 8).unwrap();
        assert!((q.estimate - 0.5).abs() < 0.05);
        assert_eq!(q.oracle_calls, 20_000);
        assert!(classical_estimate(&and2, 3, 10, 1).is_err());
        assert!(classical_estimate(&and2, 1, 0, 1).is_err());
    }

    #[test]
    fn black_box_oracle_works_classically() {
        let maj = BlackBox::new(3, |x: u32| x.count_ones() >= 2).unwrap();
        let all = classical_all(&maj, 20_000, 5).unwrap();
        assert_eq!(all.len(), 3);
        for e in &all {
            assert!((e.estimate - 0.5).abs() < 0.03);
        }
    }

    #[test]
    fn query_ledger_counts() {
        let l = QueryLedger::new(8, 1000);
        assert_eq!(l.quantum_oracle_calls, 1000);
        assert_eq!(l.classical_oracle_calls, 16_000);
        assert_eq!(l.sample_ratio(), 8.0);
    }
}
