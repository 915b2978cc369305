//! Measurement statistics of the Bernstein-Vazirani circuit.
//!
//! After `H^n`, the phase oracle `(-1)^f(x)` and `H^n` again, the register
//! holds `sum_y S_f(y) |y>`, so a measurement returns `y` with probability
//! `S_f(y)^2 = W_f(y)^2 / 4^n`. Sampling draws straight from that law; the
//! gate-level [`statevector_bv`] exists to cross-check it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boolfn::{check_index, BoolFnError, TruthTable};
use crate::dyadic::Dyadic;
use crate::spectrum::WalshSpectrum;

/// Largest register simulated by [`statevector_bv`].
pub const STATEVECTOR_MAX_VARS: usize = 12;

/// Exact output law `Pr(y) = W_f(y)^2 / 4^n`.
///
/// Weights are kept as integers over the common denominator `4^n`; the
/// sampler inverts their cumulative sum with an integer uniform draw, so
/// no floating-point rounding enters the sampling path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BvDistribution {
    n: usize,
    weights: Vec<u64>,
    // (outcome, running weight up to and including it), zero-weight outcomes skipped
    cumulative: Vec<(u32, u64)>,
}

impl BvDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Integer weights `W_f(y)^2`, indexed by `enc(y)`.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// `4^n`, the sum of all weights.
    pub fn total_weight(&self) -> u64 {
        1u64 << (2 * self.n)
    }

    pub fn probability(&self, y: u32) -> Dyadic {
        Dyadic::new(u128::from(self.weights[y as usize]), 2 * self.n as u32)
    }

    pub fn probabilities(&self) -> Vec<Dyadic> {
        (0..self.weights.len() as u32).map(|y| self.probability(y)).collect()
    }

    /// Outcomes with non-zero probability.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.cumulative.iter().map(|&(y, _)| y)
    }

    /// `Pr(y_i = 1)`.
    pub fn marginal_one(&self, i: usize) -> Result<Dyadic, BoolFnError> {
        check_index(i, self.n)?;
        let bit = 1u32 << (i - 1);
        let mass: u128 = self
            .support()
            .filter(|y| y & bit != 0)
            .map(|y| u128::from(self.weights[y as usize]))
            .sum();
        Ok(Dyadic::new(mass, 2 * self.n as u32))
    }

    /// One measurement outcome.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u = rng.gen_range(0..self.total_weight());
        let k = self.cumulative.partition_point(|&(_, c)| c <= u);
        self.cumulative[k].0
    }
}

/// Squared, normalized spectrum.
pub fn bv_distribution(s: &WalshSpectrum) -> BvDistribution {
    let weights: Vec<u64> = s.coefficients().iter().map(|&w| (w * w) as u64).collect();
    let mut running = 0u64;
    let cumulative = weights
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0)
        .map(|(y, &w)| {
            running += w;
            (y as u32, running)
        })
        .collect();
    debug_assert_eq!(running, 1u64 << (2 * s.n()));
    BvDistribution { n: s.n(), weights, cumulative }
}

/// `m` measurement outcomes `y^1..y^m` and the seed that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleBatch {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub outcomes: Vec<u32>,
}

impl SampleBatch {
    /// Number of outcomes with `y_i = 1`, for every `i`.
    pub fn column_ones(&self) -> Vec<u64> {
        let mut ones = vec![0u64; self.n];
        for &y in &self.outcomes {
            let mut rest = y;
            while rest != 0 {
                ones[rest.trailing_zeros() as usize] += 1;
                rest &= rest - 1;
            }
        }
        ones
    }

    /// Occurrences of every outcome, indexed by `enc(y)`.
    pub fn histogram(&self) -> Vec<u64> {
        let mut counts = vec![0u64; 1 << self.n];
        for &y in &self.outcomes {
            counts[y as usize] += 1;
        }
        counts
    }
}

/// Generator behind every seeded draw in the crate: ChaCha8 seeded through
/// `seed_from_u64`, consumed sequentially. The stream is portable across
/// platforms.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` independent circuit runs.
pub fn bv_sample(d: &BvDistribution, m: usize, seed: u64) -> SampleBatch {
    let mut rng = seeded_rng(seed);
    let outcomes = (0..m).map(|_| d.draw(&mut rng)).collect();
    SampleBatch { n: d.n, m, seed, outcomes }
}

/// Dense simulation of `H^n -> (-1)^f(x) -> H^n` on `|0...0>`.
///
/// The `|1>` ancilla of the full circuit only contributes the phase
/// kickback, so it is folded into the oracle and never materialized.
pub fn statevector_bv(f: &TruthTable) -> Result<Vec<f64>, BoolFnError> {
    let n = f.n();
    if n > STATEVECTOR_MAX_VARS {
        return Err(BoolFnError::VariableCount(n));
    }
    let mut amps = vec![0.0f64; 1 << n];
    amps[0] = 1.0;
    hadamard_all(&mut amps, n);
    for (x, a) in amps.iter_mut().enumerate() {
        if f.eval(x as u32) {
            *a = -*a;
        }
    }
    hadamard_all(&mut amps, n);
    Ok(amps)
}

fn hadamard_all(amps: &mut [f64], n: usize) {
    for q in 0..n {
        hadamard(amps, q);
    }
}

fn hadamard(amps: &mut [f64], qubit: usize) {
    let half = 1 << qubit;
    for block in amps.chunks_exact_mut(2 * half) {
        let (lo, hi) = block.split_at_mut(half);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = (x + y) * std::f64::consts::FRAC_1_SQRT_2;
            *b = (x - y) * std::f64::consts::FRAC_1_SQRT_2;
        }
    }
}
