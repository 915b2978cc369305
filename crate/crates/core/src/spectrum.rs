//! Walsh spectra, exact influences and the autocorrelation function.
//!
//! Everything here is integer arithmetic. `W_f(y) = sum_x (-1)^(f(x) + y.x)`
//! is stored unnormalized, so `S_f(y) = W_f(y) / 2^n` and squared weights
//! live over the denominator `4^n`.

use serde::Serialize;

use crate::boolfn::{check_index, BoolFnError, TruthTable};
use crate::dyadic::Dyadic;

/// Largest `n` accepted by the quadratic-time [`correlation`] oracle.
pub const CORRELATION_NAIVE_MAX_VARS: usize = 16;

/// In-place unnormalized fast Walsh-Hadamard transform.
/// `data.len()` must be a power of two.
pub fn fwht(data: &mut [i64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "transform length {len} is not a power of two");
    let mut half = 1;
    while half < len {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half *= 2;
    }
}

/// Exact integer Walsh coefficients, indexed by `enc(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalshSpectrum {
    n: usize,
    coefficients: Vec<i64>,
}

impl WalshSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn get(&self, y: u32) -> i64 {
        self.coefficients[y as usize]
    }

    /// `S_f(y)` as a float.
    pub fn normalized(&self, y: u32) -> f64 {
        self.get(y) as f64 / (self.n as f64).exp2()
    }

    /// `sum_y W_f(y)^2`; Parseval says this is `4^n`.
    pub fn squared_sum(&self) -> u128 {
        self.coefficients.iter().map(|&w| (w as i128 * w as i128) as u128).sum()
    }

    /// `(sum_{y_i = 0} W^2, sum_{y_i = 1} W^2)`.
    pub fn column_weights(&self, i: usize) -> Result<(u128, u128), BoolFnError> {
        check_index(i, self.n)?;
        let bit = 1usize << (i - 1);
        let mut split = (0u128, 0u128);
        for (y, &w) in self.coefficients.iter().enumerate() {
            let sq = (w as i128 * w as i128) as u128;
            if y & bit == 0 {
                split.0 += sq;
            } else {
                split.1 += sq;
            }
        }
        Ok(split)
    }
}

/// Spectrum by one fast transform of the `(-1)^f` table; `Theta(n 2^n)`.
pub fn walsh_spectrum(f: &TruthTable) -> WalshSpectrum {
    let mut coefficients = f.signs();
    fwht(&mut coefficients);
    WalshSpectrum { n: f.n(), coefficients }
}

/// The partition of inputs by whether flipping `x_i` changes `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SensitivityCounts {
    pub n: usize,
    pub variable: usize,
    /// `|V_0| = |{x : f(x XOR alpha^i) = f(x)}|`
    pub unchanged: u64,
    /// `|V_1| = |{x : f(x XOR alpha^i) != f(x)}|`
    pub changed: u64,
}

impl SensitivityCounts {
    /// `I_f(i) = |V_1| / 2^n`.
    pub fn influence(&self) -> Dyadic {
        Dyadic::new(u128::from(self.changed), self.n as u32)
    }
}

/// Influence of `x_i` by counting the inputs it is pivotal on.
pub fn influence_by_definition(f: &TruthTable, i: usize) -> Result<SensitivityCounts, BoolFnError> {
    let changed = f.sensitive_count(i)?;
    Ok(SensitivityCounts { n: f.n(), variable: i, unchanged: f.len() as u64 - changed, changed })
}

/// Influence of `x_i` as the Walsh mass on outputs with `y_i = 1`.
pub fn influence_by_spectrum(s: &WalshSpectrum, i: usize) -> Result<Dyadic, BoolFnError> {
    let (_, ones) = s.column_weights(i)?;
    Ok(Dyadic::new(ones, 2 * s.n as u32))
}

/// All `n` influences and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfluenceVector {
    pub n: usize,
    pub values: Vec<Dyadic>,
    pub total: Dyadic,
}

impl InfluenceVector {
    pub fn get(&self, i: usize) -> Option<Dyadic> {
        i.checked_sub(1).and_then(|k| self.values.get(k).copied())
    }

    pub fn as_f64(&self) -> Vec<f64> {
        self.values.iter().map(Dyadic::to_f64).collect()
    }

    /// Indices `i` with `I_f(i) > 0`.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.values[i - 1] > Dyadic::ZERO).collect()
    }
}

/// Influences of every variable from a single spectrum pass.
pub fn influence_vector(f: &TruthTable) -> InfluenceVector {
    influence_vector_from_spectrum(&walsh_spectrum(f))
}

pub fn influence_vector_from_spectrum(s: &WalshSpectrum) -> InfluenceVector {
    let n = s.n;
    let mut mass = vec![0u128; n];
    for (y, &w) in s.coefficients.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let sq = (w as i128 * w as i128) as u128;
        let mut rest = y;
        while rest != 0 {
            mass[rest.trailing_zeros() as usize] += sq;
            rest &= rest - 1;
        }
    }
    let values: Vec<Dyadic> = mass.into_iter().map(|m| Dyadic::new(m, 2 * n as u32)).collect();
    let total = values.iter().copied().sum();
    InfluenceVector { n, values, total }
}

/// Autocorrelation `C_f(gamma) = sum_x (-1)^(f(x) + f(x XOR gamma))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correlation {
    n: usize,
    values: Vec<i64>,
}

impl Correlation {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, gamma: u32) -> i64 {
        self.values[gamma as usize]
    }

    /// `sum_gamma C_f(gamma) (-1)^(gamma.y)` for every `y`, i.e. `2^n`
    /// times the normalized transform `S_(C_f)(y)`.
    pub fn walsh(&self) -> Vec<i64> {
        let mut out = self.values.clone();
        fwht(&mut out);
        out
    }
}

/// Autocorrelation by direct double summation. Quadratic in `2^n`; kept
/// as the ground truth for [`correlation_fast`].
pub fn correlation(f: &TruthTable) -> Result<Correlation, BoolFnError> {
    let n = f.n();
    if n > CORRELATION_NAIVE_MAX_VARS {
        return Err(BoolFnError::VariableCount(n));
    }
    let size = f.len() as u32;
    let values = (0..size)
        .map(|gamma| {
            (0..size)
                .map(|x| if f.eval(x) == f.eval(x ^ gamma) { 1i64 } else { -1 })
                .sum()
        })
        .collect();
    Ok(Correlation { n, values })
}

/// Autocorrelation through the spectrum: inverse transform of `W_f^2`.
pub fn correlation_fast(f: &TruthTable) -> Correlation {
    let s = walsh_spectrum(f);
    let mut values: Vec<i64> = s.coefficients.iter().map(|&w| w * w).collect();
    fwht(&mut values);
    let n = f.n();
    for v in values.iter_mut() {
        *v >>= n;
    }
    Correlation { n, values }
}
