//! Checks every exact identity linking a function, its spectrum, its
//! autocorrelation and its circuit output law.

use serde::Serialize;

use crate::boolfn::TruthTable;
use crate::bvsim::{bv_distribution, statevector_bv, STATEVECTOR_MAX_VARS};
use crate::spectrum::{correlation, fwht, influence_by_definition, influence_by_spectrum, walsh_spectrum};

/// Above this, the quadratic-time autocorrelation is not run.
pub const VERIFY_CORRELATION_MAX_VARS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity: &'static str,
    pub status: Status,
    pub detail: String,
}

impl IdentityCheck {
    fn new(identity: &'static str, ok: bool, detail: String) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        IdentityCheck { identity, status, detail }
    }

    fn skipped(identity: &'static str, detail: String) -> Self {
        IdentityCheck { identity, status: Status::Skipped, detail }
    }
}

pub fn all_passed(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}

pub fn verify_identities(f: &TruthTable) -> Vec<IdentityCheck> {
    let n = f.n();
    let size = f.len() as u128;
    let spectrum = walsh_spectrum(f);
    let mut checks = Vec::new();

    let mismatched: Vec<usize> = (1..=n)
        .filter(|&i| {
            influence_by_definition(f, i).unwrap().influence() != influence_by_spectrum(&spectrum, i).unwrap()
        })
        .collect();
    checks.push(IdentityCheck::new(
        "influence_equals_spectral_mass",
        mismatched.is_empty(),
        format!("variables with mismatch: {mismatched:?}"),
    ));

    let energy = spectrum.squared_sum();
    checks.push(IdentityCheck::new(
        "parseval",
        energy == size * size,
        format!("sum W^2 = {energy}, 4^n = {}", size * size),
    ));

    let bad_partition: Vec<usize> = (1..=n)
        .filter(|&i| {
            let counts = influence_by_definition(f, i).unwrap();
            let (zero, one) = spectrum.column_weights(i).unwrap();
            zero != u128::from(counts.unchanged) * size || one != u128::from(counts.changed) * size
        })
        .collect();
    checks.push(IdentityCheck::new(
        "column_mass_equals_pivot_partition",
        bad_partition.is_empty(),
        format!("variables with mismatch: {bad_partition:?}"),
    ));

    let distribution = bv_distribution(&spectrum);
    let bad_marginal: Vec<usize> = (1..=n)
        .filter(|&i| distribution.marginal_one(i).unwrap() != influence_by_definition(f, i).unwrap().influence())
        .collect();
    checks.push(IdentityCheck::new(
        "output_marginal_equals_influence",
        bad_marginal.is_empty(),
        format!("variables with mismatch: {bad_marginal:?}"),
    ));

    let signs = f.signs();
    let mut twice = signs.clone();
    fwht(&mut twice);
    fwht(&mut twice);
    let inverted = twice.iter().zip(&signs).all(|(a, b)| *a == size as i64 * b);
    checks.push(IdentityCheck::new("transform_self_inverse", inverted, format!("scale 2^n = {size}")));

    if n <= VERIFY_CORRELATION_MAX_VARS {
        let c = correlation(f).expect("n within correlation cap");
        let transformed = c.walsh();
        let bad_y = (0..f.len())
            .filter(|&y| {
                let w = spectrum.coefficients()[y];
                transformed[y] != w * w
            })
            .count();
        checks.push(IdentityCheck::new(
            "autocorrelation_transform_equals_squared_spectrum",
            bad_y == 0,
            format!("{bad_y} of {size} outputs mismatched"),
        ));
        let bad_unit: Vec<usize> = (1..=n)
            .filter(|&i| {
                let (zero, one) = spectrum.column_weights(i).unwrap();
                let lhs = i128::from(c.get(1 << (i - 1))) * size as i128;
                lhs != zero as i128 - one as i128
            })
            .collect();
        checks.push(IdentityCheck::new(
            "autocorrelation_at_unit_vectors",
            bad_unit.is_empty(),
            format!("variables with mismatch: {bad_unit:?}"),
        ));
    } else {
        let why = format!("n = {n} exceeds {VERIFY_CORRELATION_MAX_VARS}");
        checks.push(IdentityCheck::skipped("autocorrelation_transform_equals_squared_spectrum", why.clone()));
        checks.push(IdentityCheck::skipped("autocorrelation_at_unit_vectors", why));
    }

    if n <= STATEVECTOR_MAX_VARS {
        let amps = statevector_bv(f).expect("n within statevector cap");
        let worst = amps
            .iter()
            .enumerate()
            .map(|(y, a)| (a - spectrum.normalized(y as u32)).abs())
            .fold(0.0f64, f64::max);
        checks.push(IdentityCheck::new(
            "statevector_matches_spectrum",
            worst <= 1e-12,
            format!("max abs deviation {worst:e}"),
        ));
    } else {
        checks.push(IdentityCheck::skipped(
            "statevector_matches_spectrum",
            format!("n = {n} exceeds {STATEVECTOR_MAX_VARS}"),
        ));
    }

    checks
}
