use bvinf::boolfn::{decode, encode, flip_input};
use bvinf::learn::{windows, TermClass};
use bvinf::spectrum::{correlation, fwht};
use bvinf::*;
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn arb_anf(max_n: usize) -> impl Strategy<Value = Anf> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u32..(1 << n), 0..12).prop_map(move |ms| Anf::new(n, ms).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn anf_table_agrees_with_direct_evaluation(anf in arb_anf(12)) {
        let table = anf.to_truth_table();
        for x in 0..table.len() as u32 {
            prop_assert_eq!(table.eval(x), anf.eval(x));
        }
        prop_assert_eq!(Anf::from_truth_table(&table), anf);
    }

    #[test]
    fn canonical_rendering_reparses(anf in arb_anf(10)) {
        let reparsed = Anf::parse(&anf.to_string(), anf.n()).unwrap();
        prop_assert_eq!(reparsed, anf);
    }

    #[test]
    fn flip_toggles_encoded_bit(n in 1usize..=24, raw in any::<u32>(), i_raw in any::<usize>()) {
        let x = decode(raw & ((1u64 << n) - 1) as u32, n);
        let i = i_raw % n + 1;
        let flipped = flip_input(&x, i).unwrap();
        prop_assert_eq!(encode(&flipped).unwrap(), encode(&x).unwrap() ^ (1 << (i - 1)));
        prop_assert_eq!(flip_input(&flipped, i).unwrap(), x);
    }

    #[test]
    fn spectral_identities_hold(n in 1usize..=8, seed in any::<u64>()) {
        let f = random_function(n, seed).unwrap();
        let s = walsh_spectrum(&f);
        let size = 1i64 << n;
        prop_assert_eq!(s.squared_sum(), 1u128 << (2 * n));
        for &w in s.coefficients() {
            prop_assert!(w % 2 == 0 && w.abs() <= size);
        }
        let c = correlation(&f).unwrap();
        prop_assert_eq!(c.get(0), size);
        for (y, t) in c.walsh().into_iter().enumerate() {
            prop_assert_eq!(t, s.coefficients()[y].pow(2));
        }
        for i in 1..=n {
            let counts = influence_by_definition(&f, i).unwrap();
            let (zero, one) = s.column_weights(i).unwrap();
            prop_assert_eq!(zero, u128::from(counts.unchanged) << n);
            prop_assert_eq!(one, u128::from(counts.changed) << n);
            prop_assert_eq!(c.get(1 << (i - 1)) as i128 * size as i128, zero as i128 - one as i128);
        }
        let mut twice = f.signs();
        fwht(&mut twice);
        fwht(&mut twice);
        prop_assert!(twice.iter().zip(f.signs()).all(|(a, b)| *a == size * b));
    }

    #[test]
    fn quadratic_and_cubic_windows_are_disjoint(eps in 1e-9f64..0.125) {
        let (q, c) = windows(eps).unwrap();
        prop_assert!(!q.intersects(&c));
        for w in [q, c] {
            prop_assert!(!w.contains(0.0) && !w.contains(1.0));
        }
    }

    #[test]
    fn learner_replays_bit_for_bit(seed in any::<u64>()) {
        let o = QuantumOracle::new(Anf::parse("x1 + x2*x3 + x4*x5*x6", 7).unwrap().to_truth_table());
        prop_assert_eq!(algorithm3(&o, 200, 0.1, seed).unwrap(), algorithm3(&o, 200, 0.1, seed).unwrap());
        prop_assert_eq!(algorithm2(&o, 12, seed).unwrap(), algorithm2(&o, 12, seed).unwrap());
    }
}

#[test]
fn influence_routes_agree_on_random_corpus() {
    for k in 0..200u64 {
        let n = (k % 10) as usize + 1;
        let f = random_function(n, 7_000 + k).unwrap();
        let s = walsh_spectrum(&f);
        for i in 1..=n {
            assert_eq!(
                influence_by_definition(&f, i).unwrap().influence(),
                influence_by_spectrum(&s, i).unwrap(),
                "n={n} seed={} i={i}",
                7_000 + k
            );
        }
    }
}

#[test]
fn samples_fit_the_exact_law() {
    // chi-squared goodness of fit over the support, significance 1e-4
    for n in 1..=6 {
        let f = random_function(n, 90 + n as u64).unwrap();
        let d = bv_distribution(&walsh_spectrum(&f));
        let m = 100_000;
        let counts = bv_sample(&d, m, 1234 + n as u64).histogram();
        let support: Vec<u32> = d.support().collect();
        if support.len() < 2 {
            continue;
        }
        let stat: f64 = support
            .iter()
            .map(|&y| {
                let expected = m as f64 * d.probability(y).to_f64();
                (counts[y as usize] as f64 - expected).powi(2) / expected
            })
            .sum();
        let critical = ChiSquared::new((support.len() - 1) as f64).unwrap().inverse_cdf(1.0 - 1e-4);
        assert!(stat < critical, "n={n}: chi2 {stat} >= {critical}");
        assert!(counts.iter().enumerate().all(|(y, &c)| c == 0 || d.weights()[y] > 0));
    }
}

#[test]
fn statevector_agrees_with_spectrum_up_to_ten_variables() {
    for n in 1..=10 {
        let f = random_function(n, 300 + n as u64).unwrap();
        let s = walsh_spectrum(&f);
        for (y, a) in statevector_bv(&f).unwrap().iter().enumerate() {
            assert!((a - s.normalized(y as u32)).abs() <= 1e-12);
        }
    }
}

#[test]
fn two_class_error_rate_on_and2() {
    // Misreading x1 of x1*x2 as linear or absent happens with probability 2^-9 at rho = 10.
    let o = QuantumOracle::new(Anf::parse("x1*x2", 2).unwrap().to_truth_table());
    let runs = 100_000u64;
    let errors = (0..runs)
        .filter(|&seed| algorithm2(&o, 10, seed).unwrap().class_of(1) != Some(TermClass::Quadratic))
        .count() as f64;
    let p = (-9f64).exp2();
    let slack = 3.0 * (p * (1.0 - p) / runs as f64).sqrt();
    assert!(errors / runs as f64 <= p + slack, "error rate {}", errors / runs as f64);
}

#[test]
fn windowed_success_meets_hoeffding_floor() {
    let o = QuantumOracle::new(Anf::parse("x1 + x2*x3 + x4*x5*x6", 6).unwrap().to_truth_table());
    let (lambda, eps, trials) = (200usize, 0.1, 2000u64);
    let floor = 1.0 - 2.0 * (-2.0 * lambda as f64 * eps * eps).exp();
    let expected = [
        TermClass::Linear,
        TermClass::Quadratic,
        TermClass::Quadratic,
        TermClass::Cubic,
        TermClass::Cubic,
        TermClass::Cubic,
    ];
    let mut hits = [0u64; 6];
    for seed in 0..trials {
        let r = algorithm3(&o, lambda, eps, seed).unwrap();
        for (k, class) in expected.iter().enumerate() {
            hits[k] += u64::from(r.class_of(k + 1) == Some(*class));
        }
    }
    for (k, h) in hits.iter().enumerate() {
        let rate = *h as f64 / trials as f64;
        assert!(rate >= floor, "x{} success {rate} < {floor}", k + 1);
    }
}
