use occupancy::combinatorics::{enumerate_occupancies, log_multinomial_coeff, occupancy_count, DEFAULT_ENUMERATION_CAP};
use occupancy::distributions::{sample, MultinomialDist, MvhgDist};
use occupancy::entropy::{entropy_by_enumeration, multinomial_entropy, mvhg_entropy, EntropyUnit, SANDWICH_TOLERANCE};
use occupancy::oracle::{brute_force_mvhg, brute_force_partial_trace, exact_total};
use occupancy::physics::{boltzmann_distribution, BoxModel, SpectrumTruncation};
use occupancy::quantum::{
    empirical_information, holevo_chi, measurement_ledger, trace_out_environment, EntropyValue, HolevoMode,
    InitialState, MeasurementStep, Scenario,
};
use occupancy::{OccupancyDistribution, OccupancyVector, OneParticleDistribution};
use num_traits::One;
use proptest::prelude::*;

fn probs(max_colors: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 6 => 0.01f64..1.0], 1..=max_colors).prop_map(|mut w| {
        if w.iter().all(|&x| x == 0.0) {
            w[0] = 1.0;
        }
        let s: f64 = w.iter().sum();
        w.iter().map(|x| x / s).collect()
    })
}

fn urn(max_colors: usize, max_count: u64) -> impl Strategy<Value = OccupancyVector> {
    prop::collection::vec(0..=max_count, 1..=max_colors).prop_map(OccupancyVector::new)
}

fn urn_and_draws(max_colors: usize, max_count: u64) -> impl Strategy<Value = (OccupancyVector, u64)> {
    urn(max_colors, max_count).prop_flat_map(|u| {
        let total = u.total();
        (Just(u), 0..=total)
    })
}

fn one_particle(p: &[f64]) -> OneParticleDistribution {
    OneParticleDistribution::user(p.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn enumeration_matches_stars_and_bars(n in 0u64..12, k in 1usize..5) {
        let all: Vec<_> = enumerate_occupancies(n, k).unwrap().collect();
        prop_assert_eq!(all.len() as u128, occupancy_count(n, k).unwrap());
        prop_assert!(all.iter().all(|v| v.total() == n && v.num_colors() == k));
    }

    #[test]
    fn multinomial_coefficient_is_permutation_invariant(mut counts in prop::collection::vec(0i64..8, 1..6)) {
        let a = log_multinomial_coeff(&counts).value().unwrap();
        counts.reverse();
        let b = log_multinomial_coeff(&counts).value().unwrap();
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!(a >= 0.0);
    }

    #[test]
    fn multinomial_normalizes(n in 0u64..=8, p in probs(5)) {
        let d = MultinomialDist::new(n, one_particle(&p));
        let total: f64 = enumerate_occupancies(n, p.len()).unwrap().map(|x| d.pmf(&x).unwrap()).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn hypergeometric_normalizes((u, n) in urn_and_draws(5, 4)) {
        prop_assume!(u.total() <= 16 && n <= 8);
        let d = MvhgDist::new(u.clone(), n).unwrap();
        let total: f64 = enumerate_occupancies(n, u.num_colors()).unwrap().map(|x| d.pmf(&x).unwrap()).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn hypergeometric_system_environment_exchange((u, n) in urn_and_draws(4, 5)) {
        let d = MvhgDist::new(u.clone(), n).unwrap();
        let env = d.complement();
        for x in enumerate_occupancies(n, u.num_colors()).unwrap() {
            let a = d.pmf(&x).unwrap();
            let b = match u.checked_sub(&x) {
                Some(rest) => env.pmf(&rest).unwrap(),
                None => 0.0,
            };
            prop_assert!((a - b).abs() < 1e-14, "{} {} vs {}", x, a, b);
        }
        let (s, s_env) = (mvhg_entropy(&d).total, mvhg_entropy(&env).total);
        prop_assert!((s - s_env).abs() < 1e-10);
    }

    #[test]
    fn marginals_are_joint_marginalizations((u, n) in urn_and_draws(4, 4), c in 0usize..4) {
        prop_assume!(c < u.num_colors());
        let d = MvhgDist::new(u.clone(), n).unwrap();
        let marginal = d.marginal(c).unwrap();
        let mut joint = vec![0.0; n as usize + 1];
        for x in enumerate_occupancies(n, u.num_colors()).unwrap() {
            joint[x.counts()[c] as usize] += d.pmf(&x).unwrap();
        }
        for (a, b) in marginal.iter().zip(&joint) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn multinomial_report_is_consistent(n in 0u64..=30, p in probs(8)) {
        let r = multinomial_entropy(&MultinomialDist::new(n, one_particle(&p)));
        prop_assert!((r.total - (r.microstate_term - r.expected_log_w)).abs() < 1e-10);
        prop_assert!(r.total >= 0.0);
        prop_assert!(r.sandwich_holds(SANDWICH_TOLERANCE), "{:?}", r);
        let bits = r.in_unit(EntropyUnit::Bits);
        prop_assert!((bits.total * std::f64::consts::LN_2 - r.total).abs() < 1e-12);
        prop_assert_eq!(r.in_unit(EntropyUnit::KB).total, r.total);
    }

    #[test]
    fn decompositions_match_enumeration(n in 0u64..=5, p in probs(4), (u, m) in urn_and_draws(3, 4)) {
        let d = MultinomialDist::new(n, one_particle(&p));
        let e = entropy_by_enumeration(&d, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert!((multinomial_entropy(&d).total - e).abs() < 1e-10);
        let h = MvhgDist::new(u, m).unwrap();
        let e = entropy_by_enumeration(&h, DEFAULT_ENUMERATION_CAP).unwrap();
        let r = mvhg_entropy(&h);
        prop_assert!((r.total - e).abs() < 1e-10);
        prop_assert!((r.microstate_term - r.expected_log_w - r.total).abs() < 1e-10);
    }

    #[test]
    fn exact_oracles_agree((u, n) in urn_and_draws(3, 3)) {
        let a = brute_force_mvhg(&u, n).unwrap();
        prop_assert!(exact_total(&a).is_one());
        prop_assert_eq!(&a, &brute_force_partial_trace(&u, n).unwrap());
    }

    #[test]
    fn traced_operator_is_the_hypergeometric_law((u, n) in urn_and_draws(3, 4)) {
        let rho = trace_out_environment(&u, n).unwrap();
        let d = MvhgDist::new(u, n).unwrap();
        for (x, w) in rho.weights() {
            prop_assert!((w - d.pmf(x).unwrap()).abs() < 1e-15);
        }
        prop_assert!((rho.von_neumann_entropy() - mvhg_entropy(&d).total).abs() < 1e-10);
    }

    #[test]
    fn empirical_information_is_non_negative((u, n) in urn_and_draws(5, 25)) {
        prop_assert!(empirical_information(&u, n).unwrap() >= -1e-12);
    }

    #[test]
    fn holevo_is_non_negative(universe in 0u64..=8, n in 0u64..=3, p in probs(3)) {
        prop_assume!(n <= universe);
        let chi = holevo_chi(universe, n, &one_particle(&p), HolevoMode::Exact, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert!(chi.chi >= -1e-12);
    }

    #[test]
    fn ledger_gains_add_up_to_the_prior_entropy((u, n) in urn_and_draws(3, 6), p in probs(3)) {
        prop_assume!(p.len() == u.num_colors());
        let scenario = Scenario {
            initial: InitialState::Bayesian { particles: n, probs: p.clone() },
            steps: vec![
                MeasurementStep::PvmOnUniverse { urn: u.counts().to_vec() },
                MeasurementStep::Separate {},
                MeasurementStep::PvmOnSystem {},
            ],
        };
        let ledger = measurement_ledger(&scenario).unwrap();
        let prior = multinomial_entropy(&MultinomialDist::new(n, one_particle(&p))).total;
        let EntropyValue::Defined(total) = ledger.total_information else {
            return Err(TestCaseError::fail("total should be defined"));
        };
        prop_assert!((total - prior).abs() < 1e-10);
        for row in &ledger.steps {
            if let (Some(a), Some(b), Some(g)) =
                (row.pre_entropy.value(), row.post_entropy.value(), row.information_gained.value())
            {
                prop_assert!((a - b - g).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampling_is_seed_reproducible((u, n) in urn_and_draws(4, 6), seed in any::<u64>()) {
        let d = MvhgDist::new(u.clone(), n).unwrap();
        let a = sample(&d, 50, seed);
        prop_assert_eq!(&a, &sample(&d, 50, seed));
        prop_assert!(a.iter().all(|x| d.pmf(x).unwrap() > 0.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tighter_truncation_moves_z_by_less_than_the_bound(t in 30.0f64..3000.0, dims in prop::sample::select(vec![1u8, 3])) {
        let model = BoxModel::new(9.11e-31, t, 5e-9, dims).unwrap();
        let loose = boltzmann_distribution(&model, &SpectrumTruncation::new(1e-6, 20_000_000).unwrap()).unwrap();
        let tight = boltzmann_distribution(&model, &SpectrumTruncation::new(1e-13, 20_000_000).unwrap()).unwrap();
        let rel = (tight.partition_function - loose.partition_function) / loose.partition_function;
        prop_assert!((0.0..=1e-6).contains(&rel), "{}", rel);
    }
}
