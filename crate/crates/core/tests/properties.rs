//! Cross-module properties: unit-mode consistency, the equal-energy /
//! different-information corpora, and the informatic Clausius margin.

use std::f64::consts::LN_2;

use infotherm::bitstream::{
    analyze, file_heat_and_entropy, file_temperature, generate, randomness_test, Equilibrium,
    GeneratorKind, GeneratorSpec,
};
use infotherm::fiber::{simulate_chain, FiberChainConfig};
use infotherm::ledger::broadcast_balance;
use infotherm::twolevel::{entropy_exact, temperature_closed, transfer_balance, TwoLevelGas};
use infotherm::{Energy, PhysConstants};
use proptest::prelude::*;

fn corpus(kind: GeneratorKind, len: usize, seed: u64) -> infotherm::bitstream::Bitstream {
    generate(&GeneratorSpec::new(kind, len, seed)).unwrap()
}

#[test]
fn si_and_reduced_modes_agree() {
    let si = PhysConstants::si();
    let red = PhysConstants::reduced();
    let eps_j = 4.1e-21;
    let scale = eps_j / si.k();

    let t_si = file_temperature(Energy(eps_j), &si).unwrap().value();
    let t_red = file_temperature(Energy(1.0), &red).unwrap().value();
    assert!((t_si / scale - t_red).abs() / t_red < 1e-12);

    let g_si = TwoLevelGas::new(5000, 700, Energy(eps_j)).unwrap();
    let g_red = TwoLevelGas::new(5000, 700, Energy(1.0)).unwrap();
    let a = temperature_closed(&g_si, &si).unwrap().value() / scale;
    let b = temperature_closed(&g_red, &red).unwrap().value();
    assert!((a - b).abs() / b < 1e-12);
    assert_eq!(
        entropy_exact(&g_si).unwrap(),
        entropy_exact(&g_red).unwrap()
    );

    let ts = transfer_balance(5000, 700, 300, Energy(eps_j), &si).unwrap();
    let tr = transfer_balance(5000, 700, 300, Energy(1.0), &red).unwrap();
    assert!((ts.net.value() - tr.net.value()).abs() < 1e-9);
    assert!((ts.clausius_lower_bound.value() - tr.clausius_lower_bound.value()).abs() < 1e-9);
}

#[test]
fn equal_energy_different_information() {
    let len = 1 << 20;
    let kinds = [
        (GeneratorKind::OrderedBlock, 0.0),
        (GeneratorKind::Alternating, 0.0),
        (GeneratorKind::Markov { q: 0.5 }, LN_2),
    ];
    for (kind, expected_rate) in kinds {
        let s = corpus(kind, len, 21);
        let stats = analyze(&s, 1).unwrap();
        assert!(
            (stats.p_hat - 0.5).abs() < 0.01,
            "{kind}: p_hat {}",
            stats.p_hat
        );
        let rate = stats.info_rate_markov.unwrap().nats();
        assert!((rate - expected_rate).abs() < 0.01, "{kind}: rate {rate}");
    }
}

#[test]
fn non_random_corpora_leave_a_margin() {
    let len = 1 << 16;
    let kinds = [
        GeneratorKind::OrderedBlock,
        GeneratorKind::Alternating,
        GeneratorKind::Markov { q: 0.05 },
        GeneratorKind::Markov { q: 0.2 },
        GeneratorKind::Markov { q: 0.4 },
    ];
    for kind in kinds {
        let stats = analyze(&corpus(kind, len, 4), 3).unwrap();
        assert_ne!(stats.equilibrium, Equilibrium::Random, "{kind}");
        let res = broadcast_balance(&stats, Energy(1.0), 4, &PhysConstants::reduced()).unwrap();
        assert!(res.clausius_margin.value() > 0.0, "{kind}");
        assert!(res.verdict.is_satisfied());
    }
}

#[test]
fn fair_coin_margin_vanishes() {
    let len = 1 << 20;
    let stats = analyze(&corpus(GeneratorKind::Bernoulli { p: 0.5 }, len, 8), 3).unwrap();
    let res = broadcast_balance(&stats, Energy(1.0), 2, &PhysConstants::reduced()).unwrap();
    assert!(res.clausius_margin.value() / (len as f64) < 0.01);
}

#[test]
fn fiber_heat_matches_file_heat() {
    let cfg = FiberChainConfig::with_span_gain(Energy(2.0), 0.25, 50.0, 3, 1000).unwrap();
    let chain = simulate_chain(&cfg, &PhysConstants::reduced()).unwrap();
    let (q, s) = file_heat_and_entropy(1000, Energy(2.0)).unwrap();
    for c in &chain.cycles {
        assert!((c.steps[0].heat.value() - q.value()).abs() < 1e-12);
        assert_eq!(c.info.nats(), s.value());
    }
}

#[test]
fn randomness_mostly_accepts_fair_coins() {
    let random = (0..200u64)
        .filter(|&seed| {
            let s = corpus(GeneratorKind::Bernoulli { p: 0.5 }, 4096, seed);
            randomness_test(&s).unwrap() == Equilibrium::Random
        })
        .count();
    assert!(random >= 190, "{random}/200");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iid_information_never_exceeds_capacity(p in 0.0f64..=1.0, len in 1usize..5000, seed in any::<u64>()) {
        let s = corpus(GeneratorKind::Bernoulli { p }, len, seed);
        let st = analyze(&s, 0).unwrap();
        prop_assert!(st.info_iid.nats() <= len as f64 * LN_2 + 1e-9);
        if let Some(r) = st.info_rate_markov {
            prop_assert!(r.nats() <= LN_2 + 1e-9);
        }
    }

    #[test]
    fn markov_generator_is_balanced_and_deterministic(q in 0.05f64..0.95, seed in any::<u64>()) {
        let spec = GeneratorSpec::new(GeneratorKind::Markov { q }, 20_000, seed);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        prop_assert_eq!(a.bits(), b.bits());
        let frac = a.ones() as f64 / a.len() as f64;
        prop_assert!((frac - 0.5).abs() < 0.1);
    }
}
