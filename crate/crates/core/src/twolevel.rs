//! The two-level gas: `L` sites, `n` of them excited to energy `ε`.
//!
//! In equilibrium every placement of the `n` excitations is equally likely,
//! so the entropy is `ln C(L, n)` (in units of `k`) and the internal energy is
//! `U = nε`. Differentiating `U` against `S` gives the occupation law
//!
//! ```text
//! n / (L - n) = exp(-ε / kT)      i.e.      T = ε / (k ln((L - n) / n))
//! ```
//!
//! For `n > L/2` this temperature is negative (population inversion); it is
//! returned as a signed value. At exactly `n = L/2` it diverges and is
//! reported as [`Error::InfiniteTemperature`].

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::rng::StreamRng;
use crate::units::{Energy, Entropy, PhysConstants, Temperature, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoLevelGas {
    states: u64,
    excited: u64,
    epsilon: Energy,
}

impl TwoLevelGas {
    pub fn new(states: u64, excited: u64, epsilon: Energy) -> Result<Self> {
        if states == 0 {
            return Err(Error::invalid("states", "a gas needs at least one state"));
        }
        if excited > states {
            return Err(Error::OccupationOutOfRange {
                states,
                excited,
                reason: "n must not exceed L",
            });
        }
        require_positive("epsilon", epsilon.0)?;
        Ok(TwoLevelGas {
            states,
            excited,
            epsilon,
        })
    }

    pub fn states(&self) -> u64 {
        self.states
    }

    pub fn excited(&self) -> u64 {
        self.excited
    }

    pub fn epsilon(&self) -> Energy {
        self.epsilon
    }

    /// `U = nε`.
    pub fn internal_energy(&self) -> Energy {
        Energy(self.excited as f64 * self.epsilon.0)
    }

    fn is_half_filled(&self) -> bool {
        2 * self.excited == self.states
    }
}

#[inline]
fn ln_factorial(m: u64) -> f64 {
    libm::lgamma(m as f64 + 1.0)
}

/// `ln C(L, n)`, evaluated through log-gamma so it never overflows.
pub fn log_multiplicity(states: u64, excited: u64) -> Result<f64> {
    if states == 0 {
        return Err(Error::invalid("states", "a gas needs at least one state"));
    }
    if excited > states {
        return Err(Error::OccupationOutOfRange {
            states,
            excited,
            reason: "n must not exceed L",
        });
    }
    if excited == 0 || excited == states {
        return Ok(0.0);
    }
    Ok(ln_factorial(states) - (ln_factorial(excited) + ln_factorial(states - excited)))
}

/// `S = k ln Ω`.
pub fn entropy_exact(gas: &TwoLevelGas) -> Result<Entropy> {
    log_multiplicity(gas.states, gas.excited).map(Entropy)
}

/// Stirling form `L ln L - n ln n - (L-n) ln(L-n)`.
pub fn entropy_stirling(gas: &TwoLevelGas) -> Result<Entropy> {
    let (l, n) = (gas.states, gas.excited);
    if n == 0 || n == l {
        return Err(Error::OccupationOutOfRange {
            states: l,
            excited: n,
            reason: "Stirling form needs 0 < n < L; use entropy_exact at the boundary",
        });
    }
    let (lf, nf, mf) = (l as f64, n as f64, (l - n) as f64);
    Ok(Entropy(lf * lf.ln() - nf * nf.ln() - mf * mf.ln()))
}

/// `ln((L - n) / n)`, written as a difference so that `n <-> L - n` flips
/// the sign exactly.
fn occupation_log_ratio(states: u64, excited: u64) -> f64 {
    ((states - excited) as f64).ln() - (excited as f64).ln()
}

/// Closed-form temperature `ε / (k ln((L - n)/n))`.
pub fn temperature_closed(gas: &TwoLevelGas, consts: &PhysConstants) -> Result<Temperature> {
    let (l, n) = (gas.states, gas.excited);
    if n == 0 || n == l {
        return Err(Error::ZeroTemperature {
            states: l,
            excited: n,
        });
    }
    if gas.is_half_filled() {
        return Err(Error::InfiniteTemperature {
            states: l,
            excited: n,
        });
    }
    Temperature::new(gas.epsilon.0 / (consts.k() * occupation_log_ratio(l, n)))
}

/// `T = ΔU / ΔS` by a central difference with a step of one excitation.
///
/// Agrees with [`temperature_closed`] to `O(1/L)`.
pub fn temperature_numeric(gas: &TwoLevelGas, consts: &PhysConstants) -> Result<Temperature> {
    let (l, n) = (gas.states, gas.excited);
    if l < 4 {
        return Err(Error::invalid("states", "finite difference needs L >= 4"));
    }
    if n == 0 || n == l {
        return Err(Error::OccupationOutOfRange {
            states: l,
            excited: n,
            reason: "central difference needs 1 <= n <= L - 1",
        });
    }
    if gas.is_half_filled() {
        return Err(Error::InfiniteTemperature {
            states: l,
            excited: n,
        });
    }
    let du = 2.0 * gas.epsilon.0;
    let ds = log_multiplicity(l, n + 1)? - log_multiplicity(l, n - 1)?;
    if ds == 0.0 {
        return Err(Error::InfiniteTemperature {
            states: l,
            excited: n,
        });
    }
    Temperature::new(du / (consts.k() * ds))
}

/// Expected excited count at temperature `T`: `L / (1 + exp(ε/kT))`.
pub fn occupation_from_temperature(
    states: u64,
    epsilon: Energy,
    temperature: Temperature,
    consts: &PhysConstants,
) -> Result<f64> {
    if states == 0 {
        return Err(Error::invalid("states", "a gas needs at least one state"));
    }
    let eps = require_positive("epsilon", epsilon.0)?;
    let x = eps / (consts.k() * temperature.value());
    Ok(states as f64 / (1.0 + x.exp()))
}

/// Entropy bookkeeping for moving a gas of `n_hot` excitations out of a hot
/// bath and dumping it into a colder one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferRecord {
    pub states: u64,
    pub n_hot: u64,
    pub n_cold: u64,
    /// `ΔQ = n_hot ε`.
    pub gas_heat: Energy,
    pub entropy_removed_hot: Entropy,
    pub entropy_added_cold: Entropy,
    /// `ΔS_C - ΔS_H`.
    pub net: Entropy,
    /// `ΔQ/T_C - ΔQ/T_H`, in units of `k`.
    pub clausius_lower_bound: Entropy,
    pub verdict: Verdict,
}

/// `1/T`, with half filling mapped to zero instead of an error.
fn inverse_temperature(
    states: u64,
    excited: u64,
    epsilon: Energy,
    consts: &PhysConstants,
) -> Result<f64> {
    let gas = TwoLevelGas::new(states, excited, epsilon)?;
    match temperature_closed(&gas, consts) {
        Ok(t) => Ok(1.0 / t.value()),
        Err(Error::InfiniteTemperature { .. }) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Transfer of a two-level gas from a hot bath (`n_hot` excited) to a cold
/// bath (`n_cold` excited).
///
/// A colder bath holds fewer excitations at equilibrium, so the ordering
/// `0 < n_cold <= n_hot < L` is required.
pub fn transfer_balance(
    states: u64,
    n_hot: u64,
    n_cold: u64,
    epsilon: Energy,
    consts: &PhysConstants,
) -> Result<TransferRecord> {
    if n_cold == 0 || n_hot >= states {
        return Err(Error::OccupationOutOfRange {
            states,
            excited: if n_cold == 0 { n_cold } else { n_hot },
            reason: "transfer needs 0 < n_cold and n_hot < L",
        });
    }
    if n_cold > n_hot {
        return Err(Error::invalid(
            "n_cold",
            format!("cold bath must have n_cold <= n_hot (got n_cold = {n_cold}, n_hot = {n_hot})"),
        ));
    }
    require_positive("epsilon", epsilon.0)?;

    let nh = n_hot as f64;
    let gas_heat = Energy(nh * epsilon.0);
    let removed = nh * occupation_log_ratio(states, n_hot);
    let added = nh * occupation_log_ratio(states, n_cold);
    let net = added - removed;

    let beta_hot = inverse_temperature(states, n_hot, epsilon, consts)?;
    let beta_cold = inverse_temperature(states, n_cold, epsilon, consts)?;
    let bound = gas_heat.0 / consts.k() * (beta_cold - beta_hot);

    Ok(TransferRecord {
        states,
        n_hot,
        n_cold,
        gas_heat,
        entropy_removed_hot: Entropy(removed),
        entropy_added_cold: Entropy(added),
        net: Entropy(net),
        clausius_lower_bound: Entropy(bound),
        verdict: Verdict::from_margin(net - bound),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McConfig {
    pub steps: u64,
    pub burn_in: u64,
    pub seed: u64,
    /// `kT`, in the same energy unit as `ε`.
    pub kt: Energy,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 {
            return Err(Error::invalid("steps", "must be positive"));
        }
        if self.burn_in >= self.steps {
            return Err(Error::invalid("burn_in", "must be smaller than steps"));
        }
        if self.steps - self.burn_in < 2 {
            return Err(Error::invalid(
                "steps",
                "need at least two samples after burn-in",
            ));
        }
        require_positive("kt", self.kt.0)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McStats {
    pub states: u64,
    /// Mean excited count over post-burn-in steps.
    pub mean_excited: f64,
    /// Batch-means standard error of `mean_excited`.
    pub std_error: f64,
    pub batches: u64,
    pub samples: u64,
    pub min_excited: u64,
    pub max_excited: u64,
    pub final_excited: u64,
    pub acceptance_rate: f64,
}

impl McStats {
    pub fn mean_fraction(&self) -> f64 {
        self.mean_excited / self.states as f64
    }
}

const MC_BATCHES: u64 = 20;

/// Single-site-flip Metropolis chain for the non-interacting two-level gas.
///
/// Starts from the ground state. Each step picks a site uniformly; a
/// de-excitation is always accepted, an excitation with probability
/// `exp(-ε/kT)` (one extra uniform draw). The excited count is recorded after
/// every post-burn-in step.
pub fn metropolis_sample(states: u64, epsilon: Energy, cfg: &McConfig) -> Result<McStats> {
    if states < 10 {
        return Err(Error::invalid(
            "states",
            "Metropolis sampling needs L >= 10",
        ));
    }
    let eps = require_positive("epsilon", epsilon.0)?;
    cfg.validate()?;

    let len = states as usize;
    let accept_up = (-eps / cfg.kt.0).exp();
    let mut rng = StreamRng::new(cfg.seed);
    let mut sites = vec![false; len];
    let mut excited: u64 = 0;
    let mut accepted: u64 = 0;

    let samples = cfg.steps - cfg.burn_in;
    let batches = MC_BATCHES.min(samples);
    let mut batch_sums = vec![0u128; batches as usize];
    let mut batch_counts = vec![0u64; batches as usize];
    let mut total: u128 = 0;
    let (mut lo, mut hi) = (u64::MAX, 0u64);

    for step in 0..cfg.steps {
        let i = rng.index(len);
        if sites[i] {
            sites[i] = false;
            excited -= 1;
            accepted += 1;
        } else if rng.next_f64() < accept_up {
            sites[i] = true;
            excited += 1;
            accepted += 1;
        }
        if step >= cfg.burn_in {
            let k = step - cfg.burn_in;
            let b = (k as u128 * batches as u128 / samples as u128) as usize;
            batch_sums[b] += excited as u128;
            batch_counts[b] += 1;
            total += excited as u128;
            lo = lo.min(excited);
            hi = hi.max(excited);
        }
    }

    let mean = total as f64 / samples as f64;
    let means: Vec<f64> = batch_sums
        .iter()
        .zip(&batch_counts)
        .map(|(&s, &c)| s as f64 / c as f64)
        .collect();
    let b = means.len() as f64;
    let grand = means.iter().sum::<f64>() / b;
    let var = means.iter().map(|m| (m - grand).powi(2)).sum::<f64>() / (b - 1.0);
    let std_error = (var / b).sqrt();

    Ok(McStats {
        states,
        mean_excited: mean,
        std_error,
        batches,
        samples,
        min_excited: lo,
        max_excited: hi,
        final_excited: excited,
        acceptance_rate: accepted as f64 / cfg.steps as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ONE: Energy = Energy(1.0);

    fn gas(l: u64, n: u64) -> TwoLevelGas {
        TwoLevelGas::new(l, n, ONE).unwrap()
    }

    fn reduced() -> PhysConstants {
        PhysConstants::reduced()
    }

    /// Counts `n`-subsets of `l` positions by walking every bitmask.
    fn brute_force_count(l: u32, n: u32) -> u64 {
        (0u64..1 << l).filter(|m| m.count_ones() == n).count() as u64
    }

    fn ln_factorial_sum(m: u64) -> f64 {
        (2..=m).map(|i| (i as f64).ln()).sum()
    }

    #[test]
    fn six_states_two_excited_has_fifteen_configurations() {
        assert_eq!(brute_force_count(6, 2), 15);
        let lm = log_multiplicity(6, 2).unwrap();
        assert!((lm - 15f64.ln()).abs() < 1e-12);
        assert!((lm - 2.70805).abs() < 1e-5);
    }

    #[test]
    fn multiplicity_matches_enumeration() {
        for l in 1..=20u32 {
            for n in 0..=l {
                let count = brute_force_count(l, n);
                let lm = log_multiplicity(l as u64, n as u64).unwrap();
                assert_eq!(lm.exp().round() as u64, count, "L={l} n={n}");
                let exact = (count as f64).ln();
                if exact > 0.0 {
                    assert!(((lm - exact) / exact).abs() < 1e-12, "L={l} n={n}");
                } else {
                    assert_eq!(lm, 0.0);
                }
            }
        }
    }

    #[test]
    fn large_multiplicity_matches_log_sum() {
        let oracle = ln_factorial_sum(1000) - 2.0 * ln_factorial_sum(500);
        let lm = log_multiplicity(1000, 500).unwrap();
        assert!(((lm - oracle) / oracle).abs() < 1e-12);
        assert!((lm - 689.467).abs() < 1e-3);
    }

    #[test]
    fn multiplicity_errors() {
        assert!(log_multiplicity(5, 6).is_err());
        assert!(log_multiplicity(0, 0).is_err());
        assert_eq!(log_multiplicity(1000, 0).unwrap(), 0.0);
        assert!(TwoLevelGas::new(5, 6, ONE).is_err());
        assert!(TwoLevelGas::new(5, 1, Energy(0.0)).is_err());
    }

    #[test]
    fn entropy_exact_examples() {
        assert!((entropy_exact(&gas(6, 2)).unwrap().value() - 2.70805).abs() < 1e-5);
        assert_eq!(entropy_exact(&gas(10, 0)).unwrap().value(), 0.0);
        assert_eq!(entropy_exact(&gas(10, 10)).unwrap().value(), 0.0);
    }

    #[test]
    fn stirling_examples() {
        let g = gas(1000, 500);
        let st = entropy_stirling(&g).unwrap().value();
        assert!((st - 1000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        let ex = entropy_exact(&g).unwrap().value();
        let rel = (st - ex) / ex;
        assert!((rel - 5.3e-3).abs() < 5e-5, "{rel}");

        let g = gas(1_000_000, 500_000);
        let st = entropy_stirling(&g).unwrap().value();
        let ex = entropy_exact(&g).unwrap().value();
        assert!((st - ex) / ex < 2e-5);

        assert!(entropy_stirling(&gas(10, 0)).is_err());
        assert!(entropy_stirling(&gas(10, 10)).is_err());
    }

    #[test]
    fn closed_temperature_examples() {
        let t = temperature_closed(&gas(1000, 100), &reduced())
            .unwrap()
            .value();
        assert!((t - 1.0 / 9f64.ln()).abs() < 1e-12);
        assert!((t - 0.45512).abs() < 1e-5);
        let inv = temperature_closed(&gas(1000, 900), &reduced())
            .unwrap()
            .value();
        assert_eq!(inv, -t);
        assert!(matches!(
            temperature_closed(&gas(1000, 500), &reduced()),
            Err(Error::InfiniteTemperature { .. })
        ));
        assert!(matches!(
            temperature_closed(&gas(1000, 0), &reduced()),
            Err(Error::ZeroTemperature { .. })
        ));
        assert!(matches!(
            temperature_closed(&gas(1000, 1000), &reduced()),
            Err(Error::ZeroTemperature { .. })
        ));
    }

    #[test]
    fn numeric_temperature_examples() {
        let target = 1.0 / 9f64.ln();
        let t = temperature_numeric(&gas(10_000, 1_000), &reduced())
            .unwrap()
            .value();
        assert!(((t - target) / target).abs() < 1e-3);
        let t = temperature_numeric(&gas(10_000, 9_000), &reduced())
            .unwrap()
            .value();
        assert!(((t + target) / target).abs() < 1e-3);
        assert!(matches!(
            temperature_numeric(&gas(20, 10), &reduced()),
            Err(Error::InfiniteTemperature { .. })
        ));
        assert!(temperature_numeric(&gas(20, 0), &reduced()).is_err());
        assert!(temperature_numeric(&gas(20, 20), &reduced()).is_err());
        assert!(temperature_numeric(&gas(3, 1), &reduced()).is_err());
    }

    #[test]
    fn reduced_and_si_agree() {
        let si = PhysConstants::si();
        let eps_j = 3.2e-21;
        let g_si = TwoLevelGas::new(1000, 130, Energy(eps_j)).unwrap();
        let g_red = gas(1000, 130);
        let scale = eps_j / si.k();
        for (a, b) in [
            (
                temperature_closed(&g_si, &si),
                temperature_closed(&g_red, &reduced()),
            ),
            (
                temperature_numeric(&g_si, &si),
                temperature_numeric(&g_red, &reduced()),
            ),
        ] {
            let (a, b) = (a.unwrap().value() / scale, b.unwrap().value());
            assert!(((a - b) / b).abs() < 1e-12);
        }
        assert_eq!(
            entropy_exact(&g_si).unwrap(),
            entropy_exact(&g_red).unwrap()
        );
    }

    #[test]
    fn occupation_examples() {
        let r = reduced();
        let hot = Temperature::new(1e12).unwrap();
        let n = occupation_from_temperature(1000, ONE, hot, &r).unwrap();
        assert!((n - 500.0).abs() / 500.0 < 1e-9);

        let n = occupation_from_temperature(1000, ONE, Temperature::new(1.0).unwrap(), &r).unwrap();
        assert!((n - 1000.0 / (1.0 + std::f64::consts::E)).abs() < 1e-9);
        assert!((n - 268.94).abs() < 1e-2);

        let cold = Temperature::new(1e-12).unwrap();
        assert_eq!(
            occupation_from_temperature(1000, ONE, cold, &r).unwrap(),
            0.0
        );
        assert!(occupation_from_temperature(1000, Energy(-1.0), hot, &r).is_err());
        assert!(Temperature::new(0.0).is_err());
    }

    #[test]
    fn transfer_examples() {
        let r = reduced();
        let rec = transfer_balance(1000, 300, 100, ONE, &r).unwrap();
        let expected = 300.0 * (9f64.ln() - (7.0f64 / 3.0).ln());
        assert!((rec.net.value() - expected).abs() < 1e-9);
        assert!(((rec.net.value() - 404.96) / 404.96).abs() < 1e-3);
        assert_eq!(rec.gas_heat, Energy(300.0));
        assert!((rec.net.value() - rec.clausius_lower_bound.value()).abs() < 1e-9);
        assert_eq!(rec.verdict, Verdict::Satisfied);

        let same = transfer_balance(1000, 200, 200, ONE, &r).unwrap();
        assert_eq!(same.net.value(), 0.0);

        assert!(transfer_balance(1000, 100, 300, ONE, &r).is_err());
        assert!(transfer_balance(1000, 100, 0, ONE, &r).is_err());
        assert!(transfer_balance(1000, 1000, 10, ONE, &r).is_err());
    }

    #[test]
    fn transfer_through_half_filling() {
        let rec = transfer_balance(200, 100, 40, ONE, &reduced()).unwrap();
        assert_eq!(rec.entropy_removed_hot.value(), 0.0);
        assert!(rec.verdict.is_satisfied());
    }

    fn mc(kt: f64, steps: u64, burn_in: u64, seed: u64) -> McConfig {
        McConfig {
            steps,
            burn_in,
            seed,
            kt: Energy(kt),
        }
    }

    #[test]
    fn metropolis_matches_occupation_law() {
        let stats = metropolis_sample(10_000, ONE, &mc(1.0, 1_000_000, 100_000, 42)).unwrap();
        let target = 1.0 / (1.0 + std::f64::consts::E);
        assert!((stats.mean_fraction() - 0.2689).abs() < 0.01);
        assert!((stats.mean_excited - 10_000.0 * target).abs() <= 3.0 * stats.std_error);
    }

    #[test]
    fn metropolis_ground_state_limit() {
        let stats = metropolis_sample(1000, ONE, &mc(1e-12, 50_000, 5_000, 1)).unwrap();
        assert_eq!(stats.mean_excited, 0.0);
        assert_eq!(stats.max_excited, 0);
    }

    #[test]
    fn metropolis_is_deterministic() {
        let cfg = mc(0.7, 200_000, 20_000, 9);
        let a = metropolis_sample(500, ONE, &cfg).unwrap();
        let b = metropolis_sample(500, ONE, &cfg).unwrap();
        assert_eq!(a, b);
        let c = metropolis_sample(500, ONE, &McConfig { seed: 10, ..cfg }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn metropolis_rejects_bad_config() {
        assert!(metropolis_sample(9, ONE, &mc(1.0, 100, 10, 1)).is_err());
        assert!(metropolis_sample(100, ONE, &mc(1.0, 100, 100, 1)).is_err());
        assert!(metropolis_sample(100, ONE, &mc(1.0, 0, 0, 1)).is_err());
        assert!(metropolis_sample(100, ONE, &mc(0.0, 100, 10, 1)).is_err());
    }

    #[test]
    fn entropy_symmetric_and_unimodal() {
        for l in 1..=200u64 {
            for n in 0..=l {
                assert_eq!(
                    log_multiplicity(l, n).unwrap(),
                    log_multiplicity(l, l - n).unwrap()
                );
            }
            for n in 0..l {
                let (a, b) = (
                    log_multiplicity(l, n).unwrap(),
                    log_multiplicity(l, n + 1).unwrap(),
                );
                if 2 * (n + 1) <= l {
                    assert!(b > a, "increasing L={l} n={n}");
                } else if 2 * n >= l {
                    assert!(b < a, "decreasing L={l} n={n}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn closed_temperature_inverts_occupation(l in 100u64..100_000, frac in 0.01f64..0.99) {
            let n = ((l as f64) * frac).round() as u64;
            prop_assume!(n > 0 && n < l && 2 * n != l);
            let nf = n as f64 / l as f64;
            prop_assume!(!(0.49..=0.51).contains(&nf));
            let g = gas(l, n);
            let t = temperature_closed(&g, &reduced()).unwrap();
            let back = occupation_from_temperature(l, ONE, t, &reduced()).unwrap();
            prop_assert!(((back - n as f64) / n as f64).abs() < 1e-9);
        }

        #[test]
        fn transfer_net_never_negative(l in 3u64..5000, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let n_hot = 1 + ((l - 2) as f64 * a.max(b)) as u64;
            let n_cold = 1 + ((l - 2) as f64 * a.min(b)) as u64;
            let rec = transfer_balance(l, n_hot, n_cold, ONE, &reduced()).unwrap();
            prop_assert!(rec.net.value() >= 0.0);
            prop_assert!(rec.verdict.is_satisfied());
        }
    }
}
