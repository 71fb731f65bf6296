//! Clausius audits for informatics systems.
//!
//! Broadcasting a file of `ΔI` nats from one antenna to `N` receivers is heat
//! flow from a bath at `T_H` to one at `T_H / N`; the bath temperatures
//! cancel and the balance reduces to `(N - 1) k ΔI`. A file that is not
//! random carries less information than its energy allows, which shows up as
//! a positive margin in `ΔS >= k ΔI`.

use serde::Serialize;

use crate::bitstream::{file_temperature, Equilibrium, FileStats};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::units::{Energy, Entropy, Information, PhysConstants, Temperature, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BroadcastResult {
    pub n_receivers: u64,
    pub t_hot: Temperature,
    pub t_cold: Temperature,
    pub info_sent: Information,
    /// `k ΔI` leaving the transmitter.
    pub entropy_removed: Entropy,
    /// `N k ΔI` arriving at the receivers.
    pub entropy_deposited: Entropy,
    /// `(N - 1) k ΔI`.
    pub net_gain: Entropy,
    /// `k (L ln 2 - ΔI)`: zero for a random file, positive otherwise.
    pub clausius_margin: Entropy,
    pub verdict: Verdict,
}

/// Information credited to a file: `L ln 2` when it tests random, otherwise
/// `L` times the Markov entropy rate (falling back to the iid estimate when
/// the stream is too short for the configured order).
pub fn effective_information(stats: &FileStats) -> Information {
    match (stats.equilibrium, stats.info_rate_markov) {
        (Equilibrium::Random, _) => stats.max_information(),
        (_, Some(rate)) => {
            Information::from_nats(stats.length as f64 * rate.nats()).expect("non-negative rate")
        }
        (_, None) => stats.info_iid,
    }
}

pub fn broadcast_balance(
    stats: &FileStats,
    epsilon_hot: Energy,
    n_receivers: u64,
    consts: &PhysConstants,
) -> Result<BroadcastResult> {
    if n_receivers == 0 {
        return Err(Error::invalid("receivers", "need at least one receiver"));
    }
    let t_hot = file_temperature(epsilon_hot, consts)?;
    let t_cold = Temperature::new(t_hot.value() / n_receivers as f64)?;

    let info = effective_information(stats);
    let di = info.nats();
    let n = n_receivers as f64;
    let margin = stats.max_information().nats() - di;

    Ok(BroadcastResult {
        n_receivers,
        t_hot,
        t_cold,
        info_sent: info,
        entropy_removed: Entropy(di),
        entropy_deposited: Entropy(n * di),
        net_gain: Entropy((n - 1.0) * di),
        clausius_margin: Entropy(margin),
        verdict: Verdict::from_margin(margin),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClausiusCheck {
    pub verdict: Verdict,
    /// `ΔS - k ΔI`, in units of `k`.
    pub margin: Entropy,
}

/// `ΔS >= k ΔI`.
pub fn clausius_check(entropy_change: Entropy, info_change: Information) -> ClausiusCheck {
    let margin = entropy_change.value() - info_change.nats();
    ClausiusCheck {
        verdict: Verdict::from_margin(margin),
        margin: Entropy(margin),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CombinedLedger {
    pub thermal_heat: Energy,
    pub bath_temperature: Temperature,
    pub info_delta: Information,
    /// `ΔQ/T + k ΔI`.
    pub entropy_lower_bound: Entropy,
    pub entropy_actual: Entropy,
    pub verdict: Verdict,
}

/// `ΔS >= ΔQ/T + k ΔI`, the thermal and informatic terms side by side.
pub fn combined_balance(
    heat: Energy,
    temperature: Temperature,
    info_delta: Information,
    entropy_actual: Entropy,
    consts: &PhysConstants,
) -> Result<CombinedLedger> {
    require_positive("temperature", temperature.value())?;
    require_non_negative("heat", heat.value())?;
    let bound = heat.value() / (consts.k() * temperature.value()) + info_delta.nats();
    Ok(CombinedLedger {
        thermal_heat: heat,
        bath_temperature: temperature,
        info_delta,
        entropy_lower_bound: Entropy(bound),
        entropy_actual,
        verdict: Verdict::from_margin(entropy_actual.value() - bound),
    })
}
