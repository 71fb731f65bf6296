//! The amplified fiber link as a chain of Carnot cycles.
//!
//! A random file launched with bit energy `ε0` sits at `T_H = ε0 / (2k ln 2)`.
//! Over one span the fiber attenuates every bit by `g = exp(-α · span)`, so
//! the file arrives at `T_C = g T_H` with its information untouched. The
//! amplifier reads it (isothermal at `T_C`) and restores the bit energy
//! (adiabatic). Keeping the entropy balance closed, `Q_H / T_H = Q_C / T_C`,
//! costs work `W = Q_H (1 - T_C / T_H)`: the Carnot efficiency.
//!
//! Each span:
//!
//! 1. isothermal write at `T_H`, heat `Q_H = L ε0 / 2`;
//! 2. adiabatic attenuation `ε0 -> g ε0`; the energy lost leaves the system
//!    and is not credited anywhere;
//! 3. isothermal read at `T_C`, heat `Q_C = g L ε0 / 2`;
//! 4. adiabatic amplification back to `ε0`, work `W` from the amplifier.

use std::f64::consts::LN_2;
use std::fmt;

use serde::Serialize;

use crate::bitstream::{file_heat_and_entropy, file_temperature};
use crate::error::{require_positive, Error, Result};
use crate::units::{
    bits_to_nats, Energy, Entropy, Information, PhysConstants, Temperature, Verdict,
};

/// `1 - T_C / T_H`.
pub fn carnot_efficiency(t_hot: Temperature, t_cold: Temperature) -> Result<f64> {
    let th = require_positive("t_hot", t_hot.value())?;
    let tc = require_positive("t_cold", t_cold.value())?;
    if tc > th {
        return Err(Error::invalid(
            "t_cold",
            format!("must not exceed t_hot ({tc} > {th})"),
        ));
    }
    Ok(1.0 - tc / th)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplifierWork {
    pub q_hot: Energy,
    pub work: Energy,
}

/// Heat and work needed to lift a file holding `q_cold` at `T_C` back to `T_H`
/// without destroying entropy.
pub fn amplifier_work(
    q_cold: Energy,
    t_hot: Temperature,
    t_cold: Temperature,
) -> Result<AmplifierWork> {
    let qc = require_positive("q_cold", q_cold.value())?;
    let eta = carnot_efficiency(t_hot, t_cold)?;
    if eta == 0.0 {
        return Err(Error::invalid(
            "t_cold",
            "equal temperatures need no amplification",
        ));
    }
    let q_hot = qc * t_hot.value() / t_cold.value();
    Ok(AmplifierWork {
        q_hot: Energy(q_hot),
        work: Energy(q_hot * eta),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    IsothermalWrite,
    AdiabaticAttenuation,
    IsothermalRead,
    AdiabaticAmplification,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StepKind::IsothermalWrite => "isothermal_write",
            StepKind::AdiabaticAttenuation => "adiabatic_attenuation",
            StepKind::IsothermalRead => "isothermal_read",
            StepKind::AdiabaticAmplification => "adiabatic_amplification",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRecord {
    pub kind: StepKind,
    pub epsilon_start: Energy,
    pub epsilon_end: Energy,
    pub temperature_start: Temperature,
    pub temperature_end: Temperature,
    /// Heat exchanged with a bath; zero on the adiabats.
    pub heat: Energy,
    /// Work supplied by the amplifier; zero except on step 4.
    pub work: Energy,
    /// Energy lost to the fiber; zero except on step 2.
    pub lost: Energy,
    pub info: Information,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleRecord {
    pub span: usize,
    pub steps: [StepRecord; 4],
    pub epsilon_in: Energy,
    pub epsilon_out: Energy,
    pub t_hot: Temperature,
    pub t_cold: Temperature,
    pub q_hot: Energy,
    pub q_cold: Energy,
    pub work_in: Energy,
    pub info: Information,
    /// `Q_H / T_H - Q_C / T_C` in units of `k`; zero for an ideal amplifier.
    pub entropy_balance: Entropy,
    pub verdict: Verdict,
}

impl CycleRecord {
    /// `W / Q_H`.
    pub fn efficiency(&self) -> f64 {
        self.work_in.value() / self.q_hot.value()
    }

    /// `Q_H - (Q_C + W)`.
    pub fn first_law_residual(&self) -> f64 {
        self.q_hot.value() - (self.q_cold.value() + self.work_in.value())
    }

    /// The same cycle with the amplifier delivering `work` instead of the
    /// ideal amount; the hot file then holds `Q_C + work`.
    pub fn with_amplifier_work(&self, work: Energy, consts: &PhysConstants) -> CycleRecord {
        let q_hot = Energy(self.q_cold.value() + work.value());
        let balance = entropy_balance(q_hot, self.t_hot, self.q_cold, self.t_cold, consts);
        let mut steps = self.steps;
        steps[3].work = work;
        CycleRecord {
            q_hot,
            work_in: work,
            steps,
            entropy_balance: Entropy(balance),
            verdict: Verdict::from_margin(balance),
            ..*self
        }
    }
}

fn entropy_balance(
    q_hot: Energy,
    t_hot: Temperature,
    q_cold: Energy,
    t_cold: Temperature,
    consts: &PhysConstants,
) -> f64 {
    (q_hot.value() / t_hot.value() - q_cold.value() / t_cold.value()) / consts.k()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberChainConfig {
    /// Launch bit energy.
    pub epsilon0: Energy,
    /// Attenuation coefficient, per km.
    pub alpha: f64,
    pub span_km: f64,
    pub n_spans: usize,
    /// File length in bits; the file is taken to be random.
    pub file_length: usize,
}

impl FiberChainConfig {
    /// Chooses `alpha` so that one span attenuates by exactly `gain`.
    pub fn with_span_gain(
        epsilon0: Energy,
        gain: f64,
        span_km: f64,
        n_spans: usize,
        file_length: usize,
    ) -> Result<Self> {
        if !(gain > 0.0 && gain < 1.0) {
            return Err(Error::invalid(
                "gain",
                format!("must lie in (0, 1), got {gain}"),
            ));
        }
        let span_km = require_positive("span_km", span_km)?;
        Ok(FiberChainConfig {
            epsilon0,
            alpha: -gain.ln() / span_km,
            span_km,
            n_spans,
            file_length,
        })
    }

    /// Per-span energy ratio `exp(-α · span)`.
    pub fn span_gain(&self) -> f64 {
        (-self.alpha * self.span_km).exp()
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("epsilon0", self.epsilon0.value())?;
        require_positive("alpha", self.alpha)?;
        require_positive("span_km", self.span_km)?;
        if self.file_length == 0 {
            return Err(Error::invalid("file_length", "must be positive"));
        }
        let g = self.span_gain();
        if !(g > 0.0 && g < 1.0) {
            return Err(Error::invalid(
                "alpha",
                format!("span gain {g} is outside (0, 1)"),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainResult {
    pub span_gain: f64,
    pub cycles: Vec<CycleRecord>,
    pub total_work: Energy,
    pub info_in: Information,
    pub info_out: Information,
}

pub fn simulate_chain(cfg: &FiberChainConfig, consts: &PhysConstants) -> Result<ChainResult> {
    cfg.validate()?;
    let g = cfg.span_gain();
    let info_in = bits_to_nats(cfg.file_length as f64)?;
    let mut info = info_in;
    let mut eps = cfg.epsilon0;
    let mut cycles = Vec::with_capacity(cfg.n_spans);
    let mut total_work = 0.0;

    for span in 0..cfg.n_spans {
        let eps_in = eps;
        let t_hot = file_temperature(eps_in, consts)?;
        let (q_write, _) = file_heat_and_entropy(cfg.file_length, eps_in)?;

        let eps_out = Energy(g * eps_in.value());
        let t_cold = file_temperature(eps_out, consts)?;
        let (q_cold, _) = file_heat_and_entropy(cfg.file_length, eps_out)?;

        let amp = amplifier_work(q_cold, t_hot, t_cold)?;
        let eps_back = Energy(amp.q_hot.value() * 2.0 / cfg.file_length as f64);

        let step = |kind, e0: Energy, e1: Energy, t0, t1, heat, work, lost| StepRecord {
            kind,
            epsilon_start: e0,
            epsilon_end: e1,
            temperature_start: t0,
            temperature_end: t1,
            heat,
            work,
            lost,
            info,
        };
        let zero = Energy(0.0);
        let steps = [
            step(
                StepKind::IsothermalWrite,
                eps_in,
                eps_in,
                t_hot,
                t_hot,
                q_write,
                zero,
                zero,
            ),
            step(
                StepKind::AdiabaticAttenuation,
                eps_in,
                eps_out,
                t_hot,
                t_cold,
                zero,
                zero,
                Energy(q_write.value() - q_cold.value()),
            ),
            step(
                StepKind::IsothermalRead,
                eps_out,
                eps_out,
                t_cold,
                t_cold,
                q_cold,
                zero,
                zero,
            ),
            step(
                StepKind::AdiabaticAmplification,
                eps_out,
                eps_back,
                t_cold,
                t_hot,
                zero,
                amp.work,
                zero,
            ),
        ];

        let balance = entropy_balance(amp.q_hot, t_hot, q_cold, t_cold, consts);
        cycles.push(CycleRecord {
            span,
            steps,
            epsilon_in: eps_in,
            epsilon_out: eps_out,
            t_hot,
            t_cold,
            q_hot: amp.q_hot,
            q_cold,
            work_in: amp.work,
            info,
            entropy_balance: Entropy(balance),
            verdict: Verdict::from_margin(balance),
        });
        total_work += amp.work.value();
        // The amplifier restores the launch energy; carrying `eps_back`
        // forward would only accumulate rounding.
        eps = cfg.epsilon0;
        info = steps[3].info;
    }

    debug_assert!(info.nats() == info_in.nats());
    Ok(ChainResult {
        span_gain: g,
        cycles,
        total_work: Energy(total_work),
        info_in,
        info_out: info,
    })
}

/// Nats carried per unit of launch energy: `2 ln 2 / ε0`. Handy for
/// cross-checking `Q_H / T_H = L ln 2`.
pub fn nats_per_energy(epsilon0: Energy) -> f64 {
    2.0 * LN_2 / epsilon0.value()
}
