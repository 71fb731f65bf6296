//! Physical constants, unit modes and the scalar quantity types shared by
//! every module.
//!
//! Two unit modes are supported. In [`UnitMode::Si`] energies are joules,
//! temperatures kelvin and `k` is the exact CODATA Boltzmann constant. In
//! [`UnitMode::Reduced`] `k = 1` and energies are expressed in multiples of
//! the level energy, so temperatures come out in units of `ε/k`.
//!
//! Entropies are always dimensionless multiples of `k`; information is
//! always in nats. Bits only appear at the edges (`bits_to_nats`,
//! `nats_to_bits`).

use std::f64::consts::LN_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, Error, Result};

/// Exact CODATA 2018 value of the Boltzmann constant, J/K.
pub const BOLTZMANN_SI: f64 = 1.380649e-23;

/// Absolute slack, in units of `k`, allowed before a Clausius verdict flips
/// to violated.
pub const CLAUSIUS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    Si,
    Reduced,
}

impl fmt::Display for UnitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitMode::Si => f.write_str("si"),
            UnitMode::Reduced => f.write_str("reduced"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysConstants {
    k_boltzmann: f64,
    mode: UnitMode,
}

impl PhysConstants {
    pub const fn si() -> Self {
        PhysConstants {
            k_boltzmann: BOLTZMANN_SI,
            mode: UnitMode::Si,
        }
    }

    pub const fn reduced() -> Self {
        PhysConstants {
            k_boltzmann: 1.0,
            mode: UnitMode::Reduced,
        }
    }

    pub const fn for_mode(mode: UnitMode) -> Self {
        match mode {
            UnitMode::Si => Self::si(),
            UnitMode::Reduced => Self::reduced(),
        }
    }

    #[inline]
    pub fn k(&self) -> f64 {
        self.k_boltzmann
    }

    pub fn mode(&self) -> UnitMode {
        self.mode
    }

    pub fn energy_unit(&self) -> &'static str {
        match self.mode {
            UnitMode::Si => "J",
            UnitMode::Reduced => "eps",
        }
    }

    pub fn temperature_unit(&self) -> &'static str {
        match self.mode {
            UnitMode::Si => "K",
            UnitMode::Reduced => "eps/k",
        }
    }
}

impl Default for PhysConstants {
    fn default() -> Self {
        Self::reduced()
    }
}

/// Shannon information in nats. Never negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct Information(f64);

impl Information {
    pub const ZERO: Information = Information(0.0);

    pub fn from_nats(nats: f64) -> Result<Self> {
        require_non_negative("information", nats).map(Information)
    }

    #[inline]
    pub fn nats(self) -> f64 {
        self.0
    }

    pub fn bits(self) -> f64 {
        nats_to_bits(self)
    }
}

/// Entropy in units of `k`.
///
/// Entropy *changes* and Clausius margins share this type, so the sign is not
/// constrained here; closed-form absolute entropies are non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct Entropy(pub f64);

impl Entropy {
    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Entropy in J/K (SI) or in `k` units (reduced).
    pub fn to_physical(self, consts: &PhysConstants) -> f64 {
        self.0 * consts.k()
    }
}

/// Joules in SI mode, multiples of the level energy in reduced mode.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct Energy(pub f64);

impl Energy {
    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Kelvin in SI mode, `ε/k` in reduced mode. May be negative (population
/// inversion) but never zero or non-finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::invalid(
                "temperature",
                format!("must be finite, got {value}"),
            ));
        }
        if value == 0.0 {
            return Err(Error::invalid(
                "temperature",
                "zero temperature is not a state",
            ));
        }
        Ok(Temperature(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `kT`, in the energy unit of the current mode.
    pub fn thermal_energy(self, consts: &PhysConstants) -> Energy {
        Energy(consts.k() * self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
}

impl Verdict {
    /// `margin >= -CLAUSIUS_TOLERANCE` is satisfied.
    pub fn from_margin(margin: f64) -> Self {
        if margin >= -CLAUSIUS_TOLERANCE {
            Verdict::Satisfied
        } else {
            Verdict::Violated
        }
    }

    pub fn is_satisfied(self) -> bool {
        self == Verdict::Satisfied
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Satisfied => f.write_str("satisfied"),
            Verdict::Violated => f.write_str("violated"),
        }
    }
}

/// `b` bits expressed in nats (`b · ln 2`).
pub fn bits_to_nats(bits: f64) -> Result<Information> {
    let bits = require_non_negative("bits", bits)?;
    Ok(Information(bits * LN_2))
}

pub fn nats_to_bits(info: Information) -> f64 {
    info.0 / LN_2
}

/// `ΔS = k ΔI`: one nat of information is one unit of `k` of entropy.
pub fn entropy_from_information(info: Information) -> Entropy {
    Entropy(info.0)
}
