//! Thermodynamic bound on the bit rate of a powered device.
//!
//! A device pushing `f` bits per second with power `P` emits a file of bit
//! energy `P / f`, hence temperature `T = P / (k f ln 2)`. Keeping that
//! temperature a safety `margin` above the ambient noise temperature `T_n`
//! bounds the rate: `f <= P / (margin · k T_n ln 2)`. With `margin = 1` this
//! is one `k T_n ln 2` per bit.
//!
//! SI units only.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::units::{Temperature, BOLTZMANN_SI};

pub const DEFAULT_MARGIN: f64 = 10.0;

/// `P / (k f ln 2)`, kelvin.
pub fn device_temperature(power_w: f64, bit_rate_hz: f64) -> Result<Temperature> {
    let p = require_positive("power", power_w)?;
    let f = require_positive("bit_rate", bit_rate_hz)?;
    Temperature::new(p / (BOLTZMANN_SI * f * LN_2))
}

/// `P / (margin · k T_n ln 2)`, bits per second.
pub fn max_bit_rate(power_w: f64, noise_temperature_k: f64, margin: f64) -> Result<f64> {
    let p = require_positive("power", power_w)?;
    let tn = require_positive("noise_temperature", noise_temperature_k)?;
    let m = require_positive("margin", margin)?;
    if m < 1.0 {
        return Err(Error::invalid("margin", format!("must be >= 1, got {m}")));
    }
    Ok(p / (m * BOLTZMANN_SI * tn * LN_2))
}

/// `k T ln 2`, joules: the least energy per elementary operation at `T`.
pub fn landauer_energy(temperature_k: f64) -> Result<f64> {
    let t = require_positive("temperature", temperature_k)?;
    Ok(BOLTZMANN_SI * t * LN_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundQuery {
    pub power: f64,
    pub noise_temperature: f64,
    pub margin: f64,
    pub bit_rate: Option<f64>,
}

impl BoundQuery {
    pub fn new(power: f64, noise_temperature: f64) -> Self {
        BoundQuery {
            power,
            noise_temperature,
            margin: DEFAULT_MARGIN,
            bit_rate: None,
        }
    }

    pub fn evaluate(&self) -> Result<BoundReport> {
        let f_max = max_bit_rate(self.power, self.noise_temperature, self.margin)?;
        let operating = match self.bit_rate {
            Some(f) => {
                let t = device_temperature(self.power, f)?;
                Some(OperatingPoint {
                    bit_rate: f,
                    device_temperature: t,
                    energy_per_bit: self.power / f,
                    temperature_ratio: t.value() / self.noise_temperature,
                    within_bound: f <= f_max,
                })
            }
            None => None,
        };
        Ok(BoundReport {
            f_max,
            energy_per_bit_at_max: self.power / f_max,
            landauer_floor: landauer_energy(self.noise_temperature)?,
            operating,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatingPoint {
    pub bit_rate: f64,
    pub device_temperature: Temperature,
    pub energy_per_bit: f64,
    /// `T / T_n`.
    pub temperature_ratio: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub f_max: f64,
    pub energy_per_bit_at_max: f64,
    pub landauer_floor: f64,
    pub operating: Option<OperatingPoint>,
}
