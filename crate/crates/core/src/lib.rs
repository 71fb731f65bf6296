//! Thermodynamics of information.
//!
//! Entropy, temperature and heat for two-level gases and for binary files
//! (treated as frozen two-level gases), Clausius audits of transfers between
//! baths, the four-step Carnot cycle of a periodically amplified fiber link,
//! and the thermodynamic bound on the bit rate of a powered device.
//!
//! Entropies are carried in units of the Boltzmann constant and information
//! in nats throughout. See [`units`] for the two unit modes.

pub mod bitstream;
pub mod error;
pub mod fiber;
pub mod landauer;
pub mod ledger;
pub mod rng;
pub mod twolevel;
pub mod units;

pub use error::{Error, Result};
pub use units::{Energy, Entropy, Information, PhysConstants, Temperature, UnitMode, Verdict};
