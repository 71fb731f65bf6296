//! Binary files as frozen two-level gases.
//!
//! A file of `L` bits with `n` ones stores energy `nε` just like a two-level
//! gas, but its arrangement is fixed. How much Shannon information it carries
//! depends on how unpredictable that arrangement is, not on `n`. Two
//! estimators are reported side by side:
//!
//! * the iid plug-in `L · H(p̂)` with `H(p) = -p ln p - (1-p) ln(1-p)`;
//! * the order-`k` conditional entropy rate `H(X_t | X_{t-k}..X_{t-1})` of
//!   the empirical `(k+1)`-gram distribution, counted over cyclic windows.
//!   Cyclic counting keeps every order's distribution a marginal of the next,
//!   so the rate never increases with `k`.
//!
//! A stream is in equilibrium (random) when both the ones density and the
//! lag-1 autocorrelation sit inside their three-sigma bands; only then does
//! the file have a temperature, `T = ε / (2k ln 2)`.

use std::f64::consts::LN_2;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::rng::StreamRng;
use crate::units::{Energy, Entropy, Information, PhysConstants, Temperature};

pub const MAX_MARKOV_ORDER: u32 = 16;

/// Minimum windows per context for an order-`k` rate to be reported.
const WINDOWS_PER_CONTEXT: usize = 64;

/// Shortest stream the randomness test accepts.
pub const MIN_TEST_LENGTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BitOrder {
    #[default]
    MsbFirst,
    LsbFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Independent bits, each one with probability `p`.
    Bernoulli { p: f64 },
    /// First bit fair, then each bit flips the previous one with
    /// probability `q`. Stationary ones density is 1/2 for every `q`.
    Markov { q: f64 },
    /// `L/2` ones followed by zeros.
    OrderedBlock,
    /// `0101...`
    Alternating,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Bernoulli { p } => write!(f, "bernoulli(p={p})"),
            GeneratorKind::Markov { q } => write!(f, "markov(q={q})"),
            GeneratorKind::OrderedBlock => f.write_str("ordered_block"),
            GeneratorKind::Alternating => f.write_str("alternating"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub length: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, length: usize, seed: u64) -> Self {
        GeneratorSpec { kind, length, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.length == 0 {
            return Err(Error::invalid("length", "must be positive"));
        }
        let check = |name, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::invalid(name, format!("must lie in [0, 1], got {v}")))
            }
        };
        match self.kind {
            GeneratorKind::Bernoulli { p } => check("p", p),
            GeneratorKind::Markov { q } => check("q", q),
            GeneratorKind::OrderedBlock | GeneratorKind::Alternating => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Source {
    File { path: PathBuf, bit_order: BitOrder },
    Generated(GeneratorSpec),
    Memory,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bitstream {
    bits: Vec<bool>,
    source: Source,
}

impl Bitstream {
    pub fn from_bits(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyStream);
        }
        Ok(Bitstream {
            bits,
            source: Source::Memory,
        })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Packs the bits into bytes; a trailing partial byte is zero-padded.
    pub fn to_bytes(&self, order: BitOrder) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| {
                chunk.iter().enumerate().fold(0u8, |byte, (i, &bit)| {
                    if !bit {
                        return byte;
                    }
                    match order {
                        BitOrder::MsbFirst => byte | (0x80 >> i),
                        BitOrder::LsbFirst => byte | (1 << i),
                    }
                })
            })
            .collect()
    }

    pub fn write(&self, path: &Path, order: BitOrder) -> Result<()> {
        fs::write(path, self.to_bytes(order)).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn unpack(bytes: &[u8], order: BitOrder) -> Vec<bool> {
    let mut bits = Vec::with_capacity(bytes.len() * 8);
    for &byte in bytes {
        for i in 0..8 {
            let mask = match order {
                BitOrder::MsbFirst => 0x80 >> i,
                BitOrder::LsbFirst => 1 << i,
            };
            bits.push(byte & mask != 0);
        }
    }
    bits
}

pub fn read_bitstream(path: &Path, bit_order: BitOrder) -> Result<Bitstream> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    if bytes.is_empty() {
        return Err(Error::EmptyFile(path.to_path_buf()));
    }
    Ok(Bitstream {
        bits: unpack(&bytes, bit_order),
        source: Source::File {
            path: path.to_path_buf(),
            bit_order,
        },
    })
}

pub fn generate(spec: &GeneratorSpec) -> Result<Bitstream> {
    spec.validate()?;
    let len = spec.length;
    let mut rng = StreamRng::new(spec.seed);
    let bits: Vec<bool> = match spec.kind {
        GeneratorKind::Bernoulli { p } => (0..len).map(|_| rng.next_f64() < p).collect(),
        GeneratorKind::Markov { q } => {
            let mut bits = Vec::with_capacity(len);
            let mut current = rng.next_f64() < 0.5;
            bits.push(current);
            for _ in 1..len {
                if rng.next_f64() < q {
                    current = !current;
                }
                bits.push(current);
            }
            bits
        }
        GeneratorKind::OrderedBlock => (0..len).map(|i| i < len / 2).collect(),
        GeneratorKind::Alternating => (0..len).map(|i| i % 2 == 1).collect(),
    };
    Ok(Bitstream {
        bits,
        source: Source::Generated(*spec),
    })
}

/// Binary entropy in nats, with `0 ln 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.ln() };
    term(p) + term(1.0 - p)
}

/// Lag-1 sample autocorrelation. A constant stream is perfectly predictable
/// and is reported as `1.0`.
pub fn lag1_autocorrelation(bits: &[bool]) -> f64 {
    let len = bits.len();
    if len < 2 {
        return 1.0;
    }
    let ones = bits.iter().filter(|&&b| b).count() as f64;
    let mean = ones / len as f64;
    let var_sum = ones * (1.0 - mean) * (1.0 - mean) + (len as f64 - ones) * mean * mean;
    if var_sum == 0.0 {
        return 1.0;
    }
    let cov_sum: f64 = bits
        .windows(2)
        .map(|w| {
            let a = w[0] as u8 as f64 - mean;
            let b = w[1] as u8 as f64 - mean;
            a * b
        })
        .sum();
    (cov_sum / var_sum).clamp(-1.0, 1.0)
}

/// Order-`k` conditional entropy rate in nats per bit, over cyclic windows.
pub fn markov_entropy_rate(bits: &[bool], order: u32) -> Result<f64> {
    if bits.is_empty() {
        return Err(Error::EmptyStream);
    }
    if order > MAX_MARKOV_ORDER {
        return Err(Error::invalid(
            "markov_order",
            format!("must be <= {MAX_MARKOV_ORDER}, got {order}"),
        ));
    }
    let len = bits.len();
    let width = order as usize + 1;
    if len < width {
        return Err(Error::StreamTooShort { len, needed: width });
    }
    let mask = (1usize << width) - 1;
    let mut counts = vec![0u64; 1 << width];
    let mut window = 0usize;
    for &b in &bits[..order as usize] {
        window = (window << 1) | b as usize;
    }
    for i in 0..len {
        let bit = bits[(i + order as usize) % len];
        window = ((window << 1) | bit as usize) & mask;
        counts[window] += 1;
    }
    let mut total = 0.0;
    for ctx in 0..(1usize << order) {
        let c0 = counts[ctx << 1];
        let c1 = counts[(ctx << 1) | 1];
        let c = (c0 + c1) as f64;
        for cw in [c0, c1] {
            if cw > 0 {
                total += cw as f64 * (c / cw as f64).ln();
            }
        }
    }
    Ok(total / len as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equilibrium {
    Random,
    Ordered,
    Undecided,
}

impl fmt::Display for Equilibrium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equilibrium::Random => f.write_str("random"),
            Equilibrium::Ordered => f.write_str("ordered"),
            Equilibrium::Undecided => f.write_str("undecided"),
        }
    }
}

fn classify(len: usize, p_hat: f64, r1: f64) -> Equilibrium {
    let root = (len as f64).sqrt();
    let density = (p_hat - 0.5).abs();
    let corr = r1.abs();
    if density > 5.0 / (2.0 * root) || corr > 5.0 / root {
        Equilibrium::Ordered
    } else if density <= 3.0 / (2.0 * root) && corr <= 3.0 / root {
        Equilibrium::Random
    } else {
        Equilibrium::Undecided
    }
}

/// Random when the ones density and the lag-1 autocorrelation both sit within
/// three binomial sigmas of a fair iid source; ordered when either leaves its
/// five-sigma band; undecided in between.
pub fn randomness_test(stream: &Bitstream) -> Result<Equilibrium> {
    let len = stream.len();
    if len < MIN_TEST_LENGTH {
        return Err(Error::StreamTooShort {
            len,
            needed: MIN_TEST_LENGTH,
        });
    }
    let p_hat = stream.ones() as f64 / len as f64;
    Ok(classify(len, p_hat, lag1_autocorrelation(&stream.bits)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FileStats {
    pub length: usize,
    pub ones: usize,
    pub p_hat: f64,
    /// `L · H(p̂)`.
    pub info_iid: Information,
    pub markov_order: u32,
    /// Nats per bit; `None` when the stream is too short for this order.
    pub info_rate_markov: Option<Information>,
    pub equilibrium: Equilibrium,
    pub correlation_lag1: f64,
}

impl FileStats {
    /// `L ln 2`, the information of a fully random file of this length.
    pub fn max_information(&self) -> Information {
        Information::from_nats(self.length as f64 * LN_2).expect("length is non-negative")
    }
}

pub fn analyze(stream: &Bitstream, markov_order: u32) -> Result<FileStats> {
    let len = stream.len();
    if len == 0 {
        return Err(Error::EmptyStream);
    }
    if markov_order > MAX_MARKOV_ORDER {
        return Err(Error::invalid(
            "markov_order",
            format!("must be <= {MAX_MARKOV_ORDER}, got {markov_order}"),
        ));
    }
    let ones = stream.ones();
    let p_hat = ones as f64 / len as f64;
    let info_iid = Information::from_nats(len as f64 * binary_entropy(p_hat))?;
    let info_rate_markov = if len >= WINDOWS_PER_CONTEXT << markov_order {
        let rate = markov_entropy_rate(&stream.bits, markov_order)?;
        Some(Information::from_nats(rate.max(0.0))?)
    } else {
        None
    };
    let r1 = lag1_autocorrelation(&stream.bits);
    let equilibrium = if len >= MIN_TEST_LENGTH {
        classify(len, p_hat, r1)
    } else {
        Equilibrium::Undecided
    };
    Ok(FileStats {
        length: len,
        ones,
        p_hat,
        info_iid,
        markov_order,
        info_rate_markov,
        equilibrium,
        correlation_lag1: r1,
    })
}

/// Temperature of a random file whose ones carry energy `ε`:
/// `T = ε / (2k ln 2)`.
///
/// Only meaningful for a file in equilibrium; checking that is the caller's
/// job.
pub fn file_temperature(epsilon: Energy, consts: &PhysConstants) -> Result<Temperature> {
    let eps = require_positive("epsilon", epsilon.0)?;
    Temperature::new(eps / (2.0 * consts.k() * LN_2))
}

/// Mean energy per nat of a random file, `ε / (2 ln 2)`; equals `kT`.
pub fn average_nat_energy(epsilon: Energy) -> Result<Energy> {
    let eps = require_positive("epsilon", epsilon.0)?;
    Ok(Energy(eps / (2.0 * LN_2)))
}

/// Heat `Lε/2` and entropy `L ln 2` carried by a random file of `L` bits.
pub fn file_heat_and_entropy(length: usize, epsilon: Energy) -> Result<(Energy, Entropy)> {
    if length == 0 {
        return Err(Error::invalid("length", "empty file"));
    }
    let eps = require_positive("epsilon", epsilon.0)?;
    let l = length as f64;
    Ok((Energy(l * eps / 2.0), Entropy(l * LN_2)))
}
