use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use infotherm::bitstream::BitOrder;
use infotherm::{Energy, PhysConstants, UnitMode};

#[derive(Debug, Parser)]
#[command(
    name = "infotherm",
    version,
    about = "Entropy, temperature and Clausius audits for two-level gases and binary files",
    args_override_self = true
)]
pub struct Cli {
    /// Emit the report as a single JSON document.
    #[arg(long, global = true)]
    pub json: bool,

    /// Plain `key=value` file whose entries act as `--key value` flags.
    /// Flags given on the command line take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two-level gas: entropy, temperature, occupation, transfers, Monte Carlo.
    #[command(subcommand)]
    Gas(GasCommand),
    /// Bit statistics and thermodynamics of binary files.
    #[command(subcommand)]
    File(FileCommand),
    /// Write a synthetic bitstream to a raw binary file.
    Generate(GenerateArgs),
    /// Entropy balance of broadcasting a file to N receivers.
    Broadcast(BroadcastArgs),
    /// Carnot bookkeeping for an amplified fiber link.
    #[command(subcommand)]
    Fiber(FiberCommand),
    /// Bit-rate bound of a powered device.
    Landauer(LandauerArgs),
    /// Direct Clausius audits.
    #[command(subcommand)]
    Ledger(LedgerCommand),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum UnitsArg {
    Reduced,
    Si,
}

#[derive(Debug, Clone, Args)]
pub struct UnitArgs {
    #[arg(long, value_enum, default_value_t = UnitsArg::Reduced)]
    pub units: UnitsArg,

    /// Level (bit) energy in reduced units.
    #[arg(long, default_value_t = 1.0)]
    pub epsilon: f64,

    /// Level (bit) energy in joules; required with `--units si`.
    #[arg(long)]
    pub epsilon_joules: Option<f64>,
}

impl UnitArgs {
    pub fn resolve(&self) -> Result<(PhysConstants, Energy)> {
        match self.units {
            UnitsArg::Reduced => {
                if self.epsilon_joules.is_some() {
                    bail!("--epsilon-joules needs --units si");
                }
                Ok((PhysConstants::reduced(), Energy(self.epsilon)))
            }
            UnitsArg::Si => match self.epsilon_joules {
                Some(e) => Ok((PhysConstants::si(), Energy(e))),
                None => bail!("--units si needs --epsilon-joules"),
            },
        }
    }
}

impl From<UnitsArg> for UnitMode {
    fn from(u: UnitsArg) -> Self {
        match u {
            UnitsArg::Reduced => UnitMode::Reduced,
            UnitsArg::Si => UnitMode::Si,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BitOrderArg {
    MsbFirst,
    LsbFirst,
}

impl From<BitOrderArg> for BitOrder {
    fn from(b: BitOrderArg) -> Self {
        match b {
            BitOrderArg::MsbFirst => BitOrder::MsbFirst,
            BitOrderArg::LsbFirst => BitOrder::LsbFirst,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum GasCommand {
    /// Exact and Stirling entropy of L states with n excited.
    Entropy(GasStateArgs),
    /// Closed-form and finite-difference temperature.
    Temperature(GasStateArgs),
    /// Expected excited count at a given kT.
    Occupation(OccupationArgs),
    /// Hot-to-cold transfer balance.
    Transfer(TransferArgs),
    /// Metropolis estimate of the occupation.
    Metropolis(MetropolisArgs),
}

#[derive(Debug, Args)]
pub struct GasStateArgs {
    #[arg(long)]
    pub states: u64,
    #[arg(long)]
    pub excited: u64,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Args)]
pub struct OccupationArgs {
    #[arg(long)]
    pub states: u64,
    /// kT in the same energy unit as epsilon.
    #[arg(long)]
    pub kt: f64,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Args)]
pub struct TransferArgs {
    #[arg(long)]
    pub states: u64,
    #[arg(long)]
    pub n_hot: u64,
    #[arg(long)]
    pub n_cold: u64,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Args)]
pub struct MetropolisArgs {
    #[arg(long)]
    pub states: u64,
    #[arg(long)]
    pub kt: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub steps: u64,
    #[arg(long, default_value_t = 100_000)]
    pub burn_in: u64,
    #[arg(long)]
    pub seed: u64,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Subcommand)]
pub enum FileCommand {
    /// Ones count, information estimates and randomness verdict of a file.
    Analyze(AnalyzeArgs),
    /// Temperature, heat and entropy of a random file of a given length.
    Thermo(ThermoArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Markov order of the entropy-rate estimate.
    #[arg(long, default_value_t = 3)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = BitOrderArg::MsbFirst)]
    pub bit_order: BitOrderArg,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Args)]
pub struct ThermoArgs {
    #[arg(long)]
    pub length: usize,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Bernoulli,
    Markov,
    OrderedBlock,
    Alternating,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Ones probability for `bernoulli`.
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Flip probability for `markov`.
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
    /// Length in bits.
    #[arg(long)]
    pub length: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = BitOrderArg::MsbFirst)]
    pub bit_order: BitOrderArg,
}

#[derive(Debug, Args)]
pub struct BroadcastArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub receivers: u64,
    #[arg(long, default_value_t = 3)]
    pub order: u32,
    #[arg(long, value_enum, default_value_t = BitOrderArg::MsbFirst)]
    pub bit_order: BitOrderArg,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Subcommand)]
pub enum FiberCommand {
    /// Simulate a chain of attenuating spans and ideal amplifiers.
    Simulate(SimulateArgs),
    /// Carnot efficiency between two temperatures.
    Carnot(CarnotArgs),
    /// Heat and work for one amplifier stage.
    Amplify(AmplifyArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// File length in bits.
    #[arg(long)]
    pub length: usize,
    /// Attenuation coefficient per km.
    #[arg(long, conflicts_with = "gain", required_unless_present = "gain")]
    pub alpha: Option<f64>,
    /// Per-span energy ratio; sets alpha = -ln(gain) / span.
    #[arg(long)]
    pub gain: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub span_km: f64,
    #[arg(long)]
    pub spans: usize,
    /// Scale applied to the ideal amplifier work (values below 1 starve it).
    #[arg(long, default_value_t = 1.0)]
    pub work_scale: f64,
    /// Write one CSV row per span to this path (`-` for stdout).
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    pub units: UnitArgs,
}

#[derive(Debug, Args)]
pub struct CarnotArgs {
    #[arg(long)]
    pub t_hot: f64,
    #[arg(long)]
    pub t_cold: f64,
}

#[derive(Debug, Args)]
pub struct AmplifyArgs {
    #[arg(long)]
    pub q_cold: f64,
    #[arg(long)]
    pub t_hot: f64,
    #[arg(long)]
    pub t_cold: f64,
}

#[derive(Debug, Args)]
pub struct LandauerArgs {
    /// Power in watts.
    #[arg(long)]
    pub power: f64,
    /// Ambient noise temperature in kelvin.
    #[arg(long)]
    pub noise_temp: f64,
    #[arg(long, default_value_t = infotherm::landauer::DEFAULT_MARGIN)]
    pub margin: f64,
    /// Actual bit rate, to report the device temperature.
    #[arg(long)]
    pub bit_rate: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum LedgerCommand {
    /// Check ΔS >= k ΔI.
    Check(CheckArgs),
    /// Check ΔS >= ΔQ/T + k ΔI.
    Combined(CombinedArgs),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Entropy change in units of k.
    #[arg(long, allow_negative_numbers = true)]
    pub entropy: f64,
    /// Information change in nats.
    #[arg(long)]
    pub info: f64,
}

#[derive(Debug, Args)]
pub struct CombinedArgs {
    #[arg(long)]
    pub heat: f64,
    #[arg(long)]
    pub temperature: f64,
    #[arg(long)]
    pub info: f64,
    /// Actual entropy change in units of k.
    #[arg(long, allow_negative_numbers = true)]
    pub entropy: f64,
    /// Unit mode of `--heat` and `--temperature`.
    #[arg(long, value_enum, default_value_t = UnitsArg::Reduced)]
    pub units: UnitsArg,
}
