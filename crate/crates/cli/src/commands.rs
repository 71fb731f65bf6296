use std::path::Path;

use anyhow::{bail, Result};
use clap::ValueEnum;
use infotherm::bitstream::{
    analyze, average_nat_energy, file_heat_and_entropy, file_temperature, generate, read_bitstream,
    Equilibrium, GeneratorKind, GeneratorSpec,
};
use infotherm::fiber::{amplifier_work, carnot_efficiency, simulate_chain, FiberChainConfig};
use infotherm::landauer::BoundQuery;
use infotherm::ledger::{broadcast_balance, clausius_check, combined_balance};
use infotherm::twolevel::{
    entropy_exact, entropy_stirling, log_multiplicity, metropolis_sample,
    occupation_from_temperature, temperature_closed, temperature_numeric, transfer_balance,
    McConfig, TwoLevelGas,
};
use infotherm::{Energy, Entropy, Information, PhysConstants, Temperature, UnitMode};

use crate::args::*;
use crate::csv_export::{export_csv, format_csv};
use crate::report::Report;

pub enum Output {
    Report(Report),
    /// CSV sent to stdout; the exit status still follows `report`.
    Csv {
        text: String,
        report: Report,
    },
}

impl Output {
    pub fn report(&self) -> &Report {
        match self {
            Output::Report(r) | Output::Csv { report: r, .. } => r,
        }
    }
}

fn bit_order_name(b: BitOrderArg) -> String {
    b.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

fn echo_units(r: &mut Report, consts: &PhysConstants, eps: Energy) {
    r.input("units", consts.mode().to_string());
    r.input("epsilon", eps.value());
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let report = match &cli.command {
        Command::Gas(cmd) => gas(cmd)?,
        Command::File(FileCommand::Analyze(a)) => file_analyze(a)?,
        Command::File(FileCommand::Thermo(a)) => file_thermo(a)?,
        Command::Generate(a) => generate_cmd(a)?,
        Command::Broadcast(a) => broadcast(a)?,
        Command::Fiber(FiberCommand::Simulate(a)) => return fiber_simulate(a),
        Command::Fiber(FiberCommand::Carnot(a)) => fiber_carnot(a)?,
        Command::Fiber(FiberCommand::Amplify(a)) => fiber_amplify(a)?,
        Command::Landauer(a) => landauer(a)?,
        Command::Ledger(LedgerCommand::Check(a)) => ledger_check(a)?,
        Command::Ledger(LedgerCommand::Combined(a)) => ledger_combined(a)?,
    };
    Ok(Output::Report(report))
}

fn gas(cmd: &GasCommand) -> Result<Report> {
    match cmd {
        GasCommand::Entropy(a) => {
            let (consts, eps) = a.units.resolve()?;
            let gas = TwoLevelGas::new(a.states, a.excited, eps)?;
            let mut r = Report::new("gas entropy");
            r.input("states", a.states).input("excited", a.excited);
            echo_units(&mut r, &consts, eps);
            let exact = entropy_exact(&gas)?;
            r.result(
                "log_multiplicity",
                log_multiplicity(a.states, a.excited)?,
                "",
            );
            r.result("entropy_exact", exact.value(), "k");
            if consts.mode() == UnitMode::Si {
                r.result("entropy_exact_physical", exact.to_physical(&consts), "J/K");
            }
            if let Ok(st) = entropy_stirling(&gas) {
                r.result("entropy_stirling", st.value(), "k");
                if exact.value() > 0.0 {
                    r.result(
                        "stirling_relative_error",
                        (st.value() - exact.value()) / exact.value(),
                        "",
                    );
                }
            }
            r.result(
                "internal_energy",
                gas.internal_energy().value(),
                consts.energy_unit(),
            );
            Ok(r)
        }
        GasCommand::Temperature(a) => {
            let (consts, eps) = a.units.resolve()?;
            let gas = TwoLevelGas::new(a.states, a.excited, eps)?;
            let mut r = Report::new("gas temperature");
            r.input("states", a.states).input("excited", a.excited);
            echo_units(&mut r, &consts, eps);
            let closed = temperature_closed(&gas, &consts)?;
            let tu = consts.temperature_unit();
            r.result("temperature_closed", closed.value(), tu);
            let numeric = temperature_numeric(&gas, &consts)?;
            r.result("temperature_numeric", numeric.value(), tu);
            r.result(
                "relative_difference",
                (numeric.value() - closed.value()).abs() / closed.value().abs(),
                "",
            );
            Ok(r)
        }
        GasCommand::Occupation(a) => {
            let (consts, eps) = a.units.resolve()?;
            let t = Temperature::new(a.kt / consts.k())?;
            let mut r = Report::new("gas occupation");
            r.input("states", a.states).input("kt", a.kt);
            echo_units(&mut r, &consts, eps);
            let n = occupation_from_temperature(a.states, eps, t, &consts)?;
            r.result("temperature", t.value(), consts.temperature_unit());
            r.result("expected_excited", n, "");
            r.result("expected_fraction", n / a.states as f64, "");
            Ok(r)
        }
        GasCommand::Transfer(a) => {
            let (consts, eps) = a.units.resolve()?;
            let rec = transfer_balance(a.states, a.n_hot, a.n_cold, eps, &consts)?;
            let mut r = Report::new("gas transfer");
            r.input("states", a.states)
                .input("n_hot", a.n_hot)
                .input("n_cold", a.n_cold);
            echo_units(&mut r, &consts, eps);
            r.result("gas_heat", rec.gas_heat.value(), consts.energy_unit());
            r.result("entropy_removed_hot", rec.entropy_removed_hot.value(), "k");
            r.result("entropy_added_cold", rec.entropy_added_cold.value(), "k");
            r.result("net", rec.net.value(), "k");
            r.result(
                "clausius_lower_bound",
                rec.clausius_lower_bound.value(),
                "k",
            );
            r.verdict(
                "clausius",
                rec.verdict,
                Entropy(rec.net.value() - rec.clausius_lower_bound.value()),
            );
            Ok(r)
        }
        GasCommand::Metropolis(a) => {
            let (consts, eps) = a.units.resolve()?;
            let cfg = McConfig {
                steps: a.steps,
                burn_in: a.burn_in,
                seed: a.seed,
                kt: Energy(a.kt),
            };
            let stats = metropolis_sample(a.states, eps, &cfg)?;
            let t = Temperature::new(a.kt / consts.k())?;
            let target = occupation_from_temperature(a.states, eps, t, &consts)?;
            let mut r = Report::new("gas metropolis");
            r.input("states", a.states)
                .input("kt", a.kt)
                .input("steps", a.steps)
                .input("burn_in", a.burn_in)
                .input("seed", a.seed);
            echo_units(&mut r, &consts, eps);
            r.result("mean_excited", stats.mean_excited, "");
            r.result("std_error", stats.std_error, "");
            r.result("mean_fraction", stats.mean_fraction(), "");
            r.result("analytic_excited", target, "");
            if stats.std_error > 0.0 {
                r.result(
                    "z_score",
                    (stats.mean_excited - target) / stats.std_error,
                    "",
                );
            }
            r.result("samples", stats.samples, "");
            r.result("batches", stats.batches, "");
            r.result("min_excited", stats.min_excited, "");
            r.result("max_excited", stats.max_excited, "");
            r.result("final_excited", stats.final_excited, "");
            r.result("acceptance_rate", stats.acceptance_rate, "");
            Ok(r)
        }
    }
}

fn file_analyze(a: &AnalyzeArgs) -> Result<Report> {
    let (consts, eps) = a.units.resolve()?;
    let stream = read_bitstream(&a.file, a.bit_order.into())?;
    let stats = analyze(&stream, a.order)?;
    let mut r = Report::new("file analyze");
    r.input("file", a.file.display().to_string())
        .input("order", a.order);
    r.input("bit_order", bit_order_name(a.bit_order));
    echo_units(&mut r, &consts, eps);
    r.result("length", stats.length, "bit");
    r.result("ones", stats.ones, "bit");
    r.result("p_hat", stats.p_hat, "");
    r.result("info_iid", stats.info_iid.nats(), "nat");
    match stats.info_rate_markov {
        Some(rate) => r.result("info_rate_markov", rate.nats(), "nat/bit"),
        None => r.result("info_rate_markov", "undecided", "nat/bit"),
    };
    r.result("correlation_lag1", stats.correlation_lag1, "");
    r.result("equilibrium", stats.equilibrium.to_string(), "");
    if stats.equilibrium == Equilibrium::Random {
        let t = file_temperature(eps, &consts)?;
        let (q, s) = file_heat_and_entropy(stats.length, eps)?;
        r.result("temperature", t.value(), consts.temperature_unit());
        r.result("heat", q.value(), consts.energy_unit());
        r.result("entropy", s.value(), "k");
    }
    Ok(r)
}

fn file_thermo(a: &ThermoArgs) -> Result<Report> {
    let (consts, eps) = a.units.resolve()?;
    let t = file_temperature(eps, &consts)?;
    let (q, s) = file_heat_and_entropy(a.length, eps)?;
    let nat = average_nat_energy(eps)?;
    let mut r = Report::new("file thermo");
    r.input("length", a.length);
    echo_units(&mut r, &consts, eps);
    r.result("temperature", t.value(), consts.temperature_unit());
    r.result("heat", q.value(), consts.energy_unit());
    r.result("entropy", s.value(), "k");
    r.result(
        "heat_over_entropy",
        q.value() / (consts.k() * s.value()),
        consts.temperature_unit(),
    );
    r.result("average_nat_energy", nat.value(), consts.energy_unit());
    r.result(
        "thermal_energy",
        t.thermal_energy(&consts).value(),
        consts.energy_unit(),
    );
    Ok(r)
}

fn generator_kind(a: &GenerateArgs) -> GeneratorKind {
    match a.kind {
        KindArg::Bernoulli => GeneratorKind::Bernoulli { p: a.p },
        KindArg::Markov => GeneratorKind::Markov { q: a.q },
        KindArg::OrderedBlock => GeneratorKind::OrderedBlock,
        KindArg::Alternating => GeneratorKind::Alternating,
    }
}

fn generate_cmd(a: &GenerateArgs) -> Result<Report> {
    let spec = GeneratorSpec::new(generator_kind(a), a.length, a.seed);
    let stream = generate(&spec)?;
    stream.write(&a.out, a.bit_order.into())?;
    let mut r = Report::new("generate");
    r.input("kind", spec.kind.to_string())
        .input("length", a.length)
        .input("seed", a.seed)
        .input("out", a.out.display().to_string())
        .input("bit_order", bit_order_name(a.bit_order));
    r.result("length", stream.len(), "bit");
    r.result("ones", stream.ones(), "bit");
    r.result("bytes_written", stream.len().div_ceil(8), "byte");
    Ok(r)
}

fn broadcast(a: &BroadcastArgs) -> Result<Report> {
    let (consts, eps) = a.units.resolve()?;
    let stream = read_bitstream(&a.file, a.bit_order.into())?;
    let stats = analyze(&stream, a.order)?;
    let res = broadcast_balance(&stats, eps, a.receivers, &consts)?;
    let mut r = Report::new("broadcast");
    r.input("file", a.file.display().to_string())
        .input("receivers", a.receivers)
        .input("order", a.order);
    echo_units(&mut r, &consts, eps);
    let tu = consts.temperature_unit();
    r.result("equilibrium", stats.equilibrium.to_string(), "");
    r.result("t_hot", res.t_hot.value(), tu);
    r.result("t_cold", res.t_cold.value(), tu);
    r.result("info_sent", res.info_sent.nats(), "nat");
    r.result("entropy_removed", res.entropy_removed.value(), "k");
    r.result("entropy_deposited", res.entropy_deposited.value(), "k");
    r.result("net_gain", res.net_gain.value(), "k");
    r.result("clausius_margin", res.clausius_margin.value(), "k");
    r.verdict("informatic_clausius", res.verdict, res.clausius_margin);
    Ok(r)
}

fn fiber_simulate(a: &SimulateArgs) -> Result<Output> {
    let (consts, eps) = a.units.resolve()?;
    let cfg = match (a.alpha, a.gain) {
        (Some(alpha), None) => FiberChainConfig {
            epsilon0: eps,
            alpha,
            span_km: a.span_km,
            n_spans: a.spans,
            file_length: a.length,
        },
        (None, Some(g)) => FiberChainConfig::with_span_gain(eps, g, a.span_km, a.spans, a.length)?,
        _ => bail!("give exactly one of --alpha and --gain"),
    };
    if !(a.work_scale.is_finite() && a.work_scale > 0.0) {
        bail!("--work-scale must be positive");
    }
    let mut chain = simulate_chain(&cfg, &consts)?;
    if a.work_scale != 1.0 {
        for c in chain.cycles.iter_mut() {
            *c = c.with_amplifier_work(Energy(c.work_in.value() * a.work_scale), &consts);
        }
        chain.total_work = Energy(chain.cycles.iter().map(|c| c.work_in.value()).sum());
    }

    let mut r = Report::new("fiber simulate");
    r.input("length", a.length)
        .input("alpha", cfg.alpha)
        .input("span_km", cfg.span_km)
        .input("spans", a.spans)
        .input("work_scale", a.work_scale);
    echo_units(&mut r, &consts, eps);
    let eu = consts.energy_unit();
    let tu = consts.temperature_unit();
    r.result("span_gain", chain.span_gain, "");
    r.result("cycles", chain.cycles.len(), "");
    if let Some(c) = chain.cycles.first() {
        r.result("t_hot", c.t_hot.value(), tu);
        r.result("t_cold", c.t_cold.value(), tu);
        r.result("q_hot", c.q_hot.value(), eu);
        r.result("q_cold", c.q_cold.value(), eu);
        r.result("work_per_cycle", c.work_in.value(), eu);
        r.result("efficiency", c.efficiency(), "");
        r.result(
            "carnot_efficiency",
            carnot_efficiency(c.t_hot, c.t_cold)?,
            "",
        );
    }
    r.result("total_work", chain.total_work.value(), eu);
    r.result("info_in", chain.info_in.nats(), "nat");
    r.result("info_out", chain.info_out.nats(), "nat");
    for c in &chain.cycles {
        r.verdict(
            &format!("cycle_{}_entropy_balance", c.span),
            c.verdict,
            c.entropy_balance,
        );
    }

    match &a.csv {
        Some(path) if path.as_os_str() == "-" => {
            if chain.cycles.is_empty() {
                bail!("no cycles to export");
            }
            Ok(Output::Csv {
                text: format_csv(&chain.cycles),
                report: r,
            })
        }
        Some(path) => {
            export_csv(&chain.cycles, Path::new(path))?;
            r.input("csv", path.display().to_string());
            Ok(Output::Report(r))
        }
        None => Ok(Output::Report(r)),
    }
}

fn fiber_carnot(a: &CarnotArgs) -> Result<Report> {
    let eta = carnot_efficiency(Temperature::new(a.t_hot)?, Temperature::new(a.t_cold)?)?;
    let mut r = Report::new("fiber carnot");
    r.input("t_hot", a.t_hot).input("t_cold", a.t_cold);
    r.result("efficiency", eta, "");
    Ok(r)
}

fn fiber_amplify(a: &AmplifyArgs) -> Result<Report> {
    let amp = amplifier_work(
        Energy(a.q_cold),
        Temperature::new(a.t_hot)?,
        Temperature::new(a.t_cold)?,
    )?;
    let mut r = Report::new("fiber amplify");
    r.input("q_cold", a.q_cold)
        .input("t_hot", a.t_hot)
        .input("t_cold", a.t_cold);
    r.result("q_hot", amp.q_hot.value(), "");
    r.result("work", amp.work.value(), "");
    Ok(r)
}

fn landauer(a: &LandauerArgs) -> Result<Report> {
    let q = BoundQuery {
        power: a.power,
        noise_temperature: a.noise_temp,
        margin: a.margin,
        bit_rate: a.bit_rate,
    };
    let rep = q.evaluate()?;
    let mut r = Report::new("landauer");
    r.input("power", a.power)
        .input("noise_temp", a.noise_temp)
        .input("margin", a.margin);
    if let Some(f) = a.bit_rate {
        r.input("bit_rate", f);
    }
    r.result("f_max", rep.f_max, "1/s");
    r.result("energy_per_bit_at_max", rep.energy_per_bit_at_max, "J");
    r.result("landauer_floor", rep.landauer_floor, "J");
    if let Some(op) = rep.operating {
        r.result("device_temperature", op.device_temperature.value(), "K");
        r.result("energy_per_bit", op.energy_per_bit, "J");
        r.result("temperature_ratio", op.temperature_ratio, "");
        r.result("within_bound", op.within_bound, "");
    }
    Ok(r)
}

fn ledger_check(a: &CheckArgs) -> Result<Report> {
    let c = clausius_check(Entropy(a.entropy), Information::from_nats(a.info)?);
    let mut r = Report::new("ledger check");
    r.input("entropy", a.entropy).input("info", a.info);
    r.result("margin", c.margin.value(), "k");
    r.verdict("informatic_clausius", c.verdict, c.margin);
    Ok(r)
}

fn ledger_combined(a: &CombinedArgs) -> Result<Report> {
    let consts = PhysConstants::for_mode(a.units.into());
    let led = combined_balance(
        Energy(a.heat),
        Temperature::new(a.temperature)?,
        Information::from_nats(a.info)?,
        Entropy(a.entropy),
        &consts,
    )?;
    let mut r = Report::new("ledger combined");
    r.input("heat", a.heat)
        .input("temperature", a.temperature)
        .input("info", a.info)
        .input("entropy", a.entropy)
        .input("units", consts.mode().to_string());
    r.result("entropy_lower_bound", led.entropy_lower_bound.value(), "k");
    r.result("entropy_actual", led.entropy_actual.value(), "k");
    r.verdict(
        "combined_clausius",
        led.verdict,
        Entropy(led.entropy_actual.value() - led.entropy_lower_bound.value()),
    );
    Ok(r)
}
