//! Command-line front end. Every command prints one JSON document (or a
//! CSV table) to stdout and errors to stderr; see docs/formats.md.
//!
//! Exit codes: 0 success, 2 input error, 3 resource cap exceeded.

use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::combinatorics::{OccupancyVector, DEFAULT_ENUMERATION_CAP};
use crate::distributions::{
    sample_parallel, Distribution, MultinomialDist, MvhgDist, OccupancyDistribution,
    OneParticleDistribution, SzilardSplitDist,
};
use crate::entropy::{multinomial_entropy, mvhg_entropy, EntropyReport, EntropyUnit, SANDWICH_TOLERANCE};
use crate::error::Error;
use crate::oracle::{brute_force_mvhg, brute_force_partial_trace, exact_to_f64, ExactPmf};
use crate::physics::{ideal_gas_entropy, szilard_insertion, szilard_split_entropy, BoxModel, SpectrumTruncation};
use crate::quantum::{
    empirical_information, holevo_chi, measurement_ledger, EntropyValue, HolevoMode, InitialState,
    MeasurementStep, Scenario,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_MC_SAMPLES: usize = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitArg {
    Nats,
    Bits,
    #[value(name = "kB")]
    KB,
}

impl From<UnitArg> for EntropyUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Nats => EntropyUnit::Nats,
            UnitArg::Bits => EntropyUnit::Bits,
            UnitArg::KB => EntropyUnit::KB,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HolevoModeArg {
    Exact,
    Mc,
}

#[derive(Debug, Parser)]
#[command(name = "occupancy", version, about = "Occupancy distributions and entropies of bosonic systems")]
pub struct Cli {
    /// Output format; converge defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Entropy unit; gas and szilard default to kB, everything else to nats.
    #[arg(long, global = true, value_enum)]
    pub unit: Option<UnitArg>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest support enumerated before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u128,
    /// Relative bound on the Boltzmann weight dropped from a box spectrum.
    #[arg(long = "tail-bound", global = true, default_value_t = 1e-14)]
    pub tail_bound: f64,
    #[arg(long = "mc-samples", global = true, default_value_t = DEFAULT_MC_SAMPLES)]
    pub mc_samples: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposed entropy of a distribution spec.
    Entropy {
        /// Inline JSON, a file path, or - for stdin.
        spec: String,
    },
    /// Hypergeometric-to-multinomial convergence along scaled urns.
    Converge {
        #[arg(long, value_delimiter = ',', required = true)]
        base: Vec<u64>,
        #[arg(short = 'N', long = "particles")]
        particles: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        scales: Vec<u64>,
    },
    /// Exact ideal-gas entropy in a cubic box against Sackur-Tetrode.
    Gas {
        model: String,
        #[arg(short = 'N', long = "particles", default_value_t = 1)]
        particles: u64,
    },
    /// Entropy fall when a piston is inserted in a 1-D box.
    Szilard {
        model: String,
        #[arg(short = 'N', long = "particles", default_value_t = 1)]
        particles: u64,
    },
    /// Holevo bound for a universe drawn from a multinomial prior.
    Holevo {
        #[arg(short = 'U', long = "universe")]
        universe: u64,
        #[arg(short = 'N', long = "particles")]
        particles: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        probs: Vec<f64>,
        #[arg(long, value_enum, default_value_t = HolevoModeArg::Exact)]
        mode: HolevoModeArg,
    },
    /// Information gained by measuring the universe, for an empirical model.
    EmpiricalInfo {
        #[arg(long, value_delimiter = ',', required = true)]
        urn: Vec<u64>,
        #[arg(short = 'N', long = "particles")]
        particles: u64,
    },
    /// Entropy ledger of a measurement scenario.
    Ledger { scenario: String },
    /// Seeded samples from a distribution spec.
    Sample {
        spec: String,
        /// Defaults to --mc-samples.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Brute-force pmfs of a small urn, for debugging.
    #[command(hide = true)]
    Oracle {
        #[arg(long, value_delimiter = ',', required = true)]
        urn: Vec<u64>,
        #[arg(short = 'N', long = "particles")]
        particles: u64,
    },
}

/// Distribution file contents.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DistributionSpec {
    Multinomial {
        #[serde(rename = "N")]
        particles: u64,
        probs: Vec<f64>,
    },
    Mvhg {
        #[serde(rename = "N")]
        particles: u64,
        urn: Vec<u64>,
    },
    Szilard {
        #[serde(rename = "N")]
        particles: u64,
        #[serde(default = "half")]
        fraction: f64,
        left: Vec<f64>,
        right: Vec<f64>,
    },
}

fn half() -> f64 {
    0.5
}

impl DistributionSpec {
    pub fn build(&self) -> crate::Result<Distribution> {
        Ok(match self {
            DistributionSpec::Multinomial { particles, probs } => Distribution::Multinomial(MultinomialDist::new(
                *particles,
                OneParticleDistribution::user(probs.clone())?,
            )),
            DistributionSpec::Mvhg { particles, urn } => {
                Distribution::Mvhg(MvhgDist::new(OccupancyVector::new(urn.clone()), *particles)?)
            }
            DistributionSpec::Szilard { particles, fraction, left, right } => {
                Distribution::Szilard(SzilardSplitDist::new(
                    *particles,
                    *fraction,
                    OneParticleDistribution::user(left.clone())?,
                    OneParticleDistribution::user(right.clone())?,
                )?)
            }
        })
    }
}

/// A command's result, ready to print in either format.
struct Output {
    json: Value,
    table: Option<Table>,
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn render(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

fn read_input(arg: &str) -> crate::Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Error::Input(format!("stdin: {e}")))?;
        return Ok(buf);
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("{arg}: {e}")))
}

fn parse_json<T: for<'de> Deserialize<'de>>(arg: &str) -> crate::Result<T> {
    let text = read_input(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}

/// A scenario is either `{"initial": …, "steps": […]}` or a list whose
/// first element is the initial state and the rest are steps.
pub fn parse_scenario(text: &str) -> crate::Result<Scenario> {
    let bad = |e: serde_json::Error| Error::Input(format!("malformed scenario: {e}"));
    let value: Value = serde_json::from_str(text).map_err(bad)?;
    match value {
        Value::Array(items) => {
            let mut items = items.into_iter();
            let first = items.next().ok_or_else(|| Error::Input("empty scenario list".into()))?;
            let initial: InitialState = serde_json::from_value(first).map_err(bad)?;
            let steps = items
                .map(serde_json::from_value::<MeasurementStep>)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(bad)?;
            Ok(Scenario { initial, steps })
        }
        other => serde_json::from_value(other).map_err(bad),
    }
}

fn report_json(r: &EntropyReport) -> Value {
    json!({
        "microstate_term": r.microstate_term,
        "expected_log_w": r.expected_log_w,
        "total": r.total,
        "boltzmann": r.boltzmann,
        "sandwich_holds": r.sandwich_holds(SANDWICH_TOLERANCE),
    })
}

fn unit_name(u: EntropyUnit) -> &'static str {
    match u {
        EntropyUnit::Nats => "nats",
        EntropyUnit::Bits => "bits",
        EntropyUnit::KB => "kB",
    }
}

fn entropy_value(v: EntropyValue, unit: EntropyUnit) -> Value {
    match v {
        EntropyValue::Defined(x) => json!(unit.from_nats(x)),
        EntropyValue::Undefined => json!("undefined"),
    }
}

fn entropy_cell(v: EntropyValue, unit: EntropyUnit) -> String {
    match v {
        EntropyValue::Defined(x) => unit.from_nats(x).to_string(),
        EntropyValue::Undefined => "undefined".into(),
    }
}

fn kind_name(d: &Distribution) -> &'static str {
    match d {
        Distribution::Multinomial(_) => "multinomial",
        Distribution::Mvhg(_) => "mvhg",
        Distribution::Szilard(_) => "szilard",
    }
}

fn cmd_entropy(cli: &Cli, spec: &str) -> crate::Result<Output> {
    let unit: EntropyUnit = cli.unit.map(Into::into).unwrap_or_default();
    let spec: DistributionSpec = parse_json(spec)?;
    let d = spec.build()?;
    let kind = kind_name(&d);
    let report = match &d {
        Distribution::Multinomial(m) => Some(multinomial_entropy(m)),
        Distribution::Mvhg(m) => Some(mvhg_entropy(m)),
        Distribution::Szilard(_) => None,
    };
    let mut table = Table::new(&["kind", "microstate_term", "expected_log_w", "total", "boltzmann", "unit"]);
    let json = match (&d, report) {
        (_, Some(r)) => {
            let r = r.in_unit(unit);
            table.rows.push(vec![
                kind.into(),
                r.microstate_term.to_string(),
                r.expected_log_w.to_string(),
                r.total.to_string(),
                r.boltzmann.to_string(),
                unit_name(unit).into(),
            ]);
            json!({ "kind": kind, "unit": unit_name(unit), "report": report_json(&r) })
        }
        (Distribution::Szilard(s), None) => {
            let total = unit.from_nats(szilard_split_entropy(s));
            table.rows.push(vec![kind.into(), String::new(), String::new(), total.to_string(), String::new(), unit_name(unit).into()]);
            json!({ "kind": kind, "unit": unit_name(unit), "report": { "total": total } })
        }
        _ => unreachable!("only the split law lacks a decomposed report"),
    };
    Ok(Output { json, table: Some(table) })
}

fn cmd_converge(cli: &Cli, base: &[u64], particles: u64, scales: &[u64]) -> crate::Result<Output> {
    let unit: EntropyUnit = cli.unit.map(Into::into).unwrap_or_default();
    let base = OccupancyVector::new(base.to_vec());
    let rows = crate::distributions::convergence_scan(&base, particles, scales, cli.cap)?;
    let limit = MultinomialDist::new(particles, OneParticleDistribution::empirical(&base)?);
    let multinomial = multinomial_entropy(&limit).total;
    let mut table = Table::new(&["U", "tv", "hyper_entropy", "multinomial_entropy", "empirical_information"]);
    let mut json_rows = Vec::new();
    for row in rows {
        let urn = base.scaled(row.scale);
        let hyper = mvhg_entropy(&MvhgDist::new(urn.clone(), particles)?).total;
        let info = empirical_information(&urn, particles)?;
        let (h, m, i) = (unit.from_nats(hyper), unit.from_nats(multinomial), unit.from_nats(info));
        table.rows.push(vec![row.universe.to_string(), row.tv.to_string(), h.to_string(), m.to_string(), i.to_string()]);
        json_rows.push(json!({
            "U": row.universe,
            "tv": row.tv,
            "hyper_entropy": h,
            "multinomial_entropy": m,
            "empirical_information": i,
        }));
    }
    let json = json!({
        "base": base,
        "N": particles,
        "unit": unit_name(unit),
        "rows": json_rows,
    });
    Ok(Output { json, table: Some(table) })
}

fn truncation(cli: &Cli) -> crate::Result<SpectrumTruncation> {
    SpectrumTruncation::new(cli.tail_bound, SpectrumTruncation::default().max_states)
        .map_err(|e| Error::Input(e.to_string()))
}

fn cmd_gas(cli: &Cli, model: &str, particles: u64) -> crate::Result<Output> {
    let unit: EntropyUnit = cli.unit.map(Into::into).unwrap_or(EntropyUnit::KB);
    let model: BoxModel = parse_json(model)?;
    let gas = ideal_gas_entropy(&model, particles, &truncation(cli)?)?;
    let exact = gas.exact.in_unit(unit);
    let st = unit.from_nats(gas.sackur_tetrode);
    let mut table = Table::new(&["N", "exact", "sackur_tetrode", "relative_gap", "Z", "states_retained", "unit"]);
    table.rows.push(vec![
        particles.to_string(),
        exact.total.to_string(),
        st.to_string(),
        gas.relative_gap.to_string(),
        gas.partition_function.to_string(),
        gas.states_retained.to_string(),
        unit_name(unit).into(),
    ]);
    let json = json!({
        "model": model,
        "N": particles,
        "unit": unit_name(unit),
        "exact": report_json(&exact),
        "sackur_tetrode": st,
        "relative_gap": gas.relative_gap,
        "Z": gas.partition_function,
        "ln_Z": gas.ln_partition_function,
        "states_retained": gas.states_retained,
        "tail_bound_achieved": gas.relative_tail_bound_achieved,
    });
    Ok(Output { json, table: Some(table) })
}

fn cmd_szilard(cli: &Cli, model: &str, particles: u64) -> crate::Result<Output> {
    let unit: EntropyUnit = cli.unit.map(Into::into).unwrap_or(EntropyUnit::KB);
    let model: BoxModel = parse_json(model)?;
    let r = szilard_insertion(&model, particles, &truncation(cli)?)?;
    let (before, after, delta, half) = (
        unit.from_nats(r.s_before),
        unit.from_nats(r.s_after),
        unit.from_nats(r.delta),
        unit.from_nats(r.half_box_entropy),
    );
    let mut table = Table::new(&["N", "S_before", "S_after", "delta", "half_box_entropy", "unit"]);
    table.rows.push(vec![
        particles.to_string(),
        before.to_string(),
        after.to_string(),
        delta.to_string(),
        half.to_string(),
        unit_name(unit).into(),
    ]);
    let json = json!({
        "model": model,
        "N": particles,
        "unit": unit_name(unit),
        "S_before": before,
        "S_after": after,
        "delta": delta,
        "half_box_entropy": half,
        "entropy_falls": r.delta > 0.0,
    });
    Ok(Output { json, table: Some(table) })
}

fn cmd_holevo(cli: &Cli, universe: u64, particles: u64, probs: &[f64], mode: HolevoModeArg) -> crate::Result<Output> {
    let unit: EntropyUnit = cli.unit.map(Into::into).unwrap_or_default();
    let p = OneParticleDistribution::user(probs.to_vec())?;
    let mode = match mode {
        HolevoModeArg::Exact => HolevoMode::Exact,
        HolevoModeArg::Mc => HolevoMode::MonteCarlo { samples: cli.mc_samples, seed: cli.seed },
    };
    let est = holevo_chi(universe, particles, &p, mode, cli.cap)?;
    let chi = unit.from_nats(est.chi);
    let se = est.standard_error.map(|s| unit.from_nats(s));
    let mut table = Table::new(&["U", "N", "chi", "standard_error", "unit"]);
    table.rows.push(vec![
        universe.to_string(),
        particles.to_string(),
        chi.to_string(),
        se.map(|s| s.to_string()).unwrap_or_default(),
        unit_name(unit).into(),
    ]);
    let mut json = json!({
        "U": universe,
        "N": particles,
        "probs": probs,
        "mode": match mode { HolevoMode::Exact => "exact", HolevoMode::MonteCarlo { .. } => "mc" },
        "unit": unit_name(unit),
        "chi": chi,
    });
    if let Some(s) = se {
        json["standard_error"] = json!(s);
        json["samples"] = json!(cli.mc_samples);
        json["seed"] = json!(cli.seed);
    }
    Ok(Output { json, table: Some(table) })
}

fn cmd_empirical_info(cli: &Cli, urn: &[u64], particles: u64) -> crate::Result<Output> {
    let unit: EntropyUnit = cli.unit.map(Into::into).unwrap_or_default();
    let urn = OccupancyVector::new(urn.to_vec());
    let hyper = mvhg_entropy(&MvhgDist::new(urn.clone(), particles)?).total;
    let info = empirical_information(&urn, particles)?;
    let (h, i) = (unit.from_nats(hyper), unit.from_nats(info));
    let m = h + i;
    let mut table = Table::new(&["U", "N", "multinomial_entropy", "hyper_entropy", "empirical_information", "unit"]);
    table.rows.push(vec![
        urn.total().to_string(),
        particles.to_string(),
        m.to_string(),
        h.to_string(),
        i.to_string(),
        unit_name(unit).into(),
    ]);
    let json = json!({
        "urn": urn,
        "N": particles,
        "unit": unit_name(unit),
        "multinomial_entropy": m,
        "hyper_entropy": h,
        "empirical_information": i,
    });
    Ok(Output { json, table: Some(table) })
}

fn cmd_ledger(cli: &Cli, scenario: &str) -> crate::Result<Output> {
    let unit: EntropyUnit = cli.unit.map(Into::into).unwrap_or_default();
    let scenario = parse_scenario(&read_input(scenario)?)?;
    let ledger = measurement_ledger(&scenario)?;
    let mut table = Table::new(&["label", "pre_entropy", "post_entropy", "information_gained"]);
    let mut rows = Vec::new();
    for r in &ledger.steps {
        table.rows.push(vec![
            r.label.clone(),
            entropy_cell(r.pre_entropy, unit),
            entropy_cell(r.post_entropy, unit),
            entropy_cell(r.information_gained, unit),
        ]);
        rows.push(json!({
            "label": r.label,
            "pre_entropy": entropy_value(r.pre_entropy, unit),
            "post_entropy": entropy_value(r.post_entropy, unit),
            "information_gained": entropy_value(r.information_gained, unit),
        }));
    }
    let json = json!({
        "unit": unit_name(unit),
        "initial_entropy": entropy_value(ledger.initial_entropy, unit),
        "steps": rows,
        "total_information": entropy_value(ledger.total_information, unit),
    });
    Ok(Output { json, table: Some(table) })
}

fn cmd_sample(cli: &Cli, spec: &str, count: Option<usize>, workers: usize) -> crate::Result<Output> {
    let spec: DistributionSpec = parse_json(spec)?;
    let d = spec.build()?;
    let count = count.unwrap_or(cli.mc_samples);
    let samples = sample_parallel(&d, count, cli.seed, workers);
    let header: Vec<String> = (0..d.num_colors()).map(|c| format!("n{c}")).collect();
    let mut table = Table { header, rows: Vec::new() };
    for s in &samples {
        table.rows.push(s.counts().iter().map(|c| c.to_string()).collect());
    }
    let json = json!({
        "kind": kind_name(&d),
        "N": d.particles(),
        "seed": cli.seed,
        "workers": workers.max(1),
        "count": count,
        "samples": samples,
    });
    Ok(Output { json, table: Some(table) })
}

fn exact_json(pmf: &ExactPmf) -> Value {
    let rows: Vec<Value> = pmf
        .iter()
        .map(|(n, q)| json!({ "n": n, "exact": q.to_string(), "value": exact_to_f64(q) }))
        .collect();
    Value::Array(rows)
}

fn cmd_oracle(urn: &[u64], particles: u64) -> crate::Result<Output> {
    let urn = OccupancyVector::new(urn.to_vec());
    let brute = brute_force_mvhg(&urn, particles)?;
    let traced = match brute_force_partial_trace(&urn, particles) {
        Ok(t) => exact_json(&t),
        Err(e) if e.is_resource_error() => json!(null),
        Err(e) => return Err(e),
    };
    let d = MvhgDist::new(urn.clone(), particles)?;
    let mut float = Vec::new();
    for n in brute.keys() {
        float.push(json!({ "n": n, "value": d.pmf(n)? }));
    }
    let json = json!({
        "urn": urn,
        "N": particles,
        "brute_force_mvhg": exact_json(&brute),
        "brute_force_partial_trace": traced,
        "mvhg_pmf": float,
    });
    Ok(Output { json, table: None })
}

fn dispatch(cli: &Cli) -> crate::Result<(Output, &'static str, Format)> {
    let (out, name) = match &cli.command {
        Command::Entropy { spec } => (cmd_entropy(cli, spec)?, "entropy"),
        Command::Converge { base, particles, scales } => (cmd_converge(cli, base, *particles, scales)?, "converge"),
        Command::Gas { model, particles } => (cmd_gas(cli, model, *particles)?, "gas"),
        Command::Szilard { model, particles } => (cmd_szilard(cli, model, *particles)?, "szilard"),
        Command::Holevo { universe, particles, probs, mode } => {
            (cmd_holevo(cli, *universe, *particles, probs, *mode)?, "holevo")
        }
        Command::EmpiricalInfo { urn, particles } => (cmd_empirical_info(cli, urn, *particles)?, "empirical-info"),
        Command::Ledger { scenario } => (cmd_ledger(cli, scenario)?, "ledger"),
        Command::Sample { spec, count, workers } => (cmd_sample(cli, spec, *count, *workers)?, "sample"),
        Command::Oracle { urn, particles } => (cmd_oracle(urn, *particles)?, "oracle"),
    };
    let default_format = if name == "converge" { Format::Csv } else { Format::Json };
    Ok((out, name, cli.format.unwrap_or(default_format)))
}

fn exit_code(e: &Error) -> i32 {
    if e.is_resource_error() {
        EXIT_RESOURCE
    } else {
        EXIT_INPUT
    }
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams, and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((output, name, format)) => {
            let text = match (format, &output.table) {
                (Format::Csv, Some(t)) => t.render(),
                (Format::Csv, None) => {
                    let _ = writeln!(err, "error: {name} has no CSV output");
                    return EXIT_INPUT;
                }
                (Format::Json, _) => {
                    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": name });
                    if let (Value::Object(d), Value::Object(body)) = (&mut doc, output.json) {
                        d.extend(body);
                    }
                    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
                    s.push('\n');
                    s
                }
            };
            match out.write_all(text.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
