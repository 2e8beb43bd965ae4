//! Diagonal bosonic density operators and the information quantities built
//! on them.
//!
//! Every operator here is diagonal in the occupancy basis |n̄⟩, so it is
//! stored as its weights; its von Neumann entropy is the Shannon entropy of
//! those weights.

use std::collections::BTreeMap;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_occupancies_capped, OccupancyVector, DEFAULT_ENUMERATION_CAP};
use crate::distributions::{
    pairwise_sum, xlogx, MultinomialDist, MvhgDist, OccupancyDistribution, OneParticleDistribution,
    SamplerRng,
};
use crate::entropy::{multinomial_entropy, mvhg_entropy};
use crate::error::{Error, Result};

/// Tolerance on the total weight of a density operator.
pub const TRACE_TOLERANCE: f64 = 1e-10;

/// How a density operator was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorSource {
    /// Partial trace of the universe eigenstate |ū⟩⟨ū|.
    TracedFromUniverse { urn: OccupancyVector },
    Canonical { probs: Vec<f64> },
    /// Prior-weighted mixture of traced states over all universes of U particles.
    BayesianMarginal { probs: Vec<f64>, universe: u64 },
    Empirical { urn: OccupancyVector },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BosonicDensityOperator {
    weights: BTreeMap<OccupancyVector, f64>,
    particles: u64,
    source: OperatorSource,
}

impl BosonicDensityOperator {
    fn from_weights(
        weights: BTreeMap<OccupancyVector, f64>,
        particles: u64,
        source: OperatorSource,
    ) -> Result<Self> {
        if let Some(bad) = weights.keys().find(|k| k.total() != particles) {
            return Err(Error::Input(format!("basis state {bad} does not hold {particles} particles")));
        }
        let trace = pairwise_sum(&weights.values().copied().collect::<Vec<_>>());
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::Input(format!("trace is {trace}, expected 1")));
        }
        Ok(BosonicDensityOperator { weights, particles, source })
    }

    fn from_distribution(
        d: &dyn OccupancyDistribution,
        source: OperatorSource,
        cap: u128,
    ) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for n in enumerate_occupancies_capped(d.particles(), d.num_colors(), cap)? {
            let w = d.pmf(&n)?;
            if w > 0.0 {
                weights.insert(n, w);
            }
        }
        Self::from_weights(weights, d.particles(), source)
    }

    /// The canonical operator with multinomial weights.
    pub fn canonical(particles: u64, p: &OneParticleDistribution, cap: u128) -> Result<Self> {
        let d = MultinomialDist::new(particles, p.clone());
        Self::from_distribution(&d, OperatorSource::Canonical { probs: p.probs().to_vec() }, cap)
    }

    /// Multinomial weights built on the empirical fractions of `urn`.
    pub fn empirical(urn: &OccupancyVector, particles: u64, cap: u128) -> Result<Self> {
        let d = MultinomialDist::new(particles, OneParticleDistribution::empirical(urn)?);
        Self::from_distribution(&d, OperatorSource::Empirical { urn: urn.clone() }, cap)
    }

    /// Σ_ū P(ū) ν̂_ū over every universe ū of `universe` particles.
    pub fn bayesian_marginal(
        universe: u64,
        particles: u64,
        p: &OneParticleDistribution,
        cap: u128,
    ) -> Result<Self> {
        if particles > universe {
            return Err(Error::DrawsExceedUniverse { draws: particles, universe });
        }
        let prior = MultinomialDist::new(universe, p.clone());
        let mut weights: BTreeMap<OccupancyVector, f64> = BTreeMap::new();
        for urn in enumerate_occupancies_capped(universe, p.num_colors(), cap)? {
            let pu = prior.pmf(&urn)?;
            if pu == 0.0 {
                continue;
            }
            let traced = trace_out_environment_capped(&urn, particles, cap)?;
            for (n, w) in traced.weights {
                *weights.entry(n).or_insert(0.0) += pu * w;
            }
        }
        let source = OperatorSource::BayesianMarginal { probs: p.probs().to_vec(), universe };
        Self::from_weights(weights, particles, source)
    }

    pub fn weights(&self) -> &BTreeMap<OccupancyVector, f64> {
        &self.weights
    }

    /// Weight of |n̄⟩; zero off the support.
    pub fn weight(&self, n: &OccupancyVector) -> f64 {
        self.weights.get(n).copied().unwrap_or(0.0)
    }

    pub fn particles(&self) -> u64 {
        self.particles
    }

    pub fn source(&self) -> &OperatorSource {
        &self.source
    }

    pub fn von_neumann_entropy(&self) -> f64 {
        let terms: Vec<f64> = self.weights.values().map(|&w| xlogx(w)).collect();
        (-pairwise_sum(&terms)).max(0.0)
    }
}

/// Reduced state of N particles when the universe sits in |ū⟩: the
/// hypergeometric law of `urn` and N.
pub fn trace_out_environment(universe: &OccupancyVector, particles: u64) -> Result<BosonicDensityOperator> {
    trace_out_environment_capped(universe, particles, DEFAULT_ENUMERATION_CAP)
}

pub fn trace_out_environment_capped(
    universe: &OccupancyVector,
    particles: u64,
    cap: u128,
) -> Result<BosonicDensityOperator> {
    let d = MvhgDist::new(universe.clone(), particles)?;
    BosonicDensityOperator::from_distribution(
        &d,
        OperatorSource::TracedFromUniverse { urn: universe.clone() },
        cap,
    )
}

/// Largest |Σ_ū Mult(U,P)(ū) Mvhg(ū,N)(n̄) − Mult(N,P)(n̄)| over all n̄.
pub fn bayesian_marginal_check(
    universe: u64,
    particles: u64,
    p: &OneParticleDistribution,
    cap: u128,
) -> Result<f64> {
    let marginal = BosonicDensityOperator::bayesian_marginal(universe, particles, p, cap)?;
    let canonical = MultinomialDist::new(particles, p.clone());
    let mut worst: f64 = 0.0;
    for n in enumerate_occupancies_capped(particles, p.num_colors(), cap)? {
        worst = worst.max((marginal.weight(&n) - canonical.pmf(&n)?).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HolevoMode {
    Exact,
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolevoEstimate {
    pub chi: f64,
    /// Present in Monte Carlo mode only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_error: Option<f64>,
}

/// Holevo bound χ = S(ν̂) − Σ_ū P(ū) S(ν̂_ū) for a universe of U particles
/// drawn from the multinomial prior Mult(U, P) and a system of N.
///
/// S(ν̂) is always analytic; in Monte Carlo mode only the conditional term
/// is estimated, from seeded prior draws.
pub fn holevo_chi(
    universe: u64,
    particles: u64,
    p: &OneParticleDistribution,
    mode: HolevoMode,
    cap: u128,
) -> Result<HolevoEstimate> {
    if particles > universe {
        return Err(Error::DrawsExceedUniverse { draws: particles, universe });
    }
    let marginal_entropy = multinomial_entropy(&MultinomialDist::new(particles, p.clone())).total;
    let prior = MultinomialDist::new(universe, p.clone());
    match mode {
        HolevoMode::Exact => {
            let mut terms = Vec::new();
            for urn in enumerate_occupancies_capped(universe, p.num_colors(), cap)? {
                let pu = prior.pmf(&urn)?;
                if pu > 0.0 {
                    terms.push(pu * mvhg_entropy(&MvhgDist::new(urn, particles)?).total);
                }
            }
            Ok(HolevoEstimate { chi: marginal_entropy - pairwise_sum(&terms), standard_error: None })
        }
        HolevoMode::MonteCarlo { samples, seed } => {
            if samples < 2 {
                return Err(Error::Input("Monte Carlo mode needs at least 2 samples".into()));
            }
            let mut rng = SamplerRng::seed_from_u64(seed);
            let mut values = Vec::with_capacity(samples);
            for _ in 0..samples {
                let urn = prior.sample_one(&mut rng);
                values.push(mvhg_entropy(&MvhgDist::new(urn, particles)?).total);
            }
            let n = samples as f64;
            let mean = pairwise_sum(&values) / n;
            let sq: Vec<f64> = values.iter().map(|v| (v - mean).powi(2)).collect();
            let var = pairwise_sum(&sq) / (n - 1.0);
            Ok(HolevoEstimate { chi: marginal_entropy - mean, standard_error: Some((var / n).sqrt()) })
        }
    }
}

/// S(empirical multinomial) − S(hypergeometric) for a measured universe ū.
pub fn empirical_information(universe: &OccupancyVector, particles: u64) -> Result<f64> {
    let hyper = MvhgDist::new(universe.clone(), particles)?;
    if particles == 0 {
        return Ok(0.0);
    }
    let p = OneParticleDistribution::empirical(universe)?;
    let emp = multinomial_entropy(&MultinomialDist::new(particles, p)).total;
    Ok(emp - mvhg_entropy(&hyper).total)
}

/// An entropy or information value that may be undefined, as when the
/// experimenter declines to assign a prior. There is deliberately no
/// arithmetic on this type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EntropyValue {
    Defined(f64),
    #[serde(serialize_with = "serialize_undefined")]
    Undefined,
}

fn serialize_undefined<S: serde::Serializer>(s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str("undefined")
}

impl EntropyValue {
    pub fn value(self) -> Option<f64> {
        match self {
            EntropyValue::Defined(v) => Some(v),
            EntropyValue::Undefined => None,
        }
    }

    pub fn is_defined(self) -> bool {
        matches!(self, EntropyValue::Defined(_))
    }
}

/// The experimenter's state of knowledge before any measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    /// Multinomial prior from a trusted one-particle model.
    Bayesian {
        #[serde(rename = "N")]
        particles: u64,
        probs: Vec<f64>,
    },
    /// Multinomial model on the empirical fractions of an observed universe.
    Empirical {
        #[serde(rename = "N")]
        particles: u64,
        urn: Vec<u64>,
    },
    /// No pre-measurement distribution at all.
    Agnostic {
        #[serde(rename = "N")]
        particles: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasurementStep {
    /// Projective measurement of the whole universe, finding ū; a POVM on
    /// the system that leaves it hypergeometric.
    PvmOnUniverse { urn: Vec<u64> },
    /// The universe measurement read through the empirical multinomial
    /// model on ū, which gives the agnostic experimenter a defined
    /// pre-measurement entropy.
    PovmEmpiricalModel { urn: Vec<u64> },
    /// Separation of system and environment; carries no information.
    Separate {},
    /// Projective measurement of the system; leaves an eigenstate.
    PvmOnSystem {},
}

impl MeasurementStep {
    fn label(&self) -> &'static str {
        match self {
            MeasurementStep::PvmOnUniverse { .. } => "pvm_on_universe",
            MeasurementStep::PovmEmpiricalModel { .. } => "povm_empirical_model",
            MeasurementStep::Separate {} => "separate",
            MeasurementStep::PvmOnSystem {} => "pvm_on_system",
        }
    }
}

/// A measurement scenario: a starting state followed by steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub initial: InitialState,
    pub steps: Vec<MeasurementStep>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LedgerRow {
    pub label: String,
    pub pre_entropy: EntropyValue,
    pub post_entropy: EntropyValue,
    pub information_gained: EntropyValue,
}

/// Per-step entropy bookkeeping; `information_gained = pre − post` on
/// every row where both are defined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementLedger {
    pub initial_entropy: EntropyValue,
    pub steps: Vec<LedgerRow>,
    pub total_information: EntropyValue,
}

fn check_urn(urn: &[u64], particles: u64, colors: Option<usize>) -> Result<OccupancyVector> {
    let urn = OccupancyVector::new(urn.to_vec());
    if let Some(c) = colors {
        if urn.num_colors() != c {
            return Err(Error::DimensionMismatch { expected: c, got: urn.num_colors() });
        }
    }
    if particles > urn.total() {
        return Err(Error::DrawsExceedUniverse { draws: particles, universe: urn.total() });
    }
    Ok(urn)
}

fn empirical_multinomial_entropy(urn: &OccupancyVector, particles: u64) -> Result<f64> {
    let p = OneParticleDistribution::empirical(urn)?;
    Ok(multinomial_entropy(&MultinomialDist::new(particles, p)).total)
}

/// Runs a scenario and records the entropy before and after each step.
pub fn measurement_ledger(scenario: &Scenario) -> Result<MeasurementLedger> {
    let (particles, colors, mut current, empirical_urn) = match &scenario.initial {
        InitialState::Bayesian { particles, probs } => {
            let p = OneParticleDistribution::user(probs.clone())?;
            let s = multinomial_entropy(&MultinomialDist::new(*particles, p)).total;
            (*particles, Some(probs.len()), EntropyValue::Defined(s), None)
        }
        InitialState::Empirical { particles, urn } => {
            let urn = check_urn(urn, *particles, None)?;
            let s = empirical_multinomial_entropy(&urn, *particles)?;
            (*particles, Some(urn.num_colors()), EntropyValue::Defined(s), Some(urn))
        }
        InitialState::Agnostic { particles } => (*particles, None, EntropyValue::Undefined, None),
    };
    let initial_entropy = current;
    let mut rows = Vec::with_capacity(scenario.steps.len());
    let mut universe_measured = false;
    let mut collapsed = false;

    for (i, step) in scenario.steps.iter().enumerate() {
        if collapsed {
            return Err(Error::Scenario(format!(
                "step {i} ({}) follows pvm_on_system, which already left an eigenstate",
                step.label()
            )));
        }
        let mut pre = current;
        let post = match step {
            MeasurementStep::PvmOnUniverse { urn } | MeasurementStep::PovmEmpiricalModel { urn } => {
                if universe_measured {
                    return Err(Error::Scenario(format!("step {i}: universe measured twice")));
                }
                universe_measured = true;
                let urn = check_urn(urn, particles, colors)?;
                if let Some(e) = &empirical_urn {
                    if *e != urn {
                        return Err(Error::Scenario(format!(
                            "step {i}: measured universe {urn} differs from the empirical model's {e}"
                        )));
                    }
                }
                if matches!(step, MeasurementStep::PovmEmpiricalModel { .. }) {
                    if matches!(scenario.initial, InitialState::Bayesian { .. }) {
                        return Err(Error::Scenario(format!(
                            "step {i}: povm_empirical_model needs an empirical or agnostic start"
                        )));
                    }
                    pre = EntropyValue::Defined(empirical_multinomial_entropy(&urn, particles)?);
                }
                EntropyValue::Defined(mvhg_entropy(&MvhgDist::new(urn, particles)?).total)
            }
            MeasurementStep::Separate {} => current,
            MeasurementStep::PvmOnSystem {} => {
                collapsed = true;
                EntropyValue::Defined(0.0)
            }
        };
        let gained = match (pre, post) {
            (EntropyValue::Defined(a), EntropyValue::Defined(b)) => EntropyValue::Defined(a - b),
            _ if matches!(step, MeasurementStep::Separate {}) => EntropyValue::Defined(0.0),
            _ => EntropyValue::Undefined,
        };
        rows.push(LedgerRow {
            label: step.label().to_string(),
            pre_entropy: pre,
            post_entropy: post,
            information_gained: gained,
        });
        current = post;
    }

    let total_information = if rows.iter().all(|r| r.information_gained.is_defined()) {
        let gains: Vec<f64> = rows.iter().filter_map(|r| r.information_gained.value()).collect();
        EntropyValue::Defined(pairwise_sum(&gains))
    } else {
        EntropyValue::Undefined
    };
    Ok(MeasurementLedger { initial_entropy, steps: rows, total_information })
}
