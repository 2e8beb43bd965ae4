//! Particle-in-a-box spectra, truncated Boltzmann distributions, the ideal
//! gas entropy and the piston insertion of a Szilard engine.
//!
//! Internal energies are SI joules; entropies returned by this module are
//! in k_B units.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::distributions::{
    binomial_pmf, pairwise_sum, xlogx, MultinomialDist, OneParticleDistribution, Provenance,
    SzilardSplitDist,
};
use crate::entropy::{multinomial_entropy, sackur_tetrode, EntropyReport, EntropyUnit};
use crate::error::{Error, Result};

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626e-34;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.38e-23;

/// Largest particle number accepted by [`ideal_gas_entropy`].
pub const GAS_PARTICLE_LIMIT: u64 = 1_000_000;

/// A particle of mass `mass` in a box of side `side_length` with hard walls,
/// in equilibrium at `temperature`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxModel {
    #[serde(rename = "mass_kg")]
    pub mass: f64,
    #[serde(rename = "temperature_K")]
    pub temperature: f64,
    #[serde(rename = "side_m")]
    pub side_length: f64,
    #[serde(rename = "dims")]
    pub dimensions: u8,
}

impl BoxModel {
    pub fn new(mass: f64, temperature: f64, side_length: f64, dimensions: u8) -> Result<Self> {
        let m = BoxModel { mass, temperature, side_length, dimensions };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, x) in [
            ("mass", self.mass),
            ("temperature", self.temperature),
            ("side length", self.side_length),
        ] {
            if !x.is_finite() || x <= 0.0 {
                return Err(Error::Domain(format!("{name} must be positive, got {x}")));
            }
        }
        if self.dimensions != 1 && self.dimensions != 3 {
            return Err(Error::Domain(format!("dims must be 1 or 3, got {}", self.dimensions)));
        }
        Ok(())
    }

    pub fn with_temperature(self, temperature: f64) -> Self {
        BoxModel { temperature, ..self }
    }

    pub fn with_side_length(self, side_length: f64) -> Self {
        BoxModel { side_length, ..self }
    }

    pub fn with_dimensions(self, dimensions: u8) -> Self {
        BoxModel { dimensions, ..self }
    }

    /// h²/(8 m L²): energy of the level Σc² = 1.
    pub fn energy_quantum(&self) -> f64 {
        PLANCK * PLANCK / (8.0 * self.mass * self.side_length * self.side_length)
    }

    /// Dimensionless spacing α = h²/(8 m L² k_B T); state weights are e^{−α Σc²}.
    pub fn alpha(&self) -> f64 {
        self.energy_quantum() / (BOLTZMANN * self.temperature)
    }
}

/// When to stop adding states to the partition function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTruncation {
    /// Bound on the omitted Boltzmann weight relative to the retained sum.
    pub relative_tail_bound: f64,
    pub max_states: usize,
}

impl Default for SpectrumTruncation {
    fn default() -> Self {
        SpectrumTruncation { relative_tail_bound: 1e-14, max_states: 20_000_000 }
    }
}

impl SpectrumTruncation {
    pub fn new(relative_tail_bound: f64, max_states: usize) -> Result<Self> {
        if !(relative_tail_bound > 0.0 && relative_tail_bound < 1.0) {
            return Err(Error::Domain(format!(
                "relative tail bound must lie in (0,1), got {relative_tail_bound}"
            )));
        }
        Ok(SpectrumTruncation { relative_tail_bound, max_states })
    }
}

/// One stationary state of the box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BoxState {
    /// Σ c_i², the energy in units of h²/(8 m L²).
    pub level: u64,
    numbers: [u32; 3],
    dims: u8,
}

impl BoxState {
    pub fn quantum_numbers(&self) -> &[u32] {
        &self.numbers[..self.dims as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub dimensions: u8,
    /// Non-decreasing in energy; degenerate states are listed separately.
    pub states: Vec<BoxState>,
    /// h²/(8 m L²), J.
    pub energy_quantum: f64,
    /// ε / k_BT per unit level.
    pub alpha: f64,
    /// ln of the retained Σ e^{−ε/k_BT}.
    pub ln_partial_sum: f64,
    /// Upper bound on the omitted weight divided by the retained weight.
    pub relative_omitted_bound: f64,
}

impl Spectrum {
    pub fn energy(&self, state: &BoxState) -> f64 {
        state.level as f64 * self.energy_quantum
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Boltzmann weights relative to the ground state, e^{−α(level − level₀)}.
    pub fn relative_weights(&self) -> Vec<f64> {
        let ground = self.states.first().map_or(0, |s| s.level);
        self.states.iter().map(|s| (-self.alpha * (s.level - ground) as f64).exp()).collect()
    }
}

const SQRT_PI: f64 = 1.772_453_850_905_516;

// erfc(x) ≤ e^{−x²}/(x√π) for x > 0, tight for large x
fn ln_erfc_upper(x: f64) -> f64 {
    if x < 20.0 {
        erfc(x).ln()
    } else {
        -x * x - (x * SQRT_PI).ln()
    }
}

// erfc(x) ≥ e^{−x²}/(x√π) (1 − 1/(2x²))
fn ln_erfc_lower(x: f64) -> f64 {
    if x < 20.0 {
        erfc(x).ln()
    } else {
        -x * x - (x * SQRT_PI).ln() + (-0.5 / (x * x)).ln_1p()
    }
}

fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// ln of an upper bound on Σ_{c > edge} e^{−α c²}: ∫_edge^∞ e^{−α t²} dt.
fn ln_tail_bound_1d(alpha: f64, edge: f64) -> f64 {
    (0.5 * SQRT_PI / alpha.sqrt()).ln() + ln_erfc_upper(edge * alpha.sqrt())
}

/// ln of an upper bound on the weight of lattice points with Σc² > level:
/// each such point is dominated by the Gaussian integral over the unit
/// cube below it, and those cubes lie in the octant outside radius
/// √level − √3.
fn ln_tail_bound_3d(alpha: f64, level: f64) -> f64 {
    let a = (level.sqrt() - 3f64.sqrt()).max(0.0);
    let erfc_part = (SQRT_PI / (4.0 * alpha.powf(1.5))).ln() + ln_erfc_upper(a * alpha.sqrt());
    let poly_part = if a > 0.0 {
        a.ln() - alpha * a * a - (2.0 * alpha).ln()
    } else {
        f64::NEG_INFINITY
    };
    (0.5 * std::f64::consts::PI).ln() + ln_add(erfc_part, poly_part)
}

fn spectrum_1d(model: &BoxModel, trunc: &SpectrumTruncation) -> Result<Spectrum> {
    let alpha = model.alpha();
    let ln_tol = trunc.relative_tail_bound.ln();
    let mut states = Vec::new();
    let mut weights = Vec::new();
    let mut running = 0.0;
    let mut c: u64 = 0;
    loop {
        c += 1;
        if states.len() >= trunc.max_states {
            return Err(Error::Truncation(format!(
                "{} states retained without reaching relative tail bound {:e} (α = {alpha:e})",
                states.len(),
                trunc.relative_tail_bound
            )));
        }
        let level = c * c;
        let w = (-alpha * (level - 1) as f64).exp();
        states.push(BoxState { level, numbers: [c as u32, 0, 0], dims: 1 });
        weights.push(w);
        running += w;
        // both sides shifted by the ground-state factor e^{α}
        let ln_bound = ln_tail_bound_1d(alpha, c as f64) + alpha;
        if ln_bound <= ln_tol + running.ln() {
            let shifted = pairwise_sum(&weights);
            return Ok(Spectrum {
                dimensions: 1,
                states,
                energy_quantum: model.energy_quantum(),
                alpha,
                ln_partial_sum: shifted.ln() - alpha,
                relative_omitted_bound: (ln_bound - shifted.ln()).exp(),
            });
        }
    }
}

fn spectrum_3d(model: &BoxModel, trunc: &SpectrumTruncation) -> Result<Spectrum> {
    let alpha = model.alpha();
    let tol = trunc.relative_tail_bound;
    let ground = 3.0 * alpha;
    // Z ≥ max(e^{−3α}, (∫_1^∞ e^{−α t²} dt)³); a level whose bound is below
    // tol/2 of that is sure to satisfy the stopping rule on the retained sum.
    let ln_z_lower = (3.0 * ((0.5 * SQRT_PI / alpha.sqrt()).ln() + ln_erfc_lower(alpha.sqrt()))).max(-ground);
    let ln_target = (0.5 * tol).ln() + ln_z_lower;
    let mut hi: u64 = 3;
    while ln_tail_bound_3d(alpha, hi as f64) > ln_target {
        hi = hi.checked_mul(2).ok_or_else(|| Error::Truncation("level search overflowed".into()))?;
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if ln_tail_bound_3d(alpha, mid as f64) > ln_target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let max_level = hi.max(3);
    let radius = (max_level as f64).sqrt();
    let inner = (radius - 3f64.sqrt()).max(0.0);
    let estimate = std::f64::consts::PI / 6.0 * inner.powi(3);
    if estimate > trunc.max_states as f64 {
        return Err(Error::Truncation(format!(
            "about {estimate:.0} states needed for relative tail bound {tol:e} (α = {alpha:e}), \
             max_states is {}",
            trunc.max_states
        )));
    }
    let cmax = radius.floor() as u64;
    let mut states = Vec::new();
    for x in 1..=cmax {
        let sx = x * x;
        for y in 1..=cmax {
            let sy = sx + y * y;
            if sy + 1 > max_level {
                break;
            }
            for z in 1..=cmax {
                let level = sy + z * z;
                if level > max_level {
                    break;
                }
                states.push(BoxState { level, numbers: [x as u32, y as u32, z as u32], dims: 3 });
            }
        }
        if states.len() > trunc.max_states {
            return Err(Error::Truncation(format!(
                "more than {} states below level {max_level}",
                trunc.max_states
            )));
        }
    }
    states.sort_unstable();

    let ln_tol = tol.ln();
    let mut running = 0.0;
    let mut cut = states.len();
    let mut i = 0;
    while i < states.len() {
        let level = states[i].level;
        while i < states.len() && states[i].level == level {
            running += (-alpha * (level - 3) as f64).exp();
            i += 1;
        }
        if ln_tail_bound_3d(alpha, level as f64) + ground <= ln_tol + running.ln() {
            cut = i;
            break;
        }
    }
    states.truncate(cut);
    let last_level = states.last().map_or(3, |s| s.level) as f64;
    let mut spectrum = Spectrum {
        dimensions: 3,
        states,
        energy_quantum: model.energy_quantum(),
        alpha,
        ln_partial_sum: 0.0,
        relative_omitted_bound: 0.0,
    };
    let shifted = pairwise_sum(&spectrum.relative_weights());
    spectrum.ln_partial_sum = shifted.ln() - ground;
    spectrum.relative_omitted_bound = (ln_tail_bound_3d(alpha, last_level) + ground - shifted.ln()).exp();
    Ok(spectrum)
}

/// Stationary states ordered by energy, truncated where the analytic tail
/// bound falls below `relative_tail_bound` of the retained weight.
/// Quantum numbers start at 1 on every axis.
pub fn box_spectrum(model: &BoxModel, trunc: &SpectrumTruncation) -> Result<Spectrum> {
    model.validate()?;
    match model.dimensions {
        1 => spectrum_1d(model, trunc),
        _ => spectrum_3d(model, trunc),
    }
}

/// A truncated Boltzmann one-particle distribution and its partition function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoltzmannDistribution {
    pub distribution: OneParticleDistribution,
    /// One-particle partition function (truncated sum); may underflow in
    /// the cold limit, where `ln_partition_function` stays finite.
    pub partition_function: f64,
    pub ln_partition_function: f64,
    pub states_retained: usize,
    /// Omitted-weight bound divided by the partition function.
    pub relative_tail_bound_achieved: f64,
}

impl BoltzmannDistribution {
    /// −Σ P(c) ln P(c), k_B units.
    pub fn entropy(&self) -> f64 {
        self.distribution.shannon_entropy()
    }
}

/// P(c) = e^{−ε_c/k_BT} / Z over the truncated spectrum.
pub fn boltzmann_distribution(model: &BoxModel, trunc: &SpectrumTruncation) -> Result<BoltzmannDistribution> {
    let spectrum = box_spectrum(model, trunc)?;
    let weights = spectrum.relative_weights();
    let shifted_z = pairwise_sum(&weights);
    let probs: Vec<f64> = weights.iter().map(|w| w / shifted_z).collect();
    Ok(BoltzmannDistribution {
        distribution: OneParticleDistribution::new(probs, Provenance::Model)?,
        partition_function: spectrum.ln_partial_sum.exp(),
        ln_partition_function: spectrum.ln_partial_sum,
        states_retained: spectrum.len(),
        relative_tail_bound_achieved: spectrum.relative_omitted_bound,
    })
}

/// One-particle entropy in the box, k_B units.
pub fn one_particle_entropy(model: &BoxModel, trunc: &SpectrumTruncation) -> Result<f64> {
    Ok(boltzmann_distribution(model, trunc)?.entropy())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdealGasEntropy {
    /// Exact entropy of the Boltzmann multinomial, k_B units.
    pub exact: EntropyReport,
    pub sackur_tetrode: f64,
    /// |exact − Sackur-Tetrode| / exact.
    pub relative_gap: f64,
    pub partition_function: f64,
    pub ln_partition_function: f64,
    pub states_retained: usize,
    pub relative_tail_bound_achieved: f64,
}

/// Exact entropy of N non-interacting bosons in a cubic box against the
/// Sackur-Tetrode approximation.
pub fn ideal_gas_entropy(model: &BoxModel, particles: u64, trunc: &SpectrumTruncation) -> Result<IdealGasEntropy> {
    model.validate()?;
    if model.dimensions != 3 {
        return Err(Error::Domain("the ideal gas entropy needs a 3-D box".into()));
    }
    if particles == 0 {
        return Err(Error::Domain("the ideal gas needs at least one particle".into()));
    }
    if particles > GAS_PARTICLE_LIMIT {
        return Err(Error::CapExceeded {
            what: "ideal gas particle number (use smaller N or a looser --tail-bound)",
            count: particles as u128,
            cap: GAS_PARTICLE_LIMIT as u128,
        });
    }
    let boltzmann = boltzmann_distribution(model, trunc)?;
    let exact = multinomial_entropy(&MultinomialDist::new(particles, boltzmann.distribution.clone()))
        .in_unit(EntropyUnit::KB);
    let st = sackur_tetrode(particles, model.mass, model.temperature, model.side_length)?;
    Ok(IdealGasEntropy {
        exact,
        sackur_tetrode: st,
        relative_gap: (exact.total - st).abs() / exact.total,
        partition_function: boltzmann.partition_function,
        ln_partition_function: boltzmann.ln_partition_function,
        states_retained: boltzmann.states_retained,
        relative_tail_bound_achieved: boltzmann.relative_tail_bound_achieved,
    })
}

/// Entropies around the insertion of a piston in the middle of a 1-D box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SzilardInsertion {
    pub s_before: f64,
    pub s_after: f64,
    pub delta: f64,
    /// One-particle entropy in a box of half the length.
    pub half_box_entropy: f64,
}

/// Split distribution of N particles over sub-boxes of lengths fL and (1−f)L.
pub fn szilard_split_pmf(
    particles: u64,
    volume_fraction: f64,
    left: OneParticleDistribution,
    right: OneParticleDistribution,
) -> Result<SzilardSplitDist> {
    SzilardSplitDist::new(particles, volume_fraction, left, right)
}

/// Entropy of a split law, H(b) + Σ_b P(b) [S(Mult(b, P')) + S(Mult(N − b, P''))].
///
/// Exact: b is a function of the outcome (the left-hand total), so the
/// chain rule splits the entropy without approximation.
pub fn szilard_split_entropy(d: &SzilardSplitDist) -> f64 {
    let split = d.split_probabilities();
    let n = split.len() as u64 - 1;
    let h_b = -pairwise_sum(&split.iter().map(|&q| xlogx(q)).collect::<Vec<_>>());
    let conditional: Vec<f64> = split
        .iter()
        .enumerate()
        .filter(|(_, &q)| q > 0.0)
        .map(|(b, &q)| {
            let b = b as u64;
            let left = multinomial_entropy(&MultinomialDist::new(b, d.left().clone())).total;
            let right = multinomial_entropy(&MultinomialDist::new(n - b, d.right().clone())).total;
            q * (left + right)
        })
        .collect();
    h_b + pairwise_sum(&conditional)
}

/// Entropy before and after a piston is inserted at half length of a 1-D
/// box holding N particles.
pub fn szilard_insertion(model: &BoxModel, particles: u64, trunc: &SpectrumTruncation) -> Result<SzilardInsertion> {
    model.validate()?;
    if model.dimensions != 1 {
        return Err(Error::Domain("the piston insertion is defined for a 1-D box".into()));
    }
    if particles == 0 {
        return Err(Error::Domain("the piston insertion needs at least one particle".into()));
    }
    let whole = boltzmann_distribution(model, trunc)?;
    let half = boltzmann_distribution(&model.with_side_length(model.side_length / 2.0), trunc)?;
    let half_box_entropy = half.entropy();
    let (s_before, s_after) = if particles == 1 {
        (whole.entropy(), std::f64::consts::LN_2 + half_box_entropy)
    } else {
        let before = multinomial_entropy(&MultinomialDist::new(particles, whole.distribution)).total;
        let split = SzilardSplitDist::new(particles, 0.5, half.distribution.clone(), half.distribution)?;
        (before, szilard_split_entropy(&split))
    };
    Ok(SzilardInsertion { s_before, s_after, delta: s_before - s_after, half_box_entropy })
}

/// P(b) for the number of particles found on the left of the piston.
pub fn piston_split_law(particles: u64, volume_fraction: f64) -> Vec<f64> {
    binomial_pmf(particles, volume_fraction)
}
