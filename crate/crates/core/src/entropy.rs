//! Entropies of occupancy distributions.
//!
//! The multinomial and hypergeometric entropies are computed through their
//! decomposition into a microstate term minus the expected log multinomial
//! coefficient, with the expectations taken over one-color marginals. The
//! brute-force route, [`entropy_by_enumeration`], is kept alongside as the
//! reference for small instances.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_occupancies_capped, log_binomial, log_factorial, log_factorial_real};
use crate::distributions::{pairwise_sum, xlogx, MultinomialDist, MvhgDist, OccupancyDistribution};
use crate::error::{Error, Result};
use crate::physics::{BOLTZMANN, PLANCK};

/// Relative size below which the tail of an expectation series is dropped.
/// Far below f64 resolution, so truncation never changes the result.
const SERIES_TAIL: f64 = 1e-17;

/// Colors per work unit in the parallel sums. Fixed, so the reduction
/// order (and the rounding) does not depend on the thread count.
const CHUNK: usize = 4096;

/// Tolerance used when deciding whether the Boltzmann sandwich holds.
pub const SANDWICH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum EntropyUnit {
    #[default]
    #[serde(rename = "nats")]
    Nats,
    #[serde(rename = "bits")]
    Bits,
    /// Multiples of k_B; numerically equal to nats.
    #[serde(rename = "kB")]
    KB,
}

impl EntropyUnit {
    pub fn from_nats(self, value: f64) -> f64 {
        match self {
            EntropyUnit::Nats | EntropyUnit::KB => value,
            EntropyUnit::Bits => value / std::f64::consts::LN_2,
        }
    }

    pub fn to_nats(self, value: f64) -> f64 {
        match self {
            EntropyUnit::Nats | EntropyUnit::KB => value,
            EntropyUnit::Bits => value * std::f64::consts::LN_2,
        }
    }
}

/// Decomposed entropy of an occupancy distribution.
///
/// `total = microstate_term − expected_log_w`, and the Boltzmann value
/// ln W(E{n̄}) sits between the two terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyReport {
    pub microstate_term: f64,
    pub expected_log_w: f64,
    pub total: f64,
    pub boltzmann: f64,
    pub unit: EntropyUnit,
}

impl EntropyReport {
    fn from_nats(microstate_term: f64, expected_log_w: f64, total: f64, boltzmann: f64) -> Self {
        EntropyReport { microstate_term, expected_log_w, total, boltzmann, unit: EntropyUnit::Nats }
    }

    pub fn in_unit(&self, unit: EntropyUnit) -> EntropyReport {
        let conv = |x: f64| unit.from_nats(self.unit.to_nats(x));
        EntropyReport {
            microstate_term: conv(self.microstate_term),
            expected_log_w: conv(self.expected_log_w),
            total: conv(self.total),
            boltzmann: conv(self.boltzmann),
            unit,
        }
    }

    /// microstate_term ≥ boltzmann ≥ expected_log_w, up to `tol` relative
    /// to the magnitude of the terms.
    pub fn sandwich_holds(&self, tol: f64) -> bool {
        let slack = tol * self.microstate_term.abs().max(1.0);
        self.microstate_term + slack >= self.boltzmann && self.boltzmann + slack >= self.expected_log_w
    }
}

/// Shannon entropy −Σ p ln p over the enumerated support (nats).
pub fn entropy_by_enumeration(d: &dyn OccupancyDistribution, cap: u128) -> Result<f64> {
    let mut terms = Vec::new();
    for n in enumerate_occupancies_capped(d.particles(), d.num_colors(), cap)? {
        terms.push(xlogx(d.pmf(&n)?));
    }
    Ok((-pairwise_sum(&terms)).max(0.0))
}

/// E{ln k!} for k ~ Binomial(n, p).
///
/// Sums outward from the mode. Beyond the mode the ratio of consecutive
/// terms p(k+1) ln(k+1)! / p(k) ln k! is decreasing once k ≥ 2, so as soon
/// as it drops below one the remaining tail is bounded by a geometric
/// series and the loop stops when that bound is below [`SERIES_TAIL`] of
/// the partial sum. The same argument applies walking down from the mode.
pub fn expected_log_factorial_binomial(n: u64, p: f64) -> f64 {
    if n < 2 || p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return log_factorial(n);
    }
    let odds = p / (1.0 - p);
    let ln_q = (-p).ln_1p();
    let mode = (((n + 1) as f64) * p).floor().min(n as f64) as u64;
    let ln_mode = log_factorial(n) - log_factorial(mode) - log_factorial(n - mode)
        + mode as f64 * p.ln()
        + (n - mode) as f64 * ln_q;
    let p_mode = ln_mode.exp();
    let mut sum = p_mode * log_factorial(mode);

    let mut pk = p_mode;
    let mut k = mode;
    while k < n {
        pk *= (n - k) as f64 / (k + 1) as f64 * odds;
        k += 1;
        let term = pk * log_factorial(k);
        sum += term;
        if k >= 2 && k < n {
            let r = (n - k) as f64 / (k + 1) as f64 * odds * (log_factorial(k + 1) / log_factorial(k));
            if r < 1.0 && term * r / (1.0 - r) <= SERIES_TAIL * sum {
                break;
            }
        }
    }

    let mut pk = p_mode;
    let mut k = mode;
    while k > 2 {
        pk *= k as f64 / (n - k + 1) as f64 / odds;
        k -= 1;
        let term = pk * log_factorial(k);
        sum += term;
        let r = k as f64 / (n - k + 1) as f64 / odds * (log_factorial(k - 1) / log_factorial(k));
        if r < 1.0 && term * r / (1.0 - r) <= SERIES_TAIL * sum {
            break;
        }
    }
    sum
}

/// (E{ln k!}, E{ln (successes − k)!}) for k hypergeometric: `draws` taken
/// from `population` items of which `successes` are marked.
pub fn expected_log_factorials_hypergeometric(population: u64, successes: u64, draws: u64) -> (f64, f64) {
    let [drawn, left, _] = hypergeometric_expectations(population, successes, draws);
    (drawn, left)
}

// [E ln k!, E ln (successes − k)!, E ln C(successes, k)]
fn hypergeometric_expectations(population: u64, successes: u64, draws: u64) -> [f64; 3] {
    let denom = log_binomial(population, draws);
    let lo = draws.saturating_sub(population - successes);
    let hi = successes.min(draws);
    let len = (hi - lo + 1) as usize;
    let (mut drawn, mut left, mut ways) = (Vec::with_capacity(len), Vec::with_capacity(len), Vec::with_capacity(len));
    for k in lo..=hi {
        let ln_c = log_binomial(successes, k);
        let pk = (ln_c + log_binomial(population - successes, draws - k) - denom).exp();
        drawn.push(pk * log_factorial(k));
        left.push(pk * log_factorial(successes - k));
        ways.push(pk * ln_c);
    }
    [pairwise_sum(&drawn), pairwise_sum(&left), pairwise_sum(&ways)]
}

/// Per-color sums of `f`, computed in parallel over fixed chunks and
/// combined in chunk order.
fn chunked_sums<const K: usize, F>(probs: &[f64], f: F) -> [f64; K]
where
    F: Fn(f64) -> [f64; K] + Sync,
{
    let partials: Vec<[f64; K]> = probs
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = [0.0; K];
            for &p in chunk {
                let v = f(p);
                for i in 0..K {
                    acc[i] += v[i];
                }
            }
            acc
        })
        .collect();
    let mut out = [0.0; K];
    for i in 0..K {
        let column: Vec<f64> = partials.iter().map(|a| a[i]).collect();
        out[i] = pairwise_sum(&column);
    }
    out
}

/// Entropy of the canonical occupancy law,
/// S = −N Σ P(c) ln P(c) − E{ln W(n̄)}.
pub fn multinomial_entropy(d: &MultinomialDist) -> EntropyReport {
    let n = d.particles();
    let nf = n as f64;
    let [neg_plogp, e_ln_fact, ln_gamma_mean, mean_sum] = chunked_sums(d.one_particle().probs(), |p| {
        [
            -xlogx(p),
            expected_log_factorial_binomial(n, p),
            log_factorial_real(nf * p).unwrap_or(0.0),
            nf * p,
        ]
    });
    let microstate_term = nf * neg_plogp;
    let expected_log_w = log_factorial(n) - e_ln_fact;
    let boltzmann = log_factorial_real(mean_sum).unwrap_or(0.0) - ln_gamma_mean;
    let total = (microstate_term - expected_log_w).max(0.0);
    EntropyReport::from_nats(microstate_term, expected_log_w, total, boltzmann)
}

/// Entropy of the hypergeometric law,
/// S = ln W(ū) − E{ln W(ū − n̄)} − E{ln W(n̄)}.
///
/// Regrouped per color as ln C(U, N) − Σ_c E{ln C(u_c, n_c)}, which avoids
/// subtracting terms of size U ln U when N is small. The microstate term is
/// reported as `total + expected_log_w`.
pub fn mvhg_entropy(d: &MvhgDist) -> EntropyReport {
    let universe = d.universe();
    let n = d.particles();
    let mut drawn = Vec::with_capacity(d.num_colors());
    let mut ways = Vec::with_capacity(d.num_colors());
    let mut ln_gamma_mean = Vec::with_capacity(d.num_colors());
    for &u in d.urn().counts() {
        let [a, _, c] = hypergeometric_expectations(universe, u, n);
        drawn.push(a);
        ways.push(c);
        let mean = if universe == 0 { 0.0 } else { n as f64 * u as f64 / universe as f64 };
        ln_gamma_mean.push(log_factorial_real(mean).unwrap_or(0.0));
    }
    let expected_log_w = log_factorial(n) - pairwise_sum(&drawn);
    let total = (log_binomial(universe, n) - pairwise_sum(&ways)).max(0.0);
    let boltzmann = log_factorial(n) - pairwise_sum(&ln_gamma_mean);
    EntropyReport::from_nats(total + expected_log_w, expected_log_w, total, boltzmann)
}

/// ln W(E{n̄}) = ln Γ(N + 1) − Σ ln Γ(E{n_c} + 1), with N = Σ E{n_c}.
pub fn boltzmann_entropy(mean_occupancy: &[f64]) -> Result<f64> {
    let mut terms = Vec::with_capacity(mean_occupancy.len());
    for &m in mean_occupancy {
        if m.is_nan() || m < 0.0 {
            return Err(Error::Domain(format!("mean occupancy {m} is negative")));
        }
        terms.push(log_factorial_real(m)?);
    }
    Ok(log_factorial_real(pairwise_sum(mean_occupancy))? - pairwise_sum(&terms))
}

/// The three terms of the Boltzmann sandwich for a multinomial law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SandwichCheck {
    pub microstate_term: f64,
    pub boltzmann: f64,
    pub expected_log_w: f64,
    pub holds: bool,
}

pub fn sandwich_check(d: &MultinomialDist) -> SandwichCheck {
    let r = multinomial_entropy(d);
    SandwichCheck {
        microstate_term: r.microstate_term,
        boltzmann: r.boltzmann,
        expected_log_w: r.expected_log_w,
        holds: r.sandwich_holds(SANDWICH_TOLERANCE),
    }
}

/// Sackur-Tetrode entropy in k_B units for N particles of mass `mass` (kg)
/// at temperature `temperature` (K) in a cube of side `side` (m).
///
/// N (ln((L³/N)(2π m k_B T / h²)^{3/2}) + 5/2). Negative when the thermal
/// wavelength is large compared with the interparticle spacing.
pub fn sackur_tetrode(particles: u64, mass: f64, temperature: f64, side: f64) -> Result<f64> {
    if particles == 0 {
        return Err(Error::Domain("Sackur-Tetrode needs at least one particle".into()));
    }
    for (name, x) in [("mass", mass), ("temperature", temperature), ("side length", side)] {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::Domain(format!("{name} must be positive, got {x}")));
        }
    }
    let n = particles as f64;
    let thermal = 2.0 * std::f64::consts::PI * mass * BOLTZMANN * temperature / (PLANCK * PLANCK);
    Ok(n * (3.0 * side.ln() - n.ln() + 1.5 * thermal.ln() + 2.5))
}
