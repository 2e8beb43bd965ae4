//! Brute-force and Monte Carlo references for the analytic paths.
//!
//! The exact oracles count sequences with integers and report rationals, so
//! they share nothing with the log-domain float code they check. They are
//! capped to small instances and single-threaded.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;

use crate::combinatorics::OccupancyVector;
use crate::distributions::{pairwise_sum, xlogx, OccupancyDistribution, OneParticleDistribution, SamplerRng};
use crate::error::{Error, Result};

/// Exact probability, always in reduced form with a positive denominator.
pub type ExactRational = BigRational;

pub type ExactPmf = BTreeMap<OccupancyVector, ExactRational>;

/// Largest universe accepted by [`brute_force_mvhg`].
pub const MVHG_UNIVERSE_CAP: u64 = 10;

/// Largest |ℂ|^U accepted by [`brute_force_partial_trace`] (4 colors, U = 8).
pub const MICROSTATE_CAP: u128 = 65_536;

/// Largest |ℂ|^N accepted by [`microstate_enumeration`].
pub const SEQUENCE_CAP: u128 = 10_000_000;

fn power_capped(base: usize, exp: u64, cap: u128, what: &'static str) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
        if acc > cap {
            return Err(Error::CapExceeded { what, count: acc, cap });
        }
    }
    Ok(acc)
}

fn to_exact(tally: BTreeMap<Vec<u64>, u128>, total: u128) -> ExactPmf {
    let denom = BigInt::from(total);
    tally
        .into_iter()
        .map(|(k, c)| (OccupancyVector::new(k), BigRational::new(BigInt::from(c), denom.clone())))
        .collect()
}

/// Hypergeometric law by drawing N labelled balls from the urn in every
/// possible order. Balls of one color are tallied together, each choice
/// weighted by how many balls of that color remain.
pub fn brute_force_mvhg(urn: &OccupancyVector, draws: u64) -> Result<ExactPmf> {
    let universe = urn.total();
    if universe > MVHG_UNIVERSE_CAP {
        return Err(Error::CapExceeded {
            what: "brute-force universe size",
            count: universe as u128,
            cap: MVHG_UNIVERSE_CAP as u128,
        });
    }
    if draws > universe {
        return Err(Error::DrawsExceedUniverse { draws, universe });
    }

    fn walk(
        remaining: &mut [u64],
        drawn: &mut Vec<u64>,
        left: u64,
        ways: u128,
        tally: &mut BTreeMap<Vec<u64>, u128>,
    ) {
        if left == 0 {
            *tally.entry(drawn.clone()).or_insert(0) += ways;
            return;
        }
        for c in 0..remaining.len() {
            let r = remaining[c];
            if r == 0 {
                continue;
            }
            remaining[c] -= 1;
            drawn[c] += 1;
            walk(remaining, drawn, left - 1, ways * r as u128, tally);
            drawn[c] -= 1;
            remaining[c] += 1;
        }
    }

    let mut remaining = urn.counts().to_vec();
    let mut drawn = vec![0; urn.num_colors()];
    let mut tally = BTreeMap::new();
    walk(&mut remaining, &mut drawn, draws, 1, &mut tally);
    // U (U−1) ... (U−N+1) ordered draws in all
    let sequences: u128 = (0..draws).map(|i| (universe - i) as u128).product();
    Ok(to_exact(tally, sequences))
}

/// Reduced law of the first N particles when every microstate c̄ ∈ ℂ^U
/// with occupancy ū is equally likely.
pub fn brute_force_partial_trace(urn: &OccupancyVector, draws: u64) -> Result<ExactPmf> {
    brute_force_partial_trace_capped(urn, draws, MICROSTATE_CAP)
}

/// [`brute_force_partial_trace`] with an explicit bound on |ℂ|^U.
pub fn brute_force_partial_trace_capped(urn: &OccupancyVector, draws: u64, cap: u128) -> Result<ExactPmf> {
    let universe = urn.total();
    power_capped(urn.num_colors(), universe, cap, "microstate enumeration |C|^U")?;
    if draws > universe {
        return Err(Error::DrawsExceedUniverse { draws, universe });
    }

    // Each leaf is one distinct arrangement of the multiset ū.
    fn walk(
        remaining: &mut [u64],
        prefix: &mut Vec<u64>,
        position: u64,
        draws: u64,
        universe: u64,
        tally: &mut BTreeMap<Vec<u64>, u128>,
    ) {
        if position == universe {
            *tally.entry(prefix.clone()).or_insert(0) += 1;
            return;
        }
        for c in 0..remaining.len() {
            if remaining[c] == 0 {
                continue;
            }
            remaining[c] -= 1;
            if position < draws {
                prefix[c] += 1;
            }
            walk(remaining, prefix, position + 1, draws, universe, tally);
            if position < draws {
                prefix[c] -= 1;
            }
            remaining[c] += 1;
        }
    }

    let mut remaining = urn.counts().to_vec();
    let mut prefix = vec![0; urn.num_colors()];
    let mut tally = BTreeMap::new();
    walk(&mut remaining, &mut prefix, 0, draws, universe, &mut tally);
    let microstates: u128 = tally.values().sum();
    Ok(to_exact(tally, microstates))
}

/// Σ of an exact pmf; equal to one for every oracle output.
pub fn exact_total(pmf: &ExactPmf) -> ExactRational {
    pmf.values().fold(BigRational::zero(), |acc, q| acc + q)
}

pub fn exact_to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Plug-in entropy estimate −mean ln pmf(x) over seeded samples, with its
/// jackknife standard error.
pub fn mc_entropy_estimate(
    d: &dyn OccupancyDistribution,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples < 2 {
        return Err(Error::Input(format!("need at least 2 samples, got {samples}")));
    }
    let mut rng = SamplerRng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(samples);
    for _ in 0..samples {
        let x = d.sample_one(&mut rng);
        let lp = d.ln_pmf(&x)?.value().unwrap_or(f64::NEG_INFINITY);
        values.push(-lp);
    }
    let n = samples as f64;
    let sum = pairwise_sum(&values);
    let estimate = sum / n;
    let leave_one_out: Vec<f64> = values.iter().map(|v| (sum - v) / (n - 1.0)).collect();
    let mean_loo = pairwise_sum(&leave_one_out) / n;
    let spread: Vec<f64> = leave_one_out.iter().map(|t| (t - mean_loo).powi(2)).collect();
    let se = ((n - 1.0) / n * pairwise_sum(&spread)).sqrt();
    Ok((estimate, se))
}

/// Entropy of i.i.d. microstates and E{ln W(n̄)} by walking all of ℂ^N.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MicrostateIdentity {
    pub microstate_entropy: f64,
    pub expected_log_w: f64,
}

impl MicrostateIdentity {
    pub fn total(&self) -> f64 {
        self.microstate_entropy - self.expected_log_w
    }
}

/// W(n̄) is taken as the number of sequences sharing each occupancy, counted
/// during the walk rather than from factorials.
pub fn microstate_enumeration(particles: u64, p: &OneParticleDistribution) -> Result<MicrostateIdentity> {
    let k = p.num_colors();
    power_capped(k, particles, SEQUENCE_CAP, "microstate enumeration |C|^N")?;
    let probs = p.probs();
    let mut by_occupancy: BTreeMap<Vec<u64>, (u64, f64)> = BTreeMap::new();
    let mut h_terms = Vec::new();
    let mut seq = vec![0usize; particles as usize];
    loop {
        let mut occ = vec![0u64; k];
        let mut prob = 1.0;
        for &c in &seq {
            occ[c] += 1;
            prob *= probs[c];
        }
        h_terms.push(xlogx(prob));
        let e = by_occupancy.entry(occ).or_insert((0, 0.0));
        e.0 += 1;
        e.1 += prob;

        // odometer increment over ℂ^N
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < k {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
    }
    let log_w: Vec<f64> = by_occupancy.values().map(|&(w, mass)| mass * (w as f64).ln()).collect();
    Ok(MicrostateIdentity { microstate_entropy: -pairwise_sum(&h_terms), expected_log_w: pairwise_sum(&log_w) })
}
