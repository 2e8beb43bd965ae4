//! Occupancy-number distributions: the multinomial (canonical) law, the
//! multivariate hypergeometric law of a system traced out of a finite
//! universe, and the two-box split law used after a piston insertion.
//!
//! PMFs are evaluated in the log domain and exponentiated at the boundary.
//! Samplers are fixed algorithms driven by [`SamplerRng`] (ChaCha8), so a
//! seed reproduces the same stream on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{
    enumerate_occupancies_capped, log_binomial, log_factorial, LogWeight, OccupancyVector,
    DEFAULT_ENUMERATION_CAP,
};
use crate::error::{Error, Result};

/// Tolerance on |Σ p − 1| accepted for a one-particle distribution.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// PRNG behind every sampler.
pub type SamplerRng = ChaCha8Rng;

/// Where a one-particle distribution came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Derived from a physical model, e.g. a Boltzmann distribution.
    Model,
    /// The relative frequencies u_c / U of an observed universe.
    Empirical { universe: u64, urn: OccupancyVector },
    User,
}

/// Probabilities P(c) over the one-particle states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OneParticleDistribution {
    probs: Vec<f64>,
    provenance: Provenance,
}

impl OneParticleDistribution {
    pub fn new(probs: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidProbabilities("no colors".into()));
        }
        if let Some(bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidProbabilities(format!("entry {bad} is not a probability")));
        }
        let sum = pairwise_sum(&probs);
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidProbabilities(format!("sum is {sum}, expected 1")));
        }
        Ok(OneParticleDistribution { probs, provenance })
    }

    pub fn user(probs: Vec<f64>) -> Result<Self> {
        Self::new(probs, Provenance::User)
    }

    /// The empirical distribution u_c / U of an urn.
    pub fn empirical(urn: &OccupancyVector) -> Result<Self> {
        let total = urn.total();
        if total == 0 {
            return Err(Error::InvalidProbabilities("empty urn has no empirical distribution".into()));
        }
        let probs = urn.counts().iter().map(|&u| u as f64 / total as f64).collect();
        Self::new(probs, Provenance::Empirical { universe: total, urn: urn.clone() })
    }

    pub fn uniform(colors: usize) -> Result<Self> {
        Self::new(vec![1.0 / colors as f64; colors], Provenance::User)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn num_colors(&self) -> usize {
        self.probs.len()
    }

    /// −Σ P(c) ln P(c), nats.
    pub fn shannon_entropy(&self) -> f64 {
        let terms: Vec<f64> = self.probs.iter().map(|&p| xlogx(p)).collect();
        -pairwise_sum(&terms)
    }
}

/// x ln x with 0 ln 0 = 0.
pub(crate) fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// Fixed-order pairwise summation; the result depends only on the slice.
pub(crate) fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 64;
    if values.len() <= LEAF {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Common interface of the occupancy distributions.
pub trait OccupancyDistribution {
    fn num_colors(&self) -> usize;

    /// Number of particles N; every supported vector sums to it.
    fn particles(&self) -> u64;

    /// ln P(n̄); `Impossible` outside the support.
    fn ln_pmf(&self, n: &OccupancyVector) -> Result<LogWeight>;

    fn pmf(&self, n: &OccupancyVector) -> Result<f64> {
        self.ln_pmf(n).map(LogWeight::exp)
    }

    fn sample_one(&self, rng: &mut SamplerRng) -> OccupancyVector;
}

fn check_dims(expected: usize, n: &OccupancyVector) -> Result<()> {
    if n.num_colors() != expected {
        return Err(Error::DimensionMismatch { expected, got: n.num_colors() });
    }
    Ok(())
}

/// Canonical occupancy law W(n̄) Π P(c)^{n_c}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultinomialDist {
    particles: u64,
    p: OneParticleDistribution,
    #[serde(skip)]
    cumulative: Vec<f64>,
}

impl MultinomialDist {
    pub fn new(particles: u64, p: OneParticleDistribution) -> Self {
        let mut acc = 0.0;
        let cumulative = p
            .probs()
            .iter()
            .map(|&q| {
                acc += q;
                acc
            })
            .collect();
        MultinomialDist { particles, p, cumulative }
    }

    pub fn one_particle(&self) -> &OneParticleDistribution {
        &self.p
    }

    /// Binomial(N, P(c)) law of one color's occupancy, indexed 0..=N.
    pub fn marginal(&self, color: usize) -> Result<Vec<f64>> {
        let colors = self.p.num_colors();
        let p = *self.p.probs().get(color).ok_or(Error::IndexOutOfRange { index: color, colors })?;
        Ok(binomial_pmf(self.particles, p))
    }

    fn draw_color(&self, rng: &mut SamplerRng) -> usize {
        let u: f64 = rng.random();
        let idx = self.cumulative.partition_point(|&c| c <= u);
        if idx < self.cumulative.len() && self.p.probs()[idx] > 0.0 {
            idx
        } else {
            // rounding left the cumulative sum just below 1
            self.p.probs().iter().rposition(|&q| q > 0.0).unwrap_or(0)
        }
    }
}

impl OccupancyDistribution for MultinomialDist {
    fn num_colors(&self) -> usize {
        self.p.num_colors()
    }

    fn particles(&self) -> u64 {
        self.particles
    }

    fn ln_pmf(&self, n: &OccupancyVector) -> Result<LogWeight> {
        check_dims(self.num_colors(), n)?;
        if n.total() != self.particles {
            return Ok(LogWeight::Impossible);
        }
        let mut acc = n.log_multinomial();
        for (&k, &p) in n.counts().iter().zip(self.p.probs()) {
            if k == 0 {
                continue;
            }
            if p == 0.0 {
                return Ok(LogWeight::Impossible);
            }
            acc += k as f64 * p.ln();
        }
        Ok(LogWeight::Finite(acc))
    }

    /// N categorical draws by inversion of the cumulative distribution.
    fn sample_one(&self, rng: &mut SamplerRng) -> OccupancyVector {
        let mut counts = vec![0u64; self.num_colors()];
        for _ in 0..self.particles {
            counts[self.draw_color(rng)] += 1;
        }
        OccupancyVector::new(counts)
    }
}

/// Multivariate hypergeometric law: N balls drawn without replacement from
/// an urn ū, equivalently the system's occupancy after tracing out the
/// environment from a universe in eigenstate |ū⟩.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MvhgDist {
    urn: OccupancyVector,
    draws: u64,
}

impl MvhgDist {
    pub fn new(urn: OccupancyVector, draws: u64) -> Result<Self> {
        if draws > urn.total() {
            return Err(Error::DrawsExceedUniverse { draws, universe: urn.total() });
        }
        if urn.num_colors() == 0 {
            return Err(Error::Domain("urn needs at least one color".into()));
        }
        Ok(MvhgDist { urn, draws })
    }

    pub fn urn(&self) -> &OccupancyVector {
        &self.urn
    }

    pub fn universe(&self) -> u64 {
        self.urn.total()
    }

    /// The environment's law: the same urn with U − N draws.
    pub fn complement(&self) -> MvhgDist {
        MvhgDist { urn: self.urn.clone(), draws: self.universe() - self.draws }
    }

    /// PMF over raw signed counts; negative entries have probability zero.
    pub fn pmf_signed(&self, n: &[i64]) -> Result<f64> {
        if n.len() != self.urn.num_colors() {
            return Err(Error::DimensionMismatch { expected: self.urn.num_colors(), got: n.len() });
        }
        match OccupancyVector::from_signed(n) {
            Ok(v) => self.pmf(&v),
            Err(_) => Ok(0.0),
        }
    }

    /// Hypergeometric(U, u_c, N) law of one color's occupancy, indexed 0..=N.
    pub fn marginal(&self, color: usize) -> Result<Vec<f64>> {
        let colors = self.urn.num_colors();
        let u_c = *self.urn.counts().get(color).ok_or(Error::IndexOutOfRange { index: color, colors })?;
        Ok(hypergeometric_pmf(self.universe(), u_c, self.draws))
    }
}

impl OccupancyDistribution for MvhgDist {
    fn num_colors(&self) -> usize {
        self.urn.num_colors()
    }

    fn particles(&self) -> u64 {
        self.draws
    }

    fn ln_pmf(&self, n: &OccupancyVector) -> Result<LogWeight> {
        check_dims(self.num_colors(), n)?;
        if n.total() != self.draws {
            return Ok(LogWeight::Impossible);
        }
        if n.counts().iter().zip(self.urn.counts()).any(|(k, u)| k > u) {
            return Ok(LogWeight::Impossible);
        }
        // Π_c C(u_c, n_c) / C(U, N), equal to W(ū−n̄) W(n̄) / W(ū)
        let num: f64 = n.counts().iter().zip(self.urn.counts()).map(|(&k, &u)| log_binomial(u, k)).sum();
        Ok(LogWeight::Finite(num - log_binomial(self.universe(), self.draws)))
    }

    /// Sequential depletion: each draw removes one ball chosen uniformly
    /// among those left.
    fn sample_one(&self, rng: &mut SamplerRng) -> OccupancyVector {
        let mut remaining: Vec<u64> = self.urn.counts().to_vec();
        let mut left = self.urn.total();
        let mut counts = vec![0u64; remaining.len()];
        for _ in 0..self.draws {
            let mut r = rng.random_range(0..left);
            let mut color = 0;
            while r >= remaining[color] {
                r -= remaining[color];
                color += 1;
            }
            remaining[color] -= 1;
            counts[color] += 1;
            left -= 1;
        }
        OccupancyVector::new(counts)
    }
}

/// Occupancy law of a box split by a piston into volumes V' and V − V'.
///
/// The number b of particles found left is Binomial(N, V'/V); given b the
/// two sides are independent multinomials with b and N − b particles.
/// Outcomes are the concatenation (n̄', n̄'').
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SzilardSplitDist {
    particles: u64,
    volume_fraction: f64,
    left: MultinomialDist,
    right: MultinomialDist,
}

impl SzilardSplitDist {
    pub fn new(
        particles: u64,
        volume_fraction: f64,
        left: OneParticleDistribution,
        right: OneParticleDistribution,
    ) -> Result<Self> {
        if !(volume_fraction > 0.0 && volume_fraction < 1.0) {
            return Err(Error::Domain(format!("volume fraction {volume_fraction} not in (0,1)")));
        }
        Ok(SzilardSplitDist {
            particles,
            volume_fraction,
            left: MultinomialDist::new(particles, left),
            right: MultinomialDist::new(particles, right),
        })
    }

    pub fn volume_fraction(&self) -> f64 {
        self.volume_fraction
    }

    pub fn left(&self) -> &OneParticleDistribution {
        self.left.one_particle()
    }

    pub fn right(&self) -> &OneParticleDistribution {
        self.right.one_particle()
    }

    /// P(b) for b = 0..=N particles on the left.
    pub fn split_probabilities(&self) -> Vec<f64> {
        binomial_pmf(self.particles, self.volume_fraction)
    }

    fn side(&self, dist: &MultinomialDist, particles: u64) -> MultinomialDist {
        MultinomialDist::new(particles, dist.one_particle().clone())
    }
}

impl OccupancyDistribution for SzilardSplitDist {
    fn num_colors(&self) -> usize {
        self.left.num_colors() + self.right.num_colors()
    }

    fn particles(&self) -> u64 {
        self.particles
    }

    fn ln_pmf(&self, n: &OccupancyVector) -> Result<LogWeight> {
        check_dims(self.num_colors(), n)?;
        if n.total() != self.particles {
            return Ok(LogWeight::Impossible);
        }
        let (l, r) = n.counts().split_at(self.left.num_colors());
        let left = OccupancyVector::new(l.to_vec());
        let right = OccupancyVector::new(r.to_vec());
        let b = left.total();
        let lw_left = self.side(&self.left, b).ln_pmf(&left)?;
        let lw_right = self.side(&self.right, self.particles - b).ln_pmf(&right)?;
        let ln_split = ln_binomial_pmf(self.particles, b, self.volume_fraction);
        Ok(match (lw_left, lw_right, ln_split) {
            (LogWeight::Finite(a), LogWeight::Finite(c), LogWeight::Finite(s)) => {
                LogWeight::Finite(a + c + s)
            }
            _ => LogWeight::Impossible,
        })
    }

    fn sample_one(&self, rng: &mut SamplerRng) -> OccupancyVector {
        let b = (0..self.particles)
            .filter(|_| rng.random::<f64>() < self.volume_fraction)
            .count() as u64;
        let mut counts = self.side(&self.left, b).sample_one(rng).into_counts();
        counts.extend(self.side(&self.right, self.particles - b).sample_one(rng).into_counts());
        OccupancyVector::new(counts)
    }
}

/// Any of the supported distributions, for dynamic dispatch from input files.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Distribution {
    Multinomial(MultinomialDist),
    Mvhg(MvhgDist),
    Szilard(SzilardSplitDist),
}

impl Distribution {
    fn inner(&self) -> &dyn OccupancyDistribution {
        match self {
            Distribution::Multinomial(d) => d,
            Distribution::Mvhg(d) => d,
            Distribution::Szilard(d) => d,
        }
    }
}

impl OccupancyDistribution for Distribution {
    fn num_colors(&self) -> usize {
        self.inner().num_colors()
    }

    fn particles(&self) -> u64 {
        self.inner().particles()
    }

    fn ln_pmf(&self, n: &OccupancyVector) -> Result<LogWeight> {
        self.inner().ln_pmf(n)
    }

    fn sample_one(&self, rng: &mut SamplerRng) -> OccupancyVector {
        self.inner().sample_one(rng)
    }
}

fn ln_binomial_pmf(n: u64, k: u64, p: f64) -> LogWeight {
    if k > n {
        return LogWeight::Impossible;
    }
    let ln_coeff = log_factorial(n) - log_factorial(k) - log_factorial(n - k);
    let mut acc = ln_coeff;
    if k > 0 {
        if p == 0.0 {
            return LogWeight::Impossible;
        }
        acc += k as f64 * p.ln();
    }
    if n > k {
        if p == 1.0 {
            return LogWeight::Impossible;
        }
        acc += (n - k) as f64 * (-p).ln_1p();
    }
    LogWeight::Finite(acc)
}

/// Binomial(n, p) PMF over 0..=n.
pub fn binomial_pmf(n: u64, p: f64) -> Vec<f64> {
    (0..=n).map(|k| ln_binomial_pmf(n, k, p).exp()).collect()
}

/// Hypergeometric PMF over 0..=draws: successes among `draws` taken from a
/// population of `population` containing `successes` marked items.
pub fn hypergeometric_pmf(population: u64, successes: u64, draws: u64) -> Vec<f64> {
    let ln_ways = log_binomial;
    let denom = ln_ways(population, draws);
    (0..=draws)
        .map(|k| {
            if k > successes || draws - k > population - successes {
                0.0
            } else {
                (ln_ways(successes, k) + ln_ways(population - successes, draws - k) - denom).exp()
            }
        })
        .collect()
}

/// `count` seeded samples from one PRNG stream.
pub fn sample<D: OccupancyDistribution + ?Sized>(d: &D, count: usize, seed: u64) -> Vec<OccupancyVector> {
    let mut rng = SamplerRng::seed_from_u64(seed);
    (0..count).map(|_| d.sample_one(&mut rng)).collect()
}

/// Splits `count` samples over `workers` threads. Worker `i` draws its share
/// from the stream seeded with `seed + i`; shares are concatenated in worker
/// order, so the output depends on (seed, workers) only.
pub fn sample_parallel<D: OccupancyDistribution + Sync + ?Sized>(
    d: &D,
    count: usize,
    seed: u64,
    workers: usize,
) -> Vec<OccupancyVector> {
    let workers = workers.max(1);
    let base = count / workers;
    let extra = count % workers;
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|i| {
                let share = base + usize::from(i < extra);
                scope.spawn(move || sample(d, share, seed.wrapping_add(i as u64)))
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("sampler thread panicked")).collect()
    })
}

/// Total variation distance ½ Σ |p1 − p2| by enumerating the shared support.
pub fn tv_distance(
    d1: &dyn OccupancyDistribution,
    d2: &dyn OccupancyDistribution,
    cap: u128,
) -> Result<f64> {
    if d1.num_colors() != d2.num_colors() {
        return Err(Error::DimensionMismatch { expected: d1.num_colors(), got: d2.num_colors() });
    }
    if d1.particles() != d2.particles() {
        return Err(Error::Input(format!(
            "particle numbers differ: {} vs {}",
            d1.particles(),
            d2.particles()
        )));
    }
    let mut diffs = Vec::new();
    for n in enumerate_occupancies_capped(d1.particles(), d1.num_colors(), cap)? {
        diffs.push((d1.pmf(&n)? - d2.pmf(&n)?).abs());
    }
    Ok((0.5 * pairwise_sum(&diffs)).min(1.0))
}

/// One row of a thermodynamic-limit scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub scale: u64,
    pub universe: u64,
    pub tv: f64,
}

/// TV distance between the hypergeometric law of urns `base × k` and the
/// multinomial with the base's fixed empirical fractions.
pub fn convergence_scan(
    base_urn: &OccupancyVector,
    draws: u64,
    scales: &[u64],
    cap: u128,
) -> Result<Vec<ConvergenceRow>> {
    let p = OneParticleDistribution::empirical(base_urn)?;
    let limit = MultinomialDist::new(draws, p);
    scales
        .iter()
        .map(|&k| {
            if k == 0 {
                return Err(Error::Domain("scales must be positive".into()));
            }
            let urn = base_urn.scaled(k);
            let universe = urn.total();
            let hyper = MvhgDist::new(urn, draws)?;
            Ok(ConvergenceRow { scale: k, universe, tv: tv_distance(&hyper, &limit, cap)? })
        })
        .collect()
}

/// [`convergence_scan`] with the default enumeration cap.
pub fn convergence_scan_default(
    base_urn: &OccupancyVector,
    draws: u64,
    scales: &[u64],
) -> Result<Vec<ConvergenceRow>> {
    convergence_scan(base_urn, draws, scales, DEFAULT_ENUMERATION_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_occupancies;

    fn v(c: &[u64]) -> OccupancyVector {
        OccupancyVector::new(c.to_vec())
    }

    fn mult(n: u64, p: &[f64]) -> MultinomialDist {
        MultinomialDist::new(n, OneParticleDistribution::user(p.to_vec()).unwrap())
    }

    fn mvhg(urn: &[u64], n: u64) -> MvhgDist {
        MvhgDist::new(v(urn), n).unwrap()
    }

    #[test]
    fn one_particle_validation() {
        assert!(OneParticleDistribution::user(vec![0.5, 0.6]).is_err());
        assert!(OneParticleDistribution::user(vec![1.5, -0.5]).is_err());
        assert!(OneParticleDistribution::user(vec![]).is_err());
        assert!(OneParticleDistribution::empirical(&v(&[0, 0])).is_err());
        let e = OneParticleDistribution::empirical(&v(&[1, 3])).unwrap();
        assert_eq!(e.probs(), &[0.25, 0.75]);
        assert!(matches!(e.provenance(), Provenance::Empirical { universe: 4, .. }));
    }

    #[test]
    fn multinomial_pmf_examples() {
        let d = mult(2, &[0.5, 0.5]);
        assert!((d.pmf(&v(&[1, 1])).unwrap() - 0.5).abs() < 1e-15);
        assert!((d.pmf(&v(&[2, 0])).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(d.pmf(&v(&[1, 0])).unwrap(), 0.0);
        let d3 = mult(3, &[0.2, 0.3, 0.5]);
        assert!((d3.pmf(&v(&[1, 1, 1])).unwrap() - 0.18).abs() < 1e-14);
        assert!(matches!(d.pmf(&v(&[1, 1, 0])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn zero_probability_colors_stay_in_support_with_zero_mass() {
        let d = mult(2, &[0.5, 0.0, 0.5]);
        assert_eq!(d.pmf(&v(&[1, 1, 0])).unwrap(), 0.0);
        assert!((d.pmf(&v(&[1, 0, 1])).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mvhg_pmf_examples() {
        let d = mvhg(&[2, 2], 2);
        assert!((d.pmf(&v(&[1, 1])).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((d.pmf(&v(&[2, 0])).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(d.pmf_signed(&[3, -1]).unwrap(), 0.0);
        assert_eq!(d.pmf(&v(&[3, 0])).unwrap(), 0.0);
        assert!(MvhgDist::new(v(&[1, 1]), 3).is_err());
    }

    #[test]
    fn marginal_examples() {
        let m = mult(2, &[0.5, 0.5]).marginal(0).unwrap();
        assert_eq!(m.len(), 3);
        for (a, b) in m.iter().zip([0.25, 0.5, 0.25]) {
            assert!((a - b).abs() < 1e-15);
        }
        let h = mvhg(&[2, 2], 2).marginal(0).unwrap();
        for (a, b) in h.iter().zip([1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        let empty = mvhg(&[5, 0], 3).marginal(1).unwrap();
        assert_eq!(empty, vec![1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(mvhg(&[5, 0], 3).marginal(2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn marginals_match_joint_marginalization() {
        let (m, h) = (mult(4, &[0.1, 0.6, 0.3]), mvhg(&[3, 1, 4], 5));
        let cases: [(&dyn OccupancyDistribution, Vec<Vec<f64>>); 2] = [
            (&m, (0..3).map(|c| m.marginal(c).unwrap()).collect()),
            (&h, (0..3).map(|c| h.marginal(c).unwrap()).collect()),
        ];
        for (d, marginals) in cases {
            let n = d.particles();
            for (c, marginal) in marginals.iter().enumerate() {
                let mut joint = vec![0.0; n as usize + 1];
                for occ in enumerate_occupancies(n, d.num_colors()).unwrap() {
                    joint[occ.counts()[c] as usize] += d.pmf(&occ).unwrap();
                }
                for (a, b) in joint.iter().zip(marginal) {
                    assert!((a - b).abs() <= 1e-12);
                }
                assert!((marginal.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampling_examples() {
        let d = mvhg(&[3, 1], 4);
        assert!(sample(&d, 0, 1).is_empty());
        assert!(sample(&d, 100, 9).iter().all(|s| s.counts() == [3, 1]));
        let a = sample(&mult(5, &[0.3, 0.7]), 50, 42);
        let b = sample(&mult(5, &[0.3, 0.7]), 50, 42);
        assert_eq!(a, b);
    }

    #[test]
    fn large_multinomial_sample_mean() {
        let d = mult(10_000, &[0.5, 0.5]);
        let samples = sample(&d, 10_000, 7);
        let mean = samples.iter().map(|s| s.counts()[0] as f64).sum::<f64>() / 10_000.0;
        // per-sample σ = 50, so the mean of 10⁴ samples has σ = 0.5
        assert!((mean - 5000.0).abs() < 3.0 * 50.0, "mean {mean}");
        assert!((mean - 5000.0).abs() < 3.0 * 0.5, "mean {mean}");
    }

    #[test]
    fn parallel_sampling_is_deterministic() {
        let d = mvhg(&[4, 3, 2], 5);
        let a = sample_parallel(&d, 1001, 5, 4);
        let b = sample_parallel(&d, 1001, 5, 4);
        assert_eq!(a.len(), 1001);
        assert_eq!(a, b);
        assert_eq!(&a[..251], &sample(&d, 251, 5)[..]);
    }

    #[test]
    fn tv_distance_examples() {
        let m = mult(2, &[0.5, 0.5]);
        assert_eq!(tv_distance(&m, &m, 1000).unwrap(), 0.0);
        let tv = tv_distance(&mvhg(&[2, 2], 2), &m, 1000).unwrap();
        assert!((tv - 1.0 / 6.0).abs() < 1e-12);
        // P(1,1) = 20/39 against 1/2
        let tv40 = tv_distance(&mvhg(&[20, 20], 2), &m, 1000).unwrap();
        assert!((tv40 - (20.0 / 39.0 - 0.5)).abs() < 1e-12);
        assert!((tv40 - 0.01282).abs() < 1e-5);
        assert!(tv_distance(&mult(100, &[0.1; 10]), &mult(100, &[0.1; 10]), 1000).is_err());
        assert!(tv_distance(&mult(2, &[0.5, 0.5]), &mult(3, &[0.5, 0.5]), 1000).is_err());
    }

    #[test]
    fn convergence_scan_examples() {
        let rows = convergence_scan_default(&v(&[1, 1]), 2, &[2, 20]).unwrap();
        assert_eq!(rows[0].universe, 4);
        assert!((rows[0].tv - 1.0 / 6.0).abs() < 1e-12);
        assert_eq!(rows[1].universe, 40);
        assert!((rows[1].tv - 0.012820512820512).abs() < 1e-12);
        let flat = convergence_scan_default(&v(&[1, 1]), 1, &[1, 3, 50]).unwrap();
        assert!(flat.iter().all(|r| r.tv < 1e-14), "{flat:?}");
        assert!(convergence_scan_default(&v(&[1, 1]), 3, &[1]).is_err());
    }

    #[test]
    fn convergence_ratio_approaches_one_half() {
        let scales: Vec<u64> = (0..8).map(|i| 1u64 << i).collect();
        let rows = convergence_scan_default(&v(&[1, 2, 1]), 3, &scales).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].tv < w[0].tv);
        }
        let ratio = rows[7].tv / rows[6].tv;
        assert!((ratio - 0.5).abs() < 0.01, "ratio {ratio}");
    }

    #[test]
    fn szilard_split_single_particle_halves() {
        let p = OneParticleDistribution::user(vec![0.7, 0.3]).unwrap();
        let d = SzilardSplitDist::new(1, 0.5, p.clone(), p).unwrap();
        let left: f64 = [v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])].iter().map(|n| d.pmf(n).unwrap()).sum();
        assert!((left - 0.5).abs() < 1e-15);
        assert_eq!(d.split_probabilities(), vec![0.5, 0.5]);
        let total: f64 = enumerate_occupancies(1, 4).unwrap().map(|n| d.pmf(&n).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-15);
    }

    #[test]
    fn szilard_split_rejects_bad_fraction() {
        let p = OneParticleDistribution::uniform(2).unwrap();
        assert!(SzilardSplitDist::new(1, 0.0, p.clone(), p.clone()).is_err());
        assert!(SzilardSplitDist::new(1, 1.0, p.clone(), p).is_err());
    }
}
