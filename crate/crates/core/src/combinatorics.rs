//! Log-domain combinatorial primitives.
//!
//! Everything here works with natural logarithms. Exact big-integer
//! arithmetic lives in [`crate::oracle`] and is used only for validation.

use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Default upper bound on the number of occupancy vectors a single
/// enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000_000;

// n! for n = 0..=20, the largest factorials representable in u64.
const FACTORIALS: [u64; 21] = {
    let mut table = [1u64; 21];
    let mut n = 1;
    while n <= 20 {
        table[n] = table[n - 1] * n as u64;
        n += 1;
    }
    table
};

fn ln_factorial_small(n: u64) -> f64 {
    (FACTORIALS[n as usize] as f64).ln()
}

/// ln(n!) in nats.
///
/// Uses exact integer factorials up to 20! and the log-gamma function above.
pub fn log_factorial(n: u64) -> f64 {
    if n <= 20 {
        ln_factorial_small(n)
    } else {
        ln_gamma(n as f64 + 1.0)
    }
}

/// ln C(n, k), with ln 0 = −∞ for k > n.
///
/// Short falling products are multiplied out directly, which avoids the
/// cancellation in ln n! − ln(n−k)! when n is large and k small.
pub fn log_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let m = k.min(n - k);
    if m > 64 {
        return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
    }
    let mut acc = 0.0;
    let mut prod = 1.0f64;
    for i in 0..m {
        prod *= (n - i) as f64 / (i + 1) as f64;
        if prod > 1e200 {
            acc += prod.ln();
            prod = 1.0;
        }
    }
    acc + prod.ln()
}

/// ln Γ(x + 1), the factorial extended to non-negative reals.
pub fn log_factorial_real(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("factorial of {x} is undefined")));
    }
    if x.fract() == 0.0 && x <= 20.0 {
        return Ok(ln_factorial_small(x as u64));
    }
    Ok(ln_gamma(x + 1.0))
}

/// A log-domain weight that may be the logarithm of zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LogWeight {
    Finite(f64),
    Impossible,
}

impl LogWeight {
    pub fn is_impossible(self) -> bool {
        matches!(self, LogWeight::Impossible)
    }

    pub fn value(self) -> Option<f64> {
        match self {
            LogWeight::Finite(v) => Some(v),
            LogWeight::Impossible => None,
        }
    }

    /// The weight itself; zero when impossible.
    pub fn exp(self) -> f64 {
        match self {
            LogWeight::Finite(v) => v.exp(),
            LogWeight::Impossible => 0.0,
        }
    }
}

/// Occupancy numbers of a bosonic macrostate: how many particles sit in
/// each one-particle state ("color").
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u64>", into = "Vec<u64>")]
pub struct OccupancyVector {
    counts: Vec<u64>,
    total: u64,
}

impl OccupancyVector {
    pub fn new(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        OccupancyVector { counts, total }
    }

    /// Builds a vector from signed counts, rejecting negative entries.
    pub fn from_signed(counts: &[i64]) -> Result<Self> {
        counts
            .iter()
            .map(|&c| {
                u64::try_from(c).map_err(|_| Error::Domain(format!("negative occupancy {c}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn zeros(colors: usize) -> Self {
        Self::new(vec![0; colors])
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn num_colors(&self) -> usize {
        self.counts.len()
    }

    /// Every entry scaled by `k`.
    pub fn scaled(&self, k: u64) -> Self {
        Self::new(self.counts.iter().map(|&c| c * k).collect())
    }

    /// Component-wise `self - other`, `None` if any component would go negative.
    pub fn checked_sub(&self, other: &OccupancyVector) -> Option<Self> {
        if self.counts.len() != other.counts.len() {
            return None;
        }
        self.counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    /// ln W(n̄), the log multinomial coefficient N!/Π n_c!.
    pub fn log_multinomial(&self) -> f64 {
        log_factorial(self.total) - self.counts.iter().map(|&c| log_factorial(c)).sum::<f64>()
    }

    pub fn into_counts(self) -> Vec<u64> {
        self.counts
    }
}

impl From<Vec<u64>> for OccupancyVector {
    fn from(counts: Vec<u64>) -> Self {
        Self::new(counts)
    }
}

impl From<OccupancyVector> for Vec<u64> {
    fn from(v: OccupancyVector) -> Self {
        v.counts
    }
}

impl fmt::Display for OccupancyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// ln(N!/Π n_c!) over raw signed counts; any negative entry gives
/// [`LogWeight::Impossible`] since W vanishes there.
pub fn log_multinomial_coeff(counts: &[i64]) -> LogWeight {
    if counts.iter().any(|&c| c < 0) {
        return LogWeight::Impossible;
    }
    let total: u64 = counts.iter().map(|&c| c as u64).sum();
    let denom: f64 = counts.iter().map(|&c| log_factorial(c as u64)).sum();
    LogWeight::Finite(log_factorial(total) - denom)
}

/// Number of occupancy vectors of `n` particles over `colors` states,
/// C(n + colors - 1, colors - 1). `None` on u128 overflow.
pub fn occupancy_count(n: u64, colors: usize) -> Option<u128> {
    if colors == 0 {
        return Some(if n == 0 { 1 } else { 0 });
    }
    let k = (colors - 1) as u128;
    let top = n as u128 + k;
    // C(top, k) computed with the smaller of k and n as the loop bound.
    let r = k.min(n as u128);
    let mut acc: u128 = 1;
    for i in 1..=r {
        acc = acc.checked_mul(top - r + i)? / i;
    }
    Some(acc)
}

/// Iterator over all occupancy vectors with a fixed total, in descending
/// lexicographic order: `(N,0,..,0)` first, `(0,..,0,N)` last.
#[derive(Debug, Clone)]
pub struct Occupancies {
    current: Option<Vec<u64>>,
}

impl Iterator for Occupancies {
    type Item = OccupancyVector;

    fn next(&mut self) -> Option<OccupancyVector> {
        let current = self.current.as_mut()?;
        let out = OccupancyVector::new(current.clone());
        let k = current.len();
        // rightmost non-zero entry strictly before the last position
        match (0..k.saturating_sub(1)).rev().find(|&j| current[j] > 0) {
            Some(j) => {
                let rest: u64 = current[j + 1..].iter().sum();
                current[j] -= 1;
                current[j + 1] = rest + 1;
                for c in &mut current[j + 2..] {
                    *c = 0;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// Enumerates every occupancy vector of `n` particles over `colors` states,
/// refusing when the count exceeds [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_occupancies(n: u64, colors: usize) -> Result<Occupancies> {
    enumerate_occupancies_capped(n, colors, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_occupancies_capped(n: u64, colors: usize, cap: u128) -> Result<Occupancies> {
    if colors == 0 {
        return Err(Error::Domain("at least one color is required".into()));
    }
    let count = occupancy_count(n, colors).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::CapExceeded { what: "occupancy enumeration", count, cap });
    }
    let mut first = vec![0; colors];
    first[0] = n;
    Ok(Occupancies { current: Some(first) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_binomial_small_and_large() {
        assert_eq!(log_binomial(4, 2), 6f64.ln());
        assert_eq!(log_binomial(3, 5), f64::NEG_INFINITY);
        assert_eq!(log_binomial(7, 0), 0.0);
        for (n, k, c) in [(100u64, 1u64, 100f64), (1000, 3, 166_167_000.0), (40, 20, 137_846_528_820.0)] {
            assert!(close(log_binomial(n, k), c.ln(), 1e-14), "{n} {k}");
        }
        // reference values from 30-digit arithmetic
        assert!(close(log_binomial(5000, 60), 322.048_005_446_780_7, 1e-12));
        assert!(close(log_binomial(1_000_000_000, 50), 887.685_523_670_547_5, 1e-12));
        assert!((log_binomial(1_000_000, 1) - 1e6f64.ln()).abs() < 1e-15);
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn log_factorial_examples() {
        assert_eq!(log_factorial(0), 0.0);
        assert_eq!(log_factorial(1), 0.0);
        assert!(close(log_factorial(5), 4.787491743, 1e-9));
        let direct: f64 = (1..=170u64).map(|k| (k as f64).ln()).sum();
        assert!(((log_factorial(170) - direct) / direct).abs() < 1e-12);
    }

    #[test]
    fn log_factorial_is_monotone() {
        let mut prev = log_factorial(0);
        for n in 1..500 {
            let v = log_factorial(n);
            assert!(v >= prev, "n={n}");
            prev = v;
        }
    }

    #[test]
    fn log_factorial_real_examples() {
        assert_eq!(log_factorial_real(0.0).unwrap(), 0.0);
        assert!(close(log_factorial_real(4.0).unwrap(), 3.178053830, 1e-9));
        // ln Γ(1.5) = ln(√π / 2)
        let reference = (std::f64::consts::PI.sqrt() / 2.0).ln();
        assert!(close(log_factorial_real(0.5).unwrap(), reference, 1e-14));
        assert!(close(reference, -0.120782238, 1e-9));
    }

    #[test]
    fn log_factorial_real_rejects_negative() {
        assert!(matches!(log_factorial_real(-1.0), Err(Error::Domain(_))));
        assert!(log_factorial_real(f64::NAN).is_err());
    }

    #[test]
    fn log_factorial_real_matches_integer_path() {
        for n in 0..300u64 {
            let a = log_factorial(n);
            let b = log_factorial_real(n as f64).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.max(1.0), "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn multinomial_coefficient_examples() {
        assert!(close(log_multinomial_coeff(&[2, 1]).value().unwrap(), 3f64.ln(), 1e-12));
        assert!(close(log_multinomial_coeff(&[1, 1, 1]).value().unwrap(), 6f64.ln(), 1e-12));
        assert_eq!(log_multinomial_coeff(&[3, -1]), LogWeight::Impossible);
        assert_eq!(LogWeight::Impossible.exp(), 0.0);
        let v = OccupancyVector::new(vec![2, 1]);
        assert!(close(v.log_multinomial(), 3f64.ln(), 1e-12));
    }

    #[test]
    fn enumeration_examples() {
        let got: Vec<Vec<u64>> =
            enumerate_occupancies(2, 2).unwrap().map(|v| v.into_counts()).collect();
        assert_eq!(got, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(enumerate_occupancies(3, 3).unwrap().count(), 10);
        let zero: Vec<_> = enumerate_occupancies(0, 4).unwrap().collect();
        assert_eq!(zero, vec![OccupancyVector::zeros(4)]);
        let single: Vec<_> = enumerate_occupancies(7, 1).unwrap().collect();
        assert_eq!(single, vec![OccupancyVector::new(vec![7])]);
    }

    #[test]
    fn enumeration_is_strictly_descending() {
        let all: Vec<_> = enumerate_occupancies(6, 4).unwrap().collect();
        for w in all.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert!(all.iter().all(|v| v.total() == 6));
    }

    #[test]
    fn enumeration_respects_cap() {
        let err = enumerate_occupancies_capped(10, 4, 100).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { count: 286, .. }));
        assert!(enumerate_occupancies(1_000_000, 1000).is_err());
    }

    #[test]
    fn counts_match_stars_and_bars() {
        for n in 0..=30u64 {
            for k in 1..=6usize {
                let enumerated = enumerate_occupancies(n, k).unwrap().count() as u128;
                assert_eq!(Some(enumerated), occupancy_count(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn checked_sub_and_display() {
        let u = OccupancyVector::new(vec![3, 1]);
        let n = OccupancyVector::new(vec![1, 1]);
        assert_eq!(u.checked_sub(&n).unwrap().counts(), &[2, 0]);
        assert!(n.checked_sub(&u).is_none());
        assert_eq!(u.to_string(), "(3,1)");
        assert!(OccupancyVector::from_signed(&[1, -2]).is_err());
    }
}
