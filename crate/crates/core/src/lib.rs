//! Exact occupancy-number distributions and entropies for systems of
//! indistinguishable bosons.
//!
//! A system of N particles traced out of a finite universe in the
//! occupancy eigenstate |ū⟩ follows the multivariate hypergeometric law;
//! as the universe grows it tends to the multinomial (canonical) law. This
//! crate evaluates both, their entropies through the decomposition
//! S = microstate term − E{ln W(n̄)}, the Holevo bound and empirical
//! information built on them, and two physical applications: the ideal gas
//! in a box against Sackur-Tetrode, and the piston insertion of a Szilard
//! engine. The [`oracle`] module holds brute-force references.

pub mod cli;
pub mod combinatorics;
pub mod distributions;
pub mod entropy;
pub mod error;
pub mod oracle;
pub mod physics;
pub mod quantum;

pub use combinatorics::{LogWeight, OccupancyVector};
pub use distributions::{
    Distribution, MultinomialDist, MvhgDist, OccupancyDistribution, OneParticleDistribution, Provenance,
    SzilardSplitDist,
};
pub use entropy::{EntropyReport, EntropyUnit};
pub use error::{Error, Result};
pub use physics::{BoxModel, SpectrumTruncation};
pub use quantum::{BosonicDensityOperator, EntropyValue, MeasurementLedger, Scenario};
