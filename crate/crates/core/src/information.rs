//! Entropy of partitions ("questions") under a distribution on atoms.
//!
//! A partition of the atom set is read as a question whose answers are its
//! blocks. Its relevance is the Shannon entropy of the block probabilities.
//! Joint entropy is the entropy of the common refinement, which is the meet
//! in the partition lattice (finest partitions at the bottom), and mutual
//! information follows from the sum rule:
//! `I(A;B) = H(A) + H(B) - H(A,B)`.
//!
//! Entropies are in bits; `0 log 0 = 0`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{ElementId, Lattice, Partition};
use crate::valuation::Valuation;

/// Allowed slack on `Σ p = 1`.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InformationError {
    #[error("partition and distribution are over different atom sets")]
    GroundSetMismatch,
    #[error("probability of `{0}` is {1}; must lie in [0, 1]")]
    InvalidProbability(String, f64),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("distribution has no atoms")]
    Empty,
    #[error("`{0}` is not a partition id: {1}")]
    BadPartitionId(ElementId, String),
}

/// Probabilities over atom tokens.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionDocument", into = "DistributionDocument")]
pub struct AtomDistribution {
    probs: BTreeMap<String, f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionDocument {
    probs: BTreeMap<String, f64>,
}

impl TryFrom<DistributionDocument> for AtomDistribution {
    type Error = InformationError;

    fn try_from(doc: DistributionDocument) -> Result<Self, Self::Error> {
        Self::new(doc.probs)
    }
}

impl From<AtomDistribution> for DistributionDocument {
    fn from(d: AtomDistribution) -> Self {
        Self { probs: d.probs }
    }
}

impl AtomDistribution {
    pub fn new<A: Into<String>>(
        probs: impl IntoIterator<Item = (A, f64)>,
    ) -> Result<Self, InformationError> {
        let probs: BTreeMap<String, f64> = probs.into_iter().map(|(a, p)| (a.into(), p)).collect();
        if probs.is_empty() {
            return Err(InformationError::Empty);
        }
        for (a, &p) in &probs {
            if !(0.0..=1.0).contains(&p) {
                return Err(InformationError::InvalidProbability(a.clone(), p));
            }
        }
        let total: f64 = probs.values().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(InformationError::NotNormalized(total));
        }
        Ok(Self { probs })
    }

    /// Equal mass on every atom.
    pub fn uniform<A: Into<String>>(
        atoms: impl IntoIterator<Item = A>,
    ) -> Result<Self, InformationError> {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        let p = 1.0 / atoms.len() as f64;
        Self::new(atoms.into_iter().map(|a| (a, p)))
    }

    pub fn probs(&self) -> &BTreeMap<String, f64> {
        &self.probs
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.probs.keys().map(String::as_str).collect()
    }

    /// Total mass of a block of atoms.
    pub fn mass<S: AsRef<str>>(&self, block: &[S]) -> f64 {
        block
            .iter()
            .map(|a| self.probs.get(a.as_ref()).copied().unwrap_or(0.0))
            .fold(0.0, |acc, p| acc + p)
    }

    fn check(&self, part: &Partition) -> Result<(), InformationError> {
        if part.ground_set() == self.atoms() {
            Ok(())
        } else {
            Err(InformationError::GroundSetMismatch)
        }
    }
}

/// `-Σ P(block) log2 P(block)` over the blocks of `part`.
pub fn partition_entropy(part: &Partition, d: &AtomDistribution) -> Result<f64, InformationError> {
    d.check(part)?;
    Ok(part
        .blocks()
        .iter()
        .map(|b| surprisal_term(d.mass(b)))
        .fold(0.0, |acc, h| acc + h))
}

fn surprisal_term(p: f64) -> f64 {
    // Certain answers carry no surprise; also keeps the result from being -0.
    if p > 0.0 && p < 1.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Partition whose blocks are the non-empty intersections of blocks of `a`
/// and `b`.
pub fn common_refinement(a: &Partition, b: &Partition) -> Result<Partition, InformationError> {
    if !a.same_ground_set(b) {
        return Err(InformationError::GroundSetMismatch);
    }
    Ok(a.intersect(b))
}

/// Partition whose blocks are the smallest unions of blocks shared by `a`
/// and `b`: the join in the refinement lattice.
pub fn common_coarsening(a: &Partition, b: &Partition) -> Result<Partition, InformationError> {
    if !a.same_ground_set(b) {
        return Err(InformationError::GroundSetMismatch);
    }
    Ok(a.coarsen_with(b))
}

/// Entropies of two questions, of their joint question, and their mutual
/// information.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelevanceReport {
    #[serde(rename = "H_A")]
    pub h_a: f64,
    #[serde(rename = "H_B")]
    pub h_b: f64,
    #[serde(rename = "H_joint")]
    pub h_joint: f64,
    #[serde(rename = "I")]
    pub mutual_information: f64,
}

pub fn mutual_information(
    a: &Partition,
    b: &Partition,
    d: &AtomDistribution,
) -> Result<RelevanceReport, InformationError> {
    let joint = common_refinement(a, b)?;
    let h_a = partition_entropy(a, d)?;
    let h_b = partition_entropy(b, d)?;
    let h_joint = partition_entropy(&joint, d)?;
    Ok(RelevanceReport {
        h_a,
        h_b,
        h_joint,
        mutual_information: h_a + h_b - h_joint,
    })
}

/// Entropy as a valuation on a partition lattice whose ids are partition
/// literals, e.g. one built by [`partition_lattice`](crate::poset::partition_lattice).
pub fn entropy_valuation<'a>(
    lattice: &'a Lattice,
    d: &AtomDistribution,
) -> Result<Valuation<'a, f64>, InformationError> {
    let mut values = Vec::with_capacity(lattice.len());
    for id in lattice.elements() {
        let part: Partition = id.as_str().parse().map_err(|e: crate::poset::PosetError| {
            InformationError::BadPartitionId(id.clone(), e.to_string())
        })?;
        values.push((id.clone(), partition_entropy(&part, d)?));
    }
    Ok(Valuation::new(lattice, values).expect("one value per element"))
}
