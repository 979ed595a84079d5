//! Finite partially ordered sets.
//!
//! A [`Poset`] is built from its Hasse diagram: a set of element ids and a
//! set of cover pairs `(lower, upper)`. Construction validates the covers
//! (no cycles, no transitively implied pairs) and eagerly computes the full
//! reflexive-transitive reachability relation, so every order query after
//! that is a bit lookup.
//!
//! Elements are kept in canonical order (lexicographic on id). Anything
//! that reports "the first" offending element or pair uses that order.

mod bits;
mod generators;
mod io;
mod lattice;
mod partition;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use bits::ones;
use bits::BitMatrix;

pub use generators::{
    antichain, boolean_atom_id, boolean_lattice, bowtie, chain, diamond, divisor_lattice,
    partition_lattice, MAX_BOOLEAN_ATOMS, MAX_PARTITION_ATOMS,
};
pub use io::{to_dot, PosetDocument};
pub use lattice::{
    is_lattice, lattice_product, product_id, verify_consistency_relations, ConsistencyReport,
    Lattice, LatticeCertificate,
};
pub use partition::Partition;

/// Largest poset the builder accepts. Reachability is a dense bit matrix.
pub const MAX_ELEMENTS: usize = 8192;

/// Opaque element token, unique within one poset.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ElementId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for ElementId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl From<&ElementId> for ElementId {
    fn from(id: &ElementId) -> Self {
        id.clone()
    }
}

/// Which kind of bound a pair failed to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Join,
    Meet,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Join => f.write_str("least upper bound"),
            BoundKind::Meet => f.write_str("greatest lower bound"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("element ids must be non-empty")]
    EmptyId,
    #[error("poset has no elements")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(ElementId),
    #[error("unknown element `{0}`")]
    UnknownElement(ElementId),
    #[error("cover relation is cyclic through `{0}`")]
    CycleDetected(ElementId),
    #[error("cover ({0}, {1}) is implied by other covers")]
    RedundantCover(ElementId, ElementId),
    #[error("{0} elements exceeds the limit of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("bound of an empty set of elements requested")]
    EmptyQuery,
    #[error("`{0}` and `{1}` have no unique {2}")]
    NoUniqueBound(ElementId, ElementId, BoundKind),
    #[error("not a lattice: `{0}` and `{1}` have no unique {2}")]
    NotALattice(ElementId, ElementId, BoundKind),
    #[error("{count} atoms requested; supported range is 1..={max}")]
    TooManyAtoms { count: usize, max: usize },
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid generator argument: {0}")]
    InvalidArgument(String),
}

/// A validated finite poset with precomputed reachability.
#[derive(Clone, Debug)]
pub struct Poset {
    ids: Vec<ElementId>,
    index: HashMap<ElementId, usize>,
    covers: Vec<(usize, usize)>,
    /// `up[i][j]` iff `ids[i] <= ids[j]`.
    up: BitMatrix,
    /// Transpose of `up`.
    down: BitMatrix,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from its elements and cover pairs `(lower, upper)`.
    ///
    /// Duplicate cover pairs collapse. Cyclic or transitively implied covers
    /// are rejected rather than repaired.
    pub fn new<E, A, B>(
        elements: impl IntoIterator<Item = E>,
        covers: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self, PosetError>
    where
        E: Into<ElementId>,
        A: Into<ElementId>,
        B: Into<ElementId>,
    {
        let mut ids: Vec<ElementId> = elements.into_iter().map(Into::into).collect();
        if ids.is_empty() {
            return Err(PosetError::Empty);
        }
        if ids.len() > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(ids.len()));
        }
        if ids.iter().any(|id| id.0.is_empty()) {
            return Err(PosetError::EmptyId);
        }
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicateElement(w[0].clone()));
        }
        let index: HashMap<ElementId, usize> = ids
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, id)| (id, i))
            .collect();

        let lookup = |id: ElementId| {
            index
                .get(&id)
                .copied()
                .ok_or(PosetError::UnknownElement(id))
        };
        let mut edges = Vec::new();
        for (a, b) in covers {
            edges.push((lookup(a.into())?, lookup(b.into())?));
        }
        edges.sort_unstable();
        edges.dedup();

        let n = ids.len();
        let mut children = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for &(a, b) in &edges {
            if a == b {
                return Err(PosetError::CycleDetected(ids[a].clone()));
            }
            children[a].push(b);
            indegree[b] += 1;
        }

        // Kahn's algorithm; anything left over sits on a cycle.
        let mut order = Vec::with_capacity(n);
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for &c in &children[i] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    queue.push_back(c);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).expect("cycle member");
            return Err(PosetError::CycleDetected(ids[stuck].clone()));
        }

        let mut up = BitMatrix::new(n);
        for &i in order.iter().rev() {
            up.set(i, i);
            for &c in &children[i] {
                up.union_rows(i, c);
            }
        }

        for &(a, b) in &edges {
            let implied = children[a].iter().any(|&c| c != b && up.get(c, b));
            if implied {
                return Err(PosetError::RedundantCover(ids[a].clone(), ids[b].clone()));
            }
        }

        let down = up.transpose();
        Ok(Self {
            ids,
            index,
            covers: edges,
            up,
            down,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> &[ElementId] {
        &self.ids
    }

    /// Cover pairs `(lower, upper)` in canonical order.
    pub fn covers(&self) -> impl Iterator<Item = (&ElementId, &ElementId)> + '_ {
        self.covers
            .iter()
            .map(|&(a, b)| (&self.ids[a], &self.ids[b]))
    }

    pub fn contains(&self, id: &ElementId) -> bool {
        self.index.contains_key(id)
    }

    pub fn index_of(&self, id: &ElementId) -> Result<usize, PosetError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(id.clone()))
    }

    pub(crate) fn id(&self, i: usize) -> &ElementId {
        &self.ids[i]
    }

    #[inline]
    pub(crate) fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up.get(i, j)
    }

    pub(crate) fn cover_indices(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `x <= y`.
    pub fn leq(&self, x: &ElementId, y: &ElementId) -> Result<bool, PosetError> {
        Ok(self.leq_idx(self.index_of(x)?, self.index_of(y)?))
    }

    /// `x < y`.
    pub fn lt(&self, x: &ElementId, y: &ElementId) -> Result<bool, PosetError> {
        Ok(x != y && self.leq(x, y)?)
    }

    pub fn comparable(&self, x: &ElementId, y: &ElementId) -> Result<bool, PosetError> {
        Ok(self.leq(x, y)? || self.leq(y, x)?)
    }

    /// Every `z` with `x <= z` for all `x` in `set`. Reflexive: a single
    /// element is contained in its own upper bound.
    pub fn upper_bound(&self, set: &[ElementId]) -> Result<Vec<ElementId>, PosetError> {
        self.bound(set, &self.up)
    }

    /// Every `z` with `z <= x` for all `x` in `set`.
    pub fn lower_bound(&self, set: &[ElementId]) -> Result<Vec<ElementId>, PosetError> {
        self.bound(set, &self.down)
    }

    fn bound(&self, set: &[ElementId], rel: &BitMatrix) -> Result<Vec<ElementId>, PosetError> {
        let (first, rest) = set.split_first().ok_or(PosetError::EmptyQuery)?;
        let mut acc = rel.row(self.index_of(first)?).to_vec();
        for x in rest {
            acc = bits::and(&acc, rel.row(self.index_of(x)?));
        }
        Ok(ones(&acc).map(|i| self.ids[i].clone()).collect())
    }

    /// Least element of the upper bound of `{x, y}`.
    pub fn join(&self, x: &ElementId, y: &ElementId) -> Result<ElementId, PosetError> {
        let (i, j) = (self.index_of(x)?, self.index_of(y)?);
        self.join_idx(i, j)
            .map(|k| self.ids[k].clone())
            .ok_or_else(|| PosetError::NoUniqueBound(x.clone(), y.clone(), BoundKind::Join))
    }

    /// Greatest element of the lower bound of `{x, y}`.
    pub fn meet(&self, x: &ElementId, y: &ElementId) -> Result<ElementId, PosetError> {
        let (i, j) = (self.index_of(x)?, self.index_of(y)?);
        self.meet_idx(i, j)
            .map(|k| self.ids[k].clone())
            .ok_or_else(|| PosetError::NoUniqueBound(x.clone(), y.clone(), BoundKind::Meet))
    }

    pub(crate) fn join_idx(&self, i: usize, j: usize) -> Option<usize> {
        extremal(&bits::and(self.up.row(i), self.up.row(j)), &self.up)
    }

    pub(crate) fn meet_idx(&self, i: usize, j: usize) -> Option<usize> {
        extremal(&bits::and(self.down.row(i), self.down.row(j)), &self.down)
    }

    /// Elements with nothing strictly below them.
    pub fn minimal_elements(&self) -> Vec<ElementId> {
        (0..self.len())
            .filter(|&i| self.down.count_row(i) == 1)
            .map(|i| self.ids[i].clone())
            .collect()
    }

    /// Elements with nothing strictly above them.
    pub fn maximal_elements(&self) -> Vec<ElementId> {
        (0..self.len())
            .filter(|&i| self.up.count_row(i) == 1)
            .map(|i| self.ids[i].clone())
            .collect()
    }

    /// The unique least element, if there is one.
    pub fn bottom(&self) -> Option<&ElementId> {
        (0..self.len())
            .find(|&i| self.up.count_row(i) == self.len())
            .map(|i| &self.ids[i])
    }

    /// The unique greatest element, if there is one.
    pub fn top(&self) -> Option<&ElementId> {
        (0..self.len())
            .find(|&i| self.down.count_row(i) == self.len())
            .map(|i| &self.ids[i])
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: &ElementId) -> Result<Vec<ElementId>, PosetError> {
        let i = self.index_of(x)?;
        Ok(self
            .covers
            .iter()
            .filter(|&&(a, _)| a == i)
            .map(|&(_, b)| self.ids[b].clone())
            .collect())
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: &ElementId) -> Result<Vec<ElementId>, PosetError> {
        let i = self.index_of(x)?;
        let mut out: Vec<_> = self
            .covers
            .iter()
            .filter(|&&(_, b)| b == i)
            .map(|&(a, _)| self.ids[a].clone())
            .collect();
        out.sort();
        Ok(out)
    }
}

/// The member of `candidates` that every other candidate reaches through
/// `rel`, i.e. the least (for `up`) or greatest (for `down`) candidate.
fn extremal(candidates: &[u64], rel: &BitMatrix) -> Option<usize> {
    // The extremal element reaches all candidates, so it has the largest row.
    let best = ones(candidates).max_by_key(|&c| rel.count_row(c))?;
    bits::is_subset(candidates, rel.row(best)).then_some(best)
}
