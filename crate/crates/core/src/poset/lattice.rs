//! Lattices: posets in which every pair has a unique join and meet.

use serde::{Deserialize, Serialize};

use super::{BoundKind, ElementId, Poset, PosetError};

/// Outcome of a lattice test. `witness` is set exactly when `is_lattice`
/// is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCertificate {
    pub is_lattice: bool,
    pub witness: Option<(ElementId, ElementId)>,
    /// Which bound the witness pair lacks.
    pub missing: Option<BoundKind>,
}

/// Decides whether `p` is a lattice. The witness is the first pair in
/// canonical order lacking a unique join (checked first) or meet.
pub fn is_lattice(p: &Poset) -> LatticeCertificate {
    match first_failure(p) {
        None => LatticeCertificate {
            is_lattice: true,
            witness: None,
            missing: None,
        },
        Some((i, j, kind)) => LatticeCertificate {
            is_lattice: false,
            witness: Some((p.id(i).clone(), p.id(j).clone())),
            missing: Some(kind),
        },
    }
}

fn first_failure(p: &Poset) -> Option<(usize, usize, BoundKind)> {
    let n = p.len();
    for i in 0..n {
        for j in i + 1..n {
            if p.join_idx(i, j).is_none() {
                return Some((i, j, BoundKind::Join));
            }
            if p.meet_idx(i, j).is_none() {
                return Some((i, j, BoundKind::Meet));
            }
        }
    }
    None
}

/// A poset certified as a lattice, with join and meet tabulated.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl Lattice {
    pub fn new(poset: Poset) -> Result<Self, PosetError> {
        let n = poset.len();
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let not_lattice =
                    |kind| PosetError::NotALattice(poset.id(i).clone(), poset.id(j).clone(), kind);
                let jn = poset
                    .join_idx(i, j)
                    .ok_or_else(|| not_lattice(BoundKind::Join))?;
                let mt = poset
                    .meet_idx(i, j)
                    .ok_or_else(|| not_lattice(BoundKind::Meet))?;
                join[i * n + j] = jn as u32;
                join[j * n + i] = jn as u32;
                meet[i * n + j] = mt as u32;
                meet[j * n + i] = mt as u32;
            }
        }
        // A finite non-empty lattice has both bounds: fold the tables.
        let bottom = (1..n).fold(0, |acc, k| meet[acc * n + k] as usize);
        let top = (1..n).fold(0, |acc, k| join[acc * n + k] as usize);
        Ok(Self {
            poset,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn elements(&self) -> &[ElementId] {
        self.poset.elements()
    }

    pub fn bottom(&self) -> &ElementId {
        self.poset.id(self.bottom)
    }

    pub fn top(&self) -> &ElementId {
        self.poset.id(self.top)
    }

    pub fn join(&self, x: &ElementId, y: &ElementId) -> Result<&ElementId, PosetError> {
        let (i, j) = (self.poset.index_of(x)?, self.poset.index_of(y)?);
        Ok(self.poset.id(self.join_idx(i, j)))
    }

    pub fn meet(&self, x: &ElementId, y: &ElementId) -> Result<&ElementId, PosetError> {
        let (i, j) = (self.poset.index_of(x)?, self.poset.index_of(y)?);
        Ok(self.poset.id(self.meet_idx(i, j)))
    }

    pub fn leq(&self, x: &ElementId, y: &ElementId) -> Result<bool, PosetError> {
        self.poset.leq(x, y)
    }

    #[inline]
    pub(crate) fn join_idx(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len() + j] as usize
    }

    #[inline]
    pub(crate) fn meet_idx(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len() + j] as usize
    }

    #[inline]
    pub(crate) fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.poset.leq_idx(i, j)
    }

    pub(crate) fn bottom_idx(&self) -> usize {
        self.bottom
    }

    pub(crate) fn index_of(&self, id: &ElementId) -> Result<usize, PosetError> {
        self.poset.index_of(id)
    }

    pub(crate) fn id(&self, i: usize) -> &ElementId {
        self.poset.id(i)
    }

    /// Elements other than the bottom that are not the join of two strictly
    /// smaller elements. In a finite lattice these are exactly the elements
    /// with a single lower cover.
    pub fn join_irreducibles(&self) -> Vec<ElementId> {
        self.single_cover(|&(_, upper)| upper)
    }

    /// Dual of [`Lattice::join_irreducibles`]; the top is excluded.
    pub fn meet_irreducibles(&self) -> Vec<ElementId> {
        self.single_cover(|&(lower, _)| lower)
    }

    fn single_cover(&self, end: impl Fn(&(usize, usize)) -> usize) -> Vec<ElementId> {
        let mut count = vec![0usize; self.len()];
        for c in self.poset.cover_indices() {
            count[end(c)] += 1;
        }
        (0..self.len())
            .filter(|&i| count[i] == 1)
            .map(|i| self.poset.id(i).clone())
            .collect()
    }

    /// Audits the consistency relations `x <= y ⇔ (x ∨ y = y and x ∧ y = x)`
    /// against this lattice's own join and meet.
    pub fn consistency_report(&self) -> ConsistencyReport {
        self.audit_algebra(|i, j| self.join_idx(i, j), |i, j| self.meet_idx(i, j))
    }

    /// Audits the consistency relations for an externally supplied algebra
    /// (e.g. `lcm`/`gcd` on divisors), and checks that the supplied
    /// operations agree with the order-theoretic join and meet.
    pub fn verify_algebra(
        &self,
        join: impl Fn(&ElementId, &ElementId) -> ElementId,
        meet: impl Fn(&ElementId, &ElementId) -> ElementId,
    ) -> Result<ConsistencyReport, PosetError> {
        let n = self.len();
        let mut j_tab = vec![0usize; n * n];
        let mut m_tab = vec![0usize; n * n];
        for i in 0..n {
            for k in 0..n {
                let (x, y) = (self.id(i), self.id(k));
                j_tab[i * n + k] = self.index_of(&join(x, y))?;
                m_tab[i * n + k] = self.index_of(&meet(x, y))?;
            }
        }
        let mut report = self.audit_algebra(|i, k| j_tab[i * n + k], |i, k| m_tab[i * n + k]);
        for i in 0..n {
            for k in 0..n {
                if j_tab[i * n + k] != self.join_idx(i, k)
                    || m_tab[i * n + k] != self.meet_idx(i, k)
                {
                    report
                        .operation_mismatches
                        .push((self.id(i).clone(), self.id(k).clone()));
                }
            }
        }
        Ok(report)
    }

    fn audit_algebra(
        &self,
        join: impl Fn(usize, usize) -> usize,
        meet: impl Fn(usize, usize) -> usize,
    ) -> ConsistencyReport {
        let n = self.len();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let structural = self.leq_idx(i, j);
                let algebraic = join(i, j) == j && meet(i, j) == i;
                if structural != algebraic {
                    violations.push((self.id(i).clone(), self.id(j).clone()));
                }
            }
        }
        ConsistencyReport {
            checked: n * n,
            violations,
            operation_mismatches: Vec::new(),
        }
    }
}

/// Result of auditing the consistency relations over all ordered pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub checked: usize,
    /// Pairs where the order and the algebra disagree.
    pub violations: Vec<(ElementId, ElementId)>,
    /// Pairs where a supplied join/meet differs from the lattice's own.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operation_mismatches: Vec<(ElementId, ElementId)>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.operation_mismatches.is_empty()
    }
}

/// Self-audit of the consistency relations; fails if `p` is not a lattice.
pub fn verify_consistency_relations(p: &Poset) -> Result<ConsistencyReport, PosetError> {
    Ok(Lattice::new(p.clone())?.consistency_report())
}

/// Id of the pair `(x, y)` in a lattice product.
pub fn product_id(x: &ElementId, y: &ElementId) -> ElementId {
    ElementId::new(format!("({x},{y})"))
}

/// Cartesian product ordered componentwise. Both factors must be lattices.
pub fn lattice_product(p: &Poset, q: &Poset) -> Result<Poset, PosetError> {
    for side in [p, q] {
        if let Some((a, b)) = is_lattice(side).witness {
            let kind = if side.join(&a, &b).is_err() {
                BoundKind::Join
            } else {
                BoundKind::Meet
            };
            return Err(PosetError::NotALattice(a, b, kind));
        }
    }
    let size = p.len() * q.len();
    if size > super::MAX_ELEMENTS {
        return Err(PosetError::TooLarge(size));
    }
    let mut elements = Vec::with_capacity(size);
    for x in p.elements() {
        for y in q.elements() {
            elements.push(product_id(x, y));
        }
    }
    let mut covers = Vec::new();
    for (lo, hi) in p.covers() {
        for y in q.elements() {
            covers.push((product_id(lo, y), product_id(hi, y)));
        }
    }
    for (lo, hi) in q.covers() {
        for x in p.elements() {
            covers.push((product_id(x, lo), product_id(x, hi)));
        }
    }
    Poset::new(elements, covers)
}
