//! Valuations and bi-valuations on finite lattices.
//!
//! A [`Valuation`] assigns a number to each lattice element; a
//! [`BiValuation`] assigns a number `w(x | t)` to an element `x` relative to
//! a context `t`. Neither type assumes any rule holds: the audits in
//! [`audit`] check the sum rule, the lattice-product rule, the chain rule,
//! the diamond lemma and the product rule for context change, and report
//! every instance that fails.
//!
//! Everything is generic over [`Scalar`], implemented for `f64` and for the
//! exact [`Rational`](crate::Rational), so integer-weight fixtures can be
//! audited with zero tolerance.

pub mod audit;
mod document;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poset::{ElementId, Lattice, PosetError};
use crate::Rational;

pub use audit::{
    check_bivaluation_sum_rule, check_chain_rule, check_context_product_rule, check_diamond_lemma,
    check_normalization, check_product_rule_for_lattice_product, check_sum_rule, Rule, RuleReport,
    Violation, DEFAULT_TOLERANCE,
};
pub use document::{ValuationDocument, ValuationMode};

/// Number type a valuation can take values in.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn to_f64(&self) -> f64;

    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }
}

impl Scalar for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValuationError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("no value given for `{0}`")]
    MissingValue(ElementId),
    #[error("`{0}` is not join-irreducible, so it cannot carry an atom value")]
    NotAnAtom(ElementId),
    #[error("no value given for atom `{0}`")]
    MissingAtom(ElementId),
    #[error("atom `{0}` has a negative value")]
    NegativeAtomValue(ElementId),
    #[error("context `{0}` has zero measure")]
    ZeroMeasureContext(ElementId),
    #[error("w({0} | {1}) is not defined")]
    Undefined(ElementId, ElementId),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
}

/// A total map from lattice elements to numbers.
#[derive(Clone, Debug)]
pub struct Valuation<'a, S = f64> {
    lattice: &'a Lattice,
    values: Vec<S>,
}

impl<'a, S: Scalar> Valuation<'a, S> {
    /// Total assignment; every element needs a value and every key must be
    /// an element.
    pub fn new(
        lattice: &'a Lattice,
        values: impl IntoIterator<Item = (ElementId, S)>,
    ) -> Result<Self, ValuationError> {
        let mut slots: Vec<Option<S>> = vec![None; lattice.len()];
        for (id, v) in values {
            slots[lattice.index_of(&id)?] = Some(v);
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| ValuationError::MissingValue(lattice.id(i).clone())))
            .collect::<Result<_, _>>()?;
        Ok(Self { lattice, values })
    }

    pub fn from_fn(lattice: &'a Lattice, mut f: impl FnMut(&ElementId) -> S) -> Self {
        let values = lattice.elements().iter().map(&mut f).collect();
        Self { lattice, values }
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }

    pub fn get(&self, id: &ElementId) -> Result<&S, ValuationError> {
        Ok(&self.values[self.lattice.index_of(id)?])
    }

    pub(crate) fn at(&self, i: usize) -> &S {
        &self.values[i]
    }

    /// Replaces one value, e.g. to plant a counterexample.
    pub fn set(&mut self, id: &ElementId, value: S) -> Result<(), ValuationError> {
        let i = self.lattice.index_of(id)?;
        self.values[i] = value;
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ElementId, &S)> + '_ {
        self.lattice.elements().iter().zip(&self.values)
    }

    /// First pair `x <= y` with `v(x) > v(y)`, in canonical order.
    pub fn monotonicity_violation(&self) -> Option<(ElementId, ElementId)> {
        let n = self.lattice.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.lattice.leq_idx(i, j) && self.values[i] > self.values[j])
            .map(|(i, j)| (self.lattice.id(i).clone(), self.lattice.id(j).clone()))
    }
}

/// Builds `v(x) = Σ value(a)` over the join-irreducibles `a <= x`.
///
/// On a Boolean lattice the join-irreducibles are the singletons, and this
/// is additive over disjoint joins with `v(bottom) = 0`. Keys must be the
/// element ids of join-irreducibles (`{a}` for [`boolean_lattice`]), and
/// every join-irreducible needs a value.
///
/// [`boolean_lattice`]: crate::poset::boolean_lattice
pub fn derive_valuation_from_atoms<'a, S: Scalar>(
    lattice: &'a Lattice,
    atom_values: &BTreeMap<ElementId, S>,
) -> Result<Valuation<'a, S>, ValuationError> {
    let atoms = lattice.join_irreducibles();
    for (id, v) in atom_values {
        lattice.index_of(id)?;
        if atoms.binary_search(id).is_err() {
            return Err(ValuationError::NotAnAtom(id.clone()));
        }
        if *v < S::zero() {
            return Err(ValuationError::NegativeAtomValue(id.clone()));
        }
    }
    let mut weighted = Vec::with_capacity(atoms.len());
    for a in &atoms {
        let v = atom_values
            .get(a)
            .ok_or_else(|| ValuationError::MissingAtom(a.clone()))?;
        weighted.push((lattice.index_of(a)?, v.clone()));
    }
    let values = (0..lattice.len())
        .map(|x| {
            weighted
                .iter()
                .filter(|(a, _)| lattice.leq_idx(*a, x))
                .fold(S::zero(), |acc, (_, v)| acc + v.clone())
        })
        .collect();
    Ok(Valuation { lattice, values })
}

/// A partial table of `w(x | context)`.
#[derive(Clone, Debug)]
pub struct BiValuation<'a, S = f64> {
    lattice: &'a Lattice,
    /// Row-major by element, column by context.
    table: Vec<Option<S>>,
}

impl<'a, S: Scalar> BiValuation<'a, S> {
    /// Conditional ratios `w(x | y) = v(x ∧ y) / v(y)`, defined wherever
    /// `v(y) > 0`.
    pub fn from_valuation(v: &Valuation<'a, S>) -> Self {
        let lattice = v.lattice;
        let n = lattice.len();
        let mut table = vec![None; n * n];
        for y in 0..n {
            let measure = v.at(y);
            if *measure > S::zero() {
                for x in 0..n {
                    table[x * n + y] = Some(v.at(lattice.meet_idx(x, y)).clone() / measure.clone());
                }
            }
        }
        Self { lattice, table }
    }

    /// Arbitrary externally supplied table; `None` marks undefined entries.
    pub fn from_fn(
        lattice: &'a Lattice,
        mut f: impl FnMut(&ElementId, &ElementId) -> Option<S>,
    ) -> Self {
        let n = lattice.len();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for t in 0..n {
                table.push(f(lattice.id(x), lattice.id(t)));
            }
        }
        Self { lattice, table }
    }

    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }

    /// `w(x | context)`. Contexts whose column is entirely undefined report
    /// [`ValuationError::ZeroMeasureContext`].
    pub fn get(&self, x: &ElementId, context: &ElementId) -> Result<S, ValuationError> {
        let (i, t) = (self.lattice.index_of(x)?, self.lattice.index_of(context)?);
        match self.at(i, t) {
            Some(w) => Ok(w.clone()),
            None if self.context_defined(t) => {
                Err(ValuationError::Undefined(x.clone(), context.clone()))
            }
            None => Err(ValuationError::ZeroMeasureContext(context.clone())),
        }
    }

    pub fn set(&mut self, x: &ElementId, context: &ElementId, w: S) -> Result<(), ValuationError> {
        let (i, t) = (self.lattice.index_of(x)?, self.lattice.index_of(context)?);
        let n = self.lattice.len();
        self.table[i * n + t] = Some(w);
        Ok(())
    }

    #[inline]
    pub(crate) fn at(&self, x: usize, context: usize) -> Option<&S> {
        self.table[x * self.lattice.len() + context].as_ref()
    }

    pub(crate) fn context_defined(&self, t: usize) -> bool {
        let n = self.lattice.len();
        (0..n).any(|x| self.table[x * n + t].is_some())
    }

    /// Contexts with at least one defined entry.
    pub fn contexts(&self) -> Vec<ElementId> {
        (0..self.lattice.len())
            .filter(|&t| self.context_defined(t))
            .map(|t| self.lattice.id(t).clone())
            .collect()
    }
}
