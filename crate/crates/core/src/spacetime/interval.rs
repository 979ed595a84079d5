use num_traits::{One, Signed};

use super::{project, synchronized_over, Event, ObserverChain, SpacetimeError};
use crate::Rational;

/// The pair `(Δp, Δq)` quantifying an interval with respect to two chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntervalPair {
    pub dp: Rational,
    pub dq: Rational,
}

impl IntervalPair {
    pub fn new(dp: Rational, dq: Rational) -> Self {
        Self { dp, dq }
    }

    /// Rebuilds `(Δp, Δq) = (Δt, Δt) + (Δx, -Δx)`.
    pub fn from_decomposition(dt: Rational, dx: Rational) -> Self {
        Self::new(dt + dx, dt - dx)
    }

    /// Symmetric part `(Δp + Δq) / 2`.
    pub fn dt(&self) -> Rational {
        (self.dp + self.dq) / Rational::from_integer(2)
    }

    /// Antisymmetric part `(Δp - Δq) / 2`.
    pub fn dx(&self) -> Rational {
        (self.dp - self.dq) / Rational::from_integer(2)
    }

    /// `Δs² = Δp Δq`, equal to `Δt² - Δx²`.
    pub fn ds2(&self) -> Rational {
        self.dp * self.dq
    }
}

pub fn decompose(ip: &IntervalPair) -> (Rational, Rational) {
    (ip.dt(), ip.dx())
}

pub fn interval_scalar(ip: &IntervalPair) -> Rational {
    ip.ds2()
}

/// Quantifies the interval from `e1` to `e2` using chains `p` and `q`.
///
/// Each chain labels its element `i` with `i * tick`. The chains must be
/// synchronized over the index spans the two events project onto.
pub fn interval_pair(
    e1: &Event,
    e2: &Event,
    p: &ObserverChain,
    q: &ObserverChain,
) -> Result<IntervalPair, SpacetimeError> {
    let (p1, p2, q1, q2) = projections(e1, e2, p, q)?;
    let p_span = p1.min(p2)..=p1.max(p2);
    let q_span = q1.min(q2)..=q1.max(q2);
    if !synchronized_over(p, q, p_span, q_span)? {
        return Err(SpacetimeError::NotSynchronized(
            p.id().to_owned(),
            q.id().to_owned(),
        ));
    }
    Ok(label_differences(p1, p2, q1, q2, p, q))
}

/// [`interval_pair`] without the synchronization check.
pub fn interval_pair_unchecked(
    e1: &Event,
    e2: &Event,
    p: &ObserverChain,
    q: &ObserverChain,
) -> Result<IntervalPair, SpacetimeError> {
    let (p1, p2, q1, q2) = projections(e1, e2, p, q)?;
    Ok(label_differences(p1, p2, q1, q2, p, q))
}

fn projections(
    e1: &Event,
    e2: &Event,
    p: &ObserverChain,
    q: &ObserverChain,
) -> Result<(i64, i64, i64, i64), SpacetimeError> {
    Ok((
        project(e1, p)?,
        project(e2, p)?,
        project(e1, q)?,
        project(e2, q)?,
    ))
}

fn label_differences(
    p1: i64,
    p2: i64,
    q1: i64,
    q2: i64,
    p: &ObserverChain,
    q: &ObserverChain,
) -> IntervalPair {
    let steps = |a: i64, b: i64| Rational::from_integer((b - a) as i128);
    IntervalPair::new(steps(p1, p2) * p.tick(), steps(q1, q2) * q.tick())
}

/// The single `(Δt, Δx)` shared by every pair, if they all agree.
pub fn common_decomposition(pairs: &[IntervalPair]) -> Option<(Rational, Rational)> {
    let (first, rest) = pairs.split_first()?;
    let d = decompose(first);
    rest.iter().all(|ip| decompose(ip) == d).then_some(d)
}

/// Change of synchronized frame acting on light-cone components:
/// `(Δp, Δq) -> (k Δp, Δq / k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Boost {
    k: Rational,
}

impl Boost {
    pub fn new(k: Rational) -> Result<Self, SpacetimeError> {
        if k.is_positive() {
            Ok(Self { k })
        } else {
            Err(SpacetimeError::NonPositiveBoost)
        }
    }

    pub fn identity() -> Self {
        Self { k: Rational::one() }
    }

    pub fn k(&self) -> Rational {
        self.k
    }

    /// `β = (k² - 1) / (k² + 1)`.
    pub fn beta(&self) -> Rational {
        let k2 = self.k * self.k;
        (k2 - Rational::one()) / (k2 + Rational::one())
    }

    /// `γ = (k² + 1) / 2k`, equal to `1 / sqrt(1 - β²)`.
    pub fn gamma(&self) -> Rational {
        (self.k * self.k + Rational::one()) / (Rational::from_integer(2) * self.k)
    }

    pub fn apply(&self, ip: &IntervalPair) -> IntervalPair {
        IntervalPair::new(self.k * ip.dp, ip.dq / self.k)
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &Boost) -> Boost {
        Boost { k: self.k * then.k }
    }

    /// `(γ(Δt + βΔx), γ(Δx + βΔt))`.
    pub fn lorentz(&self, dt: Rational, dx: Rational) -> (Rational, Rational) {
        let (b, g) = (self.beta(), self.gamma());
        (g * (dt + b * dx), g * (dx + b * dt))
    }
}
