//! Quantifying a causal order by projecting events onto observer chains.
//!
//! Events live in 1+1 dimensions with exact rational construction
//! coordinates, but the operations here only consult the order
//! `e1 <= e2 iff t2 - t1 >= |x2 - x1|` and chain membership. Projecting an
//! event onto a chain picks the least chain element above it; two chains
//! give each event a pair of integer labels, and differences of those
//! labels between two events quantify the interval between them.
//!
//! # Chains and frames
//!
//! An [`ObserverChain`] with boost factor `k` and tick `s` steps by
//! `(s / k, s k)` in light-cone components `(t + x, t - x)`, so its proper
//! time per tick is `s` and it moves with velocity `(1 - k²) / (1 + k²)` in
//! construction coordinates. A synchronized pair of `k`-chains straddling a
//! pair of events measures `(Δp, Δq) = (k Δ(t+x), Δ(t-x) / k)`, the
//! rest-frame pair acted on by [`Boost`] with the same `k`. The induced
//! `(Δt', Δx')` obey `Δt' = γ(Δt + βΔx)`, `Δx' = γ(Δx + βΔt)` with
//! `β = (k² - 1) / (k² + 1)` and `γ = (k² + 1) / 2k`.

mod interval;
mod scene;

use std::fmt;
use std::ops::RangeInclusive;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::poset::{Poset, PosetError};
use crate::Rational;

pub use interval::{
    common_decomposition, decompose, interval_pair, interval_pair_unchecked, interval_scalar,
    Boost, IntervalPair,
};
pub use scene::{parse_rational, Frame, Scene, SceneDocument};

/// Largest side length accepted by [`causal_grid`].
pub const MAX_GRID: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpacetimeError {
    #[error("event is not quantifiable by chain `{chain}` within indices {lo}..={hi}")]
    NotQuantifiable { chain: String, lo: i64, hi: i64 },
    #[error("chains `{0}` and `{1}` are not synchronized")]
    NotSynchronized(String, String),
    #[error("boost factor must be positive")]
    NonPositiveBoost,
    #[error("chain `{0}` needs a positive tick")]
    NonPositiveTick(String),
    #[error("chain `{0}` has an empty index range")]
    EmptyRange(String),
    #[error("grid size {0} outside 1..={MAX_GRID}")]
    BoundExceeded(usize),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("unknown chain `{0}`")]
    UnknownChain(String),
    #[error("invalid scene: {0}")]
    InvalidScene(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A point with construction coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    pub t: Rational,
    pub x: Rational,
}

impl Event {
    pub fn new(t: Rational, x: Rational) -> Self {
        Self { t, x }
    }

    pub fn from_integers(t: i128, x: i128) -> Self {
        Self::new(Rational::from_integer(t), Rational::from_integer(x))
    }

    /// `self <= other` in the causal order.
    pub fn precedes(&self, other: &Event) -> bool {
        CausalOrder::leq(self, other)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.x)
    }
}

/// The causal order on events: `a <= b` iff `b` is in the closed future
/// light cone of `a`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CausalOrder;

impl CausalOrder {
    pub fn leq(a: &Event, b: &Event) -> bool {
        b.t - a.t >= (b.x - a.x).abs()
    }

    pub fn lt(a: &Event, b: &Event) -> bool {
        a != b && Self::leq(a, b)
    }

    pub fn comparable(a: &Event, b: &Event) -> bool {
        Self::leq(a, b) || Self::leq(b, a)
    }
}

/// An evenly ticking chain of events over a finite index range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObserverChain {
    id: String,
    origin: Event,
    k: Rational,
    tick: Rational,
    lo: i64,
    hi: i64,
}

impl ObserverChain {
    pub fn new(
        id: impl Into<String>,
        origin: Event,
        k: Rational,
        tick: Rational,
        range: RangeInclusive<i64>,
    ) -> Result<Self, SpacetimeError> {
        let id = id.into();
        if !k.is_positive() {
            return Err(SpacetimeError::NonPositiveBoost);
        }
        if !tick.is_positive() {
            return Err(SpacetimeError::NonPositiveTick(id));
        }
        if range.is_empty() {
            return Err(SpacetimeError::EmptyRange(id));
        }
        Ok(Self {
            id,
            origin,
            k,
            tick,
            lo: *range.start(),
            hi: *range.end(),
        })
    }

    /// A chain at rest at position `x`, starting at `t = 0`.
    pub fn at_rest(
        id: impl Into<String>,
        x: Rational,
        tick: Rational,
        range: RangeInclusive<i64>,
    ) -> Result<Self, SpacetimeError> {
        Self::new(
            id,
            Event::new(Rational::zero(), x),
            Rational::from_integer(1),
            tick,
            range,
        )
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn origin(&self) -> Event {
        self.origin
    }

    pub fn k(&self) -> Rational {
        self.k
    }

    pub fn tick(&self) -> Rational {
        self.tick
    }

    pub fn range(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    /// Velocity in construction coordinates.
    pub fn velocity(&self) -> Rational {
        let k2 = self.k * self.k;
        (Rational::from_integer(1) - k2) / (Rational::from_integer(1) + k2)
    }

    /// Chain element `i`. Defined for any `i`; only indices in
    /// [`range`](Self::range) take part in projections.
    pub fn element(&self, i: i64) -> Event {
        let i = Rational::from_integer(i as i128);
        let du = self.tick / self.k;
        let dv = self.tick * self.k;
        let two = Rational::from_integer(2);
        Event {
            t: self.origin.t + i * (du + dv) / two,
            x: self.origin.x + i * (du - dv) / two,
        }
    }

    fn not_quantifiable(&self) -> SpacetimeError {
        SpacetimeError::NotQuantifiable {
            chain: self.id.clone(),
            lo: self.lo,
            hi: self.hi,
        }
    }
}

/// Least chain index `i` in range with `e <= chain[i]`.
///
/// The chain is totally ordered, so the predicate is monotone in `i` and a
/// binary search over the order relation suffices.
pub fn project(e: &Event, chain: &ObserverChain) -> Result<i64, SpacetimeError> {
    let (mut lo, mut hi) = (chain.lo, chain.hi);
    if !e.precedes(&chain.element(hi)) {
        return Err(chain.not_quantifiable());
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if e.precedes(&chain.element(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Projections of `e` onto each chain, in order.
pub fn coordinatize(e: &Event, chains: &[ObserverChain]) -> Result<Vec<i64>, SpacetimeError> {
    chains.iter().map(|c| project(e, c)).collect()
}

/// Whether successive elements of `p` (indices in `range`) project onto
/// successive elements of `q`, and vice versa.
pub fn check_synchronized(
    p: &ObserverChain,
    q: &ObserverChain,
    range: RangeInclusive<i64>,
) -> Result<bool, SpacetimeError> {
    synchronized_over(p, q, range.clone(), range)
}

pub(crate) fn synchronized_over(
    p: &ObserverChain,
    q: &ObserverChain,
    p_span: RangeInclusive<i64>,
    q_span: RangeInclusive<i64>,
) -> Result<bool, SpacetimeError> {
    Ok(successive(p, q, p_span)? && successive(q, p, q_span)?)
}

fn successive(
    from: &ObserverChain,
    onto: &ObserverChain,
    span: RangeInclusive<i64>,
) -> Result<bool, SpacetimeError> {
    let mut prev: Option<i64> = None;
    for i in span {
        let j = project(&from.element(i), onto)?;
        if prev.is_some_and(|pj| j != pj + 1) {
            return Ok(false);
        }
        prev = Some(j);
    }
    Ok(true)
}

/// Events at integer coordinates `0 <= t, x < n`, in row-major order.
pub fn causal_grid(n: usize) -> Result<Vec<Event>, SpacetimeError> {
    if n == 0 || n > MAX_GRID {
        return Err(SpacetimeError::BoundExceeded(n));
    }
    Ok((0..n as i128)
        .flat_map(|t| (0..n as i128).map(move |x| Event::from_integers(t, x)))
        .collect())
}

/// [`causal_grid`] as a poset with ids `(t,x)`.
///
/// On the integer grid every causal relation factors through unit steps
/// `(t, x) -> (t + 1, x + d)` with `d` in `{-1, 0, 1}` that stay inside the
/// grid, so those steps are exactly the covers.
pub fn causal_grid_poset(n: usize) -> Result<Poset, SpacetimeError> {
    let events = causal_grid(n)?;
    let name = |t: usize, x: usize| format!("({t},{x})");
    let mut covers = Vec::new();
    for t in 0..n.saturating_sub(1) {
        for x in 0..n {
            for nx in x.saturating_sub(1)..=(x + 1).min(n - 1) {
                covers.push((name(t, x), name(t + 1, nx)));
            }
        }
    }
    Ok(Poset::new(events.iter().map(|e| e.to_string()), covers)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128) -> Rational {
        Rational::from_integer(n)
    }

    fn rest(id: &str, x: i128) -> ObserverChain {
        ObserverChain::at_rest(id, r(x), r(1), 0..=100).unwrap()
    }

    /// Linear scan oracle for projections.
    fn project_scan(e: &Event, c: &ObserverChain) -> Option<i64> {
        c.range().find(|&i| CausalOrder::leq(e, &c.element(i)))
    }

    #[test]
    fn causal_order_examples() {
        let o = Event::from_integers(0, 0);
        assert!(o.precedes(&Event::from_integers(2, 1)));
        assert!(!o.precedes(&Event::from_integers(1, 2)));
        assert!(!CausalOrder::comparable(
            &Event::from_integers(1, 0),
            &Event::from_integers(1, 2)
        ));
        assert!(CausalOrder::leq(&o, &o) && !CausalOrder::lt(&o, &o));
    }

    #[test]
    fn projection_onto_rest_chain() {
        assert_eq!(
            project(&Event::from_integers(2, 1), &rest("P", 0)).unwrap(),
            3
        );
        // An event on the chain projects to itself.
        assert_eq!(
            project(&Event::from_integers(7, 0), &rest("P", 0)).unwrap(),
            7
        );
        let far = ObserverChain::at_rest("P", r(0), r(1), 0..=10).unwrap();
        assert_eq!(
            project(&Event::from_integers(0, 100), &far).unwrap_err(),
            SpacetimeError::NotQuantifiable {
                chain: "P".into(),
                lo: 0,
                hi: 10
            }
        );
    }

    #[test]
    fn projection_clamps_to_range_start() {
        let c = ObserverChain::at_rest("P", r(0), r(1), 5..=10).unwrap();
        assert_eq!(project(&Event::from_integers(0, 0), &c).unwrap(), 5);
    }

    #[test]
    fn coordinates_from_two_chains() {
        let chains = [rest("P", 0), rest("Q", 5)];
        assert_eq!(
            coordinatize(&Event::from_integers(2, 1), &chains).unwrap(),
            vec![3, 6]
        );
        assert_eq!(
            coordinatize(&Event::from_integers(2, 1), &[]).unwrap(),
            Vec::<i64>::new()
        );
        // On the first chain at index k, second chain at distance d: (k, k + d).
        for (k, d) in [(0, 5), (4, 5), (9, 2)] {
            let chains = [rest("P", 0), rest("Q", d)];
            assert_eq!(
                coordinatize(&Event::from_integers(k, 0), &chains).unwrap(),
                vec![k as i64, (k + d) as i64]
            );
        }
        let short = ObserverChain::at_rest("Q", r(50), r(1), 0..=10).unwrap();
        let err = coordinatize(&Event::from_integers(2, 1), &[rest("P", 0), short]).unwrap_err();
        assert!(matches!(err, SpacetimeError::NotQuantifiable { chain, .. } if chain == "Q"));
    }

    #[test]
    fn binary_search_matches_scan() {
        let chains = [
            rest("P", 0),
            ObserverChain::new(
                "B",
                Event::from_integers(0, 3),
                Rational::new(3, 2),
                Rational::new(1, 6),
                -50..=400,
            )
            .unwrap(),
            ObserverChain::new(
                "C",
                Event::from_integers(-4, 9),
                r(2),
                Rational::new(1, 2),
                0..=60,
            )
            .unwrap(),
        ];
        for e in causal_grid(8).unwrap() {
            for c in &chains {
                assert_eq!(
                    project(&e, c).ok(),
                    project_scan(&e, c),
                    "{e} onto {}",
                    c.id()
                );
            }
        }
    }

    #[test]
    fn chain_elements_are_totally_ordered() {
        let c = ObserverChain::new(
            "B",
            Event::from_integers(1, 1),
            Rational::new(2, 3),
            Rational::new(1, 3),
            0..=20,
        )
        .unwrap();
        for i in 0..20 {
            assert!(CausalOrder::lt(&c.element(i), &c.element(i + 1)));
        }
        // Proper time per tick equals the tick.
        let (a, b) = (c.element(0), c.element(1));
        let (dt, dx) = (b.t - a.t, b.x - a.x);
        assert_eq!(dt * dt - dx * dx, c.tick() * c.tick());
        assert_eq!(dx / dt, c.velocity());
    }

    #[test]
    fn synchronization() {
        assert!(check_synchronized(&rest("P", 0), &rest("Q", 4), 0..=10).unwrap());
        assert!(check_synchronized(&rest("P", 0), &rest("P", 0), 0..=10).unwrap());
        let slow = ObserverChain::at_rest("Q", r(4), r(2), 0..=100).unwrap();
        assert!(!check_synchronized(&rest("P", 0), &slow, 0..=10).unwrap());
        let moving =
            ObserverChain::new("M", Event::from_integers(0, 4), r(2), r(1), 0..=100).unwrap();
        assert!(!check_synchronized(&rest("P", 0), &moving, 0..=10).unwrap());
    }

    #[test]
    fn rest_pair_successor_offset() {
        let (p, q) = (rest("P", 0), rest("Q", 4));
        for i in 0..10 {
            assert_eq!(project(&p.element(i), &q).unwrap(), i + 4);
        }
    }

    #[test]
    fn chain_validation() {
        let o = Event::from_integers(0, 0);
        assert_eq!(
            ObserverChain::new("P", o, r(0), r(1), 0..=1).unwrap_err(),
            SpacetimeError::NonPositiveBoost
        );
        assert!(matches!(
            ObserverChain::new("P", o, r(1), r(-1), 0..=1),
            Err(SpacetimeError::NonPositiveTick(_))
        ));
        #[allow(clippy::reversed_empty_ranges)]
        let empty = 3..=1;
        assert!(matches!(
            ObserverChain::new("P", o, r(1), r(1), empty),
            Err(SpacetimeError::EmptyRange(_))
        ));
    }

    #[test]
    fn grid_generator() {
        assert_eq!(causal_grid(2).unwrap().len(), 4);
        assert_eq!(
            causal_grid(0).unwrap_err(),
            SpacetimeError::BoundExceeded(0)
        );
        assert_eq!(
            causal_grid(65).unwrap_err(),
            SpacetimeError::BoundExceeded(65)
        );
    }

    #[test]
    fn grid_poset_matches_predicate() {
        let n = 5;
        let p = causal_grid_poset(n).unwrap();
        let events = causal_grid(n).unwrap();
        for a in &events {
            for b in &events {
                let got = p.leq(&a.to_string().into(), &b.to_string().into()).unwrap();
                assert_eq!(got, CausalOrder::leq(a, b), "{a} <= {b}");
            }
        }
        assert_eq!(causal_grid_poset(64).unwrap().len(), 4096);
    }
}
