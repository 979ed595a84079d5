pub mod cli;
pub mod information;
pub mod poset;
pub mod spacetime;
pub mod valuation;

/// Exact rational number used for zero-tolerance audits and spacetime
/// coordinates.
pub type Rational = num_rational::Ratio<i128>;
