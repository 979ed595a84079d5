//! The interval between two events measured by pairs of observer chains in
//! three frames. Only projections onto the chains are used; the pairs
//! differ by frame but `dp * dq` does not.
//!
//! Run with `cargo run --example boosts`.

use ordinal::spacetime::{decompose, interval_pair, Boost, Event, ObserverChain};
use ordinal::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Rational::from_integer;
    let (e1, e2) = (Event::from_integers(0, 0), Event::from_integers(2, 1));
    let frames = [
        (r(1), r(1), r(5)),
        (Rational::new(3, 2), Rational::new(1, 6), r(10)),
        (r(2), Rational::new(1, 2), r(10)),
    ];

    let mut rest = None;
    println!(
        "{:<5} {:>5} {:>5} {:>6} {:>6} {:>4}",
        "k", "dp", "dq", "dt", "dx", "ds2"
    );
    for (k, tick, right) in frames {
        let p = ObserverChain::new("P", Event::new(r(0), r(0)), k, tick, 0..=400)?;
        let q = ObserverChain::new("Q", Event::new(r(0), right), k, tick, 0..=400)?;
        let ip = interval_pair(&e1, &e2, &p, &q)?;
        let (dt, dx) = decompose(&ip);
        println!(
            "{:<5} {:>5} {:>5} {:>6} {:>6} {:>4}",
            k.to_string(),
            ip.dp.to_string(),
            ip.dq.to_string(),
            dt.to_string(),
            dx.to_string(),
            ip.ds2().to_string()
        );

        // The measured pair is the rest pair under the boost with the same k.
        let rest = *rest.get_or_insert(ip);
        let boost = Boost::new(k)?;
        assert_eq!(boost.apply(&rest), ip);
        let (t0, x0) = decompose(&rest);
        assert_eq!(boost.lorentz(t0, x0), (dt, dx));
    }
    Ok(())
}
