//! A small causal order on integer events, and how two chains at rest turn
//! it into coordinates.
//!
//! Run with `cargo run --example causal_grid`.

use ordinal::poset::is_lattice;
use ordinal::spacetime::{causal_grid, causal_grid_poset, coordinatize, ObserverChain};
use ordinal::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 5;
    let poset = causal_grid_poset(n)?;
    let cert = is_lattice(&poset);
    println!(
        "{}x{} grid: {} events, {} covers, minimal {:?}",
        n,
        n,
        poset.len(),
        poset.covers().count(),
        poset
            .minimal_elements()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
    );
    if let (Some((a, b)), Some(kind)) = (cert.witness, cert.missing) {
        println!("not a lattice: {a} and {b} have no {kind}");
    }

    let r = Rational::from_integer;
    let chains = [
        ObserverChain::at_rest("left", r(-1), r(1), -20..=20)?,
        ObserverChain::at_rest("right", r(n as i128), r(1), -20..=20)?,
    ];
    println!("\n(t,x)   left  right");
    for e in causal_grid(n)?.iter().filter(|e| e.t == r(2)) {
        let c = coordinatize(e, &chains)?;
        println!("{:<7} {:>4}  {:>5}", e.to_string(), c[0], c[1]);
    }
    Ok(())
}
