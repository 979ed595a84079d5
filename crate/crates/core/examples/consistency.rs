//! Order and algebra agree: `x <= y` exactly when `x v y = y` and
//! `x ^ y = x`, checked for divisibility, inclusion and a total order.
//!
//! Run with `cargo run --example consistency`.

use std::collections::BTreeSet;

use ordinal::poset::{
    boolean_atom_id, boolean_lattice, chain, divisor_lattice, ElementId, Lattice,
};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn number(id: &ElementId) -> u64 {
    id.as_str().parse().expect("numeric id")
}

fn members(id: &ElementId) -> BTreeSet<&str> {
    id.as_str()
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|s| !s.is_empty())
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let divisors = Lattice::new(divisor_lattice(60)?)?;
    let report = divisors.verify_algebra(
        |x, y| {
            let (a, b) = (number(x), number(y));
            ElementId::new((a / gcd(a, b) * b).to_string())
        },
        |x, y| ElementId::new(gcd(number(x), number(y)).to_string()),
    )?;
    println!(
        "divisors of 60 with lcm/gcd: {} pairs, {} violations, {} mismatches",
        report.checked,
        report.violations.len(),
        report.operation_mismatches.len()
    );

    let atoms = ["a", "b", "c", "d"];
    let subsets = Lattice::new(boolean_lattice(&atoms)?)?;
    let named = |s: BTreeSet<&str>| {
        let ordered: Vec<&str> = atoms.iter().copied().filter(|a| s.contains(a)).collect();
        boolean_atom_id(&ordered)
    };
    let report = subsets.verify_algebra(
        |x, y| named(&members(x) | &members(y)),
        |x, y| named(&members(x) & &members(y)),
    )?;
    println!(
        "subsets of {{a,b,c,d}} with union/intersection: {} pairs, {} violations",
        report.checked,
        report.violations.len()
    );

    let ten = Lattice::new(chain(10)?)?;
    let report = ten.verify_algebra(
        |x, y| ElementId::new(number(x).max(number(y)).to_string()),
        |x, y| ElementId::new(number(x).min(number(y)).to_string()),
    )?;
    println!(
        "0..10 with max/min: {} pairs, {} violations",
        report.checked,
        report.violations.len()
    );

    // Swapping the operations breaks every strict comparison.
    let report = ten.verify_algebra(
        |x, y| ElementId::new(number(x).min(number(y)).to_string()),
        |x, y| ElementId::new(number(x).max(number(y)).to_string()),
    )?;
    println!(
        "0..10 with min/max swapped: {} violations",
        report.violations.len()
    );
    Ok(())
}
