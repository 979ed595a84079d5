//! Independent questions combine as a lattice product, and measures of
//! rectangles multiply.
//!
//! Run with `cargo run --example lattice_product`.

use std::collections::{BTreeMap, BTreeSet};

use ordinal::poset::{
    boolean_atom_id, boolean_lattice, lattice_product, product_id, ElementId, Lattice,
};
use ordinal::valuation::{
    check_product_rule_for_lattice_product, derive_valuation_from_atoms, Valuation,
};

fn members(id: &ElementId) -> BTreeSet<String> {
    id.as_str()
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let coin = Lattice::new(boolean_lattice(&["H", "T"])?)?;
    let die = Lattice::new(boolean_lattice(&["even", "odd"])?)?;
    let p: BTreeMap<String, f64> = [("H".into(), 0.6), ("T".into(), 0.4)].into();
    let q: BTreeMap<String, f64> = [("even".into(), 0.5), ("odd".into(), 0.5)].into();

    let weights = |w: &BTreeMap<String, f64>| -> BTreeMap<ElementId, f64> {
        w.iter().map(|(a, &x)| (boolean_atom_id(&[a]), x)).collect()
    };
    let vp = derive_valuation_from_atoms(&coin, &weights(&p))?;
    let vq = derive_valuation_from_atoms(&die, &weights(&q))?;

    let both = Lattice::new(lattice_product(coin.poset(), die.poset())?)?;
    let mut joint = Vec::new();
    for x in coin.elements() {
        for y in die.elements() {
            let mass = members(x)
                .iter()
                .flat_map(|i| members(y).into_iter().map(move |j| (i.clone(), j)))
                .fold(0.0, |acc, (i, j)| acc + p[&i] * q[&j]);
            joint.push((product_id(x, y), mass));
        }
    }
    let vpq = Valuation::new(&both, joint)?;
    for (id, v) in vpq.iter() {
        println!("{id:<18} {v:.3}");
    }
    let report = check_product_rule_for_lattice_product(&vp, &vq, &vpq, 1e-12)?;
    println!(
        "product rule: {} pairs, {} violations, max residual {:e}",
        report.checked,
        report.violations.len(),
        report.max_residual
    );
    Ok(())
}
