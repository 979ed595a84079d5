//! The lattice of partitions of a small set, ordered by refinement.
//!
//! Run with `cargo run --example partitions`.

use ordinal::poset::{partition_lattice, to_dot, ElementId, Lattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = Lattice::new(partition_lattice(&["a", "b", "c"])?)?;
    println!("{} partitions of {{a, b, c}}", l.len());
    println!("finest {}  coarsest {}", l.bottom(), l.top());

    let (x, y) = (ElementId::from("a|bc"), ElementId::from("b|ac"));
    println!("{x} v {y} = {}", l.join(&x, &y)?);
    println!("{x} ^ {y} = {}", l.meet(&x, &y)?);

    let irreducible: Vec<String> = l
        .join_irreducibles()
        .iter()
        .map(ToString::to_string)
        .collect();
    println!("join-irreducible: {}", irreducible.join(", "));

    let atoms = ["a", "b", "c", "d", "e", "f", "g"];
    let sizes: Vec<usize> = (1..=atoms.len())
        .map(|n| partition_lattice(&atoms[..n]).map(|p| p.len()))
        .collect::<Result<_, _>>()?;
    println!("sizes for 1..=7 atoms: {sizes:?}");

    println!("\n{}", to_dot(l.poset()));
    Ok(())
}
