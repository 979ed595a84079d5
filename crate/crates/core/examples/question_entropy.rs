//! Questions as partitions of the possible answers: entropy, joint
//! entropy through the common refinement, and mutual information.
//!
//! Run with `cargo run --example question_entropy`.

use ordinal::information::{
    common_refinement, entropy_valuation, mutual_information, AtomDistribution,
};
use ordinal::poset::{partition_lattice, Lattice, Partition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Who stole the tarts: the knave, the queen or the king?
    let d = AtomDistribution::new([("n", 0.5), ("q", 0.25), ("k", 0.25)])?;
    let l = Lattice::new(partition_lattice(&["k", "n", "q"])?)?;
    let h = entropy_valuation(&l, &d)?;
    for (question, bits) in h.iter() {
        println!("H({question:<6}) = {bits:.4} bits");
    }

    let royal: Partition = "n|kq".parse()?;
    let queen: Partition = "q|kn".parse()?;
    let joint = common_refinement(&royal, &queen)?;
    let r = mutual_information(&royal, &queen, &d)?;
    println!("\n{royal} and {queen} refine to {joint}");
    println!(
        "H_A = {:.4}  H_B = {:.4}  H_joint = {:.4}  I = {:.4}",
        r.h_a, r.h_b, r.h_joint, r.mutual_information
    );

    let bits = AtomDistribution::uniform(["00", "01", "10", "11"])?;
    let first: Partition = "[00,01]|[10,11]".parse()?;
    let second: Partition = "[00,10]|[01,11]".parse()?;
    println!(
        "two fair independent bits share {} bits",
        mutual_information(&first, &second, &bits)?.mutual_information
    );
    Ok(())
}
