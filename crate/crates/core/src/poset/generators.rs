//! Generators for the standard example posets.

use std::collections::{BTreeSet, HashMap};

use super::{ElementId, Partition, Poset, PosetError, MAX_ELEMENTS};

/// 2^13 = 8192 subsets fills the element cap.
pub const MAX_BOOLEAN_ATOMS: usize = 13;
/// Bell(8) = 4140 partitions.
pub const MAX_PARTITION_ATOMS: usize = 8;

fn check_atoms(atoms: &[&str], max: usize) -> Result<(), PosetError> {
    if atoms.is_empty() || atoms.len() > max {
        return Err(PosetError::TooManyAtoms {
            count: atoms.len(),
            max,
        });
    }
    let mut seen = BTreeSet::new();
    for &a in atoms {
        if a.is_empty() {
            return Err(PosetError::EmptyId);
        }
        if !seen.insert(a) {
            return Err(PosetError::DuplicateAtom(a.to_owned()));
        }
    }
    Ok(())
}

/// Chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Result<Poset, PosetError> {
    let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<_> = ids
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    Poset::new(ids, covers)
}

/// Pairwise incomparable elements.
pub fn antichain<E: Into<ElementId>>(
    ids: impl IntoIterator<Item = E>,
) -> Result<Poset, PosetError> {
    Poset::new(ids, Vec::<(ElementId, ElementId)>::new())
}

/// Four-element lattice `bottom < x, y < top`.
pub fn diamond() -> Poset {
    Poset::new(
        ["bottom", "x", "y", "top"],
        [("bottom", "x"), ("bottom", "y"), ("x", "top"), ("y", "top")],
    )
    .expect("diamond is a valid poset")
}

/// Two minimal elements `a, b` each below both maximal elements `c, d`.
/// Neither `{a, b}` has a least upper bound nor `{c, d}` a greatest lower
/// bound, so this is the smallest poset that is not a lattice for that
/// reason.
pub fn bowtie() -> Poset {
    Poset::new(
        ["a", "b", "c", "d"],
        [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
    )
    .expect("bowtie is a valid poset")
}

/// Id of the subset element in a [`boolean_lattice`], e.g. `{a,c}`.
pub fn boolean_atom_id<S: AsRef<str>>(atoms: &[S]) -> ElementId {
    let inner: Vec<&str> = atoms.iter().map(AsRef::as_ref).collect();
    ElementId::new(format!("{{{}}}", inner.join(",")))
}

/// Powerset of `atoms` ordered by inclusion. Subset ids list atoms in the
/// order given, so `["a", "b"]` yields `{}`, `{a}`, `{b}`, `{a,b}`.
pub fn boolean_lattice(atoms: &[&str]) -> Result<Poset, PosetError> {
    check_atoms(atoms, MAX_BOOLEAN_ATOMS)?;
    let n = atoms.len();
    let name = |mask: usize| {
        let members: Vec<&str> = (0..n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| atoms[b])
            .collect();
        boolean_atom_id(&members)
    };
    let names: Vec<ElementId> = (0..1usize << n).map(name).collect();
    let mut covers = Vec::new();
    for mask in 0..1usize << n {
        for b in 0..n {
            if mask >> b & 1 == 0 {
                covers.push((names[mask].clone(), names[mask | 1 << b].clone()));
            }
        }
    }
    Poset::new(names, covers)
}

/// Set partitions of `atoms` under refinement, finest at the bottom. Ids
/// are the canonical text forms of [`Partition`].
pub fn partition_lattice(atoms: &[&str]) -> Result<Poset, PosetError> {
    check_atoms(atoms, MAX_PARTITION_ATOMS)?;
    let n = atoms.len();
    let mut parts = Vec::new();
    // Restricted growth strings: label[i] <= 1 + max(label[..i]).
    let mut label = vec![0usize; n];
    loop {
        let blocks = label.iter().max().unwrap() + 1;
        let mut groups = vec![Vec::new(); blocks];
        for (i, &l) in label.iter().enumerate() {
            groups[l].push(atoms[i]);
        }
        parts.push(Partition::new(groups)?);

        let mut i = n;
        loop {
            if i == 1 {
                return finish_partitions(parts);
            }
            i -= 1;
            let ceiling = label[..i].iter().max().unwrap() + 1;
            if label[i] < ceiling {
                label[i] += 1;
                label[i + 1..].iter_mut().for_each(|l| *l = 0);
                break;
            }
        }
    }
}

fn finish_partitions(parts: Vec<Partition>) -> Result<Poset, PosetError> {
    let names: HashMap<&Partition, ElementId> = parts
        .iter()
        .map(|p| (p, ElementId::new(p.to_string())))
        .collect();
    let mut covers = Vec::new();
    for p in &parts {
        let blocks = p.blocks();
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let merged = blocks
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i && k != j)
                    .map(|(_, b)| b.clone());
                let joined: Vec<String> = blocks[i].iter().chain(&blocks[j]).cloned().collect();
                let upper = Partition::new(merged.chain(std::iter::once(joined)))?;
                covers.push((names[p].clone(), names[&upper].clone()));
            }
        }
    }
    Poset::new(names.values().cloned(), covers)
}

/// Divisors of `n` ordered by divisibility.
pub fn divisor_lattice(n: u64) -> Result<Poset, PosetError> {
    if n == 0 {
        return Err(PosetError::InvalidArgument(
            "divisor lattice needs n >= 1".into(),
        ));
    }
    let divisors: Vec<u64> = (1..=n)
        .take_while(|d| d * d <= n)
        .filter(|&d| n.is_multiple_of(d))
        .flat_map(|d| [d, n / d])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if divisors.len() > MAX_ELEMENTS {
        return Err(PosetError::TooLarge(divisors.len()));
    }
    let primes: Vec<u64> = divisors
        .iter()
        .copied()
        .filter(|&d| d > 1 && (2..d).take_while(|k| k * k <= d).all(|k| d % k != 0))
        .collect();
    let mut covers = Vec::new();
    for &d in &divisors {
        for &p in &primes {
            if n.is_multiple_of(d * p) {
                covers.push((d.to_string(), (d * p).to_string()));
            }
        }
    }
    Poset::new(divisors.iter().map(u64::to_string), covers)
}
