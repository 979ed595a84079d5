use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::PosetError;

/// A partition of a finite set of atom tokens into disjoint non-empty blocks.
///
/// Stored canonically: atoms sorted inside each block, blocks sorted by size
/// and then lexicographically. The canonical text form joins blocks with `|`
/// and writes a block as its concatenated atoms when every atom is a single
/// character, otherwise as `[atom,atom,...]`. So the partitions of `{a,b,c}`
/// print as `a|b|c`, `a|bc`, `b|ac`, `c|ab` and `abc`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    blocks: Vec<Vec<String>>,
}

impl Partition {
    pub fn new<B, A>(blocks: impl IntoIterator<Item = B>) -> Result<Self, PosetError>
    where
        B: IntoIterator<Item = A>,
        A: Into<String>,
    {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for block in blocks {
            let mut atoms: Vec<String> = block.into_iter().map(Into::into).collect();
            if atoms.is_empty() {
                return Err(PosetError::InvalidPartition("empty block".into()));
            }
            for a in &atoms {
                if a.is_empty() {
                    return Err(PosetError::InvalidPartition("empty atom".into()));
                }
                if !seen.insert(a.clone()) {
                    return Err(PosetError::DuplicateAtom(a.clone()));
                }
            }
            atoms.sort();
            out.push(atoms);
        }
        if out.is_empty() {
            return Err(PosetError::InvalidPartition("no blocks".into()));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(Self { blocks: out })
    }

    /// All atoms in a single block.
    pub fn coarsest<A: Into<String>>(
        atoms: impl IntoIterator<Item = A>,
    ) -> Result<Self, PosetError> {
        Self::new([atoms.into_iter().map(Into::into).collect::<Vec<String>>()])
    }

    /// Every atom in its own block.
    pub fn finest<A: Into<String>>(atoms: impl IntoIterator<Item = A>) -> Result<Self, PosetError> {
        Self::new(atoms.into_iter().map(|a| vec![a.into()]))
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn ground_set(&self) -> BTreeSet<&str> {
        self.blocks.iter().flatten().map(String::as_str).collect()
    }

    pub fn same_ground_set(&self, other: &Self) -> bool {
        self.ground_set() == other.ground_set()
    }

    /// `self <= other`: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        let owner = other.block_of();
        self.same_ground_set(other)
            && self.blocks.iter().all(|block| {
                let first = owner[block[0].as_str()];
                block.iter().all(|a| owner[a.as_str()] == first)
            })
    }

    fn block_of(&self) -> BTreeMap<&str, usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(k, b)| b.iter().map(move |a| (a.as_str(), k)))
            .collect()
    }

    /// Non-empty pairwise intersections of blocks. Callers must check the
    /// ground sets agree.
    pub(crate) fn intersect(&self, other: &Self) -> Self {
        let owner = other.block_of();
        let mut cells: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
        for (k, block) in self.blocks.iter().enumerate() {
            for a in block {
                cells
                    .entry((k, owner[a.as_str()]))
                    .or_default()
                    .push(a.clone());
            }
        }
        Self::new(cells.into_values()).expect("intersection of partitions is a partition")
    }

    /// Finest common coarsening: merge blocks that share an atom, transitively.
    pub(crate) fn coarsen_with(&self, other: &Self) -> Self {
        let atoms: Vec<&str> = self.ground_set().into_iter().collect();
        let pos: BTreeMap<&str, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut parent: Vec<usize> = (0..atoms.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for block in self.blocks.iter().chain(&other.blocks) {
            let root = find(&mut parent, pos[block[0].as_str()]);
            for a in &block[1..] {
                let r = find(&mut parent, pos[a.as_str()]);
                parent[r] = root;
            }
        }
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (i, a) in atoms.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push((*a).to_owned());
        }
        Self::new(groups.into_values()).expect("union of partitions is a partition")
    }
}

fn is_plain_atom(a: &str) -> bool {
    let mut chars = a.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if !"|[],".contains(c) && !c.is_whitespace())
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, block) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            if block.iter().all(|a| is_plain_atom(a)) {
                for a in block {
                    f.write_str(a)?;
                }
            } else {
                write!(f, "[{}]", block.join(","))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut blocks = Vec::new();
        for raw in s.split('|') {
            let raw = raw.trim();
            let atoms: Vec<String> =
                if let Some(inner) = raw.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    inner.split(',').map(|a| a.trim().to_owned()).collect()
                } else {
                    if raw.contains(['[', ']', ',']) {
                        return Err(PosetError::InvalidPartition(format!(
                            "malformed block `{raw}`"
                        )));
                    }
                    raw.chars()
                        .filter(|c| !c.is_whitespace())
                        .map(String::from)
                        .collect()
                };
            blocks.push(atoms);
        }
        Self::new(blocks).map_err(|e| match e {
            PosetError::InvalidPartition(msg) => {
                PosetError::InvalidPartition(format!("{msg} in `{s}`"))
            }
            other => other,
        })
    }
}
