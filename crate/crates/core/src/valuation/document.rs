//! Valuation files: `{"poset": "<path>", "values": {"a": 0.2}}`.
//!
//! `values` holds either one number per join-irreducible ([`ValuationMode::Atoms`],
//! the rest derived by summing) or one number per element
//! ([`ValuationMode::Total`]). In atoms mode a bare name `a` also resolves
//! to the element `{a}` so Boolean-lattice files can use plain atom names.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{derive_valuation_from_atoms, Valuation, ValuationError};
use crate::poset::{ElementId, Lattice, PosetError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValuationMode {
    #[default]
    Atoms,
    Total,
}

impl fmt::Display for ValuationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValuationMode::Atoms => "atoms",
            ValuationMode::Total => "total",
        })
    }
}

impl FromStr for ValuationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "atoms" => Ok(ValuationMode::Atoms),
            "total" => Ok(ValuationMode::Total),
            _ => Err(format!("unknown valuation mode `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationDocument {
    /// Path of the poset file, relative to the valuation file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<String>,
    pub values: BTreeMap<String, f64>,
}

impl ValuationDocument {
    pub fn build<'a>(
        &self,
        lattice: &'a Lattice,
        mode: ValuationMode,
    ) -> Result<Valuation<'a, f64>, ValuationError> {
        match mode {
            ValuationMode::Total => Valuation::new(
                lattice,
                self.values
                    .iter()
                    .map(|(k, &v)| (ElementId::from(k.as_str()), v)),
            ),
            ValuationMode::Atoms => {
                let mut atoms = BTreeMap::new();
                for (k, &v) in &self.values {
                    atoms.insert(resolve_atom(lattice, k)?, v);
                }
                derive_valuation_from_atoms(lattice, &atoms)
            }
        }
    }
}

fn resolve_atom(lattice: &Lattice, key: &str) -> Result<ElementId, PosetError> {
    let id = ElementId::from(key);
    if lattice.poset().contains(&id) {
        return Ok(id);
    }
    let braced = ElementId::new(format!("{{{key}}}"));
    if lattice.poset().contains(&braced) {
        return Ok(braced);
    }
    Err(PosetError::UnknownElement(id))
}
