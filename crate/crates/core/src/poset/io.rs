use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ElementId, Poset, PosetError};

/// JSON form of a poset: `{"elements": [...], "covers": [[lower, upper], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDocument {
    pub elements: Vec<ElementId>,
    #[serde(default)]
    pub covers: Vec<(ElementId, ElementId)>,
}

impl PosetDocument {
    pub fn build(self) -> Result<Poset, PosetError> {
        Poset::new(self.elements, self.covers)
    }
}

impl From<&Poset> for PosetDocument {
    fn from(p: &Poset) -> Self {
        Self {
            elements: p.elements().to_vec(),
            covers: p.covers().map(|(a, b)| (a.clone(), b.clone())).collect(),
        }
    }
}

/// Graphviz rendering of the Hasse diagram, edges pointing lower → upper.
pub fn to_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for id in p.elements() {
        let _ = writeln!(out, "  {0} [label={0}];", quote(id.as_str()));
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "  {} -> {};", quote(a.as_str()), quote(b.as_str()));
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{chain, partition_lattice};

    #[test]
    fn document_round_trip() {
        let p = partition_lattice(&["a", "b", "c"]).unwrap();
        let json = serde_json::to_string(&PosetDocument::from(&p)).unwrap();
        let back: PosetDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), p);
    }

    #[test]
    fn parses_documented_shape() {
        let doc: PosetDocument =
            serde_json::from_str(r#"{"elements": ["a","b","c"], "covers": [["a","b"],["b","c"]]}"#)
                .unwrap();
        assert_eq!(doc.build().unwrap(), chain_abc());
        assert!(serde_json::from_str::<PosetDocument>(r#"{"elements": [], "extra": 1}"#).is_err());
    }

    fn chain_abc() -> Poset {
        Poset::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap()
    }

    #[test]
    fn dot_has_one_edge_per_cover() {
        let dot = to_dot(&chain(3).unwrap());
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("\"0\" -> \"1\";"));
        assert!(dot.contains("\"2\" [label=\"2\"];"));
    }
}
