//! JSON scenes: named events plus named observer chains.
//!
//! ```json
//! {"events": [{"id": "e1", "t": "0", "x": "0"}],
//!  "chains": [{"id": "P", "k": "1", "tick": "1",
//!              "origin": {"t": "0", "x": "0"}, "range": [0, 100]}]}
//! ```
//!
//! Rationals are strings, `"num/den"` or plain integers.

use serde::{Deserialize, Serialize};

use super::{Event, ObserverChain, SpacetimeError};
use crate::Rational;

pub fn parse_rational(s: &str) -> Result<Rational, SpacetimeError> {
    let bad = || SpacetimeError::InvalidRational(s.to_owned());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => s
            .parse::<i128>()
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

fn format_rational(r: &Rational) -> String {
    r.to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDocument {
    pub t: String,
    pub x: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventDocument {
    pub id: String,
    pub t: String,
    pub x: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDocument {
    pub id: String,
    pub k: String,
    pub tick: String,
    pub origin: PointDocument,
    pub range: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneDocument {
    #[serde(default)]
    pub events: Vec<EventDocument>,
    #[serde(default)]
    pub chains: Vec<ChainDocument>,
}

/// Validated scene. Events and chains keep file order.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    events: Vec<(String, Event)>,
    chains: Vec<ObserverChain>,
}

/// A synchronized chain pair used as a frame of reference.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame<'a> {
    pub name: String,
    pub p: &'a ObserverChain,
    pub q: &'a ObserverChain,
}

impl Scene {
    pub fn new(
        events: Vec<(String, Event)>,
        chains: Vec<ObserverChain>,
    ) -> Result<Self, SpacetimeError> {
        let mut ids: Vec<&str> = events.iter().map(|(id, _)| id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpacetimeError::InvalidScene(format!(
                "duplicate event `{}`",
                w[0]
            )));
        }
        let mut ids: Vec<&str> = chains.iter().map(ObserverChain::id).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpacetimeError::InvalidScene(format!(
                "duplicate chain `{}`",
                w[0]
            )));
        }
        Ok(Self { events, chains })
    }

    pub fn from_json(json: &str) -> Result<Self, SpacetimeError> {
        let doc: SceneDocument =
            serde_json::from_str(json).map_err(|e| SpacetimeError::InvalidScene(e.to_string()))?;
        doc.build()
    }

    pub fn events(&self) -> &[(String, Event)] {
        &self.events
    }

    pub fn chains(&self) -> &[ObserverChain] {
        &self.chains
    }

    pub fn event(&self, id: &str) -> Result<&Event, SpacetimeError> {
        self.events
            .iter()
            .find(|(e, _)| e == id)
            .map(|(_, e)| e)
            .ok_or_else(|| SpacetimeError::UnknownEvent(id.to_owned()))
    }

    pub fn chain(&self, id: &str) -> Result<&ObserverChain, SpacetimeError> {
        self.chains
            .iter()
            .find(|c| c.id() == id)
            .ok_or_else(|| SpacetimeError::UnknownChain(id.to_owned()))
    }

    /// Resolves a frame name: `rest` (same as `k=1`), `k=<rational>` for
    /// the two chains with that boost factor in file order, or `P:Q` for
    /// an explicit pair of chain ids.
    pub fn frame(&self, name: &str) -> Result<Frame<'_>, SpacetimeError> {
        if let Some((p, q)) = name.split_once(':') {
            return Ok(Frame {
                name: name.to_owned(),
                p: self.chain(p)?,
                q: self.chain(q)?,
            });
        }
        let k = match name {
            "rest" => Rational::from_integer(1),
            _ => {
                let raw = name.strip_prefix("k=").ok_or_else(|| {
                    SpacetimeError::InvalidScene(format!("unknown frame `{name}`"))
                })?;
                parse_rational(raw)?
            }
        };
        let matching: Vec<&ObserverChain> = self.chains.iter().filter(|c| c.k() == k).collect();
        match matching.as_slice() {
            [p, q] => Ok(Frame {
                name: name.to_owned(),
                p,
                q,
            }),
            other => Err(SpacetimeError::InvalidScene(format!(
                "frame `{name}` needs exactly two chains with k={k}, found {}",
                other.len()
            ))),
        }
    }

    pub fn to_document(&self) -> SceneDocument {
        SceneDocument {
            events: self
                .events
                .iter()
                .map(|(id, e)| EventDocument {
                    id: id.clone(),
                    t: format_rational(&e.t),
                    x: format_rational(&e.x),
                })
                .collect(),
            chains: self
                .chains
                .iter()
                .map(|c| ChainDocument {
                    id: c.id().to_owned(),
                    k: format_rational(&c.k()),
                    tick: format_rational(&c.tick()),
                    origin: PointDocument {
                        t: format_rational(&c.origin().t),
                        x: format_rational(&c.origin().x),
                    },
                    range: [*c.range().start(), *c.range().end()],
                })
                .collect(),
        }
    }
}

impl SceneDocument {
    pub fn build(&self) -> Result<Scene, SpacetimeError> {
        let events = self
            .events
            .iter()
            .map(|e| {
                Ok((
                    e.id.clone(),
                    Event::new(parse_rational(&e.t)?, parse_rational(&e.x)?),
                ))
            })
            .collect::<Result<Vec<_>, SpacetimeError>>()?;
        let chains = self
            .chains
            .iter()
            .map(|c| {
                let origin = Event::new(parse_rational(&c.origin.t)?, parse_rational(&c.origin.x)?);
                ObserverChain::new(
                    c.id.clone(),
                    origin,
                    parse_rational(&c.k)?,
                    parse_rational(&c.tick)?,
                    c.range[0]..=c.range[1],
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        Scene::new(events, chains)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = r#"{
        "events": [{"id": "e1", "t": "0", "x": "0"}, {"id": "e2", "t": "2", "x": "1"}],
        "chains": [
            {"id": "P", "k": "1", "tick": "1", "origin": {"t": "0", "x": "0"}, "range": [0, 100]},
            {"id": "Q", "k": "1", "tick": "1", "origin": {"t": "0", "x": "5"}, "range": [0, 100]},
            {"id": "P2", "k": "2", "tick": "1/2", "origin": {"t": "0", "x": "0"}, "range": [0, 100]}
        ]
    }"#;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational("-4").unwrap(), Rational::from_integer(-4));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), Rational::new(3, 2));
        for bad in ["1/0", "x", "1.5", ""] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn load_and_resolve() {
        let scene = Scene::from_json(DEMO).unwrap();
        assert_eq!(scene.event("e2").unwrap(), &Event::from_integers(2, 1));
        let rest = scene.frame("rest").unwrap();
        assert_eq!((rest.p.id(), rest.q.id()), ("P", "Q"));
        assert_eq!(scene.frame("P2:Q").unwrap().p.id(), "P2");
        assert!(scene.frame("k=2").is_err());
        assert!(scene.frame("sideways").is_err());
        assert_eq!(
            scene.event("e9").unwrap_err(),
            SpacetimeError::UnknownEvent("e9".into())
        );
    }

    #[test]
    fn document_round_trip() {
        let scene = Scene::from_json(DEMO).unwrap();
        let json = serde_json::to_string(&scene.to_document()).unwrap();
        assert_eq!(Scene::from_json(&json).unwrap(), scene);
    }

    #[test]
    fn rejects_bad_scenes() {
        assert!(Scene::from_json(
            r#"{"events": [{"id": "a", "t": "0", "x": "0"}, {"id": "a", "t": "1", "x": "0"}]}"#
        )
        .is_err());
        assert!(Scene::from_json(r#"{"events": [{"id": "a", "t": "0"}]}"#).is_err());
        assert!(Scene::from_json(r#"{"chains": [{"id": "P", "k": "-1", "tick": "1", "origin": {"t": "0", "x": "0"}, "range": [0, 1]}]}"#).is_err());
    }
}
