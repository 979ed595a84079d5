//! Rule audits over valuations and bi-valuations.
//!
//! Each audit walks every instance of its identity, compares the two sides,
//! and records an instance as a violation when `|lhs - rhs|` exceeds the
//! tolerance. Instances touching an undefined bi-valuation entry are
//! skipped and counted. Violations are sorted by instance tuple.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{BiValuation, Scalar, Valuation, ValuationError};
use crate::poset::{product_id, ElementId};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `v(x ∨ y) + v(x ∧ y) = v(x) + v(y)`, instance `(x, y)`.
    Sum,
    /// `v((x, y)) = v(x) v(y)` on a lattice product, instance `(x, y)`.
    Product,
    /// `w(x | z) = w(x | y) w(y | z)` for `x <= y <= z`, instance `(x, y, z)`.
    Chain,
    /// `w(y | x) = w(x ∧ y | x)`, instance `(x, y)`.
    Diamond,
    /// `w(y ∧ z | x) = w(z | x ∧ y) w(y | x)`, instance `(x, y, z)`.
    Context,
    /// `w(x ∨ y | t) + w(x ∧ y | t) = w(x | t) + w(y | t)`, instance `(x, y, t)`.
    Bisum,
    /// `w(x | x) = 1` (instance `(x, x)`) and `w(⊥ | t) = 0` (instance `(⊥, t)`).
    Normalization,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::Sum,
        Rule::Product,
        Rule::Chain,
        Rule::Diamond,
        Rule::Context,
        Rule::Bisum,
        Rule::Normalization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Sum => "sum",
            Rule::Product => "product",
            Rule::Chain => "chain",
            Rule::Diamond => "diamond",
            Rule::Context => "context",
            Rule::Bisum => "bisum",
            Rule::Normalization => "normalization",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub instance: Vec<ElementId>,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl Violation {
    /// One tab-separated line: `violation <rule> <instance-json> lhs=.. rhs=.. residual=..`.
    pub fn to_text_line(&self, rule: Rule) -> String {
        format!(
            "violation\t{rule}\t{}\tlhs={}\trhs={}\tresidual={}",
            serde_json::to_string(&self.instance).expect("ids serialize"),
            self.lhs,
            self.rhs,
            self.residual
        )
    }

    /// Inverse of [`Violation::to_text_line`].
    pub fn from_text_line(line: &str) -> Option<(Rule, Self)> {
        let mut fields = line.split('\t');
        if fields.next()? != "violation" {
            return None;
        }
        let rule = fields.next()?.parse().ok()?;
        let instance = serde_json::from_str(fields.next()?).ok()?;
        let mut num = |key: &str| -> Option<f64> { fields.next()?.strip_prefix(key)?.parse().ok() };
        let lhs = num("lhs=")?;
        let rhs = num("rhs=")?;
        let residual = num("residual=")?;
        Some((
            rule,
            Self {
                instance,
                lhs,
                rhs,
                residual,
            },
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleReport {
    pub rule: Rule,
    pub checked: usize,
    pub skipped: usize,
    pub violations: Vec<Violation>,
    pub tolerance: f64,
    /// Largest residual over all checked instances, violating or not.
    pub max_residual: f64,
}

impl RuleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Auditor {
    report: RuleReport,
}

impl Auditor {
    fn new(rule: Rule, tolerance: f64) -> Self {
        Self {
            report: RuleReport {
                rule,
                checked: 0,
                skipped: 0,
                violations: Vec::new(),
                tolerance,
                max_residual: 0.0,
            },
        }
    }

    fn compare<S: Scalar>(&mut self, instance: impl FnOnce() -> Vec<ElementId>, lhs: S, rhs: S) {
        self.report.checked += 1;
        let residual = lhs.abs_diff(&rhs).to_f64();
        if residual > self.report.max_residual {
            self.report.max_residual = residual;
        }
        if residual.is_nan() || residual > self.report.tolerance {
            self.report.violations.push(Violation {
                instance: instance(),
                lhs: lhs.to_f64(),
                rhs: rhs.to_f64(),
                residual,
            });
        }
    }

    fn skip(&mut self) {
        self.report.skipped += 1;
    }

    fn finish(mut self) -> RuleReport {
        self.report
            .violations
            .sort_by(|a, b| a.instance.cmp(&b.instance));
        self.report
    }
}

/// Audits `v(x ∨ y) + v(x ∧ y) = v(x) + v(y)` over all unordered pairs of
/// distinct elements.
pub fn check_sum_rule<S: Scalar>(v: &Valuation<'_, S>, tol: f64) -> RuleReport {
    let l = v.lattice();
    let n = l.len();
    let mut audit = Auditor::new(Rule::Sum, tol);
    for x in 0..n {
        for y in x + 1..n {
            let lhs = v.at(l.join_idx(x, y)).clone() + v.at(l.meet_idx(x, y)).clone();
            let rhs = v.at(x).clone() + v.at(y).clone();
            audit.compare(|| ids(l, &[x, y]), lhs, rhs);
        }
    }
    audit.finish()
}

/// Audits `v_pq((x, y)) = v_p(x) v_q(y)` where `v_pq` lives on the lattice
/// product of the lattices of `v_p` and `v_q` (ids from [`product_id`]).
pub fn check_product_rule_for_lattice_product<S: Scalar>(
    vp: &Valuation<'_, S>,
    vq: &Valuation<'_, S>,
    vpq: &Valuation<'_, S>,
    tol: f64,
) -> Result<RuleReport, ValuationError> {
    let (lp, lq, lpq) = (vp.lattice(), vq.lattice(), vpq.lattice());
    if lpq.len() != lp.len() * lq.len() {
        return Err(ValuationError::LatticeMismatch(format!(
            "product valuation has {} elements, expected {} x {}",
            lpq.len(),
            lp.len(),
            lq.len()
        )));
    }
    let mut audit = Auditor::new(Rule::Product, tol);
    for (i, x) in lp.elements().iter().enumerate() {
        for (j, y) in lq.elements().iter().enumerate() {
            let pair = product_id(x, y);
            let k = lpq.index_of(&pair).map_err(|_| {
                ValuationError::LatticeMismatch(format!("product lattice lacks `{pair}`"))
            })?;
            let lhs = vpq.at(k).clone();
            let rhs = vp.at(i).clone() * vq.at(j).clone();
            audit.compare(|| vec![x.clone(), y.clone()], lhs, rhs);
        }
    }
    Ok(audit.finish())
}

/// Audits `w(x | z) = w(x | y) w(y | z)` over every chain `x <= y <= z`.
pub fn check_chain_rule<S: Scalar>(w: &BiValuation<'_, S>, tol: f64) -> RuleReport {
    let l = w.lattice();
    let n = l.len();
    let mut audit = Auditor::new(Rule::Chain, tol);
    for y in 0..n {
        for x in (0..n).filter(|&x| l.leq_idx(x, y)) {
            for z in (0..n).filter(|&z| l.leq_idx(y, z)) {
                match (w.at(x, z), w.at(x, y), w.at(y, z)) {
                    (Some(xz), Some(xy), Some(yz)) => {
                        audit.compare(|| ids(l, &[x, y, z]), xz.clone(), xy.clone() * yz.clone())
                    }
                    _ => audit.skip(),
                }
            }
        }
    }
    audit.finish()
}

/// Audits `w(y | x) = w(x ∧ y | x)` over all ordered pairs.
pub fn check_diamond_lemma<S: Scalar>(w: &BiValuation<'_, S>, tol: f64) -> RuleReport {
    let l = w.lattice();
    let n = l.len();
    let mut audit = Auditor::new(Rule::Diamond, tol);
    for x in 0..n {
        for y in 0..n {
            match (w.at(y, x), w.at(l.meet_idx(x, y), x)) {
                (Some(lhs), Some(rhs)) => {
                    audit.compare(|| ids(l, &[x, y]), lhs.clone(), rhs.clone())
                }
                _ => audit.skip(),
            }
        }
    }
    audit.finish()
}

/// Audits `w(y ∧ z | x) = w(z | x ∧ y) w(y | x)` over all ordered triples.
pub fn check_context_product_rule<S: Scalar>(w: &BiValuation<'_, S>, tol: f64) -> RuleReport {
    let l = w.lattice();
    let n = l.len();
    let mut audit = Auditor::new(Rule::Context, tol);
    for x in 0..n {
        for y in 0..n {
            let xy = l.meet_idx(x, y);
            for z in 0..n {
                let yz = l.meet_idx(y, z);
                match (w.at(yz, x), w.at(z, xy), w.at(y, x)) {
                    (Some(lhs), Some(a), Some(b)) => {
                        audit.compare(|| ids(l, &[x, y, z]), lhs.clone(), a.clone() * b.clone())
                    }
                    _ => audit.skip(),
                }
            }
        }
    }
    audit.finish()
}

/// Audits the sum rule within every context `t`:
/// `w(x ∨ y | t) + w(x ∧ y | t) = w(x | t) + w(y | t)`.
pub fn check_bivaluation_sum_rule<S: Scalar>(w: &BiValuation<'_, S>, tol: f64) -> RuleReport {
    let l = w.lattice();
    let n = l.len();
    let mut audit = Auditor::new(Rule::Bisum, tol);
    for t in 0..n {
        for x in 0..n {
            for y in x + 1..n {
                let entries = (
                    w.at(l.join_idx(x, y), t),
                    w.at(l.meet_idx(x, y), t),
                    w.at(x, t),
                    w.at(y, t),
                );
                match entries {
                    (Some(j), Some(m), Some(a), Some(b)) => audit.compare(
                        || ids(l, &[x, y, t]),
                        j.clone() + m.clone(),
                        a.clone() + b.clone(),
                    ),
                    _ => audit.skip(),
                }
            }
        }
    }
    audit.finish()
}

/// Audits `w(x | x) = 1` and `w(⊥ | t) = 0` wherever defined.
pub fn check_normalization<S: Scalar>(w: &BiValuation<'_, S>, tol: f64) -> RuleReport {
    let l = w.lattice();
    let bottom = l.bottom_idx();
    let mut audit = Auditor::new(Rule::Normalization, tol);
    for t in 0..l.len() {
        match w.at(t, t) {
            Some(v) => audit.compare(|| ids(l, &[t, t]), v.clone(), S::one()),
            None => audit.skip(),
        }
        if t != bottom {
            match w.at(bottom, t) {
                Some(v) => audit.compare(|| ids(l, &[bottom, t]), v.clone(), S::zero()),
                None => audit.skip(),
            }
        }
    }
    audit.finish()
}

fn ids(l: &crate::poset::Lattice, idx: &[usize]) -> Vec<ElementId> {
    idx.iter().map(|&i| l.id(i).clone()).collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::poset::{boolean_atom_id, boolean_lattice, chain, lattice_product, Lattice};
    use crate::valuation::derive_valuation_from_atoms;
    use crate::Rational;

    fn s(members: &[&str]) -> ElementId {
        boolean_atom_id(members)
    }

    fn b(atoms: &[&str]) -> Lattice {
        Lattice::new(boolean_lattice(atoms).unwrap()).unwrap()
    }

    fn probability<'a>(l: &'a Lattice, weights: &[(&str, f64)]) -> Valuation<'a, f64> {
        let atoms: BTreeMap<_, _> = weights.iter().map(|&(a, w)| (s(&[a]), w)).collect();
        derive_valuation_from_atoms(l, &atoms).unwrap()
    }

    #[test]
    fn counting_valuation_passes_exactly() {
        let l = b(&["a", "b", "c"]);
        let v = Valuation::from_fn(&l, |id| {
            let inner = id.as_str().trim_matches(|c| c == '{' || c == '}');
            Rational::from_integer(inner.split(',').filter(|s| !s.is_empty()).count() as i128)
        });
        let report = check_sum_rule(&v, 0.0);
        assert!(report.passed());
        assert_eq!(report.checked, 28);
        assert_eq!(report.max_residual, 0.0);
    }

    #[test]
    fn constructed_sum_rule_counterexample() {
        let l = b(&["a", "b"]);
        let v = Valuation::new(
            &l,
            [
                (s(&[]), 0.0),
                (s(&["a"]), 1.0),
                (s(&["b"]), 1.0),
                (s(&["a", "b"]), 3.0),
            ],
        )
        .unwrap();
        let report = check_sum_rule(&v, 1e-9);
        assert_eq!(report.violations.len(), 1);
        let bad = &report.violations[0];
        assert_eq!(bad.instance, vec![s(&["a"]), s(&["b"])]);
        assert_eq!((bad.lhs, bad.rhs, bad.residual), (3.0, 2.0, 1.0));
    }

    #[test]
    fn probability_valuation_passes_sum_rule() {
        let l = b(&["a", "b", "c"]);
        let v = probability(&l, &[("a", 0.2), ("b", 0.3), ("c", 0.5)]);
        assert!(check_sum_rule(&v, 1e-9).passed());
    }

    #[test]
    fn product_rule_on_chains() {
        let (c2, c3) = (chain(2).unwrap(), chain(3).unwrap());
        let prod = lattice_product(&c2, &c3).unwrap();
        let (lp, lq, lpq) = (
            Lattice::new(c2).unwrap(),
            Lattice::new(c3).unwrap(),
            Lattice::new(prod).unwrap(),
        );
        let count = |id: &ElementId| id.as_str().parse::<f64>().unwrap();
        let vp = Valuation::from_fn(&lp, count);
        let vq = Valuation::from_fn(&lq, count);
        let mut vpq = Valuation::from_fn(&lpq, |id| {
            let inner = id.as_str().trim_matches(|c| c == '(' || c == ')');
            inner
                .split(',')
                .map(|s| s.parse::<f64>().unwrap())
                .product()
        });
        let report = check_product_rule_for_lattice_product(&vp, &vq, &vpq, 1e-12).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 6);

        vpq.set(&"(1,2)".into(), 2.1).unwrap();
        let report = check_product_rule_for_lattice_product(&vp, &vq, &vpq, 1e-12).unwrap();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].instance, vec!["1".into(), "2".into()]);

        let err = check_product_rule_for_lattice_product(&vp, &vp, &vpq, 1e-12).unwrap_err();
        assert!(matches!(err, ValuationError::LatticeMismatch(_)));
    }

    #[test]
    fn chain_rule_worked_instance() {
        let l = b(&["a", "b", "c"]);
        let v = probability(&l, &[("a", 0.2), ("b", 0.3), ("c", 0.5)]);
        let w = BiValuation::from_valuation(&v);
        let top = s(&["a", "b", "c"]);
        let lhs = w.get(&s(&["a"]), &top).unwrap();
        let rhs =
            w.get(&s(&["a"]), &s(&["a", "b"])).unwrap() * w.get(&s(&["a", "b"]), &top).unwrap();
        assert!((lhs - 0.2).abs() < 1e-15 && (rhs - 0.2).abs() < 1e-15);
        let report = check_chain_rule(&w, 1e-12);
        assert!(report.passed());
        // Chains through the zero-measure bottom context are skipped.
        assert!(report.skipped > 0);
        assert_eq!(report.checked + report.skipped, 64);
    }

    #[test]
    fn chain_rule_catches_overwrite() {
        let l = b(&["a", "b", "c"]);
        let v = probability(&l, &[("a", 0.2), ("b", 0.3), ("c", 0.5)]);
        let mut w = BiValuation::from_valuation(&v);
        w.set(&s(&["a"]), &s(&["a", "b", "c"]), 0.9).unwrap();
        let report = check_chain_rule(&w, 1e-9);
        assert!(report
            .violations
            .iter()
            .any(|v| v.instance == vec![s(&["a"]), s(&["a", "b"]), s(&["a", "b", "c"])]));
    }

    #[test]
    fn diamond_and_context_product_pass() {
        let l = b(&["a", "b", "c"]);
        let v = probability(&l, &[("a", 0.2), ("b", 0.3), ("c", 0.5)]);
        let w = BiValuation::from_valuation(&v);
        assert!(check_diamond_lemma(&w, 1e-12).passed());
        let report = check_context_product_rule(&w, 1e-12);
        assert!(report.passed());
        assert_eq!(report.checked + report.skipped, 512);

        let (x, y, z) = (s(&["a", "b", "c"]), s(&["a", "b"]), s(&["a", "c"]));
        let lhs = w.get(&s(&["a"]), &x).unwrap();
        let rhs = w.get(&z, &y).unwrap() * w.get(&y, &x).unwrap();
        assert!((lhs - 0.2).abs() < 1e-15 && (rhs - 0.2).abs() < 1e-15);
    }

    #[test]
    fn bisum_and_normalization_pass_and_detect() {
        let l = b(&["a", "b", "c"]);
        let v = probability(&l, &[("a", 0.2), ("b", 0.3), ("c", 0.5)]);
        let mut w = BiValuation::from_valuation(&v);
        assert!(check_bivaluation_sum_rule(&w, 1e-12).passed());
        assert!(check_normalization(&w, 1e-12).passed());

        w.set(&s(&["a"]), &s(&["a", "b"]), 0.7).unwrap();
        let report = check_bivaluation_sum_rule(&w, 1e-9);
        assert!(!report.passed());
        assert!(report
            .violations
            .iter()
            .all(|v| v.instance[2] == s(&["a", "b"])));
    }

    #[test]
    fn exact_audits_have_zero_residual() {
        let l = b(&["a", "b", "c"]);
        let atoms: BTreeMap<_, _> = [("a", 1), ("b", 2), ("c", 4)]
            .into_iter()
            .map(|(a, n)| (s(&[a]), Rational::from_integer(n)))
            .collect();
        let v = derive_valuation_from_atoms(&l, &atoms).unwrap();
        let w = BiValuation::from_valuation(&v);
        for report in [
            check_sum_rule(&v, 0.0),
            check_chain_rule(&w, 0.0),
            check_diamond_lemma(&w, 0.0),
            check_context_product_rule(&w, 0.0),
            check_bivaluation_sum_rule(&w, 0.0),
            check_normalization(&w, 0.0),
        ] {
            assert!(report.passed(), "{}", report.rule);
            assert_eq!(report.max_residual, 0.0);
        }
    }

    #[test]
    fn text_lines_round_trip() {
        let v = Violation {
            instance: vec!["a|bc".into(), "x\"y".into()],
            lhs: 0.30000000000000004,
            rhs: -1e-300,
            residual: 0.30000000000000004,
        };
        let line = v.to_text_line(Rule::Context);
        assert_eq!(Violation::from_text_line(&line), Some((Rule::Context, v)));
        assert_eq!(Violation::from_text_line("rule sum: pass"), None);
    }

    #[test]
    fn rule_names_parse() {
        for r in Rule::ALL {
            assert_eq!(r.name().parse::<Rule>().unwrap(), r);
        }
        assert!("bogus".parse::<Rule>().is_err());
    }
}
