//! Derive a valuation from atom weights on a Boolean lattice, audit every
//! rule, then perturb one value and watch the audits catch it.
//!
//! Run with `cargo run --example rule_audit`.

use std::collections::BTreeMap;

use ordinal::poset::{boolean_atom_id, boolean_lattice, ElementId, Lattice};
use ordinal::valuation::{
    check_bivaluation_sum_rule, check_chain_rule, check_context_product_rule, check_diamond_lemma,
    check_normalization, check_sum_rule, derive_valuation_from_atoms, BiValuation, RuleReport,
    Scalar, Valuation, DEFAULT_TOLERANCE,
};
use ordinal::Rational;

fn audit<S: Scalar>(v: &Valuation<'_, S>, tol: f64) -> Vec<RuleReport> {
    let w = BiValuation::from_valuation(v);
    vec![
        check_sum_rule(v, tol),
        check_bivaluation_sum_rule(&w, tol),
        check_chain_rule(&w, tol),
        check_diamond_lemma(&w, tol),
        check_context_product_rule(&w, tol),
        check_normalization(&w, tol),
    ]
}

fn show(reports: &[RuleReport]) {
    for r in reports {
        println!(
            "  {:<14} checked {:>4}  skipped {:>3}  violations {:>3}  max residual {:e}",
            r.rule.name(),
            r.checked,
            r.skipped,
            r.violations.len(),
            r.max_residual
        );
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = Lattice::new(boolean_lattice(&["a", "b", "c"])?)?;
    let atoms: BTreeMap<ElementId, f64> = [("a", 0.2), ("b", 0.3), ("c", 0.5)]
        .iter()
        .map(|&(a, p)| (boolean_atom_id(&[a]), p))
        .collect();
    let mut v = derive_valuation_from_atoms(&l, &atoms)?;
    println!("probabilities on subsets of {{a,b,c}}:");
    show(&audit(&v, DEFAULT_TOLERANCE));

    let exact: BTreeMap<ElementId, Rational> = [("a", 1), ("b", 2), ("c", 3)]
        .iter()
        .map(|&(a, n)| (boolean_atom_id(&[a]), Rational::from_integer(n)))
        .collect();
    println!("integer weights, exact arithmetic, zero tolerance:");
    show(&audit(&derive_valuation_from_atoms(&l, &exact)?, 0.0));

    let top = ElementId::from("{a,b,c}");
    let old = *v.get(&top)?;
    v.set(&top, old + 1e-6)?;
    println!("after nudging v({top}) by 1e-6:");
    let reports = audit(&v, DEFAULT_TOLERANCE);
    show(&reports);
    if let Some(first) = reports.iter().find(|r| !r.passed()) {
        println!("{}", first.violations[0].to_text_line(first.rule));
    }
    Ok(())
}
