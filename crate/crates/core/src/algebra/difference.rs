//! Difference: the structure of the left operand that the right operand
//! does not also assert.

use crate::axioms::{eq_element, roles_compatible};
use crate::model::{AggregationType, Element, Hypernetwork, Hypersimplex};

use super::{
    enforce_closure, pull_reference_closure, register_used_tags, shrink_beta, OperatorError,
};

/// Removes from `h1` everything `h2` also asserts.
///
/// Elements are compared by identifier. An element of `h1` whose name is
/// absent from `h2` is retained unchanged. When the name exists on both
/// sides the rule depends on what the two declarations share:
///
/// * structurally equal elements (same kind, relation, tags and
///   participants; conflict records must match snapshot for snapshot)
///   are dropped;
/// * beta hypersimplices over the same relation symbol subtract as sets:
///   participants also claimed by the right side disappear, and the
///   hypersimplex itself disappears when nothing survives;
/// * alpha hypersimplices with compatible roles and the same ordered
///   participants are dropped even when their tags differ, because the
///   assertion they make is the same;
/// * anything else is incomparable, so the left version is retained.
///
/// Dropped participants that surviving hypersimplices still reference are
/// copied back from `h1` to keep the result closed. The result registers
/// the boundaries exclusive to `h1` plus any shared boundary a retained
/// element still uses.
pub fn difference(h1: &Hypernetwork, h2: &Hypernetwork) -> Result<Hypernetwork, OperatorError> {
    let mut out = Hypernetwork::new();
    for b in h1.boundaries() {
        if h2.boundary(&b.id).is_none() {
            out.register_boundary(b.clone());
        }
    }
    for e1 in h1.elements_in_order() {
        match h2.resolve(e1.id()) {
            None => out.put_new(e1.clone()),
            Some(e2) => {
                if let Some(survivor) = subtract(e1, e2) {
                    out.put_new(survivor);
                }
            }
        }
    }
    pull_reference_closure(&mut out, h1, None);
    register_used_tags(&mut out, h1, None);
    enforce_closure(out)
}

/// Decides what remains of `e1` given the same-named `e2`. `None` means the
/// element is dropped.
fn subtract(e1: &Element, e2: &Element) -> Option<Element> {
    if eq_element(e1, e2) {
        return None;
    }
    let (Element::Hypersimplex(s1), Element::Hypersimplex(s2)) = (e1, e2) else {
        return Some(e1.clone());
    };
    if s1.is_conflict() || s2.is_conflict() {
        return Some(e1.clone());
    }
    if s1.agg != s2.agg || s1.relation.symbol() != s2.relation.symbol() {
        return Some(e1.clone());
    }
    match s1.agg {
        AggregationType::Beta => subtract_beta(s1, s2).map(Element::Hypersimplex),
        AggregationType::Alpha => {
            if roles_compatible(s1, s2) && s1.participants == s2.participants {
                None
            } else {
                Some(e1.clone())
            }
        }
    }
}

fn subtract_beta(s1: &Hypersimplex, s2: &Hypersimplex) -> Option<Hypersimplex> {
    let claimed = s2.participant_set();
    shrink_beta(s1, |p| !claimed.contains(p))
}
