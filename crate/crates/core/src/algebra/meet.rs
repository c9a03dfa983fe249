//! Meet: the structure common to both operands.
//!
//! Elements pair up by identifier. Atomic elements are retained when
//! identical on both sides. Same-name hypersimplices must agree on
//! aggregation type, relation symbol and role order; then alpha assemblies
//! are retained only on full participant agreement, while beta sets overlap
//! to their participant intersection (the signature arity shrinks with
//! them). Tag sets of overlapping elements are unioned so no scope mark is
//! lost. Anything without a compatible same-name partner is absent from the
//! result.
//!
//! The result is closed afterwards: participants referenced by retained
//! assemblies are pulled in (preferring the left operand's version), and
//! the boundary registry is the registry intersection plus whatever tags
//! the retained elements actually use.

use crate::axioms::{eq_hs, eq_vertex};
use crate::model::{AggregationType, Element, Hypernetwork, Hypersimplex};

use super::{
    enforce_closure, pull_reference_closure, register_used_tags, shrink_beta, OperatorError,
};

pub fn meet(h1: &Hypernetwork, h2: &Hypernetwork) -> Result<Hypernetwork, OperatorError> {
    let mut out = Hypernetwork::new();
    for b in h1.boundaries() {
        if h2.boundary(&b.id).is_some() {
            out.register_boundary(b.clone());
        }
    }
    for e1 in h1.elements_in_order() {
        let Some(e2) = h2.resolve(e1.id()) else {
            continue;
        };
        let retained = match (e1, e2) {
            (Element::Vertex(a), Element::Vertex(b)) if eq_vertex(a, b) => Some(e1.clone()),
            (Element::AntiVertex(a), Element::AntiVertex(b))
                if a.id == b.id && a.tags == b.tags =>
            {
                Some(e1.clone())
            }
            (Element::Hypersimplex(a), Element::Hypersimplex(b)) => {
                meet_hs(a, b).map(Element::from)
            }
            _ => None,
        };
        if let Some(e) = retained {
            out.put_new(e);
        }
    }
    pull_reference_closure(&mut out, h1, Some(h2));
    register_used_tags(&mut out, h1, Some(h2));
    enforce_closure(out)
}

fn meet_hs(a: &Hypersimplex, b: &Hypersimplex) -> Option<Hypersimplex> {
    if a.is_conflict() || b.is_conflict() {
        return (a == b).then(|| a.clone());
    }
    if eq_hs(a, b) {
        return Some(a.clone());
    }
    if a.agg != b.agg || a.relation != b.relation {
        return None;
    }
    let unified_tags = || a.tags.union(&b.tags).cloned().collect();
    match a.agg {
        // Alpha assemblies overlap only on full participant agreement;
        // a partial overlap of an ordered whole is no common structure.
        AggregationType::Alpha => (a.participants == b.participants).then(|| {
            let mut kept = a.clone();
            kept.tags = unified_tags();
            kept
        }),
        AggregationType::Beta => {
            let other = b.participant_set();
            let mut overlapped = shrink_beta(a, |p| other.contains(p))?;
            overlapped.tags = unified_tags();
            Some(overlapped)
        }
    }
}
