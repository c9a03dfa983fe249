//! Structural validity.
//!
//! The checks here enforce the model's standing rules: identifier uniqueness
//! (A1), anti-vertex derivation (A2), aggregation typing (A3), relation
//! binding with ordered roles (A4), boundary registration (A5), plus the
//! state-level composition conditions: reference closure (C5), a
//! well-defined insertion order (C6) and a consistent incidence index (C7).
//!
//! Equality is layered. [`eq_hs`] is the strict identity used by the
//! composition decision rules: identifier, signature, aggregation type,
//! participants (ordered for alpha, as a set for beta) and tags must all
//! match. [`identical_in`] is the weaker per-element containment test:
//! it compares kind, signature, aggregation type and tags but not the
//! participant list, so a hypersimplex whose participants were rewritten
//! (for example by exclusion during a prune) still counts as the same
//! element when kind, relation, typing and scope agree.

use std::collections::BTreeSet;
use std::fmt;

use crate::model::{
    AggregationType, Element, ElementId, Hypernetwork, Hypersimplex, Vertex,
};

/// Rule labels used in validation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
    A5,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::A4 => "A4",
            Axiom::A5 => "A5",
            Axiom::C1 => "C1",
            Axiom::C2 => "C2",
            Axiom::C3 => "C3",
            Axiom::C4 => "C4",
            Axiom::C5 => "C5",
            Axiom::C6 => "C6",
            Axiom::C7 => "C7",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub element: ElementId,
    pub detail: String,
}

/// Outcome of a validation pass. `ok()` holds exactly when no violations
/// were recorded.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: Axiom, element: ElementId, detail: impl Into<String>) {
        self.violations.push(Violation { axiom, element, detail: detail.into() });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{}\t{}\t{}", v.axiom, v.element, v.detail)?;
        }
        Ok(())
    }
}

/// Identity of atomic vertices: same identifier, same tag set.
pub fn eq_vertex(a: &Vertex, b: &Vertex) -> bool {
    a.id == b.id && a.tags == b.tags
}

/// Strict hypersimplex identity. Participants compare in order for alpha
/// aggregation and as a set for beta aggregation. Conflict records only
/// equal other conflict records with identical snapshots.
pub fn eq_hs(a: &Hypersimplex, b: &Hypersimplex) -> bool {
    if a.is_conflict() || b.is_conflict() {
        return a == b;
    }
    if a.id != b.id || a.agg != b.agg || a.relation != b.relation || a.tags != b.tags {
        return false;
    }
    match a.agg {
        AggregationType::Alpha => a.participants == b.participants,
        AggregationType::Beta => a.participant_set() == b.participant_set(),
    }
}

/// Strict identity across element kinds; differing kinds never match.
pub fn eq_element(a: &Element, b: &Element) -> bool {
    match (a, b) {
        (Element::Vertex(x), Element::Vertex(y)) => eq_vertex(x, y),
        (Element::AntiVertex(x), Element::AntiVertex(y)) => {
            x.id == y.id && x.tags == y.tags
        }
        (Element::Hypersimplex(x), Element::Hypersimplex(y)) => eq_hs(x, y),
        _ => false,
    }
}

/// Whether two hypersimplices bind the same relation: same symbol, same
/// arity, and the same roles in the same order. Permuted roles are not
/// compatible. Conflict records are compatible with nothing.
pub fn roles_compatible(a: &Hypersimplex, b: &Hypersimplex) -> bool {
    !a.is_conflict() && !b.is_conflict() && a.relation == b.relation
}

/// Local well-formedness of a hypersimplex against a hypernetwork: the
/// participant count matches the signature arity, every participant
/// resolves, and every tag names a registered boundary. Conflict records
/// skip the arity and participant checks since they carry none.
pub fn wellformed(hs: &Hypersimplex, h: &Hypernetwork) -> bool {
    if !hs.tags.iter().all(|t| h.boundary(t).is_some()) {
        return false;
    }
    if hs.is_conflict() {
        return hs.participants.is_empty();
    }
    hs.participants.len() == hs.relation.arity()
        && hs.participants.iter().all(|p| h.resolve(p).is_some())
}

/// True when no hypersimplex of `h` lists the element as a participant.
pub fn orphan(e: &Element, h: &Hypernetwork) -> bool {
    h.containers_of(e.id()).is_empty()
}

/// Per-element containment test: `h` holds an element of the same kind
/// under the same identifier with matching typing, relation and tags.
/// Participant lists are not compared; see the module notes.
pub fn identical_in(h: &Hypernetwork, e: &Element) -> bool {
    let Some(existing) = h.resolve(e.id()) else {
        return false;
    };
    match (existing, e) {
        (Element::Vertex(x), Element::Vertex(y)) => x.tags == y.tags,
        (Element::AntiVertex(x), Element::AntiVertex(y)) => x.tags == y.tags,
        (Element::Hypersimplex(x), Element::Hypersimplex(y)) => {
            if x.is_conflict() || y.is_conflict() {
                x == y
            } else {
                x.agg == y.agg && x.relation == y.relation && x.tags == y.tags
            }
        }
        _ => false,
    }
}

/// Full validation pass. Reports every violation rather than stopping at
/// the first. Duplicate registrations (A1) cannot be represented by the
/// registry itself; name clashes are materialized as conflict records at
/// composition time, and the notation builder reports them as A1 entries.
pub fn validate(h: &Hypernetwork) -> ValidationReport {
    let mut report = ValidationReport::default();

    // C6: the insertion order lists each registered element exactly once.
    let mut seen: BTreeSet<&ElementId> = BTreeSet::new();
    for id in h.insertion_order() {
        if !seen.insert(id) {
            report.push(Axiom::C6, id.clone(), "listed more than once in insertion order");
        } else if h.resolve(id).is_none() {
            report.push(Axiom::C6, id.clone(), "insertion order names an unregistered element");
        }
    }
    for id in h.element_ids() {
        if !seen.contains(id) {
            report.push(Axiom::C6, id.clone(), "element missing from insertion order");
        }
    }

    for e in h.elements_sorted() {
        for t in e.tags() {
            if h.boundary(t).is_none() {
                report.push(
                    Axiom::A5,
                    e.id().clone(),
                    format!("tag `{t}` does not name a registered boundary"),
                );
            }
        }
        match e {
            Element::Vertex(_) => {}
            Element::AntiVertex(a) => {
                if a.excludes.is_anti() || a.id != a.excludes.to_anti() {
                    report.push(
                        Axiom::A2,
                        a.id.clone(),
                        format!("identifier is not derived from excluded vertex `{}`", a.excludes),
                    );
                }
            }
            Element::Hypersimplex(hs) if hs.is_conflict() => {
                if !hs.participants.is_empty() {
                    report.push(
                        Axiom::A4,
                        hs.id.clone(),
                        "conflict record must not carry participants",
                    );
                }
            }
            Element::Hypersimplex(hs) => {
                if hs.participants.len() != hs.relation.arity() {
                    report.push(
                        Axiom::A4,
                        hs.id.clone(),
                        format!(
                            "{} participants under `{}` with arity {}",
                            hs.participants.len(),
                            hs.relation.symbol(),
                            hs.relation.arity()
                        ),
                    );
                }
                for p in &hs.participants {
                    if h.resolve(p).is_none() {
                        report.push(
                            Axiom::C5,
                            hs.id.clone(),
                            format!("participant `{p}` does not resolve"),
                        );
                    }
                }
            }
        }
    }

    // C7: stored incidence index equals the index recomputed from slots.
    let computed = h.computed_part_of();
    if *h.part_of_index() != computed {
        let stored = h.part_of_index();
        let keys: BTreeSet<&ElementId> = stored.keys().chain(computed.keys()).collect();
        for key in keys {
            let a = stored.get(key);
            let b = computed.get(key);
            if a != b {
                report.push(
                    Axiom::C7,
                    key.clone(),
                    "incidence index disagrees with participant slots",
                );
            }
        }
    }

    report
}

/// Containment of whole models: every element of `small` must pass
/// [`identical_in`] against `big`, with one refinement. An untagged
/// anti-vertex is the residue prune leaves behind for the element it
/// excludes, so a model that still contains that element subsumes the
/// exclusion claim; without this rule no pruned model could ever embed in
/// a less pruned one. Boundary registries are not compared; scoping
/// travels on the element tags themselves.
pub fn is_sub_hypernetwork(small: &Hypernetwork, big: &Hypernetwork) -> bool {
    small.elements_in_order().all(|e| {
        if identical_in(big, e) {
            return true;
        }
        match e {
            Element::AntiVertex(a) if a.tags.is_empty() => big.resolve(&a.excludes).is_some(),
            _ => false,
        }
    })
}
