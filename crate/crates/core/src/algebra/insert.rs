//! Single-element insertion.
//!
//! Insertion is the primitive every other composition rule reduces to. Its
//! decision rules, in order of precedence for each incoming kind:
//!
//! * identical element already present → ignore (insertion is idempotent);
//! * same-kind element present with a wider/narrower tag set → the tag sets
//!   are unioned (scope marks accumulate, they never silently vanish);
//! * a vertex arriving while any hypersimplex holds the identifier →
//!   ignore, the assembly already defines that name;
//! * a hypersimplex arriving while a bare vertex holds the identifier →
//!   the assembly replaces the vertex in place (name lift), inheriting the
//!   vertex's tags;
//! * same-name beta assemblies with the same anonymous-role signature but
//!   different participant sets → unify by participant-set union;
//! * any other claim on an occupied identifier → conflict record holding
//!   both snapshots;
//! * otherwise → plain insertion, with missing participants auto-created
//!   first (plain references become bare vertices, `~`-prefixed references
//!   become exclusion markers).

use std::collections::BTreeSet;

use crate::axioms::{eq_hs, eq_vertex};
use crate::model::{
    AggregationType, AntiVertex, Element, ElementId, Hypernetwork, Hypersimplex,
    RelationSignature, Vertex,
};

use super::OperatorError;

/// What a single insertion did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    /// Fresh element added (possibly with auto-created participants).
    Inserted,
    /// An identical element (or a defining assembly) was already present.
    Ignored,
    /// Same element with additional tags folded in.
    TagsWidened,
    /// A bare vertex was promoted to the incoming hypersimplex.
    Promoted,
    /// Same-name beta assemblies were unified by participant union.
    Unified,
    /// The identifier is now held by a conflict record.
    Conflicted,
}

/// Inserts one element, returning the extended hypernetwork.
pub fn insert(h: &Hypernetwork, element: Element) -> Result<Hypernetwork, OperatorError> {
    insert_traced(h, element).map(|(out, _)| out)
}

/// Like [`insert`], also reporting which rule fired.
pub fn insert_traced(
    h: &Hypernetwork,
    element: Element,
) -> Result<(Hypernetwork, InsertOutcome), OperatorError> {
    let mut out = h.clone();
    let outcome = insert_into(&mut out, element)?;
    Ok((out, outcome))
}

/// In-place variant used by merge and the notation builder.
pub(crate) fn insert_into(
    h: &mut Hypernetwork,
    element: Element,
) -> Result<InsertOutcome, OperatorError> {
    for tag in element.tags() {
        if h.boundary(tag).is_none() {
            return Err(OperatorError::UnregisteredBoundary(tag.clone()));
        }
    }
    match element {
        Element::Vertex(v) => insert_vertex(h, v),
        Element::AntiVertex(a) => insert_anti(h, a),
        Element::Hypersimplex(hs) => insert_hypersimplex(h, hs),
    }
}

fn widen_tags(existing: &BTreeSet<ElementId>, incoming: &BTreeSet<ElementId>) -> Option<BTreeSet<ElementId>> {
    if incoming.is_subset(existing) {
        None
    } else {
        Some(existing.union(incoming).cloned().collect())
    }
}

fn insert_vertex(h: &mut Hypernetwork, v: Vertex) -> Result<InsertOutcome, OperatorError> {
    match h.resolve(&v.id) {
        None => {
            h.put_new(v.into());
            Ok(InsertOutcome::Inserted)
        }
        Some(Element::Vertex(old)) => {
            if eq_vertex(old, &v) {
                return Ok(InsertOutcome::Ignored);
            }
            match widen_tags(&old.tags, &v.tags) {
                None => Ok(InsertOutcome::Ignored),
                Some(tags) => {
                    let mut widened = old.clone();
                    widened.tags = tags;
                    h.replace(widened.into());
                    Ok(InsertOutcome::TagsWidened)
                }
            }
        }
        // The assembly under this name already defines the identifier; a
        // bare vertex adds no information regardless of arrival order.
        Some(Element::Hypersimplex(_)) => Ok(InsertOutcome::Ignored),
        Some(old @ Element::AntiVertex(_)) => {
            let clash = Hypersimplex::name_clash(v.id.clone(), old.clone(), v.into());
            h.replace(clash.into());
            Ok(InsertOutcome::Conflicted)
        }
    }
}

fn insert_anti(h: &mut Hypernetwork, a: AntiVertex) -> Result<InsertOutcome, OperatorError> {
    match h.resolve(&a.id) {
        None => {
            h.put_new(a.into());
            Ok(InsertOutcome::Inserted)
        }
        Some(Element::AntiVertex(old)) => match widen_tags(&old.tags, &a.tags) {
            None => Ok(InsertOutcome::Ignored),
            Some(tags) => {
                let mut widened = old.clone();
                widened.tags = tags;
                h.replace(widened.into());
                Ok(InsertOutcome::TagsWidened)
            }
        },
        Some(old) => {
            let clash = Hypersimplex::name_clash(a.id.clone(), old.clone(), a.into());
            h.replace(clash.into());
            Ok(InsertOutcome::Conflicted)
        }
    }
}

fn insert_hypersimplex(
    h: &mut Hypernetwork,
    hs: Hypersimplex,
) -> Result<InsertOutcome, OperatorError> {
    match h.resolve(&hs.id).cloned() {
        None => {
            if !hs.is_conflict() {
                create_missing_participants(h, &hs)?;
            }
            h.put_new(hs.into());
            Ok(InsertOutcome::Inserted)
        }
        Some(Element::Hypersimplex(old)) => {
            if eq_hs(&old, &hs) {
                return Ok(InsertOutcome::Ignored);
            }
            if let Some(unified) = unify_beta(&old, &hs) {
                create_missing_participants(h, &unified)?;
                h.replace(unified.into());
                return Ok(InsertOutcome::Unified);
            }
            let clash = Hypersimplex::name_clash(hs.id.clone(), old.into(), hs.into());
            h.replace(clash.into());
            Ok(InsertOutcome::Conflicted)
        }
        Some(Element::Vertex(old)) => {
            if hs.is_conflict() {
                if old.tags.is_empty() {
                    // A bare untagged vertex is the shape participant
                    // auto-creation leaves behind and carries no claim of
                    // its own; the arriving record takes the identifier.
                    h.replace(hs.into());
                    return Ok(InsertOutcome::Promoted);
                }
                let clash = Hypersimplex::name_clash(hs.id.clone(), old.into(), hs.into());
                h.replace(clash.into());
                return Ok(InsertOutcome::Conflicted);
            }
            // Name lift: the assembly is the more specific construct.
            let mut lifted = hs;
            lifted.tags.extend(old.tags.iter().cloned());
            create_missing_participants(h, &lifted)?;
            h.replace(lifted.into());
            Ok(InsertOutcome::Promoted)
        }
        Some(old @ Element::AntiVertex(_)) => {
            let clash = Hypersimplex::name_clash(hs.id.clone(), old, hs.into());
            h.replace(clash.into());
            Ok(InsertOutcome::Conflicted)
        }
    }
}

/// Same-name beta assemblies under the same symbol with synthesized roles
/// unify by participant-set union. Named role lists cannot be widened
/// deterministically, so they fall through to a conflict record instead.
fn unify_beta(old: &Hypersimplex, new: &Hypersimplex) -> Option<Hypersimplex> {
    if old.is_conflict()
        || new.is_conflict()
        || old.agg != AggregationType::Beta
        || new.agg != AggregationType::Beta
        || old.relation.symbol() != new.relation.symbol()
        || !old.relation.has_anonymous_roles()
        || !new.relation.has_anonymous_roles()
    {
        return None;
    }
    let mut participants = Vec::new();
    let mut seen = BTreeSet::new();
    for p in old.participants.iter().chain(new.participants.iter()) {
        if seen.insert(p.clone()) {
            participants.push(p.clone());
        }
    }
    let relation =
        RelationSignature::anonymous(old.relation.symbol(), participants.len()).ok()?;
    let mut tags = old.tags.clone();
    tags.extend(new.tags.iter().cloned());
    Some(Hypersimplex {
        id: old.id.clone(),
        agg: AggregationType::Beta,
        relation,
        participants,
        tags,
        conflict: None,
    })
}

/// Auto-creates participants that do not resolve yet: plain identifiers as
/// bare vertices, `~`-prefixed identifiers as exclusion markers. A reference
/// that cannot be created this way (for example `~~X`) is a dangling
/// reference.
fn create_missing_participants(
    h: &mut Hypernetwork,
    hs: &Hypersimplex,
) -> Result<(), OperatorError> {
    for p in &hs.participants {
        if h.resolve(p).is_some() {
            continue;
        }
        if p.is_anti() {
            let excluded = p
                .strip_anti()
                .filter(|e| !e.is_anti())
                .ok_or_else(|| OperatorError::DanglingReference(p.clone()))?;
            let anti = AntiVertex::excluding(excluded)
                .map_err(|_| OperatorError::DanglingReference(p.clone()))?;
            h.put_new(anti.into());
        } else {
            let vertex = Vertex::new(p.clone())
                .map_err(|_| OperatorError::DanglingReference(p.clone()))?;
            h.put_new(vertex.into());
        }
    }
    Ok(())
}
