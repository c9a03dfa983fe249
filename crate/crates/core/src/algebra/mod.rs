//! Composition operators.
//!
//! Five operators combine or reduce hypernetworks: [`merge`] (union by
//! element insertion), [`meet`] (common structure), [`difference`]
//! (structure unique to the left operand), [`prune`] (explicit removal with
//! exclusion markers) and [`split`] (sub-model extraction). All of them are
//! value-level: operands are borrowed, results are fresh hypernetworks, and
//! for fixed operands the output is byte-identical across runs.
//!
//! Identifier clashes never abort an operator. An incompatible claim on an
//! existing name produces a conflict record holding both snapshots; the
//! record is terminal, so later operations treat it as an opaque element
//! that only ever equals an identical record.

mod difference;
mod insert;
mod meet;
mod merge;
mod prune;
mod split;

pub use difference::difference;
pub(crate) use insert::insert_into;
pub use insert::{insert, insert_traced, InsertOutcome};
pub use meet::meet;
pub use merge::merge;
pub use prune::{prune, PruneItem, PruneSelector};
pub use split::{split, SplitCriterion};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::axioms::ValidationReport;
use crate::model::{Boundary, ElementId, Hypernetwork};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("participant `{0}` cannot be resolved or created")]
    DanglingReference(ElementId),
    #[error("tag `{0}` does not name a registered boundary")]
    UnregisteredBoundary(ElementId),
    #[error("selector item `{0}` resolves to nothing")]
    UnknownSelector(String),
    #[error("selector item `{0}` is malformed; expected v:<id>, hs:<id>, rel:<symbol> or b:<id>")]
    InvalidSelector(String),
    #[error("boundary `{0}` is not registered")]
    UnknownBoundary(ElementId),
    #[error("operator produced an invalid result (internal defect):\n{0}")]
    ClosureViolation(ValidationReport),
}

/// Runs the validator over an operator result and converts any violation
/// into an internal-defect error. The composition rules are supposed to
/// make this unreachable; surfacing it loudly beats silent corruption.
pub(crate) fn enforce_closure(h: Hypernetwork) -> Result<Hypernetwork, OperatorError> {
    let report = crate::axioms::validate(&h);
    if report.ok() {
        Ok(h)
    } else {
        Err(OperatorError::ClosureViolation(report))
    }
}

/// Copies every element reachable through participant references of `out`'s
/// hypersimplices but not yet present in `out`, preferring the version
/// registered in `primary` and falling back to `secondary`. Used by meet and
/// difference to keep results reference-closed.
pub(crate) fn pull_reference_closure(
    out: &mut Hypernetwork,
    primary: &Hypernetwork,
    secondary: Option<&Hypernetwork>,
) {
    let mut queue: Vec<ElementId> = out
        .elements_in_order()
        .flat_map(|e| e.participants().iter().cloned())
        .collect();
    let mut visited: BTreeSet<ElementId> = BTreeSet::new();
    while let Some(id) = queue.pop() {
        if !visited.insert(id.clone()) || out.resolve(&id).is_some() {
            continue;
        }
        let source = primary
            .resolve(&id)
            .or_else(|| secondary.and_then(|s| s.resolve(&id)));
        if let Some(e) = source {
            queue.extend(e.participants().iter().cloned());
            out.put_new(e.clone());
        }
    }
}

/// Ensures every tag used by an element of `out` names a registered
/// boundary, copying missing registrations from the operand registries.
pub(crate) fn register_used_tags(
    out: &mut Hypernetwork,
    primary: &Hypernetwork,
    secondary: Option<&Hypernetwork>,
) {
    let used: BTreeSet<ElementId> = out
        .elements_in_order()
        .flat_map(|e| e.tags().iter().cloned())
        .collect();
    for tag in used {
        if out.boundary(&tag).is_some() {
            continue;
        }
        let found = primary
            .boundary(&tag)
            .or_else(|| secondary.and_then(|s| s.boundary(&tag)));
        if let Some(b) = found {
            out.register_boundary(b.clone());
        }
    }
}

/// Registers `extra` boundary declarations into `out`; existing
/// registrations win on a percolation mismatch.
pub(crate) fn union_boundaries<'a>(
    out: &mut Hypernetwork,
    extra: impl Iterator<Item = &'a Boundary>,
) {
    for b in extra {
        out.register_boundary(b.clone());
    }
}

/// Rebuilds a beta hypersimplex keeping only the participants accepted by
/// `keep`, in their original order with duplicates collapsed. Synthesized
/// role lists are renumbered to match the new arity; explicitly named roles
/// keep the names at the surviving positions. Returns `None` when nothing
/// survives.
pub(crate) fn shrink_beta(
    source: &crate::model::Hypersimplex,
    keep: impl Fn(&ElementId) -> bool,
) -> Option<crate::model::Hypersimplex> {
    let mut participants: Vec<ElementId> = Vec::new();
    let mut positions: Vec<usize> = Vec::new();
    let mut seen: BTreeSet<&ElementId> = BTreeSet::new();
    for (i, p) in source.participants.iter().enumerate() {
        if keep(p) && seen.insert(p) {
            participants.push(p.clone());
            positions.push(i);
        }
    }
    if participants.is_empty() {
        return None;
    }
    let relation = if source.relation.has_anonymous_roles() {
        crate::model::RelationSignature::anonymous(source.relation.symbol(), participants.len())
    } else {
        let roles = positions
            .iter()
            .map(|&i| source.relation.roles()[i].clone())
            .collect();
        crate::model::RelationSignature::new(source.relation.symbol(), roles)
    }
    .expect("surviving roles stay unique and non-empty");
    let mut out = source.clone();
    out.participants = participants;
    out.relation = relation;
    Some(out)
}
