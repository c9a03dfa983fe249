//! Merge: fold the right operand into the left, element by element.
//!
//! Boundary registries are unioned first (the left registration wins on a
//! percolation mismatch), then every element of the right operand is
//! inserted in its insertion order. Each step re-validates the intermediate
//! result, so a defect in the insertion rules surfaces immediately instead
//! of corrupting downstream results.
//!
//! Merge is intentionally not commutative: when both operands claim one
//! identifier incompatibly, the left snapshot ends up on the left side of
//! the conflict record.

use crate::model::Hypernetwork;

use super::insert::insert_into;
use super::{enforce_closure, union_boundaries, OperatorError};

pub fn merge(h1: &Hypernetwork, h2: &Hypernetwork) -> Result<Hypernetwork, OperatorError> {
    let mut out = h1.clone();
    union_boundaries(&mut out, h2.boundaries());
    for e in h2.elements_in_order() {
        insert_into(&mut out, e.clone())?;
    }
    enforce_closure(out)
}
