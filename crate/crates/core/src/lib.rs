//! Typed n-ary relational models.
//!
//! A hypernetwork holds vertices, anti-vertices (explicit exclusions), and
//! hypersimplices: ordered participant tuples bound to a relation symbol,
//! aggregated conjunctively (alpha) or disjunctively (beta), and scoped by
//! boundary tags. The [`model`] module defines the data types and the
//! incidence index, [`axioms`] the validator and comparison predicates,
//! [`algebra`] the five composition operators, [`notation`] the `.hn`
//! textual format with its canonical serializer, and [`testkit`] seeded
//! model generation with independent oracles for the test suites.

pub mod algebra;
pub mod axioms;
pub mod model;
pub mod notation;
pub mod testkit;

pub use axioms::{validate, ValidationReport};
pub use model::{Element, ElementId, Hypernetwork, ModelError};
