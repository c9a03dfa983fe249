//! The `.hn` textual notation: parsing, building and rendering.
//!
//! A `.hn` file is a line-oriented sequence of statements:
//!
//! ```text
//! # comment
//! boundary b_Medical
//! boundary b_IncidentA percolating
//! relation R_Team(lead, medic_a, medic_b)
//! vertex Commander @ b_Medical
//! anti SpareWheel
//! alpha Wheel = <Rim, Hub, Tyre ; R_wheelAssembly>
//! beta Rank = {Commander, Deputy ; R_Rank(senior, junior)} @ b_Medical
//! conflict T { vertex T | alpha T = <A ; R> }
//! ```
//!
//! [`parse`] turns text into a [`SourceDocument`], [`build`] folds the
//! statements into a [`crate::model::Hypernetwork`] under the insert rules,
//! and [`canonical`] renders a model back to its unique normal form:
//! boundaries sorted by identifier, then one statement per element sorted
//! by identifier. Relation declarations are accepted on input as shared
//! role lists but never emitted; named roles always render inline, so a
//! canonical file is self-contained.

mod build;
mod canon;
mod parse;

pub use build::{build, load};
pub use canon::{canonical, pretty, statement};
pub use parse::{parse, Decl, ElementDecl, ParseError, SourceDocument, Statement};
