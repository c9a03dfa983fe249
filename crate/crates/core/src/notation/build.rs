//! Turning a parsed document into a hypernetwork.
//!
//! Build folds the statements in source order through the standard insert
//! rules, so a `.hn` file behaves exactly like a sequence of insertions:
//! identical redeclarations are ignored, tag-only differences widen the tag
//! set, and irreconcilable redeclarations of one identifier are kept as a
//! conflict record. Problems never abort the build; each one is recorded
//! against the axiom it violates and the offending statement is skipped,
//! so the caller always gets back the best model the source supports plus
//! a report saying what was wrong.

use std::collections::BTreeMap;

use crate::algebra::{insert_into, InsertOutcome, OperatorError};
use crate::axioms::{validate, Axiom, ValidationReport};
use crate::model::{
    AntiVertex, Boundary, BoundaryOutcome, Element, ElementId, Hypernetwork, Hypersimplex,
    RelationSignature, Vertex,
};
use crate::notation::parse::{parse, Decl, ElementDecl, ParseError, SourceDocument};

/// Builds a hypernetwork from a parsed document. The report contains one
/// entry per skipped or adjusted statement plus the result of a final
/// validation pass; `report.ok()` means the source loaded cleanly into a
/// valid model.
pub fn build(doc: &SourceDocument) -> (Hypernetwork, ValidationReport) {
    let mut h = Hypernetwork::new();
    let mut report = ValidationReport::default();
    let mut declared: BTreeMap<String, Vec<String>> = BTreeMap::new();

    for stmt in &doc.statements {
        let line = stmt.line;
        match &stmt.decl {
            Decl::Boundary { id, percolating } => {
                let outcome = h.register_boundary(Boundary::new(id.clone(), *percolating));
                if outcome == BoundaryOutcome::PercolationMismatch {
                    report.push(
                        Axiom::A1,
                        id.clone(),
                        format!(
                            "line {line}: boundary redeclared with a different percolation \
                             flag; the first declaration wins"
                        ),
                    );
                }
            }
            Decl::Relation { symbol, roles } => {
                let sym_id = ElementId::new(symbol.clone())
                    .expect("the lexer yields non-empty identifiers");
                match RelationSignature::new(symbol.clone(), roles.clone()) {
                    Err(e) => {
                        report.push(Axiom::A4, sym_id, format!("line {line}: {e}"));
                    }
                    Ok(_) => match declared.get(symbol) {
                        Some(existing) if existing != roles => {
                            report.push(
                                Axiom::A4,
                                sym_id,
                                format!(
                                    "line {line}: relation redeclared with different roles; \
                                     the first declaration wins"
                                ),
                            );
                        }
                        Some(_) => {}
                        None => {
                            declared.insert(symbol.clone(), roles.clone());
                        }
                    },
                }
            }
            Decl::Element(decl) => match realize(decl, &declared) {
                Err((axiom, id, detail)) => {
                    report.push(axiom, id, format!("line {line}: {detail}"));
                }
                Ok(element) => {
                    let id = element.id().clone();
                    match insert_into(&mut h, element) {
                        Ok(InsertOutcome::Conflicted) => report.push(
                            Axiom::A1,
                            id,
                            format!(
                                "line {line}: identifier already names a different element; \
                                 both versions kept in a conflict record"
                            ),
                        ),
                        Ok(_) => {}
                        Err(OperatorError::UnregisteredBoundary(tag)) => report.push(
                            Axiom::A5,
                            id,
                            format!(
                                "line {line}: tag `{tag}` does not name a registered \
                                 boundary; statement skipped"
                            ),
                        ),
                        Err(e) => {
                            report.push(
                                Axiom::A1,
                                id,
                                format!("line {line}: {e}; statement skipped"),
                            );
                        }
                    }
                }
            },
        }
    }

    report.extend(validate(&h));
    (h, report)
}

/// Parses and builds in one step.
pub fn load(text: &str) -> Result<(Hypernetwork, ValidationReport), ParseError> {
    let doc = parse(text)?;
    Ok(build(&doc))
}

fn realize(
    decl: &ElementDecl,
    declared: &BTreeMap<String, Vec<String>>,
) -> Result<Element, (Axiom, ElementId, String)> {
    match decl {
        ElementDecl::Vertex { id, tags } => {
            let v = Vertex::with_tags(id.clone(), tags.iter().cloned().collect())
                .expect("the parser only accepts plain identifiers for vertices");
            Ok(v.into())
        }
        ElementDecl::Anti { excludes, tags } => {
            let a = AntiVertex::with_tags(excludes.clone(), tags.iter().cloned().collect())
                .expect("the parser only accepts plain identifiers after `anti`");
            Ok(a.into())
        }
        ElementDecl::Hypersimplex { id, agg, participants, symbol, roles, tags } => {
            let signature = resolve_signature(id, participants.len(), symbol, roles, declared)?;
            let hs = Hypersimplex::new(
                id.clone(),
                *agg,
                signature,
                participants.clone(),
                tags.iter().cloned().collect(),
            )
            .expect("the parser only accepts plain identifiers for hypersimplices");
            Ok(hs.into())
        }
        ElementDecl::Conflict { id, tags: _, left, right } => {
            let left = realize(left, declared)?;
            let right = realize(right, declared)?;
            Ok(Hypersimplex::name_clash(id.clone(), left, right).into())
        }
    }
}

fn resolve_signature(
    id: &ElementId,
    arity: usize,
    symbol: &str,
    inline_roles: &Option<Vec<String>>,
    declared: &BTreeMap<String, Vec<String>>,
) -> Result<RelationSignature, (Axiom, ElementId, String)> {
    let roles = match inline_roles {
        Some(roles) => roles.clone(),
        None => match declared.get(symbol) {
            Some(roles) => roles.clone(),
            None => {
                return Ok(RelationSignature::anonymous(symbol, arity)
                    .expect("statements always carry at least one participant"));
            }
        },
    };
    if roles.len() != arity {
        return Err((
            Axiom::A4,
            id.clone(),
            format!(
                "relation `{symbol}` binds {} roles but {arity} participants are given; \
                 statement skipped",
                roles.len()
            ),
        ));
    }
    RelationSignature::new(symbol, roles)
        .map_err(|e| (Axiom::A4, id.clone(), format!("{e}; statement skipped")))
}
