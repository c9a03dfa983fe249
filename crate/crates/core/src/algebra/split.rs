//! Split: projection of a sub-model by boundary, seed closure, or identity.

use std::collections::BTreeSet;

use crate::model::{ElementId, Hypernetwork};

use super::OperatorError;

/// What a split projects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitCriterion {
    /// Elements tagged with the boundary; descendants too when the
    /// boundary percolates.
    Boundary(ElementId),
    /// The incidence closure grown from the given elements.
    Seeds(Vec<ElementId>),
    /// The whole model.
    Universal,
}

/// Projects a sub-hypernetwork out of `h`.
///
/// The projection never invents structure: retained elements keep their
/// identity, participants, and tags, and the boundary registry is carried
/// over whole. A boundary projection of a model whose tagged elements
/// reference untagged ones is therefore reference-open; feeding the
/// projection back through the notation builder recreates the missing
/// references as bare vertices.
///
/// The seed variant grows its set to a fixpoint: any hypersimplex touching
/// a retained element joins together with all of its participants.
pub fn split(h: &Hypernetwork, criterion: &SplitCriterion) -> Result<Hypernetwork, OperatorError> {
    let retained = match criterion {
        SplitCriterion::Universal => return Ok(h.clone()),
        SplitCriterion::Boundary(b) => {
            let Some(boundary) = h.boundary(b) else {
                return Err(OperatorError::UnknownBoundary(b.clone()));
            };
            let tagged: BTreeSet<ElementId> = h
                .elements_in_order()
                .filter(|e| e.tags().contains(b))
                .map(|e| e.id().clone())
                .collect();
            let mut retained = tagged.clone();
            if boundary.percolating {
                let mut queue: Vec<ElementId> = tagged
                    .iter()
                    .filter_map(|id| h.resolve(id))
                    .flat_map(|e| e.participants().iter().cloned())
                    .collect();
                while let Some(p) = queue.pop() {
                    if retained.insert(p.clone()) {
                        if let Some(e) = h.resolve(&p) {
                            queue.extend(e.participants().iter().cloned());
                        }
                    }
                }
            }
            retained
        }
        SplitCriterion::Seeds(seeds) => {
            let mut retained = BTreeSet::new();
            for seed in seeds {
                if h.resolve(seed).is_none() {
                    return Err(OperatorError::UnknownSelector(format!("seed:{seed}")));
                }
                retained.insert(seed.clone());
            }
            loop {
                let mut grew = false;
                for e in h.elements_in_order() {
                    let Some(hs) = e.as_hypersimplex() else {
                        continue;
                    };
                    let touches = retained.contains(&hs.id)
                        || hs.participants.iter().any(|p| retained.contains(p));
                    if touches {
                        grew |= retained.insert(hs.id.clone());
                        for p in &hs.participants {
                            grew |= retained.insert(p.clone());
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            retained
        }
    };
    let mut out = Hypernetwork::new();
    for b in h.boundaries() {
        out.register_boundary(b.clone());
    }
    for e in h.elements_in_order() {
        if retained.contains(e.id()) {
            out.put_new(e.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::axioms::{is_sub_hypernetwork, validate};
    use crate::model::{AggregationType, Boundary, Hypersimplex, RelationSignature, Vertex};

    fn id(s: &str) -> ElementId {
        ElementId::new(s).unwrap()
    }

    fn vertex(name: &str, tags: &[&str]) -> Vertex {
        Vertex::with_tags(id(name), tags.iter().map(|t| id(t)).collect()).unwrap()
    }

    fn hs(
        name: &str,
        agg: AggregationType,
        symbol: &str,
        parts: &[&str],
        tags: &[&str],
    ) -> Hypersimplex {
        Hypersimplex::new(
            id(name),
            agg,
            RelationSignature::anonymous(symbol, parts.len()).unwrap(),
            parts.iter().map(|p| id(p)).collect(),
            tags.iter().map(|t| id(t)).collect(),
        )
        .unwrap()
    }

    /// Two stations feed a grid line; only the line and one station sit in
    /// the survey scope.
    fn grid() -> Hypernetwork {
        let mut h = Hypernetwork::new();
        h.register_boundary(Boundary::new(id("b_survey"), false));
        h.register_boundary(Boundary::new(id("b_deep"), true));
        h.put_new(vertex("North", &["b_survey", "b_deep"]).into());
        h.put_new(vertex("South", &[]).into());
        h.put_new(vertex("Meter", &[]).into());
        h.put_new(hs("Feed", AggregationType::Alpha, "R_feed", &["North", "Meter"], &[]).into());
        h.put_new(
            hs(
                "Line",
                AggregationType::Alpha,
                "R_line",
                &["Feed", "South"],
                &["b_survey", "b_deep"],
            )
            .into(),
        );
        h
    }

    #[test]
    fn universal_projection_is_identity() {
        let h = grid();
        assert_eq!(split(&h, &SplitCriterion::Universal).unwrap(), h);
    }

    #[test]
    fn unknown_boundary_is_rejected() {
        let h = grid();
        assert_eq!(
            split(&h, &SplitCriterion::Boundary(id("b_missing"))),
            Err(OperatorError::UnknownBoundary(id("b_missing")))
        );
    }

    #[test]
    fn non_percolating_projection_keeps_only_tagged_elements() {
        let h = grid();
        let out = split(&h, &SplitCriterion::Boundary(id("b_survey"))).unwrap();
        let ids: Vec<&str> = out.elements_in_order().map(|e| e.id().as_str()).collect();
        assert_eq!(ids, vec!["North", "Line"]);
        // The registry travels whole even when a boundary selects nothing.
        assert!(out.boundary(&id("b_deep")).is_some());
        // Line still references Feed and South, so the projection is open.
        assert!(!validate(&out).ok());
        assert!(is_sub_hypernetwork(&out, &h));
    }

    #[test]
    fn percolating_projection_pulls_descendants() {
        let h = grid();
        let out = split(&h, &SplitCriterion::Boundary(id("b_deep"))).unwrap();
        let ids: Vec<&str> = out.elements_in_order().map(|e| e.id().as_str()).collect();
        assert_eq!(ids, vec!["North", "South", "Meter", "Feed", "Line"]);
        assert!(validate(&out).ok());
        assert!(is_sub_hypernetwork(&out, &h));
    }

    #[test]
    fn projection_never_adds_tags() {
        let h = grid();
        let out = split(&h, &SplitCriterion::Boundary(id("b_deep"))).unwrap();
        for e in out.elements_in_order() {
            assert_eq!(e.tags(), h.resolve(e.id()).unwrap().tags());
        }
    }

    #[test]
    fn seed_projection_grows_to_incidence_fixpoint() {
        let h = grid();
        let out = split(&h, &SplitCriterion::Seeds(vec![id("Meter")])).unwrap();
        let ids: BTreeSet<&str> = out.elements_in_order().map(|e| e.id().as_str()).collect();
        // Feed touches Meter; Line touches Feed; both pull their parts.
        assert_eq!(
            ids,
            ["North", "South", "Meter", "Feed", "Line"].into_iter().collect()
        );
        assert!(validate(&out).ok());
    }

    #[test]
    fn seed_projection_excludes_untouched_structure() {
        let mut h = grid();
        h.put_new(vertex("Spare", &[]).into());
        h.put_new(hs("Stock", AggregationType::Beta, "R_stock", &["Spare"], &[]).into());
        let out = split(&h, &SplitCriterion::Seeds(vec![id("Spare")])).unwrap();
        let ids: Vec<&str> = out.elements_in_order().map(|e| e.id().as_str()).collect();
        assert_eq!(ids, vec!["Spare", "Stock"]);
    }

    #[test]
    fn unknown_seed_is_rejected() {
        let h = grid();
        assert_eq!(
            split(&h, &SplitCriterion::Seeds(vec![id("Ghost")])),
            Err(OperatorError::UnknownSelector("seed:Ghost".to_string()))
        );
    }

    #[test]
    fn boundary_projection_is_idempotent() {
        let h = grid();
        let b = SplitCriterion::Boundary(id("b_deep"));
        let once = split(&h, &b).unwrap();
        assert_eq!(split(&once, &b).unwrap(), once);
    }

    #[test]
    fn seeded_hypersimplex_pulls_its_participants() {
        let h = grid();
        let out = split(&h, &SplitCriterion::Seeds(vec![id("Feed")])).unwrap();
        let ids: BTreeSet<&str> = out.elements_in_order().map(|e| e.id().as_str()).collect();
        assert!(ids.contains("North") && ids.contains("Meter"));
    }
}
