//! Prune: explicit removal with exclusion markers and cascade cleanup.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::axioms::wellformed;
use crate::model::{AntiVertex, Element, ElementId, Hypernetwork, Hypersimplex};

use super::{enforce_closure, OperatorError};

/// One criterion of a prune selector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PruneItem {
    /// `v:<id>`: the vertex or anti-vertex with this identifier.
    Vertex(ElementId),
    /// `hs:<id>`: the hypersimplex with this identifier.
    Hypersimplex(ElementId),
    /// `rel:<symbol>`: every hypersimplex over this relation symbol.
    Relation(String),
    /// `b:<id>`: every element tagged with this boundary.
    Boundary(ElementId),
}

impl FromStr for PruneItem {
    type Err = OperatorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || OperatorError::InvalidSelector(s.to_string());
        let (prefix, rest) = s.split_once(':').ok_or_else(malformed)?;
        match prefix {
            "v" => ElementId::new(rest).map(PruneItem::Vertex).map_err(|_| malformed()),
            "hs" => ElementId::new(rest)
                .map(PruneItem::Hypersimplex)
                .map_err(|_| malformed()),
            "rel" => {
                if rest.is_empty() || rest.chars().any(char::is_whitespace) {
                    Err(malformed())
                } else {
                    Ok(PruneItem::Relation(rest.to_string()))
                }
            }
            "b" => ElementId::new(rest).map(PruneItem::Boundary).map_err(|_| malformed()),
            _ => Err(malformed()),
        }
    }
}

impl fmt::Display for PruneItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PruneItem::Vertex(id) => write!(f, "v:{id}"),
            PruneItem::Hypersimplex(id) => write!(f, "hs:{id}"),
            PruneItem::Relation(symbol) => write!(f, "rel:{symbol}"),
            PruneItem::Boundary(id) => write!(f, "b:{id}"),
        }
    }
}

/// A deletion set: the union of everything its items select.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PruneSelector {
    items: Vec<PruneItem>,
}

impl PruneSelector {
    pub fn new(items: Vec<PruneItem>) -> Self {
        Self { items }
    }

    /// Parses each text as one selector item, `v:Car` style.
    pub fn parse_items<'a>(
        texts: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, OperatorError> {
        let items = texts
            .into_iter()
            .map(PruneItem::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(items))
    }

    pub fn items(&self) -> &[PruneItem] {
        &self.items
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Strict lookup for callers that want an unknown item to fail loudly
    /// instead of selecting nothing. `v:`/`hs:` items must name an element
    /// of the matching kind, `rel:` a symbol with at least one instance and
    /// `b:` a registered boundary.
    pub fn check_resolvable(&self, h: &Hypernetwork) -> Result<(), OperatorError> {
        for item in &self.items {
            let ok = match item {
                PruneItem::Vertex(id) => matches!(
                    h.resolve(id),
                    Some(Element::Vertex(_) | Element::AntiVertex(_))
                ),
                PruneItem::Hypersimplex(id) => {
                    matches!(h.resolve(id), Some(Element::Hypersimplex(_)))
                }
                PruneItem::Relation(symbol) => h
                    .elements_in_order()
                    .filter_map(Element::as_hypersimplex)
                    .any(|hs| hs.relation.symbol() == symbol),
                PruneItem::Boundary(id) => h.boundary(id).is_some(),
            };
            if !ok {
                return Err(OperatorError::UnknownSelector(item.to_string()));
            }
        }
        Ok(())
    }

    /// Resolves the items against a concrete hypernetwork. Items that match
    /// nothing contribute nothing.
    fn select(&self, h: &Hypernetwork) -> BTreeSet<ElementId> {
        let mut selected = BTreeSet::new();
        for item in &self.items {
            match item {
                PruneItem::Vertex(id) => {
                    if matches!(
                        h.resolve(id),
                        Some(Element::Vertex(_) | Element::AntiVertex(_))
                    ) {
                        selected.insert(id.clone());
                    }
                }
                PruneItem::Hypersimplex(id) => {
                    if matches!(h.resolve(id), Some(Element::Hypersimplex(_))) {
                        selected.insert(id.clone());
                    }
                }
                PruneItem::Relation(symbol) => selected.extend(
                    h.elements_in_order()
                        .filter_map(Element::as_hypersimplex)
                        .filter(|hs| hs.relation.symbol() == symbol)
                        .map(|hs| hs.id.clone()),
                ),
                PruneItem::Boundary(b) => selected.extend(
                    h.elements_in_order()
                        .filter(|e| e.tags().contains(b))
                        .map(|e| e.id().clone()),
                ),
            }
        }
        selected
    }
}

/// Removes the selected elements from `h` and repairs the remainder.
///
/// Occurrences of a selected element in surviving hypersimplices are
/// replaced by its anti-vertex in the same role position, creating the
/// untagged marker on demand; exclusion stays explicit rather than becoming
/// absence. Pruning an anti-vertex deletes it outright (there is no marker
/// for a marker), leaving its role dangling.
///
/// After deletion the result is swept to a fixpoint: hypersimplices that
/// are no longer well-formed (a dangling role, for instance) are deleted,
/// and elements that had a container before the prune but none after it
/// are deleted along with markers whose last holder disappeared. Elements
/// that were top-level to begin with always survive, and so do
/// anti-vertices that predate the prune: an exclusion is an assertion, not
/// structure, so losing its holders does not retract it. The boundary
/// registry is kept whole.
///
/// The operator is total: selector items that resolve to nothing select
/// nothing. Callers that want those to fail run
/// [`PruneSelector::check_resolvable`] first.
pub fn prune(h: &Hypernetwork, selector: &PruneSelector) -> Result<Hypernetwork, OperatorError> {
    let selected = selector.select(h);
    let mut out = h.clone();
    let was_contained: BTreeSet<ElementId> = out
        .element_ids()
        .filter(|id| !out.containers_of(id).is_empty())
        .cloned()
        .collect();

    let mut rewrites: Vec<Hypersimplex> = Vec::new();
    let mut needed_markers: Vec<ElementId> = Vec::new();
    for e in out.elements_in_order() {
        let Some(hs) = e.as_hypersimplex() else {
            continue;
        };
        if selected.contains(&hs.id)
            || !hs.participants.iter().any(|p| selected.contains(p) && !p.is_anti())
        {
            continue;
        }
        let mut next = hs.clone();
        for p in &mut next.participants {
            if selected.contains(p) && !p.is_anti() {
                *p = p.to_anti();
                if !needed_markers.contains(p) {
                    needed_markers.push(p.clone());
                }
            }
        }
        rewrites.push(next);
    }
    let mut created: BTreeSet<ElementId> = BTreeSet::new();
    for marker in needed_markers {
        if out.resolve(&marker).is_none() {
            let plain = marker.strip_anti().expect("markers derive from plain identifiers");
            out.put_new(
                AntiVertex::excluding(plain)
                    .expect("markers exclude plain identifiers")
                    .into(),
            );
            created.insert(marker);
        }
    }
    for hs in rewrites {
        out.replace(hs.into());
    }

    for id in &selected {
        out.remove(id);
    }

    loop {
        let mut doomed: Vec<ElementId> = out
            .elements_in_order()
            .filter_map(Element::as_hypersimplex)
            .filter(|hs| !wellformed(hs, &out))
            .map(|hs| hs.id.clone())
            .collect();
        if doomed.is_empty() {
            doomed = out
                .elements_in_order()
                .filter(|e| {
                    let collectable = match e {
                        // An exclusion that predates the prune is an
                        // assertion in its own right, not scaffolding; it
                        // stands even with no holder left.
                        Element::AntiVertex(_) => created.contains(e.id()),
                        _ => was_contained.contains(e.id()) || created.contains(e.id()),
                    };
                    collectable && out.containers_of(e.id()).is_empty()
                })
                .map(|e| e.id().clone())
                .collect();
        }
        if doomed.is_empty() {
            break;
        }
        for id in doomed {
            out.remove(&id);
        }
    }
    enforce_closure(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::validate;
    use crate::model::{AggregationType, Boundary, RelationSignature, Vertex};

    fn id(s: &str) -> ElementId {
        ElementId::new(s).unwrap()
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

    fn sel(items: &[&str]) -> PruneSelector {
        PruneSelector::parse_items(items.iter().copied()).unwrap()
    }

    fn crew_model() -> Hypernetwork {
        let mut h = Hypernetwork::new();
        for v in ["Pilot", "Gunner", "Loader"] {
            h.put_new(Vertex::new(id(v)).unwrap().into());
        }
        h.put_new(hs("Crew", AggregationType::Alpha, "R_crew", &["Pilot", "Gunner", "Loader"], &[]).into());
        h
    }

    #[test]
    fn selector_items_parse_and_render() {
        for text in ["v:Car", "hs:Crew", "rel:R_crew", "b:b_Ops"] {
            let item: PruneItem = text.parse().unwrap();
            assert_eq!(item.to_string(), text);
        }
        for bad in ["Car", "x:Car", "v:", "rel:", "rel:two words", ""] {
            assert!(matches!(
                bad.parse::<PruneItem>(),
                Err(OperatorError::InvalidSelector(_))
            ));
        }
    }

    #[test]
    fn empty_selector_is_identity() {
        let h = crew_model();
        assert_eq!(prune(&h, &PruneSelector::default()).unwrap(), h);
    }

    #[test]
    fn unresolvable_items_select_nothing() {
        let h = crew_model();
        let s = sel(&["v:Ghost", "hs:Pilot", "rel:R_none", "b:b_none"]);
        assert_eq!(prune(&h, &s).unwrap(), h);
        assert!(matches!(
            s.check_resolvable(&h),
            Err(OperatorError::UnknownSelector(item)) if item == "v:Ghost"
        ));
    }

    #[test]
    fn check_resolvable_accepts_matching_kinds() {
        let mut h = crew_model();
        h.register_boundary(Boundary::new(id("b_Ops"), false));
        sel(&["v:Pilot", "hs:Crew", "rel:R_crew", "b:b_Ops"])
            .check_resolvable(&h)
            .unwrap();
        // A vertex item naming a hypersimplex is a kind mismatch.
        assert!(sel(&["v:Crew"]).check_resolvable(&h).is_err());
    }

    #[test]
    fn pruned_vertex_leaves_marker_in_role_position() {
        let h = crew_model();
        let out = prune(&h, &sel(&["v:Gunner"])).unwrap();
        let Element::Hypersimplex(crew) = out.resolve(&id("Crew")).unwrap() else {
            panic!("expected hypersimplex");
        };
        assert_eq!(
            crew.participants,
            vec![id("Pilot"), id("~Gunner"), id("Loader")]
        );
        assert!(matches!(
            out.resolve(&id("~Gunner")),
            Some(Element::AntiVertex(a)) if a.excludes == id("Gunner") && a.tags.is_empty()
        ));
        assert!(out.resolve(&id("Gunner")).is_none());
        assert!(validate(&out).ok());
    }

    #[test]
    fn pruning_is_idempotent_over_markers() {
        let h = crew_model();
        let s = sel(&["v:Gunner"]);
        let once = prune(&h, &s).unwrap();
        assert_eq!(prune(&once, &s).unwrap(), once);
    }

    #[test]
    fn top_level_elements_survive_cascades() {
        let mut h = crew_model();
        h.put_new(Vertex::new(id("Depot")).unwrap().into());
        let out = prune(&h, &sel(&["hs:Crew"])).unwrap();
        // Crew's parts lost their only container and follow it out; the
        // free-standing vertex stays.
        assert!(out.resolve(&id("Depot")).is_some());
        assert!(out.resolve(&id("Crew")).is_none());
        assert!(out.resolve(&id("Pilot")).is_none());
        assert!(validate(&out).ok());
    }

    #[test]
    fn pruning_anti_vertex_cascades_through_dangling_role() {
        let mut h = Hypernetwork::new();
        h.put_new(Vertex::new(id("Pilot")).unwrap().into());
        h.put_new(AntiVertex::excluding(id("Gunner")).unwrap().into());
        h.put_new(hs("Crew", AggregationType::Alpha, "R_crew", &["Pilot", "~Gunner"], &[]).into());
        let out = prune(&h, &sel(&["v:~Gunner"])).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn relation_selector_removes_every_instance() {
        let mut h = crew_model();
        h.put_new(hs("Reserve", AggregationType::Beta, "R_crew", &["Pilot"], &[]).into());
        h.put_new(hs("Wing", AggregationType::Beta, "R_wing", &["Pilot"], &[]).into());
        let out = prune(&h, &sel(&["rel:R_crew"])).unwrap();
        assert!(out.resolve(&id("Crew")).is_none());
        assert!(out.resolve(&id("Reserve")).is_none());
        assert!(out.resolve(&id("Wing")).is_some());
        // Pilot keeps a surviving container, the other parts cascade out.
        assert!(out.resolve(&id("Pilot")).is_some());
        assert!(out.resolve(&id("Gunner")).is_none());
        assert!(validate(&out).ok());
    }

    #[test]
    fn boundary_selector_prunes_tagged_elements_and_keeps_registry() {
        let mut h = Hypernetwork::new();
        h.register_boundary(Boundary::new(id("b_Ops"), false));
        h.put_new(
            Vertex::with_tags(id("Pilot"), [id("b_Ops")].into_iter().collect())
                .unwrap()
                .into(),
        );
        h.put_new(Vertex::new(id("Depot")).unwrap().into());
        h.put_new(hs("Crew", AggregationType::Alpha, "R_crew", &["Pilot", "Depot"], &[]).into());
        let out = prune(&h, &sel(&["b:b_Ops"])).unwrap();
        let Element::Hypersimplex(crew) = out.resolve(&id("Crew")).unwrap() else {
            panic!("expected hypersimplex");
        };
        assert_eq!(crew.participants, vec![id("~Pilot"), id("Depot")]);
        assert!(out.boundary(&id("b_Ops")).is_some());
        assert!(validate(&out).ok());
    }

    #[test]
    fn pruned_container_takes_marker_and_exclusive_parts() {
        let mut h = Hypernetwork::new();
        for v in ["Engine", "Chassis"] {
            h.put_new(Vertex::new(id(v)).unwrap().into());
        }
        h.put_new(hs("Drive", AggregationType::Alpha, "R_drive", &["Engine"], &[]).into());
        h.put_new(hs("Car", AggregationType::Alpha, "R_car", &["Drive", "Chassis"], &[]).into());
        let out = prune(&h, &sel(&["hs:Drive"])).unwrap();
        let Element::Hypersimplex(car) = out.resolve(&id("Car")).unwrap() else {
            panic!("expected hypersimplex");
        };
        assert_eq!(car.participants, vec![id("~Drive"), id("Chassis")]);
        assert!(out.resolve(&id("Engine")).is_none());
        assert!(validate(&out).ok());
    }

    #[test]
    fn marker_follows_its_last_holder_out() {
        let mut h = Hypernetwork::new();
        h.put_new(Vertex::new(id("Engine")).unwrap().into());
        h.put_new(hs("Drive", AggregationType::Alpha, "R_drive", &["Engine"], &[]).into());
        h.put_new(hs("Car", AggregationType::Alpha, "R_car", &["Drive"], &[]).into());
        let out = prune(&h, &sel(&["v:Engine", "hs:Car"])).unwrap();
        // Drive gets the ~Engine marker but loses its only container, so
        // both it and the fresh marker disappear with it.
        assert!(out.is_empty());
    }

    #[test]
    fn existing_marker_is_reused() {
        let mut h = Hypernetwork::new();
        h.register_boundary(Boundary::new(id("b_Ops"), false));
        h.put_new(Vertex::new(id("Pilot")).unwrap().into());
        h.put_new(Vertex::new(id("Gunner")).unwrap().into());
        h.put_new(
            AntiVertex::with_tags(id("Gunner"), [id("b_Ops")].into_iter().collect())
                .unwrap()
                .into(),
        );
        h.put_new(hs("Crew", AggregationType::Alpha, "R_crew", &["Pilot", "Gunner"], &[]).into());
        h.put_new(hs("Watch", AggregationType::Alpha, "R_watch", &["~Gunner"], &[]).into());
        let out = prune(&h, &sel(&["v:Gunner"])).unwrap();
        let Some(Element::AntiVertex(marker)) = out.resolve(&id("~Gunner")) else {
            panic!("expected anti-vertex");
        };
        assert!(marker.tags.contains(&id("b_Ops")));
        let Element::Hypersimplex(crew) = out.resolve(&id("Crew")).unwrap() else {
            panic!("expected hypersimplex");
        };
        assert_eq!(crew.participants, vec![id("Pilot"), id("~Gunner")]);
        assert!(validate(&out).ok());
    }
}
