//! Core domain types.
//!
//! A hypernetwork is a registry of uniquely named elements together with a
//! boundary registry, the chronological insertion order, and an incidence
//! index mapping every referenced identifier to the hypersimplices that
//! contain it. Three element kinds exist:
//!
//! * [`Vertex`]: an atomic element.
//! * [`AntiVertex`]: an explicit exclusion marker for a named vertex,
//!   distinct from mere absence. Its identifier is always the excluded
//!   identifier prefixed with `~`.
//! * [`Hypersimplex`]: an ordered n-ary relational assembly binding
//!   participants under a relation signature, either as an ordered whole
//!   (alpha) or as a taxonomic alternative set (beta).
//!
//! All collections are ordered (`BTreeMap`/`BTreeSet`) so that every
//! traversal, and therefore every serialization, is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

/// Prefix reserved for anti-vertex identifiers.
pub const ANTI_PREFIX: char = '~';

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid identifier `{0}`: must be non-empty and contain no whitespace")]
    InvalidIdentifier(String),
    #[error("identifier `{0}` uses the reserved `~` prefix")]
    ReservedAntiPrefix(String),
    #[error("invalid relation signature `{symbol}`: {reason}")]
    InvalidSignature { symbol: String, reason: String },
    #[error("anti-vertex may only exclude a plain vertex identifier, got `{0}`")]
    AntiOfAnti(String),
    #[error("participant `{0}` does not resolve to a registered element")]
    DanglingReference(String),
}

/// Unique, totally ordered element identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(String);

impl ElementId {
    pub fn new(name: impl Into<String>) -> Result<Self, ModelError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(ModelError::InvalidIdentifier(name));
        }
        Ok(Self(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when the identifier carries the anti-vertex prefix.
    pub fn is_anti(&self) -> bool {
        self.0.starts_with(ANTI_PREFIX)
    }

    /// The anti-vertex identifier derived from this one (`X` becomes `~X`).
    pub fn to_anti(&self) -> ElementId {
        ElementId(format!("{}{}", ANTI_PREFIX, self.0))
    }

    /// Inverse of [`ElementId::to_anti`]: strips a single `~` prefix.
    pub fn strip_anti(&self) -> Option<ElementId> {
        self.0.strip_prefix(ANTI_PREFIX).map(|s| ElementId(s.to_string()))
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for ElementId {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ElementId::new(s)
    }
}

/// How a hypersimplex aggregates its participants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AggregationType {
    /// Ordered whole/part assembly; participant order is identity-relevant.
    Alpha,
    /// Taxonomic alternative set; participants compare as a set.
    Beta,
}

impl fmt::Display for AggregationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AggregationType::Alpha => f.write_str("alpha"),
            AggregationType::Beta => f.write_str("beta"),
        }
    }
}

/// A relation symbol with its ordered role list. The arity is the role count.
/// Two signatures are interchangeable only when symbol, arity and role order
/// all agree; a permuted role list is a different signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelationSignature {
    symbol: String,
    roles: Vec<String>,
}

impl RelationSignature {
    pub fn new(
        symbol: impl Into<String>,
        roles: Vec<String>,
    ) -> Result<Self, ModelError> {
        let symbol = symbol.into();
        if symbol.is_empty() || symbol.chars().any(char::is_whitespace) {
            return Err(ModelError::InvalidSignature {
                symbol,
                reason: "symbol must be non-empty without whitespace".into(),
            });
        }
        if roles.is_empty() {
            return Err(ModelError::InvalidSignature {
                symbol,
                reason: "arity must be at least one".into(),
            });
        }
        let mut seen = BTreeSet::new();
        for r in &roles {
            if r.is_empty() || r.chars().any(char::is_whitespace) {
                return Err(ModelError::InvalidSignature {
                    symbol,
                    reason: format!("role `{r}` must be non-empty without whitespace"),
                });
            }
            if !seen.insert(r.clone()) {
                return Err(ModelError::InvalidSignature {
                    symbol,
                    reason: format!("duplicate role `{r}`"),
                });
            }
        }
        Ok(Self { symbol, roles })
    }

    /// Signature with synthesized placeholder roles `r1..rn`.
    pub fn anonymous(symbol: impl Into<String>, arity: usize) -> Result<Self, ModelError> {
        let roles = (1..=arity).map(|i| format!("r{i}")).collect();
        Self::new(symbol, roles)
    }

    /// True when the role list is exactly the synthesized form `r1..rn`.
    pub fn has_anonymous_roles(&self) -> bool {
        self.roles
            .iter()
            .enumerate()
            .all(|(i, r)| *r == format!("r{}", i + 1))
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn roles(&self) -> &[String] {
        &self.roles
    }

    pub fn arity(&self) -> usize {
        self.roles.len()
    }

    /// Marker signature carried by conflict records. Conflict records have no
    /// participants of their own, so this signature is never arity-checked.
    pub(crate) fn conflict_marker() -> Self {
        Self {
            symbol: "SameName".to_string(),
            roles: vec!["left".to_string(), "right".to_string()],
        }
    }
}

/// Named scope with a percolation flag. Tags on elements must name a
/// registered boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    pub id: ElementId,
    pub percolating: bool,
}

impl Boundary {
    pub fn new(id: ElementId, percolating: bool) -> Self {
        Self { id, percolating }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: ElementId,
    pub tags: BTreeSet<ElementId>,
}

impl Vertex {
    pub fn new(id: ElementId) -> Result<Self, ModelError> {
        if id.is_anti() {
            return Err(ModelError::ReservedAntiPrefix(id.as_str().into()));
        }
        Ok(Self { id, tags: BTreeSet::new() })
    }

    pub fn with_tags(id: ElementId, tags: BTreeSet<ElementId>) -> Result<Self, ModelError> {
        let mut v = Self::new(id)?;
        v.tags = tags;
        Ok(v)
    }
}

/// Explicit exclusion of a named vertex. The identifier is always derived
/// from the excluded identifier, so the pair can never drift apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiVertex {
    pub id: ElementId,
    pub excludes: ElementId,
    pub tags: BTreeSet<ElementId>,
}

impl AntiVertex {
    pub fn excluding(excludes: ElementId) -> Result<Self, ModelError> {
        if excludes.is_anti() {
            return Err(ModelError::AntiOfAnti(excludes.as_str().into()));
        }
        let id = excludes.to_anti();
        Ok(Self { id, excludes, tags: BTreeSet::new() })
    }

    pub fn with_tags(excludes: ElementId, tags: BTreeSet<ElementId>) -> Result<Self, ModelError> {
        let mut a = Self::excluding(excludes)?;
        a.tags = tags;
        Ok(a)
    }
}

/// Deterministic record of an identifier claimed by two incompatible
/// elements. Both snapshots are kept verbatim; the record itself has no
/// participants and is opaque to every operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictMarker {
    pub left: Box<Element>,
    pub right: Box<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypersimplex {
    pub id: ElementId,
    pub agg: AggregationType,
    pub relation: RelationSignature,
    /// Ordered participant references. May name vertices, anti-vertices or
    /// other hypersimplices. Length must equal the signature arity for a
    /// well-formed element; the validator reports mismatches.
    pub participants: Vec<ElementId>,
    pub tags: BTreeSet<ElementId>,
    pub conflict: Option<ConflictMarker>,
}

impl Hypersimplex {
    pub fn new(
        id: ElementId,
        agg: AggregationType,
        relation: RelationSignature,
        participants: Vec<ElementId>,
        tags: BTreeSet<ElementId>,
    ) -> Result<Self, ModelError> {
        if id.is_anti() {
            return Err(ModelError::ReservedAntiPrefix(id.as_str().into()));
        }
        Ok(Self { id, agg, relation, participants, tags, conflict: None })
    }

    /// Builds a name-clash record over two snapshots. Tags are the union of
    /// both snapshots' tags so no scope information is silently dropped.
    pub fn name_clash(id: ElementId, left: Element, right: Element) -> Self {
        let mut tags = left.tags().clone();
        tags.extend(right.tags().iter().cloned());
        Self {
            id,
            agg: AggregationType::Alpha,
            relation: RelationSignature::conflict_marker(),
            participants: Vec::new(),
            tags,
            conflict: Some(ConflictMarker { left: Box::new(left), right: Box::new(right) }),
        }
    }

    pub fn is_conflict(&self) -> bool {
        self.conflict.is_some()
    }

    /// Participant identifiers as a set; the comparison domain for beta
    /// aggregation.
    pub fn participant_set(&self) -> BTreeSet<&ElementId> {
        self.participants.iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Vertex(Vertex),
    AntiVertex(AntiVertex),
    Hypersimplex(Hypersimplex),
}

impl Element {
    pub fn id(&self) -> &ElementId {
        match self {
            Element::Vertex(v) => &v.id,
            Element::AntiVertex(a) => &a.id,
            Element::Hypersimplex(h) => &h.id,
        }
    }

    pub fn tags(&self) -> &BTreeSet<ElementId> {
        match self {
            Element::Vertex(v) => &v.tags,
            Element::AntiVertex(a) => &a.tags,
            Element::Hypersimplex(h) => &h.tags,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Element::Vertex(_) => "vertex",
            Element::AntiVertex(_) => "anti-vertex",
            Element::Hypersimplex(h) if h.is_conflict() => "conflict",
            Element::Hypersimplex(_) => "hypersimplex",
        }
    }

    pub fn as_hypersimplex(&self) -> Option<&Hypersimplex> {
        match self {
            Element::Hypersimplex(h) => Some(h),
            _ => None,
        }
    }

    /// Participant references, empty for atomic elements.
    pub fn participants(&self) -> &[ElementId] {
        match self {
            Element::Hypersimplex(h) => &h.participants,
            _ => &[],
        }
    }
}

impl From<Vertex> for Element {
    fn from(v: Vertex) -> Self {
        Element::Vertex(v)
    }
}
impl From<AntiVertex> for Element {
    fn from(a: AntiVertex) -> Self {
        Element::AntiVertex(a)
    }
}
impl From<Hypersimplex> for Element {
    fn from(h: Hypersimplex) -> Self {
        Element::Hypersimplex(h)
    }
}

/// Outcome of registering a boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryOutcome {
    Registered,
    AlreadyRegistered,
    /// Same id was already registered with the other percolation flag; the
    /// first registration wins.
    PercolationMismatch,
}

static EMPTY_CONTAINERS: BTreeSet<ElementId> = BTreeSet::new();

/// The model container. Operators treat hypernetworks as values: they take
/// references and return fresh instances, never mutating their operands.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hypernetwork {
    elements: BTreeMap<ElementId, Element>,
    boundaries: BTreeMap<ElementId, Boundary>,
    insertion_order: Vec<ElementId>,
    /// For every referenced identifier, the hypersimplices that list it as a
    /// participant. Keys with no remaining containers are removed, and a key
    /// may name an identifier that is not (or no longer) registered.
    part_of: BTreeMap<ElementId, BTreeSet<ElementId>>,
}

impl Hypernetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register_boundary(&mut self, boundary: Boundary) -> BoundaryOutcome {
        match self.boundaries.get(&boundary.id) {
            None => {
                self.boundaries.insert(boundary.id.clone(), boundary);
                BoundaryOutcome::Registered
            }
            Some(existing) if existing.percolating == boundary.percolating => {
                BoundaryOutcome::AlreadyRegistered
            }
            Some(_) => BoundaryOutcome::PercolationMismatch,
        }
    }

    pub fn boundary(&self, id: &ElementId) -> Option<&Boundary> {
        self.boundaries.get(id)
    }

    pub fn boundaries(&self) -> impl Iterator<Item = &Boundary> {
        self.boundaries.values()
    }

    pub fn boundary_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Looks an identifier up in the element registry. Absence is a value:
    /// `None` simply means the identifier is not asserted here.
    pub fn resolve(&self, id: &ElementId) -> Option<&Element> {
        self.elements.get(id)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in chronological insertion order.
    pub fn elements_in_order(&self) -> impl Iterator<Item = &Element> {
        self.insertion_order.iter().filter_map(|id| self.elements.get(id))
    }

    /// Elements sorted by identifier.
    pub fn elements_sorted(&self) -> impl Iterator<Item = &Element> {
        self.elements.values()
    }

    pub fn element_ids(&self) -> impl Iterator<Item = &ElementId> {
        self.elements.keys()
    }

    pub fn insertion_order(&self) -> &[ElementId] {
        &self.insertion_order
    }

    /// Hypersimplices that list `id` as a participant.
    pub fn containers_of(&self, id: &ElementId) -> &BTreeSet<ElementId> {
        self.part_of.get(id).unwrap_or(&EMPTY_CONTAINERS)
    }

    pub(crate) fn part_of_index(&self) -> &BTreeMap<ElementId, BTreeSet<ElementId>> {
        &self.part_of
    }

    /// Recomputes the incidence index from participant slots. Returns a new
    /// hypernetwork whose index is the exact inverse of the participant
    /// relation, or an error naming the first unresolved participant.
    /// Applying it twice yields the same result as applying it once.
    pub fn rebuild_part_of_index(&self) -> Result<Self, ModelError> {
        let mut index: BTreeMap<ElementId, BTreeSet<ElementId>> = BTreeMap::new();
        for e in self.elements.values() {
            for p in e.participants() {
                if !self.elements.contains_key(p) {
                    return Err(ModelError::DanglingReference(p.as_str().into()));
                }
                index.entry(p.clone()).or_default().insert(e.id().clone());
            }
        }
        let mut out = self.clone();
        out.part_of = index;
        Ok(out)
    }

    pub(crate) fn computed_part_of(&self) -> BTreeMap<ElementId, BTreeSet<ElementId>> {
        let mut index: BTreeMap<ElementId, BTreeSet<ElementId>> = BTreeMap::new();
        for e in self.elements.values() {
            for p in e.participants() {
                index.entry(p.clone()).or_default().insert(e.id().clone());
            }
        }
        index
    }

    /// Appends a fresh element. Panics if the identifier is already taken;
    /// callers route collisions through the composition rules instead.
    pub(crate) fn put_new(&mut self, element: Element) {
        let id = element.id().clone();
        assert!(
            !self.elements.contains_key(&id),
            "put_new on occupied id {id}"
        );
        self.link_participants(&element);
        self.insertion_order.push(id.clone());
        self.elements.insert(id, element);
    }

    /// Replaces the element registered under the same identifier, keeping its
    /// insertion position and re-deriving its outgoing incidence links.
    pub(crate) fn replace(&mut self, element: Element) {
        let id = element.id().clone();
        let old = self
            .elements
            .remove(&id)
            .unwrap_or_else(|| panic!("replace on vacant id {id}"));
        self.unlink_participants(&old);
        self.link_participants(&element);
        self.elements.insert(id, element);
    }

    /// Removes an element and its outgoing incidence links. Incoming links
    /// (containers that still reference the identifier) are left in place;
    /// they describe the containers' slots, not the removed element.
    pub(crate) fn remove(&mut self, id: &ElementId) -> Option<Element> {
        let old = self.elements.remove(id)?;
        self.unlink_participants(&old);
        self.insertion_order.retain(|x| x != id);
        Some(old)
    }

    fn link_participants(&mut self, element: &Element) {
        let id = element.id().clone();
        for p in element.participants() {
            self.part_of.entry(p.clone()).or_default().insert(id.clone());
        }
    }

    fn unlink_participants(&mut self, element: &Element) {
        let id = element.id();
        for p in element.participants() {
            if let Some(set) = self.part_of.get_mut(p) {
                set.remove(id);
                if set.is_empty() {
                    self.part_of.remove(p);
                }
            }
        }
    }
}
