//! Seeded model generation and independent oracles.
//!
//! [`gen_valid`] produces a valid hypernetwork as a pure function of its
//! configuration, drawing identifiers and relation symbols from small fixed
//! pools so that independently generated models collide on names. Collisions
//! are deliberate: they drive the composition rules through their
//! conflict-handling rows, which random disjoint names would never reach.
//!
//! The two oracles answer questions the operators also answer, but by a
//! different route: plain set arithmetic over identifiers for flat models,
//! and exhaustive element matching for containment. The law suites compare
//! operator output against oracle output, so agreement is evidence of
//! correctness rather than the same code agreeing with itself.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{
    AggregationType, AntiVertex, Boundary, Element, ElementId, Hypernetwork, Hypersimplex,
    RelationSignature, Vertex,
};

/// Identifier pool shared by every generated model. Small on purpose; see
/// the module notes.
const NAME_POOL_BASE: usize = 24;
/// Relation symbols shared by every generated model.
const SYMBOL_POOL: [&str; 4] = ["R_link", "R_group", "R_flow", "R_kind"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TestkitError {
    #[error("operand is not flat: `{0}` is a hypersimplex")]
    OperandNotFlat(ElementId),
    #[error("operand exceeds the exhaustive bound of {MAX_EXHAUSTIVE} elements")]
    TooLarge,
}

/// Maximum operand size [`oracle_subhn`] will check exhaustively.
pub const MAX_EXHAUSTIVE: usize = 8;

/// Generation limits and biases. Generation is a pure function of the whole
/// configuration; equal configurations give byte-identical models.
#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub max_vertices: usize,
    pub max_hypersimplices: usize,
    pub max_arity: usize,
    pub max_boundaries: usize,
    /// Probability that a generated hypersimplex aggregates conjunctively.
    pub alpha_beta_ratio: f64,
    /// Probability that a generated boundary percolates.
    pub percolation_probability: f64,
    pub seed: u64,
}

impl GenConfig {
    /// Limits sized for law sweeps: at most 20 elements per model.
    pub fn small(seed: u64) -> Self {
        Self {
            max_vertices: 8,
            max_hypersimplices: 6,
            max_arity: 4,
            max_boundaries: 3,
            alpha_beta_ratio: 0.6,
            percolation_probability: 0.5,
            seed,
        }
    }
}

impl Default for GenConfig {
    fn default() -> Self {
        Self::small(0)
    }
}

/// Generates a valid hypernetwork.
///
/// The model always passes [`crate::axioms::validate`]. Hypersimplices may
/// take earlier hypersimplices as participants, so nesting occurs; a few
/// anti-vertices appear; boundaries draw their percolation flag from the
/// configured probability. Elements tagged into a non-percolating boundary
/// pull that tag onto their transitive participants, keeping every scope
/// extraction reference-closed.
pub fn gen_valid(cfg: &GenConfig) -> Hypernetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    // Name pool, shuffled per seed so each model picks a different subset.
    let pool_size = NAME_POOL_BASE.max(cfg.max_vertices + cfg.max_hypersimplices + 8);
    let mut names: Vec<ElementId> = (0..pool_size)
        .map(|i| ElementId::new(format!("E{i}")).expect("pool names are plain identifiers"))
        .collect();
    names.shuffle(&mut rng);
    let mut next_name = names.into_iter();

    let n_boundaries = if cfg.max_boundaries == 0 { 0 } else { rng.gen_range(0..=cfg.max_boundaries) };
    let boundaries: Vec<Boundary> = (1..=n_boundaries)
        .map(|i| {
            Boundary::new(
                ElementId::new(format!("b_{i}")).expect("boundary names are plain identifiers"),
                rng.gen_bool(cfg.percolation_probability.clamp(0.0, 1.0)),
            )
        })
        .collect();

    let pick_tags = |rng: &mut ChaCha8Rng| -> BTreeSet<ElementId> {
        boundaries
            .iter()
            .filter(|_| rng.gen_bool(0.35))
            .map(|b| b.id.clone())
            .collect()
    };

    // Plan atoms first, then hypersimplices over earlier elements only, so
    // the reference structure is acyclic by construction.
    let n_vertices = if cfg.max_vertices == 0 { 0 } else { rng.gen_range(1..=cfg.max_vertices) };
    let mut tag_plan: BTreeMap<ElementId, BTreeSet<ElementId>> = BTreeMap::new();
    let mut vertex_ids: Vec<ElementId> = Vec::new();
    for _ in 0..n_vertices {
        let id = next_name.next().expect("pool is sized for the configured maxima");
        tag_plan.insert(id.clone(), pick_tags(&mut rng));
        vertex_ids.push(id);
    }

    let mut anti_ids: Vec<ElementId> = Vec::new();
    if !vertex_ids.is_empty() {
        for _ in 0..rng.gen_range(0..=2usize) {
            // Exclude either a present vertex or an absent name; both are
            // legitimate, and the mix exercises containment's marker rule.
            let excludes = if rng.gen_bool(0.5) {
                vertex_ids.choose(&mut rng).expect("vertex list is non-empty").clone()
            } else {
                next_name.next().expect("pool is sized for the configured maxima")
            };
            let anti_id = excludes.to_anti();
            if tag_plan.contains_key(&anti_id) {
                continue;
            }
            let tags = if rng.gen_bool(0.5) { pick_tags(&mut rng) } else { BTreeSet::new() };
            tag_plan.insert(anti_id.clone(), tags);
            anti_ids.push(anti_id);
        }
    }

    struct PlannedHs {
        id: ElementId,
        agg: AggregationType,
        signature: RelationSignature,
        participants: Vec<ElementId>,
    }

    let mut planned: Vec<PlannedHs> = Vec::new();
    let n_hs = if cfg.max_hypersimplices == 0 { 0 } else { rng.gen_range(0..=cfg.max_hypersimplices) };
    for _ in 0..n_hs {
        let mut candidates: Vec<ElementId> = vertex_ids
            .iter()
            .chain(anti_ids.iter())
            .chain(planned.iter().map(|p| &p.id))
            .cloned()
            .collect();
        if candidates.is_empty() {
            break;
        }
        candidates.shuffle(&mut rng);
        let arity = rng.gen_range(1..=cfg.max_arity.max(1)).min(candidates.len());
        let participants: Vec<ElementId> = candidates.into_iter().take(arity).collect();
        let symbol = *SYMBOL_POOL.choose(&mut rng).expect("symbol pool is non-empty");
        let signature = if rng.gen_bool(0.3) {
            let roles = (1..=arity).map(|i| format!("x{i}")).collect();
            RelationSignature::new(symbol, roles).expect("generated roles are distinct")
        } else {
            RelationSignature::anonymous(symbol, arity).expect("arity is at least one")
        };
        let agg = if rng.gen_bool(cfg.alpha_beta_ratio.clamp(0.0, 1.0)) {
            AggregationType::Alpha
        } else {
            AggregationType::Beta
        };
        let id = next_name.next().expect("pool is sized for the configured maxima");
        tag_plan.insert(id.clone(), pick_tags(&mut rng));
        planned.push(PlannedHs { id, agg, signature, participants });
    }

    // Non-percolating scopes must already contain everything their tagged
    // hypersimplices reach; percolating scopes reach it at extraction time.
    for b in boundaries.iter().filter(|b| !b.percolating) {
        loop {
            let mut grew = false;
            for hs in &planned {
                if !tag_plan[&hs.id].contains(&b.id) {
                    continue;
                }
                for p in &hs.participants {
                    if tag_plan.get_mut(p).expect("participants are planned").insert(b.id.clone())
                    {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }

    let mut h = Hypernetwork::new();
    for b in boundaries {
        h.register_boundary(b);
    }
    for id in &vertex_ids {
        let v = Vertex::with_tags(id.clone(), tag_plan[id].clone())
            .expect("pool names are plain identifiers");
        crate::algebra::insert_into(&mut h, v.into()).expect("planned tags are registered");
    }
    for id in &anti_ids {
        let excludes = id.strip_anti().expect("anti ids carry the marker prefix");
        let a = AntiVertex::with_tags(excludes, tag_plan[id].clone())
            .expect("pool names are plain identifiers");
        crate::algebra::insert_into(&mut h, a.into()).expect("planned tags are registered");
    }
    for p in planned {
        let hs = Hypersimplex::new(
            p.id.clone(),
            p.agg,
            p.signature,
            p.participants,
            tag_plan[&p.id].clone(),
        )
        .expect("pool names are plain identifiers");
        crate::algebra::insert_into(&mut h, hs.into()).expect("planned tags are registered");
    }
    h
}

/// Generates a flat model: untagged vertices and anti-vertices only, no
/// boundaries. On flat models the composition operators degenerate to set
/// operations over identifiers, which is what [`oracle_set_ops`] computes.
pub fn gen_flat(cfg: &GenConfig) -> Hypernetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool_size = NAME_POOL_BASE.max(cfg.max_vertices + 8);
    let mut names: Vec<ElementId> = (0..pool_size)
        .map(|i| ElementId::new(format!("E{i}")).expect("pool names are plain identifiers"))
        .collect();
    names.shuffle(&mut rng);

    let mut h = Hypernetwork::new();
    let n = if cfg.max_vertices == 0 { 0 } else { rng.gen_range(0..=cfg.max_vertices) };
    for id in names.into_iter().take(n) {
        let element: Element = if rng.gen_bool(0.15) {
            AntiVertex::excluding(id).expect("pool names are plain identifiers").into()
        } else {
            Vertex::new(id).expect("pool names are plain identifiers").into()
        };
        crate::algebra::insert_into(&mut h, element).expect("flat elements carry no tags");
    }
    h
}

/// Plain set arithmetic over the identifier sets of two flat models.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetOps {
    pub union: BTreeSet<ElementId>,
    pub intersection: BTreeSet<ElementId>,
    pub difference: BTreeSet<ElementId>,
}

/// Computes union, intersection and left difference of the identifier sets.
/// Refuses operands containing hypersimplices; on flat models these sets
/// are exactly what merge, meet and difference must produce.
pub fn oracle_set_ops(h1: &Hypernetwork, h2: &Hypernetwork) -> Result<SetOps, TestkitError> {
    for h in [h1, h2] {
        if let Some(hs) = h.elements_in_order().find(|e| matches!(e, Element::Hypersimplex(_))) {
            return Err(TestkitError::OperandNotFlat(hs.id().clone()));
        }
    }
    let a: BTreeSet<ElementId> = h1.element_ids().cloned().collect();
    let b: BTreeSet<ElementId> = h2.element_ids().cloned().collect();
    Ok(SetOps {
        union: a.union(&b).cloned().collect(),
        intersection: a.intersection(&b).cloned().collect(),
        difference: a.difference(&b).cloned().collect(),
    })
}

/// Exhaustive containment check, written without the comparison helpers the
/// algebra uses. Every element of `small` must be covered by some element
/// of `big`: same identifier and kind with matching typing, relation and
/// tags (participant lists excluded), except that an untagged exclusion
/// marker is also covered by the bare presence of the element it excludes.
pub fn oracle_subhn(small: &Hypernetwork, big: &Hypernetwork) -> Result<bool, TestkitError> {
    if small.len() > MAX_EXHAUSTIVE || big.len() > MAX_EXHAUSTIVE {
        return Err(TestkitError::TooLarge);
    }
    Ok(small
        .elements_in_order()
        .all(|e| big.elements_in_order().any(|candidate| covers(candidate, e))))
}

fn covers(candidate: &Element, e: &Element) -> bool {
    match (e, candidate) {
        (Element::Vertex(small), Element::Vertex(big)) => {
            small.id == big.id && small.tags == big.tags
        }
        (Element::AntiVertex(small), Element::AntiVertex(big))
            if small.id == big.id && small.tags == big.tags =>
        {
            true
        }
        (Element::AntiVertex(small), other) if small.tags.is_empty() => {
            *other.id() == small.excludes
        }
        (Element::Hypersimplex(small), Element::Hypersimplex(big)) => {
            if small.is_conflict() || big.is_conflict() {
                small == big
            } else {
                small.id == big.id
                    && small.agg == big.agg
                    && small.relation == big.relation
                    && small.tags == big.tags
            }
        }
        _ => false,
    }
}
