//! Acceptance gate for the toolkit: nine checks covering the emergency
//! corpus, the vehicle micro-examples, the algebraic law sweep, oracle
//! agreement, conflict handling and round-trip stability. Each check
//! prints one `[PASS]`/`[FAIL]` line (visible under `--nocapture`).

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use hypernet::algebra::{
    difference, insert_traced, meet, merge, prune, split, InsertOutcome, PruneSelector,
    SplitCriterion,
};
use hypernet::axioms::{eq_element, is_sub_hypernetwork};
use hypernet::model::{AggregationType, Hypersimplex, RelationSignature};
use hypernet::notation::{canonical, load};
use hypernet::testkit::{gen_flat, gen_valid, oracle_set_ops, oracle_subhn, GenConfig};
use hypernet::{validate, Element, ElementId, Hypernetwork};

fn check(n: u32, desc: &str, f: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(()) => println!("[PASS] criterion {n}: {desc}"),
        Err(cause) => {
            println!("[FAIL] criterion {n}: {desc}");
            resume_unwind(cause);
        }
    }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    fs::read_to_string(data(name)).expect("golden file readable")
}

fn hn(args: &[&str]) -> (Output, Duration) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hn"));
    for a in args {
        if let Some(name) = a.strip_prefix("data:") {
            cmd.arg(data(name));
        } else {
            cmd.arg(a);
        }
    }
    let started = Instant::now();
    let out = cmd.output().expect("binary runs");
    (out, started.elapsed())
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn id(name: &str) -> ElementId {
    ElementId::new(name).expect("valid identifier")
}

fn load_ok(text: &str) -> Hypernetwork {
    let (h, report) = load(text).expect("parses");
    assert!(report.ok(), "clean build:\n{report}");
    h
}

/// Identifiers of the element statements in a rendered document, without
/// rebuilding the model (a rebuild would repair open references).
fn statement_ids(text: &str) -> BTreeSet<String> {
    text.lines()
        .filter_map(|line| {
            let mut words = line.split_whitespace();
            match words.next() {
                Some("vertex" | "anti" | "alpha" | "beta" | "conflict") => {
                    words.next().map(str::to_string)
                }
                _ => None,
            }
        })
        .collect()
}

fn names(ids: &[&str]) -> BTreeSet<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

#[test]
fn criterion_1_merge_reproduces_the_combined_incident_model() {
    check(1, "merge ops.hn clinical.hn matches the combined golden file", || {
        let (out, took) = hn(&["merge", "data:ops.hn", "data:clinical.hn", "-"]);
        let text = stdout(&out);
        assert_eq!(text, golden("merged.hn"), "canonical output matches the golden file");
        assert!(took < Duration::from_secs(1), "took {took:?}");

        let h = load_ok(&text);
        let assemblies: BTreeSet<String> = h
            .elements_in_order()
            .filter_map(|e| match e {
                Element::Hypersimplex(hs) => {
                    assert!(!hs.is_conflict(), "{} stays clean", hs.id);
                    Some(hs.id.to_string())
                }
                _ => None,
            })
            .collect();
        assert_eq!(assemblies, names(&["IncidentA", "TeamBlue", "TriageTent", "PatientClass"]));
        let vertices = h
            .elements_in_order()
            .filter(|e| matches!(e, Element::Vertex(_)))
            .count();
        assert_eq!(vertices, 13, "the four assemblies bring thirteen vertices");
        assert!(validate(&h).ok());
    });
}

#[test]
fn criterion_2_medical_boundary_projection_is_exact() {
    check(2, "split emergency.hn --boundary b_Medical extracts the listed set", || {
        let (out, took) = hn(&["split", "data:emergency.hn", "--boundary", "b_Medical"]);
        let text = stdout(&out);
        assert_eq!(text, golden("medical.hn"), "canonical output matches the golden file");
        assert!(took < Duration::from_secs(1), "took {took:?}");
        assert_eq!(
            statement_ids(&text),
            names(&[
                "Medic1",
                "Medic2",
                "Casualties",
                "HospitalX",
                "TriageTent",
                "TeamBlue",
                "IncidentA"
            ]),
            "exactly the seven tagged elements, nothing pulled in or dropped"
        );
    });
}

#[test]
fn criterion_3_standing_down_a_unit_leaves_a_marker_in_place() {
    check(3, "prune merged.hn --drop v:UnitRed rewrites the role in place", || {
        let (out, _) = hn(&["prune", "data:merged.hn", "--drop", "v:UnitRed"]);
        let text = stdout(&out);
        assert_eq!(text, golden("pruned.hn"), "canonical output matches the golden file");

        let pruned = load_ok(&text);
        let incident = match pruned.resolve(&id("IncidentA")) {
            Some(Element::Hypersimplex(hs)) => hs,
            other => panic!("IncidentA survives as an assembly, got {other:?}"),
        };
        let want: Vec<ElementId> =
            ["Commander", "UnitBlue", "~UnitRed", "Casualties", "HospitalX", "Status"]
                .iter()
                .map(|s| id(s))
                .collect();
        assert_eq!(incident.participants, want, "the marker sits in the original slot");
        assert!(pruned.resolve(&id("UnitRed")).is_none(), "the vertex itself is gone");
        assert!(
            matches!(pruned.resolve(&id("~UnitRed")), Some(Element::AntiVertex(a)) if a.excludes == id("UnitRed")),
            "the exclusion marker is a first-class element"
        );

        let merged = load_ok(&golden("merged.hn"));
        for e in merged.elements_in_order() {
            if e.id() == &id("UnitRed") || e.id() == &id("IncidentA") {
                continue;
            }
            let kept = pruned.resolve(e.id()).expect("every other element survives");
            assert!(eq_element(e, kept), "{} is untouched", e.id());
        }
    });
}

#[test]
fn criterion_4_vehicle_micro_examples_are_exact() {
    check(4, "meet and difference of the vehicle taxonomies match exactly", || {
        let (met, _) = hn(&["meet", "data:car_van.hn", "data:car_truck.hn", "-"]);
        let met_text = stdout(&met);
        assert_eq!(met_text, golden("meet_vehicle.hn"));
        let (diffed, _) = hn(&["diff", "data:car_van.hn", "data:car_only.hn", "-"]);
        let diff_text = stdout(&diffed);
        assert_eq!(diff_text, golden("diff_vehicle.hn"));

        let shared = load_ok(&met_text);
        let only = load_ok(&diff_text);
        let participants = |h: &Hypernetwork| match h.resolve(&id("VehicleType")) {
            Some(Element::Hypersimplex(hs)) => hs.participants.clone(),
            other => panic!("VehicleType survives, got {other:?}"),
        };
        assert_eq!(participants(&shared), vec![id("Car")]);
        assert_eq!(participants(&only), vec![id("Van")]);
    });
}

fn element_items(h: &Hypernetwork) -> Vec<String> {
    let mut items = Vec::new();
    let vertex = h.elements_in_order().find_map(|e| match e {
        Element::Vertex(v) => Some(v.id.clone()),
        _ => None,
    });
    if let Some(v) = vertex {
        items.push(format!("v:{v}"));
    }
    let assembly = h
        .elements_in_order()
        .filter_map(|e| match e {
            Element::Hypersimplex(hs) if !hs.is_conflict() => Some(hs.id.clone()),
            _ => None,
        })
        .last();
    if let Some(a) = assembly {
        items.push(format!("hs:{a}"));
    }
    items
}

fn selector(items: &[String]) -> PruneSelector {
    PruneSelector::parse_items(items.iter().map(String::as_str)).expect("well-formed items")
}

#[test]
fn criterion_5_algebraic_laws_hold_across_the_seed_sweep() {
    check(5, "law sweep over 200 seeded models finishes clean inside a minute", || {
        let started = Instant::now();
        let empty = Hypernetwork::new();
        for seed in 0..200u64 {
            let h = gen_valid(&GenConfig::small(seed));
            let g = gen_valid(&GenConfig::small(seed + 10_000));
            let text = canonical(&h);

            let merged = merge(&h, &g).unwrap();
            let met = meet(&h, &g).unwrap();
            let diffed = difference(&h, &g).unwrap();
            for (op, out) in [("merge", &merged), ("meet", &met), ("difference", &diffed)] {
                assert!(validate(out).ok(), "{op} closure, seed {seed}");
            }

            let items = element_items(&h);
            let pruned = prune(&h, &selector(&items)).unwrap();
            assert!(validate(&pruned).ok(), "prune closure, seed {seed}");

            let criterion = match h.boundaries().next() {
                Some(b) => SplitCriterion::Boundary(b.id.clone()),
                None => SplitCriterion::Universal,
            };
            let projection = split(&h, &criterion).unwrap();
            assert!(validate(&projection).ok(), "split closure, seed {seed}");

            assert_eq!(canonical(&merge(&h, &h).unwrap()), text, "merge idempotent, seed {seed}");
            assert_eq!(canonical(&meet(&h, &h).unwrap()), text, "meet idempotent, seed {seed}");
            assert_eq!(
                canonical(&prune(&pruned, &selector(&items)).unwrap()),
                canonical(&pruned),
                "prune idempotent, seed {seed}"
            );
            assert_eq!(
                canonical(&split(&projection, &criterion).unwrap()),
                canonical(&projection),
                "split idempotent, seed {seed}"
            );

            assert_eq!(merge(&h, &empty).unwrap(), h, "merge right identity, seed {seed}");
            assert_eq!(canonical(&merge(&empty, &h).unwrap()), text, "merge left identity, seed {seed}");
            assert_eq!(canonical(&meet(&h, &empty).unwrap()), "", "meet annihilator, seed {seed}");
            assert_eq!(canonical(&difference(&h, &empty).unwrap()), text, "difference identity, seed {seed}");
            assert_eq!(canonical(&difference(&h, &h).unwrap()), "", "self difference, seed {seed}");
            assert_eq!(prune(&h, &PruneSelector::default()).unwrap(), h, "prune identity, seed {seed}");
            assert_eq!(split(&h, &SplitCriterion::Universal).unwrap(), h, "split identity, seed {seed}");

            if !items.is_empty() {
                let narrow = prune(&h, &selector(&items[..1])).unwrap();
                assert!(
                    is_sub_hypernetwork(&pruned, &narrow),
                    "prune monotone over selector growth, seed {seed}"
                );
            }
            assert!(is_sub_hypernetwork(&projection, &h), "projection embeds, seed {seed}");

            for e in h.elements_in_order() {
                let out = merged.resolve(e.id()).expect("merge keeps every element");
                if !matches!(out, Element::Hypersimplex(hs) if hs.is_conflict()) {
                    assert!(
                        e.tags().iter().all(|t| out.tags().contains(t)),
                        "merge never drops a tag, seed {seed}"
                    );
                }
            }

            assert_eq!(canonical(&merge(&h, &g).unwrap()), canonical(&merged), "determinism, seed {seed}");
        }
        let took = started.elapsed();
        assert!(took < Duration::from_secs(60), "sweep took {took:?}");
    });
}

#[test]
fn criterion_6_operators_agree_with_the_independent_oracles() {
    check(6, "set-algebra and containment oracles agree on every sampled pair", || {
        for i in 0..200u64 {
            let a = gen_flat(&GenConfig::small(i));
            let b = gen_flat(&GenConfig::small(i + 5_000));
            let expected = oracle_set_ops(&a, &b).expect("flat operands");
            let ids = |h: &Hypernetwork| h.element_ids().cloned().collect::<BTreeSet<_>>();
            assert_eq!(ids(&merge(&a, &b).unwrap()), expected.union, "pair {i}");
            assert_eq!(ids(&meet(&a, &b).unwrap()), expected.intersection, "pair {i}");
            assert_eq!(ids(&difference(&a, &b).unwrap()), expected.difference, "pair {i}");
        }

        let tiny = |seed: u64| {
            gen_valid(&GenConfig {
                max_vertices: 4,
                max_hypersimplices: 2,
                max_arity: 3,
                max_boundaries: 1,
                alpha_beta_ratio: 0.6,
                percolation_probability: 0.5,
                seed,
            })
        };
        for i in 0..500u64 {
            let a = tiny(i);
            let b = match i % 3 {
                0 => tiny(i + 7_919),
                1 => a.clone(),
                _ => {
                    let anchor = a.elements_in_order().next().map(|e| e.id().clone());
                    match anchor {
                        Some(seed) => split(&a, &SplitCriterion::Seeds(vec![seed])).unwrap(),
                        None => a.clone(),
                    }
                }
            };
            let (small, big) = if i % 3 == 2 { (b, a) } else { (a, b) };
            let expected = oracle_subhn(&small, &big).expect("within exhaustive bounds");
            assert_eq!(
                is_sub_hypernetwork(&small, &big),
                expected,
                "containment verdict, pair {i}"
            );
        }
    });
}

#[test]
fn criterion_7_merge_order_shows_in_conflict_records() {
    check(7, "a name clash makes merge order observable", || {
        let a = load_ok("alpha X = <P ; R_a>\n");
        let b = load_ok("alpha X = <Q ; R_b>\n");
        let ab = merge(&a, &b).unwrap();
        let ba = merge(&b, &a).unwrap();
        assert_ne!(canonical(&ab), canonical(&ba), "operand order is observable");
        for h in [&ab, &ba] {
            match h.resolve(&id("X")) {
                Some(Element::Hypersimplex(hs)) => {
                    assert!(hs.is_conflict());
                    assert_eq!(hs.relation.symbol(), "SameName");
                }
                other => panic!("X becomes a conflict record, got {other:?}"),
            }
        }
    });
}

#[test]
fn criterion_8_canonical_text_round_trips_every_generated_model() {
    check(8, "rebuilding from canonical text reproduces every model", || {
        for seed in 0..200u64 {
            let h = gen_valid(&GenConfig::small(seed));
            let text = canonical(&h);
            let (rebuilt, report) = load(&text).expect("canonical text parses");
            assert!(report.ok(), "seed {seed}:\n{report}");
            assert_eq!(canonical(&rebuilt), text, "seed {seed}");
        }
    });
}

#[test]
fn criterion_9_widening_a_known_relation_is_recorded_not_accepted() {
    check(9, "an arity-4 R_Team claim against arity-3 becomes a conflict record", || {
        let base = load_ok(&fs::read_to_string(data("emergency.hn")).expect("fixture readable"));
        let wide = Hypersimplex::new(
            id("TeamBlue"),
            AggregationType::Alpha,
            RelationSignature::anonymous("R_Team", 4).unwrap(),
            vec![id("Commander"), id("Medic1"), id("Medic2"), id("Extra")],
            BTreeSet::new(),
        )
        .unwrap();
        let (out, outcome) = insert_traced(&base, wide.into()).expect("insertion never crashes");
        assert!(matches!(outcome, InsertOutcome::Conflicted), "not silently accepted");
        match out.resolve(&id("TeamBlue")) {
            Some(Element::Hypersimplex(hs)) => {
                assert!(hs.is_conflict());
                assert_eq!(hs.relation.symbol(), "SameName");
                let marker = hs.conflict.as_ref().expect("both versions kept");
                assert!(
                    matches!(marker.left.as_ref(), Element::Hypersimplex(old) if old.participants.len() == 3)
                );
                assert!(
                    matches!(marker.right.as_ref(), Element::Hypersimplex(new) if new.participants.len() == 4)
                );
            }
            other => panic!("TeamBlue becomes a conflict record, got {other:?}"),
        }
        assert!(validate(&out).ok(), "the model stays well-formed");
    });
}
