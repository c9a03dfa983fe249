//! Rendering a hypernetwork back to `.hn` text.
//!
//! `canonical` is the normative byte-exact form: boundary declarations
//! sorted by id, then element statements sorted by element id, one per
//! line. Two equal models always canonicalize to identical bytes, which is
//! what the CLI and the round-trip laws compare. `pretty` keeps the
//! insertion order instead and is meant for humans inspecting a model.

use crate::model::{AggregationType, Element, Hypersimplex, Hypernetwork};

/// Byte-exact canonical form. Parsing it back and rebuilding yields a model
/// with identical canonical text.
pub fn canonical(h: &Hypernetwork) -> String {
    render(h, h.elements_sorted())
}

/// Like [`canonical`] but element statements appear in insertion order.
pub fn pretty(h: &Hypernetwork) -> String {
    render(h, h.elements_in_order())
}

fn render<'a>(h: &Hypernetwork, elements: impl Iterator<Item = &'a Element>) -> String {
    let mut out = String::new();
    for boundary in h.boundaries() {
        out.push_str("boundary ");
        out.push_str(boundary.id.as_str());
        if boundary.percolating {
            out.push_str(" percolating");
        }
        out.push('\n');
    }
    for element in elements {
        render_element(&mut out, element);
        out.push('\n');
    }
    out
}

fn render_element(out: &mut String, element: &Element) {
    match element {
        Element::Vertex(v) => {
            out.push_str("vertex ");
            out.push_str(v.id.as_str());
            render_tags(out, v.tags.iter().map(|t| t.as_str()));
        }
        Element::AntiVertex(a) => {
            out.push_str("anti ");
            out.push_str(a.excludes.as_str());
            render_tags(out, a.tags.iter().map(|t| t.as_str()));
        }
        Element::Hypersimplex(hs) => match &hs.conflict {
            Some(marker) => {
                out.push_str("conflict ");
                out.push_str(hs.id.as_str());
                render_tags(out, hs.tags.iter().map(|t| t.as_str()));
                out.push_str(" { ");
                render_element(out, &marker.left);
                out.push_str(" | ");
                render_element(out, &marker.right);
                out.push_str(" }");
            }
            None => render_hypersimplex(out, hs),
        },
    }
}

fn render_hypersimplex(out: &mut String, hs: &Hypersimplex) {
    let (kw, open, close) = match hs.agg {
        AggregationType::Alpha => ("alpha ", '<', '>'),
        AggregationType::Beta => ("beta ", '{', '}'),
    };
    out.push_str(kw);
    out.push_str(hs.id.as_str());
    out.push_str(" = ");
    out.push(open);
    for (i, p) in hs.participants.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(p.as_str());
    }
    out.push_str(" ; ");
    out.push_str(hs.relation.symbol());
    if !hs.relation.has_anonymous_roles() {
        out.push('(');
        for (i, role) in hs.relation.roles().iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(role);
        }
        out.push(')');
    }
    out.push(close);
    render_tags(out, hs.tags.iter().map(|t| t.as_str()));
}

fn render_tags<'a>(out: &mut String, tags: impl Iterator<Item = &'a str>) {
    let mut first = true;
    for tag in tags {
        if first {
            out.push_str(" @ ");
            first = false;
        } else {
            out.push_str(", ");
        }
        out.push_str(tag);
    }
}

/// Formats a single element as its canonical statement text, without a
/// trailing newline. Useful in diagnostics.
pub fn statement(element: &Element) -> String {
    let mut out = String::new();
    render_element(&mut out, element);
    out
}
