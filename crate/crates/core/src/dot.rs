//! Graphviz export. Orders are drawn as cover diagrams — only the
//! covering edges, growing upward — and maps are overlaid as dashed
//! arrows with fixed points doubled.

use crate::element::Element;
use crate::order::{EndoMap, FinitePoset, OrderError};
use std::fmt::Write as _;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Cover diagram of a finite order, bottom rank at the bottom.
pub fn poset_to_dot(p: &FinitePoset, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle, fontsize=11];");
    for e in p.elements() {
        let _ = writeln!(out, "  {};", quote(&e.to_string()));
    }
    for (a, b) in p.cover_pairs() {
        let _ = writeln!(out, "  {} -> {};", quote(&a.to_string()), quote(&b.to_string()));
    }
    out.push_str("}\n");
    out
}

/// Cover diagram with the map drawn on top: dashed arrows for moved
/// elements, a doubled outline on fixed ones.
pub fn endomap_to_dot(map: &EndoMap, name: &str) -> Result<String, OrderError> {
    let p = map
        .poset()
        .as_finite()
        .ok_or(OrderError::EngineRequires {
            engine: "dot export",
            requirement: "a finite carrier",
        })?;
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    let _ = writeln!(out, "  rankdir=BT;");
    let _ = writeln!(out, "  node [shape=circle, fontsize=11];");
    for e in p.elements() {
        let x = Element::Id(e.clone());
        let image = map.apply(&x)?;
        if image == x {
            let _ = writeln!(out, "  {} [peripheries=2];", quote(&e.to_string()));
        } else {
            let _ = writeln!(out, "  {};", quote(&e.to_string()));
        }
    }
    for (a, b) in p.cover_pairs() {
        let _ = writeln!(out, "  {} -> {};", quote(&a.to_string()), quote(&b.to_string()));
    }
    for e in p.elements() {
        let x = Element::Id(e.clone());
        let image = map.apply(&x)?;
        if image != x {
            let _ = writeln!(
                out,
                "  {} -> {} [style=dashed, constraint=false, color=gray40];",
                quote(&e.to_string()),
                quote(&image.to_string())
            );
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ElementId;
    use crate::order::{classify_map, MapRule, PosetHandle};
    use std::collections::BTreeMap;

    #[test]
    fn cover_diagram_of_the_diamond_has_four_edges() {
        let dot = poset_to_dot(&FinitePoset::diamond(), "diamond");
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.contains("\"bot\""));
        assert!(dot.starts_with("digraph \"diamond\" {"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn map_overlay_marks_fixed_points_and_motion() {
        let e = |s: &str| ElementId::new(s);
        let table: BTreeMap<_, _> = [
            (e("bot"), e("a")),
            (e("a"), e("a")),
            (e("b"), e("top")),
            (e("top"), e("top")),
        ]
        .into();
        let map = classify_map(
            PosetHandle::finite(FinitePoset::diamond()),
            MapRule::Table(table),
        )
        .unwrap();
        let dot = endomap_to_dot(&map, "step").unwrap();
        assert_eq!(dot.matches("peripheries=2").count(), 2);
        assert_eq!(dot.matches("style=dashed").count(), 2);
    }

    #[test]
    fn quoting_survives_hostile_names() {
        let dot = poset_to_dot(&FinitePoset::chain(1, "x\"y\\"), "g");
        assert!(dot.contains("\"x\\\"y\\\\0\""));
    }
}
