//! Line-oriented text format:
//!
//! ```text
//! # comment
//! vertices N
//! color LABEL [oriented]   # optional; declares a color, possibly empty
//! edge LABEL I J
//! arc LABEL I J
//! value LABEL P/Q
//! ```

use std::fmt::Write;

use super::{ColorComponent, ColoredGraph, ComponentKind, GraphError};
use crate::exact::parse_rational;

fn declare(components: &mut Vec<ColorComponent>, label: &str, kind: ComponentKind) -> usize {
    components.push(match kind {
        ComponentKind::Unoriented => ColorComponent::unoriented(label, []),
        ComponentKind::Oriented => ColorComponent::oriented(label, []),
    });
    components.len() - 1
}

pub fn parse_graph(text: &str) -> Result<ColoredGraph, GraphError> {
    let mut n: Option<usize> = None;
    let mut components: Vec<ColorComponent> = Vec::new();
    let mut values = Vec::new();
    let err = |line: usize, message: String| GraphError::Parse { line, message };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let vertex = |s: &str| -> Result<usize, GraphError> {
            let v: usize = s.parse().map_err(|_| err(line, format!("bad vertex index {s:?}")))?;
            match n {
                Some(n) if v < n => Ok(v),
                Some(n) => Err(err(line, format!("vertex {v} out of range for {n} vertices"))),
                None => Err(err(line, "edge before vertices directive".into())),
            }
        };
        match words.as_slice() {
            ["vertices", count] => {
                if n.is_some() {
                    return Err(err(line, "repeated vertices directive".into()));
                }
                let count: usize = count.parse().map_err(|_| err(line, format!("bad vertex count {count:?}")))?;
                if count == 0 {
                    return Err(err(line, "vertex count must be positive".into()));
                }
                n = Some(count);
            }
            ["color", label] | ["color", label, "oriented"] => {
                let kind = if words.len() == 3 { ComponentKind::Oriented } else { ComponentKind::Unoriented };
                if components.iter().any(|c| c.label == *label) {
                    return Err(err(line, format!("color {label:?} already declared")));
                }
                declare(&mut components, label, kind);
            }
            [kw @ ("edge" | "arc"), label, i, j] => {
                let (i, j) = (vertex(i)?, vertex(j)?);
                let kind = if *kw == "edge" { ComponentKind::Unoriented } else { ComponentKind::Oriented };
                let slot = match components.iter().position(|c| c.label == *label && c.kind == kind) {
                    Some(k) => k,
                    None => declare(&mut components, label, kind),
                };
                let c = &mut components[slot];
                c.support.insert((i, j));
                if kind == ComponentKind::Unoriented {
                    c.support.insert((j, i));
                }
            }
            ["value", label, v] => {
                let v = parse_rational(v).ok_or_else(|| err(line, format!("bad rational {v:?}")))?;
                values.push((line, label.to_string(), v));
            }
            _ => return Err(err(line, format!("unrecognized directive {content:?}"))),
        }
    }
    let n = n.ok_or_else(|| err(text.lines().count().max(1), "missing vertices directive".into()))?;
    for (line, label, v) in values {
        let c = components
            .iter_mut()
            .find(|c| c.label == label)
            .ok_or_else(|| err(line, format!("value for unknown color {label:?}")))?;
        c.value = Some(v);
    }
    ColoredGraph::new(n, components)
}

/// Inverse of [`parse_graph`].
pub fn to_text(g: &ColoredGraph) -> String {
    let mut s = format!("vertices {}\n", g.n);
    for c in &g.components {
        let kw = match c.kind {
            ComponentKind::Unoriented => "edge",
            ComponentKind::Oriented => "arc",
        };
        if c.edge_count() == 0 {
            let suffix = if c.kind == ComponentKind::Oriented { " oriented" } else { "" };
            writeln!(s, "color {}{suffix}", c.label).expect("write to string");
        }
        for (i, j) in c.edges() {
            writeln!(s, "{kw} {} {i} {j}", c.label).expect("write to string");
        }
        if let Some(v) = &c.value {
            writeln!(s, "value {} {v}", c.label).expect("write to string");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{edgeless, multi_simplex, n_gon, oriented_n_gon, Violation};

    #[test]
    fn roundtrip() {
        for g in [n_gon(5), oriented_n_gon(4).unwrap(), multi_simplex(&[2, 3]).unwrap(), edgeless(3)] {
            assert_eq!(parse_graph(&to_text(&g)).unwrap(), g);
        }
    }

    #[test]
    fn comments_and_values() {
        let g = parse_graph("# pentagon\nvertices 3\nedge a 0 1 # first\narc b 1 2\nvalue a 3/2\n").unwrap();
        assert_eq!(g.components.len(), 2);
        assert_eq!(g.components[0].value, Some(crate::exact::rat(3, 2)));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse_graph(""), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("vertices 2\nedge a 0 5\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("vertices 2\n\nfoo\n"), Err(GraphError::Parse { line: 3, .. })));
    }

    #[test]
    fn declared_colors() {
        let g = parse_graph("vertices 2\ncolor a\ncolor b oriented\narc b 0 1\n").unwrap();
        assert_eq!(g.components[0].edge_count(), 0);
        assert!(g.components[1].is_oriented());
        assert!(parse_graph("vertices 2\ncolor a\ncolor a\n").is_err());
    }

    #[test]
    fn rejects_mixed_kind_label() {
        let e = parse_graph("vertices 3\nedge a 0 1\narc a 1 2\n").unwrap_err();
        assert_eq!(e, GraphError::Invalid(vec![Violation::MixedKindLabel { label: "a".into() }]));
    }
}
