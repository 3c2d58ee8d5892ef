use std::fmt::Write;

use super::{AnalysisReport, EnumerationSummary, SeriesTable};
use crate::classify::{ClassKind, Classification};

fn describe(c: &Classification) -> String {
    match &c.kind {
        ClassKind::FussCatalan { indices, generic } => {
            let ix: Vec<String> = indices.iter().map(ToString::to_string).collect();
            let tag = if *generic { "" } else { ", non-generic" };
            format!("fuss-catalan FC({}){tag}", ix.join(","))
        }
        ClassKind::Dihedral { n } => format!("dihedral D_{n}"),
        ClassKind::CyclicGroup { n } => format!("cyclic group Z_{n}"),
        ClassKind::TensorProduct { factors } => {
            let f: Vec<String> = factors.iter().map(|f| format!("[{}]", describe(f))).collect();
            format!("tensor product {}", f.join(" x "))
        }
        ClassKind::Unknown { consistent_with, .. } if consistent_with.is_empty() => "unknown".to_string(),
        ClassKind::Unknown { consistent_with, .. } => format!("unknown, consistent with {}", consistent_with.join(", ")),
    }
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key:<14}{value}").expect("write to string");
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let colors: Vec<String> = r
        .graph
        .components
        .iter()
        .map(|c| format!("{} ({} {})", c.label, c.edges, if c.oriented { "arcs" } else { "edges" }))
        .collect();
    row(&mut out, "vertices", r.graph.n);
    row(&mut out, "colors", if colors.is_empty() { "none".to_string() } else { colors.join(", ") });
    let transitive = if r.symmetry.transitive { "vertex-transitive" } else { "not vertex-transitive" };
    row(&mut out, "automorphisms", format!("{} elements, {transitive}", r.symmetry.group_order));
    let hist: Vec<String> = r.symmetry.fixed_points.iter().map(|(m, c)| format!("{m}:{c}")).collect();
    row(&mut out, "fixed points", hist.join(" "));
    match &r.loop_rule.violation {
        None => row(&mut out, "loop rule", format!("passed up to length {}", r.loop_rule.max_length)),
        Some(v) => row(&mut out, "loop rule", format!("violated, {v}")),
    }
    row(&mut out, "class", describe(&r.classification));
    if let Some(f) = &r.series.formula {
        row(&mut out, "series", f);
    }
    if let Some(rad) = &r.series.radius {
        row(&mut out, "radius", rad);
    }
    row(&mut out, "coefficients", r.series.coefficients.join(" "));
    if let Some(c) = &r.closure {
        let dims: Vec<String> = c.dims.iter().map(ToString::to_string).collect();
        row(&mut out, "closure", format!("{} (M={}, buffer {}, {})", dims.join(" "), c.max_level, c.buffer, c.arithmetic));
        if let Some(conv) = c.converged {
            row(&mut out, "converged", conv);
        }
    }
    out.push_str("provenance\n");
    for s in &r.classification.provenance {
        writeln!(out, "  {}: {}", s.rule, s.outcome).expect("write to string");
    }
    for w in &r.warnings {
        writeln!(out, "warning: {w}").expect("write to string");
    }
    if let Some(t) = &r.timings {
        for (stage, us) in t {
            row(&mut out, &format!("time {stage}"), format!("{us} us"));
        }
    }
    out
}

pub fn render_series(t: &SeriesTable) -> String {
    let mut out = String::new();
    row(&mut out, "series", &t.formula);
    row(&mut out, "radius", t.radius.as_deref().unwrap_or("unknown"));
    for (k, c) in t.coefficients.iter().enumerate() {
        writeln!(out, "c_{k:<12}{c}").expect("write to string");
    }
    out
}

pub fn render_enumeration(e: &EnumerationSummary) -> String {
    let mut out = String::new();
    for (&n, &count) in &e.counts_by_n {
        writeln!(out, "n = {n}: {count}").expect("write to string");
        for g in e.graphs.iter().filter(|g| g.n == n) {
            let class = g.classification.as_ref().map(describe).unwrap_or_default();
            writeln!(out, "  degree {:<3}{:>3} edges  {class}", g.degree, g.edges.len()).expect("write to string");
        }
    }
    row(&mut out, "total", e.total);
    row(&mut out, "complements", if e.closed_under_complement { "closed" } else { "not closed" });
    for (class, count) in &e.class_tallies {
        row(&mut out, class, count);
    }
    out
}
