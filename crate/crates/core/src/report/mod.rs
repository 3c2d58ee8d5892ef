//! Machine-readable reports behind the command-line tool, plus their text
//! rendering. JSON output is canonical: keys sorted, exact numbers as strings.

mod text;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify, classify_with_dims, enumerate_homogeneous, ClassKind, Classification, EnumerationError};
use crate::graph::{loop_rule_check, ColoredGraph, GraphError, LoopRuleVerdict};
use crate::planar::{closure_dims, ClosureConfig, LevelDims, PlanarError};
use crate::series::{
    cube_series, cyclic_group_series, dihedral_series, fc_series, tl_series, PoincareSeries, SeriesError,
};
use crate::symmetry::{automorphism_group, fixed_point_histogram, is_vertex_transitive};

pub use text::{render_analysis, render_enumeration, render_series};

pub const ANALYSIS_SCHEMA: &str = "qgraph.analysis/1";
pub const SERIES_SCHEMA: &str = "qgraph.series/1";
pub const ENUMERATION_SCHEMA: &str = "qgraph.enumeration/1";

/// Coefficients reported when no closure level bounds them.
pub const DEFAULT_TERMS: usize = 4;

/// Closed-walk length up to which the loop rule is checked.
pub const LOOP_RULE_LENGTH: usize = 6;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub label: String,
    pub oriented: bool,
    pub edges: usize,
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub components: Vec<ComponentSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetrySummary {
    pub group_order: u64,
    pub transitive: bool,
    /// Fixed-point count `m` to the number of automorphisms with `m` fixed points.
    pub fixed_points: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopRuleSummary {
    pub passed: bool,
    pub max_length: usize,
    pub violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesSummary {
    pub kind: String,
    pub closed_form: bool,
    pub formula: Option<String>,
    pub radius: Option<String>,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSummary {
    pub max_level: usize,
    pub buffer: usize,
    pub arithmetic: String,
    pub dims: Vec<usize>,
    pub ceiling_dims: Vec<usize>,
    pub orbit_counts: Vec<usize>,
    pub converged: Option<bool>,
    pub lower_bound: bool,
    /// Whether the dimensions equal the identified closed form, when there is one.
    pub matches_series: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub graph: GraphSummary,
    pub symmetry: SymmetrySummary,
    pub loop_rule: LoopRuleSummary,
    pub classification: Classification,
    pub series: SeriesSummary,
    pub closure: Option<ClosureSummary>,
    pub warnings: Vec<String>,
    /// Microseconds per stage; only present when requested, since it breaks
    /// byte-stable output.
    pub timings: Option<BTreeMap<String, u64>>,
}

impl AnalysisReport {
    /// A basis cap stopped the closure early, so some numbers are lower bounds.
    pub fn capped(&self) -> bool {
        self.closure.as_ref().is_some_and(|c| c.lower_bound)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// `None` skips the closure computation.
    pub closure: Option<ClosureConfig>,
    pub timings: bool,
}

/// Serialize with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String, ReportError> {
    // `serde_json::Value` keeps object keys in a sorted map
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn without_series(c: &Classification) -> Classification {
    let kind = match &c.kind {
        ClassKind::TensorProduct { factors } => {
            ClassKind::TensorProduct { factors: factors.iter().map(without_series).collect() }
        }
        other => other.clone(),
    };
    Classification { kind, series: None, provenance: c.provenance.clone() }
}

pub fn summarize_graph(g: &ColoredGraph) -> GraphSummary {
    let components = g
        .components
        .iter()
        .map(|c| ComponentSummary {
            label: c.label.clone(),
            oriented: c.is_oriented(),
            edges: c.edge_count(),
            value: c.value.as_ref().map(ToString::to_string),
        })
        .collect();
    GraphSummary { n: g.n, components }
}

/// Coefficients `c_0..c_terms`, or as many as the series knows.
fn coefficients(s: &PoincareSeries, terms: usize) -> Vec<String> {
    let terms = s.known_terms().map_or(terms, |k| terms.min(k.saturating_sub(1)));
    s.coefficients(terms).map(|c| c.iter().map(ToString::to_string).collect()).unwrap_or_default()
}

pub fn summarize_series(s: &PoincareSeries, terms: usize) -> SeriesSummary {
    let closed_form = s.is_closed_form();
    SeriesSummary {
        kind: s.kind().to_string(),
        closed_form,
        formula: closed_form.then(|| s.to_string()),
        radius: s.radius().map(|r| r.to_string()),
        coefficients: coefficients(s, terms),
    }
}

fn time<T>(timings: &mut BTreeMap<String, u64>, stage: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(stage.to_string(), start.elapsed().as_micros() as u64);
    out
}

/// Run the full pipeline on one graph.
pub fn analyze(g: &ColoredGraph, opts: &AnalyzeOptions) -> Result<AnalysisReport, ReportError> {
    if let Some(cfg) = &opts.closure {
        cfg.validate()?;
    }
    let mut timings = BTreeMap::new();
    let mut warnings = Vec::new();

    let group = time(&mut timings, "symmetry", || automorphism_group(g));
    let symmetry = SymmetrySummary {
        group_order: group.order(),
        transitive: is_vertex_transitive(&group),
        fixed_points: fixed_point_histogram(&group).nonzero(),
    };
    let loop_rule = match time(&mut timings, "loop-rule", || loop_rule_check(g, LOOP_RULE_LENGTH)) {
        LoopRuleVerdict::Pass => LoopRuleSummary { passed: true, max_length: LOOP_RULE_LENGTH, violation: None },
        LoopRuleVerdict::Violation { label, length, counts } => {
            let counts: Vec<String> = counts.iter().map(ToString::to_string).collect();
            LoopRuleSummary {
                passed: false,
                max_length: LOOP_RULE_LENGTH,
                violation: Some(format!("color {label}, length {length}: counts {}", counts.join(","))),
            }
        }
    };

    let run = match &opts.closure {
        Some(cfg) => Some(time(&mut timings, "closure", || closure_dims(g, cfg))?),
        None => None,
    };
    let classification = time(&mut timings, "classify", || match (&opts.closure, &run) {
        (Some(cfg), Some(run)) => classify_with_dims(g, cfg, &run.dims),
        _ => classify(g, None),
    });

    let terms = opts.closure.as_ref().map_or(DEFAULT_TERMS, |c| c.max_level);
    let series = match (&classification.series, &run) {
        (Some(s), _) => summarize_series(s, terms),
        (None, Some(run)) => summarize_series(&prefix(&run.dims), terms),
        (None, None) => SeriesSummary { kind: "none".into(), closed_form: false, formula: None, radius: None, coefficients: vec![] },
    };

    let closure = run.map(|run| {
        let matches_series = classification
            .series
            .as_ref()
            .filter(|s| s.is_closed_form())
            .map(|s| s.coefficients_u64(run.config.max_level).ok() == Some(run.dims.dims.iter().map(|&d| d as u64).collect()));
        if run.dims.lower_bound {
            warnings.push(format!("basis cap {} reached: closure dimensions are lower bounds", run.config.cap.unwrap_or(0)));
        }
        if matches_series == Some(false) {
            warnings.push("closure dimensions differ from the identified series".to_string());
        }
        ClosureSummary {
            max_level: run.config.max_level,
            buffer: run.config.buffer,
            arithmetic: serde_json::to_value(run.arithmetic).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            dims: run.dims.dims.clone(),
            ceiling_dims: run.ceiling_dims.clone(),
            orbit_counts: run.orbit_counts.clone(),
            converged: run.dims.converged,
            lower_bound: run.dims.lower_bound,
            matches_series,
        }
    });

    Ok(AnalysisReport {
        schema: ANALYSIS_SCHEMA.to_string(),
        graph: summarize_graph(g),
        symmetry,
        loop_rule,
        classification: without_series(&classification),
        series,
        closure,
        warnings,
        timings: opts.timings.then_some(timings),
    })
}

fn prefix(dims: &LevelDims) -> PoincareSeries {
    crate::series::prefix_from_counts(&dims.dims)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Tl,
    Fc,
    Dihedral,
    Cyclic,
    Cube,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub schema: String,
    pub kind: SeriesKind,
    pub parameter: Option<u64>,
    pub formula: String,
    pub radius: Option<String>,
    pub coefficients: Vec<String>,
}

/// Closed-form series by kind; every kind but `cube` takes one positive parameter.
pub fn series_table(kind: SeriesKind, parameter: Option<u64>, terms: usize) -> Result<SeriesTable, ReportError> {
    let bad = |m: &str| ReportError::Series(SeriesError::Parameters(m.to_string()));
    let series = match (kind, parameter) {
        (SeriesKind::Cube, None) => cube_series(),
        (SeriesKind::Cube, Some(_)) => return Err(bad("cube takes no parameter")),
        (_, None) => return Err(bad("missing parameter")),
        (_, Some(0)) => return Err(bad("parameter must be positive")),
        (SeriesKind::Tl, Some(n)) => tl_series(n),
        (SeriesKind::Fc, Some(s)) => fc_series(s),
        (SeriesKind::Dihedral, Some(n)) => dihedral_series(n),
        (SeriesKind::Cyclic, Some(n)) => cyclic_group_series(n),
    };
    Ok(SeriesTable {
        schema: SERIES_SCHEMA.to_string(),
        kind,
        parameter,
        formula: series.to_string(),
        radius: series.radius().map(|r| r.to_string()),
        coefficients: series.coefficients(terms)?.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedSummary {
    pub n: usize,
    pub degree: usize,
    pub edges: Vec<(usize, usize)>,
    pub classification: Option<Classification>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub schema: String,
    pub max_vertices: usize,
    pub total: usize,
    pub counts_by_n: BTreeMap<usize, usize>,
    pub class_tallies: BTreeMap<String, usize>,
    pub closed_under_complement: bool,
    pub non_transitive_regular: usize,
    pub graphs: Vec<EnumeratedSummary>,
}

/// Enumerate vertex-transitive graphs, optionally classifying each without closure.
pub fn enumerate(max_vertices: usize, with_classes: bool) -> Result<EnumerationSummary, ReportError> {
    let mut report = enumerate_homogeneous(max_vertices)?;
    if with_classes {
        report.classify(None);
    }
    let graphs = report
        .homogeneous
        .iter()
        .map(|g| EnumeratedSummary {
            n: g.n,
            degree: g.degree,
            edges: g.graph.components.first().map(|c| c.unordered_pairs().into_iter().collect()).unwrap_or_default(),
            classification: g.classification.as_ref().map(without_series),
        })
        .collect();
    Ok(EnumerationSummary {
        schema: ENUMERATION_SCHEMA.to_string(),
        max_vertices,
        total: report.total(),
        counts_by_n: report.counts_by_n(),
        class_tallies: report.class_tallies().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        closed_under_complement: report.closed_under_complement(),
        non_transitive_regular: report.non_transitive_regular.len(),
        graphs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cube, n_gon};

    fn with_closure(m: usize) -> AnalyzeOptions {
        AnalyzeOptions { closure: Some(ClosureConfig::new(m).unwrap()), timings: false }
    }

    #[test]
    fn pentagon_report() {
        let r = analyze(&n_gon(5), &with_closure(4)).unwrap();
        assert_eq!(r.classification.kind, ClassKind::Dihedral { n: 5 });
        assert_eq!(r.series.coefficients, ["1", "1", "3", "13", "63"]);
        assert_eq!(r.series.radius.as_deref(), Some("1/5"));
        let c = r.closure.unwrap();
        assert_eq!(c.dims, vec![1, 1, 3, 13, 63]);
        assert_eq!(c.matches_series, Some(true));
        assert!(!r.classification.provenance.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let r = analyze(&cube(), &AnalyzeOptions::default()).unwrap();
        let json = to_canonical_json(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(to_canonical_json(&back).unwrap(), json);
        fn no_floats(v: &serde_json::Value) -> bool {
            match v {
                serde_json::Value::Number(x) => x.is_u64() || x.is_i64(),
                serde_json::Value::Array(xs) => xs.iter().all(no_floats),
                serde_json::Value::Object(m) => m.values().all(no_floats),
                _ => true,
            }
        }
        assert!(no_floats(&serde_json::from_str(&json).unwrap()));
    }

    #[test]
    fn series_tables() {
        let t = series_table(SeriesKind::Fc, Some(2), 4).unwrap();
        assert_eq!(t.coefficients, ["1", "1", "3", "12", "55"]);
        assert_eq!(t.radius.as_deref(), Some("4/27"));
        let t = series_table(SeriesKind::Dihedral, Some(8), 4).unwrap();
        assert_eq!(t.coefficients, ["1", "1", "5", "34", "260"]);
        assert!(series_table(SeriesKind::Tl, Some(0), 3).is_err());
        assert!(series_table(SeriesKind::Cube, Some(2), 3).is_err());
    }

    #[test]
    fn capped_closure_warns() {
        let mut opts = with_closure(3);
        opts.closure = opts.closure.map(|c| c.with_cap(2));
        let r = analyze(&n_gon(5), &opts).unwrap();
        assert!(r.capped());
        assert!(!r.warnings.is_empty());
    }
}
