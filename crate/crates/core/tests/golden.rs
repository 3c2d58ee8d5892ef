//! The shipped `.graph` corpus and its frozen `--no-closure` JSON reports.
//! Set `QGRAPH_BLESS=1` to rewrite the reports after an intended change.

use std::fs;
use std::path::{Path, PathBuf};

use qgraph::graph::{complement, named_graph, parse_graph, to_text};
use qgraph::report::{analyze, to_canonical_json, AnalysisReport, AnalyzeOptions};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn graph_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "graph"))
        .collect();
    files.sort();
    files
}

#[test]
fn corpus_files_match_the_named_graphs() {
    let files = graph_files();
    assert!(files.len() >= 40);
    for path in files {
        let stem = path.file_stem().unwrap().to_str().unwrap();
        let expected = match stem.strip_suffix("-complement") {
            Some(base) => complement(&named_graph(base).unwrap()).unwrap(),
            None => named_graph(stem).unwrap_or_else(|| panic!("no named graph {stem}")),
        };
        let text = fs::read_to_string(&path).unwrap();
        let g = parse_graph(&text).unwrap();
        assert_eq!(g, expected, "{stem}");
        assert_eq!(to_text(&g), text, "{stem}");
    }
}

#[test]
fn reports_match_golden_json() {
    let bless = std::env::var_os("QGRAPH_BLESS").is_some();
    for path in graph_files() {
        let stem = path.file_stem().unwrap().to_str().unwrap();
        let g = parse_graph(&fs::read_to_string(&path).unwrap()).unwrap();
        let json = to_canonical_json(&analyze(&g, &AnalyzeOptions::default()).unwrap()).unwrap();
        let golden = corpus().join("golden").join(format!("{stem}.json"));
        if bless {
            fs::write(&golden, &json).unwrap();
            continue;
        }
        let frozen = fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing {}", golden.display()));
        assert_eq!(json, frozen, "{stem}");
        let back: AnalysisReport = serde_json::from_str(&frozen).unwrap();
        assert_eq!(to_canonical_json(&back).unwrap(), frozen, "{stem}");
    }
}
