use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use super::{classify, Classification};
use crate::graph::{canonical_form, complement, CanonicalForm, ColorComponent, ColoredGraph, DEFAULT_LABEL};
use crate::planar::ClosureConfig;
use crate::symmetry::{automorphism_group, is_vertex_transitive};

/// Largest vertex count accepted by the enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, got {0}")]
    TooLarge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedGraph {
    pub n: usize,
    pub degree: usize,
    pub form: CanonicalForm,
    pub graph: ColoredGraph,
    pub classification: Option<Classification>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub max_n: usize,
    /// Vertex-transitive graphs ordered by vertex count, degree and canonical form.
    pub homogeneous: Vec<EnumeratedGraph>,
    /// Regular graphs that are not vertex-transitive, in the same order.
    pub non_transitive_regular: Vec<EnumeratedGraph>,
}

impl EnumerationReport {
    pub fn total(&self) -> usize {
        self.homogeneous.len()
    }

    pub fn counts_by_n(&self) -> BTreeMap<usize, usize> {
        let mut out: BTreeMap<usize, usize> = (1..=self.max_n).map(|n| (n, 0)).collect();
        for g in &self.homogeneous {
            *out.entry(g.n).or_default() += 1;
        }
        out
    }

    /// Number of graphs per classification kind; empty until classified.
    pub fn class_tallies(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for c in self.homogeneous.iter().filter_map(|g| g.classification.as_ref()) {
            *out.entry(c.kind.name()).or_default() += 1;
        }
        out
    }

    pub fn classify(&mut self, cfg: Option<&ClosureConfig>) {
        self.homogeneous.par_iter_mut().for_each(|g| g.classification = Some(classify(&g.graph, cfg)));
    }

    /// Whether the complement of every listed graph is listed too.
    pub fn closed_under_complement(&self) -> bool {
        let forms: BTreeSet<&CanonicalForm> = self.homogeneous.iter().map(|g| &g.form).collect();
        self.homogeneous.iter().all(|g| forms.contains(&canonical_form(&complement(&g.graph).expect("single color"))))
    }
}

fn graph_from_edges(n: usize, edges: Vec<(usize, usize)>) -> ColoredGraph {
    ColoredGraph::new(n, vec![ColorComponent::unoriented(DEFAULT_LABEL, edges)]).expect("valid simple graph")
}

/// Labeled `k`-regular graphs with vertex 0 joined to `1..=k`, which meets
/// every isomorphism class.
fn regular_labeled(n: usize, k: usize, out: &mut dyn FnMut(Vec<(usize, usize)>)) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut degree = vec![0usize; n];
    let mut chosen = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        idx: usize,
        pairs: &[(usize, usize)],
        n: usize,
        k: usize,
        degree: &mut [usize],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut dyn FnMut(Vec<(usize, usize)>),
    ) {
        if idx == pairs.len() {
            if degree.iter().all(|&d| d == k) {
                out(chosen.clone());
            }
            return;
        }
        let (i, j) = pairs[idx];
        // the last pair at `i` decides its degree
        let closes_i = j == n - 1;
        let forced = if i == 0 { Some(j <= k) } else { None };
        for take in [true, false] {
            if forced.is_some_and(|f| f != take) {
                continue;
            }
            if take && (degree[i] == k || degree[j] == k) {
                continue;
            }
            let di = degree[i] + usize::from(take);
            if closes_i && di != k {
                continue;
            }
            // `j` can still gain at most one edge from each vertex before it and all after it
            let dj = degree[j] + usize::from(take);
            if dj + (n - 1 - j) + (j - 1 - i) < k {
                continue;
            }
            if take {
                degree[i] += 1;
                degree[j] += 1;
                chosen.push((i, j));
            }
            go(idx + 1, pairs, n, k, degree, chosen, out);
            if take {
                degree[i] -= 1;
                degree[j] -= 1;
                chosen.pop();
            }
        }
    }
    if n * k % 2 == 1 || k >= n.max(1) {
        return;
    }
    go(0, &pairs, n, k, &mut degree, &mut chosen, out);
}

fn regular_classes(n: usize, k: usize) -> BTreeMap<CanonicalForm, ColoredGraph> {
    let mut found = BTreeMap::new();
    regular_labeled(n, k, &mut |edges| {
        let g = graph_from_edges(n, edges);
        found.entry(canonical_form(&g)).or_insert(g);
    });
    found
}

/// All regular graphs on `n` vertices up to isomorphism, every degree.
pub fn enumerate_regular(n: usize) -> Vec<ColoredGraph> {
    let mut all = BTreeMap::new();
    for k in 0..=(n.saturating_sub(1)) / 2 {
        for (form, g) in regular_classes(n, k) {
            let c = complement(&g).expect("single color");
            all.insert(canonical_form(&c), c);
            all.insert(form, g);
        }
    }
    all.into_values().collect()
}

/// Vertex-transitive graphs on at most `max_n` vertices, up to isomorphism.
pub fn enumerate_homogeneous(max_n: usize) -> Result<EnumerationReport, EnumerationError> {
    if max_n > MAX_ENUMERATION_VERTICES {
        return Err(EnumerationError::TooLarge(max_n));
    }
    let slices: Vec<(usize, usize)> = (1..=max_n).flat_map(|n| (0..=(n - 1) / 2).map(move |k| (n, k))).collect();
    let classes: Vec<(usize, BTreeMap<CanonicalForm, ColoredGraph>)> =
        slices.par_iter().map(|&(n, k)| (n, regular_classes(n, k))).collect();
    let mut graphs: BTreeMap<(usize, usize, CanonicalForm), ColoredGraph> = BTreeMap::new();
    for (n, found) in classes {
        for (form, g) in found {
            let c = complement(&g).expect("single color");
            let degree = |h: &ColoredGraph| h.neighbours()[0].len();
            graphs.insert((n, degree(&c), canonical_form(&c)), c);
            graphs.insert((n, degree(&g), form), g);
        }
    }
    let tagged: Vec<(bool, EnumeratedGraph)> = graphs
        .into_par_iter()
        .map(|((n, degree, form), graph)| {
            let transitive = is_vertex_transitive(&automorphism_group(&graph));
            (transitive, EnumeratedGraph { n, degree, form, graph, classification: None })
        })
        .collect();
    let (homogeneous, rest): (Vec<_>, Vec<_>) = tagged.into_iter().partition(|(t, _)| *t);
    Ok(EnumerationReport {
        max_n,
        homogeneous: homogeneous.into_iter().map(|(_, g)| g).collect(),
        non_transitive_regular: rest.into_iter().map(|(_, g)| g).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, cube, eight_spoke_wheel};

    #[test]
    fn cubic_graphs_on_eight_vertices() {
        // five connected cubic graphs plus two disjoint tetrahedra
        assert_eq!(regular_classes(8, 3).len(), 6);
    }

    #[test]
    fn small_slices() {
        let r = enumerate_homogeneous(5).unwrap();
        assert_eq!(r.counts_by_n().into_values().collect::<Vec<_>>(), vec![1, 2, 2, 4, 3]);
        assert!(r.closed_under_complement());
    }

    #[test]
    fn connected_cubic_transitive_are_cube_and_wheel() {
        let r = enumerate_homogeneous(8).unwrap();
        let cubic: Vec<&EnumeratedGraph> =
            r.homogeneous.iter().filter(|g| g.n == 8 && g.degree == 3 && super::super::criteria::is_connected(&g.graph)).collect();
        assert_eq!(cubic.len(), 2);
        assert!(cubic.iter().any(|g| are_isomorphic(&g.graph, &cube())));
        assert!(cubic.iter().any(|g| are_isomorphic(&g.graph, &eight_spoke_wheel())));
    }

    #[test]
    fn guard() {
        assert_eq!(enumerate_homogeneous(10), Err(EnumerationError::TooLarge(10)));
    }
}
