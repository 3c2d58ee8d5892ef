//! Colored, possibly oriented graphs on the vertex set `0..n`.

mod canon;
mod constructors;
mod format;
mod library;
mod loops;
mod ops;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactMatrix, GaussianRational, Rational};

pub use canon::{are_isomorphic, canonical_form, find_isomorphism, CanonicalForm};
pub use constructors::{
    complete, cube, cyclic_from_profile, discrete_torus, disjoint_copies, disjoint_union, edgeless, eight_spoke_wheel,
    multi_simplex, n_gon, nine_star, oriented_n_gon, tensor_product, CyclicProfile,
};
pub use format::{parse_graph, to_text};
pub use library::{named_graph, NAMED_GRAPHS};
pub use loops::{loop_counts, loop_rule_check, LoopRuleVerdict, LoopSource};
pub use ops::{apply_move, complement, decompose, metric_import, MetricSpace, Move};

/// Default label used by single-color constructors.
pub const DEFAULT_LABEL: &str = "a";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Unoriented,
    Oriented,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::Unoriented => "unoriented",
            ComponentKind::Oriented => "oriented",
        })
    }
}

/// One color of a graph. Unoriented supports hold both `(i,j)` and `(j,i)`;
/// oriented supports hold the arcs `i → j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorComponent {
    pub label: String,
    pub kind: ComponentKind,
    pub support: BTreeSet<(usize, usize)>,
    pub value: Option<Rational>,
}

impl ColorComponent {
    pub fn unoriented(label: impl Into<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let support = edges.into_iter().flat_map(|(i, j)| [(i, j), (j, i)]).collect();
        Self { label: label.into(), kind: ComponentKind::Unoriented, support, value: None }
    }

    pub fn oriented(label: impl Into<String>, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self { label: label.into(), kind: ComponentKind::Oriented, support: arcs.into_iter().collect(), value: None }
    }

    pub fn with_value(mut self, value: Rational) -> Self {
        self.value = Some(value);
        self
    }

    pub fn is_oriented(&self) -> bool {
        self.kind == ComponentKind::Oriented
    }

    /// Edges for unoriented colors, arcs for oriented ones.
    pub fn edge_count(&self) -> usize {
        match self.kind {
            ComponentKind::Unoriented => self.support.len() / 2,
            ComponentKind::Oriented => self.support.len(),
        }
    }

    /// Unordered pairs `(min, max)` touched by the support.
    pub fn unordered_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.support.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect()
    }

    /// Undirected edge list with `i < j`, or the arc list.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match self.kind {
            ComponentKind::Unoriented => self.support.iter().copied().filter(|(i, j)| i < j).collect(),
            ComponentKind::Oriented => self.support.iter().copied().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    pub n: usize,
    pub components: Vec<ColorComponent>,
}

/// A broken structural invariant, reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("color {label}: pair ({i},{j}) is outside the vertex range")]
    VertexOutOfRange { label: String, i: usize, j: usize },
    #[error("color {label}: self-loop at vertex {vertex}")]
    SelfLoop { label: String, vertex: usize },
    #[error("color {label}: ({i},{j}) present without ({j},{i})")]
    Asymmetric { label: String, i: usize, j: usize },
    #[error("color {label}: both arcs {i}->{j} and {j}->{i}")]
    Antiparallel { label: String, i: usize, j: usize },
    #[error("label {label} is used by two components")]
    DuplicateLabel { label: String },
    #[error("label {label} is used by both an oriented and an unoriented component")]
    MixedKindLabel { label: String },
    #[error("colors {first} and {second} overlap on pair ({i},{j})")]
    OverlappingSupports { first: String, second: String, i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown color label {0}")]
    UnknownLabel(String),
    #[error("invalid graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("matrix entry ({i},{j}) = {value} is neither real nor purely imaginary")]
    OutsideRegime { i: usize, j: usize, value: String },
}

/// Every broken invariant of `g`, in a deterministic order.
pub fn validate(g: &ColoredGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut kinds: BTreeMap<&str, Vec<ComponentKind>> = BTreeMap::new();
    for c in &g.components {
        kinds.entry(&c.label).or_default().push(c.kind);
        for &(i, j) in &c.support {
            if i >= g.n || j >= g.n {
                out.push(Violation::VertexOutOfRange { label: c.label.clone(), i, j });
            } else if i == j {
                out.push(Violation::SelfLoop { label: c.label.clone(), vertex: i });
            }
            match c.kind {
                ComponentKind::Unoriented if !c.support.contains(&(j, i)) => {
                    out.push(Violation::Asymmetric { label: c.label.clone(), i, j });
                }
                ComponentKind::Oriented if i < j && c.support.contains(&(j, i)) => {
                    out.push(Violation::Antiparallel { label: c.label.clone(), i, j });
                }
                _ => {}
            }
        }
    }
    for (label, ks) in &kinds {
        if ks.len() > 1 {
            if ks.iter().all(|k| *k == ks[0]) {
                out.push(Violation::DuplicateLabel { label: label.to_string() });
            } else {
                out.push(Violation::MixedKindLabel { label: label.to_string() });
            }
        }
    }
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut reported = BTreeSet::new();
    for (idx, c) in g.components.iter().enumerate() {
        for p in c.unordered_pairs() {
            match owner.get(&p) {
                Some(&prev) if prev != idx => {
                    if reported.insert((prev, idx)) {
                        out.push(Violation::OverlappingSupports {
                            first: g.components[prev].label.clone(),
                            second: c.label.clone(),
                            i: p.0,
                            j: p.1,
                        });
                    }
                }
                Some(_) => {}
                None => {
                    owner.insert(p, idx);
                }
            }
        }
    }
    out
}

impl ColoredGraph {
    /// Validated construction.
    pub fn new(n: usize, components: Vec<ColorComponent>) -> Result<Self, GraphError> {
        let g = Self { n, components };
        let v = validate(&g);
        if v.is_empty() {
            Ok(g)
        } else {
            Err(GraphError::Invalid(v))
        }
    }

    pub(crate) fn unchecked(n: usize, components: Vec<ColorComponent>) -> Self {
        let g = Self { n, components };
        debug_assert!(validate(&g).is_empty(), "{:?}", validate(&g));
        g
    }

    pub fn component(&self, label: &str) -> Result<&ColorComponent, GraphError> {
        self.components.iter().find(|c| c.label == label).ok_or_else(|| GraphError::UnknownLabel(label.to_string()))
    }

    pub fn labels(&self) -> Vec<&str> {
        self.components.iter().map(|c| c.label.as_str()).collect()
    }

    /// The single unoriented component, if that is all the graph has.
    pub fn single_unoriented(&self) -> Option<&ColorComponent> {
        match self.components.as_slice() {
            [c] if c.kind == ComponentKind::Unoriented => Some(c),
            _ => None,
        }
    }

    pub fn has_oriented(&self) -> bool {
        self.components.iter().any(ColorComponent::is_oriented)
    }

    /// Dense `n × n` code: 0 off the support; for component `c`, `3c+1` on
    /// unoriented pairs, `3c+2` on arcs and `3c+3` on reversed arcs.
    pub fn pair_codes(&self) -> Vec<u32> {
        let n = self.n;
        let mut codes = vec![0u32; n * n];
        for (c, comp) in self.components.iter().enumerate() {
            let base = 3 * c as u32;
            for &(i, j) in &comp.support {
                match comp.kind {
                    ComponentKind::Unoriented => codes[i * n + j] = base + 1,
                    ComponentKind::Oriented => {
                        codes[i * n + j] = base + 2;
                        codes[j * n + i] = base + 3;
                    }
                }
            }
        }
        codes
    }

    /// Neighbour lists of the underlying simple graph (all colors, orientation forgotten).
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![BTreeSet::new(); self.n];
        for c in &self.components {
            for &(i, j) in &c.support {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Apply a vertex relabeling `v ↦ perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "relabeling has wrong length");
        let components = self
            .components
            .iter()
            .map(|c| ColorComponent { support: c.support.iter().map(|&(i, j)| (perm[i], perm[j])).collect(), ..c.clone() })
            .collect();
        Self { n: self.n, components }
    }

    /// Rename color labels according to `f`.
    pub fn rename_colors(&self, mut f: impl FnMut(&str) -> String) -> Self {
        let components = self.components.iter().map(|c| ColorComponent { label: f(&c.label), ..c.clone() }).collect();
        Self { n: self.n, components }
    }
}

/// Incidence matrix of one color: 0/1 and symmetric for unoriented colors,
/// `i·r − i·rᵗ` for an oriented color with arc support `r`.
pub fn incidence(g: &ColoredGraph, label: &str) -> Result<ExactMatrix, GraphError> {
    Ok(component_incidence(g.n, g.component(label)?))
}

pub(crate) fn component_incidence(n: usize, c: &ColorComponent) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n);
    for &(i, j) in &c.support {
        match c.kind {
            ComponentKind::Unoriented => m.set(i, j, GaussianRational::one()),
            ComponentKind::Oriented => {
                m.set(i, j, GaussianRational::i());
                m.set(j, i, -GaussianRational::i());
            }
        }
    }
    m
}

/// 0/1 support matrix (the arc matrix `r` for oriented colors).
pub fn support_matrix(g: &ColoredGraph, label: &str) -> Result<ExactMatrix, GraphError> {
    let c = g.component(label)?;
    let mut m = ExactMatrix::zeros(g.n);
    for &(i, j) in &c.support {
        m.set(i, j, GaussianRational::one());
    }
    Ok(m)
}

/// `Σ_c value_c · incidence_c`, using value 1 where none is recorded.
pub fn reassemble(g: &ColoredGraph) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(g.n);
    for c in &g.components {
        let v = GaussianRational::real(c.value.clone().unwrap_or_else(Rational::one));
        m = &m + &component_incidence(g.n, c).scale(&v);
    }
    m
}
