//! Classification of graphs by their quantum symmetry series.

mod criteria;
mod enumerate;

use serde::{Deserialize, Serialize};

use crate::graph::{complement, loop_rule_check, ColoredGraph};
use crate::planar::{closure_dims, ClosureConfig, LevelDims};
use crate::series::{
    cyclic_group_series, dihedral_series, fc_series, matches_prefix, prefix_from_counts, tl_series, PoincareSeries,
};
use crate::symmetry::{automorphism_group, is_vertex_transitive};

pub use criteria::{
    cyclic_criterion, oriented_cycle_length, product_test, profile_values, recognize_fuss_catalan, CyclicVerdict,
    FcMatch, FcRoute, NotApplicable, ProductVerdict,
};
pub use enumerate::{enumerate_homogeneous, enumerate_regular, EnumeratedGraph, EnumerationError, EnumerationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum ClassKind {
    FussCatalan { indices: Vec<usize>, generic: bool },
    Dihedral { n: usize },
    CyclicGroup { n: usize },
    TensorProduct { factors: Vec<Classification> },
    Unknown { prefix: Vec<u64>, converged: Option<bool>, consistent_with: Vec<String> },
}

impl ClassKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClassKind::FussCatalan { .. } => "fuss-catalan",
            ClassKind::Dihedral { .. } => "dihedral",
            ClassKind::CyclicGroup { .. } => "cyclic-group",
            ClassKind::TensorProduct { .. } => "tensor-product",
            ClassKind::Unknown { .. } => "unknown",
        }
    }
}

/// One rule of the pipeline and what it concluded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    pub outcome: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(flatten)]
    pub kind: ClassKind,
    /// Closed form or computed prefix; absent only when closure was skipped
    /// and no closed form applies.
    #[serde(skip)]
    pub series: Option<PoincareSeries>,
    pub provenance: Vec<Step>,
}

fn step(trail: &mut Vec<Step>, rule: &str, outcome: impl Into<String>) {
    trail.push(Step { rule: rule.to_string(), outcome: outcome.into() });
}

/// Where closure dimensions come from, if anywhere.
#[derive(Clone, Copy)]
enum Prefix<'a> {
    Skip,
    Compute(&'a ClosureConfig),
    /// Dimensions already computed for this graph or its complement.
    Given(&'a ClosureConfig, &'a LevelDims),
}

impl<'a> Prefix<'a> {
    fn config(self) -> Option<&'a ClosureConfig> {
        match self {
            Prefix::Skip => None,
            Prefix::Compute(cfg) | Prefix::Given(cfg, _) => Some(cfg),
        }
    }

    fn get(self, g: &ColoredGraph, trail: &mut Vec<Step>) -> Option<(Vec<u64>, Option<bool>)> {
        let (cfg, dims) = match self {
            Prefix::Skip => return None,
            Prefix::Compute(cfg) => (cfg, closure_dims(g, cfg).ok()?.dims),
            Prefix::Given(cfg, dims) => (cfg, dims.clone()),
        };
        let prefix: Vec<u64> = dims.dims.iter().map(|&d| d as u64).collect();
        let mut note = format!("dims {:?} at levels 0..={}", prefix, cfg.max_level);
        if dims.lower_bound {
            note.push_str(" (lower bounds, cap reached)");
        }
        step(trail, "closure", note);
        Some((prefix, dims.converged))
    }
}

/// Closed forms tried against a computed prefix.
fn candidate_series(n: usize) -> Vec<(String, PoincareSeries)> {
    let n = n as u64;
    let mut out = vec![(format!("TL({n})"), tl_series(n)), (format!("D_{n}"), dihedral_series(n))];
    out.push((format!("Z_{n}"), cyclic_group_series(n)));
    for s in 1..=4 {
        out.push((format!("FC(s={s})"), fc_series(s)));
    }
    out.push(("cube".into(), crate::series::cube_series()));
    out
}

/// Factor graphs tried by the product rule: connected vertex-transitive
/// graphs on `k` vertices, one per isomorphism class.
fn factor_candidates(k: usize) -> Vec<ColoredGraph> {
    if k < 2 {
        return Vec::new();
    }
    enumerate_regular(k)
        .into_iter()
        .filter(|g| criteria::is_connected(g) && is_vertex_transitive(&automorphism_group(g)))
        .collect()
}

/// Run the classification pipeline. With `cfg = None` no closure is run, so
/// unidentified graphs and non-generic Fuss-Catalan graphs carry no series.
pub fn classify(g: &ColoredGraph, cfg: Option<&ClosureConfig>) -> Classification {
    run(g, cfg.map_or(Prefix::Skip, Prefix::Compute))
}

/// As [`classify`], reusing closure dimensions already computed for `g`
/// under `cfg` instead of running the closure again.
pub fn classify_with_dims(g: &ColoredGraph, cfg: &ClosureConfig, dims: &LevelDims) -> Classification {
    run(g, Prefix::Given(cfg, dims))
}

fn run(g: &ColoredGraph, source: Prefix<'_>) -> Classification {
    let cfg = source.config();
    let mut trail = Vec::new();
    let group = automorphism_group(g);
    let transitive = is_vertex_transitive(&group);
    step(&mut trail, "transitivity", if transitive { "vertex-transitive" } else { "not vertex-transitive" });
    let verdict = loop_rule_check(g, 6);
    step(&mut trail, "loop-rule", if verdict.passed() { "passed up to length 6".to_string() } else { format!("{verdict:?}") });
    if !transitive {
        return fallback(g, source, trail);
    }

    let mut g = g.clone();
    if let Some(c) = g.single_unoriented() {
        let n = g.n;
        if 2 * c.edge_count() > n * (n - 1) / 2 {
            g = complement(&g).expect("single unoriented color");
            step(&mut trail, "complement", "denser than half, replaced by the complement");
        } else {
            step(&mut trail, "complement", "kept");
        }
    }

    if let Some(n) = oriented_cycle_length(&g) {
        step(&mut trail, "oriented-cycle", format!("oriented {n}-gon"));
        return Classification { kind: ClassKind::CyclicGroup { n }, series: Some(cyclic_group_series(n as u64)), provenance: trail };
    }
    step(&mut trail, "oriented-cycle", "no");

    if let Some(m) = recognize_fuss_catalan(&g) {
        step(&mut trail, "fuss-catalan", format!("{:?} via {:?}", m.indices, m.route));
        let series = if m.indices.len() == 1 {
            Some(tl_series(m.indices[0] as u64))
        } else if m.generic {
            Some(fc_series(m.indices.len() as u64))
        } else {
            step(&mut trail, "fuss-catalan", "non-generic indices, series from closure");
            source.get(&g, &mut trail).map(|(p, _)| prefix_series(&p))
        };
        return Classification { kind: ClassKind::FussCatalan { indices: m.indices, generic: m.generic }, series, provenance: trail };
    }
    step(&mut trail, "fuss-catalan", "no");

    match cyclic_criterion(&g) {
        Ok(v) => {
            step(&mut trail, "dihedral", format!("Q values pairwise distinct over {} points", v.n));
            return Classification { kind: ClassKind::Dihedral { n: v.n }, series: Some(dihedral_series(v.n as u64)), provenance: trail };
        }
        Err(e) => step(&mut trail, "dihedral", e.to_string()),
    }

    if g.single_unoriented().is_some() {
        let n = g.n;
        for k in (2..n).filter(|k| n.is_multiple_of(*k) && n / k <= *k) {
            for y in factor_candidates(k) {
                for z in factor_candidates(n / k) {
                    match product_test(&g, &y, &z) {
                        Ok(_) => {
                            step(&mut trail, "product", format!("tensor product of {k} and {} vertex factors", n / k));
                            let factors = vec![classify(&y, cfg), classify(&z, cfg)];
                            let series = match (&factors[0].series, &factors[1].series) {
                                (Some(a), Some(b)) if a.is_closed_form() && b.is_closed_form() => {
                                    Some(PoincareSeries::Hadamard(vec![a.clone(), b.clone()]))
                                }
                                (Some(a), Some(b)) => {
                                    let terms = a.known_terms().into_iter().chain(b.known_terms()).min().unwrap_or(1) - 1;
                                    crate::series::hadamard(a, b, terms).ok()
                                }
                                _ => None,
                            };
                            return Classification { kind: ClassKind::TensorProduct { factors }, series, provenance: trail };
                        }
                        Err(NotApplicable::NotAProduct) => {}
                        Err(e) => step(&mut trail, "product", format!("{k} x {}: {e}", n / k)),
                    }
                }
            }
        }
    }
    step(&mut trail, "product", "no factorization accepted");
    fallback(&g, source, trail)
}

fn prefix_series(p: &[u64]) -> PoincareSeries {
    prefix_from_counts(&p.iter().map(|&x| x as usize).collect::<Vec<_>>())
}

fn fallback(g: &ColoredGraph, source: Prefix<'_>, mut trail: Vec<Step>) -> Classification {
    let Some((prefix, converged)) = source.get(g, &mut trail) else {
        step(&mut trail, "closure", "skipped");
        return Classification {
            kind: ClassKind::Unknown { prefix: Vec::new(), converged: None, consistent_with: Vec::new() },
            series: None,
            provenance: trail,
        };
    };
    let consistent_with: Vec<String> =
        candidate_series(g.n).into_iter().filter(|(_, s)| matches_prefix(s, &prefix)).map(|(name, _)| name).collect();
    step(&mut trail, "match", format!("consistent with {consistent_with:?} over {} terms", prefix.len()));
    let series = Some(prefix_series(&prefix));
    Classification { kind: ClassKind::Unknown { prefix, converged, consistent_with }, series, provenance: trail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cube, discrete_torus, n_gon, eight_spoke_wheel, nine_star, oriented_n_gon};

    fn kind(g: &ColoredGraph) -> ClassKind {
        classify(g, None).kind
    }

    #[test]
    fn named_examples() {
        assert_eq!(kind(&n_gon(5)), ClassKind::Dihedral { n: 5 });
        assert_eq!(kind(&nine_star(1).unwrap()), ClassKind::Dihedral { n: 9 });
        assert_eq!(kind(&eight_spoke_wheel()), ClassKind::Dihedral { n: 8 });
        assert_eq!(kind(&oriented_n_gon(4).unwrap()), ClassKind::CyclicGroup { n: 4 });
        assert_eq!(kind(&n_gon(4)), ClassKind::FussCatalan { indices: vec![2, 2], generic: false });
    }

    #[test]
    fn cube_is_a_product() {
        let c = classify(&cube(), None);
        assert_eq!(c.kind.name(), "tensor-product");
        assert_eq!(c.series.unwrap().coefficients_u64(4).unwrap(), vec![1, 1, 4, 20, 112]);
    }

    #[test]
    fn torus_is_unknown() {
        let c = classify(&discrete_torus(3), Some(&ClosureConfig::new(3).unwrap()));
        match c.kind {
            ClassKind::Unknown { prefix, .. } => assert_eq!(&prefix[..2], &[1, 1]),
            other => panic!("{other:?}"),
        }
    }
}
