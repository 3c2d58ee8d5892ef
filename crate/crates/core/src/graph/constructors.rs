use super::{ColorComponent, ColoredGraph, ComponentKind, GraphError, DEFAULT_LABEL};

/// Neighbour profile of vertex 0 in a graph invariant under `k ↦ k+1 mod n`:
/// `e[k-1]` says whether `{0, k}` is an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicProfile {
    n: usize,
    e: Vec<bool>,
}

impl CyclicProfile {
    pub fn new(n: usize, e: Vec<bool>) -> Result<Self, GraphError> {
        if n == 0 || e.len() != n - 1 {
            return Err(GraphError::Precondition(format!("profile of a {n}-vertex graph needs {} bits", n.saturating_sub(1))));
        }
        for k in 1..n {
            if e[k - 1] != e[n - k - 1] {
                return Err(GraphError::Precondition(format!("profile is not symmetric at {k}")));
            }
        }
        Ok(Self { n, e })
    }

    /// Profile from the exponents of `Q(z) = Σ z^k`.
    pub fn from_exponents(n: usize, exponents: &[usize]) -> Result<Self, GraphError> {
        let mut e = vec![false; n.saturating_sub(1)];
        for &k in exponents {
            if k == 0 || k >= n {
                return Err(GraphError::Precondition(format!("exponent {k} outside 1..{n}")));
            }
            e[k - 1] = true;
        }
        Self::new(n, e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `e(k)` for `1 ≤ k ≤ n−1`.
    pub fn bit(&self, k: usize) -> bool {
        self.e[k - 1]
    }

    pub fn exponents(&self) -> Vec<usize> {
        (1..self.n).filter(|&k| self.bit(k)).collect()
    }
}

fn single(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> ColoredGraph {
    ColoredGraph::unchecked(n, vec![ColorComponent::unoriented(DEFAULT_LABEL, edges)])
}

/// Cycle on `n` vertices; `n = 1` is a point and `n = 2` a segment.
pub fn n_gon(n: usize) -> ColoredGraph {
    assert!(n >= 1, "n_gon needs at least one vertex");
    single(n, (0..n).map(|i| (i, (i + 1) % n)).filter(|(i, j)| i != j))
}

/// Directed cycle `0 → 1 → … → n−1 → 0`. Two vertices would need a pair of
/// antiparallel arcs, which is not a valid oriented color.
pub fn oriented_n_gon(n: usize) -> Result<ColoredGraph, GraphError> {
    if n == 0 || n == 2 {
        return Err(GraphError::Precondition(format!("no oriented {n}-gon")));
    }
    let arcs = (0..n).map(|i| (i, (i + 1) % n)).filter(|(i, j)| i != j);
    Ok(ColoredGraph::unchecked(n, vec![ColorComponent::oriented(DEFAULT_LABEL, arcs)]))
}

/// `n` points and one empty color.
pub fn edgeless(n: usize) -> ColoredGraph {
    assert!(n >= 1, "edgeless needs at least one vertex");
    single(n, [])
}

pub fn complete(n: usize) -> ColoredGraph {
    assert!(n >= 1, "complete needs at least one vertex");
    single(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

/// Disjoint union, vertices of `h` shifted by `g.n`; colors with equal labels
/// and kinds are merged.
pub fn disjoint_union(g: &ColoredGraph, h: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
    let mut components = g.components.clone();
    for c in &h.components {
        let shifted = c.support.iter().map(|&(i, j)| (i + g.n, j + g.n));
        match components.iter_mut().find(|d| d.label == c.label && d.kind == c.kind) {
            Some(d) => d.support.extend(shifted),
            None => components.push(ColorComponent { support: shifted.collect(), ..c.clone() }),
        }
    }
    ColoredGraph::new(g.n + h.n, components)
}

/// `k` disjoint copies of `g`, colors shared across copies.
pub fn disjoint_copies(k: usize, g: &ColoredGraph) -> ColoredGraph {
    assert!(k >= 1, "need at least one copy");
    let components = g
        .components
        .iter()
        .map(|c| ColorComponent {
            support: (0..k).flat_map(|t| c.support.iter().map(move |&(i, j)| (i + t * g.n, j + t * g.n))).collect(),
            ..c.clone()
        })
        .collect();
    ColoredGraph::unchecked(k * g.n, components)
}

/// Circulant graph with `{i, i+k}` an edge whenever `e(k)` is set.
pub fn cyclic_from_profile(p: &CyclicProfile) -> ColoredGraph {
    let n = p.n();
    single(n, (0..n).flat_map(|i| p.exponents().into_iter().map(move |k| (i, (i + k) % n))))
}

/// Complete graph on `Y_1 × … × Y_s` (`|Y_i| = n_i`, mixed radix with the
/// first coordinate most significant); pairs whose first differing
/// coordinate is `i` get color `e{i}`.
pub fn multi_simplex(indices: &[usize]) -> Result<ColoredGraph, GraphError> {
    if indices.is_empty() || indices.iter().any(|&k| k < 2) {
        return Err(GraphError::Precondition("multi-simplex indices must be at least 2".into()));
    }
    let n: usize = indices.iter().product();
    let digits = |mut v: usize| {
        let mut d = vec![0; indices.len()];
        for (slot, &base) in d.iter_mut().zip(indices).rev() {
            *slot = v % base;
            v /= base;
        }
        d
    };
    let coords: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let mut edges = vec![Vec::new(); indices.len()];
    for a in 0..n {
        for b in a + 1..n {
            let first = (0..indices.len()).find(|&t| coords[a][t] != coords[b][t]).expect("distinct vertices");
            edges[first].push((a, b));
        }
    }
    let components =
        edges.into_iter().enumerate().map(|(t, es)| ColorComponent::unoriented(format!("e{}", t + 1), es)).collect();
    Ok(ColoredGraph::unchecked(n, components))
}

/// Tensor (categorical) product: `(a,b) ~ (c,d)` iff `a ~ c` and `b ~ d`,
/// with vertex `(a,b)` numbered `a·|Z| + b`.
pub fn tensor_product(y: &ColoredGraph, z: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
    let (Some(cy), Some(cz)) = (y.single_unoriented(), z.single_unoriented()) else {
        return Err(GraphError::Precondition("tensor product factors must have one unoriented color".into()));
    };
    let m = z.n;
    let mut edges = Vec::new();
    for &(a, c) in &cy.support {
        for &(b, d) in &cz.support {
            edges.push((a * m + b, c * m + d));
        }
    }
    let comp = ColorComponent { label: DEFAULT_LABEL.into(), kind: ComponentKind::Unoriented, support: edges.into_iter().collect(), value: None };
    Ok(ColoredGraph::unchecked(y.n * m, vec![comp]))
}

/// The 3-cube on bit strings of length 3.
pub fn cube() -> ColoredGraph {
    single(8, (0..8usize).flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b)))))
}

/// Circulant on 8 vertices with `Q(z) = z + z⁴ + z⁷`.
pub fn eight_spoke_wheel() -> ColoredGraph {
    cyclic_from_profile(&CyclicProfile::from_exponents(8, &[1, 4, 7]).expect("valid profile"))
}

/// Circulant on 9 vertices with `Q(z) = z + z^{1+e} + z^{8−e} + z⁸`, `e ∈ {1, 2}`.
pub fn nine_star(e: usize) -> Result<ColoredGraph, GraphError> {
    if !(1..=2).contains(&e) {
        return Err(GraphError::Precondition(format!("nine_star takes e in {{1,2}}, got {e}")));
    }
    Ok(cyclic_from_profile(&CyclicProfile::from_exponents(9, &[1, 1 + e, 8 - e, 8])?))
}

/// The `k × k` discrete torus, built as `complete(k) ⊗ complete(k)`.
pub fn discrete_torus(k: usize) -> ColoredGraph {
    tensor_product(&complete(k), &complete(k)).expect("single-color factors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{are_isomorphic, validate};

    #[test]
    fn multi_simplex_edge_counts() {
        let g = multi_simplex(&[2, 2, 2]).unwrap();
        assert_eq!(g.n, 8);
        let counts: Vec<usize> = g.components.iter().map(|c| c.edge_count()).collect();
        assert_eq!(counts, vec![16, 8, 4]);
        assert!(validate(&g).is_empty());
    }

    #[test]
    fn k4_times_k2_is_cube() {
        let g = tensor_product(&complete(4), &complete(2)).unwrap();
        assert!(are_isomorphic(&g, &cube()));
    }

    #[test]
    fn pentagon_from_profile() {
        let p = CyclicProfile::new(5, vec![true, false, false, true]).unwrap();
        assert_eq!(cyclic_from_profile(&p), n_gon(5));
    }

    #[test]
    fn asymmetric_profile_rejected() {
        assert!(CyclicProfile::new(5, vec![true, false, false, false]).is_err());
    }

    #[test]
    fn small_polygons() {
        assert_eq!(n_gon(1).components[0].edge_count(), 0);
        assert_eq!(n_gon(2).components[0].edge_count(), 1);
        assert!(oriented_n_gon(2).is_err());
        assert_eq!(oriented_n_gon(1).unwrap().components[0].edge_count(), 0);
    }

    #[test]
    fn nine_stars_are_four_regular() {
        for e in 1..=2 {
            let g = nine_star(e).unwrap();
            assert!(g.neighbours().iter().all(|nb| nb.len() == 4));
        }
        assert!(nine_star(3).is_err());
    }

    #[test]
    fn torus_is_four_regular() {
        let g = discrete_torus(3);
        assert_eq!(g.n, 9);
        assert!(g.neighbours().iter().all(|nb| nb.len() == 4));
    }
}
