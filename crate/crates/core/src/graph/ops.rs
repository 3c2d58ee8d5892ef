use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use super::{ColorComponent, ColoredGraph, ComponentKind, GraphError};
use crate::exact::{ExactMatrix, Rational};

/// Split a self-adjoint, zero-diagonal matrix into value classes.
///
/// A real value `c` gives an unoriented color labelled `c` with value `c`;
/// the pair of values `±b·i` (`b > 0`) gives an oriented color labelled `b*i`
/// with value `b` whose arcs are the entries equal to `b·i`.
pub fn decompose(d: &ExactMatrix) -> Result<ColoredGraph, GraphError> {
    let n = d.size();
    if !d.is_self_adjoint() || d.diagonal().iter().any(|x| !x.is_zero()) {
        return Err(GraphError::Precondition("matrix must be self-adjoint with zero diagonal".into()));
    }
    let mut real: BTreeMap<Rational, Vec<(usize, usize)>> = BTreeMap::new();
    let mut imag: BTreeMap<Rational, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, j, x) in d.entries() {
        if x.is_zero() {
            continue;
        }
        if x.is_real() {
            if i < j {
                real.entry(x.re.clone()).or_default().push((i, j));
            }
        } else if x.is_imaginary() {
            if x.im.is_positive() {
                imag.entry(x.im.clone()).or_default().push((i, j));
            }
        } else {
            return Err(GraphError::OutsideRegime { i, j, value: x.to_string() });
        }
    }
    let mut components: Vec<ColorComponent> =
        real.into_iter().map(|(v, es)| ColorComponent::unoriented(v.to_string(), es).with_value(v)).collect();
    components.extend(imag.into_iter().map(|(b, arcs)| ColorComponent::oriented(format!("{b}*i"), arcs).with_value(b)));
    ColoredGraph::new(n, components)
}

/// Finite metric space with exact distances. When `squared` is set the stored
/// values are squared distances, which is enough since only equality classes
/// of distances matter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricSpace {
    dist: Vec<Vec<Rational>>,
    squared: bool,
}

impl MetricSpace {
    pub fn new(dist: Vec<Vec<Rational>>) -> Result<Self, GraphError> {
        Self::build(dist, false)
    }

    pub fn from_squared(dist2: Vec<Vec<Rational>>) -> Result<Self, GraphError> {
        Self::build(dist2, true)
    }

    #[allow(clippy::needless_range_loop)]
    fn build(dist: Vec<Vec<Rational>>, squared: bool) -> Result<Self, GraphError> {
        let n = dist.len();
        let bad = |msg: String| Err(GraphError::Precondition(msg));
        if dist.iter().any(|r| r.len() != n) {
            return bad("distance matrix must be square".into());
        }
        for i in 0..n {
            for j in 0..n {
                let x = &dist[i][j];
                if x.is_negative() || (i == j) != x.is_zero() || *x != dist[j][i] {
                    return bad(format!("entry ({i},{j}) breaks symmetry, positivity or zero diagonal"));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !triangle_holds(&dist[i][k], &dist[k][j], &dist[i][j], squared) {
                        return bad(format!("triangle inequality fails for {i},{k},{j}"));
                    }
                }
            }
        }
        Ok(Self { dist, squared })
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn is_squared(&self) -> bool {
        self.squared
    }

    pub fn distance(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    /// Vertices of the regular `n`-gon; the graph distance `min(k, n−k)` has
    /// the same equality classes as chord length.
    pub fn regular_polygon(n: usize) -> Self {
        let d = |i: usize, j: usize| {
            let k = i.abs_diff(j);
            Rational::from_integer(k.min(n - k).into())
        };
        Self::new((0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect()).expect("polygon metric is valid")
    }

    /// `n` points at mutual distance 1.
    pub fn simplex(n: usize) -> Self {
        let d = |i: usize, j: usize| Rational::from_integer(u8::from(i != j).into());
        Self::new((0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect()).expect("simplex metric is valid")
    }

    /// Unit cube vertices, squared Euclidean distances.
    pub fn cube() -> Self {
        let d = |i: usize, j: usize| Rational::from_integer((i ^ j).count_ones().into());
        Self::from_squared((0..8).map(|i| (0..8).map(|j| d(i, j)).collect()).collect()).expect("cube metric is valid")
    }
}

/// `c ≤ a + b` on distances, or on their squares `√c ≤ √a + √b`.
fn triangle_holds(a: &Rational, b: &Rational, c: &Rational, squared: bool) -> bool {
    if !squared {
        return c <= &(a + b);
    }
    // √c ≤ √a + √b ⇔ c ≤ a + b + 2√(ab) ⇔ c − a − b ≤ 0 or (c − a − b)² ≤ 4ab
    let excess = c - a - b;
    !excess.is_positive() || &excess * &excess <= Rational::from_integer(4.into()) * a * b
}

/// Complete graph colored by distance, one unoriented color per distinct value.
pub fn metric_import(m: &MetricSpace) -> ColoredGraph {
    let n = m.len();
    let mut classes: BTreeMap<&Rational, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            classes.entry(m.distance(i, j)).or_default().push((i, j));
        }
    }
    let components = classes
        .into_iter()
        .map(|(v, es)| {
            let label = if m.is_squared() { format!("sqrt({v})") } else { v.to_string() };
            ColorComponent::unoriented(label, es).with_value(v.clone())
        })
        .collect();
    ColoredGraph::unchecked(n, components)
}

/// Complement of a single-color unoriented graph, keeping its label.
pub fn complement(g: &ColoredGraph) -> Result<ColoredGraph, GraphError> {
    let Some(c) = g.single_unoriented() else {
        return Err(GraphError::Precondition("complement needs exactly one unoriented color".into()));
    };
    let n = g.n;
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|p| !c.support.contains(p));
    Ok(ColoredGraph::unchecked(n, vec![ColorComponent::unoriented(c.label.clone(), edges)]))
}

/// Structural edits that leave the quantum symmetry algebra unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    RemoveColor(String),
    /// Flip every arc of an oriented color.
    Reverse(String),
    /// Turn an oriented color into an unoriented one.
    Forget(String),
    /// Union two colors of the same kind under the first label.
    Merge(String, String),
    /// Add a fresh unoriented color on every uncovered pair.
    Saturate,
}

pub fn apply_move(g: &ColoredGraph, mv: &Move) -> Result<ColoredGraph, GraphError> {
    let mut out = g.clone();
    let index = |label: &str| {
        g.components.iter().position(|c| c.label == label).ok_or_else(|| GraphError::UnknownLabel(label.to_string()))
    };
    let oriented_index = |label: &str| {
        let k = index(label)?;
        if g.components[k].kind != ComponentKind::Oriented {
            return Err(GraphError::Precondition(format!("color {label} is not oriented")));
        }
        Ok(k)
    };
    match mv {
        Move::RemoveColor(label) => {
            out.components.remove(index(label)?);
        }
        Move::Reverse(label) => {
            let c = &mut out.components[oriented_index(label)?];
            c.support = c.support.iter().map(|&(i, j)| (j, i)).collect();
        }
        Move::Forget(label) => {
            let c = &mut out.components[oriented_index(label)?];
            c.kind = ComponentKind::Unoriented;
            c.support = c.support.iter().flat_map(|&(i, j)| [(i, j), (j, i)]).collect();
        }
        Move::Merge(a, b) => {
            let (ka, kb) = (index(a)?, index(b)?);
            if ka == kb || g.components[ka].kind != g.components[kb].kind {
                return Err(GraphError::Precondition(format!("cannot merge {a} and {b}")));
            }
            let extra = g.components[kb].support.clone();
            out.components[ka].support.extend(extra);
            out.components[ka].value = None;
            out.components.remove(kb);
        }
        Move::Saturate => {
            let covered: BTreeSet<(usize, usize)> = g.components.iter().flat_map(|c| c.unordered_pairs()).collect();
            let missing: Vec<(usize, usize)> =
                (0..g.n).flat_map(|i| (i + 1..g.n).map(move |j| (i, j))).filter(|p| !covered.contains(p)).collect();
            if !missing.is_empty() {
                let mut label = "saturation".to_string();
                while g.components.iter().any(|c| c.label == label) {
                    label.push('\'');
                }
                out.components.push(ColorComponent::unoriented(label, missing));
            }
        }
    }
    ColoredGraph::new(out.n, out.components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat_int, GaussianRational};
    use crate::graph::{complete, cube, disjoint_copies, edgeless, incidence, n_gon, oriented_n_gon, reassemble, DEFAULT_LABEL};

    #[test]
    fn cube_metric_has_three_distance_classes() {
        let g = metric_import(&MetricSpace::cube());
        assert_eq!(g.components.len(), 3);
        let d1 = incidence(&g, "sqrt(1)").unwrap();
        let d2 = incidence(&g, "sqrt(2)").unwrap();
        let three = ExactMatrix::identity(8).scale(&GaussianRational::from_int(3));
        let two_d2 = d2.scale(&GaussianRational::from_int(2));
        assert_eq!(&d1 * &d1, &three + &two_d2);
    }

    #[test]
    fn zero_matrix_decomposes_to_nothing() {
        let g = decompose(&ExactMatrix::zeros(4)).unwrap();
        assert!(g.components.is_empty());
    }

    #[test]
    fn decompose_reassembles() {
        let m = ExactMatrix::from_integers(&[vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]]);
        let g = decompose(&m).unwrap();
        assert_eq!(g.components.len(), 2);
        assert_eq!(reassemble(&g), m);
    }

    #[test]
    fn decompose_oriented() {
        let s = incidence(&oriented_n_gon(3).unwrap(), DEFAULT_LABEL).unwrap();
        let g = decompose(&s).unwrap();
        assert_eq!(g.components[0].kind, ComponentKind::Oriented);
        assert_eq!(reassemble(&g), s);
    }

    #[test]
    fn decompose_rejects_general_complex() {
        let mut m = ExactMatrix::zeros(2);
        m.set(0, 1, GaussianRational::from_int(1) + GaussianRational::i());
        m.set(1, 0, GaussianRational::from_int(1) - GaussianRational::i());
        assert!(matches!(decompose(&m), Err(GraphError::OutsideRegime { .. })));
    }

    #[test]
    fn polygon_and_simplex_metrics() {
        let g = metric_import(&MetricSpace::regular_polygon(5));
        assert_eq!(g.components.len(), 2);
        assert_eq!(g.components[0].value, Some(rat_int(1)));
        assert_eq!(g.components[0].edge_count(), 5);
        let s = metric_import(&MetricSpace::simplex(4));
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.components[0].support, complete(4).components[0].support);
        assert_eq!(metric_import(&MetricSpace::simplex(2)).components[0].edge_count(), 1);
    }

    #[test]
    fn triangle_inequality_enforced() {
        let d = |v: [[i64; 3]; 3]| v.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect::<Vec<_>>();
        assert!(MetricSpace::new(d([[0, 1, 3], [1, 0, 1], [3, 1, 0]])).is_err());
        // squared lengths 1, 1, 4 are a degenerate (collinear) triangle
        assert!(MetricSpace::from_squared(d([[0, 1, 4], [1, 0, 1], [4, 1, 0]])).is_ok());
        assert!(MetricSpace::from_squared(d([[0, 1, 5], [1, 0, 1], [5, 1, 0]])).is_err());
    }

    #[test]
    fn complement_basics() {
        assert_eq!(complement(&edgeless(4)).unwrap(), complete(4));
        let p = n_gon(5);
        assert_eq!(complement(&complement(&p).unwrap()).unwrap(), p);
        assert_eq!(complement(&p).unwrap(), p.relabel(&[0, 2, 4, 1, 3]));
        assert!(complement(&cube().rename_colors(|_| "x".into())).is_ok());
        assert!(complement(&oriented_n_gon(3).unwrap()).is_err());
    }

    #[test]
    fn saturate_two_triangles() {
        let g = apply_move(&disjoint_copies(2, &complete(3)), &Move::Saturate).unwrap();
        assert_eq!(g.components.len(), 2);
        assert_eq!(g.components[1].edge_count(), 9);
    }

    #[test]
    fn reverse_negates_incidence() {
        let g = oriented_n_gon(5).unwrap();
        let r = apply_move(&g, &Move::Reverse(DEFAULT_LABEL.into())).unwrap();
        let a = incidence(&g, DEFAULT_LABEL).unwrap();
        let b = incidence(&r, DEFAULT_LABEL).unwrap();
        assert_eq!(b, a.scale(&GaussianRational::from_int(-1)));
    }

    #[test]
    fn forget_oriented_triangle() {
        let g = apply_move(&oriented_n_gon(3).unwrap(), &Move::Forget(DEFAULT_LABEL.into())).unwrap();
        assert_eq!(g, complete(3));
    }

    #[test]
    fn merge_requires_same_kind() {
        let g = ColoredGraph::new(
            3,
            vec![ColorComponent::unoriented("a", [(0, 1)]), ColorComponent::oriented("b", [(1, 2)])],
        )
        .unwrap();
        assert!(apply_move(&g, &Move::Merge("a".into(), "b".into())).is_err());
        assert!(apply_move(&g, &Move::Reverse("a".into())).is_err());
    }
}
