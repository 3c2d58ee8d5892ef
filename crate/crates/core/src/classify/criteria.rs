use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::exact::{cyclotomic_power, rational_eigenvalues, CyclotomicElement, Rational};
use crate::graph::{
    are_isomorphic, disjoint_copies, find_isomorphism, incidence, multi_simplex, n_gon, oriented_n_gon, tensor_product,
    ColoredGraph, ComponentKind, CyclicProfile,
};
use crate::symmetry::{automorphism_group, Permutation};

/// Why a criterion does not apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NotApplicable {
    NotSingleUnoriented,
    NotCyclic,
    FourVertices,
    /// `Q(w^j) = Q(w^k)`.
    Collision { j: usize, k: usize, value: String },
    NotAProduct,
    FactorNotRegular,
    FactorDisconnected,
    IrrationalSpectrum,
    ZeroEigenvalue,
    /// A ratio other than 1 shared by both factors.
    SharedRatio(String),
}

impl fmt::Display for NotApplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotApplicable::NotSingleUnoriented => write!(f, "needs a single unoriented color"),
            NotApplicable::NotCyclic => write!(f, "no automorphism is a full cycle"),
            NotApplicable::FourVertices => write!(f, "four vertices are excluded"),
            NotApplicable::Collision { j, k, value } => write!(f, "Q(w^{j}) = Q(w^{k}) = {value}"),
            NotApplicable::NotAProduct => write!(f, "not isomorphic to the tensor product of the factors"),
            NotApplicable::FactorNotRegular => write!(f, "a factor is not regular"),
            NotApplicable::FactorDisconnected => write!(f, "a factor is disconnected"),
            NotApplicable::IrrationalSpectrum => write!(f, "a factor has irrational eigenvalues"),
            NotApplicable::ZeroEigenvalue => write!(f, "a factor has eigenvalue 0"),
            NotApplicable::SharedRatio(r) => write!(f, "eigenvalue ratio {r} occurs for both factors"),
        }
    }
}

/// Evidence that the dihedral criterion holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicVerdict {
    pub n: usize,
    pub profile: CyclicProfile,
    /// `Q(w^k)` for `k = 0..=n/2`.
    pub values: Vec<CyclotomicElement>,
    /// `relabel[v]` is the position of `v` along the cycle.
    pub relabel: Vec<usize>,
}

fn full_cycle(g: &ColoredGraph) -> Option<Permutation> {
    let group = automorphism_group(g);
    let mut found = None;
    group.for_each_element(|p| {
        if found.is_none() && p.is_full_cycle() {
            found = Some(p.clone());
        }
    });
    found
}

/// `Q(w^k)` for `k = 0..=n/2`, `w` a primitive `n`-th root of unity.
pub fn profile_values(p: &CyclicProfile) -> Vec<CyclotomicElement> {
    let n = p.n();
    (0..=n / 2)
        .map(|k| {
            p.exponents()
                .into_iter()
                .fold(CyclotomicElement::zero(n), |acc, e| acc + cyclotomic_power(n, (e * k) as i64))
        })
        .collect()
}

pub fn cyclic_criterion(g: &ColoredGraph) -> Result<CyclicVerdict, NotApplicable> {
    let c = g.single_unoriented().ok_or(NotApplicable::NotSingleUnoriented)?;
    let n = g.n;
    let sigma = full_cycle(g).ok_or(NotApplicable::NotCyclic)?;
    let mut relabel = vec![0; n];
    let mut v = 0;
    for k in 0..n {
        relabel[v] = k;
        v = sigma.apply(v);
    }
    let origin_nbrs: BTreeSet<usize> =
        c.support.iter().filter_map(|&(i, j)| if i == 0 { Some(j) } else if j == 0 { Some(i) } else { None }).collect();
    let bits = (1..n).map(|k| origin_nbrs.iter().any(|&u| relabel[u] == k)).collect();
    let profile = CyclicProfile::new(n, bits).expect("profile of a circulant graph is symmetric");
    let values = profile_values(&profile);
    if n == 4 {
        return Err(NotApplicable::FourVertices);
    }
    for k in 0..values.len() {
        for j in 0..k {
            if values[j] == values[k] {
                return Err(NotApplicable::Collision { j, k, value: values[k].to_string() });
            }
        }
    }
    Ok(CyclicVerdict { n, profile, values, relabel })
}

/// Spectral evidence for a tensor-product decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductVerdict {
    /// `bijection[v]` is the vertex of `tensor_product(y, z)` matched with `v`.
    pub bijection: Vec<usize>,
    pub spectra: [Vec<Rational>; 2],
    pub ratios: [BTreeSet<Rational>; 2],
}

fn regular_degree(g: &ColoredGraph) -> Option<usize> {
    let nb = g.neighbours();
    let d = nb.first().map_or(0, Vec::len);
    nb.iter().all(|x| x.len() == d).then_some(d)
}

pub(crate) fn is_connected(g: &ColoredGraph) -> bool {
    let nb = g.neighbours();
    let mut seen = vec![false; g.n];
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if !std::mem::replace(&mut seen[v], true) {
            stack.extend(nb[v].iter().copied());
        }
    }
    seen.iter().all(|&s| s)
}

fn ratios(spectrum: &[Rational]) -> BTreeSet<Rational> {
    spectrum.iter().flat_map(|a| spectrum.iter().map(move |b| a / b)).collect()
}

pub fn product_test(x: &ColoredGraph, y: &ColoredGraph, z: &ColoredGraph) -> Result<ProductVerdict, NotApplicable> {
    for g in [x, y, z] {
        g.single_unoriented().ok_or(NotApplicable::NotSingleUnoriented)?;
    }
    let target = tensor_product(y, z).map_err(|_| NotApplicable::NotAProduct)?;
    if x.n != target.n {
        return Err(NotApplicable::NotAProduct);
    }
    let bijection = find_isomorphism(x, &target).ok_or(NotApplicable::NotAProduct)?;
    for f in [y, z] {
        regular_degree(f).ok_or(NotApplicable::FactorNotRegular)?;
        if !is_connected(f) {
            return Err(NotApplicable::FactorDisconnected);
        }
    }
    let spectrum = |f: &ColoredGraph| -> Result<Vec<Rational>, NotApplicable> {
        let label = f.components[0].label.clone();
        let s = rational_eigenvalues(&incidence(f, &label).expect("own label"));
        if !s.splits {
            return Err(NotApplicable::IrrationalSpectrum);
        }
        let d = s.distinct();
        if d.iter().any(|l| *l == Rational::from_integer(0.into())) {
            return Err(NotApplicable::ZeroEigenvalue);
        }
        Ok(d)
    };
    let (sy, sz) = (spectrum(y)?, spectrum(z)?);
    let (ry, rz) = (ratios(&sy), ratios(&sz));
    let one = Rational::from_integer(1.into());
    if let Some(r) = ry.intersection(&rz).find(|&r| *r != one) {
        return Err(NotApplicable::SharedRatio(r.to_string()));
    }
    Ok(ProductVerdict { bijection, spectra: [sy, sz], ratios: [ry, rz] })
}

/// How a graph was matched with a multi-simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FcRoute {
    MultiSimplex,
    Complete,
    Edgeless,
    DisjointCliques,
    TwoSquares,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FcMatch {
    pub indices: Vec<usize>,
    /// All indices at least 4, where the closed-form series applies.
    pub generic: bool,
    pub route: FcRoute,
}

impl FcMatch {
    fn new(indices: Vec<usize>, route: FcRoute) -> Self {
        let generic = indices.iter().all(|&k| k >= 4);
        Self { indices, generic, route }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    permutations(k - 1)
        .into_iter()
        .flat_map(|p| {
            (0..k).map(move |at| {
                let mut q = p.clone();
                q.insert(at, k - 1);
                q
            })
        })
        .collect()
}

/// Multi-simplex with colors in some order, found from the color degrees.
fn explicit_multi_simplex(g: &ColoredGraph) -> Option<Vec<usize>> {
    let s = g.components.len();
    if !(2..=6).contains(&s) || g.n == 0 || g.components.iter().any(|c| c.kind != ComponentKind::Unoriented) {
        return None;
    }
    let degrees: Vec<usize> = g.components.iter().map(|c| 2 * c.edge_count() / g.n).collect();
    for order in permutations(s) {
        let mut indices = Vec::with_capacity(s);
        let mut tail = 1;
        let mut ok = true;
        for &c in order.iter().rev() {
            if degrees[c] == 0 || !degrees[c].is_multiple_of(tail) {
                ok = false;
                break;
            }
            let ni = degrees[c] / tail + 1;
            indices.push(ni);
            tail *= ni;
        }
        if !ok || tail != g.n {
            continue;
        }
        indices.reverse();
        if multi_simplex(&indices).is_ok_and(|h| are_isomorphic(g, &h)) {
            return Some(indices);
        }
    }
    None
}

/// Vertex sets of the connected components.
fn components(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let nb = g.neighbours();
    let mut seen = vec![false; g.n];
    let mut out = Vec::new();
    for s in 0..g.n {
        if seen[s] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            if !std::mem::replace(&mut seen[v], true) {
                comp.push(v);
                stack.extend(nb[v].iter().copied());
            }
        }
        out.push(comp);
    }
    out
}

pub fn recognize_fuss_catalan(g: &ColoredGraph) -> Option<FcMatch> {
    if let Some(indices) = explicit_multi_simplex(g) {
        return Some(FcMatch::new(indices, FcRoute::MultiSimplex));
    }
    let c = g.single_unoriented()?;
    let n = g.n;
    if c.support.is_empty() {
        return Some(FcMatch::new(vec![n], FcRoute::Edgeless));
    }
    if c.edge_count() == n * (n - 1) / 2 {
        return Some(FcMatch::new(vec![n], FcRoute::Complete));
    }
    let parts = components(g);
    let m = parts[0].len();
    let nb = g.neighbours();
    if parts.len() >= 2 && m >= 2 && parts.iter().all(|p| p.len() == m) && nb.iter().all(|x| x.len() == m - 1) {
        return Some(FcMatch::new(vec![parts.len(), m], FcRoute::DisjointCliques));
    }
    if n == 8 && are_isomorphic(g, &disjoint_copies(2, &n_gon(4))) {
        return Some(FcMatch::new(vec![2, 2, 2], FcRoute::TwoSquares));
    }
    None
}

/// `Some(n)` when `g` is a directed `n`-cycle.
pub fn oriented_cycle_length(g: &ColoredGraph) -> Option<usize> {
    if g.components.len() != 1 || g.components[0].kind != ComponentKind::Oriented || g.n == 2 {
        return None;
    }
    let h = oriented_n_gon(g.n).ok()?;
    are_isomorphic(g, &h).then_some(g.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cube, cyclic_from_profile, eight_spoke_wheel, nine_star, discrete_torus, edgeless};

    #[test]
    fn wheel_values() {
        let v = cyclic_criterion(&eight_spoke_wheel()).unwrap();
        let shown: Vec<String> = v.values.iter().map(ToString::to_string).collect();
        assert_eq!(v.values.len(), 5);
        assert_eq!(v.values[0].as_rational(), Some(Rational::from_integer(3.into())));
        assert_eq!(v.values[2].as_rational(), Some(Rational::from_integer(1.into())));
        assert_eq!(v.values[4].as_rational(), Some(Rational::from_integer((-1).into())));
        assert!(v.values[1].as_rational().is_none(), "{shown:?}");
    }

    #[test]
    fn stars_and_exclusions() {
        assert!(cyclic_criterion(&nine_star(1).unwrap()).is_ok());
        assert!(cyclic_criterion(&nine_star(2).unwrap()).is_ok());
        assert_eq!(cyclic_criterion(&n_gon(4)), Err(NotApplicable::FourVertices));
        let tetra = cyclic_from_profile(&CyclicProfile::from_exponents(8, &[2, 4, 6]).unwrap());
        assert!(matches!(cyclic_criterion(&tetra), Err(NotApplicable::Collision { j: 1, k: 2, .. })));
        assert_eq!(cyclic_criterion(&cube()), Err(NotApplicable::NotCyclic));
    }

    #[test]
    fn products() {
        assert!(product_test(&cube(), &complete(4), &complete(2)).is_ok());
        assert!(product_test(&n_gon(6), &n_gon(3), &complete(2)).is_ok());
        let torus = product_test(&discrete_torus(3), &n_gon(3), &n_gon(3));
        assert!(matches!(torus, Err(NotApplicable::SharedRatio(_))), "{torus:?}");
        assert_eq!(product_test(&n_gon(5), &n_gon(3), &complete(2)), Err(NotApplicable::NotAProduct));
    }

    #[test]
    fn fuss_catalan_routes() {
        let m = recognize_fuss_catalan(&multi_simplex(&[3, 5]).unwrap()).unwrap();
        assert_eq!((m.indices, m.generic, m.route), (vec![3, 5], false, FcRoute::MultiSimplex));
        let m = recognize_fuss_catalan(&disjoint_copies(2, &complete(4))).unwrap();
        assert_eq!((m.indices, m.route), (vec![2, 4], FcRoute::DisjointCliques));
        let m = recognize_fuss_catalan(&disjoint_copies(2, &n_gon(4))).unwrap();
        assert_eq!((m.indices, m.route), (vec![2, 2, 2], FcRoute::TwoSquares));
        assert_eq!(recognize_fuss_catalan(&edgeless(5)).unwrap().route, FcRoute::Edgeless);
        assert!(recognize_fuss_catalan(&n_gon(5)).is_none());
        assert!(recognize_fuss_catalan(&multi_simplex(&[4, 4]).unwrap()).unwrap().generic);
    }

    #[test]
    fn oriented_cycles() {
        assert_eq!(oriented_cycle_length(&oriented_n_gon(5).unwrap()), Some(5));
        assert_eq!(oriented_cycle_length(&n_gon(5)), None);
    }
}
