//! Classical symmetry: automorphism groups, fixed-point statistics and the
//! classical coaction.

mod perm;
mod search;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::exact::{ExactMatrix, GaussianRational, Rational};
use crate::series::PoincareSeries;

pub use perm::{Permutation, PermutationGroup};
pub use search::automorphism_group;

pub fn is_vertex_transitive(group: &PermutationGroup) -> bool {
    group.degree() == 0 || group.orbit(0).len() == group.degree()
}

/// `counts[m]` = number of group elements with exactly `m` fixed points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointHistogram {
    counts: Vec<u64>,
}

impl FixedPointHistogram {
    pub fn degree(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, m: usize) -> u64 {
        self.counts.get(m).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Nonzero entries `m → #G_m`.
    pub fn nonzero(&self) -> BTreeMap<usize, u64> {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(m, &c)| (m, c)).collect()
    }
}

pub fn fixed_point_histogram(group: &PermutationGroup) -> FixedPointHistogram {
    let mut counts = vec![0u64; group.degree() + 1];
    group.for_each_element(|g| counts[g.fixed_points()] += 1);
    FixedPointHistogram { counts }
}

/// `f(z) = (1/|G|) Σ_m #G_m / (1 − m z)`.
pub fn classical_series(h: &FixedPointHistogram) -> PoincareSeries {
    let total = BigInt::from(h.total());
    let weights = h.nonzero().into_iter().map(|(m, c)| (m as u64, Rational::new(BigInt::from(c), total.clone()))).collect();
    PoincareSeries::rational_sum(weights).expect("histogram weights sum to one")
}

/// The matrix of sets `{g : g(j) = i}`, each encoded as a bit vector over
/// the sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCoaction {
    n: usize,
    elements: Vec<Permutation>,
    words: usize,
    sets: Vec<Vec<u64>>,
}

pub fn build_classical_coaction(group: &PermutationGroup) -> ClassicalCoaction {
    let n = group.degree();
    let elements = group.elements();
    let words = elements.len().div_ceil(64);
    let mut sets = vec![vec![0u64; words]; n * n];
    for (idx, g) in elements.iter().enumerate() {
        for j in 0..n {
            sets[g.apply(j) * n + j][idx / 64] |= 1 << (idx % 64);
        }
    }
    ClassicalCoaction { n, elements, words, sets }
}

impl ClassicalCoaction {
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn entry(&self, i: usize, j: usize) -> Vec<&Permutation> {
        let set = &self.sets[i * self.n + j];
        (0..self.elements.len()).filter(|&k| set[k / 64] >> (k % 64) & 1 == 1).map(|k| &self.elements[k]).collect()
    }

    fn member(&self, i: usize, j: usize, k: usize) -> bool {
        self.sets[i * self.n + j][k / 64] >> (k % 64) & 1 == 1
    }

    /// Every row and every column is a partition of the group.
    pub fn is_magic(&self) -> bool {
        let full: Vec<u64> = (0..self.words)
            .map(|w| {
                let bits = (self.elements.len() - 64 * w).min(64);
                if bits == 64 {
                    u64::MAX
                } else {
                    (1u64 << bits) - 1
                }
            })
            .collect();
        let partitions = |cells: &mut dyn Iterator<Item = &Vec<u64>>| {
            let mut acc = vec![0u64; self.words];
            for c in cells {
                for (a, x) in acc.iter_mut().zip(c) {
                    if *a & x != 0 {
                        return false;
                    }
                    *a |= x;
                }
            }
            acc == full
        };
        (0..self.n).all(|i| partitions(&mut (0..self.n).map(|j| &self.sets[i * self.n + j])))
            && (0..self.n).all(|j| partitions(&mut (0..self.n).map(|i| &self.sets[i * self.n + j])))
    }

    /// `u·d = d·u` as matrices of functions on the group, evaluated pointwise.
    pub fn commutes_with(&self, d: &ExactMatrix) -> bool {
        let n = self.n;
        for k in 0..self.elements.len() {
            for i in 0..n {
                for j in 0..n {
                    let mut ud = GaussianRational::default();
                    let mut du = GaussianRational::default();
                    for l in 0..n {
                        if self.member(i, l, k) {
                            ud = &ud + d.get(l, j);
                        }
                        if self.member(l, j, k) {
                            du = &du + d.get(i, l);
                        }
                    }
                    if ud != du {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `d_{ij} = d_{g(i) g(j)}` for every element and every pair.
pub fn group_preserves(group: &PermutationGroup, d: &ExactMatrix) -> bool {
    let n = d.size();
    let mut ok = true;
    group.for_each_element(|g| {
        if ok {
            ok = (0..n).all(|i| (0..n).all(|j| d.get(i, j) == d.get(g.apply(i), g.apply(j))));
        }
    });
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, complete, incidence, n_gon, oriented_n_gon, DEFAULT_LABEL};

    #[test]
    fn dihedral_histogram() {
        let h = fixed_point_histogram(&automorphism_group(&n_gon(5)));
        assert_eq!(h.nonzero(), BTreeMap::from([(0, 4), (1, 5), (5, 1)]));
    }

    #[test]
    fn cyclic_histogram_and_series() {
        let h = fixed_point_histogram(&automorphism_group(&oriented_n_gon(3).unwrap()));
        assert_eq!(h.nonzero(), BTreeMap::from([(0, 2), (3, 1)]));
        assert_eq!(classical_series(&h).coefficients_u64(4).unwrap(), vec![1, 1, 3, 9, 27]);
    }

    #[test]
    fn trivial_group_series() {
        let h = fixed_point_histogram(&PermutationGroup::trivial(1));
        assert_eq!(h.nonzero(), BTreeMap::from([(1, 1)]));
        assert_eq!(classical_series(&h).coefficients_u64(5).unwrap(), vec![1; 6]);
    }

    #[test]
    fn pentagon_series() {
        let h = fixed_point_histogram(&automorphism_group(&n_gon(5)));
        assert_eq!(classical_series(&h).coefficients_u64(4).unwrap(), vec![1, 1, 3, 13, 63]);
    }

    #[test]
    fn transitivity() {
        assert!(is_vertex_transitive(&automorphism_group(&n_gon(5))));
        assert!(!is_vertex_transitive(&automorphism_group(&disjoint_union(&complete(3), &n_gon(5)).unwrap())));
        assert!(is_vertex_transitive(&automorphism_group(&complete(1))));
    }

    #[test]
    fn swap_coaction() {
        let g = PermutationGroup::from_generators(2, &[Permutation::new(vec![1, 0]).unwrap()]);
        let u = build_classical_coaction(&g);
        assert_eq!(u.entry(0, 0), vec![&Permutation::identity(2)]);
        assert_eq!(u.entry(0, 1), vec![&Permutation::new(vec![1, 0]).unwrap()]);
        assert!(u.is_magic());
    }

    #[test]
    fn coaction_commutes_with_incidence() {
        let g = n_gon(5);
        let u = build_classical_coaction(&automorphism_group(&g));
        let d = incidence(&g, DEFAULT_LABEL).unwrap();
        assert!(u.is_magic());
        assert!(u.commutes_with(&d));
        let not_invariant = ExactMatrix::from_fn(5, |i, j| GaussianRational::from_int((i * 5 + j) as i64));
        assert!(!u.commutes_with(&not_invariant));
        assert!(!group_preserves(&automorphism_group(&g), &not_invariant));
    }
}
