use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

/// Bijection of `0..n` stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|(i, x)| i == *x).count()
    }

    /// Cycle `0 → 1 → … → n−1 → 0`.
    pub fn cycle(n: usize) -> Self {
        Self((0..n).map(|i| (i + 1) % n).collect())
    }

    /// A single cycle through all points.
    pub fn is_full_cycle(&self) -> bool {
        let n = self.0.len();
        if n == 0 {
            return false;
        }
        let mut x = self.0[0];
        let mut len = 1;
        while x != 0 {
            x = self.0[x];
            len += 1;
        }
        len == n
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// One level of a stabilizer chain: the base point and a coset
/// representative for every point of its basic orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ChainLevel {
    pub base: usize,
    pub transversal: BTreeMap<usize, Permutation>,
}

/// Permutation group given by a stabilizer chain.
///
/// The element list is produced on demand from the transversals, so that
/// groups far larger than anything stored explicitly stay cheap to hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<ChainLevel>,
}

impl PermutationGroup {
    pub(crate) fn from_chain(degree: usize, generators: Vec<Permutation>, chain: Vec<ChainLevel>) -> Self {
        Self { degree, generators, chain }
    }

    pub fn trivial(degree: usize) -> Self {
        Self { degree, generators: Vec::new(), chain: Vec::new() }
    }

    /// Group generated by `gens`, by closing the element set; only for small groups.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Self {
        let id = Permutation::identity(degree);
        let mut elements = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for s in gens {
                let y = s.compose(&x);
                if elements.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut chain = Vec::new();
        let mut current: Vec<Permutation> = elements.into_iter().collect();
        for b in 0..degree {
            let mut transversal = BTreeMap::new();
            for g in &current {
                transversal.entry(g.apply(b)).or_insert_with(|| g.clone());
            }
            if transversal.len() > 1 {
                chain.push(ChainLevel { base: b, transversal });
            }
            current.retain(|g| g.apply(b) == b);
        }
        let generators = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        Self { degree, generators, chain }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.chain.iter().map(|l| l.transversal.len() as u64).product()
    }

    /// Sizes of the basic orbits along the stabilizer chain.
    pub fn basic_orbit_sizes(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.transversal.len()).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.clone();
        for level in &self.chain {
            match level.transversal.get(&h.apply(level.base)) {
                Some(u) => h = u.inverse().compose(&h),
                None => return false,
            }
        }
        h.is_identity()
    }

    /// Visit every element once, in chain order.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn walk(chain: &[ChainLevel], acc: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            match chain.split_first() {
                None => f(acc),
                Some((level, rest)) => {
                    for u in level.transversal.values() {
                        walk(rest, &acc.compose(u), f);
                    }
                }
            }
        }
        walk(&self.chain, &Permutation::identity(self.degree), &mut f);
    }

    /// All elements in lexicographic order of their image sequences.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(self.order() as usize);
        self.for_each_element(|g| out.push(g.clone()));
        out.sort();
        out
    }

    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for s in &self.generators {
                let z = s.apply(y);
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        seen
    }

    /// Orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !done[x] {
                let o: Vec<usize> = self.orbit(x).into_iter().collect();
                for &y in &o {
                    done[y] = true;
                }
                out.push(o);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_none());
        assert!(Permutation::new(vec![2, 0]).is_none());
    }

    #[test]
    fn composition_order() {
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        // a∘b sends 1 → b(1)=2 → a(2)=2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn symmetric_group_from_generators() {
        let g = PermutationGroup::from_generators(4, &[Permutation::cycle(4), p(&[1, 0, 2, 3])]);
        assert_eq!(g.order(), 24);
        assert_eq!(g.elements().len(), 24);
        assert!(g.contains(&p(&[3, 2, 1, 0])));
    }

    #[test]
    fn cyclic_group_membership() {
        let g = PermutationGroup::from_generators(5, &[Permutation::cycle(5)]);
        assert_eq!(g.order(), 5);
        assert!(!g.contains(&p(&[1, 0, 2, 3, 4])));
        assert_eq!(g.orbits(), vec![vec![0, 1, 2, 3, 4]]);
    }
}
