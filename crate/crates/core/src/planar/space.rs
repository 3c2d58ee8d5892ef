//! Coordinates on the level-`m` spin space: tuples in lexicographic order,
//! optionally compressed to orbits of a permutation group on the vertices.

use crate::symmetry::Permutation;

/// Index of a tuple, first entry most significant.
pub fn tuple_index(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn tuple_digits(mut idx: usize, n: usize, m: usize, out: &mut [usize]) {
    debug_assert_eq!(out.len(), m);
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
}

pub fn tuple_of(idx: usize, n: usize, m: usize) -> Vec<usize> {
    let mut t = vec![0; m];
    tuple_digits(idx, n, m, &mut t);
    t
}

/// Orbit coordinates for tensors invariant under a vertex group.
///
/// Orbits are numbered by their least tuple index; a coordinate vector holds
/// one coefficient per orbit.
#[derive(Clone, Debug)]
pub struct LevelSpace {
    pub n: usize,
    pub m: usize,
    orbit_of: Vec<u32>,
    reps: Vec<usize>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

impl LevelSpace {
    pub fn new(n: usize, m: usize, gens: &[Permutation]) -> Self {
        let size = n.checked_pow(m as u32).expect("tuple space too large");
        assert!(size < u32::MAX as usize, "tuple space too large");
        let mut parent: Vec<u32> = (0..size as u32).collect();
        let mut digits = vec![0; m];
        for g in gens {
            for t in 0..size {
                tuple_digits(t, n, m, &mut digits);
                let image = digits.iter().fold(0, |acc, &x| acc * n + g.apply(x));
                let (a, b) = (find(&mut parent, t as u32), find(&mut parent, image as u32));
                if a != b {
                    // keep the smaller index as root so roots are orbit minima
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
        let mut orbit_of = vec![u32::MAX; size];
        let mut reps = Vec::new();
        for t in 0..size {
            let r = find(&mut parent, t as u32) as usize;
            if r == t {
                orbit_of[t] = reps.len() as u32;
                reps.push(t);
            } else {
                orbit_of[t] = orbit_of[r];
            }
        }
        Self { n, m, orbit_of, reps }
    }

    /// Every tuple is its own orbit.
    pub fn trivial(n: usize, m: usize) -> Self {
        Self::new(n, m, &[])
    }

    /// Number of orbits.
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn tuple_count(&self) -> usize {
        self.orbit_of.len()
    }

    #[inline]
    pub fn orbit_of(&self, tuple: usize) -> usize {
        self.orbit_of[tuple] as usize
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    /// Expand orbit coordinates to one coefficient per tuple.
    pub fn expand<F: Clone>(&self, v: &[F]) -> Vec<F> {
        self.orbit_of.iter().map(|&o| v[o as usize].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_roundtrip() {
        for idx in 0..27 {
            assert_eq!(tuple_index(&tuple_of(idx, 3, 3), 3), idx);
        }
        assert_eq!(tuple_of(5, 3, 2), vec![1, 2]);
    }

    #[test]
    fn symmetric_group_orbits_on_pairs() {
        let gens = [Permutation::cycle(4), Permutation::new(vec![1, 0, 2, 3]).unwrap()];
        let s = LevelSpace::new(4, 2, &gens);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.reps(), &[0, 1]);
        let s3 = LevelSpace::new(4, 3, &gens);
        assert_eq!(s3.dim(), 5); // set partitions of 3 labels
    }
}
