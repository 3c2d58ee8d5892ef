//! Backtracking search for automorphisms, organised along a stabilizer chain.

use std::collections::{BTreeMap, VecDeque};

use super::perm::{ChainLevel, Permutation, PermutationGroup};
use crate::graph::ColoredGraph;

/// Equitable refinement of the vertex set under the pair codes.
fn refine(n: usize, codes: &[u32]) -> Vec<usize> {
    let mut color = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<(u32, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, usize)> = (0..n).filter(|&u| u != v).map(|u| (codes[v * n + u], color[u])).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<(u32, usize)>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let rank: BTreeMap<_, usize> = distinct.into_iter().enumerate().map(|(r, s)| (s, r)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
        let count = rank.len();
        color = next;
        if count == classes {
            return color;
        }
        classes = count;
    }
}

/// Vertex order: start in the smallest cell, then always take the vertex
/// with most colored pairs towards the already ordered ones.
fn search_order(n: usize, codes: &[u32], cell: &[usize]) -> Vec<usize> {
    let mut size = vec![0usize; n];
    for &c in cell {
        size[c] += 1;
    }
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), size[cell[v]], cell[v], v))
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for u in 0..n {
            if codes[v * n + u] != 0 {
                links[u] += 1;
            }
        }
    }
    order
}

struct Searcher<'a> {
    n: usize,
    codes: &'a [u32],
    cell: &'a [usize],
    order: &'a [usize],
}

impl Searcher<'_> {
    fn consistent(&self, image: &[usize], depth: usize, v: usize, w: usize) -> bool {
        let n = self.n;
        if self.cell[v] != self.cell[w] {
            return false;
        }
        self.order[..depth].iter().all(|&u| {
            let iu = image[u];
            self.codes[v * n + u] == self.codes[w * n + iu] && self.codes[u * n + v] == self.codes[iu * n + w]
        })
    }

    /// Automorphism fixing `order[..k]` pointwise and sending `order[k]` to `target`.
    fn find(&self, k: usize, target: usize) -> Option<Permutation> {
        let n = self.n;
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        for &u in &self.order[..k] {
            image[u] = u;
            used[u] = true;
        }
        let v = self.order[k];
        if used[target] || !self.consistent(&image, k, v, target) {
            return None;
        }
        image[v] = target;
        used[target] = true;
        if self.extend(k + 1, &mut image, &mut used) {
            Permutation::new(image)
        } else {
            None
        }
    }

    fn extend(&self, depth: usize, image: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.n {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.n {
            if used[w] || !self.consistent(image, depth, v, w) {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if self.extend(depth + 1, image, used) {
                return true;
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
        false
    }
}

fn orbit_tree(root: usize, gens: &[Permutation], degree: usize) -> BTreeMap<usize, Permutation> {
    let mut tree = BTreeMap::from([(root, Permutation::identity(degree))]);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let ux = tree[&x].clone();
        for s in gens {
            let y = s.apply(x);
            if let std::collections::btree_map::Entry::Vacant(e) = tree.entry(y) {
                e.insert(s.compose(&ux));
                queue.push_back(y);
            }
        }
    }
    tree
}

/// All permutations preserving every color component together with its
/// orientation.
pub fn automorphism_group(g: &ColoredGraph) -> PermutationGroup {
    let n = g.n;
    if n == 0 {
        return PermutationGroup::trivial(0);
    }
    let codes = g.pair_codes();
    let cell = refine(n, &codes);
    let order = search_order(n, &codes, &cell);
    let searcher = Searcher { n, codes: &codes, cell: &cell, order: &order };
    let mut gens: Vec<Permutation> = Vec::new();
    let mut levels = Vec::new();
    for k in (0..n).rev() {
        let b = order[k];
        let mut tree = orbit_tree(b, &gens, n);
        for t in 0..n {
            if cell[t] != cell[b] || tree.contains_key(&t) {
                continue;
            }
            if let Some(s) = searcher.find(k, t) {
                gens.push(s);
                tree = orbit_tree(b, &gens, n);
            }
        }
        if tree.len() > 1 {
            levels.push(ChainLevel { base: b, transversal: tree });
        }
    }
    levels.reverse();
    PermutationGroup::from_chain(n, gens, levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cube, edgeless, multi_simplex, n_gon, oriented_n_gon};

    #[test]
    fn small_orders() {
        assert_eq!(automorphism_group(&n_gon(5)).order(), 10);
        assert_eq!(automorphism_group(&oriented_n_gon(3).unwrap()).order(), 3);
        assert_eq!(automorphism_group(&edgeless(4)).order(), 24);
        assert_eq!(automorphism_group(&cube()).order(), 48);
        assert_eq!(automorphism_group(&complete(6)).order(), 720);
    }

    #[test]
    fn wreath_product_order() {
        // (S_4 wr S_4) has order 24^5
        assert_eq!(automorphism_group(&multi_simplex(&[4, 4]).unwrap()).order(), 24u64.pow(5));
    }
}
