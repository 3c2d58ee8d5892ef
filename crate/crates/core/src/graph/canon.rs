//! Canonical forms up to vertex relabeling and renaming of colors.
//!
//! The code of a labeling lists, for position pairs in the order
//! `(0,1), (0,2), (1,2), (0,3), …`, the color class of the pair, with colors
//! numbered by first appearance. A fixed prefix of positions therefore fixes a
//! prefix of the code, which is what the branch-and-bound search relies on.
//! Positions are restricted to cells of an equitable color refinement, so
//! the minimum is taken over refinement-respecting labelings only.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{ColoredGraph, ComponentKind};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    /// Number of empty unoriented and oriented colors.
    pub empty: (usize, usize),
    pub code: Vec<u32>,
}

const NONE: u8 = u8::MAX;

struct Search<'a> {
    n: usize,
    /// Component index and direction (0 unoriented, 1 forward, 2 backward) per ordered pair.
    pair: &'a [(u8, u8)],
    cells: Vec<Vec<usize>>,
    cell_of_position: Vec<usize>,
    used: Vec<bool>,
    labeling: Vec<usize>,
    renumber: Vec<u32>,
    next_color: u32,
    code: Vec<u32>,
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl Search<'_> {
    fn segment(&mut self, depth: usize, v: usize) -> Vec<(u32, Option<usize>)> {
        // (code, freshly numbered component)
        let mut seg = Vec::with_capacity(depth);
        for p in 0..depth {
            let u = self.labeling[p];
            let (c, dir) = self.pair[u * self.n + v];
            if c == NONE {
                seg.push((0, None));
                continue;
            }
            let c = c as usize;
            let mut fresh = None;
            if self.renumber[c] == u32::MAX {
                self.renumber[c] = self.next_color;
                self.next_color += 1;
                fresh = Some(c);
            }
            seg.push((3 * self.renumber[c] + 1 + u32::from(dir), fresh));
        }
        seg
    }

    /// Returns true when the best code was replaced somewhere below.
    fn dfs(&mut self, depth: usize, mut equal_prefix: bool) -> bool {
        if depth == self.n {
            let replace = match &self.best {
                None => true,
                Some(_) => !equal_prefix,
            };
            if replace {
                self.best = Some((self.code.clone(), self.labeling.clone()));
            }
            return replace;
        }
        let mut updated = false;
        let cell = self.cell_of_position[depth];
        let candidates = self.cells[cell].clone();
        let start = depth * (depth.saturating_sub(1)) / 2;
        for v in candidates {
            if self.used[v] {
                continue;
            }
            let saved_next = self.next_color;
            let seg = self.segment(depth, v);
            let mut ord = Ordering::Equal;
            if equal_prefix {
                if let Some((best, _)) = &self.best {
                    for (k, (c, _)) in seg.iter().enumerate() {
                        ord = c.cmp(&best[start + k]);
                        if ord != Ordering::Equal {
                            break;
                        }
                    }
                }
            }
            if ord != Ordering::Greater {
                self.used[v] = true;
                self.labeling.push(v);
                self.code.extend(seg.iter().map(|(c, _)| *c));
                let child_equal = equal_prefix && ord == Ordering::Equal && self.best.is_some();
                if self.dfs(depth + 1, child_equal) {
                    updated = true;
                    equal_prefix = true;
                }
                self.code.truncate(start);
                self.labeling.pop();
                self.used[v] = false;
            }
            for (_, fresh) in seg {
                if let Some(c) = fresh {
                    self.renumber[c] = u32::MAX;
                }
            }
            self.next_color = saved_next;
        }
        updated
    }
}

/// A vertex color together with its sorted neighborhood profile.
type Signature = (usize, Vec<((u8, usize, u8), usize)>);

/// Equitable refinement of a label-independent vertex coloring; returns
/// cells in canonical order.
fn refine(g: &ColoredGraph, pair: &[(u8, u8)]) -> Vec<Vec<usize>> {
    let n = g.n;
    let comp_sig: Vec<(ComponentKind, usize)> = g.components.iter().map(|c| (c.kind, c.support.len())).collect();
    let pair_class = |u: usize, v: usize| -> (u8, usize, u8) {
        let (c, dir) = pair[u * n + v];
        if c == NONE {
            (0, 0, 0)
        } else {
            let (k, s) = comp_sig[c as usize];
            (1 + k as u8, s, dir)
        }
    };
    let mut color = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut nb: Vec<_> = (0..n).filter(|&u| u != v).map(|u| (pair_class(v, u), color[u])).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<_>), usize> = {
            let mut distinct: Vec<_> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            distinct.into_iter().enumerate().map(|(r, s)| (s, r)).collect()
        };
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        color = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[color[v]].push(v);
    }
    cells
}

fn pair_table(g: &ColoredGraph) -> Vec<(u8, u8)> {
    let n = g.n;
    let mut pair = vec![(NONE, 0u8); n * n];
    for (c, comp) in g.components.iter().enumerate() {
        let c = u8::try_from(c).expect("fewer than 255 colors");
        for &(i, j) in &comp.support {
            match comp.kind {
                ComponentKind::Unoriented => pair[i * n + j] = (c, 0),
                ComponentKind::Oriented => {
                    pair[i * n + j] = (c, 1);
                    pair[j * n + i] = (c, 2);
                }
            }
        }
    }
    pair
}

/// Canonical form together with the labeling `position → vertex` achieving it.
pub fn canonical_labeling(g: &ColoredGraph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n;
    let pair = pair_table(g);
    let cells = refine(g, &pair);
    let cell_of_position = cells.iter().enumerate().flat_map(|(k, c)| std::iter::repeat_n(k, c.len())).collect();
    let mut s = Search {
        n,
        pair: &pair,
        cells,
        cell_of_position,
        used: vec![false; n],
        labeling: Vec::with_capacity(n),
        renumber: vec![u32::MAX; g.components.len()],
        next_color: 0,
        code: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    s.dfs(0, true);
    let (code, labeling) = s.best.expect("at least one labeling");
    let empty_of = |k: ComponentKind| g.components.iter().filter(|c| c.kind == k && c.support.is_empty()).count();
    let empty = (empty_of(ComponentKind::Unoriented), empty_of(ComponentKind::Oriented));
    (CanonicalForm { n, empty, code }, labeling)
}

pub fn canonical_form(g: &ColoredGraph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn are_isomorphic(g: &ColoredGraph, h: &ColoredGraph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// A vertex bijection `σ` (as `σ[v]`) carrying `g` onto `h`, up to renaming colors.
pub fn find_isomorphism(g: &ColoredGraph, h: &ColoredGraph) -> Option<Vec<usize>> {
    if g.n != h.n {
        return None;
    }
    let (cg, lg) = canonical_labeling(g);
    let (ch, lh) = canonical_labeling(h);
    if cg != ch {
        return None;
    }
    let mut sigma = vec![0; g.n];
    for p in 0..g.n {
        sigma[lg[p]] = lh[p];
    }
    Some(sigma)
}
