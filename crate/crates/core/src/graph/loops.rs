use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ColoredGraph, GraphError};

/// Which 0/1 matrix to count closed walks in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopSource {
    /// Sum of all supports (arc matrices for oriented colors).
    AllColors,
    /// The support of one color.
    Color(String),
}

fn support(g: &ColoredGraph, src: &LoopSource) -> Result<Vec<Vec<BigInt>>, GraphError> {
    let n = g.n;
    let mut m = vec![vec![BigInt::zero(); n]; n];
    let comps = match src {
        LoopSource::AllColors => g.components.iter().collect::<Vec<_>>(),
        LoopSource::Color(label) => vec![g.component(label)?],
    };
    for c in comps {
        for &(i, j) in &c.support {
            m[i][j] += 1;
        }
    }
    Ok(m)
}

/// Diagonal of `A^l`: the number of closed walks of length `l` at each vertex.
pub fn loop_counts(g: &ColoredGraph, l: usize, src: &LoopSource) -> Result<Vec<BigInt>, GraphError> {
    assert!(l >= 1, "walk length must be positive");
    let a = support(g, src)?;
    Ok(powers_diagonals(&a, l).pop().expect("l >= 1"))
}

/// Diagonals of `A^1 … A^l`.
fn powers_diagonals(a: &[Vec<BigInt>], l: usize) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut p: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let mut out = Vec::with_capacity(l);
    for _ in 0..l {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !a[k][j].is_zero() {
                        next[i][j] += &p[i][k] * &a[k][j];
                    }
                }
            }
        }
        p = next;
        out.push((0..n).map(|i| p[i][i].clone()).collect());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoopRuleVerdict {
    Pass,
    /// Closed-walk counts of length `length` in color `label` differ between vertices.
    Violation { label: String, length: usize, counts: Vec<BigInt> },
}

impl LoopRuleVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, LoopRuleVerdict::Pass)
    }
}

/// Smallest `l ≤ lmax` for which some color has a non-constant closed-walk count.
pub fn loop_rule_check(g: &ColoredGraph, lmax: usize) -> LoopRuleVerdict {
    let diags: Vec<(String, Vec<Vec<BigInt>>)> = g
        .components
        .iter()
        .map(|c| {
            let a = support(g, &LoopSource::Color(c.label.clone())).expect("label exists");
            (c.label.clone(), powers_diagonals(&a, lmax))
        })
        .collect();
    for l in 1..=lmax {
        for (label, d) in &diags {
            let counts = &d[l - 1];
            if counts.windows(2).any(|w| w[0] != w[1]) {
                return LoopRuleVerdict::Violation { label: label.clone(), length: l, counts: counts.clone() };
            }
        }
    }
    LoopRuleVerdict::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cube, disjoint_union, n_gon};

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pentagon_two_walks() {
        assert_eq!(loop_counts(&n_gon(5), 2, &LoopSource::AllColors).unwrap(), ints(&[2; 5]));
    }

    #[test]
    fn triangle_plus_pentagon_fails_at_three() {
        let g = disjoint_union(&complete(3), &n_gon(5)).unwrap();
        let c = loop_counts(&g, 3, &LoopSource::AllColors).unwrap();
        assert_eq!(c, ints(&[2, 2, 2, 0, 0, 0, 0, 0]));
        assert!(matches!(loop_rule_check(&g, 6), LoopRuleVerdict::Violation { length: 3, .. }));
    }

    #[test]
    fn cube_has_no_odd_walks() {
        assert_eq!(loop_counts(&cube(), 3, &LoopSource::AllColors).unwrap(), ints(&[0; 8]));
        assert!(loop_rule_check(&cube(), 6).passed());
    }
}
