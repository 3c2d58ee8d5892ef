use serde::Serialize;

use super::PlanarError;
use crate::exact::{rat, ExactMatrix, GaussianRational, Rational};
use crate::graph::{incidence, multi_simplex, ColoredGraph};

/// Outcome of one family of relations, with the first failing indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub family: &'static str,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub indices: Vec<usize>,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, family: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.family == family)
    }
}

/// Recover `n_1..n_s` from the color degrees, last coordinate first.
fn infer_indices(g: &ColoredGraph) -> Option<Vec<usize>> {
    let s = g.components.len();
    let mut rev = Vec::with_capacity(s);
    let mut tail = 1usize;
    for i in (1..=s).rev() {
        let c = g.component(&format!("e{i}")).ok()?;
        if g.n == 0 {
            return None;
        }
        let degree = 2 * c.edge_count() / g.n;
        if !degree.is_multiple_of(tail) {
            return None;
        }
        let ni = degree / tail + 1;
        rev.push(ni);
        tail *= ni;
    }
    rev.reverse();
    Some(rev)
}

/// `e_i(a, b) = 1` when `a` and `b` agree on their first `i − 1` coordinates.
fn agreement_matrices(indices: &[usize]) -> Vec<ExactMatrix> {
    let n: usize = indices.iter().product();
    // vertex v has coordinates in mixed radix, first coordinate most significant
    let prefix = |v: usize, len: usize| -> usize { v / indices[len..].iter().product::<usize>() };
    (0..=indices.len())
        .map(|k| ExactMatrix::from_fn(n, |a, b| GaussianRational::from_int(i64::from(prefix(a, k) == prefix(b, k)))))
        .collect()
}

/// Check the relations for the normalised projections of a multi-simplex.
pub fn verify_relations(g: &ColoredGraph) -> Result<RelationReport, PlanarError> {
    let indices = infer_indices(g).filter(|ix| !ix.is_empty()).ok_or(PlanarError::NotMultiSimplex)?;
    if multi_simplex(&indices).ok().as_ref() != Some(g) {
        return Err(PlanarError::NotMultiSimplex);
    }
    let e = agreement_matrices(&indices);
    let p: Vec<ExactMatrix> = (0..indices.len())
        .map(|i| {
            let tail: usize = indices[i..].iter().product();
            e[i].scale(&GaussianRational::real(rat(1, tail as i64)))
        })
        .collect();
    let mut report = check_relations(&indices, &p);
    let decomposition = (0..indices.len()).find_map(|i| {
        let d = incidence(g, &format!("e{}", i + 1)).expect("multi-simplex labels");
        let expected = &e[i] - &e[i + 1];
        (d != expected).then(|| vec![i + 1])
    });
    report.checks.push(RelationCheck { family: "decomposition", passed: decomposition.is_none(), witness: decomposition });
    Ok(report)
}

/// The four relation families for explicit matrices `p_1..p_s`.
pub fn check_relations(indices: &[usize], p: &[ExactMatrix]) -> RelationReport {
    let n: usize = indices.iter().product();
    let one = GaussianRational::from_int(1);
    let mut checks = Vec::new();

    let mut witness = None;
    'sym: for (i, pi) in p.iter().enumerate() {
        for a in 0..n {
            for b in 0..a {
                if pi.get(a, b) != pi.get(b, a) {
                    witness = Some(vec![i + 1, a, b]);
                    break 'sym;
                }
            }
        }
    }
    checks.push(RelationCheck { family: "symmetry", passed: witness.is_none(), witness });

    let witness = p.iter().enumerate().find_map(|(i, pi)| {
        (0..n).find_map(|a| {
            let sum = (0..n).fold(GaussianRational::default(), |acc, b| &acc + pi.get(a, b));
            (sum != one).then(|| vec![i + 1, a])
        })
    });
    checks.push(RelationCheck { family: "row-sum", passed: witness.is_none(), witness });

    let witness = p.iter().enumerate().find_map(|(i, pi)| {
        let head: usize = indices[..i].iter().product();
        let expected = GaussianRational::real(Rational::from_integer((head as i64).into()));
        (pi.trace() != expected).then(|| vec![i + 1])
    });
    checks.push(RelationCheck { family: "diagonal-sum", passed: witness.is_none(), witness });

    let mut witness = None;
    'ex: for i in 0..p.len() {
        for j in 0..=i {
            for a in 0..n {
                for b in 0..n {
                    let pab = p[i].get(a, b);
                    if pab == &GaussianRational::default() {
                        continue;
                    }
                    for beta in 0..n {
                        if pab * p[j].get(b, beta) != pab * p[j].get(a, beta) {
                            witness = Some(vec![i + 1, j + 1, a, b, beta]);
                            break 'ex;
                        }
                    }
                }
            }
        }
    }
    checks.push(RelationCheck { family: "exchange", passed: witness.is_none(), witness });

    RelationReport { indices: indices.to_vec(), checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::n_gon;

    #[test]
    fn indices_are_recovered() {
        assert_eq!(infer_indices(&multi_simplex(&[2, 3, 4]).unwrap()), Some(vec![2, 3, 4]));
    }

    #[test]
    fn simplex_passes() {
        let r = verify_relations(&multi_simplex(&[5]).unwrap()).unwrap();
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn rejects_other_graphs() {
        assert!(matches!(verify_relations(&n_gon(5)), Err(PlanarError::NotMultiSimplex)));
    }
}
