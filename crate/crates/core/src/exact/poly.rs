//! Characteristic polynomials and rational spectra of small rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::scalar::Rational;

/// Rational part of a spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSpectrum {
    /// Distinct rational eigenvalues in decreasing order, with multiplicities.
    pub eigenvalues: Vec<(Rational, usize)>,
    /// True iff the characteristic polynomial splits over the rationals.
    pub splits: bool,
}

impl RationalSpectrum {
    pub fn distinct(&self) -> Vec<Rational> {
        self.eigenvalues.iter().map(|(l, _)| l.clone()).collect()
    }
}

fn real_entries(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    assert!(m.is_real(), "matrix has non-real entries");
    let n = m.size();
    (0..n).map(|i| (0..n).map(|j| m.get(i, j).re.clone()).collect()).collect()
}

/// Coefficients (lowest degree first) of `det(x·I − A)`, via Faddeev–LeVerrier.
pub fn characteristic_polynomial(m: &ExactMatrix) -> Vec<Rational> {
    let a = real_entries(m);
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    // mk = A·M_{k−1} + c_{n−k+1}·I, starting from M_0 = 0
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let amk = mat_mul(&a, &mk);
        let tr = (0..n).fold(Rational::zero(), |acc, i| acc + &amk[i][i]);
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn eval_int(poly: &[BigInt], x: &BigInt) -> BigInt {
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Divide by `(x − r)`; returns `None` when `r` is not a root.
fn deflate(poly: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let n = poly.len() - 1;
    let mut quot = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..=n).rev() {
        let cur = &poly[k] + &carry * r;
        if k == 0 {
            return cur.is_zero().then_some(quot);
        }
        quot[k - 1] = cur.clone();
        carry = cur;
    }
    unreachable!()
}

/// Exact rational eigenvalues with multiplicities.
///
/// The matrix is scaled by the lcm `D` of its denominators, so that `D·A` has a
/// monic integer characteristic polynomial whose rational roots are integers
/// bounded by the largest absolute row sum.
pub fn rational_eigenvalues(m: &ExactMatrix) -> RationalSpectrum {
    let a = real_entries(m);
    let n = a.len();
    if n == 0 {
        return RationalSpectrum { eigenvalues: vec![], splits: true };
    }
    let denom = a.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled = ExactMatrix::from_rationals(n, |i, j| &a[i][j] * Rational::from_integer(denom.clone()));
    let mut poly: Vec<BigInt> = characteristic_polynomial(&scaled)
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    let bound = (0..n)
        .map(|i| (0..n).fold(BigInt::zero(), |acc, j| acc + scaled.get(i, j).re.to_integer().abs()))
        .max()
        .unwrap_or_default();
    let bound: i64 = (&bound).try_into().expect("eigenvalue bound out of range");
    let mut eigenvalues = Vec::new();
    let mut found = 0usize;
    for r in (-bound..=bound).rev() {
        let r = BigInt::from(r);
        let mut mult = 0;
        while poly.len() > 1 && eval_int(&poly, &r).is_zero() {
            poly = deflate(&poly, &r).expect("root divides");
            mult += 1;
        }
        if mult > 0 {
            eigenvalues.push((Rational::new(r, denom.clone()), mult));
            found += mult;
        }
    }
    RationalSpectrum { eigenvalues, splits: found == n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat_int;

    fn cycle(n: usize) -> ExactMatrix {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from((i + 1) % n == j || (j + 1) % n == i)).collect())
            .collect();
        ExactMatrix::from_integers(&rows)
    }

    #[test]
    fn complete_graph_k4() {
        let rows: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i != j)).collect()).collect();
        let s = rational_eigenvalues(&ExactMatrix::from_integers(&rows));
        assert_eq!(s.eigenvalues, vec![(rat_int(3), 1), (rat_int(-1), 3)]);
        assert!(s.splits);
    }

    #[test]
    fn zero_matrix() {
        let s = rational_eigenvalues(&ExactMatrix::zeros(5));
        assert_eq!(s.eigenvalues, vec![(rat_int(0), 5)]);
        assert!(s.splits);
    }

    #[test]
    fn pentagon_has_irrational_part() {
        let s = rational_eigenvalues(&cycle(5));
        assert_eq!(s.eigenvalues, vec![(rat_int(2), 1)]);
        assert!(!s.splits);
    }

    #[test]
    fn rational_entries_are_scaled_back() {
        let m = ExactMatrix::from_rationals(2, |i, j| if i == j { Rational::new(1.into(), 2.into()) } else { Rational::zero() });
        let s = rational_eigenvalues(&m);
        assert_eq!(s.eigenvalues, vec![(Rational::new(1.into(), 2.into()), 2)]);
    }

    #[test]
    fn charpoly_of_cycle4() {
        // x^4 − 4x^2
        let p = characteristic_polynomial(&cycle(4));
        assert_eq!(p, vec![rat_int(0), rat_int(0), rat_int(-4), rat_int(0), rat_int(1)]);
    }
}
