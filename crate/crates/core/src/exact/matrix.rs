use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::scalar::{GaussianRational, Rational};

/// Square matrix of Gaussian rationals indexed by the vertex set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<GaussianRational>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![GaussianRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
    }

    /// All-ones matrix.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| GaussianRational::one())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::from_fn(n, |i, j| GaussianRational::from_int(rows[i][j]))
    }

    pub fn from_rationals(n: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        Self::from_fn(n, |i, j| GaussianRational::real(f(i, j)))
    }

    /// Matrix of the permutation `σ`, with entry `(σ(j), j)` equal to one.
    pub fn permutation(images: &[usize]) -> Self {
        Self::from_fn(images.len(), |i, j| if images[j] == i { GaussianRational::one() } else { GaussianRational::zero() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GaussianRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GaussianRational)> {
        self.data.iter().enumerate().map(move |(k, v)| (k / self.n, k % self.n, v))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussianRational::is_real)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.n).fold(GaussianRational::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn diagonal(&self) -> Vec<GaussianRational> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Tensor product with `self` as the outer factor: entry
    /// `((a,b),(c,d)) = self[a][c] · other[b][d]` with pairs flattened as `a·m + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.n;
        Self::from_fn(self.n * m, |i, j| self.get(i / m, j / m) * other.get(i % m, j % m))
    }

    /// Commutator `self·other − other·self` vanishes.
    pub fn commutes_with(&self, other: &Self) -> bool {
        (self * other) == (other * self)
    }
}

impl<'a> Mul<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = ExactMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ExactMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &'a ExactMatrix) -> ExactMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        ExactMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    #[test]
    fn adjoint_is_involution() {
        let m = ExactMatrix::from_fn(3, |i, j| <GaussianRational as Scalar>::from_gaussian(i as i64 - j as i64, (i * j) as i64));
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn permutation_matrix_acts_on_basis() {
        let p = ExactMatrix::permutation(&[1, 2, 0]);
        assert_eq!(p.get(1, 0), &GaussianRational::one());
        assert_eq!(p.pow(3), ExactMatrix::identity(3));
    }
}
