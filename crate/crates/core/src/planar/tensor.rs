use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::space::{tuple_index, tuple_of, LevelSpace};
use super::tangle::{rotate, star, Generator, Plan};
use super::PlanarError;
use crate::exact::{EchelonBasis, ExactMatrix, GaussianRational};

/// Sparse element of `C(X)^{⊗m}`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinTensor {
    n: usize,
    level: usize,
    coeffs: BTreeMap<Vec<usize>, GaussianRational>,
}

impl SpinTensor {
    pub fn zero(n: usize, level: usize) -> Self {
        Self { n, level, coeffs: BTreeMap::new() }
    }

    pub fn scalar(n: usize, c: GaussianRational) -> Self {
        let mut t = Self::zero(n, 0);
        t.set(vec![], c);
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn get(&self, tuple: &[usize]) -> GaussianRational {
        self.coeffs.get(tuple).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, tuple: Vec<usize>, c: GaussianRational) {
        assert!(tuple.len() == self.level && tuple.iter().all(|&x| x < self.n), "tuple outside the level");
        if c.is_zero() {
            self.coeffs.remove(&tuple);
        } else {
            self.coeffs.insert(tuple, c);
        }
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// One coefficient per tuple, lexicographic order.
    pub fn to_dense(&self) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::default(); self.n.pow(self.level as u32)];
        for (t, c) in &self.coeffs {
            v[tuple_index(t, self.n)] = c.clone();
        }
        v
    }

    pub fn from_dense(n: usize, level: usize, v: &[GaussianRational]) -> Self {
        assert_eq!(v.len(), n.pow(level as u32), "dense vector has the wrong length");
        let coeffs = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (tuple_of(i, n, level), c.clone())).collect();
        Self { n, level, coeffs }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.n, self.level);
        for (t, x) in &self.coeffs {
            out.set(t.clone(), x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.n == other.n && self.level == other.level, "level mismatch");
        let mut out = self.clone();
        for (t, x) in &other.coeffs {
            let s = &out.get(t) + x;
            out.set(t.clone(), s);
        }
        out
    }
}

/// Boundary labels of a basis tuple: point `2k − 1` and `2k` carry `i_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopForm {
    points: Vec<usize>,
}

impl LoopForm {
    pub fn from_tuple(t: &[usize]) -> Self {
        Self { points: t.iter().flat_map(|&x| [x, x]).collect() }
    }

    pub fn level(&self) -> usize {
        self.points.len() / 2
    }

    /// Label at boundary point `p`, numbered from 1.
    pub fn point(&self, p: usize) -> usize {
        self.points[p - 1]
    }

    pub fn top(&self, q: usize) -> usize {
        self.point(q)
    }

    pub fn bottom(&self, q: usize) -> usize {
        self.point(self.points.len() + 1 - q)
    }

    pub fn to_tuple(&self) -> Vec<usize> {
        self.points.iter().step_by(2).copied().collect()
    }
}

/// The 2-box with coefficient `d_{ij}` at `(i, j)`.
pub fn embed_2box(d: &ExactMatrix) -> SpinTensor {
    let n = d.size();
    let mut t = SpinTensor::zero(n, 2);
    for (i, j, x) in d.entries() {
        t.set(vec![i, j], x.clone());
    }
    t
}

/// Inverse of [`embed_2box`].
pub fn unembed_2box(t: &SpinTensor) -> Result<ExactMatrix, PlanarError> {
    if t.level != 2 {
        return Err(PlanarError::LevelMismatch { expected: 2, found: t.level });
    }
    Ok(ExactMatrix::from_fn(t.n, |i, j| t.get(&[i, j])))
}

/// Apply one generating tangle to explicit tensors.
pub fn apply_generator(which: Generator, args: &[&SpinTensor]) -> Result<SpinTensor, PlanarError> {
    let levels = which.input_levels();
    if args.len() != levels.len() {
        return Err(PlanarError::Arity { generator: which.to_string(), expected: levels.len(), found: args.len() });
    }
    for (a, &l) in args.iter().zip(&levels) {
        if a.level != l {
            return Err(PlanarError::LevelMismatch { expected: l, found: a.level });
        }
    }
    let n = match args.first() {
        Some(a) => a.n,
        None => return Err(PlanarError::Arity { generator: which.to_string(), expected: 1, found: 0 }),
    };
    if args.iter().any(|a| a.n != n) {
        return Err(PlanarError::VertexCount);
    }
    Ok(apply_dense(which, n, args))
}

/// Jones element at level `m + 2` over `n` points.
pub fn jones(n: usize, m: usize) -> SpinTensor {
    apply_dense(Generator::Jones(m), n, &[])
}

fn apply_dense(which: Generator, n: usize, args: &[&SpinTensor]) -> SpinTensor {
    let out_level = which.output_level();
    let out = LevelSpace::trivial(n, out_level);
    let v = match which {
        Generator::Rotate(_) => rotate(&out, &args[0].to_dense()),
        Generator::Star(_) => star(&out, &args[0].to_dense()),
        _ => {
            let spaces: Vec<LevelSpace> = args.iter().map(|a| LevelSpace::trivial(n, a.level)).collect();
            let dense: Vec<Vec<GaussianRational>> = args.iter().map(|a| a.to_dense()).collect();
            let inputs: Vec<(&LevelSpace, &[GaussianRational])> = spaces.iter().zip(&dense).map(|(s, d)| (s, d.as_slice())).collect();
            Plan::compile(which, n).eval(&out, &inputs)
        }
    };
    SpinTensor::from_dense(n, out_level, &v)
}

/// Span of tensors at one level, in lexicographic tuple coordinates.
#[derive(Clone, Debug)]
pub struct TensorSubspace {
    n: usize,
    level: usize,
    basis: EchelonBasis<GaussianRational>,
}

impl TensorSubspace {
    pub fn new(n: usize, level: usize) -> Self {
        Self { n, level, basis: EchelonBasis::new(n.pow(level as u32)) }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn basis(&self) -> &EchelonBasis<GaussianRational> {
        &self.basis
    }

    /// Returns whether the span grew.
    pub fn insert(&mut self, t: &SpinTensor) -> bool {
        assert!(t.n == self.n && t.level == self.level, "level mismatch");
        self.basis.insert(&t.to_dense())
    }

    pub(crate) fn insert_dense(&mut self, v: &[GaussianRational]) -> bool {
        self.basis.insert(v)
    }

    pub fn contains(&self, t: &SpinTensor) -> bool {
        t.n == self.n && t.level == self.level && self.basis.contains(&t.to_dense())
    }

    pub fn vectors(&self) -> Vec<SpinTensor> {
        self.basis.reduced_rows().iter().map(|r| SpinTensor::from_dense(self.n, self.level, r)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(rat(re, 1), rat(im, 1))
    }

    fn matrix(seed: i64) -> ExactMatrix {
        ExactMatrix::from_fn(3, |i, j| g((i as i64 * 7 + j as i64 * 3 + seed) % 5 - 2, (i as i64 + 2 * j as i64 * seed) % 3 - 1))
    }

    #[test]
    fn loop_form_roundtrip() {
        let f = LoopForm::from_tuple(&[4, 1, 2]);
        assert_eq!(f.to_tuple(), vec![4, 1, 2]);
        assert_eq!((f.point(1), f.point(2), f.point(6)), (4, 4, 2));
        // top row reads a a b, bottom row (left to right) c c b
        assert_eq!((f.top(3), f.bottom(1), f.bottom(3)), (1, 2, 1));
    }

    #[test]
    fn embed_is_multiplicative() {
        let (a, b) = (matrix(1), matrix(4));
        let prod = apply_generator(Generator::Mult(2), &[&embed_2box(&a), &embed_2box(&b)]).unwrap();
        assert_eq!(unembed_2box(&prod).unwrap(), &a * &b);
    }

    #[test]
    fn star_is_adjoint_on_two_boxes() {
        let a = matrix(2);
        let s = apply_generator(Generator::Star(2), &[&embed_2box(&a)]).unwrap();
        assert_eq!(s, embed_2box(&a.adjoint()));
    }

    #[test]
    fn identity_embeds_to_diagonal_tuples() {
        let t = embed_2box(&ExactMatrix::identity(4));
        assert_eq!(t.support_size(), 4);
        assert_eq!(t.get(&[2, 2]), g(1, 0));
    }

    #[test]
    fn arity_is_checked() {
        let t = embed_2box(&ExactMatrix::identity(2));
        assert!(matches!(apply_generator(Generator::Mult(2), &[&t]), Err(PlanarError::Arity { .. })));
        assert!(matches!(apply_generator(Generator::Incl(1), &[&t]), Err(PlanarError::LevelMismatch { .. })));
    }
}
