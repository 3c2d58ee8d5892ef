use num_traits::Zero;

use super::scalar::{GaussianRational, Scalar};

/// Semi-echelon basis of a subspace of `F^dim`.
///
/// Rows are kept sorted by pivot; every row is zero before its pivot and has a
/// unit pivot entry. Coordinates are ordered by ambient index, which for
/// tensors is the lexicographic order of vertex tuples.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Scalar = GaussianRational> {
    dim: usize,
    rows: Vec<EchelonRow<F>>,
}

#[derive(Clone, Debug)]
pub struct EchelonRow<F> {
    pub pivot: usize,
    pub coeffs: Vec<F>,
}

impl<F: Scalar> EchelonBasis<F> {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[EchelonRow<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    /// Residual of `v` after elimination against every row.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        v
    }

    fn reduce_in_place(&self, v: &mut [F]) {
        for row in &self.rows {
            let p = row.pivot;
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v[p..self.dim].iter_mut().zip(&row.coeffs[p..self.dim]) {
                if !r.is_zero() {
                    x.sub_product(&c, r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Insert `v`; returns `false` when it already lies in the span.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inverse().expect("nonzero pivot");
        for x in v.iter_mut().skip(pivot) {
            if !x.is_zero() {
                *x = x.times(&inv);
            }
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(at, EchelonRow { pivot, coeffs: v });
        true
    }

    /// Reduced row echelon form: each row is zero at every other pivot.
    pub fn reduced_rows(&self) -> Vec<Vec<F>> {
        let mut out: Vec<Vec<F>> = self.rows.iter().map(|r| r.coeffs.clone()).collect();
        for k in (0..out.len()).rev() {
            let p = self.rows[k].pivot;
            let (above, rest) = out.split_at_mut(k);
            let row = &rest[0];
            for r in above.iter_mut() {
                if r[p].is_zero() {
                    continue;
                }
                let c = r[p].clone();
                for j in p..self.dim {
                    if !row[j].is_zero() {
                        r[j].sub_product(&c, &row[j]);
                    }
                }
            }
        }
        out
    }
}

/// Functional form of [`EchelonBasis::insert`].
pub fn echelon_insert<F: Scalar>(mut basis: EchelonBasis<F>, v: &[F]) -> (EchelonBasis<F>, bool) {
    let inserted = basis.insert(v);
    (basis, inserted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::GaussianRational as G;

    fn v(xs: &[i64]) -> Vec<G> {
        xs.iter().map(|&x| G::from_int(x)).collect()
    }

    #[test]
    fn insert_twice_is_idempotent() {
        let b = EchelonBasis::new(3);
        let (b, first) = echelon_insert(b, &v(&[1, 2, 3]));
        let (b, second) = echelon_insert(b, &v(&[1, 2, 3]));
        assert!(first);
        assert!(!second);
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn unit_vectors_give_rank_two() {
        let mut b = EchelonBasis::new(4);
        assert!(b.insert(&v(&[1, 0, 0, 0])));
        assert!(b.insert(&v(&[0, 1, 0, 0])));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(&v(&[3, -2, 0, 0])));
        assert!(!b.contains(&v(&[0, 0, 1, 0])));
    }

    #[test]
    fn pivots_strictly_increase() {
        let mut b = EchelonBasis::new(4);
        b.insert(&v(&[0, 0, 1, 1]));
        b.insert(&v(&[1, 1, 0, 0]));
        b.insert(&v(&[0, 1, 1, 0]));
        let p = b.pivots();
        assert!(p.windows(2).all(|w| w[0] < w[1]), "{p:?}");
    }

    #[test]
    fn reduced_rows_clear_pivot_columns() {
        let mut b = EchelonBasis::new(3);
        b.insert(&v(&[1, 1, 1]));
        b.insert(&v(&[0, 1, 2]));
        assert_eq!(b.reduced_rows(), vec![v(&[1, 0, -1]), v(&[0, 1, 2])]);
    }

    #[test]
    fn gaussian_entries() {
        let mut b: EchelonBasis<G> = EchelonBasis::new(2);
        b.insert(&[G::i(), G::from_int(1)]);
        assert!(b.contains(&[G::from_int(1), -G::i()]));
        assert!(!b.contains(&[G::from_int(1), G::i()]));
    }
}
