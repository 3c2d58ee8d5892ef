use num_traits::{One, Zero};
use proptest::prelude::*;
use qgraph::exact::{
    characteristic_polynomial, rat, rational_eigenvalues, EchelonBasis, ExactMatrix, GaussianRational, ModGaussian,
    Rational, Scalar,
};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-20i64..20, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| GaussianRational::new(rat(a, b), rat(c, d)))
}

fn int_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..4, n), n)
}

/// Cofactor expansion along the first row.
fn det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
}

/// Largest order of a nonzero minor.
fn minor_rank(rows: &[Vec<i64>]) -> usize {
    let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .rev()
        .find(|&k| {
            subsets(r, k).iter().any(|rs| {
                subsets(c, k).iter().any(|cs| {
                    let m: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j] as i128).collect()).collect();
                    det(&m) != 0
                })
            })
        })
        .unwrap_or(0)
}

fn as_vec(row: &[i64]) -> Vec<GaussianRational> {
    row.iter().map(|&x| GaussianRational::from_int(x)).collect()
}

proptest! {
    #[test]
    fn field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), GaussianRational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        } else {
            prop_assert!(a.inv().is_none());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(GaussianRational::real(a.norm_sqr()), &a * &a.conj());
    }

    #[test]
    fn display_parse_roundtrip(a in gaussian()) {
        prop_assert_eq!(GaussianRational::parse(&a.to_string()), Some(a));
    }

    #[test]
    fn modular_reduction_is_a_ring_map(a in gaussian(), b in gaussian()) {
        let (x, y) = (ModGaussian::from_exact(&a).unwrap(), ModGaussian::from_exact(&b).unwrap());
        prop_assert_eq!(ModGaussian::from_exact(&(&a * &b)).unwrap(), x.times(&y));
        prop_assert_eq!(ModGaussian::from_exact(&(&a + &b)).unwrap(), x.plus(&y));
        prop_assert_eq!(ModGaussian::from_exact(&a.conj()).unwrap(), x.conjugate());
        if !a.is_zero() {
            prop_assert_eq!(x.times(&x.inverse().unwrap()), ModGaussian::one());
        }
    }

    #[test]
    fn rank_matches_minors(rows in (1usize..5, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-2i64..3, c), r))) {
        let mut basis = EchelonBasis::<GaussianRational>::new(rows[0].len());
        for r in &rows {
            basis.insert(&as_vec(r));
        }
        prop_assert_eq!(basis.rank(), minor_rank(&rows));
        for r in &rows {
            prop_assert!(basis.contains(&as_vec(r)));
        }
    }

    #[test]
    fn rejected_vectors_leave_the_span(rows in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 1..4), coeffs in prop::collection::vec(-3i64..4, 3)) {
        let mut basis = EchelonBasis::<GaussianRational>::new(4);
        for r in &rows {
            basis.insert(&as_vec(r));
        }
        let before = basis.reduced_rows();
        let combo: Vec<i64> = (0..4).map(|j| rows.iter().zip(&coeffs).map(|(r, c)| r[j] * c).sum()).collect();
        prop_assert!(!basis.insert(&as_vec(&combo)));
        prop_assert_eq!(basis.reduced_rows(), before);
    }

    #[test]
    fn modular_rank_matches_exact(rows in prop::collection::vec(prop::collection::vec(-5i64..6, 5), 1..6)) {
        let mut exact = EchelonBasis::<GaussianRational>::new(5);
        let mut modular = EchelonBasis::<ModGaussian>::new(5);
        for r in &rows {
            exact.insert(&as_vec(r));
            modular.insert(&r.iter().map(|&x| ModGaussian::new(x, 0)).collect::<Vec<_>>());
        }
        prop_assert_eq!(exact.rank(), modular.rank());
    }

    #[test]
    fn full_rank_iff_nonzero_determinant(m in (1usize..5).prop_flat_map(int_matrix)) {
        let mut basis = EchelonBasis::<GaussianRational>::new(m.len());
        for r in &m {
            basis.insert(&as_vec(r));
        }
        let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        prop_assert_eq!(basis.rank() == m.len(), det(&wide) != 0);
    }

    #[test]
    fn trace_identities(a in int_matrix(3), b in int_matrix(3), c in int_matrix(2)) {
        let (a, b, c) = (ExactMatrix::from_integers(&a), ExactMatrix::from_integers(&b), ExactMatrix::from_integers(&c));
        prop_assert_eq!((&a * &b).trace(), (&b * &a).trace());
        prop_assert_eq!(a.kron(&c).trace(), &a.trace() * &c.trace());
        prop_assert_eq!((&a + &b).trace(), &a.trace() + &b.trace());
    }

    #[test]
    fn charpoly_constant_term_is_signed_determinant(m in (1usize..5).prop_flat_map(int_matrix)) {
        let p = characteristic_polynomial(&ExactMatrix::from_integers(&m));
        let wide: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let sign: i64 = if m.len() % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(p[0].clone(), Rational::from_integer((sign as i128 * det(&wide)).into()));
        prop_assert_eq!(p[m.len()].clone(), Rational::one());
    }

    #[test]
    fn triangular_spectrum_is_the_diagonal(m in (1usize..5).prop_flat_map(int_matrix)) {
        let n = m.len();
        let upper: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if j >= i { m[i][j] } else { 0 }).collect()).collect();
        let spectrum = rational_eigenvalues(&ExactMatrix::from_integers(&upper));
        prop_assert!(spectrum.splits);
        let mut got: Vec<Rational> = spectrum.eigenvalues.iter().flat_map(|(l, k)| std::iter::repeat_n(l.clone(), *k)).collect();
        let mut want: Vec<Rational> = (0..n).map(|i| Rational::from_integer(upper[i][i].into())).collect();
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }
}
