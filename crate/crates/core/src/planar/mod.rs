//! Spin planar algebra over a finite vertex set: loop-form tensors, the
//! generating tangles and span closure of the incidence 2-boxes.

mod closure;
mod relations;
mod space;
mod tangle;
mod tensor;

use thiserror::Error;

use crate::exact::{rat_int, GaussianRational};

pub use closure::{
    bounded_c1, closure, closure_dims, Arithmetic, C1Bound, ClosureConfig, ClosureRun, Derivation, LevelDims, Seed,
};
pub use relations::{check_relations, verify_relations, RelationReport, RelationCheck};
pub use space::{tuple_index, tuple_of, LevelSpace};
pub use tangle::{Generator, Plan};
pub use tensor::{apply_generator, embed_2box, jones, unembed_2box, LoopForm, SpinTensor, TensorSubspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("{generator} takes {expected} tensor arguments, got {found}")]
    Arity { generator: String, expected: usize, found: usize },
    #[error("expected a level-{expected} tensor, got level {found}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("arguments live over different vertex sets")]
    VertexCount,
    #[error("graph is not a multi-simplex")]
    NotMultiSimplex,
    #[error("invalid closure configuration: {0}")]
    Config(String),
}

/// `c` with `a = c·b`, if `a` is a multiple of the nonzero tensor `b`.
pub fn proportionality(a: &SpinTensor, b: &SpinTensor) -> Option<GaussianRational> {
    let (t, x) = b.iter().next()?;
    let c = &a.get(t) / x;
    let scaled = b.scale(&c);
    (a.add(&scaled.scale(&GaussianRational::from_int(-1))).is_zero()).then_some(c)
}

/// A level-`m` tensor with pairwise distinct coefficients, used to probe maps.
pub fn probe_tensor(n: usize, m: usize) -> SpinTensor {
    let size = n.pow(m as u32);
    let v: Vec<GaussianRational> = (0..size)
        .map(|k| GaussianRational::new(rat_int((k * k + 3) as i64), rat_int((2 * k + 1) as i64 % 7)))
        .collect();
    SpinTensor::from_dense(n, m, &v)
}

/// The scalar by which `Expect(m)∘Incl(m)` acts at level `m`, if it is one.
pub fn expect_incl_scalar(n: usize, m: usize) -> Option<GaussianRational> {
    let x = probe_tensor(n, m);
    let y = apply_generator(Generator::Incl(m), &[&x]).ok()?;
    let z = apply_generator(Generator::Expect(m), &[&y]).ok()?;
    proportionality(&z, &x)
}

/// `κ` with `E·E = κ E` for the Jones element at level `m + 2`.
pub fn jones_kappa(n: usize, m: usize) -> Option<GaussianRational> {
    let e = jones(n, m);
    let ee = apply_generator(Generator::Mult(m + 2), &[&e, &e]).ok()?;
    proportionality(&ee, &e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expect_incl_alternates() {
        assert_eq!(expect_incl_scalar(3, 0), Some(GaussianRational::from_int(3)));
        assert_eq!(expect_incl_scalar(3, 1), Some(GaussianRational::from_int(1)));
        assert_eq!(expect_incl_scalar(3, 2), Some(GaussianRational::from_int(3)));
    }

    #[test]
    fn jones_kappa_alternates() {
        assert_eq!(jones_kappa(3, 0), Some(GaussianRational::from_int(3)));
        assert_eq!(jones_kappa(3, 1), Some(GaussianRational::from_int(1)));
        assert_eq!(jones_kappa(2, 2), Some(GaussianRational::from_int(2)));
    }

    #[test]
    fn rotation_has_order_m() {
        for m in 1..=4 {
            let x = probe_tensor(3, m);
            let mut y = x.clone();
            for _ in 0..m {
                y = apply_generator(Generator::Rotate(m), &[&y]).unwrap();
            }
            assert_eq!(y, x);
        }
    }

    #[test]
    fn proportionality_detects_non_multiples() {
        let x = probe_tensor(2, 2);
        assert_eq!(proportionality(&x.scale(&GaussianRational::i()), &x), Some(GaussianRational::i()));
        assert_eq!(proportionality(&probe_tensor(2, 2), &embed_2box(&crate::exact::ExactMatrix::identity(2))), None);
    }
}
