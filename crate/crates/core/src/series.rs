//! Poincaré series: closed forms, rational sums over poles and coefficient prefixes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("coefficient {0} is not an integer")]
    NonIntegral(usize),
    #[error("only {available} coefficients known, {requested} requested")]
    PrefixTooShort { available: usize, requested: usize },
    #[error("invalid series parameters: {0}")]
    Parameters(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoincareSeries {
    /// `f(z) = Σ_m w_m / (1 − m z)`.
    RationalSum { weights: BTreeMap<u64, Rational> },
    /// Temperley–Lieb algebra with loop parameter `n`.
    TemperleyLieb { n: u64 },
    /// Fuss–Catalan algebra on `s` colors, generic indices.
    FussCatalan { s: u64 },
    /// `1 + z/2·(1/(1−εz) + 1/(1−nz))`.
    Dihedral { n: u64, epsilon: u64 },
    /// `1 + z/(1−nz)`.
    CyclicGroup { n: u64 },
    Cube,
    /// Coefficientwise product.
    Hadamard(Vec<PoincareSeries>),
    /// A known prefix `c_0 … c_K` and nothing more.
    Coefficients(Vec<BigUint>),
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn catalan(k: u64) -> BigUint {
    binomial(2 * k, k) / BigUint::from(k + 1)
}

fn pow(base: u64, e: u64) -> BigUint {
    Pow::pow(BigUint::from(base), e as u32)
}

/// `(ε^{k−1} + n^{k−1})/2` for `k ≥ 1`.
fn dihedral_coefficient(n: u64, epsilon: u64, k: u64) -> BigUint {
    if k == 0 {
        BigUint::one()
    } else {
        (pow(epsilon, k - 1) + pow(n, k - 1)) / BigUint::from(2u8)
    }
}

pub fn tl_series(n: u64) -> PoincareSeries {
    assert!(n >= 1, "loop parameter must be positive");
    PoincareSeries::TemperleyLieb { n }
}

pub fn fc_series(s: u64) -> PoincareSeries {
    assert!(s >= 1, "Fuss-Catalan needs at least one color");
    PoincareSeries::FussCatalan { s }
}

/// `ε = 1` for odd `n`, `2` for even `n`.
pub fn dihedral_series(n: u64) -> PoincareSeries {
    assert!(n >= 1, "dihedral order must be positive");
    PoincareSeries::Dihedral { n, epsilon: if n % 2 == 1 { 1 } else { 2 } }
}

pub fn cyclic_group_series(n: u64) -> PoincareSeries {
    assert!(n >= 1, "cyclic order must be positive");
    PoincareSeries::CyclicGroup { n }
}

pub fn cube_series() -> PoincareSeries {
    PoincareSeries::Cube
}

/// Coefficientwise product of the first `terms + 1` coefficients.
pub fn hadamard(a: &PoincareSeries, b: &PoincareSeries, terms: usize) -> Result<PoincareSeries, SeriesError> {
    let x = a.coefficients(terms)?;
    let y = b.coefficients(terms)?;
    Ok(PoincareSeries::Coefficients(x.into_iter().zip(y).map(|(p, q)| p * q).collect()))
}

impl PoincareSeries {
    /// Series with the given pole weights; the weights must sum to one.
    pub fn rational_sum(weights: BTreeMap<u64, Rational>) -> Result<Self, SeriesError> {
        let total: Rational = weights.values().cloned().sum();
        if !total.is_one() {
            return Err(SeriesError::Parameters(format!("weights sum to {total}, not 1")));
        }
        let weights = weights.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        Ok(PoincareSeries::RationalSum { weights })
    }

    /// Coefficient `c_k`.
    pub fn coefficient(&self, k: usize) -> Result<BigUint, SeriesError> {
        let kk = k as u64;
        Ok(match self {
            PoincareSeries::RationalSum { weights } => {
                let mut acc = Rational::zero();
                for (&m, w) in weights {
                    if k == 0 || m != 0 {
                        acc += w * Rational::from_integer(BigInt::from(pow(m, kk)));
                    }
                }
                if !acc.is_integer() || acc < Rational::zero() {
                    return Err(SeriesError::NonIntegral(k));
                }
                acc.to_integer().to_biguint().expect("nonnegative")
            }
            PoincareSeries::TemperleyLieb { n } if *n >= 4 => catalan(kk),
            PoincareSeries::TemperleyLieb { n } => dihedral_coefficient(*n, if *n == 2 { 2 } else { 1 }, kk),
            PoincareSeries::FussCatalan { s } => binomial((s + 1) * kk, kk) / BigUint::from(s * kk + 1),
            PoincareSeries::Dihedral { n, epsilon } => dihedral_coefficient(*n, *epsilon, kk),
            PoincareSeries::CyclicGroup { n } => {
                if k == 0 {
                    BigUint::one()
                } else {
                    pow(*n, kk - 1)
                }
            }
            PoincareSeries::Cube => {
                if k == 0 {
                    BigUint::one()
                } else {
                    pow(2, kk - 1) * catalan(kk)
                }
            }
            PoincareSeries::Hadamard(parts) => {
                let mut acc = BigUint::one();
                for p in parts {
                    acc *= p.coefficient(k)?;
                }
                acc
            }
            PoincareSeries::Coefficients(c) => c
                .get(k)
                .cloned()
                .ok_or(SeriesError::PrefixTooShort { available: c.len(), requested: k + 1 })?,
        })
    }

    /// `c_0 … c_terms`.
    pub fn coefficients(&self, terms: usize) -> Result<Vec<BigUint>, SeriesError> {
        (0..=terms).map(|k| self.coefficient(k)).collect()
    }

    /// Coefficients as machine integers, for comparison with dimensions.
    pub fn coefficients_u64(&self, terms: usize) -> Result<Vec<u64>, SeriesError> {
        self.coefficients(terms)?
            .into_iter()
            .enumerate()
            .map(|(k, c)| c.to_u64().ok_or(SeriesError::Parameters(format!("coefficient {k} overflows"))))
            .collect()
    }

    /// Number of coefficients known, `None` for closed forms.
    pub fn known_terms(&self) -> Option<usize> {
        match self {
            PoincareSeries::Coefficients(c) => Some(c.len()),
            PoincareSeries::Hadamard(parts) => parts.iter().filter_map(PoincareSeries::known_terms).min(),
            _ => None,
        }
    }

    /// Exact convergence radius where the closed form states one.
    pub fn radius(&self) -> Option<Rational> {
        let inv = |n: u64| Rational::new(BigInt::one(), BigInt::from(n));
        match self {
            PoincareSeries::RationalSum { weights } => {
                weights.keys().copied().filter(|&m| m > 0).max().map(inv)
            }
            PoincareSeries::TemperleyLieb { n } if *n >= 4 => Some(inv(4)),
            PoincareSeries::TemperleyLieb { n } => Some(inv(*n)),
            PoincareSeries::FussCatalan { s } => {
                let num = BigInt::from(pow(*s, *s));
                let den = BigInt::from(pow(s + 1, s + 1));
                Some(Rational::new(num, den))
            }
            PoincareSeries::Dihedral { n, .. } | PoincareSeries::CyclicGroup { n } => Some(inv(*n)),
            PoincareSeries::Cube => Some(inv(8)),
            PoincareSeries::Hadamard(parts) => {
                parts.iter().map(PoincareSeries::radius).try_fold(Rational::one(), |acc, r| r.map(|r| acc * r))
            }
            PoincareSeries::Coefficients(_) => None,
        }
    }

    /// Short machine-readable kind name.
    pub fn kind(&self) -> &'static str {
        match self {
            PoincareSeries::RationalSum { .. } => "rational-sum",
            PoincareSeries::TemperleyLieb { .. } => "temperley-lieb",
            PoincareSeries::FussCatalan { .. } => "fuss-catalan",
            PoincareSeries::Dihedral { .. } => "dihedral",
            PoincareSeries::CyclicGroup { .. } => "cyclic",
            PoincareSeries::Cube => "cube",
            PoincareSeries::Hadamard(_) => "hadamard",
            PoincareSeries::Coefficients(_) => "coefficients",
        }
    }

    pub fn is_closed_form(&self) -> bool {
        match self {
            PoincareSeries::Coefficients(_) => false,
            PoincareSeries::Hadamard(parts) => parts.iter().all(PoincareSeries::is_closed_form),
            _ => true,
        }
    }
}

impl fmt::Display for PoincareSeries {
    /// Formula in the variable `z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoincareSeries::RationalSum { weights } => {
                let terms: Vec<String> = weights
                    .iter()
                    .rev()
                    .map(|(m, w)| if *m == 0 { format!("({w})") } else { format!("({w})/(1-{m}z)") })
                    .collect();
                write!(f, "{}", terms.join("+"))
            }
            PoincareSeries::TemperleyLieb { n } if *n >= 4 => write!(f, "(1-sqrt(1-4z))/(2z)"),
            PoincareSeries::TemperleyLieb { n } => {
                let eps = if *n == 2 { 2 } else { 1 };
                write!(f, "1+z/2*(1/(1-{eps}z)+1/(1-{n}z))")
            }
            PoincareSeries::FussCatalan { s } => write!(f, "sum_k binomial({}k,k)/({s}k+1)*z^k", s + 1),
            PoincareSeries::Dihedral { n, epsilon } => write!(f, "1+z/2*(1/(1-{epsilon}z)+1/(1-{n}z))"),
            PoincareSeries::CyclicGroup { n } => write!(f, "1+z/(1-{n}z)"),
            PoincareSeries::Cube => write!(f, "1+sum_(k>=1) 2^(k-1)/(k+1)*binomial(2k,k)*z^k"),
            PoincareSeries::Hadamard(parts) => {
                let s: Vec<String> = parts.iter().map(|p| format!("[{p}]")).collect();
                write!(f, "{}", s.join(" (*) "))
            }
            PoincareSeries::Coefficients(c) => {
                let s: Vec<String> = c.iter().enumerate().map(|(k, x)| format!("{x}z^{k}")).collect();
                write!(f, "{}+O(z^{})", s.join("+"), c.len())
            }
        }
    }
}

/// Exact-prefix comparison helper: `true` when `series` starts with `prefix`.
pub fn matches_prefix(series: &PoincareSeries, prefix: &[u64]) -> bool {
    prefix.iter().enumerate().all(|(k, &c)| series.coefficient(k).map(|x| x == BigUint::from(c)).unwrap_or(false))
}

/// Prefix series from dimension counts.
pub fn prefix_from_counts(counts: &[usize]) -> PoincareSeries {
    PoincareSeries::Coefficients(counts.iter().map(|&c| BigUint::from(c)).collect())
}
