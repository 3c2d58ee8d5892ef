//! Arithmetic in the n-th cyclotomic field, power basis of a primitive root.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::Rational;

/// Integer coefficients (lowest degree first) of the n-th cyclotomic
/// polynomial, obtained by dividing `x^n − 1` by every `Φ_d` with `d | n, d < n`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut poly = vec![BigInt::zero(); n + 1];
    poly[0] = BigInt::from(-1);
    poly[n] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = divide_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

/// Element of `Q(ζ_n)` stored as `φ(n)` rational coefficients of
/// `1, ζ, …, ζ^{φ(n)−1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CyclotomicElement {
    order: usize,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![Rational::zero(); euler_phi(order)] }
    }

    pub fn from_rational(order: usize, r: Rational) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = r;
        x
    }

    pub fn one(order: usize) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn reduce(order: usize, mut poly: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        for k in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate().take(deg) {
                poly[k - deg + j] -= &c * Rational::from_integer(pj.clone());
            }
        }
        poly.resize(deg, Rational::zero());
        Self { order, coeffs: poly }
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order, other.order, "mixing cyclotomic fields of different order");
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.order);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// `ζ_n^k` reduced to the power basis; `k` is taken modulo `n`.
pub fn cyclotomic_power(n: usize, k: i64) -> CyclotomicElement {
    assert!(n >= 1, "cyclotomic order must be positive");
    let e = k.rem_euclid(n as i64) as usize;
    let mut poly = vec![Rational::zero(); e + 1];
    poly[e] = Rational::one();
    if poly.len() < euler_phi(n) {
        poly.resize(euler_phi(n), Rational::zero());
    }
    CyclotomicElement::reduce(n, poly)
}

impl<'a> Add<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &'a CyclotomicElement) -> CyclotomicElement {
        self.check_order(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicElement { order: self.order, coeffs }
    }
}

impl<'a> Sub<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &'a CyclotomicElement) -> CyclotomicElement {
        self.check_order(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        CyclotomicElement { order: self.order, coeffs }
    }
}

impl<'a> Mul<&'a CyclotomicElement> for &'a CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &'a CyclotomicElement) -> CyclotomicElement {
        self.check_order(rhs);
        let len = self.coeffs.len() + rhs.coeffs.len();
        let mut prod = vec![Rational::zero(); len.max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        CyclotomicElement::reduce(self.order, prod)
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl fmt::Display for CyclotomicElement {
    /// Power-basis form in the primitive root written `w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if k == 1 {
                        write!(f, "w")?;
                    } else {
                        write!(f, "w^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat_int;

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |n| cyclotomic_polynomial(n).iter().map(|c| i64::try_from(c).unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(cyclotomic_power(4, 2), CyclotomicElement::from_rational(4, rat_int(-1)));
    }

    #[test]
    fn trivial_field() {
        assert_eq!(cyclotomic_power(1, 5), CyclotomicElement::one(1));
    }

    #[test]
    fn sqrt_two_in_eighth_roots() {
        let s = &cyclotomic_power(8, 1) + &cyclotomic_power(8, 7);
        assert!(s.as_rational().is_none());
        assert_eq!((&s * &s).as_rational(), Some(rat_int(2)));
    }

    #[test]
    fn powers_multiply() {
        for n in 1..=12usize {
            for k in 0..n as i64 {
                for l in 0..n as i64 {
                    assert_eq!(&cyclotomic_power(n, k) * &cyclotomic_power(n, l), cyclotomic_power(n, k + l), "n={n} k={k} l={l}");
                }
            }
            assert_eq!(cyclotomic_power(n, 1).pow(n as u32), CyclotomicElement::one(n));
            for k in 1..n as i64 {
                assert_ne!(cyclotomic_power(n, k), CyclotomicElement::one(n), "n={n} k={k}");
            }
        }
    }
}
