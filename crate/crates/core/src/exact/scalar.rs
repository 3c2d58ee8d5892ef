//! Scalar fields used by the linear algebra: exact Gaussian rationals and
//! Gaussian integers reduced modulo a Mersenne prime.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `p/q` or `p` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Field operations needed by echelon reduction and the closure engine.
///
/// Method names avoid clashing with the `std::ops` traits that
/// [`GaussianRational`] also implements.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync + Zero + One + 'static {
    /// The image of the Gaussian integer `re + im·i`.
    fn from_gaussian(re: i64, im: i64) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn conjugate(&self) -> Self;
    fn inverse(&self) -> Option<Self>;

    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }

    /// `self -= a * b`
    fn sub_product(&mut self, a: &Self, b: &Self) {
        *self = self.minus(&a.times(b));
    }
}

/// Exact complex number `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(re: i64) -> Self {
        Self::real(rat_int(re))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `x·conj(x)`, a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Parse the `p/q+r/s*i` notation written by [`fmt::Display`].
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix("*i") {
            // split at the last sign that is not at position 0 and not after '/'
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                    split = Some(k);
                    break;
                }
            }
            match split {
                Some(k) => {
                    let re = parse_rational(&body[..k])?;
                    let im = parse_rational(body[k..].trim_start_matches('+'))?;
                    Some(Self::new(re, im))
                }
                None => Some(Self::new(Rational::zero(), parse_rational(body)?)),
            }
        } else {
            parse_rational(s).map(Self::real)
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}*i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}*i", self.re, self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl serde::Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for GaussianRational {
    fn from(re: i64) -> Self {
        Self::from_int(re)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a GaussianRational) -> GaussianRational {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl Scalar for GaussianRational {
    fn from_gaussian(re: i64, im: i64) -> Self {
        Self::new(rat_int(re), rat_int(im))
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn conjugate(&self) -> Self {
        self.conj()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        if a.im.is_zero() && b.im.is_zero() {
            self.re += &a.re * &b.re;
        } else {
            let p = a * b;
            self.re += p.re;
            self.im += p.im;
        }
    }
    fn sub_product(&mut self, a: &Self, b: &Self) {
        if a.im.is_zero() && b.im.is_zero() {
            self.re -= &a.re * &b.re;
        } else {
            let p = a * b;
            self.re -= p.re;
            self.im -= p.im;
        }
    }
}

/// The Mersenne prime 2^61 − 1. It is 3 mod 4, so `x² + 1` is irreducible
/// and Gaussian integers reduce to the field with p² elements.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[inline]
fn mod_reduce(x: u128) -> u64 {
    let p = MERSENNE_61 as u128;
    let folded = (x & p) + (x >> 61);
    let folded = (folded & p) + (folded >> 61);
    let r = folded as u64;
    if r >= MERSENNE_61 {
        r - MERSENNE_61
    } else {
        r
    }
}

#[inline]
fn mod_mul(a: u64, b: u64) -> u64 {
    mod_reduce(a as u128 * b as u128)
}

#[inline]
fn mod_add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MERSENNE_61 {
        s - MERSENNE_61
    } else {
        s
    }
}

#[inline]
fn mod_sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MERSENNE_61 - b
    }
}

fn mod_pow(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, base);
        }
        base = mod_mul(base, base);
        e >>= 1;
    }
    acc
}

fn mod_from_i64(x: i64) -> u64 {
    let r = x.rem_euclid(MERSENNE_61 as i64);
    r as u64
}

/// Reduction of a Gaussian integer modulo [`MERSENNE_61`].
///
/// Ranks computed over this field never exceed the rank of the same integer
/// vectors over the Gaussian rationals.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ModGaussian {
    pub re: u64,
    pub im: u64,
}

impl ModGaussian {
    pub fn new(re: i64, im: i64) -> Self {
        Self { re: mod_from_i64(re), im: mod_from_i64(im) }
    }

    /// Reduce an exact value; fails when a denominator vanishes mod p.
    pub fn from_exact(x: &GaussianRational) -> Option<Self> {
        let part = |r: &Rational| -> Option<u64> {
            let p = BigInt::from(MERSENNE_61);
            let num = (r.numer() % &p + &p) % &p;
            let den = (r.denom() % &p + &p) % &p;
            let num: u64 = num.try_into().ok()?;
            let den: u64 = den.try_into().ok()?;
            if den == 0 {
                return None;
            }
            Some(mod_mul(num, mod_pow(den, MERSENNE_61 - 2)))
        };
        Some(Self { re: part(&x.re)?, im: part(&x.im)? })
    }
}

impl Add for ModGaussian {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
}

impl Mul for ModGaussian {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.times(&rhs)
    }
}

impl Zero for ModGaussian {
    fn zero() -> Self {
        Self { re: 0, im: 0 }
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl One for ModGaussian {
    fn one() -> Self {
        Self { re: 1, im: 0 }
    }
}

impl Scalar for ModGaussian {
    fn from_gaussian(re: i64, im: i64) -> Self {
        Self::new(re, im)
    }
    #[inline]
    fn plus(&self, rhs: &Self) -> Self {
        Self { re: mod_add(self.re, rhs.re), im: mod_add(self.im, rhs.im) }
    }
    #[inline]
    fn minus(&self, rhs: &Self) -> Self {
        Self { re: mod_sub(self.re, rhs.re), im: mod_sub(self.im, rhs.im) }
    }
    #[inline]
    fn times(&self, rhs: &Self) -> Self {
        if self.im == 0 && rhs.im == 0 {
            return Self { re: mod_mul(self.re, rhs.re), im: 0 };
        }
        Self {
            re: mod_sub(mod_mul(self.re, rhs.re), mod_mul(self.im, rhs.im)),
            im: mod_add(mod_mul(self.re, rhs.im), mod_mul(self.im, rhs.re)),
        }
    }
    fn negated(&self) -> Self {
        Self { re: mod_sub(0, self.re), im: mod_sub(0, self.im) }
    }
    fn conjugate(&self) -> Self {
        Self { re: self.re, im: mod_sub(0, self.im) }
    }
    fn inverse(&self) -> Option<Self> {
        let n = mod_add(mod_mul(self.re, self.re), mod_mul(self.im, self.im));
        if n == 0 {
            return None;
        }
        let ninv = mod_pow(n, MERSENNE_61 - 2);
        Some(Self { re: mod_mul(self.re, ninv), im: mod_mul(mod_sub(0, self.im), ninv) })
    }
    #[inline]
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }
    #[inline]
    fn sub_product(&mut self, a: &Self, b: &Self) {
        *self = self.minus(&a.times(b));
    }
}
