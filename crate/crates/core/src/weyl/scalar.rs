//! Exact coefficient fields: Gaussian rationals `ℚ(i)` and their extension
//! by `√2`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(num.into(), den.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn imag(im: BigRational) -> Self {
        Self { re: BigRational::zero(), im }
    }

    pub fn i() -> Self {
        Self::imag(BigRational::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        self.scale(&k)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational from a finite `f64` (every finite double is a dyadic
/// rational). Returns `None` for NaN or infinities.
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// `p/q`, `r/s·i` or `p/q + r/s·i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratio(&self.re)),
            (true, false) => write!(f, "{}·i", fmt_ratio(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}·i", fmt_ratio(&self.re), sign, fmt_ratio(&self.im.abs()))
            }
        }
    }
}

macro_rules! forward_binop {
    ($ty:ty, $trait:ident, $method:ident) => {
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

forward_binop!(GaussianRational, Add, add);
forward_binop!(GaussianRational, Sub, sub);
forward_binop!(GaussianRational, Mul, mul);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

/// An element `a + b·√2` of `ℚ(i, √2)` with `a`, `b` Gaussian rationals.
///
/// Converting `x`, `p` to ladder operators introduces powers of `2^{-1/2}`,
/// so Weyl-algebra coefficients live here. Representation is unique because
/// `√2 ∉ ℚ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Coeff {
    pub rational: GaussianRational,
    pub root2: GaussianRational,
}

impl Coeff {
    pub fn new(rational: GaussianRational, root2: GaussianRational) -> Self {
        Self { rational, root2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        GaussianRational::one().into()
    }

    pub fn i() -> Self {
        GaussianRational::i().into()
    }

    /// `√2`.
    pub fn sqrt2() -> Self {
        Self { rational: GaussianRational::zero(), root2: GaussianRational::one() }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::from_integer(n).into()
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::from_ratio(num, den).into()
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GaussianRational::real(BigRational::from_integer(n)).into()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.root2.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rational.is_one() && self.root2.is_zero()
    }

    /// True when there is no `√2` component.
    pub fn is_gaussian_rational(&self) -> bool {
        self.root2.is_zero()
    }

    /// True when the value is real (both components have zero imaginary part).
    pub fn is_real(&self) -> bool {
        self.rational.is_real() && self.root2.is_real()
    }

    pub fn as_gaussian_rational(&self) -> Option<&GaussianRational> {
        self.is_gaussian_rational().then_some(&self.rational)
    }

    /// Complex conjugation (`√2` is real, so it acts componentwise).
    pub fn conj(&self) -> Self {
        Self { rational: self.rational.conj(), root2: self.root2.conj() }
    }

    /// Exact inverse; `None` for zero.
    ///
    /// `1/(a + b√2) = (a − b√2)/(a² − 2b²)`, and `a² − 2b² ≠ 0` for nonzero
    /// input since `√2` is irrational over `ℚ(i)`.
    pub fn inv(&self) -> Option<Self> {
        let a = &self.rational;
        let b = &self.root2;
        let den = a * a - (b * b).scale_int(&BigInt::from(2));
        let den_inv = den.inv()?;
        Some(Self { rational: a * &den_inv, root2: -(b * &den_inv) })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Self { rational: self.rational.scale_int(k), root2: self.root2.scale_int(k) }
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        Self { rational: self.rational.scale(k), root2: self.root2.scale(k) }
    }

    pub fn to_complex64(&self) -> Complex64 {
        self.rational.to_complex64() + self.root2.to_complex64() * std::f64::consts::SQRT_2
    }
}

impl From<GaussianRational> for Coeff {
    fn from(rational: GaussianRational) -> Self {
        Self { rational, root2: GaussianRational::zero() }
    }
}

impl From<BigRational> for Coeff {
    fn from(r: BigRational) -> Self {
        GaussianRational::real(r).into()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.root2.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "({})·√2", self.root2),
            (false, false) => write!(f, "{} + ({})·√2", self.rational, self.root2),
        }
    }
}

impl Add<&Coeff> for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        Coeff { rational: &self.rational + &rhs.rational, root2: &self.root2 + &rhs.root2 }
    }
}

impl Sub<&Coeff> for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        Coeff { rational: &self.rational - &rhs.rational, root2: &self.root2 - &rhs.root2 }
    }
}

impl Mul<&Coeff> for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        let two = BigInt::from(2);
        Coeff {
            rational: &self.rational * &rhs.rational + (&self.root2 * &rhs.root2).scale_int(&two),
            root2: &self.rational * &rhs.root2 + &self.root2 * &rhs.rational,
        }
    }
}

forward_binop!(Coeff, Add, add);
forward_binop!(Coeff, Sub, sub);
forward_binop!(Coeff, Mul, mul);

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        *self = &*self - rhs;
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { rational: -self.rational, root2: -self.root2 }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -self.clone()
    }
}
