use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use super::scalar::Coeff;
use super::AlgebraError;

/// Exponent pair `(m, n)` of the normal-ordered monomial `a†^m a^n`.
pub type Monomial = (u32, u32);

/// A polynomial `Σ c_{mn} a†^m a^n` in normal order with `[a, a†] = 1`.
///
/// The term map never stores zero coefficients, so two polynomials are equal
/// iff their term maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylPolynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl WeylPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c · a†^m a^n`.
    pub fn monomial(m: u32, n: u32, c: Coeff) -> Self {
        let mut p = Self::zero();
        p.add_term(m, n, c);
        p
    }

    /// `a`
    pub fn annihilation() -> Self {
        Self::monomial(0, 1, Coeff::one())
    }

    /// `a†`
    pub fn creation() -> Self {
        Self::monomial(1, 0, Coeff::one())
    }

    /// `a†a`
    pub fn number() -> Self {
        Self::monomial(1, 1, Coeff::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((m, n), c) in terms {
            p.add_term(m, n, c);
        }
        p
    }

    pub fn add_term(&mut self, m: u32, n: u32, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((m, n)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: u32, n: u32) -> Coeff {
        self.terms.get(&(m, n)).cloned().unwrap_or_default()
    }

    /// Number of nonzero normal-ordered terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(Coeff::is_one)
    }

    /// Maximum total degree `m + n`; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(m, n)| m + n).max().unwrap_or(0)
    }

    /// Largest `|m − n|`, i.e. how far the operator moves a number state.
    pub fn bandwidth(&self) -> u32 {
        self.terms.keys().map(|(m, n)| m.abs_diff(*n)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    /// True when every coefficient lies in `ℚ(i)` (no `√2` component).
    pub fn is_gaussian_rational(&self) -> bool {
        self.terms.values().all(Coeff::is_gaussian_rational)
    }

    /// Normal-ordered product, using
    /// `aⁿ a†ᵐ = Σ_k k!·C(n,k)·C(m,k)·a†^{m−k} a^{n−k}`.
    pub fn multiply(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(m1, n1), c1) in &self.terms {
            for (&(m2, n2), c2) in &rhs.terms {
                let c = c1 * c2;
                for k in 0..=n1.min(m2) {
                    let weight = contraction_weight(n1, m2, k);
                    out.add_term(m1 + m2 - k, n1 + n2 - k, c.scale_int(&weight));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.multiply(self))
    }

    /// Hermitian adjoint: `c a†^m a^n ↦ c̄ a†^n a^m`.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(m, n), c)| ((n, m), c.conj())))
    }

    /// `[lhs, rhs] = lhs·rhs − rhs·lhs`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.multiply(rhs) - &rhs.multiply(self)
    }

    /// Terms with `m = n`.
    pub fn diagonal_part(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|((m, n), _)| m == n).map(|(k, v)| (*k, v.clone())))
    }

    pub fn off_diagonal_part(&self) -> Self {
        Self::from_terms(self.terms.iter().filter(|((m, n), _)| m != n).map(|(k, v)| (*k, v.clone())))
    }

    /// Solves `[a†a, X] = self` for `X` with zero diagonal part.
    ///
    /// `ad_{a†a}` acts on `a†^m a^n` with eigenvalue `m − n`, so every
    /// off-diagonal term is divided by its eigenvalue. A nonzero diagonal
    /// part has no preimage.
    pub fn ad_number_solve(&self) -> Result<Self, AlgebraError> {
        let mut out = Self::zero();
        for (&(m, n), c) in &self.terms {
            if m == n {
                return Err(AlgebraError::DiagonalObstruction { m, n });
            }
            let eig = i64::from(m) - i64::from(n);
            out.add_term(m, n, c.scale_rational(&num_rational::BigRational::new(1.into(), eig.into())));
        }
        Ok(out)
    }

    /// Terms sorted by `(m + n, m)`, the order used for rendering.
    pub fn sorted_terms(&self) -> Vec<(Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c)).collect();
        v.sort_by_key(|((m, n), _)| (m + n, *m));
        v
    }
}

/// `k!·C(n,k)·C(m,k)`, the number of ways to contract `k` pairs.
fn contraction_weight(n: u32, m: u32, k: u32) -> BigInt {
    let mut w = BigInt::one();
    // k! C(n,k) C(m,k) = n!/(n−k)! · C(m,k)
    for j in 0..k {
        w *= n - j;
    }
    w * binomial(m, k)
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

impl fmt::Display for WeylPolynomial {
    /// Terms sorted by `(m+n, m)`, e.g. `1 + [-1/2·i]·a†^2 a`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, ((m, n), c)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let op = monomial_label(m, n);
            if op.is_empty() {
                write!(f, "[{c}]")?;
            } else {
                write!(f, "[{c}]·{op}")?;
            }
        }
        Ok(())
    }
}

fn monomial_label(m: u32, n: u32) -> String {
    let part = |sym: &str, k: u32| match k {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{k}"),
    };
    let (c, a) = (part("a†", m), part("a", n));
    match (c.is_empty(), a.is_empty()) {
        (false, false) => format!("{c} {a}"),
        _ => format!("{c}{a}"),
    }
}

impl Add<&WeylPolynomial> for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn add(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        let mut out = self.clone();
        for (&(m, n), c) in &rhs.terms {
            out.add_term(m, n, c.clone());
        }
        out
    }
}

impl Sub<&WeylPolynomial> for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn sub(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        let mut out = self.clone();
        for (&(m, n), c) in &rhs.terms {
            out.add_term(m, n, -c);
        }
        out
    }
}

impl Mul<&WeylPolynomial> for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn mul(self, rhs: &WeylPolynomial) -> WeylPolynomial {
        self.multiply(rhs)
    }
}

impl Neg for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn neg(self) -> WeylPolynomial {
        WeylPolynomial::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }
}

impl std::iter::Sum for WeylPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}
