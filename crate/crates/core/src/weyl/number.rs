//! Polynomials in the number eigenvalue `n`, and the correspondence between
//! them and diagonal normal-ordered operators:
//! `⟨n| a†^k a^k |n⟩ = n(n−1)···(n−k+1)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::WeylPolynomial;
use super::scalar::Coeff;
use super::AlgebraError;

/// `Σ_k c_k n^k` with exact coefficients. Trailing zeros are trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NumberPolynomial {
    coeffs: Vec<Coeff>,
}

impl NumberPolynomial {
    pub fn new(mut coeffs: Vec<Coeff>) -> Self {
        while coeffs.last().is_some_and(Coeff::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coeff) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `n`.
    pub fn n() -> Self {
        Self::new(vec![Coeff::zero(), Coeff::one()])
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Coeff {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when every coefficient is a real rational (no imaginary or `√2`
    /// component).
    pub fn has_real_rational_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_gaussian_rational() && c.is_real())
    }

    pub fn eval(&self, n: i64) -> Coeff {
        let x = Coeff::from_integer(n);
        self.coeffs.iter().rev().fold(Coeff::zero(), |acc, c| &(&acc * &x) + c)
    }

    pub fn eval_f64(&self, n: f64) -> num_complex::Complex64 {
        self.coeffs.iter().rev().fold(num_complex::Complex64::zero(), |acc, c| acc * n + c.to_complex64())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Maps `Σ c_k n^k` to the diagonal operator `Σ c_k (a†a)^k`, expressed in
    /// the falling-factorial basis `n^j = Σ_k S(j,k) n^{(k)}` with `S` the
    /// Stirling numbers of the second kind and `n^{(k)} ↦ a†^k a^k`.
    pub fn to_operator(&self) -> WeylPolynomial {
        let s2 = stirling_second(self.coeffs.len());
        let mut out = WeylPolynomial::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            for (k, s) in s2[j].iter().enumerate() {
                if !s.is_zero() {
                    let k = u32::try_from(k).expect("degree fits in u32");
                    out.add_term(k, k, c.scale_int(s));
                }
            }
        }
        out
    }

    /// Inverse of [`to_operator`](Self::to_operator): the unique `e(n)` with
    /// `e(n) = ⟨n|p|n⟩` for every `n`, via the signed Stirling numbers of the
    /// first kind `n^{(k)} = Σ_j s(k,j) n^j`.
    pub fn from_diagonal_operator(p: &WeylPolynomial) -> Result<Self, AlgebraError> {
        if let Some(((m, n), _)) = p.terms().find(|((m, n), _)| m != n) {
            return Err(AlgebraError::NotDiagonal { m: *m, n: *n });
        }
        let top = p.terms().map(|((k, _), _)| *k as usize).max().map_or(0, |k| k + 1);
        let s1 = stirling_first_signed(top);
        let mut coeffs = vec![Coeff::zero(); top];
        for (&(k, _), c) in p.terms() {
            for (j, s) in s1[k as usize].iter().enumerate() {
                if !s.is_zero() {
                    coeffs[j] += &c.scale_int(s);
                }
            }
        }
        Ok(Self::new(coeffs))
    }
}

/// Table `s[k][j]` for `0 ≤ j ≤ k < size`, signed, so that
/// `n(n−1)···(n−k+1) = Σ_j s[k][j] n^j`.
fn stirling_first_signed(size: usize) -> Vec<Vec<BigInt>> {
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(size);
    for k in 0..size {
        let mut row = vec![BigInt::zero(); k + 1];
        if k == 0 {
            row[0] = BigInt::one();
        } else {
            // n^{(k)} = n^{(k−1)} · (n − (k−1))
            let prev = &table[k - 1];
            let shift = BigInt::from(k - 1);
            for (j, c) in prev.iter().enumerate() {
                row[j + 1] += c;
                row[j] -= c * &shift;
            }
        }
        table.push(row);
    }
    table
}

/// Table `S[j][k]` so that `n^j = Σ_k S[j][k] n^{(k)}`.
fn stirling_second(size: usize) -> Vec<Vec<BigInt>> {
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(size);
    for j in 0..size {
        let mut row = vec![BigInt::zero(); j + 1];
        if j == 0 {
            row[0] = BigInt::one();
        } else {
            // S(j,k) = k·S(j−1,k) + S(j−1,k−1)
            let prev = &table[j - 1];
            for (k, c) in prev.iter().enumerate() {
                row[k] += c * BigInt::from(k);
                row[k + 1] += c;
            }
        }
        table.push(row);
    }
    table
}

impl fmt::Display for NumberPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}]·n")?,
                _ => write!(f, "[{c}]·n^{k}")?,
            }
        }
        Ok(())
    }
}
