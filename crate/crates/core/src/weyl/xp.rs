//! Non-commutative words in position `x` and momentum `p`, and their
//! conversion to normal-ordered ladder polynomials via
//! `a = (x + ip)/√2`, `a† = (x − ip)/√2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::WeylPolynomial;
use super::scalar::{Coeff, GaussianRational};
use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Canonical {
    X,
    P,
}

/// A word such as `x p⁴ x` with an exact prefactor. Symbol order is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XpWord {
    pub coeff: GaussianRational,
    pub symbols: Vec<Canonical>,
}

/// A sum of [`XpWord`]s, e.g. `4/3 p^3 + 2 x p x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XpExpression {
    pub words: Vec<XpWord>,
}

impl XpExpression {
    pub fn new(words: Vec<XpWord>) -> Self {
        Self { words }
    }

    /// Multiplies every prefactor by `c`.
    pub fn scaled(mut self, c: &GaussianRational) -> Self {
        for w in &mut self.words {
            w.coeff = &w.coeff * c;
        }
        self
    }

    /// Normal-ordered ladder form.
    pub fn to_weyl(&self) -> WeylPolynomial {
        let x = position();
        let p = momentum();
        self.words
            .iter()
            .map(|w| {
                let prod = w.symbols.iter().fold(WeylPolynomial::one(), |acc, s| match s {
                    Canonical::X => acc.multiply(&x),
                    Canonical::P => acc.multiply(&p),
                });
                prod.scale(&w.coeff.clone().into())
            })
            .sum()
    }
}

/// Parses and converts in one step.
pub fn from_xp(expr: &str) -> Result<WeylPolynomial, AlgebraError> {
    Ok(expr.parse::<XpExpression>()?.to_weyl())
}

/// `x = (a + a†)/√2`
pub fn position() -> WeylPolynomial {
    let half_root = Coeff::new(GaussianRational::zero(), GaussianRational::from_ratio(1, 2));
    &WeylPolynomial::annihilation().scale(&half_root) + &WeylPolynomial::creation().scale(&half_root)
}

/// `p = (a − a†)/(i√2) = −i(a − a†)/√2`
pub fn momentum() -> WeylPolynomial {
    let c = Coeff::new(
        GaussianRational::zero(),
        GaussianRational::new(BigRational::from_integer(0.into()), BigRational::new((-1).into(), 2.into())),
    );
    &WeylPolynomial::annihilation().scale(&c) - &WeylPolynomial::creation().scale(&c)
}

impl fmt::Display for XpExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "0");
        }
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", w.coeff)?;
            let mut k = 0;
            while k < w.symbols.len() {
                let s = w.symbols[k];
                let run = w.symbols[k..].iter().take_while(|&&t| t == s).count();
                let c = if s == Canonical::X { 'x' } else { 'p' };
                if run == 1 {
                    write!(f, " {c}")?;
                } else {
                    write!(f, " {c}^{run}")?;
                }
                k += run;
            }
        }
        Ok(())
    }
}

/// Grammar (whitespace-insensitive):
///
/// ```text
/// expr  := [sign] term (sign term)*
/// term  := [number ['/' number]] ['*'] ['i'] ['*'] word
/// word  := (('x' | 'p') ['^' number])*
/// ```
///
/// A term must have a coefficient or a non-empty word. Examples:
/// `-2/3 p^3 - x^2 p + i x`, `13/48 i x^3 p`, `2xpx`.
impl FromStr for XpExpression {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut pos = 0;
        let mut words = Vec::new();
        let err =
            |at: usize, msg: &str| AlgebraError::Parse { position: chars.get(at).map_or(s.len(), |(i, _)| *i), message: msg.to_string() };
        if chars.is_empty() {
            return Err(err(0, "empty expression"));
        }
        let peek = |pos: usize| chars.get(pos).map(|(_, c)| *c);
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while peek(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            (start != *pos).then(|| chars[start..*pos].iter().map(|(_, c)| *c).collect::<String>().parse().unwrap())
        };

        let mut first = true;
        while pos < chars.len() {
            let mut negative = false;
            match peek(pos) {
                Some('+') => pos += 1,
                Some('-') => {
                    negative = true;
                    pos += 1;
                }
                _ if first => {}
                _ => return Err(err(pos, "expected '+' or '-'")),
            }
            first = false;

            let mut has_coeff = false;
            let mut value = BigRational::from_integer(1.into());
            if let Some(num) = read_int(&mut pos) {
                has_coeff = true;
                value = BigRational::from_integer(num);
                if peek(pos) == Some('/') {
                    pos += 1;
                    let den = read_int(&mut pos).ok_or_else(|| err(pos, "expected denominator"))?;
                    if den == BigInt::from(0) {
                        return Err(err(pos, "zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
            }
            if peek(pos) == Some('*') {
                pos += 1;
            }
            let mut imaginary = false;
            if peek(pos) == Some('i') {
                imaginary = true;
                has_coeff = true;
                pos += 1;
                if peek(pos) == Some('*') {
                    pos += 1;
                }
            }
            let mut symbols = Vec::new();
            while let Some(c) = peek(pos) {
                let sym = match c {
                    'x' => Canonical::X,
                    'p' => Canonical::P,
                    _ => break,
                };
                pos += 1;
                let mut reps = 1usize;
                if peek(pos) == Some('^') {
                    pos += 1;
                    let k = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                    reps = usize::try_from(k).map_err(|_| err(pos, "exponent out of range"))?;
                }
                symbols.extend(std::iter::repeat_n(sym, reps));
            }
            if !has_coeff && symbols.is_empty() {
                return Err(err(pos, "expected a coefficient or an x/p word"));
            }
            if negative {
                value = -value;
            }
            let coeff = if imaginary { GaussianRational::imag(value) } else { GaussianRational::real(value) };
            words.push(XpWord { coeff, symbols });
        }
        Ok(Self { words })
    }
}
