//! Dense univariate polynomials in the path parameter `t`.

use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// Ascending coefficient vector; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn one() -> Self {
        UniPoly(vec![Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        UniPoly(vec![Rational::zero(), Rational::one()])
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_poly(p: &Poly) -> Result<Self> {
        if p.nvars() != 1 {
            return Err(Error::ArityMismatch {
                left: p.nvars(),
                right: 1,
            });
        }
        let len = p.degree().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Rational::zero(); len];
        for (m, c) in p.terms() {
            coeffs[m.exponents()[0] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::univariate(self.0.iter().cloned())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// `∫_0^t f(s) ds`.
    pub fn integral(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(Rational::zero());
        for (k, c) in self.0.iter().enumerate() {
            out.push(c / Rational::from_integer(BigInt::from(k + 1)));
        }
        UniPoly(out)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn value_at_zero(&self) -> Rational {
        self.0.first().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn value_at_one(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly(self.0.iter().map(|v| v * c).collect())
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&UniPoly> for UniPoly {
    fn add_assign(&mut self, rhs: &UniPoly) {
        if self.0.len() < rhs.0.len() {
            self.0.resize(rhs.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniPoly::new(out)
    }
}
