//! Exact commutative polynomials in `x_1, …, x_n` and the embedding `φ`
//! into the shuffle algebra.
//!
//! Variables are 1-based so that `x_j` corresponds to the letter `j`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::TensorElem;

/// Exponent vector `x_1^{e_1} ⋯ x_n^{e_n}`.
///
/// Ordered by total degree, then so that `x_1` sorts before `x_2`, matching
/// the graded-lex order of the words `φ` produces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({:?})", self.0)
    }
}

/// Sparse polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    /// # Panics
    /// If `nvars == 0`.
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "polynomials need at least one variable");
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_j`, `1 <= j <= nvars`.
    pub fn var(nvars: usize, j: usize) -> Result<Self> {
        check_var(j, nvars)?;
        let mut e = vec![0; nvars];
        e[j - 1] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), Rational::one());
        Ok(p)
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        if nvars == 0 {
            return Err(Error::Parse("polynomial needs nvars >= 1".into()));
        }
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch {
                    left: e.len(),
                    right: nvars,
                });
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate<I: IntoIterator<Item = Rational>>(coeffs: I) -> Self {
        let mut p = Self::zero(1);
        for (k, c) in coeffs.into_iter().enumerate() {
            p.add_term(Monomial(vec![k as u32]), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True if every monomial has the same total degree. The zero
    /// polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    fn check_same_nvars(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_nvars(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Formal partial derivative `∂/∂x_j`.
    pub fn partial(&self, j: usize) -> Result<Poly> {
        check_var(j, self.nvars)?;
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[j - 1];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[j - 1] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Substitutes `x_l ↦ subs[l-1]`; all substitutes share one variable count.
    pub fn compose(&self, subs: &[Poly]) -> Result<Poly> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                left: subs.len(),
                right: self.nvars,
            });
        }
        let target = subs[0].nvars;
        if let Some(bad) = subs.iter().find(|s| s.nvars != target) {
            return Err(Error::ArityMismatch {
                left: bad.nvars,
                right: target,
            });
        }
        // Powers are cached per variable; monomials reuse them.
        let mut powers: Vec<Vec<Poly>> = subs
            .iter()
            .map(|s| vec![Poly::constant(target, Rational::one()), s.clone()])
            .collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (l, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[l].len() <= e as usize {
                    let next = &powers[l][powers[l].len() - 1] * &subs[l];
                    powers[l].push(next);
                }
                term = &term * &powers[l][e as usize];
            }
            for (mm, cc) in term.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                left: point.len(),
                right: self.nvars,
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// `φ`: sends `x_{i_1}⋯x_{i_l}` to `i_1 ⧢ ⋯ ⧢ i_l` and constants `c` to `c·e`.
    pub fn phi(&self) -> TensorElem {
        let dim = self.nvars;
        let mut out = TensorElem::zero(dim);
        for (m, c) in &self.terms {
            let mut image = TensorElem::unit(dim);
            for (j, &e) in m.0.iter().enumerate() {
                let letter =
                    TensorElem::letter(dim, (j + 1) as u8).expect("variable index is a letter");
                for _ in 0..e {
                    image = image.shuffle(&letter).expect("same alphabet");
                }
            }
            out += &image.scale(c);
        }
        out
    }
}

fn check_var(j: usize, nvars: usize) -> Result<()> {
    if j == 0 || j > nvars {
        Err(Error::VariableOutOfRange { index: j, nvars })
    } else {
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;

    /// # Panics
    /// On variable-count mismatch; see [`Poly::checked_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Poly {
    /// Renders e.g. `x1^2 - 1/2*x1*x2 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        for (k, (m, c)) in items.into_iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(j, &e)| {
                        if e == 1 {
                            format!("x{}", j + 1)
                        } else {
                            format!("x{}^{}", j + 1, e)
                        }
                    })
                    .collect();
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{}*{}", mag, vars.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly(n={}: {})", self.nvars, self)
    }
}
