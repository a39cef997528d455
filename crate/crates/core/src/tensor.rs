//! Finitely supported elements of the tensor algebra `T(ℝ^d)` with exact
//! rational coefficients, together with the concatenation, shuffle and right
//! half-shuffle products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use crate::word::{check_dim, Word};

/// A linear combination of words over `{1, …, dim}`.
///
/// Stored sparsely in graded-lex word order; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    dim: usize,
    terms: BTreeMap<Word, Rational>,
}

impl TensorElem {
    /// # Panics
    /// If `dim` is not in `1..=255`.
    pub fn zero(dim: usize) -> Self {
        check_dim(dim).expect("invalid alphabet dimension");
        TensorElem {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The empty word `e`, unit of both products.
    pub fn unit(dim: usize) -> Self {
        let mut t = Self::zero(dim);
        t.terms.insert(Word::empty(), Rational::one());
        t
    }

    pub fn word(dim: usize, word: Word) -> Result<Self> {
        Self::from_terms(dim, [(word, Rational::one())])
    }

    pub fn letter(dim: usize, letter: u8) -> Result<Self> {
        check_letter(letter as usize, dim)?;
        Self::word(dim, Word::letter(letter))
    }

    /// Sums the given terms, rejecting letters outside the alphabet.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Rational)>,
    {
        check_dim(dim)?;
        let mut out = TensorElem {
            dim,
            terms: BTreeMap::new(),
        };
        for (w, c) in terms {
            w.check_alphabet(dim)?;
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `word`, zero when absent.
    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// The dual pairing `⟨self, w⟩`.
    pub fn pairing(&self, word: &Word) -> Result<Rational> {
        word.check_alphabet(self.dim)?;
        Ok(self.coeff(word))
    }

    /// Bilinear pairing `Σ_w a_w b_w` of two finitely supported elements.
    pub fn pair(&self, other: &TensorElem) -> Result<Rational> {
        self.check_same_dim(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rational::zero();
        for (w, c) in &small.terms {
            if let Some(d) = large.terms.get(w) {
                acc += c * d;
            }
        }
        Ok(acc)
    }

    pub fn empty_coeff(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    /// Longest word length among the terms; `0` for the zero element.
    pub fn max_level(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    /// Shortest word length among the terms; `None` for the zero element.
    pub fn min_level(&self) -> Option<usize> {
        self.terms.keys().next().map(Word::len)
    }

    pub(crate) fn add_term(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> TensorElem {
        if factor.is_zero() {
            return TensorElem::zero(self.dim);
        }
        TensorElem {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * factor))
                .collect(),
        }
    }

    /// Terms whose words have length exactly `n`.
    pub fn project_level(&self, n: usize) -> TensorElem {
        self.filter_terms(|w| w.len() == n)
    }

    /// Terms whose words have length at most `n`.
    pub fn truncate(&self, n: usize) -> TensorElem {
        self.filter_terms(|w| w.len() <= n)
    }

    fn filter_terms(&self, keep: impl Fn(&Word) -> bool) -> TensorElem {
        TensorElem {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_same_dim(&self, other: &TensorElem) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Concatenation product `a • b`.
    pub fn concat(&self, other: &TensorElem) -> Result<TensorElem> {
        self.concat_truncated(other, usize::MAX)
    }

    /// Concatenation product keeping only words of length `<= level`.
    pub fn concat_truncated(&self, other: &TensorElem, level: usize) -> Result<TensorElem> {
        self.check_same_dim(other)?;
        let mut out = TensorElem::zero(self.dim);
        // Bucket the right factor by length so that whole blocks beyond the
        // truncation level are skipped.
        let mut by_len: Vec<Vec<(&Word, &Rational)>> = Vec::new();
        for (w, c) in &other.terms {
            if w.len() >= by_len.len() {
                by_len.resize_with(w.len() + 1, Vec::new);
            }
            by_len[w.len()].push((w, c));
        }
        for (wa, ca) in &self.terms {
            if wa.len() > level {
                break;
            }
            let room = level - wa.len();
            for bucket in by_len.iter().take(room.saturating_add(1)) {
                for &(wb, cb) in bucket {
                    out.add_term(wa.concat(wb), ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Shuffle product `a ⧢ b`.
    pub fn shuffle(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_same_dim(other)?;
        let mut acc: HashMap<Word, Rational> = HashMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let prod = ca * cb;
                for (w, n) in shuffle_words(wa.letters(), wb.letters()) {
                    accumulate(&mut acc, Word::from_raw(w), times_count(&prod, n));
                }
            }
        }
        Ok(self.with_terms(acc))
    }

    /// Right half-shuffle `a ≻ b` on `T^{≥1}`: `w ≻ v·i = (w ⧢ v)·i`.
    pub fn half_shuffle(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_same_dim(other)?;
        if !self.empty_coeff().is_zero() {
            return Err(Error::EmptyWordComponent(
                "left operand of the half-shuffle",
            ));
        }
        if !other.empty_coeff().is_zero() {
            return Err(Error::EmptyWordComponent(
                "right operand of the half-shuffle",
            ));
        }
        let mut acc: HashMap<Word, Rational> = HashMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let (&last, prefix) = wb.letters().split_last().expect("nonempty word");
                let prod = ca * cb;
                for (mut w, n) in shuffle_words(wa.letters(), prefix) {
                    w.push(last);
                    accumulate(&mut acc, Word::from_raw(w), times_count(&prod, n));
                }
            }
        }
        Ok(self.with_terms(acc))
    }

    /// `T⁺_i`: appends letter `i` to every word.
    pub fn t_plus(&self, letter: u8) -> Result<TensorElem> {
        check_letter(letter as usize, self.dim)?;
        Ok(TensorElem {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.appended(letter), c.clone()))
                .collect(),
        })
    }

    /// `T⁻_i`: strips a trailing `i`, annihilating every other word (and `e`).
    pub fn t_minus(&self, letter: u8) -> Result<TensorElem> {
        check_letter(letter as usize, self.dim)?;
        let mut out = TensorElem::zero(self.dim);
        for (w, c) in &self.terms {
            if let Some((prefix, last)) = w.split_last() {
                if last == letter {
                    out.add_term(prefix, c.clone());
                }
            }
        }
        Ok(out)
    }

    fn with_terms(&self, acc: HashMap<Word, Rational>) -> TensorElem {
        TensorElem {
            dim: self.dim,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Parses expressions such as `12-21`, `2*11 + 1/2*e` or `-3·222`.
    pub fn parse_text(text: &str, dim: usize) -> Result<TensorElem> {
        check_dim(dim)?;
        let normalized: String = text
            .chars()
            .map(|c| match c {
                '−' => '-',
                '·' => '*',
                c => c,
            })
            .filter(|c| !c.is_whitespace())
            .collect();
        if normalized == "0" {
            return Ok(TensorElem::zero(dim));
        }
        let mut raw_terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for c in normalized.chars() {
            match c {
                '+' | '-' if current.is_empty() => {
                    if c == '-' {
                        negative = !negative;
                    }
                }
                '+' | '-' => {
                    raw_terms.push((negative, std::mem::take(&mut current)));
                    negative = c == '-';
                }
                c => current.push(c),
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!(
                "dangling sign or empty expression in {text:?}"
            )));
        }
        raw_terms.push((negative, current));

        let mut out = TensorElem::zero(dim);
        for (negative, body) in raw_terms {
            let (coeff, word) = match body.split_once('*') {
                Some((c, w)) => (parse_rational(c)?, Word::parse(w, dim)?),
                None => (Rational::one(), Word::parse(&body, dim)?),
            };
            out.add_term(word, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

fn check_letter(letter: usize, dim: usize) -> Result<()> {
    if letter == 0 || letter > dim {
        Err(Error::LetterOutOfRange { letter, dim })
    } else {
        Ok(())
    }
}

fn accumulate(acc: &mut HashMap<Word, Rational>, w: Word, c: Rational) {
    *acc.entry(w).or_insert_with(Rational::zero) += c;
}

fn times_count(c: &Rational, n: u128) -> Rational {
    if n == 1 {
        c.clone()
    } else {
        c * Rational::from_integer(BigInt::from(n))
    }
}

/// Shuffle of two words as a multiset of interleavings.
///
/// Dynamic programme over prefix pairs: cell `(i, j)` holds
/// `a[..i] ⧢ b[..j]`, filled with the recursion
/// `(u·x) ⧢ (v·y) = (u ⧢ v·y)·x + (u·x ⧢ v)·y`.
pub fn shuffle_words(a: &[u8], b: &[u8]) -> Vec<(Vec<u8>, u128)> {
    if a.is_empty() {
        return vec![(b.to_vec(), 1)];
    }
    if b.is_empty() {
        return vec![(a.to_vec(), 1)];
    }
    assert!(
        a.len() + b.len() < 128,
        "shuffle of words longer than 127 letters"
    );
    type Cell = HashMap<Vec<u8>, u128>;
    let single = |w: &[u8]| -> Cell { HashMap::from([(w.to_vec(), 1)]) };
    let mut row: Vec<Cell> = (0..=b.len()).map(|j| single(&b[..j])).collect();
    for i in 1..=a.len() {
        let mut next: Vec<Cell> = Vec::with_capacity(b.len() + 1);
        next.push(single(&a[..i]));
        for j in 1..=b.len() {
            let mut cell: Cell = HashMap::with_capacity(row[j].len() + next[j - 1].len());
            for (w, n) in &row[j] {
                let mut w = w.clone();
                w.push(a[i - 1]);
                *cell.entry(w).or_insert(0) += n;
            }
            for (w, n) in &next[j - 1] {
                let mut w = w.clone();
                w.push(b[j - 1]);
                *cell.entry(w).or_insert(0) += n;
            }
            next.push(cell);
        }
        row = next;
    }
    row.pop().expect("nonempty row").into_iter().collect()
}

impl Add for &TensorElem {
    type Output = TensorElem;

    /// # Panics
    /// On alphabet mismatch.
    fn add(self, rhs: &TensorElem) -> TensorElem {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for TensorElem {
    type Output = TensorElem;

    fn add(mut self, rhs: TensorElem) -> TensorElem {
        self += &rhs;
        self
    }
}

impl AddAssign<&TensorElem> for TensorElem {
    fn add_assign(&mut self, rhs: &TensorElem) {
        assert_eq!(self.dim, rhs.dim, "alphabet dimension mismatch");
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl Neg for &TensorElem {
    type Output = TensorElem;

    fn neg(self) -> TensorElem {
        TensorElem {
            dim: self.dim,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Neg for TensorElem {
    type Output = TensorElem;

    fn neg(self) -> TensorElem {
        -&self
    }
}

impl Sub for &TensorElem {
    type Output = TensorElem;

    fn sub(self, rhs: &TensorElem) -> TensorElem {
        self + &(-rhs)
    }
}

impl Sub for TensorElem {
    type Output = TensorElem;

    fn sub(self, rhs: TensorElem) -> TensorElem {
        &self - &rhs
    }
}

impl Mul<&Rational> for &TensorElem {
    type Output = TensorElem;

    fn mul(self, rhs: &Rational) -> TensorElem {
        self.scale(rhs)
    }
}

impl fmt::Display for TensorElem {
    /// Graded-lex text form, e.g. `11 - 12 - 21 + 22` or `1/2*e + 2*12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            let magnitude = c.abs();
            if magnitude.is_one() {
                write!(f, "{}", w.to_text(self.dim))?;
            } else {
                write!(f, "{}*{}", magnitude, w.to_text(self.dim))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElem(d={}: {})", self.dim, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn t(s: &str, d: usize) -> TensorElem {
        TensorElem::parse_text(s, d).unwrap()
    }

    #[test]
    fn concat_examples() {
        let w = t("21", 2);
        assert_eq!(TensorElem::unit(2).concat(&w).unwrap(), w);
        assert_eq!(t("1", 2).concat(&t("2", 2)).unwrap(), t("12", 2));
        let lhs =
            &t("1-2", 2).concat(&t("1", 2)).unwrap() - &t("1-2", 2).concat(&t("2", 2)).unwrap();
        assert_eq!(lhs, t("11+22-12-21", 2));
    }

    #[test]
    fn concat_dimension_mismatch() {
        assert_eq!(
            t("1", 2).concat(&t("1", 3)),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn concat_truncated_drops_long_words() {
        let a = t("e + 1 + 12", 2);
        let out = a.concat_truncated(&a, 2).unwrap();
        assert_eq!(out, t("e + 2*1 + 2*12 + 11", 2));
    }

    #[test]
    fn shuffle_examples() {
        let w = t("121", 2);
        assert_eq!(TensorElem::unit(2).shuffle(&w).unwrap(), w);
        assert_eq!(t("1", 1).shuffle(&t("1", 1)).unwrap(), t("2*11", 1));
        assert_eq!(t("1", 2).shuffle(&t("2", 2)).unwrap(), t("12+21", 2));
        let two = t("2", 2);
        assert_eq!(
            two.shuffle(&two).unwrap().shuffle(&two).unwrap(),
            t("6*222", 2)
        );
    }

    #[test]
    fn half_shuffle_examples() {
        assert_eq!(t("121", 2).half_shuffle(&t("2", 2)).unwrap(), t("1212", 2));
        let sym = &t("1", 2).half_shuffle(&t("2", 2)).unwrap()
            + &t("2", 2).half_shuffle(&t("1", 2)).unwrap();
        assert_eq!(sym, t("12+21", 2));
        let lhs = t("23-32", 3).half_shuffle(&t("31-13", 3)).unwrap();
        let expected = t(
            "2*2331 - 2*3321 - 2313 - 2133 - 1233 + 3213 + 3123 + 1323",
            3,
        );
        assert_eq!(lhs, expected);
        let rhs = t("31-13", 3).half_shuffle(&t("23-32", 3)).unwrap();
        let expected = t("3123+3213+2313-1323-1233-2133-3132-2*3312+2*1332+3132", 3);
        assert_eq!(rhs, expected);
    }

    #[test]
    fn half_shuffle_rejects_empty_word() {
        assert!(matches!(
            t("e+1", 2).half_shuffle(&t("2", 2)),
            Err(Error::EmptyWordComponent(_))
        ));
        assert!(matches!(
            t("1", 2).half_shuffle(&t("e", 2)),
            Err(Error::EmptyWordComponent(_))
        ));
    }

    #[test]
    fn t_plus_and_minus() {
        assert_eq!(t("1", 2).t_plus(2).unwrap(), t("12", 2));
        assert_eq!(TensorElem::unit(2).t_plus(1).unwrap(), t("1", 2));
        assert_eq!(t("12+21", 3).t_plus(3).unwrap(), t("123+213", 3));
        assert_eq!(t("12", 2).t_minus(2).unwrap(), t("1", 2));
        assert!(t("12", 2).t_minus(1).unwrap().is_zero());
        assert!(TensorElem::unit(2).t_minus(1).unwrap().is_zero());
        assert!(t("1", 2).t_plus(3).is_err());
        assert!(t("1", 2).t_minus(0).is_err());
    }

    #[test]
    fn pairing_examples() {
        let w = |s: &str| Word::parse(s, 2).unwrap();
        assert_eq!(t("12+21", 2).pairing(&w("12")).unwrap(), int(1));
        assert_eq!(t("2*11", 2).pairing(&w("12")).unwrap(), int(0));
        assert_eq!(t("6*222", 2).pairing(&w("222")).unwrap(), int(6));
        assert!(t("1", 2).pairing(&Word::from_letters([3u8])).is_err());
    }

    #[test]
    fn grading_projection() {
        let a = t("e + 1 + 12", 2);
        assert_eq!(a.project_level(1), t("1", 2));
        assert_eq!(a.project_level(0), TensorElem::unit(2));
        let h = t("11+22-12-21", 2);
        assert_eq!(h.project_level(2), h);
        assert_eq!(TensorElem::zero(2).max_level(), 0);
        assert_eq!(a.max_level(), 2);
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(t("11+22-12-21", 2).to_string(), "11 - 12 - 21 + 22");
        assert_eq!(t("-1/2*e + 3*2", 2).to_string(), "-1/2*e + 3*2");
        assert_eq!(TensorElem::zero(2).to_string(), "0");
    }

    #[test]
    fn parse_accepts_unicode_operators() {
        assert_eq!(t("2·11 − 12", 2), t("2*11-12", 2));
        assert!(TensorElem::parse_text("1+", 2).is_err());
        assert!(TensorElem::parse_text("3", 2).is_err());
    }
}
