//! Polynomial maps `p: ℝ^d → ℝ^m` and the shuffle-algebra homomorphism
//! `M_p: T(ℝ^m) → T(ℝ^d)` they induce.
//!
//! `M_p` is defined on words by
//!
//! ```text
//! M_p(e)   = e
//! M_p(w·i) = Σ_j (M_p(w) ⧢ k_p^{ij}) · j,      k_p^{ij} = φ(∂_j p_i)
//! ```
//!
//! and extended linearly. It only makes sense for maps with `p(0) = 0`;
//! use [`PolynomialMap::shift`] to move the base point first.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::tensor::TensorElem;
use crate::word::{words_of_length, Word};

/// `p = (p_1, …, p_m)` with every `p_i` a polynomial in `d` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    domain_dim: usize,
    components: Vec<Poly>,
}

impl PolynomialMap {
    pub fn new(domain_dim: usize, components: Vec<Poly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse(
                "polynomial map needs at least one component".into(),
            ));
        }
        crate::word::check_dim(domain_dim)?;
        crate::word::check_dim(components.len())?;
        for c in &components {
            if c.nvars() != domain_dim {
                return Err(Error::ArityMismatch {
                    left: c.nvars(),
                    right: domain_dim,
                });
            }
        }
        Ok(PolynomialMap {
            domain_dim,
            components,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let comps = (1..=dim)
            .map(|j| Poly::var(dim, j).expect("in range"))
            .collect();
        PolynomialMap::new(dim, comps).expect("valid identity")
    }

    /// The linear map `x ↦ A x` for an `m × d` matrix `A`.
    pub fn linear(matrix: &[Vec<Rational>]) -> Result<Self> {
        let d = matrix.first().map_or(0, Vec::len);
        let comps = matrix
            .iter()
            .map(|row| {
                if row.len() != d {
                    return Err(Error::ArityMismatch {
                        left: row.len(),
                        right: d,
                    });
                }
                let mut p = Poly::zero(d.max(1));
                for (j, a) in row.iter().enumerate() {
                    p = &p + &Poly::var(d, j + 1)?.scale(a);
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        PolynomialMap::new(d, comps)
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.components.iter().all(|p| p.constant_term().is_zero())
    }

    /// `max_i deg(p_i)`; `None` when every component is zero.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(Poly::degree).max()
    }

    /// Common degree when all components are homogeneous of one degree.
    ///
    /// Zero components are compatible with any degree; the all-zero map has
    /// no degree and is reported as non-homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degree = None;
        for p in &self.components {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return None;
            }
            let d = p.degree();
            match degree {
                None => degree = d,
                Some(_) if degree != d => return None,
                Some(_) => {}
            }
        }
        degree
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|p| p.eval(point)).collect()
    }

    /// `J_p`, an `m × d` array with entries `∂_j p_i`.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        self.components
            .iter()
            .map(|p| {
                (1..=self.domain_dim)
                    .map(|j| p.partial(j).expect("index in range"))
                    .collect()
            })
            .collect()
    }

    /// `k_p^{ij} = φ(∂_j p_i)`.
    pub fn k_matrix(&self) -> KMatrix {
        KMatrix {
            entries: self
                .jacobian()
                .iter()
                .map(|row| row.iter().map(Poly::phi).collect())
                .collect(),
        }
    }

    /// `p̃(y) = p(y + x0) − p(x0)`, which vanishes at the origin.
    pub fn shift(&self, x0: &[Rational]) -> Result<PolynomialMap> {
        if x0.len() != self.domain_dim {
            return Err(Error::ArityMismatch {
                left: x0.len(),
                right: self.domain_dim,
            });
        }
        let d = self.domain_dim;
        let translated: Vec<Poly> = x0
            .iter()
            .enumerate()
            .map(|(j, a)| &Poly::var(d, j + 1).expect("in range") + &Poly::constant(d, a.clone()))
            .collect();
        let comps = self
            .components
            .iter()
            .map(|p| {
                let moved = p.compose(&translated)?;
                let c = moved.constant_term();
                Ok(&moved - &Poly::constant(d, c))
            })
            .collect::<Result<Vec<_>>>()?;
        PolynomialMap::new(d, comps)
    }

    /// The composite `self ∘ inner`.
    pub fn after(&self, inner: &PolynomialMap) -> Result<PolynomialMap> {
        compose_maps(self, inner)
    }
}

/// `q ∘ p` for `p: ℝ^d → ℝ^m`, `q: ℝ^m → ℝ^s`.
pub fn compose_maps(q: &PolynomialMap, p: &PolynomialMap) -> Result<PolynomialMap> {
    if q.domain_dim != p.codomain_dim() {
        return Err(Error::DimensionMismatch {
            left: q.domain_dim,
            right: p.codomain_dim(),
        });
    }
    let comps = q
        .components
        .iter()
        .map(|qi| qi.compose(&p.components))
        .collect::<Result<Vec<_>>>()?;
    PolynomialMap::new(p.domain_dim, comps)
}

impl fmt::Debug for PolynomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PolynomialMap(R^{} -> R^{}: ",
            self.domain_dim,
            self.codomain_dim()
        )?;
        f.debug_list()
            .entries(self.components.iter().map(|p| p.to_string()))
            .finish()?;
        f.write_str(")")
    }
}

impl fmt::Display for PolynomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The `m × d` array of tensors `φ(∂_j p_i)` over alphabet `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrix {
    entries: Vec<Vec<TensorElem>>,
}

impl KMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Entry `(i, j)`, both 1-based.
    pub fn get(&self, i: usize, j: usize) -> &TensorElem {
        &self.entries[i - 1][j - 1]
    }
}

/// The homomorphism `M_p`, memoising images of every word evaluated so far.
///
/// Images of `w·i` are built from the cached image of the prefix `w`.
#[derive(Clone, Debug)]
pub struct ShuffleMorphism {
    source_dim: usize,
    target_dim: usize,
    k: KMatrix,
    memo: HashMap<Word, TensorElem>,
}

impl ShuffleMorphism {
    pub fn new(p: &PolynomialMap) -> Result<Self> {
        if !p.vanishes_at_origin() {
            return Err(Error::NotVanishingAtOrigin);
        }
        Ok(ShuffleMorphism {
            source_dim: p.codomain_dim(),
            target_dim: p.domain_dim(),
            k: p.k_matrix(),
            memo: HashMap::new(),
        })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn k_matrix(&self) -> &KMatrix {
        &self.k
    }

    /// `M_p(w)` for a single word over the source alphabet.
    pub fn image_of_word(&mut self, w: &Word) -> Result<TensorElem> {
        w.check_alphabet(self.source_dim)?;
        Ok(self.image_unchecked(w))
    }

    pub(crate) fn image_unchecked(&mut self, w: &Word) -> TensorElem {
        if w.is_empty() {
            return TensorElem::unit(self.target_dim);
        }
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        // Walk down to the longest cached prefix, then build upwards.
        let letters = w.letters();
        let mut start = letters.len() - 1;
        while start > 0 && !self.memo.contains_key(&w.prefix(start)) {
            start -= 1;
        }
        let mut current = if start == 0 {
            TensorElem::unit(self.target_dim)
        } else {
            self.memo[&w.prefix(start)].clone()
        };
        for len in start + 1..=letters.len() {
            current = self.extend(&current, letters[len - 1]);
            self.memo.insert(w.prefix(len), current.clone());
        }
        current
    }

    /// `Σ_j (prev ⧢ k^{ij}) · j`.
    fn extend(&self, prev: &TensorElem, i: u8) -> TensorElem {
        let mut out = TensorElem::zero(self.target_dim);
        for j in 1..=self.target_dim {
            let k = self.k.get(i as usize, j);
            if k.is_zero() {
                continue;
            }
            let shuffled = prev.shuffle(k).expect("same alphabet");
            out += &shuffled.t_plus(j as u8).expect("letter in range");
        }
        out
    }

    /// Linear extension of [`Self::image_of_word`].
    pub fn apply(&mut self, a: &TensorElem) -> Result<TensorElem> {
        if a.dim() != self.source_dim {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: self.source_dim,
            });
        }
        let mut out = TensorElem::zero(self.target_dim);
        for (w, c) in a.iter() {
            let img = self.image_unchecked(w);
            out += &img.scale(c);
        }
        Ok(out)
    }
}

/// One-shot `M_p(a)`.
pub fn m_p(p: &PolynomialMap, a: &TensorElem) -> Result<TensorElem> {
    ShuffleMorphism::new(p)?.apply(a)
}

/// Coefficient matrix of `M_p` restricted to words of one length.
///
/// Row `r` holds the coefficients of `M_p(row_words[r])` on `col_words`;
/// both word lists are in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelMatrix {
    pub source_dim: usize,
    pub target_dim: usize,
    pub row_words: Vec<Word>,
    pub col_words: Vec<Word>,
    pub rows: Vec<Vec<Rational>>,
}

impl LevelMatrix {
    /// CSV with a header row of column words and the row word first on each line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("word");
        for w in &self.col_words {
            out.push(',');
            out.push_str(&quote_csv(&w.to_text(self.target_dim)));
        }
        out.push('\n');
        for (w, row) in self.row_words.iter().zip(&self.rows) {
            out.push_str(&quote_csv(&w.to_text(self.source_dim)));
            for c in row {
                out.push(',');
                out.push_str(&c.to_string());
            }
            out.push('\n');
        }
        out
    }
}

fn quote_csv(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

/// The `m^k × d^{nk}` matrix of `M_p` on level `k` for homogeneous `p` of degree `n`.
pub fn level_matrix(p: &PolynomialMap, k: usize) -> Result<LevelMatrix> {
    let mut hom = ShuffleMorphism::new(p)?;
    let n = p.homogeneous_degree().ok_or(Error::NotHomogeneous)? as usize;
    Ok(matrix_for_length(&mut hom, k, n * k))
}

/// For arbitrary vanishing `p`: one block per target word length `0..=deg(p)·k`,
/// omitting blocks that are identically zero.
pub fn level_blocks(p: &PolynomialMap, k: usize) -> Result<Vec<LevelMatrix>> {
    let mut hom = ShuffleMorphism::new(p)?;
    let max_len = p.degree().unwrap_or(0) as usize * k;
    Ok((0..=max_len)
        .map(|len| matrix_for_length(&mut hom, k, len))
        .filter(|m| m.rows.iter().flatten().any(|c| !c.is_zero()))
        .collect())
}

fn matrix_for_length(hom: &mut ShuffleMorphism, k: usize, target_len: usize) -> LevelMatrix {
    let row_words: Vec<Word> = words_of_length(hom.source_dim, k).collect();
    let col_words: Vec<Word> = words_of_length(hom.target_dim, target_len).collect();
    let rows = row_words
        .iter()
        .map(|w| {
            let img = hom.image_unchecked(w);
            col_words.iter().map(|c| img.coeff(c)).collect()
        })
        .collect();
    LevelMatrix {
        source_dim: hom.source_dim,
        target_dim: hom.target_dim,
        row_words,
        col_words,
        rows,
    }
}

impl PolynomialMap {
    /// True when `p` is the identity on `ℝ^d`.
    pub fn is_identity(&self) -> bool {
        self.domain_dim == self.codomain_dim()
            && self
                .components
                .iter()
                .enumerate()
                .all(|(i, p)| p == &Poly::var(self.domain_dim, i + 1).expect("in range"))
    }

    /// `∂_j p_i` evaluated at a point.
    pub fn jacobian_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        self.jacobian()
            .iter()
            .map(|row| row.iter().map(|e| e.eval(point)).collect())
            .collect()
    }
}
