//! Half-shuffle morphisms `Λ_B` determined by the images of letters, and
//! paths defined by signature coordinates.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polymap::PolynomialMap;
use crate::rational::Rational;
use crate::signature::{
    chen_concat, path_signature, segment_signature, PathSegment, PiecewisePolyPath,
    TruncatedSignature,
};
use crate::tensor::TensorElem;
use crate::unipoly::UniPoly;
use crate::word::{check_dim, Word};

/// Assignment `i ↦ B i` of letters of a source alphabet to elements of
/// `T≥1` over a target alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterMap {
    target_dim: usize,
    images: Vec<TensorElem>,
}

impl LetterMap {
    pub fn new(target_dim: usize, images: Vec<TensorElem>) -> Result<Self> {
        check_dim(target_dim)?;
        check_dim(images.len())?;
        for img in &images {
            if img.dim() != target_dim {
                return Err(Error::DimensionMismatch {
                    left: img.dim(),
                    right: target_dim,
                });
            }
            if !img.empty_coeff().is_zero() {
                return Err(Error::EmptyWordComponent("letter image"));
            }
        }
        Ok(LetterMap { target_dim, images })
    }

    /// `i ↦ i`.
    pub fn identity(dim: usize) -> Self {
        let images = (1..=dim)
            .map(|i| TensorElem::letter(dim, i as u8).expect("in range"))
            .collect();
        LetterMap {
            target_dim: dim,
            images,
        }
    }

    /// `i ↦ φ(p_i)`; the resulting `Λ_B` coincides with `M_p`.
    pub fn from_polynomial_map(p: &PolynomialMap) -> Result<Self> {
        if !p.vanishes_at_origin() {
            return Err(Error::NotVanishingAtOrigin);
        }
        LetterMap::new(
            p.domain_dim(),
            p.components().iter().map(|c| c.phi()).collect(),
        )
    }

    pub fn source_dim(&self) -> usize {
        self.images.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn images(&self) -> &[TensorElem] {
        &self.images
    }

    /// `B i` for a 1-based letter.
    pub fn image(&self, i: u8) -> &TensorElem {
        &self.images[i as usize - 1]
    }

    /// Highest level appearing in any letter image.
    pub fn max_image_level(&self) -> usize {
        self.images
            .iter()
            .map(TensorElem::max_level)
            .max()
            .unwrap_or(0)
    }
}

/// The half-shuffle morphism extending a [`LetterMap`]:
/// `Λ(i) = B i`, `Λ(v i) = Λ(v) ≻ B i`.
#[derive(Clone, Debug)]
pub struct ZinbielExtension {
    letters: LetterMap,
    memo: HashMap<Word, TensorElem>,
}

impl ZinbielExtension {
    pub fn new(letters: LetterMap) -> Self {
        ZinbielExtension {
            letters,
            memo: HashMap::new(),
        }
    }

    pub fn letter_map(&self) -> &LetterMap {
        &self.letters
    }

    pub fn image_of_word(&mut self, w: &Word) -> Result<TensorElem> {
        if w.is_empty() {
            return Err(Error::EmptyWordComponent("argument of Λ_B"));
        }
        w.check_alphabet(self.letters.source_dim())?;
        Ok(self.image_unchecked(w))
    }

    fn image_unchecked(&mut self, w: &Word) -> TensorElem {
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        let letters = w.letters();
        let mut start = letters.len() - 1;
        while start > 0 && !self.memo.contains_key(&w.prefix(start)) {
            start -= 1;
        }
        let mut current = if start == 0 {
            let first = self.letters.image(letters[0]).clone();
            self.memo.insert(w.prefix(1), first.clone());
            start = 1;
            first
        } else {
            self.memo[&w.prefix(start)].clone()
        };
        for len in start + 1..=letters.len() {
            let b = self.letters.image(letters[len - 1]);
            current = current.half_shuffle(b).expect("images lie in T≥1");
            self.memo.insert(w.prefix(len), current.clone());
        }
        current
    }

    pub fn apply(&mut self, a: &TensorElem) -> Result<TensorElem> {
        if a.dim() != self.letters.source_dim() {
            return Err(Error::DimensionMismatch {
                left: a.dim(),
                right: self.letters.source_dim(),
            });
        }
        if !a.empty_coeff().is_zero() {
            return Err(Error::EmptyWordComponent("argument of Λ_B"));
        }
        let mut out = TensorElem::zero(self.letters.target_dim());
        for (w, c) in a.iter() {
            out += &self.image_unchecked(w).scale(c);
        }
        Ok(out)
    }
}

/// One-shot `Λ_B(a)`.
pub fn lambda_b(b: &LetterMap, a: &TensorElem) -> Result<TensorElem> {
    ZinbielExtension::new(b.clone()).apply(a)
}

/// `⟨σ(X), Λ_B(w)⟩`, which is `⟨σ(Y), w⟩` for the path `Y^i = ⟨σ(X|[0,t]), B i⟩`.
pub fn transport_via_lambda(
    b: &LetterMap,
    sig: &TruncatedSignature,
    w: &TensorElem,
) -> Result<Rational> {
    let image = lambda_b(b, w)?;
    sig.pair(&image)
}

/// The path `t ↦ (⟨σ(X|[0,t]), B 1⟩, …)`, starting at the origin.
pub fn signature_defined_path(b: &LetterMap, x: &PiecewisePolyPath) -> Result<PiecewisePolyPath> {
    if x.dim() != b.target_dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: b.target_dim(),
        });
    }
    let level = b.max_image_level();
    let mut before = TruncatedSignature::trivial(x.dim(), level);
    let mut segments = Vec::with_capacity(x.segments().len());
    for seg in x.segments() {
        segments.push(coordinate_segment(b, &before, seg, level)?);
        before = chen_concat(&before, &segment_signature(seg, level))?;
    }
    PiecewisePolyPath::new(segments)
}

/// On one piece, `⟨S · σ(seg|[0,τ]), z⟩ = Σ_{z = uv} ⟨S, u⟩ F_v(τ)`.
fn coordinate_segment(
    b: &LetterMap,
    before: &TruncatedSignature,
    seg: &PathSegment,
    level: usize,
) -> Result<PathSegment> {
    let running = seg.running_signature(level);
    let mut comps = Vec::with_capacity(b.source_dim());
    for img in b.images() {
        let mut y = UniPoly::zero();
        for (z, c) in img.iter() {
            for cut in 0..=z.len() {
                let s = before.coeff(&z.prefix(cut));
                if s.is_zero() {
                    continue;
                }
                if let Some(f) = running.get(&z.suffix_from(cut)) {
                    y += &f.scale(&(&s * c));
                }
            }
        }
        comps.push(y);
    }
    PathSegment::from_unipolys(comps)
}

/// Both sides of the transport identity for `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    /// `⟨σ(X), Λ_B(w)⟩`.
    pub via_lambda: Rational,
    /// `⟨σ(Y), w⟩` with `Y` built explicitly.
    pub direct: Rational,
}

impl Transport {
    pub fn agrees(&self) -> bool {
        self.via_lambda == self.direct
    }
}

/// Evaluates both sides; `level` bounds the word lengths of `w`.
pub fn signature_defined_path_transport(
    b: &LetterMap,
    x: &PiecewisePolyPath,
    w: &TensorElem,
    level: usize,
) -> Result<Transport> {
    if w.max_level() > level {
        return Err(Error::TruncationShortfall {
            have: level,
            need: w.max_level(),
        });
    }
    let image = lambda_b(b, w)?;
    let sig_x = path_signature(x, image.max_level());
    let via_lambda = sig_x.pair(&image)?;
    let y = signature_defined_path(b, x)?;
    let direct = path_signature(&y, level).pair(w)?;
    Ok(Transport { via_lambda, direct })
}
