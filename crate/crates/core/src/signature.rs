//! Truncated signatures of piecewise polynomial paths, and their image
//! under polynomial maps.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::dense;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymap::{PolynomialMap, ShuffleMorphism};
use crate::rational::Rational;
use crate::tensor::TensorElem;
use crate::unipoly::UniPoly;
use crate::word::{check_dim, words_up_to, Word};

/// One polynomial piece `t ↦ (X^1(t), …, X^d(t))` on `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSegment {
    components: Vec<UniPoly>,
}

impl PathSegment {
    /// Components must be univariate polynomials in `t`.
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        check_dim(components.len())?;
        let components = components
            .iter()
            .map(UniPoly::from_poly)
            .collect::<Result<Vec<_>>>()?;
        Ok(PathSegment { components })
    }

    pub fn from_unipolys(components: Vec<UniPoly>) -> Result<Self> {
        check_dim(components.len())?;
        Ok(PathSegment { components })
    }

    /// The straight segment `t ↦ t·v`.
    pub fn linear(increment: &[Rational]) -> Result<Self> {
        PathSegment::from_unipolys(
            increment
                .iter()
                .map(|v| UniPoly::new(vec![Rational::zero(), v.clone()]))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[UniPoly] {
        &self.components
    }

    pub fn component_polys(&self) -> Vec<Poly> {
        self.components.iter().map(UniPoly::to_poly).collect()
    }

    pub fn eval(&self, t: &Rational) -> Vec<Rational> {
        self.components.iter().map(|c| c.eval(t)).collect()
    }

    pub fn start(&self) -> Vec<Rational> {
        self.components.iter().map(UniPoly::value_at_zero).collect()
    }

    pub fn end(&self) -> Vec<Rational> {
        self.components.iter().map(UniPoly::value_at_one).collect()
    }

    pub fn translated(&self, offset: &[Rational]) -> PathSegment {
        PathSegment {
            components: self
                .components
                .iter()
                .zip(offset)
                .map(|(c, a)| c + &UniPoly::constant(a.clone()))
                .collect(),
        }
    }

    /// `t ↦ X(θ(t))`; `θ` should map `[0, 1]` onto `[0, 1]`.
    pub fn reparametrised(&self, theta: &UniPoly) -> PathSegment {
        PathSegment {
            components: self.components.iter().map(|c| c.compose(theta)).collect(),
        }
    }

    /// `t ↦ X(a + (b − a)t)`.
    pub fn restricted(&self, a: &Rational, b: &Rational) -> PathSegment {
        self.reparametrised(&UniPoly::new(vec![a.clone(), b - a]))
    }

    pub fn reversed(&self) -> PathSegment {
        self.reparametrised(&UniPoly::new(vec![Rational::one(), -Rational::one()]))
    }

    /// `F_w(t) = ⟨σ(X|[0,t]), w⟩` for every word up to `level` whose
    /// running integral is not identically zero.
    pub fn running_signature(&self, level: usize) -> BTreeMap<Word, UniPoly> {
        let mut out = BTreeMap::new();
        for_each_running(self, level, |w, f| {
            out.insert(w.clone(), f.clone());
        });
        out
    }
}

fn for_each_running(seg: &PathSegment, level: usize, mut visit: impl FnMut(&Word, &UniPoly)) {
    let dx: Vec<UniPoly> = seg.components.iter().map(UniPoly::derivative).collect();
    let mut current = vec![(Word::empty(), UniPoly::one())];
    visit(&current[0].0, &current[0].1);
    for _ in 0..level {
        let mut next = Vec::with_capacity(current.len() * dx.len());
        for (w, f) in &current {
            for (i, d) in dx.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let g = (f * d).integral();
                if g.is_zero() {
                    continue;
                }
                let wi = w.appended(i as u8 + 1);
                visit(&wi, &g);
                next.push((wi, g));
            }
        }
        if next.is_empty() {
            break;
        }
        current = next;
    }
}

/// A concatenation of polynomial segments. Each segment is translated so
/// that it starts where the previous one ended; a segment's own start only
/// matters for the first piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolyPath {
    dim: usize,
    segments: Vec<PathSegment>,
}

impl PiecewisePolyPath {
    pub fn new(segments: Vec<PathSegment>) -> Result<Self> {
        let dim = segments.first().ok_or(Error::EmptyPath)?.dim();
        if let Some(bad) = segments.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: bad.dim(),
                right: dim,
            });
        }
        Ok(PiecewisePolyPath { dim, segments })
    }

    pub fn single(segment: PathSegment) -> Self {
        PiecewisePolyPath {
            dim: segment.dim(),
            segments: vec![segment],
        }
    }

    /// Straight lines through the given points.
    pub fn polyline(points: &[Vec<Rational>]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::EmptyPath);
        }
        let mut segments = Vec::with_capacity(points.len() - 1);
        for pair in points.windows(2) {
            if pair[0].len() != pair[1].len() {
                return Err(Error::DimensionMismatch {
                    left: pair[1].len(),
                    right: pair[0].len(),
                });
            }
            let inc: Vec<Rational> = pair[1].iter().zip(&pair[0]).map(|(b, a)| b - a).collect();
            segments.push(PathSegment::linear(&inc)?.translated(&pair[0]));
        }
        PiecewisePolyPath::new(segments)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn start(&self) -> Vec<Rational> {
        self.segments[0].start()
    }

    pub fn end(&self) -> Vec<Rational> {
        self.realized_segments().last().expect("nonempty").end()
    }

    pub fn increment(&self) -> Vec<Rational> {
        self.end()
            .iter()
            .zip(self.start())
            .map(|(b, a)| b - a)
            .collect()
    }

    /// Segments translated into one continuous path.
    pub fn realized_segments(&self) -> Vec<PathSegment> {
        let mut out = Vec::with_capacity(self.segments.len());
        let mut cursor = self.segments[0].start();
        for seg in &self.segments {
            let s = seg.start();
            let offset: Vec<Rational> = cursor.iter().zip(&s).map(|(c, a)| c - a).collect();
            let moved = seg.translated(&offset);
            cursor = moved.end();
            out.push(moved);
        }
        out
    }

    /// `X` followed by `Y`.
    pub fn concat(&self, other: &PiecewisePolyPath) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: other.dim,
                right: self.dim,
            });
        }
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        Ok(PiecewisePolyPath {
            dim: self.dim,
            segments,
        })
    }

    pub fn reversed(&self) -> PiecewisePolyPath {
        PiecewisePolyPath {
            dim: self.dim,
            segments: self
                .realized_segments()
                .iter()
                .rev()
                .map(PathSegment::reversed)
                .collect(),
        }
    }

    /// `p ∘ X`, segment by segment.
    pub fn mapped(&self, p: &PolynomialMap) -> Result<PiecewisePolyPath> {
        if p.domain_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: p.domain_dim(),
                right: self.dim,
            });
        }
        let segments = self
            .realized_segments()
            .iter()
            .map(|seg| {
                let subs = seg.component_polys();
                let comps = p
                    .components()
                    .iter()
                    .map(|c| c.compose(&subs))
                    .collect::<Result<Vec<_>>>()?;
                PathSegment::new(comps)
            })
            .collect::<Result<Vec<_>>>()?;
        PiecewisePolyPath::new(segments)
    }
}

/// A group-like element truncated at `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSignature {
    level: usize,
    data: TensorElem,
}

impl TruncatedSignature {
    /// Wraps `data`, dropping anything above `level`.
    pub fn new(level: usize, data: TensorElem) -> Self {
        TruncatedSignature {
            level,
            data: data.truncate(level),
        }
    }

    /// The signature of a constant path.
    pub fn trivial(dim: usize, level: usize) -> Self {
        TruncatedSignature {
            level,
            data: TensorElem::unit(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn data(&self) -> &TensorElem {
        &self.data
    }

    pub fn into_data(self) -> TensorElem {
        self.data
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.data.coeff(w)
    }

    /// `⟨σ, a⟩`, refusing words the truncation cannot see.
    pub fn pair(&self, a: &TensorElem) -> Result<Rational> {
        if a.max_level() > self.level {
            return Err(Error::TruncationShortfall {
                have: self.level,
                need: a.max_level(),
            });
        }
        self.data.pair(a)
    }

    /// Re-truncates at a lower level.
    pub fn truncated(&self, level: usize) -> TruncatedSignature {
        TruncatedSignature::new(level.min(self.level), self.data.clone())
    }

    /// Whether every nonempty word has coefficient zero.
    pub fn is_trivial(&self) -> bool {
        self.data == TensorElem::unit(self.dim())
    }
}

pub fn segment_signature(seg: &PathSegment, level: usize) -> TruncatedSignature {
    let levels = dense::segment_levels(&seg.components, level);
    TruncatedSignature {
        level,
        data: dense::from_levels(seg.dim(), &levels),
    }
}

pub fn path_signature(path: &PiecewisePolyPath, level: usize) -> TruncatedSignature {
    let levels = path
        .segments
        .iter()
        .map(|s| dense::segment_levels(&s.components, level))
        .reduce(|acc, s| dense::concat(path.dim, &acc, &s))
        .expect("nonempty path");
    TruncatedSignature {
        level,
        data: dense::from_levels(path.dim, &levels),
    }
}

/// `σ(X ⊔ Y) = σ(X) · σ(Y)`, truncated at the smaller level.
pub fn chen_concat(a: &TruncatedSignature, b: &TruncatedSignature) -> Result<TruncatedSignature> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let level = a.level.min(b.level);
    let levels = dense::concat(
        a.dim(),
        &dense::to_levels(&a.data, level),
        &dense::to_levels(&b.data, level),
    );
    Ok(TruncatedSignature {
        level,
        data: dense::from_levels(a.dim(), &levels),
    })
}

/// Tensor exponential of a tensor without `e` component.
pub fn exp_concat(a: &TensorElem, level: usize) -> Result<TruncatedSignature> {
    if !a.empty_coeff().is_zero() {
        return Err(Error::EmptyWordComponent(
            "argument of the tensor exponential",
        ));
    }
    let mut sum = TensorElem::unit(a.dim());
    let mut term = TensorElem::unit(a.dim());
    for n in 1..=level {
        term = term
            .concat_truncated(a, level)?
            .scale(&Rational::new(1.into(), (n as i64).into()));
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    Ok(TruncatedSignature { level, data: sum })
}

/// Input level needed to push a signature through `p` up to `level`:
/// `deg(p̃) · level`.
pub fn required_level(shifted: &PolynomialMap, level: usize) -> usize {
    shifted.degree().unwrap_or(0) as usize * level
}

/// `σ(p(X))` up to `level` from `σ(X)`, where `x0` is the start of `X`.
pub fn transform(
    p: &PolynomialMap,
    sig: &TruncatedSignature,
    level: usize,
    x0: &[Rational],
) -> Result<TruncatedSignature> {
    if sig.dim() != p.domain_dim() {
        return Err(Error::DimensionMismatch {
            left: sig.dim(),
            right: p.domain_dim(),
        });
    }
    let shifted = p.shift(x0)?;
    transform_shifted(&shifted, sig, level)
}

/// [`transform`] for a map that already vanishes at the origin.
pub fn transform_shifted(
    shifted: &PolynomialMap,
    sig: &TruncatedSignature,
    level: usize,
) -> Result<TruncatedSignature> {
    if sig.dim() != shifted.domain_dim() {
        return Err(Error::DimensionMismatch {
            left: sig.dim(),
            right: shifted.domain_dim(),
        });
    }
    let need = required_level(shifted, level);
    if sig.level < need {
        return Err(Error::TruncationShortfall {
            have: sig.level,
            need,
        });
    }
    let mut hom = ShuffleMorphism::new(shifted)?;
    let m = shifted.codomain_dim();
    let mut data = TensorElem::zero(m);
    for w in words_up_to(m, level) {
        let img = hom.image_unchecked(&w);
        let c = sig.data.pair(&img)?;
        if !c.is_zero() {
            data.add_term(w, c);
        }
    }
    Ok(TruncatedSignature { level, data })
}

/// `σ(p(X))` up to `level`, computing `σ(X)` at the level the transform needs.
pub fn transform_path(
    p: &PolynomialMap,
    path: &PiecewisePolyPath,
    level: usize,
) -> Result<TruncatedSignature> {
    let shifted = p.shift(&path.start())?;
    let sig = path_signature(path, required_level(&shifted, level));
    transform_shifted(&shifted, &sig, level)
}

/// Independent route: integrate the image path `p ∘ X` directly.
pub fn image_path_signature(
    p: &PolynomialMap,
    path: &PiecewisePolyPath,
    level: usize,
) -> Result<TruncatedSignature> {
    Ok(path_signature(&path.mapped(p)?, level))
}

/// Signature of `t ↦ X(L t)` as the image of the one-dimensional
/// straight path of length `L` under `X̃ = X − X(0)`.
///
/// The result is usually stated for `L ≥ 1`; the argument only needs the
/// straight path on `[0, L]` to have signature `exp(L·1)`, so any `L > 0`
/// is accepted.
pub fn polynomial_path_signature_via_exp(
    x: &PolynomialMap,
    length: &Rational,
    level: usize,
) -> Result<TruncatedSignature> {
    if x.domain_dim() != 1 {
        return Err(Error::ArityMismatch {
            left: x.domain_dim(),
            right: 1,
        });
    }
    if *length <= Rational::zero() {
        return Err(Error::NonPositiveLength);
    }
    let shifted = x.shift(&[Rational::zero()])?;
    let line = TensorElem::letter(1, 1)?.scale(length);
    let sig = exp_concat(&line, required_level(&shifted, level))?;
    transform_shifted(&shifted, &sig, level)
}

/// The segment `t ↦ X(L t)` for a polynomial curve `X: ℝ → ℝ^d`.
pub fn polynomial_curve_segment(x: &PolynomialMap, length: &Rational) -> Result<PathSegment> {
    if x.domain_dim() != 1 {
        return Err(Error::ArityMismatch {
            left: x.domain_dim(),
            right: 1,
        });
    }
    let theta = UniPoly::new(vec![Rational::zero(), length.clone()]);
    PathSegment::from_unipolys(
        x.components()
            .iter()
            .map(|c| Ok(UniPoly::from_poly(c)?.compose(&theta)))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Whether the whole path lies in the zero set of `p`.
pub fn lies_in_variety(p: &PolynomialMap, path: &PiecewisePolyPath) -> Result<bool> {
    let image = path.mapped(p)?;
    Ok(image
        .segments()
        .iter()
        .all(|seg| seg.components().iter().all(UniPoly::is_zero)))
}

/// Whether the signature is trivial up to its truncation level. This is a
/// necessary condition for tree-likeness, not a decision procedure.
pub fn check_tree_like(sig: &TruncatedSignature) -> bool {
    sig.is_trivial()
}

/// Compares `M_p*(σ(X)·σ(Y))` with `M_p*σ(X) · M_q*σ(Y)` where
/// `q = p(· + X_L) − p(X_L)`. Both paths must start at the origin.
pub fn check_dual_concat(
    p: &PolynomialMap,
    x: &PiecewisePolyPath,
    y: &PiecewisePolyPath,
    level: usize,
) -> Result<bool> {
    if x.dim() != p.domain_dim() || y.dim() != p.domain_dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim().max(y.dim()),
            right: p.domain_dim(),
        });
    }
    if !x.start().iter().chain(y.start().iter()).all(Zero::is_zero) {
        return Err(Error::PathNotAtOrigin);
    }
    if !p.vanishes_at_origin() {
        return Err(Error::NotVanishingAtOrigin);
    }
    let need = required_level(p, level);
    let sx = path_signature(x, need);
    let sy = path_signature(y, need);
    let lhs = transform_shifted(p, &chen_concat(&sx, &sy)?, level)?;
    let q = p.shift(&x.end())?;
    let rhs = chen_concat(
        &transform_shifted(p, &sx, level)?,
        &transform_shifted(&q, &sy, level)?,
    )?;
    Ok(lhs == rhs)
}
