//! JSON documents. Rationals travel as `"p/q"` strings and tensor terms are
//! listed in graded-lex order, so serialisation is canonical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymap::{LevelMatrix, PolynomialMap};
use crate::rational::{format_rational, parse_rational};
use crate::signature::{PathSegment, PiecewisePolyPath, TruncatedSignature};
use crate::tensor::TensorElem;
use crate::word::Word;
use crate::zinbiel::LetterMap;

#[derive(Serialize, Deserialize)]
pub struct TensorDoc {
    pub dim: usize,
    pub terms: Vec<WordTerm>,
}

#[derive(Serialize, Deserialize)]
pub struct WordTerm {
    pub word: String,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct PolyDoc {
    pub nvars: usize,
    pub terms: Vec<MonomialTerm>,
}

#[derive(Serialize, Deserialize)]
pub struct MonomialTerm {
    pub exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
pub struct MapDoc {
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub components: Vec<PolyDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct PathDoc {
    pub dimension: usize,
    pub segments: Vec<SegmentDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct SegmentDoc {
    pub components: Vec<PolyDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct SignatureDoc {
    pub dimension: usize,
    pub level: usize,
    pub terms: Vec<WordTerm>,
}

#[derive(Serialize, Deserialize)]
pub struct LetterMapDoc {
    pub source_dim: usize,
    pub target_dim: usize,
    pub images: Vec<TensorDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: Vec<Vec<String>>,
    pub row_words: Vec<String>,
    pub col_words: Vec<String>,
}

fn terms_doc(t: &TensorElem) -> Vec<WordTerm> {
    t.iter()
        .map(|(w, c)| WordTerm {
            word: w.to_text(t.dim()),
            coeff: format_rational(c),
        })
        .collect()
}

fn terms_from_doc(dim: usize, terms: &[WordTerm]) -> Result<TensorElem> {
    let parsed = terms
        .iter()
        .map(|t| Ok((Word::parse(&t.word, dim)?, parse_rational(&t.coeff)?)))
        .collect::<Result<Vec<_>>>()?;
    TensorElem::from_terms(dim, parsed)
}

impl From<&TensorElem> for TensorDoc {
    fn from(t: &TensorElem) -> Self {
        TensorDoc {
            dim: t.dim(),
            terms: terms_doc(t),
        }
    }
}

impl TryFrom<&TensorDoc> for TensorElem {
    type Error = Error;

    fn try_from(doc: &TensorDoc) -> Result<Self> {
        terms_from_doc(doc.dim, &doc.terms)
    }
}

impl From<&Poly> for PolyDoc {
    fn from(p: &Poly) -> Self {
        PolyDoc {
            nvars: p.nvars(),
            terms: p
                .terms()
                .map(|(m, c)| MonomialTerm {
                    exps: m.exponents().to_vec(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyDoc> for Poly {
    type Error = Error;

    fn try_from(doc: &PolyDoc) -> Result<Self> {
        let terms = doc
            .terms
            .iter()
            .map(|t| Ok((t.exps.clone(), parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(doc.nvars, terms)
    }
}

impl From<&PolynomialMap> for MapDoc {
    fn from(p: &PolynomialMap) -> Self {
        MapDoc {
            domain_dim: p.domain_dim(),
            codomain_dim: p.codomain_dim(),
            components: p.components().iter().map(PolyDoc::from).collect(),
        }
    }
}

impl TryFrom<&MapDoc> for PolynomialMap {
    type Error = Error;

    fn try_from(doc: &MapDoc) -> Result<Self> {
        if doc.components.len() != doc.codomain_dim {
            return Err(Error::DimensionMismatch {
                left: doc.components.len(),
                right: doc.codomain_dim,
            });
        }
        let comps = doc
            .components
            .iter()
            .map(Poly::try_from)
            .collect::<Result<Vec<_>>>()?;
        PolynomialMap::new(doc.domain_dim, comps)
    }
}

impl From<&PiecewisePolyPath> for PathDoc {
    fn from(path: &PiecewisePolyPath) -> Self {
        PathDoc {
            dimension: path.dim(),
            segments: path
                .segments()
                .iter()
                .map(|s| SegmentDoc {
                    components: s.component_polys().iter().map(PolyDoc::from).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PathDoc> for PiecewisePolyPath {
    type Error = Error;

    fn try_from(doc: &PathDoc) -> Result<Self> {
        let segments = doc
            .segments
            .iter()
            .map(|s| {
                if s.components.len() != doc.dimension {
                    return Err(Error::DimensionMismatch {
                        left: s.components.len(),
                        right: doc.dimension,
                    });
                }
                PathSegment::new(
                    s.components
                        .iter()
                        .map(Poly::try_from)
                        .collect::<Result<Vec<_>>>()?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        PiecewisePolyPath::new(segments)
    }
}

impl From<&TruncatedSignature> for SignatureDoc {
    fn from(s: &TruncatedSignature) -> Self {
        SignatureDoc {
            dimension: s.dim(),
            level: s.level(),
            terms: terms_doc(s.data()),
        }
    }
}

impl TryFrom<&SignatureDoc> for TruncatedSignature {
    type Error = Error;

    fn try_from(doc: &SignatureDoc) -> Result<Self> {
        let data = terms_from_doc(doc.dimension, &doc.terms)?;
        if data.max_level() > doc.level {
            return Err(Error::Parse(format!(
                "signature declares level {} but has a word of length {}",
                doc.level,
                data.max_level()
            )));
        }
        Ok(TruncatedSignature::new(doc.level, data))
    }
}

impl From<&LetterMap> for LetterMapDoc {
    fn from(b: &LetterMap) -> Self {
        LetterMapDoc {
            source_dim: b.source_dim(),
            target_dim: b.target_dim(),
            images: b.images().iter().map(TensorDoc::from).collect(),
        }
    }
}

impl TryFrom<&LetterMapDoc> for LetterMap {
    type Error = Error;

    fn try_from(doc: &LetterMapDoc) -> Result<Self> {
        if doc.images.len() != doc.source_dim {
            return Err(Error::DimensionMismatch {
                left: doc.images.len(),
                right: doc.source_dim,
            });
        }
        let images = doc
            .images
            .iter()
            .map(TensorElem::try_from)
            .collect::<Result<Vec<_>>>()?;
        LetterMap::new(doc.target_dim, images)
    }
}

impl From<&LevelMatrix> for MatrixDoc {
    fn from(m: &LevelMatrix) -> Self {
        MatrixDoc {
            rows: m
                .rows
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
            row_words: m
                .row_words
                .iter()
                .map(|w| w.to_text(m.source_dim))
                .collect(),
            col_words: m
                .col_words
                .iter()
                .map(|w| w.to_text(m.target_dim))
                .collect(),
        }
    }
}

/// Values with a canonical JSON form.
pub trait JsonDocument: Sized {
    fn to_json(&self) -> String;
    fn from_json(text: &str) -> Result<Self>;
}

macro_rules! json_document {
    ($ty:ty, $doc:ty) => {
        impl JsonDocument for $ty {
            fn to_json(&self) -> String {
                serde_json::to_string_pretty(&<$doc>::from(self)).expect("plain data")
            }

            fn from_json(text: &str) -> Result<Self> {
                let doc: $doc =
                    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
                <$ty>::try_from(&doc)
            }
        }
    };
}

json_document!(TensorElem, TensorDoc);
json_document!(Poly, PolyDoc);
json_document!(PolynomialMap, MapDoc);
json_document!(PiecewisePolyPath, PathDoc);
json_document!(TruncatedSignature, SignatureDoc);
json_document!(LetterMap, LetterMapDoc);

impl LevelMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MatrixDoc::from(self)).expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn tensor_layout() {
        let t = TensorElem::parse_text("-1/2*21 + 3*e", 2).unwrap();
        let json = t.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["dim"], 2);
        assert_eq!(v["terms"][0]["word"], "e");
        assert_eq!(v["terms"][0]["coeff"], "3");
        assert_eq!(v["terms"][1]["coeff"], "-1/2");
        assert_eq!(TensorElem::from_json(&json).unwrap(), t);
    }

    #[test]
    fn path_round_trip() {
        let seg = PathSegment::new(vec![
            Poly::univariate([int(0), int(1)]),
            Poly::univariate([frac(1, 3), int(0), int(1)]),
        ])
        .unwrap();
        let path = PiecewisePolyPath::single(seg);
        let json = path.to_json();
        assert!(json.contains("\"dimension\": 2"));
        assert_eq!(PiecewisePolyPath::from_json(&json).unwrap(), path);
    }

    #[test]
    fn rejects_malformed() {
        assert!(TensorElem::from_json(
            "{\"dim\": 2, \"terms\": [{\"word\": \"13\", \"coeff\": \"1\"}]}"
        )
        .is_err());
        assert!(TensorElem::from_json(
            "{\"dim\": 2, \"terms\": [{\"word\": \"1\", \"coeff\": \"1/0\"}]}"
        )
        .is_err());
        assert!(Poly::from_json("not json").is_err());
    }
}
