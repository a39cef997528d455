//! Exact signatures of piecewise-polynomial paths and their images under
//! polynomial maps.
//!
//! The algebra lives on words over `{1, …, d}`: [`TensorElem`] carries the
//! concatenation, shuffle and half-shuffle products. A polynomial map
//! `p: ℝ^d → ℝ^m` with `p(0) = 0` induces a shuffle morphism
//! `M_p: T(ℝ^m) → T(ℝ^d)` ([`ShuffleMorphism`]) satisfying
//! `⟨σ(p(X)), w⟩ = ⟨σ(X), M_p(w)⟩` for paths starting at the origin, so
//! [`transform`] computes the signature of `p(X)` from that of `X` alone.
//!
//! All arithmetic is over [`Rational`] (arbitrary precision), and every
//! identity checked in the test suites is exact.

mod dense;
pub mod error;
pub mod io;
pub mod poly;
pub mod polymap;
pub mod rational;
pub mod sampling;
pub mod signature;
pub mod tensor;
pub mod unipoly;
pub mod word;
pub mod zinbiel;

pub use error::{Error, Result};
pub use io::JsonDocument;
pub use poly::{Monomial, Poly};
pub use polymap::{
    compose_maps, level_blocks, level_matrix, m_p, KMatrix, LevelMatrix, PolynomialMap,
    ShuffleMorphism,
};
pub use rational::{format_rational, parse_rational, Rational};
pub use signature::{
    check_dual_concat, check_tree_like, chen_concat, exp_concat, image_path_signature,
    lies_in_variety, path_signature, polynomial_path_signature_via_exp, segment_signature,
    transform, transform_path, PathSegment, PiecewisePolyPath, TruncatedSignature,
};
pub use tensor::TensorElem;
pub use unipoly::UniPoly;
pub use word::Word;
pub use zinbiel::{
    lambda_b, signature_defined_path, signature_defined_path_transport, LetterMap, Transport,
    ZinbielExtension,
};
