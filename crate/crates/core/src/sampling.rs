//! Seeded random instances for oracle checks.

use rand::Rng;

use crate::poly::Poly;
use crate::polymap::PolynomialMap;
use crate::rational::{frac, Rational};
use crate::signature::{PathSegment, PiecewisePolyPath};
use crate::tensor::TensorElem;
use crate::unipoly::UniPoly;
use crate::word::Word;

/// Small coefficients with an occasional half, never zero.
pub fn coefficient<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num = loop {
        let n: i64 = rng.gen_range(-3..=3);
        if n != 0 {
            break n;
        }
    };
    let den = if rng.gen_bool(0.2) { 2 } else { 1 };
    frac(num, den)
}

/// A sparse polynomial of degree at most `max_deg`; each monomial is present
/// with probability `density`.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_deg: u32, density: f64) -> Poly {
    let mut terms = Vec::new();
    for exps in exponents_up_to(nvars, max_deg) {
        if rng.gen_bool(density) {
            terms.push((exps, coefficient(rng)));
        }
    }
    Poly::from_terms(nvars, terms).expect("consistent arity")
}

fn exponents_up_to(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                let used: u32 = prefix.iter().sum();
                (0..=max_deg - used).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

/// A map `ℝ^d → ℝ^m` of degree at most `max_deg`. Unless `allow_constant`,
/// constant terms are removed so the map vanishes at the origin.
pub fn polynomial_map<R: Rng + ?Sized>(
    rng: &mut R,
    d: usize,
    m: usize,
    max_deg: u32,
    allow_constant: bool,
) -> PolynomialMap {
    let density = (2.5 / exponents_up_to(d, max_deg).len() as f64).clamp(0.15, 0.6);
    let comps = (0..m)
        .map(|_| {
            let p = poly(rng, d, max_deg, density);
            if allow_constant {
                p
            } else {
                &p - &Poly::constant(d, p.constant_term())
            }
        })
        .collect();
    PolynomialMap::new(d, comps).expect("consistent arity")
}

pub fn segment<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_deg: usize) -> PathSegment {
    let comps = (0..dim)
        .map(|_| {
            let deg = rng.gen_range(1..=max_deg);
            UniPoly::new(
                (0..=deg)
                    .map(|_| {
                        if rng.gen_bool(0.7) {
                            coefficient(rng)
                        } else {
                            Rational::from_integer(0.into())
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    PathSegment::from_unipolys(comps).expect("valid dimension")
}

pub fn path<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_segments: usize,
    max_deg: usize,
) -> PiecewisePolyPath {
    let n = rng.gen_range(1..=max_segments);
    PiecewisePolyPath::new((0..n).map(|_| segment(rng, dim, max_deg)).collect()).expect("nonempty")
}

/// The same as [`path`], translated to start at the origin.
pub fn path_from_origin<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_segments: usize,
    max_deg: usize,
) -> PiecewisePolyPath {
    let p = path(rng, dim, max_segments, max_deg);
    let back: Vec<Rational> = p.start().iter().map(|c| -c).collect();
    let mut segs = p.segments().to_vec();
    segs[0] = segs[0].translated(&back);
    PiecewisePolyPath::new(segs).expect("nonempty")
}

/// A tensor with at most `max_terms` words of length `1..=max_len`.
pub fn tensor<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_len: usize,
    max_terms: usize,
) -> TensorElem {
    let n = rng.gen_range(1..=max_terms);
    let terms = (0..n).map(|_| (word(rng, dim, 1, max_len), coefficient(rng)));
    let mut out = TensorElem::zero(dim);
    for (w, c) in terms {
        out += &TensorElem::from_terms(dim, [(w, c)]).expect("letters in range");
    }
    out
}

pub fn word<R: Rng + ?Sized>(rng: &mut R, dim: usize, min_len: usize, max_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    Word::from_letters((0..len).map(|_| rng.gen_range(1..=dim as u8)))
}

/// Bounds for a random transform instance.
#[derive(Clone, Copy, Debug)]
pub struct InstanceBounds {
    pub max_dim: usize,
    pub max_map_degree: u32,
    pub max_segments: usize,
    pub max_segment_degree: usize,
    pub max_level: usize,
}

impl Default for InstanceBounds {
    fn default() -> Self {
        InstanceBounds {
            max_dim: 3,
            max_map_degree: 3,
            max_segments: 2,
            max_segment_degree: 3,
            max_level: 3,
        }
    }
}

/// A map, a path and a target level for checking the transform against
/// direct integration of the image path.
#[derive(Clone, Debug)]
pub struct TransformInstance {
    pub map: PolynomialMap,
    pub path: PiecewisePolyPath,
    pub level: usize,
}

pub fn transform_instance<R: Rng + ?Sized>(
    rng: &mut R,
    bounds: &InstanceBounds,
) -> TransformInstance {
    let d = rng.gen_range(1..=bounds.max_dim);
    let m = rng.gen_range(1..=bounds.max_dim);
    let deg = rng.gen_range(1..=bounds.max_map_degree);
    let map = polynomial_map(rng, d, m, deg, true);
    let path = path(rng, d, bounds.max_segments, bounds.max_segment_degree);
    let level = rng.gen_range(1..=bounds.max_level);
    TransformInstance { map, path, level }
}
