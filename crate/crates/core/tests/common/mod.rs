//! Test-only oracles, kept independent of the library's product kernels.

#![allow(dead_code)]

use std::collections::BTreeMap;

use sigpoly::{Rational, TensorElem, TruncatedSignature, UniPoly, Word};

pub fn t(text: &str, dim: usize) -> TensorElem {
    TensorElem::parse_text(text, dim).unwrap()
}

pub fn w(text: &str, dim: usize) -> Word {
    Word::parse(text, dim).unwrap()
}

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn uni(coeffs: &[i64]) -> UniPoly {
    UniPoly::new(coeffs.iter().map(|&c| q(c, 1)).collect())
}

/// Shuffle of two words by enumerating every placement of `a`'s letters.
pub fn brute_shuffle(a: &[u8], b: &[u8]) -> BTreeMap<Vec<u8>, i64> {
    let n = a.len() + b.len();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let (mut ia, mut ib) = (0, 0);
        let mut word = Vec::with_capacity(n);
        for pos in 0..n {
            if mask & (1 << pos) != 0 {
                word.push(a[ia]);
                ia += 1;
            } else {
                word.push(b[ib]);
                ib += 1;
            }
        }
        *out.entry(word).or_insert(0) += 1;
    }
    out
}

pub fn brute_shuffle_tensor(a: &TensorElem, b: &TensorElem) -> TensorElem {
    let dim = a.dim();
    let mut out = TensorElem::zero(dim);
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            let c = cu * cv;
            for (word, n) in brute_shuffle(u.letters(), v.letters()) {
                let term = TensorElem::from_terms(dim, [(Word::from_letters(word), &c * q(n, 1))])
                    .unwrap();
                out += &term;
            }
        }
    }
    out
}

/// Checks `⟨σ,u⟩⟨σ,v⟩ = ⟨σ,u⧢v⟩` for nonempty words with `|u| + |v| <= max_total`.
pub fn shuffle_identity(sig: &TruncatedSignature, max_total: usize) -> Result<(), String> {
    let d = sig.dim();
    let max_total = max_total.min(sig.level());
    for lu in 1..max_total {
        for u in sigpoly::word::words_of_length(d, lu) {
            for lv in 1..=max_total - lu {
                for v in sigpoly::word::words_of_length(d, lv) {
                    let lhs = sig.coeff(&u) * sig.coeff(&v);
                    let uv = TensorElem::word(d, u.clone())
                        .unwrap()
                        .shuffle(&TensorElem::word(d, v.clone()).unwrap())
                        .unwrap();
                    let rhs = sig.data().pair(&uv).unwrap();
                    if lhs != rhs {
                        return Err(format!(
                            "shuffle identity fails for {u} and {v}: {lhs} vs {rhs}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}
