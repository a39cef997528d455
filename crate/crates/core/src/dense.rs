//! Integer kernels behind the signature routines.
//!
//! Level `n` of a truncated tensor is held densely as `d^n` integer
//! numerators over one shared denominator, indexed in lexicographic word
//! order. Products then run on plain integers and each coefficient is
//! reduced to lowest terms once at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::{factorial, Rational};
use crate::tensor::TensorElem;
use crate::unipoly::UniPoly;
use crate::word::{words_of_length, Word};

/// One homogeneous level: `num[k] / den` for the `k`-th word.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl Level {
    fn zero(size: usize) -> Self {
        Level {
            num: vec![BigInt::zero(); size],
            den: BigInt::one(),
        }
    }
}

fn word_index(w: &Word, dim: usize) -> usize {
    w.letters()
        .iter()
        .fold(0, |acc, &l| acc * dim + (l as usize - 1))
}

pub(crate) fn to_levels(t: &TensorElem, level: usize) -> Vec<Level> {
    let d = t.dim();
    let mut dens = vec![BigInt::one(); level + 1];
    for (w, c) in t.iter() {
        if w.len() <= level {
            dens[w.len()] = dens[w.len()].lcm(c.denom());
        }
    }
    let mut out: Vec<Level> = (0..=level).map(|n| Level::zero(d.pow(n as u32))).collect();
    for (n, den) in dens.into_iter().enumerate() {
        out[n].den = den;
    }
    for (w, c) in t.iter() {
        let n = w.len();
        if n <= level {
            let lv = &mut out[n];
            lv.num[word_index(w, d)] = c.numer() * (&lv.den / c.denom());
        }
    }
    out
}

pub(crate) fn from_levels(dim: usize, levels: &[Level]) -> TensorElem {
    let mut out = TensorElem::zero(dim);
    for (n, lv) in levels.iter().enumerate() {
        for (w, num) in words_of_length(dim, n).zip(&lv.num) {
            if !num.is_zero() {
                out.add_term(w, Rational::new(num.clone(), lv.den.clone()));
            }
        }
    }
    out
}

/// Truncated concatenation product of two level stacks of equal height.
pub(crate) fn concat(dim: usize, a: &[Level], b: &[Level]) -> Vec<Level> {
    let top = a.len().min(b.len());
    let mut out = Vec::with_capacity(top);
    for n in 0..top {
        let den = (0..=n).fold(BigInt::one(), |acc, k| {
            acc.lcm(&(&a[k].den * &b[n - k].den))
        });
        let mut num = vec![BigInt::zero(); dim.pow(n as u32)];
        for k in 0..=n {
            let scale = &den / (&a[k].den * &b[n - k].den);
            let right = &b[n - k].num;
            let stride = right.len();
            for (u, x) in a[k].num.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let x = x * &scale;
                let block = &mut num[u * stride..(u + 1) * stride];
                for (slot, y) in block.iter_mut().zip(right) {
                    if !y.is_zero() {
                        *slot += &x * y;
                    }
                }
            }
        }
        out.push(Level { num, den });
    }
    out
}

/// Signature levels `0..=level` of one polynomial segment on `[0, 1]`.
///
/// After rescaling the path by the common denominator `D` of its
/// coefficients, the running integrals `F_w(t) = Σ_k a_{w,k} t^k` satisfy
/// `a_{wi,k} = (1/k) Σ_{a+b=k} a_{w,a} · b x_{i,b}`. Tracking
/// `c_{w,k} = k! a_{w,k}` turns this into the integer recursion
/// `c_{wi,k} = Σ_{a+b=k} c_{w,a} · b x_{i,b} · (k−1)!/a!`.
pub(crate) fn segment_levels(components: &[UniPoly], level: usize) -> Vec<Level> {
    let d = components.len();
    let scale = components
        .iter()
        .flat_map(|c| c.coeffs())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeffs: Vec<Vec<BigInt>> = components
        .iter()
        .map(|c| {
            c.coeffs()
                .iter()
                .map(|x| x.numer() * (&scale / x.denom()))
                .collect()
        })
        .collect();
    let r = coeffs
        .iter()
        .map(|c| c.len().saturating_sub(1))
        .max()
        .unwrap_or(0);
    let top = level * r;

    // weight[i][a][b] = b·x_{i,b} · (a+b−1)!/a!
    let fact: Vec<BigInt> = (0..=top as u64).map(factorial).collect();
    let weight: Vec<Vec<Vec<BigInt>>> = coeffs
        .iter()
        .map(|x| {
            (0..=top)
                .map(|a| {
                    (0..x.len())
                        .map(|b| {
                            if b == 0 || x[b].is_zero() || a + b > top {
                                BigInt::zero()
                            } else {
                                &x[b] * BigInt::from(b) * (&fact[a + b - 1] / &fact[a])
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut levels = Vec::with_capacity(level + 1);
    levels.push(Level {
        num: vec![BigInt::one()],
        den: BigInt::one(),
    });
    let mut current: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    let mut scale_pow = BigInt::one();
    for n in 1..=level {
        scale_pow *= &scale;
        let kmax = n * r;
        let den = &fact[kmax] * &scale_pow;
        let last = n == level;
        let mut next: Vec<Vec<BigInt>> = if last {
            Vec::new()
        } else {
            Vec::with_capacity(current.len() * d)
        };
        let mut num = Vec::with_capacity(current.len() * d);
        for prev in &current {
            for w_i in &weight {
                let mut poly = Vec::new();
                if !prev.is_empty() {
                    poly = vec![BigInt::zero(); prev.len() + r];
                    for (a, ca) in prev.iter().enumerate() {
                        if ca.is_zero() {
                            continue;
                        }
                        for (b, wt) in w_i[a].iter().enumerate() {
                            if !wt.is_zero() {
                                poly[a + b] += ca * wt;
                            }
                        }
                    }
                    while poly.last().is_some_and(Zero::is_zero) {
                        poly.pop();
                    }
                }
                // F(1) = Σ_k c_k / k! = (Σ_k c_k · kmax!/k!) / kmax!
                let value = poly
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(BigInt::zero(), |acc, (k, c)| {
                        acc + c * (&fact[kmax] / &fact[k])
                    });
                num.push(value);
                if !last {
                    next.push(poly);
                }
            }
        }
        levels.push(Level { num, den });
        current = next;
    }
    levels
}
