//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use berman::{BitMatrix, BitVector};
use rand::Rng;

/// Every codeword spanned by the rows of `g` (which need not be independent).
pub fn codebook(g: &BitMatrix) -> Vec<BitVector> {
    let basis = g.row_basis();
    let k = basis.num_rows();
    assert!(k <= 22, "codebook of dimension {k} is too large to enumerate");
    let mut out = Vec::with_capacity(1 << k);
    let mut c = BitVector::zeros(g.num_cols());
    out.push(c.clone());
    for t in 1u64..(1 << k) {
        c.xor_assign(basis.row(t.trailing_zeros() as usize));
        out.push(c.clone());
    }
    out
}

pub fn codebook_set(g: &BitMatrix) -> BTreeSet<String> {
    codebook(g).iter().map(BitVector::to_bitstring).collect()
}

/// Smallest nonzero weight, by enumeration.
pub fn min_weight(g: &BitMatrix) -> Option<usize> {
    codebook(g).iter().map(BitVector::weight).filter(|&w| w > 0).min()
}

/// `RM(r,m)` from evaluations of multilinear monomials of degree `<= r`;
/// point `x` sits at index `Σ x_k 2^k`.
pub fn reed_muller_codebook(r: usize, m: usize) -> BTreeSet<String> {
    let len = 1usize << m;
    let mut rows = Vec::new();
    for mono in 0usize..(1 << m) {
        if mono.count_ones() as usize > r {
            continue;
        }
        rows.push(BitVector::from_bits(
            &(0..len).map(|x| x & mono == mono).collect::<Vec<_>>(),
        ));
    }
    codebook_set(&BitMatrix::from_rows(rows, len).unwrap())
}

/// `h_0(ε)`: bit 0 is undetermined iff some codeword with a 1 at 0 lives
/// inside the erased set. Sums over all erasure patterns of the other bits.
pub fn exact_h0_by_codebook(book: &[BitVector], epsilon: f64) -> f64 {
    let len = book[0].len();
    let witnesses: Vec<u64> = book
        .iter()
        .filter(|c| c.get(0))
        .map(|c| c.iter_ones().fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    let mut h = 0.0;
    for pattern in 0u64..(1 << (len - 1)) {
        let erased = (pattern << 1) | 1;
        if witnesses.iter().any(|&w| w & !erased == 0) {
            let e = pattern.count_ones() as i32;
            h += epsilon.powi(e) * (1.0 - epsilon).powi(len as i32 - 1 - e);
        }
    }
    h
}

/// `Q(x)` by composite Simpson integration of the normal density.
pub fn q_by_quadrature(x: f64) -> f64 {
    let (a, b) = (x, x.max(0.0) + 40.0);
    let steps = 400_000;
    let h = (b - a) / steps as f64;
    let f = |t: f64| (-t * t / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let mut s = f(a) + f(b);
    for i in 1..steps {
        let t = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(t);
    }
    s * h / 3.0
}

pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> BitVector {
    BitVector::from_bits(&(0..len).map(|_| rng.gen()).collect::<Vec<_>>())
}

/// A uniformly random codeword of the row space of `g`.
pub fn random_codeword<R: Rng>(rng: &mut R, g: &BitMatrix) -> BitVector {
    g.left_mul(&random_word(rng, g.num_rows())).unwrap()
}

/// A random vector of exactly weight `w`.
pub fn random_error<R: Rng>(rng: &mut R, len: usize, w: usize) -> BitVector {
    let mut e = BitVector::zeros(len);
    while e.weight() < w {
        e.set(rng.gen_range(0..len), true);
    }
    e
}

/// All vectors of length `len` and weight exactly `w`.
pub fn all_errors(len: usize, w: usize) -> Vec<BitVector> {
    fn rec(len: usize, w: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<BitVector>) {
        if cur.len() == w {
            out.push(BitVector::from_support(len, cur.iter().copied()).unwrap());
            return;
        }
        for i in start..len {
            cur.push(i);
            rec(len, w, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, w, 0, &mut Vec::new(), &mut out);
    out
}
