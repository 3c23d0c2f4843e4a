//! Recursive bounded-distance decoders and a brute-force reference decoder.
//!
//! [`decode_dual_berman`] corrects every error pattern of weight below
//! `n^{m-r}/2` in `C_n(r,m)`; [`decode_berman`] corrects every pattern of
//! weight below `2^r` in `D_n(r,m)`. Both always return a codeword.
//!
//! The `*_counted` variants also return the number of bit-level operations
//! performed (vector additions, distance and weight computations), which is
//! what the complexity bounds `b_m n^m` and `c_m n^m` are stated in.

use std::cmp::Ordering;

use crate::code::{generator_matrix, CodeSpec, Family};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Largest code dimension [`md_oracle_decode`] will enumerate.
pub const ORACLE_MAX_DIMENSION: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub codeword: BitVector,
    /// Positions where the output differs from the received word, ascending.
    pub corrected_positions: Vec<usize>,
}

impl DecodeResult {
    fn new(y: &BitVector, codeword: BitVector) -> Self {
        let corrected_positions = codeword.xor(y).iter_ones().collect();
        Self {
            codeword,
            corrected_positions,
        }
    }
}

/// Dispatches on the family of `spec`.
pub fn decode(spec: &CodeSpec, y: &BitVector) -> Result<DecodeResult> {
    match spec.family() {
        Family::Berman => decode_berman(spec, y),
        Family::DualBerman => decode_dual_berman(spec, y),
    }
}

fn check(spec: &CodeSpec, family: Family, y: &BitVector) -> Result<()> {
    if spec.family() != family {
        return Err(Error::InvalidParameters(format!("{spec} is not a {family} code")));
    }
    if y.len() != spec.length() {
        return Err(Error::LengthMismatch {
            expected: spec.length(),
            actual: y.len(),
        });
    }
    Ok(())
}

pub fn decode_dual_berman(spec: &CodeSpec, y: &BitVector) -> Result<DecodeResult> {
    decode_dual_berman_counted(spec, y).map(|(d, _)| d)
}

pub fn decode_dual_berman_counted(spec: &CodeSpec, y: &BitVector) -> Result<(DecodeResult, u64)> {
    check(spec, Family::DualBerman, y)?;
    let mut ops = 0;
    let c = dual_rec(spec.n(), spec.r(), spec.m(), y, &mut ops);
    Ok((DecodeResult::new(y, c), ops))
}

pub fn decode_berman(spec: &CodeSpec, y: &BitVector) -> Result<DecodeResult> {
    decode_berman_counted(spec, y).map(|(d, _)| d)
}

pub fn decode_berman_counted(spec: &CodeSpec, y: &BitVector) -> Result<(DecodeResult, u64)> {
    check(spec, Family::Berman, y)?;
    let mut ops = 0;
    let c = berman_rec(spec.n(), spec.r(), spec.m(), y, &mut ops);
    Ok((DecodeResult::new(y, c), ops))
}

fn split(n: usize, y: &BitVector) -> (usize, Vec<BitVector>) {
    let block = y.len() / n;
    (block, (0..n).map(|l| y.slice(l * block, block)).collect())
}

fn dual_rec(n: usize, r: usize, m: usize, y: &BitVector, ops: &mut u64) -> BitVector {
    let len = y.len();
    if r == 0 {
        *ops += len as u64;
        return if 2 * y.weight() > len {
            BitVector::ones(len)
        } else {
            BitVector::zeros(len)
        };
    }
    if r == m {
        *ops += len as u64;
        return y.clone();
    }
    let (block, ys) = split(n, y);
    let last = &ys[n - 1];

    let mut us = Vec::with_capacity(n);
    let mut y_prime = Vec::with_capacity(n);
    for y_l in &ys[..n - 1] {
        let tilde = y_l.xor(last);
        let u_l = dual_rec(n, r - 1, m - 1, &tilde, ops);
        y_prime.push(y_l.xor(&u_l));
        us.push(u_l);
        *ops += 2 * block as u64;
    }
    us.push(BitVector::zeros(block));
    y_prime.push(last.clone());

    // Any l whose decoded block sits within half the minimum distance of the
    // stacked word gives the right u; otherwise fall back to the last block.
    let half = n.pow((m - r) as u32);
    let mut u = BitVector::zeros(block);
    for yp in &y_prime {
        u = dual_rec(n, r, m - 1, yp, ops);
        let total: usize = y_prime.iter().map(|yk| u.distance(yk)).sum();
        *ops += len as u64;
        if 2 * total < half {
            break;
        }
    }

    let mut out = BitVector::zeros(len);
    for (l, u_l) in us.iter().enumerate() {
        out.xor_at(l * block, &u);
        out.xor_at(l * block, u_l);
    }
    *ops += len as u64;
    out
}

fn berman_rec(n: usize, r: usize, m: usize, y: &BitVector, ops: &mut u64) -> BitVector {
    let len = y.len();
    if r == m {
        *ops += len as u64;
        return BitVector::zeros(len);
    }
    if r == 0 {
        *ops += len as u64;
        let mut v = y.clone();
        if v.weight() % 2 == 1 {
            v.flip(0);
        }
        return v;
    }
    let (block, ys) = split(n, y);

    let mut y_sum = BitVector::zeros(block);
    for y_l in &ys {
        y_sum.xor_assign(y_l);
    }
    *ops += ((n - 1) * block) as u64;
    let v_sum = berman_rec(n, r, m - 1, &y_sum, ops);
    let base = v_sum.xor(&y_sum);

    // Two candidates per block: the block decoded as is, and decoded after
    // swapping in the remainder implied by the sum.
    let mut cands: Vec<[BitVector; 2]> = Vec::with_capacity(n - 1);
    for y_l in &ys[..n - 1] {
        let tilde = base.xor(y_l);
        *ops += 2 * block as u64;
        let a0 = berman_rec(n, r - 1, m - 1, y_l, ops);
        let a1 = berman_rec(n, r - 1, m - 1, &tilde, ops);
        cands.push([a0, a1]);
    }

    let mut best: Option<(usize, u64)> = None;
    for a in 0u64..(1 << (n - 1)) {
        let mut tail = v_sum.clone();
        let mut dist = 0;
        for (l, pair) in cands.iter().enumerate() {
            let v_l = &pair[(a >> l & 1) as usize];
            tail.xor_assign(v_l);
            dist += v_l.distance(&ys[l]);
        }
        dist += tail.distance(&ys[n - 1]);
        *ops += ((n - 1) * block + len) as u64;
        if best.is_none_or(|(d, _)| dist < d) {
            best = Some((dist, a));
        }
    }
    let (_, a) = best.expect("candidate list is nonempty");

    let mut out = BitVector::zeros(len);
    let mut tail = v_sum;
    for (l, pair) in cands.iter().enumerate() {
        let v_l = &pair[(a >> l & 1) as usize];
        out.xor_at(l * block, v_l);
        tail.xor_assign(v_l);
    }
    out.xor_at((n - 1) * block, &tail);
    out
}

/// `b_m` with `g(r,m) <= b_m n^m` for [`decode_dual_berman`].
pub fn dual_berman_cost_factor(n: usize, m: usize) -> f64 {
    (2..=m).fold(1.0, |b, _| 3.0 + n as f64 + 2.0 * b)
}

/// `c_m` with `f(r,m) <= c_m n^m` for [`decode_berman`].
pub fn berman_cost_factor(n: usize, m: usize) -> f64 {
    let nf = n as f64;
    (2..=m).fold(1.0, |c, _| 3.0 + 2f64.powi(n as i32) + c * (2.0 + 1.0 / nf))
}

/// Compares bit strings position by position, `0 < 1`.
pub fn lex_cmp(a: &BitVector, b: &BitVector) -> Ordering {
    match a.xor(b).first_one() {
        None => a.len().cmp(&b.len()),
        Some(i) if a.get(i) => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

/// Exhaustive minimum-distance decoding over the full codebook.
///
/// Ties go to the lexicographically smallest codeword.
pub fn md_oracle_decode(spec: &CodeSpec, y: &BitVector) -> Result<BitVector> {
    if y.len() != spec.length() {
        return Err(Error::LengthMismatch {
            expected: spec.length(),
            actual: y.len(),
        });
    }
    let k = spec.dimension();
    if k > ORACLE_MAX_DIMENSION {
        return Err(Error::TooLarge(format!(
            "dimension {k} exceeds oracle limit {ORACLE_MAX_DIMENSION}"
        )));
    }
    let g = generator_matrix(spec);
    let mut c = BitVector::zeros(spec.length());
    let mut best = (c.distance(y), c.clone());
    // Gray-code walk: step t flips generator row trailing_zeros(t).
    for t in 1u64..(1 << k) {
        c.xor_assign(g.row(t.trailing_zeros() as usize));
        let d = c.distance(y);
        if d < best.0 || (d == best.0 && lex_cmp(&c, &best.1) == Ordering::Less) {
            best = (d, c.clone());
        }
    }
    Ok(best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{encode_with, is_codeword};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> BitVector {
        BitVector::from_bitstring(s).unwrap()
    }

    fn codebook(spec: &CodeSpec) -> Vec<BitVector> {
        let g = generator_matrix(spec);
        let k = g.num_rows();
        (0u64..1 << k)
            .map(|msg| {
                let m = BitVector::from_bits(&(0..k).map(|b| msg >> b & 1 == 1).collect::<Vec<_>>());
                encode_with(&g, &m).unwrap()
            })
            .collect()
    }

    #[test]
    fn corrects_single_flip_on_example_codeword() {
        let spec = CodeSpec::berman(3, 1, 2).unwrap();
        let out = decode_berman(&spec, &bits("100000101")).unwrap();
        assert_eq!(out.codeword, bits("101000101"));
        assert_eq!(out.corrected_positions, vec![2]);
        assert_eq!(
            decode_berman(&spec, &BitVector::zeros(9)).unwrap().codeword,
            BitVector::zeros(9)
        );
    }

    #[test]
    fn dual_single_flips_exhaustive() {
        let spec = CodeSpec::dual_berman(3, 1, 2).unwrap();
        let book = codebook(&spec);
        assert_eq!(book.len(), 32);
        for c in &book {
            assert_eq!(&decode_dual_berman(&spec, c).unwrap().codeword, c);
            for i in 0..9 {
                let mut y = c.clone();
                y.flip(i);
                let out = decode_dual_berman(&spec, &y).unwrap().codeword;
                assert_eq!(&out, c);
                assert_eq!(out, md_oracle_decode(&spec, &y).unwrap());
            }
        }
    }

    #[test]
    fn dual_two_flips_yield_codewords() {
        let spec = CodeSpec::dual_berman(3, 1, 2).unwrap();
        for c in codebook(&spec) {
            for i in 0..9 {
                for j in i + 1..9 {
                    let mut y = c.clone();
                    y.flip(i);
                    y.flip(j);
                    let out = decode_dual_berman(&spec, &y).unwrap().codeword;
                    assert!(is_codeword(&spec, &out).unwrap());
                }
            }
        }
    }

    #[test]
    fn berman_radius_one_exhaustive() {
        let spec = CodeSpec::berman(3, 1, 2).unwrap();
        for c in codebook(&spec) {
            let mut patterns = vec![BitVector::zeros(9)];
            patterns.extend((0..9).map(|i| BitVector::unit(9, i)));
            for e in patterns {
                let y = c.xor(&e);
                let out = decode_berman(&spec, &y).unwrap().codeword;
                assert_eq!(out, c);
                assert_eq!(out, md_oracle_decode(&spec, &y).unwrap());
            }
        }
    }

    #[test]
    fn berman_random_weight_three_errors() {
        let spec = CodeSpec::berman(3, 2, 3).unwrap();
        let g = generator_matrix(&spec);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let msg = BitVector::from_bits(&(0..g.num_rows()).map(|_| rng.gen()).collect::<Vec<_>>());
            let c = encode_with(&g, &msg).unwrap();
            let mut y = c.clone();
            let w = rng.gen_range(0..=3);
            let mut flipped = Vec::new();
            while flipped.len() < w {
                let i = rng.gen_range(0..27);
                if !flipped.contains(&i) {
                    flipped.push(i);
                    y.flip(i);
                }
            }
            assert_eq!(decode_berman(&spec, &y).unwrap().codeword, c);
        }
    }

    #[test]
    fn oracle_basics() {
        let spec = CodeSpec::berman(3, 1, 2).unwrap();
        let c = bits("101000101");
        assert_eq!(md_oracle_decode(&spec, &c).unwrap(), c);
        assert_eq!(
            md_oracle_decode(&spec, &BitVector::unit(9, 0)).unwrap(),
            BitVector::zeros(9)
        );
        let big = CodeSpec::dual_berman(3, 3, 3).unwrap();
        assert!(md_oracle_decode(&big, &BitVector::zeros(27)).is_err());
    }

    #[test]
    fn wrong_family_or_length_is_rejected() {
        let spec = CodeSpec::berman(3, 1, 2).unwrap();
        assert!(decode_dual_berman(&spec, &BitVector::zeros(9)).is_err());
        assert!(decode_berman(&spec, &BitVector::zeros(8)).is_err());
    }

    #[test]
    fn lex_order() {
        assert_eq!(lex_cmp(&bits("011"), &bits("100")), Ordering::Less);
        assert_eq!(lex_cmp(&bits("101"), &bits("101")), Ordering::Equal);
    }

    #[test]
    fn cost_factors_match_recursions() {
        assert_eq!(dual_berman_cost_factor(3, 1), 1.0);
        assert_eq!(dual_berman_cost_factor(3, 2), 3.0 + 3.0 + 2.0);
        assert!((berman_cost_factor(3, 2) - (3.0 + 8.0 + 7.0 / 3.0)).abs() < 1e-12);
    }
}
