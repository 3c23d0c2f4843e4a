//! Time-domain constructions over `F_2[Z_p^m]` for primes `p` with 2 primitive.

use crate::coords::CoordTuple;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

use super::field::order_of_two;
use super::group::GroupSpec;

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_primitive(p: usize) -> Result<()> {
    if p < 3 || !is_prime(p) || order_of_two(p) != p - 1 {
        return Err(Error::InvalidGroup(format!("2 is not a primitive root modulo {p}")));
    }
    Ok(())
}

/// `a^{(k)} = Σ_{β ∈ Z_p} X^{β e_k}`: the indicator of the `k`-th axis.
pub fn axis_element(g: &GroupSpec, k: usize) -> BitVector {
    let mut a = BitVector::zeros(g.size());
    for j in 0..g.size() {
        if g.element(j)
            .entries()
            .iter()
            .enumerate()
            .all(|(t, &x)| t == k || x == 0)
        {
            a.set(j, true);
        }
    }
    a
}

/// A basis of the ideal generated by the products
/// `Π_{k∈S} b^{(k)} Π_{k∉S} a^{(k)}` over `|S| <= r`, with `b^{(k)} = 1 + a^{(k)}`.
pub fn blackmore_norton_ideal(p: usize, r: usize, m: usize) -> Result<BitMatrix> {
    check_primitive(p)?;
    if r > m {
        return Err(Error::InvalidParameters(format!(
            "r must satisfy 0 <= r <= m, got r={r}, m={m}"
        )));
    }
    let g = GroupSpec::cyclic(p, m)?;
    let one = BitVector::unit(g.size(), 0);
    let axes: Vec<BitVector> = (0..m).map(|k| axis_element(&g, k)).collect();

    let mut rows = Vec::new();
    for subset in 0u64..(1 << m) {
        if subset.count_ones() as usize > r {
            continue;
        }
        let mut prod = one.clone();
        for (k, a) in axes.iter().enumerate() {
            let factor = if subset >> k & 1 == 1 { a.xor(&one) } else { a.clone() };
            prod = g.convolve(&prod, &factor)?;
        }
        // Shifts of a generator span the principal ideal it generates.
        for shift in 0..g.size() {
            rows.push(g.shift(&prod, shift)?);
        }
    }
    Ok(BitMatrix::from_rows(rows, g.size())?.row_basis())
}

/// The `(p-1) × p^m` matrix with entry `1(i·j ≠ k)` in row `k ∈ {1..p-1}`.
pub fn irreducible_generator_matrix(p: usize, m: usize, j: &CoordTuple) -> Result<BitMatrix> {
    check_primitive(p)?;
    let g = GroupSpec::cyclic(p, m)?;
    g.index(j)?;
    if j.weight() == 0 {
        return Err(Error::Precondition("j = 0 belongs to the repetition code".into()));
    }
    let dots: Vec<usize> = (0..g.size())
        .map(|i| {
            g.element(i)
                .entries()
                .iter()
                .zip(j.entries())
                .map(|(&a, &b)| a * b)
                .sum::<usize>()
                % p
        })
        .collect();
    let rows = (1..p)
        .map(|k| BitVector::from_bits(&dots.iter().map(|&d| d != k).collect::<Vec<_>>()))
        .collect();
    BitMatrix::from_rows(rows, g.size())
}
