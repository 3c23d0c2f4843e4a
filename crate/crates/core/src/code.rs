//! Berman codes `D_n(r,m)` and dual Berman codes `C_n(r,m)`.
//!
//! Both families are defined by an `n`-block recursion on `m`:
//!
//! - `D_n(0,m)` is the single parity-check code, `D_n(m,m) = {0}`, and for
//!   `1 <= r <= m-1` a word `(v_0|...|v_{n-1})` is in `D_n(r,m)` iff every
//!   block is in `D_n(r-1,m-1)` and the block sum is in `D_n(r,m-1)`.
//! - `C_n(0,m)` is the repetition code, `C_n(m,m)` is the whole space, and for
//!   `1 <= r <= m-1` the codewords are `(u+u_0|...|u+u_{n-2}|u)` with
//!   `u_l ∈ C_n(r-1,m-1)` and `u ∈ C_n(r,m-1)`.
//!
//! The two codes are duals of each other and `C_2(r,m) = RM(r,m)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coords::{CoordSpace, CoordTuple};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Which of the two code families a [`CodeSpec`] names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `D_n(r,m)`, minimum distance `2^{r+1}`.
    Berman,
    /// `C_n(r,m)`, minimum distance `n^{m-r}`.
    #[serde(rename = "dual")]
    DualBerman,
}

impl Family {
    pub fn dual(self) -> Self {
        match self {
            Family::Berman => Family::DualBerman,
            Family::DualBerman => Family::Berman,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Berman => "berman",
            Family::DualBerman => "dual",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "berman" | "D" => Ok(Family::Berman),
            "dual" | "dual-berman" | "C" => Ok(Family::DualBerman),
            other => Err(Error::InvalidParameters(format!(
                "unknown family {other:?} (expected berman or dual)"
            ))),
        }
    }
}

/// The triple `(n, r, m)` plus the family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    n: usize,
    r: usize,
    m: usize,
    family: Family,
    space: CoordSpace,
}

impl CodeSpec {
    /// Validates `n >= 2`, `m >= 1`, `r <= m` and that `n^m` fits in memory indexing.
    pub fn new(n: usize, r: usize, m: usize, family: Family) -> Result<Self> {
        validate(n, r, m)?;
        let space = CoordSpace::new(n, m)?;
        Ok(Self { n, r, m, family, space })
    }

    pub fn berman(n: usize, r: usize, m: usize) -> Result<Self> {
        Self::new(n, r, m, Family::Berman)
    }

    pub fn dual_berman(n: usize, r: usize, m: usize) -> Result<Self> {
        Self::new(n, r, m, Family::DualBerman)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn space(&self) -> CoordSpace {
        self.space
    }

    /// Block length `n^m`.
    pub fn length(&self) -> usize {
        self.space.size()
    }

    pub fn dimension(&self) -> usize {
        dimension(self.n, self.r, self.m, self.family)
            .to_usize()
            .expect("dimension is at most the length")
    }

    /// The code with the same `(n, r, m)` in the other family; its dual.
    pub fn dual(&self) -> Self {
        Self {
            family: self.family.dual(),
            ..*self
        }
    }

    /// Same family and `n` with different `(r, m)`.
    pub fn with(&self, r: usize, m: usize) -> Result<Self> {
        Self::new(self.n, r, m, self.family)
    }

    pub fn parameters(&self) -> CodeParameters {
        parameters(self.n, self.r, self.m, self.family)
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Berman => "D",
            Family::DualBerman => "C",
        };
        write!(f, "{name}_{}({},{})", self.n, self.r, self.m)
    }
}

fn validate(n: usize, r: usize, m: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("n must be >= 2, got {n}")));
    }
    if m < 1 {
        return Err(Error::InvalidParameters("m must be >= 1".into()));
    }
    if r > m {
        return Err(Error::InvalidParameters(format!(
            "r must satisfy 0 <= r <= m, got r={r}, m={m}"
        )));
    }
    Ok(())
}

/// Length, dimension and minimum distance, in exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParameters {
    pub length: BigUint,
    pub dimension: BigUint,
    /// `None` for the zero code `D_n(m,m)`.
    pub min_distance: Option<BigUint>,
}

/// `C(m, w) * (n-1)^w`: the number of tuples of weight `w` in `[n]^m`.
pub fn weight_class_size(n: usize, m: usize, w: usize) -> BigUint {
    binomial(m, w) * BigUint::from(n - 1).pow(w as u32)
}

pub(crate) fn binomial(m: usize, w: usize) -> BigUint {
    if w > m {
        return BigUint::zero();
    }
    let w = w.min(m - w);
    let mut acc = BigUint::one();
    for i in 0..w {
        acc = acc * BigUint::from(m - i) / BigUint::from(i + 1);
    }
    acc
}

/// `Σ_{w=0}^{r} C(m,w)(n-1)^w`, the dimension of `C_n(r,m)`.
pub fn dual_berman_dimension(n: usize, r: usize, m: usize) -> BigUint {
    (0..=r.min(m)).map(|w| weight_class_size(n, m, w)).sum()
}

pub fn dimension(n: usize, r: usize, m: usize, family: Family) -> BigUint {
    match family {
        Family::DualBerman => dual_berman_dimension(n, r, m),
        Family::Berman => ((r + 1)..=m).map(|w| weight_class_size(n, m, w)).sum(),
    }
}

/// Closed-form parameters; works for lengths far beyond what can be materialized.
pub fn parameters(n: usize, r: usize, m: usize, family: Family) -> CodeParameters {
    let length = BigUint::from(n).pow(m as u32);
    let dimension = dimension(n, r, m, family);
    let min_distance = match family {
        Family::DualBerman => Some(BigUint::from(n).pow((m - r) as u32)),
        Family::Berman if r < m => Some(BigUint::from(2u32).pow(r as u32 + 1)),
        Family::Berman => None,
    };
    CodeParameters {
        length,
        dimension,
        min_distance,
    }
}

/// Validated parameters for callers that start from raw integers.
pub fn checked_parameters(n: usize, r: usize, m: usize, family: Family) -> Result<CodeParameters> {
    validate(n, r, m)?;
    Ok(parameters(n, r, m, family))
}

/// The minimum-weight generator matrix: `G_n(r,m)` for Berman codes and
/// `H_n(r,m)` for dual Berman codes.
///
/// `D_n(m,m)` yields a matrix with zero rows.
pub fn generator_matrix(spec: &CodeSpec) -> BitMatrix {
    let mut memo = HashMap::new();
    match spec.family {
        Family::Berman => berman_generator(spec.n, spec.r, spec.m, &mut memo),
        Family::DualBerman => dual_generator(spec.n, spec.r, spec.m, &mut memo),
    }
}

/// Generator of the dual code, i.e. a parity-check matrix of `spec`.
pub fn parity_check_matrix(spec: &CodeSpec) -> BitMatrix {
    generator_matrix(&spec.dual())
}

type Memo = HashMap<(usize, usize), BitMatrix>;

fn pow(n: usize, e: usize) -> usize {
    n.pow(e as u32)
}

fn berman_generator(n: usize, r: usize, m: usize, memo: &mut Memo) -> BitMatrix {
    if let Some(g) = memo.get(&(r, m)) {
        return g.clone();
    }
    let len = pow(n, m);
    let g = if r == m {
        BitMatrix::empty(len)
    } else if r == 0 {
        let rows = (1..len)
            .map(|i| BitVector::from_support(len, [0, i]).expect("in range"))
            .collect();
        BitMatrix::from_rows(rows, len).expect("row lengths agree")
    } else {
        let block = pow(n, m - 1);
        let last = (n - 1) * block;
        let inner = berman_generator(n, r - 1, m - 1, memo);
        let sum_part = berman_generator(n, r, m - 1, memo);
        let mut rows = Vec::with_capacity((n - 1) * inner.num_rows() + sum_part.num_rows());
        for l in 0..n - 1 {
            for row in inner.rows() {
                let mut v = BitVector::zeros(len);
                v.xor_at(l * block, row);
                v.xor_at(last, row);
                rows.push(v);
            }
        }
        for row in sum_part.rows() {
            let mut v = BitVector::zeros(len);
            v.xor_at(last, row);
            rows.push(v);
        }
        BitMatrix::from_rows(rows, len).expect("row lengths agree")
    };
    memo.insert((r, m), g.clone());
    g
}

fn dual_generator(n: usize, r: usize, m: usize, memo: &mut Memo) -> BitMatrix {
    if let Some(h) = memo.get(&(r, m)) {
        return h.clone();
    }
    let len = pow(n, m);
    let h = if r == 0 {
        BitMatrix::from_rows(vec![BitVector::ones(len)], len).expect("row length agrees")
    } else if r == m {
        BitMatrix::identity(len)
    } else {
        let block = pow(n, m - 1);
        let inner = dual_generator(n, r - 1, m - 1, memo);
        let repeated = dual_generator(n, r, m - 1, memo);
        let mut rows = Vec::with_capacity((n - 1) * inner.num_rows() + repeated.num_rows());
        for l in 0..n - 1 {
            for row in inner.rows() {
                let mut v = BitVector::zeros(len);
                v.xor_at(l * block, row);
                rows.push(v);
            }
        }
        for row in repeated.rows() {
            let mut v = BitVector::zeros(len);
            for l in 0..n {
                v.xor_at(l * block, row);
            }
            rows.push(v);
        }
        BitMatrix::from_rows(rows, len).expect("row lengths agree")
    };
    memo.insert((r, m), h.clone());
    h
}

/// `A_m = A_1^{⊗m}`, with `A_m(i, j) = 1` iff `j ⪯ i`.
///
/// Row `i` is the patterned vector `c_m(i)` and column `j` is `d_m(j)`.
pub fn containment_matrix(n: usize, m: usize) -> Result<BitMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("n must be >= 2, got {n}")));
    }
    let mut a1 = BitMatrix::identity(n);
    for r in 0..n {
        a1.set(r, 0, true);
    }
    a1.kronecker_power(m)
}

/// `c_m(i')`: the indicator of `{i : i ⪯ i'}`.
pub fn contained_pattern(space: &CoordSpace, top: &CoordTuple) -> Result<BitVector> {
    let base = space.index(top)?;
    let support = top.support();
    let mut place = Vec::with_capacity(support.len());
    let mut stride = 1;
    let mut k_iter = 0;
    for k in 0..space.m() {
        if k_iter < support.len() && support[k_iter] == k {
            place.push(top.entries()[k] * stride);
            k_iter += 1;
        }
        stride *= space.n();
    }
    // Each subset of the support switches the corresponding entries off.
    let ones = (0u64..(1 << support.len())).map(|mask| {
        let mut idx = base;
        for (b, &p) in place.iter().enumerate() {
            if mask >> b & 1 == 1 {
                idx -= p;
            }
        }
        idx
    });
    BitVector::from_support(space.size(), ones)
}

/// `d_m(j')`: the indicator of `{i : i ⪰ j'}`.
pub fn containing_pattern(space: &CoordSpace, bottom: &CoordTuple) -> Result<BitVector> {
    space.index(bottom)?;
    let mut v = BitVector::zeros(space.size());
    for (idx, t) in space.tuples().enumerate() {
        if bottom.is_contained_in(&t) {
            v.set(idx, true);
        }
    }
    Ok(v)
}

/// The patterned basis: `{c_m(i') : wt(i') >= r+1}` for Berman codes and
/// `{d_m(j') : wt(j') <= r}` for dual Berman codes, in colexicographic order
/// of the indexing tuple.
pub fn patterned_basis(spec: &CodeSpec) -> Vec<BitVector> {
    let space = spec.space();
    space
        .tuples()
        .filter(|t| match spec.family {
            Family::Berman => t.weight() > spec.r,
            Family::DualBerman => t.weight() <= spec.r,
        })
        .map(|t| match spec.family {
            Family::Berman => contained_pattern(&space, &t),
            Family::DualBerman => containing_pattern(&space, &t),
        })
        .collect::<Result<Vec<_>>>()
        .expect("tuples come from the same space")
}

/// Membership test that evaluates the recursive definition directly.
pub fn is_codeword(spec: &CodeSpec, v: &BitVector) -> Result<bool> {
    if v.len() != spec.length() {
        return Err(Error::LengthMismatch {
            expected: spec.length(),
            actual: v.len(),
        });
    }
    Ok(match spec.family {
        Family::Berman => in_berman(spec.n, spec.r, spec.m, v),
        Family::DualBerman => in_dual_berman(spec.n, spec.r, spec.m, v),
    })
}

fn blocks(n: usize, m: usize, v: &BitVector) -> Vec<BitVector> {
    let block = pow(n, m - 1);
    (0..n).map(|l| v.slice(l * block, block)).collect()
}

fn in_berman(n: usize, r: usize, m: usize, v: &BitVector) -> bool {
    if r == m {
        return v.is_zero();
    }
    if r == 0 {
        return v.weight().is_multiple_of(2);
    }
    let parts = blocks(n, m, v);
    if !parts.iter().all(|b| in_berman(n, r - 1, m - 1, b)) {
        return false;
    }
    let mut sum = BitVector::zeros(pow(n, m - 1));
    for b in &parts {
        sum.xor_assign(b);
    }
    in_berman(n, r, m - 1, &sum)
}

fn in_dual_berman(n: usize, r: usize, m: usize, v: &BitVector) -> bool {
    if r == m {
        return true;
    }
    if r == 0 {
        return v.is_zero() || v.weight() == v.len();
    }
    let parts = blocks(n, m, v);
    let u = &parts[n - 1];
    in_dual_berman(n, r, m - 1, u)
        && parts[..n - 1]
            .iter()
            .all(|b| in_dual_berman(n, r - 1, m - 1, &b.xor(u)))
}

/// `message · G` with `G` from [`generator_matrix`]. Non-systematic.
pub fn encode(spec: &CodeSpec, message: &BitVector) -> Result<BitVector> {
    encode_with(&generator_matrix(spec), message)
}

/// Encoding against a precomputed generator matrix.
pub fn encode_with(generator: &BitMatrix, message: &BitVector) -> Result<BitVector> {
    generator.left_mul(message)
}
