//! Puncturing, coordinate automorphisms and orbit bounds.

use num_bigint::BigUint;
use num_traits::One;

use crate::code::{generator_matrix, parameters, CodeSpec, Family};
use crate::coords::{CoordSpace, CoordTuple};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// `H = {i ∈ [n]^m : i_K = b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectProductSubset {
    fixed: Vec<(usize, usize)>,
}

impl DirectProductSubset {
    /// `positions[t]` is pinned to `values[t]`. Positions must be distinct.
    pub fn new(n: usize, m: usize, positions: &[usize], values: &[usize]) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::LengthMismatch {
                expected: positions.len(),
                actual: values.len(),
            });
        }
        let mut fixed: Vec<(usize, usize)> = positions.iter().copied().zip(values.iter().copied()).collect();
        fixed.sort_unstable();
        for w in fixed.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidParameters(format!("position {} repeated", w[0].0)));
            }
        }
        for &(k, b) in &fixed {
            if k >= m {
                return Err(Error::OutOfRange { index: k, len: m });
            }
            if b >= n {
                return Err(Error::OutOfRange { index: b, len: n });
            }
        }
        Ok(Self { fixed })
    }

    pub fn positions(&self) -> Vec<usize> {
        self.fixed.iter().map(|&(k, _)| k).collect()
    }

    pub fn values(&self) -> Vec<usize> {
        self.fixed.iter().map(|&(_, b)| b).collect()
    }

    /// `|K|`.
    pub fn size_of_k(&self) -> usize {
        self.fixed.len()
    }

    pub fn contains(&self, t: &CoordTuple) -> bool {
        self.fixed.iter().all(|&(k, b)| t.entries()[k] == b)
    }

    /// Indices of `H` in ascending order. Dropping the pinned positions maps
    /// them onto `[n]^{m-|K|}` in its own colexicographic order.
    pub fn indices(&self, space: &CoordSpace) -> Vec<usize> {
        space
            .tuples()
            .enumerate()
            .filter(|(_, t)| self.contains(t))
            .map(|(i, _)| i)
            .collect()
    }
}

/// The code that puncturing `spec` onto `H` yields.
pub fn punctured_spec(spec: &CodeSpec, h: &DirectProductSubset) -> Result<CodeSpec> {
    let k = h.size_of_k();
    if k >= spec.m() {
        return Err(Error::Precondition(format!(
            "|K| = {k} must be smaller than m = {}",
            spec.m()
        )));
    }
    if let Some(&(pos, _)) = h.fixed.last() {
        if pos >= spec.m() {
            return Err(Error::OutOfRange {
                index: pos,
                len: spec.m(),
            });
        }
    }
    match spec.family() {
        Family::DualBerman if spec.r() <= spec.m() - k => spec.with(spec.r(), spec.m() - k),
        Family::Berman if spec.r() >= k => spec.with(spec.r() - k, spec.m() - k),
        Family::DualBerman => Err(Error::Precondition(format!(
            "puncturing {spec} needs r <= m - |K| = {}",
            spec.m() - k
        ))),
        Family::Berman => Err(Error::Precondition(format!("puncturing {spec} needs r >= |K| = {k}"))),
    }
}

/// A generator (in reduced row-echelon form) of `P_H(code)`.
pub fn puncture_code(spec: &CodeSpec, h: &DirectProductSubset) -> Result<BitMatrix> {
    if h.size_of_k() > 0 {
        punctured_spec(spec, h)?;
    }
    let cols = h.indices(&spec.space());
    Ok(generator_matrix(spec).select_columns(&cols)?.row_basis())
}

/// Permutations of `[n]^m` known to preserve both code families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordinateAutomorphism {
    /// `(i_0,…,i_{m-1}) -> (σ_0(i_0),…,σ_{m-1}(i_{m-1}))`; `sigmas[k][x] = σ_k(x)`.
    PerCoordinate(Vec<Vec<usize>>),
    /// `(i_0,…,i_{m-1}) -> (i_{γ(0)},…,i_{γ(m-1)})`; `gamma[k] = γ(k)`.
    PositionPermutation(Vec<usize>),
}

fn is_permutation(p: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    p.len() == size && p.iter().all(|&x| x < size && !std::mem::replace(&mut seen[x], true))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

impl CoordinateAutomorphism {
    pub fn identity(n: usize, m: usize) -> Self {
        Self::PerCoordinate(vec![(0..n).collect(); m])
    }

    /// The per-coordinate map swapping `i_k` and `j_k` in every position,
    /// which sends coordinate `i` to coordinate `j`.
    pub fn moving(n: usize, i: &CoordTuple, j: &CoordTuple) -> Result<Self> {
        if i.m() != j.m() {
            return Err(Error::LengthMismatch {
                expected: i.m(),
                actual: j.m(),
            });
        }
        let sigmas = i
            .entries()
            .iter()
            .zip(j.entries())
            .map(|(&a, &b)| {
                let mut s: Vec<usize> = (0..n).collect();
                s.swap(a, b);
                s
            })
            .collect();
        let a = Self::PerCoordinate(sigmas);
        a.validate(n, i.m())?;
        Ok(a)
    }

    pub fn validate(&self, n: usize, m: usize) -> Result<()> {
        let ok = match self {
            Self::PerCoordinate(s) => s.len() == m && s.iter().all(|p| is_permutation(p, n)),
            Self::PositionPermutation(g) => is_permutation(g, m),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!(
                "not a valid automorphism of [{n}]^{m}: {self:?}"
            )))
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::PerCoordinate(s) => Self::PerCoordinate(s.iter().map(|p| invert(p)).collect()),
            Self::PositionPermutation(g) => Self::PositionPermutation(invert(g)),
        }
    }

    pub fn map_tuple(&self, t: &CoordTuple) -> CoordTuple {
        let e = t.entries();
        CoordTuple(match self {
            Self::PerCoordinate(s) => e.iter().zip(s).map(|(&x, p)| p[x]).collect(),
            Self::PositionPermutation(g) => g.iter().map(|&k| e[k]).collect(),
        })
    }

    /// `v'` with `v'_{a(i)} = v_i`.
    pub fn apply(&self, v: &BitVector, n: usize, m: usize) -> Result<BitVector> {
        self.validate(n, m)?;
        let space = CoordSpace::new(n, m)?;
        if v.len() != space.size() {
            return Err(Error::LengthMismatch {
                expected: space.size(),
                actual: v.len(),
            });
        }
        let mut out = BitVector::zeros(v.len());
        for i in v.iter_ones() {
            let image = self.map_tuple(&space.tuple_unchecked(i));
            out.set(space.index(&image)?, true);
        }
        Ok(out)
    }
}

/// The weight class of `i`: every tuple of the same weight. This is contained
/// in the orbit of `i` under automorphisms fixing coordinate `0`.
pub fn weight_class_orbit(i: &CoordTuple, n: usize, m: usize) -> Result<Vec<CoordTuple>> {
    let space = CoordSpace::new(n, m)?;
    space.index(i)?;
    let w = i.weight();
    if w == 0 {
        return Err(Error::Precondition(
            "the zero tuple is fixed by every automorphism here".into(),
        ));
    }
    Ok(space.tuples().filter(|t| t.weight() == w).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleTransitivityCheck {
    /// `(dmin - 1)(dmin⊥ - 1)`.
    pub product: BigUint,
    /// `N - 1`.
    pub bound: BigUint,
    /// `false` certifies the code is not doubly transitive.
    pub passes: bool,
}

pub fn double_transitivity_necessary_check(spec: &CodeSpec) -> Result<DoubleTransitivityCheck> {
    if spec.r() == 0 || spec.r() >= spec.m() {
        return Err(Error::Precondition(format!(
            "{spec} or its dual is trivial; need 1 <= r <= m-1"
        )));
    }
    let p = parameters(spec.n(), spec.r(), spec.m(), spec.family());
    let q = parameters(spec.n(), spec.r(), spec.m(), spec.family().dual());
    let one = BigUint::one();
    let d = p.min_distance.expect("nontrivial code");
    let d_dual = q.min_distance.expect("nontrivial dual");
    let product = (d - &one) * (d_dual - &one);
    let bound = p.length - one;
    let passes = product >= bound;
    Ok(DoubleTransitivityCheck { product, bound, passes })
}
