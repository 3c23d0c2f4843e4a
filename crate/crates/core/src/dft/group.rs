//! Odd-order abelian groups `G = Z_{m_0} × ... × Z_{m_{s-1}}` and `G^m`.
//!
//! An element of `G` is stored as the mixed-radix integer
//! `g_0 + m_0 g_1 + m_0 m_1 g_2 + ...`, and an element of `G^m` as the
//! colexicographic index of its `m` components, so `G^m` shares its indexing
//! with the coordinates `[|G|]^m` of the Berman codes.

use crate::coords::{CoordSpace, CoordTuple};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Largest supported `|G^m|`.
pub const MAX_GROUP_SIZE: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Vec<usize>,
    m: usize,
    space: CoordSpace,
}

impl GroupSpec {
    pub fn new(orders: Vec<usize>, m: usize) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("at least one cyclic factor is required".into()));
        }
        if let Some(&bad) = orders.iter().find(|&&o| o < 3 || o % 2 == 0) {
            return Err(Error::InvalidGroup(format!(
                "cyclic orders must be odd and >= 3, got {bad}"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParameters("m must be >= 1".into()));
        }
        let order = orders
            .iter()
            .try_fold(1usize, |acc, &o| acc.checked_mul(o))
            .ok_or_else(|| Error::TooLarge("group order overflows".into()))?;
        let space = CoordSpace::new(order, m)?;
        if space.size() > MAX_GROUP_SIZE {
            return Err(Error::TooLarge(format!(
                "|G^m| = {} exceeds {MAX_GROUP_SIZE}",
                space.size()
            )));
        }
        Ok(Self { orders, m, space })
    }

    pub fn cyclic(p: usize, m: usize) -> Result<Self> {
        Self::new(vec![p], m)
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `|G|`.
    pub fn group_order(&self) -> usize {
        self.space.n()
    }

    /// `|G^m|`.
    pub fn size(&self) -> usize {
        self.space.size()
    }

    pub fn space(&self) -> CoordSpace {
        self.space
    }

    /// Components `(g_0, ..., g_{s-1})` of an element of `G`.
    pub fn components(&self, mut g: usize) -> Vec<usize> {
        self.orders
            .iter()
            .map(|&o| {
                let c = g % o;
                g /= o;
                c
            })
            .collect()
    }

    pub fn from_components(&self, c: &[usize]) -> usize {
        c.iter()
            .zip(&self.orders)
            .rev()
            .fold(0, |acc, (&x, &o)| acc * o + x % o)
    }

    fn map_g(&self, g: usize, f: impl Fn(usize, usize) -> usize) -> usize {
        let c: Vec<usize> = self
            .components(g)
            .into_iter()
            .zip(&self.orders)
            .map(|(x, &o)| f(x, o))
            .collect();
        self.from_components(&c)
    }

    /// `c·g` in `G`.
    pub fn scale_g(&self, g: usize, c: usize) -> usize {
        self.map_g(g, |x, o| x * c % o)
    }

    pub fn neg_g(&self, g: usize) -> usize {
        self.map_g(g, |x, o| (o - x) % o)
    }

    pub fn add_g(&self, a: usize, b: usize) -> usize {
        let cb = self.components(b);
        let c: Vec<usize> = self
            .components(a)
            .iter()
            .zip(&cb)
            .zip(&self.orders)
            .map(|((&x, &y), &o)| (x + y) % o)
            .collect();
        self.from_components(&c)
    }

    /// Per-coordinate elements of `j ∈ G^m`.
    pub fn element(&self, j: usize) -> CoordTuple {
        self.space.tuple_unchecked(j)
    }

    pub fn index(&self, t: &CoordTuple) -> Result<usize> {
        self.space.index(t)
    }

    fn map_each(&self, j: usize, f: impl Fn(usize, usize) -> usize) -> usize {
        let t: Vec<usize> = self
            .element(j)
            .0
            .into_iter()
            .enumerate()
            .map(|(k, g)| f(k, g))
            .collect();
        self.space.index(&CoordTuple(t)).expect("components stay in range")
    }

    pub fn scale(&self, j: usize, c: usize) -> usize {
        self.map_each(j, |_, g| self.scale_g(g, c))
    }

    pub fn double(&self, j: usize) -> usize {
        self.scale(j, 2)
    }

    pub fn neg(&self, j: usize) -> usize {
        self.map_each(j, |_, g| self.neg_g(g))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let tb = self.element(b);
        self.map_each(a, |k, g| self.add_g(g, tb.0[k]))
    }

    /// `π_k`: doubles coordinate `k` only.
    pub fn pi(&self, j: usize, k: usize) -> usize {
        self.map_each(j, |t, g| if t == k { self.scale_g(g, 2) } else { g })
    }

    /// Exchanges coordinates `k` and `k+1`.
    pub fn swap_adjacent(&self, j: usize, k: usize) -> usize {
        let mut t = self.element(j);
        t.0.swap(k, k + 1);
        self.space.index(&t).expect("components stay in range")
    }

    /// Number of nonzero coordinates of `j`.
    pub fn weight(&self, j: usize) -> usize {
        self.space.weight_of(j)
    }

    /// The group-algebra product in `F_2[G^m]`: `c_i = Σ_j a_j b_{i-j}`.
    pub fn convolve(&self, a: &BitVector, b: &BitVector) -> Result<BitVector> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut c = BitVector::zeros(self.size());
        for j in a.iter_ones() {
            c.xor_assign(&self.shift(b, j)?);
        }
        Ok(c)
    }

    /// Multiplication by the monomial `X^k`: `c_{i+k} = a_i`.
    pub fn shift(&self, a: &BitVector, k: usize) -> Result<BitVector> {
        self.permute(a, |i| self.add(i, k))
    }

    /// `c_i = a_{-i}`.
    pub fn reverse(&self, a: &BitVector) -> Result<BitVector> {
        self.permute(a, |i| self.neg(i))
    }

    /// `c_{f(i)} = a_i` for a bijection `f` of `G^m`.
    pub fn permute(&self, a: &BitVector, f: impl Fn(usize) -> usize) -> Result<BitVector> {
        self.check_len(a)?;
        let mut c = BitVector::zeros(self.size());
        for i in a.iter_ones() {
            c.set(f(i), true);
        }
        Ok(c)
    }

    pub(crate) fn check_len(&self, a: &BitVector) -> Result<()> {
        if a.len() != self.size() {
            return Err(Error::LengthMismatch {
                expected: self.size(),
                actual: a.len(),
            });
        }
        Ok(())
    }
}
