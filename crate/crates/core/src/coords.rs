//! Coordinates of length-`n^m` words as tuples in `[n]^m`.
//!
//! Tuples are ordered colexicographically: the last entry is the most
//! significant digit, so `index(i) = i_0 + n*i_1 + ... + n^{m-1}*i_{m-1}`.
//! Under this order the `l`-th block of `n^{m-1}` consecutive coordinates
//! holds exactly the tuples with `i_{m-1} = l`.

use crate::error::{Error, Result};

/// An element of `[n]^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordTuple(pub Vec<usize>);

impl CoordTuple {
    pub fn new(entries: Vec<usize>) -> Self {
        Self(entries)
    }

    pub fn zero(m: usize) -> Self {
        Self(vec![0; m])
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    /// Positions `k` with `i_k != 0`.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(k, _)| k)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    /// `self ⪯ other`: every entry of `self` is either 0 or equal to the
    /// corresponding entry of `other`.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        debug_assert_eq!(self.m(), other.m());
        self.0.iter().zip(&other.0).all(|(&j, &i)| j == 0 || j == i)
    }
}

impl From<Vec<usize>> for CoordTuple {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// The coordinate set `[n]^m` with its colexicographic indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoordSpace {
    n: usize,
    m: usize,
    size: usize,
}

impl CoordSpace {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameters(format!("n must be >= 2, got {n}")));
        }
        let size = u32::try_from(m)
            .ok()
            .and_then(|e| n.checked_pow(e))
            .ok_or_else(|| Error::TooLarge(format!("{n}^{m} coordinates")))?;
        Ok(Self { n, m, size })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `n^m`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn index(&self, tuple: &CoordTuple) -> Result<usize> {
        if tuple.m() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                actual: tuple.m(),
            });
        }
        let mut idx = 0;
        for &x in tuple.0.iter().rev() {
            if x >= self.n {
                return Err(Error::OutOfRange { index: x, len: self.n });
            }
            idx = idx * self.n + x;
        }
        Ok(idx)
    }

    pub fn tuple(&self, index: usize) -> Result<CoordTuple> {
        if index >= self.size {
            return Err(Error::OutOfRange { index, len: self.size });
        }
        Ok(self.tuple_unchecked(index))
    }

    pub(crate) fn tuple_unchecked(&self, mut index: usize) -> CoordTuple {
        let mut entries = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            entries.push(index % self.n);
            index /= self.n;
        }
        CoordTuple(entries)
    }

    /// All tuples in ascending colexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = CoordTuple> + '_ {
        (0..self.size).map(|i| self.tuple_unchecked(i))
    }

    /// Weight of the tuple at `index`, without materializing it.
    pub fn weight_of(&self, mut index: usize) -> usize {
        let mut w = 0;
        for _ in 0..self.m {
            if !index.is_multiple_of(self.n) {
                w += 1;
            }
            index /= self.n;
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_indices() {
        let s = CoordSpace::new(3, 2).unwrap();
        assert_eq!(s.index(&vec![0, 0].into()).unwrap(), 0);
        assert_eq!(s.index(&vec![2, 0].into()).unwrap(), 2);
        assert_eq!(s.index(&vec![0, 1].into()).unwrap(), 3);
        assert!(s.index(&vec![3, 0].into()).is_err());
        assert!(s.tuple(9).is_err());
    }

    #[test]
    fn index_round_trip() {
        let s = CoordSpace::new(3, 4).unwrap();
        for t in s.tuples() {
            let i = s.index(&t).unwrap();
            assert_eq!(s.tuple(i).unwrap(), t);
            assert_eq!(s.weight_of(i), t.weight());
        }
    }

    #[test]
    fn containment_counts() {
        let s = CoordSpace::new(4, 3).unwrap();
        let all: Vec<_> = s.tuples().collect();
        for i in &all {
            let below = all.iter().filter(|j| j.is_contained_in(i)).count();
            let above = all.iter().filter(|j| i.is_contained_in(j)).count();
            assert_eq!(below, 1 << i.weight());
            assert_eq!(above, 4usize.pow((3 - i.weight()) as u32));
        }
    }
}
