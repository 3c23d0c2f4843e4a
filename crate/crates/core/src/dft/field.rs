//! Binary extension fields `GF(2^k)` in a polynomial basis.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest supported extension degree; log tables have `2^k` entries.
pub const MAX_DEGREE: u32 = 24;

/// Carry-less product of two polynomials over GF(2).
pub fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= (a as u128) << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

fn degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

/// `a mod p` for polynomials over GF(2).
pub fn poly_mod(mut a: u128, p: u64) -> u64 {
    let dp = degree(p as u128);
    while a != 0 && degree(a) >= dp {
        a ^= (p as u128) << (degree(a) - dp);
    }
    a as u64
}

pub fn is_irreducible(p: u64) -> bool {
    let d = degree(p as u128);
    if d < 1 {
        return false;
    }
    // Trial division by every polynomial of degree 1..=d/2.
    (2u64..1 << (d / 2 + 1)).all(|q| poly_mod(p as u128, q) != 0)
}

/// The lexicographically smallest irreducible polynomial of degree `k`.
pub fn smallest_irreducible(k: u32) -> u64 {
    ((1u64 << k)..(1u64 << (k + 1)))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

/// Multiplicative order of 2 modulo odd `m > 1`.
pub fn order_of_two(m: usize) -> usize {
    let mut x = 2 % m;
    let mut t = 1;
    while x != 1 {
        x = x * 2 % m;
        t += 1;
    }
    t
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `GF(2^k)` with a fixed primitive element `β` and its log/antilog tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2k {
    k: u32,
    poly: u64,
    primitive: u64,
    exp: Vec<u64>,
    log: Vec<u32>,
}

impl Gf2k {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::TooLarge(format!(
                "extension degree {k} outside 1..={MAX_DEGREE}"
            )));
        }
        let poly = smallest_irreducible(k);
        let order = (1u64 << k) - 1;
        let factors = prime_factors(order);
        let mul = |a: u64, b: u64| poly_mod(clmul(a, b), poly);
        let pow = |mut base: u64, mut e: u64| {
            let mut acc = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            acc
        };
        let primitive = if k == 1 {
            1
        } else {
            (2u64..=order)
                .find(|&g| factors.iter().all(|&f| pow(g, order / f) != 1))
                .expect("the multiplicative group is cyclic")
        };

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; 1 << k];
        let mut x = 1u64;
        for e in 0..order {
            exp.push(x);
            log[x as usize] = e as u32;
            x = mul(x, primitive);
        }
        Ok(Self {
            k,
            poly,
            primitive,
            exp,
            log,
        })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Defining polynomial, bit `t` holding the coefficient of `x^t`.
    pub fn modulus(&self) -> u64 {
        self.poly
    }

    pub fn primitive(&self) -> u64 {
        self.primitive
    }

    /// `2^k - 1`.
    pub fn group_order(&self) -> u64 {
        self.exp.len() as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    /// Multiplication by carry-less product and reduction.
    pub fn mul_reduce(&self, a: u64, b: u64) -> u64 {
        poly_mod(clmul(a, b), self.poly)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let q = self.group_order();
        self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % q) as usize]
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::Precondition("zero has no inverse".into()));
        }
        let q = self.group_order();
        Ok(self.exp[((q - self.log[a as usize] as u64) % q) as usize])
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let q = self.group_order();
        self.exp[((self.log[a as usize] as u64 * (e % q)) % q) as usize]
    }

    /// `β^e` for any integer `e`.
    pub fn beta_pow(&self, e: i64) -> u64 {
        self.exp[e.rem_euclid(self.group_order() as i64) as usize]
    }

    pub fn log(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.log[a as usize] as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> Option<u64> {
        let q = self.group_order();
        self.log(a).map(|l| q / l.gcd(&q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        assert_eq!(smallest_irreducible(2), 0b111);
        assert_eq!(smallest_irreducible(3), 0b1011);
        assert_eq!(smallest_irreducible(4), 0b10011);
        assert!(!is_irreducible(0b101));
    }

    #[test]
    fn orders_of_two() {
        assert_eq!(order_of_two(3), 2);
        assert_eq!(order_of_two(7), 3);
        assert_eq!(order_of_two(15), 4);
        assert_eq!(order_of_two(9), 6);
    }

    #[test]
    fn table_and_reduction_agree() {
        for k in 1..=6 {
            let f = Gf2k::new(k).unwrap();
            let size = 1u64 << k;
            assert_eq!(f.order(f.primitive()), Some(size - 1));
            for a in 0..size {
                for b in 0..size {
                    assert_eq!(f.mul(a, b), f.mul_reduce(a, b));
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = Gf2k::new(5).unwrap();
        for a in 0..32 {
            for b in 0..32 {
                assert_eq!(f.pow(a ^ b, 2), f.pow(a, 2) ^ f.pow(b, 2));
            }
        }
    }
}
