//! Arithmetic modulo a prime below `2^61`.

use crate::error::{Error, Result};

/// Largest modulus accepted: the Mersenne prime `2^61 - 1`.
pub const MAX_PRIME: u64 = (1 << 61) - 1;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly above `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut p = n + 1;
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// The field of integers modulo a prime `p <= 2^61 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::invalid(format!("modulus {p} exceeds 2^61 - 1")));
        }
        if !is_prime(p) {
            return Err(Error::invalid(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b % self.p)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    /// Rank of a matrix given as rows, by Gaussian elimination.
    pub fn rank(&self, rows: &[Vec<u64>]) -> usize {
        let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| self.reduce(x)).collect()).collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, pivot);
            let inv = self.inv(a[rank][c]);
            for x in a[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..a.len() {
                if r != rank && a[r][c] != 0 {
                    let factor = a[r][c];
                    let (pivot_row, row) = if r < rank {
                        let (lo, hi) = a.split_at_mut(rank);
                        (&hi[0], &mut lo[r])
                    } else {
                        let (lo, hi) = a.split_at_mut(r);
                        (&lo[rank], &mut hi[0])
                    };
                    for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                        *x = self.sub(*x, self.mul(factor, y));
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}
