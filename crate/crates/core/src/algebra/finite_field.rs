use std::hash::Hash;

use super::laurent::{mod_inv, mod_pow};
use crate::error::{Error, Result};

/// Deterministic primality test, adequate for the moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Miller–Rabin with a base set that is exact for all 64-bit n.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

/// Dense matrix over `F_p`, row major, entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMatrix {
    pub fn from_entries(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if p >= 1 << 32 {
            return Err(Error::InvalidArgument(format!("modulus {p} too large")));
        }
        assert_eq!(data.len(), rows * cols, "entry count");
        let data = data.into_iter().map(|x| x % p).collect();
        Ok(Self { p, rows, cols, data })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self> {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self::from_entries(p, n, n, data)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let p = self.p;
        let mut data = vec![0u64; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let out = &mut data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in out.iter_mut().zip(row) {
                    // p < 2^32 keeps a*b + o below 2^64
                    *o = (*o + a * b) % p;
                }
            }
        }
        Self {
            p,
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let p = self.p;
        Self {
            data: self.data.iter().map(|&x| x * (c % p) % p).collect(),
            ..self.clone()
        }
    }

    pub fn pow_biguint(&self, e: &num_bigint::BigUint) -> Self {
        let mut acc = Self::identity(self.p, self.rows).unwrap();
        for bit in (0..e.bits()).rev() {
            acc = acc.mul(&acc);
            if e.bit(bit) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Row echelon form in place; returns the rank.
    fn eliminate(&mut self) -> usize {
        let p = self.p;
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(rank * self.cols + j, piv * self.cols + j);
            }
            let inv = mod_inv(self.get(rank, col), p);
            for j in 0..self.cols {
                let v = self.get(rank, j) * inv % p;
                self.set(rank, j, v);
            }
            for r in 0..self.rows {
                let f = self.get(r, col);
                if r != rank && f != 0 {
                    for j in 0..self.cols {
                        let v = (self.get(r, j) + p - f * self.get(rank, j) % p) % p;
                        self.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = vec![0u64; n * 2 * n];
        for i in 0..n {
            for j in 0..n {
                aug[i * 2 * n + j] = self.get(i, j);
            }
            aug[i * 2 * n + n + i] = 1;
        }
        let mut a = Self {
            p: self.p,
            rows: n,
            cols: 2 * n,
            data: aug,
        };
        a.eliminate();
        let mut inv = vec![0u64; n * n];
        for i in 0..n {
            if a.get(i, i) != 1 {
                return None;
            }
            for j in 0..n {
                inv[i * n + j] = a.get(i, n + j);
            }
        }
        Some(Self {
            p: self.p,
            rows: n,
            cols: n,
            data: inv,
        })
    }

    /// Scalar multiple with the first nonzero entry equal to 1.
    pub fn projective_normal_form(&self) -> Self {
        match self.data.iter().find(|&&x| x != 0) {
            Some(&lead) => self.scale(mod_inv(lead, self.p)),
            None => self.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(!is_prime(561));
    }

    #[test]
    fn inverse_round_trip() {
        let m = FpMatrix::from_entries(7, 2, 2, vec![2, 3, 1, 4]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let singular = FpMatrix::from_entries(7, 2, 2, vec![1, 2, 2, 4]).unwrap();
        assert!(singular.inverse().is_none());
        assert_eq!(singular.rank(), 1);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(FpMatrix::identity(9, 2).is_err());
    }

    #[test]
    fn big_exponent_power() {
        let m = FpMatrix::from_entries(5, 1, 1, vec![2]).unwrap();
        // 2 has order 4 mod 5
        let e = num_bigint::BigUint::from(4u32) * num_bigint::BigUint::from(1u64 << 40);
        assert!(m.pow_biguint(&e).is_identity());
        let e3 = num_bigint::BigUint::from(3u32);
        assert_eq!(m.pow_biguint(&e3).get(0, 0), 3);
    }
}
