use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::laurent::mod_pow;
use crate::algebra::{CyclotomicNumber, FpMatrix};
use crate::error::{Error, Result};

/// Matrices with exact entries, as used by the closure enumeration.
pub trait ExactMatrix: Clone + Send + Sync {
    type Key: Hash + Eq + Send + Sync;

    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    /// Identity of size `cols()` over the same ring.
    fn identity_like(&self) -> Self;
    fn product(&self, rhs: &Self) -> Self;
    /// Canonical bytes of the matrix; with `projective`, equal for matrices
    /// that differ by a root-of-unity scalar.
    fn key(&self, projective: bool) -> Self::Key;
}

impl ExactMatrix for FpMatrix {
    type Key = FpMatrix;

    fn rows(&self) -> usize {
        FpMatrix::rows(self)
    }

    fn cols(&self) -> usize {
        FpMatrix::cols(self)
    }

    fn identity_like(&self) -> Self {
        FpMatrix::identity(self.modulus(), FpMatrix::cols(self)).expect("modulus already checked")
    }

    fn product(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn key(&self, projective: bool) -> FpMatrix {
        if projective {
            self.projective_normal_form()
        } else {
            self.clone()
        }
    }
}

/// Dense matrix over `Z[ζ_N]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CycMatrix {
    order: u32,
    rows: usize,
    cols: usize,
    data: Vec<CyclotomicNumber>,
}

impl CycMatrix {
    pub fn zeros(order: u32, rows: usize, cols: usize) -> Self {
        Self {
            order,
            rows,
            cols,
            data: vec![CyclotomicNumber::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        let mut m = Self::zeros(order, n, n);
        for i in 0..n {
            m.data[i * n + i] = CyclotomicNumber::one(order);
        }
        m
    }

    pub fn from_rows(order: u32, rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        if rows.iter().flatten().any(|x| x.order() != order) {
            return Err(Error::InvalidArgument(format!("entries must have order {order}")));
        }
        Ok(Self {
            order,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        let mut out = Self::zeros(self.order, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    fn mul_zeta_pow(&self, k: i64) -> Self {
        Self {
            data: self.data.iter().map(|x| x.mul_zeta_pow(k)).collect(),
            ..self.clone()
        }
    }

    fn neg(&self) -> Self {
        Self {
            data: self.data.iter().map(|x| -x.clone()).collect(),
            ..self.clone()
        }
    }

    /// Multiple by a root of unity whose first nonzero entry has the
    /// lexicographically least coefficient vector.
    pub fn projective_normal_form(&self) -> Self {
        let Some(lead) = self.data.iter().find(|x| !x.is_zero()) else {
            return self.clone();
        };
        let n = self.order as i64;
        let mut best: Option<(Vec<BigInt>, i64, bool)> = None;
        for negate in [false, true] {
            // for even N, -1 is already a power of ζ
            if negate && n % 2 == 0 {
                continue;
            }
            for k in 0..n {
                let x = lead.mul_zeta_pow(k);
                let x = if negate { -x } else { x };
                let key = x.coeffs().to_vec();
                if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                    best = Some((key, k, negate));
                }
            }
        }
        let (_, k, negate) = best.unwrap();
        let m = self.mul_zeta_pow(k);
        if negate {
            m.neg()
        } else {
            m
        }
    }

    /// Image under `ζ ↦ root` in `F_p`; `root` must be a primitive `N`-th
    /// root of unity mod `p`.
    pub fn reduce_mod(&self, p: u64, root: u64) -> Result<FpMatrix> {
        let powers: Vec<u64> = (0..self.order as u64).map(|j| mod_pow(root, j, p)).collect();
        let pb = BigInt::from(p);
        let data = self
            .data
            .iter()
            .map(|x| {
                x.coeffs().iter().enumerate().fold(0u64, |acc, (j, c)| {
                    if c.is_zero() {
                        return acc;
                    }
                    let c = c.mod_floor(&pb).to_u64().unwrap();
                    (acc + c * powers[j] % p) % p
                })
            })
            .collect();
        FpMatrix::from_entries(p, self.rows, self.cols, data)
    }
}

impl ExactMatrix for CycMatrix {
    type Key = Vec<BigInt>;

    fn rows(&self) -> usize {
        self.rows
    }

    fn cols(&self) -> usize {
        self.cols
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.order, self.cols)
    }

    fn product(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }

    fn key(&self, projective: bool) -> Vec<BigInt> {
        let m = if projective {
            self.projective_normal_form()
        } else {
            self.clone()
        };
        m.data.iter().flat_map(|x| x.coeffs().iter().cloned()).collect()
    }
}
