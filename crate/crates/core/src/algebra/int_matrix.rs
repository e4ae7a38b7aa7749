use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::finite_field::FpMatrix;
use crate::error::Result;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Invariant factors `d_1 | d_2 | … | d_r` (all positive) and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().map(Into::into).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn to_fp(&self, p: u64) -> Result<FpMatrix> {
        let pb = BigInt::from(p);
        let entries = self
            .data
            .iter()
            .map(|x| u64::try_from(x.mod_floor(&pb)).unwrap())
            .collect();
        FpMatrix::from_entries(p, self.rows, self.cols, entries)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= v;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] -= v;
        }
    }

    /// Smith normal form by unimodular row and column operations.
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut m = self.clone();
        let mut factors = Vec::new();
        let mut t = 0;
        while t < m.rows.min(m.cols) {
            // pivot of least absolute value in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    let v = &m[(i, j)];
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap_rows(t, pi);
            m.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..m.rows {
                    if m[(i, t)].is_zero() {
                        continue;
                    }
                    let q = m[(i, t)].div_floor(&m[(t, t)]);
                    m.row_axpy(i, t, &q);
                    if !m[(i, t)].is_zero() {
                        m.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..m.cols {
                    if m[(t, j)].is_zero() {
                        continue;
                    }
                    let q = m[(t, j)].div_floor(&m[(t, t)]);
                    m.col_axpy(j, t, &q);
                    if !m[(t, j)].is_zero() {
                        m.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                // the pivot must divide the whole trailing block
                let mut offender = None;
                'scan: for i in t + 1..m.rows {
                    for j in t + 1..m.cols {
                        if !m[(i, j)].is_multiple_of(&m[(t, t)]) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        m.row_axpy(t, i, &minus_one);
                    }
                    None => break,
                }
            }
            factors.push(m[(t, t)].abs());
            t += 1;
        }
        SmithForm {
            rank: factors.len(),
            factors,
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Dimension over `F_p` of the kernel of `m`, i.e. `cols - rank_p(m)`.
pub fn corank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    let fp = m.to_fp(p)?;
    Ok(m.cols() - fp.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_examples() {
        let s = IntMatrix::identity(3).smith_normal_form();
        assert_eq!(s.factors, big(&[1, 1, 1]));
        assert_eq!(s.rank, 3);

        let s = IntMatrix::zeros(2, 2).smith_normal_form();
        assert!(s.factors.is_empty());
        assert_eq!(s.rank, 0);

        let s = IntMatrix::from_rows(&[vec![3]]).smith_normal_form();
        assert_eq!(s.factors, big(&[3]));

        let s = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]).smith_normal_form();
        assert_eq!(s.factors, big(&[1, 6]));

        let s = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).smith_normal_form();
        assert_eq!(s.factors, big(&[2, 6, 12]));
    }

    #[test]
    fn corank_examples() {
        let m = IntMatrix::from_rows(&[vec![3]]);
        assert_eq!(corank_mod_p(&m, 3).unwrap(), 1);
        assert_eq!(corank_mod_p(&m, 5).unwrap(), 0);
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 6]]);
        assert_eq!(corank_mod_p(&m, 2).unwrap(), 2);
        assert!(matches!(corank_mod_p(&m, 4), Err(Error::InvalidArgument(_))));
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(-6i64..7, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
                IntMatrix::from_rows(&rows)
            })
        })
    }

    /// Independent Gaussian elimination over F_p on i64 entries.
    fn rank_mod_p_oracle(m: &IntMatrix, p: i64) -> usize {
        let mut a: Vec<Vec<i64>> = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| i64::try_from(&m[(i, j)]).unwrap().rem_euclid(p))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = (1..p).find(|x| x * a[rank][col] % p == 1).unwrap();
            let pivot = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let f = row[col] * inv % p;
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x = (*x - f * y).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn factors_form_divisibility_chain(m in arb_matrix()) {
            let s = m.smith_normal_form();
            for w in s.factors.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert!(s.factors.iter().all(|d| d.is_positive()));
        }

        #[test]
        fn invariant_under_unimodular_moves(m in arb_matrix(), ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..4, any::<bool>()), 0..8)) {
            let mut n = m.clone();
            for (a, b, q, on_rows) in ops {
                if on_rows {
                    let (a, b) = (a % n.rows(), b % n.rows());
                    if a != b { n.row_axpy(a, b, &BigInt::from(q)); } else { n.swap_rows(0, a); }
                } else {
                    let (a, b) = (a % n.cols(), b % n.cols());
                    if a != b { n.col_axpy(a, b, &BigInt::from(q)); } else { n.swap_cols(0, a); }
                }
            }
            prop_assert_eq!(m.smith_normal_form(), n.smith_normal_form());
        }

        #[test]
        fn corank_matches_smith_and_elimination(m in arb_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let s = m.smith_normal_form();
            let divisible = s.factors.iter().filter(|d| d.is_multiple_of(&BigInt::from(p))).count();
            let corank = corank_mod_p(&m, p).unwrap();
            prop_assert_eq!(corank, divisible + (m.cols() - s.rank));
            prop_assert_eq!(corank, m.cols() - rank_mod_p_oracle(&m, p as i64));
        }
    }
}
