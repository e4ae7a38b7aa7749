//! Reduced Burau representation and the classical invariants read off it:
//! Alexander polynomial, determinant, `d_p = dim H₁(M_L; F_p)` of the double
//! branched cover, and the Arf invariant of knots.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{corank_mod_p, finite_field, FpMatrix, IntMatrix, LaurentPoly};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// Square matrix over `Z[t, t⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn identity(size: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = LaurentPoly::one();
        }
        Self { size, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        Self {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.size + j]
    }

    fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.size + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size);
        let n = self.size;
        let mut out = Self {
            size: n,
            entries: vec![LaurentPoly::zero(); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            size: self.size,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> LaurentPoly {
        let n = self.size;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut m = self.entries.clone();
        let mut sign = 1;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return LaurentPoly::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, r * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[i * n + j] * &m[k * n + k]) - &(&m[i * n + k] * &m[k * n + j]);
                    m[i * n + j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k * n + k].clone();
        }
        let det = m[n * n - 1].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Entrywise evaluation at `t = ±1`.
    pub fn eval_unit(&self, t: i64) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).eval(t)).collect())
            .collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, 0)
        } else {
            IntMatrix::from_rows(&rows)
        }
    }

    pub fn eval_mod(&self, p: u64, t0: u64) -> Result<FpMatrix> {
        let data = self.entries.iter().map(|e| e.eval_mod(p, t0)).collect();
        FpMatrix::from_entries(p, self.size, self.size, data)
    }
}

/// Reduced Burau matrix of one letter on `n` strands.
///
/// `σ_i` differs from the identity only in column `i-1` (0-based), which is
/// `(t, -t, 1)` in rows `i-2, i-1, i` (truncated at the edges). The inverse
/// column is `(1, -t⁻¹, t⁻¹)`.
pub fn burau_generator(n: usize, letter: i32) -> LaurentMatrix {
    let m = n - 1;
    let i = letter.unsigned_abs() as usize;
    let c = i - 1;
    let mut g = LaurentMatrix::identity(m);
    let (above, diag, below) = if letter > 0 {
        (LaurentPoly::t(), LaurentPoly::monomial(-1, 1), LaurentPoly::one())
    } else {
        (
            LaurentPoly::one(),
            LaurentPoly::monomial(-1, -1),
            LaurentPoly::monomial(1, -1),
        )
    };
    g.set(c, c, diag);
    if c >= 1 {
        g.set(c - 1, c, above);
    }
    if c + 1 < m {
        g.set(c + 1, c, below);
    }
    g
}

pub fn reduced_burau(b: &BraidWord) -> Result<LaurentMatrix> {
    let n = b.strands();
    if n < 2 {
        return Err(Error::InvalidArgument(
            "reduced Burau needs at least two strands".into(),
        ));
    }
    Ok(b.letters().iter().fold(LaurentMatrix::identity(n - 1), |acc, &l| {
        acc.mul(&burau_generator(n, l))
    }))
}

/// Stabilizes until the strand count is at least `min` (and odd, if asked).
fn stabilized(b: &BraidWord, min: usize, odd: bool) -> BraidWord {
    let mut b = b.clone();
    while b.strands() < min || (odd && b.strands().is_multiple_of(2)) {
        b = b.stabilize(true);
    }
    b
}

/// Alexander polynomial of the closure, canonicalized up to `±t^k` (lowest
/// exponent 0, positive constant term). Split closures give zero.
pub fn alexander_poly(b: &BraidWord) -> Result<LaurentPoly> {
    let b = stabilized(b, 2, false);
    let n = b.strands();
    let burau = reduced_burau(&b)?;
    let det = LaurentMatrix::identity(n - 1).sub(&burau).determinant();
    let geometric = LaurentPoly::new(0, vec![BigInt::from(1); n]);
    let delta = det
        .div_exact(&geometric)
        .ok_or_else(|| Error::Unsupported("Burau determinant not divisible by [n]_t".into()))?;
    Ok(delta.canonical())
}

/// `|Δ(-1)|`; zero for split links.
pub fn determinant(b: &BraidWord) -> Result<BigInt> {
    Ok(alexander_poly(b)?.eval(-1).abs())
}

/// Integer presentation matrix of `H₁` of the double branched cover:
/// `B(-1) - I` for the reduced Burau matrix `B` of an odd-strand
/// stabilization of `b`.
///
/// With an odd number of strands the branched double cover of the disk has
/// connected boundary, so the monodromy's action on its first homology,
/// which is `B(-1)`, presents `H₁` of the closed cover directly.
pub fn double_cover_presentation(b: &BraidWord) -> IntMatrix {
    let b = stabilized(b, 3, true);
    let burau = reduced_burau(&b).expect("at least three strands");
    let m = burau.eval_unit(-1);
    m.sub(&IntMatrix::identity(m.rows()))
}

/// `d_p = dim_{F_p} H₁(M_L; F_p)` for the double branched cover `M_L`.
pub fn double_cover_homology(b: &BraidWord, p: u64) -> Result<usize> {
    finite_field::require_prime(p)?;
    corank_mod_p(&double_cover_presentation(b), p)
}

/// Arf invariant of a knot from its determinant mod 8.
pub fn arf_knot(b: &BraidWord) -> Result<u8> {
    let c = b.components();
    if c != 1 {
        return Err(Error::Unsupported(format!(
            "Arf invariant is only computed for knots; closure has {c} components"
        )));
    }
    let det = determinant(b)?;
    let r = (det % BigInt::from(8)).to_string();
    match r.as_str() {
        "1" | "7" => Ok(0),
        "3" | "5" => Ok(1),
        _ => Err(Error::Unsupported(format!("knot determinant {r} mod 8 is even"))),
    }
}

/// Reduced Burau matrix evaluated at `t = t0` over `F_p`.
pub fn burau_mod_p(b: &BraidWord, p: u64, t0: u64) -> Result<FpMatrix> {
    finite_field::require_prime(p)?;
    if t0.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!("t0 = {t0} vanishes mod {p}")));
    }
    if b.strands() < 2 {
        return Err(Error::InvalidArgument(
            "reduced Burau needs at least two strands".into(),
        ));
    }
    let n = b.strands();
    let mut acc = FpMatrix::identity(p, n - 1)?;
    for &l in b.letters() {
        acc = acc.mul(&burau_generator(n, l).eval_mod(p, t0)?);
    }
    Ok(acc)
}
