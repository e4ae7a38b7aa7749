use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer Laurent polynomial in `t`.
///
/// Normalized so that the lowest and highest stored coefficients are nonzero;
/// the zero polynomial has no coefficients and `low == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(0, vec![c.into()])
    }

    /// `c · t^e`
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        Self::new(e, vec![c.into()])
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds `Σ coeffs[i] t^{low+i}`.
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitutes `t ↦ t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self {
            low: -self.high(),
            coeffs,
        }
    }

    pub fn eval(&self, t: i64) -> BigInt {
        assert!(t != 0 || self.low >= 0, "negative power of zero");
        // Horner on the polynomial part, then the t^low factor.
        let tb = BigInt::from(t);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &tb + c;
        }
        match self.low.cmp(&0) {
            std::cmp::Ordering::Equal => acc,
            std::cmp::Ordering::Greater => acc * tb.pow(self.low as u32),
            std::cmp::Ordering::Less => {
                // only t = ±1 give integers here
                assert!(
                    t == 1 || t == -1,
                    "eval at t={t} of a Laurent polynomial with negative powers"
                );
                if t == -1 && (-self.low) % 2 == 1 {
                    -acc
                } else {
                    acc
                }
            }
        }
    }

    /// Evaluates at `t0` in `F_p` (`t0` invertible mod `p`).
    pub fn eval_mod(&self, p: u64, t0: u64) -> u64 {
        let t0 = t0 % p;
        let base = if self.low < 0 {
            mod_pow(mod_inv(t0, p), self.low.unsigned_abs(), p)
        } else {
            mod_pow(t0, self.low as u64, p)
        };
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            let c = c.mod_floor(&pb);
            let c: u64 = c.try_into().unwrap();
            acc = ((acc as u128 * t0 as u128 + c as u128) % p as u128) as u64;
        }
        ((acc as u128 * base as u128) % p as u128) as u64
    }

    /// Exact division; `None` when `divisor` does not divide `self` in
    /// `Z[t, t^{-1}]` or is zero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return None;
        }
        let dlead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        Some(Self::new(self.low - divisor.low, quot))
    }

    /// Representative up to units `±t^k`: lowest exponent 0 and positive
    /// lowest coefficient.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let sign = if self.coeffs[0].is_negative() { -1 } else { 1 };
        Self {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| c * sign).collect(),
        }
    }

    /// Whether `p(t)` and `p(t^{-1})` agree up to units.
    pub fn is_symmetric_up_to_units(&self) -> bool {
        self.canonical() == self.invert_variable().canonical()
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p` via Fermat.
pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - low) as usize + i] += c;
        }
        LaurentPoly::new(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest degree first, e.g. `t^2 - 3t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = crate::error::Error;

    /// Parses the `Display` form, e.g. `t^2 - 3t + 1` or `-t^-1 + 2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use crate::error::Error;
        let bad = || Error::Parse(format!("bad Laurent polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        let mut acc = LaurentPoly::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let (coef, exp) = match body.find('t') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0),
                Some(pos) => {
                    let c = if pos == 0 {
                        BigInt::one()
                    } else {
                        body[..pos].parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<i64>()
                            .map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            acc = &acc + &LaurentPoly::monomial(coef * sign, exp);
        }
        Ok(acc)
    }
}
