//! Exact arithmetic in the ring of cyclotomic integers `Z[ζ_N]`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` modulo the
//! cyclotomic polynomial `Φ_N`. Coefficients are arbitrary precision.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn phi_cache() -> &'static RwLock<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
///
/// Computed by dividing `x^n - 1` by `Φ_d` for every proper divisor `d` of
/// `n`, and cached for the lifetime of the process.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let divisor = cyclotomic_polynomial(d);
            poly = div_monic_exact(&poly, &divisor);
        }
    }
    let poly = Arc::new(poly);
    phi_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

fn div_monic_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An element of `Z[ζ_N]`.
#[derive(Clone, Debug)]
pub struct CyclotomicNumber {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicNumber {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        Self {
            order,
            coeffs: vec![BigInt::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, value: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = value.into();
        z
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        Self::from_poly(order, poly)
    }

    /// Reduces an arbitrary-length polynomial in `ζ_N` modulo `Φ_N`.
    pub fn from_poly(order: u32, poly: Vec<BigInt>) -> Self {
        Self {
            order,
            coeffs: reduce(order, poly),
        }
    }

    pub fn from_coeffs(order: u32, coeffs: Vec<BigInt>) -> Self {
        Self::from_poly(order, coeffs)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// `Some(k)` when the value is the rational integer `k`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.order));
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut prod = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_poly(self.order, prod))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplication by the unit `ζ_N^k`.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let shift = k.rem_euclid(self.order as i64) as usize;
        if shift == 0 {
            return self.clone();
        }
        let mut poly = vec![BigInt::zero(); shift + self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i + shift] = c.clone();
        }
        Self::from_poly(self.order, poly)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex conjugation, i.e. the Galois automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut poly = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(n - i) % n] += c;
        }
        Self::from_poly(self.order, poly)
    }

    /// Re-expresses the value at order `target`, which must be a multiple of
    /// the current order.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::InvalidArgument(format!(
                "cannot embed order {} into order {target}",
                self.order
            )));
        }
        let step = (target / self.order) as usize;
        if step == 1 {
            return Ok(self.clone());
        }
        let mut poly = vec![BigInt::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(Self::from_poly(target, poly))
    }

    /// Floating approximation, for reporting only.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let theta = 2.0 * std::f64::consts::PI * (i as f64) / n;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

fn reduce(order: u32, mut poly: Vec<BigInt>) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    while poly.len() > deg {
        let top = poly.len() - 1;
        let c = poly.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let base = top - deg;
        for (j, &p) in phi[..deg].iter().enumerate() {
            if p != 0 {
                poly[base + j] -= &c * p;
            }
        }
    }
    poly.resize(deg, BigInt::zero());
    poly
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let common = self.order.lcm(&other.order);
        match (self.embed(common), other.embed(common)) {
            (Ok(a), Ok(b)) => a.coeffs == b.coeffs,
            _ => false,
        }
    }
}

impl Eq for CyclotomicNumber {}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_add(rhs).expect("cyclotomic add")
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_sub(rhs).expect("cyclotomic sub")
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.checked_mul(rhs).expect("cyclotomic mul")
    }
}

impl Add for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> Self {
        -&self
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Rational integers print plainly; everything else as
    /// `cyc(N: c0 c1 ...)` in the power basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_integer() {
            return write!(f, "{k}");
        }
        write!(f, "cyc({}:", self.order)?;
        for c in &self.coeffs {
            write!(f, " {c}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for CyclotomicNumber {
    type Err = Error;

    /// Accepts a plain integer (taken at order 1) or `cyc(N: c0 c1 ...)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Ok(k) = s.parse::<BigInt>() {
            return Ok(Self::from_int(1, k));
        }
        let body = s
            .strip_prefix("cyc(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad cyclotomic literal {s:?}")))?;
        let (order, coeffs) = body
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in {s:?}")))?;
        let order: u32 = order
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad order in {s:?}")))?;
        if order == 0 {
            return Err(Error::Parse("cyclotomic order must be positive".into()));
        }
        let coeffs = coeffs
            .split_whitespace()
            .map(|t| {
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_poly(order, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(order: u32, coeffs: &[i64]) -> CyclotomicNumber {
        CyclotomicNumber::from_poly(order, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, euler_phi(105) as usize);
        // Φ_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CyclotomicNumber::zeta_pow(4, 1);
        assert_eq!(&i * &i, CyclotomicNumber::from_int(4, -1));
    }

    #[test]
    fn one_is_identity() {
        let a = cyc(7, &[3, -1, 4, 1, -5, 9]);
        assert_eq!(&a * &CyclotomicNumber::one(7), a);
    }

    #[test]
    fn golden_pair_product() {
        // (ζ + ζ⁴)(ζ² + ζ³) = ζ³ + ζ⁴ + ζ⁶ + ζ⁷ = ζ + ζ² + ζ³ + ζ⁴ = -1
        let a = cyc(5, &[0, 1, 0, 0, 1]);
        let b = cyc(5, &[0, 0, 1, 1]);
        assert_eq!(&a * &b, CyclotomicNumber::from_int(5, -1));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let a = CyclotomicNumber::one(4);
        let b = CyclotomicNumber::one(8);
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::OrderMismatch { left: 4, right: 8 })
        ));
    }

    #[test]
    fn embedding() {
        let i = CyclotomicNumber::zeta_pow(4, 1);
        assert_eq!(i.embed(8).unwrap().coeffs(), CyclotomicNumber::zeta_pow(8, 2).coeffs());
        let w = CyclotomicNumber::zeta_pow(3, 1);
        assert_eq!(
            w.embed(12).unwrap().coeffs(),
            CyclotomicNumber::zeta_pow(12, 4).coeffs()
        );
        for m in [1, 2, 6, 10] {
            assert!(CyclotomicNumber::one(1).embed(m).unwrap().is_one());
        }
        assert!(w.embed(10).is_err());
        // equality across orders goes through the lcm
        assert_eq!(i, CyclotomicNumber::zeta_pow(12, 3));
        assert_ne!(i, CyclotomicNumber::zeta_pow(12, 9));
    }

    #[test]
    fn complex_values() {
        let sqrt2 = &CyclotomicNumber::zeta_pow(8, 1) + &CyclotomicNumber::zeta_pow(8, -1);
        let z = sqrt2.to_complex();
        assert!((z.re - std::f64::consts::SQRT_2).abs() < 1e-12 && z.im.abs() < 1e-12);
        assert_eq!(CyclotomicNumber::zero(9).to_complex(), Complex64::new(0.0, 0.0));
        let z5 = CyclotomicNumber::zeta_pow(5, 1).to_complex();
        assert!((z5.re - 0.309_016_994_374_947_4).abs() < 1e-12);
        assert!((z5.im - 0.951_056_516_295_153_5).abs() < 1e-12);
    }

    #[test]
    fn conjugation_inverts_roots() {
        for n in [3u32, 8, 12, 20] {
            for k in 0..n as i64 {
                let z = CyclotomicNumber::zeta_pow(n, k);
                assert!((&z * &z.conj()).is_one());
            }
        }
    }

    #[test]
    fn literal_round_trip() {
        let a = cyc(16, &[0, 1, 0, -2]);
        let parsed: CyclotomicNumber = a.to_string().parse().unwrap();
        assert_eq!(parsed, a);
        let k: CyclotomicNumber = "-3".parse().unwrap();
        assert_eq!(k, CyclotomicNumber::from_int(20, -3));
        assert!("cyc(0: 1)".parse::<CyclotomicNumber>().is_err());
    }

    fn arb_cyc(order: u32) -> impl Strategy<Value = CyclotomicNumber> {
        let len = euler_phi(order) as usize;
        prop::collection::vec(-20i64..20, len).prop_map(move |v| cyc(order, &v))
    }

    fn arb_order() -> impl Strategy<Value = u32> {
        prop::sample::select(vec![3u32, 4, 5, 8, 12, 16, 20, 24, 28])
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_order().prop_flat_map(|n| (arb_cyc(n), arb_cyc(n), arb_cyc(n)))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn complex_map_is_a_homomorphism((a, b) in arb_order().prop_flat_map(|n| (arb_cyc(n), arb_cyc(n)))) {
            let l1 = |x: &CyclotomicNumber| x.l1_norm().to_f64().unwrap();
            let tol = 2f64.powi(-40) * (1.0 + l1(&a) * l1(&b) + l1(&a) + l1(&b));
            let prod = &a * &b;
            let sum = &a + &b;
            prop_assert!((prod.to_complex() - a.to_complex() * b.to_complex()).norm() <= tol);
            prop_assert!((sum.to_complex() - a.to_complex() - b.to_complex()).norm() <= tol);
        }

        #[test]
        fn embedding_preserves_arithmetic((a, b) in arb_order().prop_flat_map(|n| (arb_cyc(n), arb_cyc(n))), k in 2u32..4) {
            let m = a.order() * k;
            let ea = a.embed(m).unwrap();
            let eb = b.embed(m).unwrap();
            prop_assert_eq!(&ea * &eb, (&a * &b).embed(m).unwrap());
            prop_assert_eq!(ea, a);
        }
    }
}
