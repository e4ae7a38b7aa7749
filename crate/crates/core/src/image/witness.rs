use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::euler_phi;
use crate::algebra::finite_field::is_prime;
use crate::algebra::laurent::mod_pow;
use crate::algebra::FpMatrix;

use super::matrix::CycMatrix;
use super::rep::Representation;

/// A braid word whose image has infinite order, with the data that
/// certifies it: `start · M^K ≠ start` modulo `prime`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub word: Vec<i32>,
    pub prime: u64,
    #[serde(with = "biguint_string")]
    pub exponent: BigUint,
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An exponent `K` with `g^K = 1` for every finite-order element `g` whose
/// eigenvalues have degree at most `dim` over `Q(ζ_N)`.
///
/// An eigenvalue that is a root of unity of order `r` generates
/// `Q(ζ_lcm(r, N))`, so `φ(lcm(r, N)) ≤ dim·φ(N) =: B`. Since
/// `φ(r) ≥ √(r/2)`, such `r` are at most `2B²`; `K` is their lcm. A finite
/// projective order forces finite linear order here (scalars of the image
/// are roots of unity), so `g^K ≠ 1` certifies infinite projective order.
pub fn exponent_bound(order: u32, dim: usize) -> BigUint {
    let phi_n = euler_phi(order) as u64;
    let b = dim as u64 * phi_n;
    let limit = (2 * b * b) as usize;
    let phi = phi_sieve(limit);
    let mut k = BigUint::from(1u32);
    for r in 1..=limit {
        let g = (r as u64).gcd(&(order as u64)) as usize;
        let phi_lcm = phi[r] * phi_n / phi[g];
        if phi_lcm <= b {
            k = k.lcm(&BigUint::from(r));
        }
    }
    k
}

fn phi_sieve(limit: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=limit as u64).collect();
    for i in 2..=limit {
        if phi[i] == i as u64 {
            for j in (i..=limit).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// Primes `p ≡ 1 (mod N)` above `2^20`, each with a primitive `N`-th root
/// of unity mod `p`.
pub fn split_primes(order: u32, count: usize) -> Vec<(u64, u64)> {
    let n = order as u64;
    let mut out = Vec::new();
    let mut p = (1u64 << 20) / n * n + 1;
    while out.len() < count {
        if is_prime(p) {
            let root = primitive_root_of_unity(order, p).expect("F_p^× is cyclic");
            out.push((p, root));
        }
        p += n;
    }
    out
}

/// Searches braid words of length up to `max_len` (shortest first, then
/// lexicographic in `σ₁, σ₁⁻¹, σ₂, …`) for a certified infinite-order image.
pub fn infinite_order_witness(rep: &Representation<CycMatrix>, max_len: usize) -> Option<Witness> {
    let gens = rep.generators.len();
    if gens == 0 {
        return None;
    }
    let order = rep.start.order();
    let k = exponent_bound(order, rep.dimension());
    let primes = split_primes(order, 2);
    let reduced: Vec<(u64, FpMatrix, Vec<FpMatrix>, Vec<FpMatrix>)> = primes
        .iter()
        .map(|&(p, root)| {
            let red = |m: &CycMatrix| m.reduce_mod(p, root).expect("prime modulus");
            (
                p,
                red(&rep.start),
                rep.generators.iter().map(red).collect(),
                rep.inverses.iter().map(red).collect(),
            )
        })
        .collect();
    let alphabet: Vec<i32> = (1..=gens as i32).flat_map(|i| [i, -i]).collect();
    let base = alphabet.len() as u64;
    for len in 1..=max_len {
        let total = base.checked_pow(len as u32)?;
        let found = (0..total).into_par_iter().find_map_first(|idx| {
            let word = decode(idx, len, &alphabet);
            if word.windows(2).any(|w| w[0] == -w[1]) {
                return None;
            }
            reduced.iter().find_map(|(p, start, g, gi)| {
                let ident = FpMatrix::identity(*p, start.cols()).unwrap();
                let m = word.iter().fold(ident, |acc, &l| {
                    let i = l.unsigned_abs() as usize - 1;
                    acc.mul(if l > 0 { &g[i] } else { &gi[i] })
                });
                let power = start.mul(&m.pow_biguint(&k));
                (power != *start).then(|| Witness {
                    word: word.clone(),
                    prime: *p,
                    exponent: k.clone(),
                })
            })
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn decode(mut idx: u64, len: usize, alphabet: &[i32]) -> Vec<i32> {
    let base = alphabet.len() as u64;
    let mut word = vec![0; len];
    for slot in word.iter_mut().rev() {
        *slot = alphabet[(idx % base) as usize];
        idx /= base;
    }
    word
}

/// Re-checks a witness against the representation.
pub fn verify_witness(rep: &Representation<CycMatrix>, w: &Witness) -> bool {
    let order = rep.start.order();
    // any multiple of the bound is as good as the bound itself
    let bound = exponent_bound(order, rep.dimension());
    if !(&w.exponent % &bound).is_zero() || !is_prime(w.prime) {
        return false;
    }
    let Some(root) = primitive_root_of_unity(order, w.prime) else {
        return false;
    };
    let red = |m: &CycMatrix| m.reduce_mod(w.prime, root).expect("prime modulus");
    let start = red(&rep.start);
    let mut m = FpMatrix::identity(w.prime, start.cols()).unwrap();
    for &l in &w.word {
        if l == 0 || l.unsigned_abs() as usize > rep.generators.len() {
            return false;
        }
        m = m.mul(&red(rep.matrix_of(l)));
    }
    start.mul(&m.pow_biguint(&w.exponent)) != start
}

/// A primitive `N`-th root of unity mod `p`, when `N` divides `p - 1`.
pub fn primitive_root_of_unity(order: u32, p: u64) -> Option<u64> {
    let n = order as u64;
    if !(p - 1).is_multiple_of(n) {
        return None;
    }
    let factors: Vec<u64> = (2..=n).filter(|&q| n.is_multiple_of(q) && is_prime(q)).collect();
    (2..p)
        .map(|a| mod_pow(a, (p - 1) / n, p))
        .find(|&r| factors.iter().all(|&q| mod_pow(r, n / q, p) != 1))
}
