use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};

use super::group::FiniteGroup;

/// Default cap on tuples examined by the exact count.
pub const DEFAULT_HOM_BUDGET: u128 = 1_000_000_000;

const SAMPLE_CHUNK: usize = 4096;

/// Applies the braid letter by letter:
/// `σ_i: (a, b) ↦ (a b a⁻¹, a)` and `σ_i⁻¹: (a, b) ↦ (b, b⁻¹ a b)`
/// on entries `i, i+1`.
pub fn hurwitz_act_in_place(b: &BraidWord, x: &mut [usize], g: &FiniteGroup) {
    for &l in b.letters() {
        let p = l.unsigned_abs() as usize - 1;
        let (a, c) = (x[p], x[p + 1]);
        if l > 0 {
            x[p] = g.conj(a, c);
            x[p + 1] = a;
        } else {
            x[p] = c;
            x[p + 1] = g.conj(g.inv(c), a);
        }
    }
}

pub fn hurwitz_act(b: &BraidWord, x: &[usize], g: &FiniteGroup) -> Result<Vec<usize>> {
    if x.len() != b.strands() {
        return Err(Error::InvalidArgument(format!(
            "tuple has {} entries, braid has {} strands",
            x.len(),
            b.strands()
        )));
    }
    if let Some(&bad) = x.iter().find(|&&e| e >= g.order()) {
        return Err(Error::InvalidArgument(format!("{bad} is not an element of {g}")));
    }
    let mut y = x.to_vec();
    hurwitz_act_in_place(b, &mut y, g);
    Ok(y)
}

/// `|G|^n`, if it fits.
fn tuple_count(g: &FiniteGroup, n: usize) -> Option<u128> {
    (0..n).try_fold(1u128, |acc, _| acc.checked_mul(g.order() as u128))
}

/// Number of tuples fixed by the Hurwitz action, i.e. `|Hom(π₁(S³ ∖ L), G)|`
/// for the closure `L`, by checking every tuple.
pub fn hom_count_exact(b: &BraidWord, g: &FiniteGroup) -> Result<u64> {
    hom_count_exact_with_budget(b, g, DEFAULT_HOM_BUDGET)
}

pub fn hom_count_exact_with_budget(b: &BraidWord, g: &FiniteGroup, budget: u128) -> Result<u64> {
    let n = b.strands();
    let total = tuple_count(g, n).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded {
            what: format!("exact count over {g}^{n}"),
            required: total,
            budget,
        });
    }
    let total = total as u64;
    let order = g.order();
    const CHUNK: u64 = 1 << 14;
    let chunks = total.div_ceil(CHUNK);
    let count = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            // decode the first tuple, then step like an odometer
            let mut x = vec![0usize; n];
            let mut rem = start;
            for slot in x.iter_mut().rev() {
                *slot = (rem % order as u64) as usize;
                rem /= order as u64;
            }
            let mut y = x.clone();
            let mut fixed = 0u64;
            for _ in start..end {
                y.copy_from_slice(&x);
                hurwitz_act_in_place(b, &mut y, g);
                if y == x {
                    fixed += 1;
                }
                for slot in x.iter_mut().rev() {
                    *slot += 1;
                    if *slot < order {
                        break;
                    }
                    *slot = 0;
                }
            }
            fixed
        })
        .sum();
    Ok(count)
}

/// Sampled estimate of the homomorphism count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomEstimate {
    pub samples: u64,
    pub fixed: u64,
    /// `fixed / samples · |G|^n`
    #[serde(with = "rational_string")]
    pub estimate: BigRational,
    /// Binomial standard error scaled by `|G|^n`.
    pub stderr: f64,
}

mod rational_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Draws `samples` uniform tuples and counts the fixed ones.
///
/// Chunk `k` of 4096 draws uses its own ChaCha stream `k` under `seed`, so
/// the result does not depend on how chunks are scheduled.
pub fn hom_count_estimate(b: &BraidWord, g: &FiniteGroup, samples: u64, seed: u64) -> Result<HomEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let n = b.strands();
    let chunks = samples.div_ceil(SAMPLE_CHUNK as u64);
    let fixed: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let draws = (samples - c * SAMPLE_CHUNK as u64).min(SAMPLE_CHUNK as u64);
            let mut x = vec![0usize; n];
            let mut y = vec![0usize; n];
            let mut fixed = 0;
            for _ in 0..draws {
                for slot in x.iter_mut() {
                    *slot = rng.gen_range(0..g.order());
                }
                y.copy_from_slice(&x);
                hurwitz_act_in_place(b, &mut y, g);
                if x == y {
                    fixed += 1;
                }
            }
            fixed
        })
        .sum();
    let space = BigInt::from(g.order()).pow(n as u32);
    let estimate = BigRational::new(BigInt::from(fixed) * &space, BigInt::from(samples));
    let f = fixed as f64 / samples as f64;
    let space_f = (g.order() as f64).powi(n as i32);
    let stderr = space_f * (f * (1.0 - f) / samples as f64).sqrt();
    Ok(HomEstimate {
        samples,
        fixed,
        estimate,
        stderr,
    })
}
