use rayon::prelude::*;

use crate::algebra::CyclotomicNumber;
use crate::braid::BraidWord;
use crate::error::{Error, Result};

use super::element::{braid_to_tl_with, markov_trace, TlParams};

/// Default crossing cap for the state-sum oracle.
pub const STATESUM_DEFAULT_CAP: usize = 24;

/// `(-A)^{-3w}`, the writhe correction turning the bracket into `V(t)`.
fn writhe_factor(params: &TlParams, writhe: i64) -> CyclotomicNumber {
    let unit = params.a_pow(-3 * writhe);
    if writhe % 2 == 0 {
        unit
    } else {
        -unit
    }
}

/// Jones polynomial of the closure of `b` at `t = q² = e^{2πi/ℓ}`, as an
/// element of `Z[ζ_{4ℓ}]` (with `t^{1/2} = e^{πi/ℓ}`).
pub fn jones_at_root(b: &BraidWord, ell: u32) -> Result<CyclotomicNumber> {
    let mut params = TlParams::new(ell)?;
    params.reserve(b.strands());
    let bracket = markov_trace(&braid_to_tl_with(b, &params), &params);
    Ok(&writhe_factor(&params, b.writhe()) * &bracket)
}

/// Jones polynomial at the same root of unity, by brute force over all
/// `2^crossings` Kauffman states of the closure diagram.
pub fn kauffman_bracket_statesum(b: &BraidWord, ell: u32) -> Result<CyclotomicNumber> {
    kauffman_bracket_statesum_capped(b, ell, STATESUM_DEFAULT_CAP)
}

pub fn kauffman_bracket_statesum_capped(b: &BraidWord, ell: u32, cap: usize) -> Result<CyclotomicNumber> {
    let params = TlParams::new(ell)?;
    let crossings = b.crossings();
    if crossings > cap || crossings >= 63 {
        return Err(Error::BudgetExceeded {
            what: "state sum".into(),
            required: 1u128 << crossings.min(127),
            budget: 1u128 << cap.min(127),
        });
    }
    let hist = state_histogram(b);
    let mut acc = CyclotomicNumber::zero(params.order());
    for (&(a_minus_b, loops), &count) in &hist {
        let term = (&params.a_pow(a_minus_b) * &params.delta_pow(loops - 1)).scale(&num_bigint::BigInt::from(count));
        acc = &acc + &term;
    }
    Ok(&writhe_factor(&params, b.writhe()) * &acc)
}

/// Counts states by `(#A − #B smoothings, loops)`.
fn state_histogram(b: &BraidWord) -> std::collections::BTreeMap<(i64, usize), u64> {
    let len = b.crossings();
    let total: u64 = 1 << len;
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut hist = std::collections::BTreeMap::new();
            let mut uf = UnionFind::new(len.max(1) * b.strands());
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let (weight, loops) = smooth(b, mask, &mut uf);
                *hist.entry((weight, loops)).or_insert(0u64) += 1;
            }
            hist
        })
        .reduce(std::collections::BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Resolves every crossing according to `mask` (bit set = A-smoothing) and
/// counts the loops of the resulting closed diagram.
///
/// The diagram has one row of `n` nodes between consecutive letters; the
/// row after the last letter is the row before the first (the closure).
fn smooth(b: &BraidWord, mask: u64, uf: &mut UnionFind) -> (i64, usize) {
    let n = b.strands();
    let len = b.crossings();
    if len == 0 {
        return (0, n);
    }
    uf.reset(len * n);
    let node = |row: usize, pos: usize| (row % len) * n + pos;
    let mut weight = 0i64;
    for (row, &l) in b.letters().iter().enumerate() {
        let p = l.unsigned_abs() as usize - 1;
        let a_smoothing = mask >> row & 1 == 1;
        weight += if a_smoothing { 1 } else { -1 };
        // positive letters smooth vertically under A, negative ones horizontally
        let vertical = a_smoothing == (l > 0);
        for pos in 0..n {
            if pos != p && pos != p + 1 {
                uf.union(node(row, pos), node(row + 1, pos));
            }
        }
        if vertical {
            uf.union(node(row, p), node(row + 1, p));
            uf.union(node(row, p + 1), node(row + 1, p + 1));
        } else {
            uf.union(node(row, p), node(row, p + 1));
            uf.union(node(row + 1, p), node(row + 1, p + 1));
        }
    }
    (weight, uf.components())
}

struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            count: n,
        }
    }

    fn reset(&mut self, n: usize) {
        self.parent.clear();
        self.parent.extend(0..n);
        self.count = n;
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.count -= 1;
        }
    }

    fn components(&self) -> usize {
        self.count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::tests::arb_braid;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn braid(w: &str, n: usize) -> BraidWord {
        BraidWord::parse(w, n).unwrap()
    }

    /// `Σ c_k t^{k/2}` at `t^{1/2} = e^{πi/ℓ}`.
    fn eval_half_powers(terms: &[(i32, f64)], ell: u32) -> Complex64 {
        let half = Complex64::from_polar(1.0, std::f64::consts::PI / ell as f64);
        terms.iter().map(|&(k, c)| c * half.powi(k)).sum()
    }

    #[test]
    fn unknot_is_one() {
        for ell in 3..9 {
            assert!(jones_at_root(&BraidWord::identity(1), ell).unwrap().is_one());
            assert!(jones_at_root(&braid("1", 2), ell).unwrap().is_one());
            assert!(jones_at_root(&braid("-1 2", 3), ell).unwrap().is_one());
        }
    }

    #[test]
    fn trefoil_orientation_is_pinned() {
        // σ1³ closes to the trefoil with V = -t⁻⁴ + t⁻³ + t⁻¹
        let trefoil = braid("1 1 1", 2);
        for ell in 3..=12 {
            let v = jones_at_root(&trefoil, ell).unwrap().to_complex();
            let expect = eval_half_powers(&[(-8, -1.0), (-6, 1.0), (-2, 1.0)], ell);
            assert!((v - expect).norm() < 1e-9, "ℓ={ell}: {v} vs {expect}");
        }
        assert!(jones_at_root(&trefoil, 3).unwrap().is_one());
    }

    #[test]
    fn hopf_and_figure_eight_at_i() {
        let hopf = jones_at_root(&braid("1 1", 2), 4).unwrap();
        assert!(hopf.is_zero());
        let f8 = jones_at_root(&braid("1 -2 1 -2", 3), 4).unwrap();
        assert_eq!(f8, CyclotomicNumber::from_int(1, -1));
    }

    #[test]
    fn hopf_numeric() {
        // V(Hopf, σ1²) = -t^{-1/2} - t^{-5/2}
        for ell in 3..=10 {
            let v = jones_at_root(&braid("1 1", 2), ell).unwrap().to_complex();
            let expect = eval_half_powers(&[(-1, -1.0), (-5, -1.0)], ell);
            assert!((v - expect).norm() < 1e-9, "ℓ={ell}");
        }
    }

    #[test]
    fn statesum_small_cases() {
        for ell in 3..8 {
            assert!(kauffman_bracket_statesum(&BraidWord::identity(1), ell)
                .unwrap()
                .is_one());
            assert!(kauffman_bracket_statesum(&braid("1", 2), ell).unwrap().is_one());
            assert!(kauffman_bracket_statesum(&braid("-1", 2), ell).unwrap().is_one());
        }
        let t5 = braid("1 1 1", 2);
        assert_eq!(
            kauffman_bracket_statesum(&t5, 5).unwrap(),
            jones_at_root(&t5, 5).unwrap()
        );
        let v = kauffman_bracket_statesum(&t5, 5).unwrap().to_complex();
        let expect = eval_half_powers(&[(-8, -1.0), (-6, 1.0), (-2, 1.0)], 5);
        assert!((v - expect).norm() < 1e-9);
    }

    #[test]
    fn statesum_cap() {
        let long = BraidWord::new(2, vec![1; 10]).unwrap();
        assert!(matches!(
            kauffman_bracket_statesum_capped(&long, 5, 8),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn trace_matches_statesum(b in arb_braid(4, 10), ell in 3u32..11) {
            prop_assert_eq!(jones_at_root(&b, ell).unwrap(), kauffman_bracket_statesum(&b, ell).unwrap());
        }

        #[test]
        fn markov_invariance(b in arb_braid(4, 10), g in prop::collection::vec(prop_oneof![1i32..4, -3i32..0], 0..5), ell in prop::sample::select(vec![4u32, 5, 7]), positive in any::<bool>()) {
            let n = b.strands() as i32;
            let g = BraidWord::new(b.strands(), g.into_iter().filter(|x| x.abs() < n).collect()).unwrap();
            let v = jones_at_root(&b, ell).unwrap();
            prop_assert_eq!(&jones_at_root(&b.conjugate(&g).unwrap(), ell).unwrap(), &v);
            prop_assert_eq!(&jones_at_root(&b.stabilize(positive), ell).unwrap(), &v);
        }

        #[test]
        fn mirror_is_complex_conjugate(b in arb_braid(4, 10), ell in 3u32..9) {
            prop_assert_eq!(jones_at_root(&b.mirror(), ell).unwrap(), jones_at_root(&b, ell).unwrap().conj());
        }
    }
}
