use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matrix::ExactMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosureOutcome {
    Finite { order: usize },
    ExceedsBound { bound: usize },
}

/// Order of the group generated by `gens`, by closure from the identity.
pub fn group_closure<M: ExactMatrix>(gens: &[M], bound: usize, projective: bool) -> ClosureOutcome {
    match gens.first() {
        None => ClosureOutcome::Finite { order: 1 },
        Some(g) => orbit_closure(&g.identity_like(), gens, bound, projective),
    }
}

/// Breadth-first orbit of `start` under right multiplication by `gens`.
///
/// When states identify group elements this is the group order. Only
/// generators are needed: in a finite group the inverses are positive
/// powers. Frontiers are expanded in parallel and merged in order.
pub fn orbit_closure<M: ExactMatrix>(start: &M, gens: &[M], bound: usize, projective: bool) -> ClosureOutcome {
    let mut seen: HashSet<M::Key> = HashSet::new();
    seen.insert(start.key(projective));
    let mut frontier = vec![start.clone()];
    while !frontier.is_empty() {
        let expanded: Vec<(M, M::Key)> = frontier
            .par_iter()
            .flat_map_iter(|s| {
                gens.iter().map(move |g| {
                    let next = s.product(g);
                    let key = next.key(projective);
                    (next, key)
                })
            })
            .collect();
        let mut next_frontier = Vec::new();
        for (state, key) in expanded {
            if seen.insert(key) {
                if seen.len() > bound {
                    return ClosureOutcome::ExceedsBound { bound };
                }
                next_frontier.push(state);
            }
        }
        frontier = next_frontier;
    }
    ClosureOutcome::Finite { order: seen.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CyclotomicNumber, FpMatrix};
    use crate::image::matrix::CycMatrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u64, n: usize, v: &[u64]) -> FpMatrix {
        FpMatrix::from_entries(p, n, n, v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_groups() {
        let id = CycMatrix::identity(4, 2);
        assert_eq!(group_closure(&[id], 10, false), ClosureOutcome::Finite { order: 1 });
        assert_eq!(
            group_closure::<FpMatrix>(&[], 10, false),
            ClosureOutcome::Finite { order: 1 }
        );
        let minus = CycMatrix::from_rows(4, vec![vec![CyclotomicNumber::from_int(4, -1)]]).unwrap();
        assert_eq!(
            group_closure(std::slice::from_ref(&minus), 10, false),
            ClosureOutcome::Finite { order: 2 }
        );
        assert_eq!(group_closure(&[minus], 10, true), ClosureOutcome::Finite { order: 1 });
    }

    #[test]
    fn gl2_f3() {
        // [[1,1],[0,1]] and [[0,1],[-1,0]] generate SL₂(F₃), order 24
        let a = fp(3, 2, &[1, 1, 0, 1]);
        let b = fp(3, 2, &[0, 1, 2, 0]);
        assert_eq!(
            group_closure(&[a.clone(), b.clone()], 1000, false),
            ClosureOutcome::Finite { order: 24 }
        );
        // modulo ±1: PSL₂(F₃) ≅ A₄
        assert_eq!(
            group_closure(&[a.clone(), b.clone()], 1000, true),
            ClosureOutcome::Finite { order: 12 }
        );
        assert_eq!(
            group_closure(&[a, b], 10, false),
            ClosureOutcome::ExceedsBound { bound: 10 }
        );
    }

    fn random_invertible(p: u64, n: usize, rng: &mut ChaCha8Rng) -> FpMatrix {
        loop {
            let m = FpMatrix::from_entries(p, n, n, (0..n * n).map(|_| rng.gen_range(0..p)).collect()).unwrap();
            if m.rank() == n {
                return m;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn order_is_conjugation_and_reordering_invariant(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5]), projective in any::<bool>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gens: Vec<FpMatrix> = (0..2).map(|_| random_invertible(p, 2, &mut rng)).collect();
            let c = random_invertible(p, 2, &mut rng);
            let ci = c.inverse().unwrap();
            let conj: Vec<FpMatrix> = gens.iter().map(|g| ci.mul(g).mul(&c)).collect();
            let reversed: Vec<FpMatrix> = gens.iter().rev().cloned().collect();
            let base = group_closure(&gens, 100_000, projective);
            let finite = matches!(base, ClosureOutcome::Finite { .. });
            prop_assert!(finite);
            prop_assert_eq!(group_closure(&conj, 100_000, projective), base);
            prop_assert_eq!(group_closure(&reversed, 100_000, projective), base);
            // Lagrange: |GL₂(F_p)| = (p²-1)(p²-p)
            if let ClosureOutcome::Finite { order } = base {
                let gl = ((p * p - 1) * (p * p - p)) as usize;
                prop_assert_eq!(gl % order, 0);
            }
        }
    }
}
