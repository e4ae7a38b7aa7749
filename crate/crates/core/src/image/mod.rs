//! Finite or infinite: classifying braid group images in the Jones (TL)
//! and reduced Burau mod p representations.

pub mod closure;
pub mod matrix;
pub mod rep;
pub mod witness;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use closure::{group_closure, orbit_closure, ClosureOutcome};
pub use matrix::{CycMatrix, ExactMatrix};
pub use rep::{rep_generators, RepFamily, RepMatrices, RepSpec, Representation, TL_MAX_STRANDS};
pub use witness::{exponent_bound, infinite_order_witness, verify_witness, Witness};

/// Default bound on projective elements enumerated.
pub const DEFAULT_IMAGE_BOUND: usize = 1_000_000;
/// Closure size tried before looking for an infinite-order witness.
pub const PROBE_BOUND: usize = 20_000;
/// Longest word tried by the witness search.
pub const WITNESS_MAX_LEN: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    FiniteAbelian { order: usize },
    Finite { order: usize },
    Infinite { witness: Witness },
    Unknown { bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReport {
    pub spec: RepSpec,
    pub dimension: usize,
    pub generators: usize,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Classifies the image of the braid group modulo root-of-unity scalars.
///
/// Small closures are tried first, then a search for an infinite-order
/// word, then the full closure up to `bound`. Finite orders come only from
/// a complete enumeration and infinite verdicts only from a checked
/// witness, so the two can never disagree.
pub fn classify_image(spec: &RepSpec, bound: usize) -> Result<ImageReport> {
    let mut notes = vec!["orders are counted modulo root-of-unity scalars".to_string()];
    let (dimension, generators, verdict) = match rep_generators(spec)? {
        RepMatrices::Cyclotomic(rep) => {
            notes.push("TL image taken modulo the radical of the trace form".into());
            let verdict = escalate(&rep, bound, |r| infinite_order_witness(r, WITNESS_MAX_LEN));
            if matches!(verdict, Verdict::Infinite { .. }) {
                notes.push("infinite only is certified; density is not tested".into());
            }
            (rep.dimension(), rep.generators.len(), verdict)
        }
        RepMatrices::FiniteField(rep) => (rep.dimension(), rep.generators.len(), escalate(&rep, bound, |_| None)),
    };
    Ok(ImageReport {
        spec: *spec,
        dimension,
        generators,
        verdict,
        notes,
    })
}

fn escalate<M: ExactMatrix>(
    rep: &Representation<M>,
    bound: usize,
    witness: impl Fn(&Representation<M>) -> Option<Witness>,
) -> Verdict {
    let finite = |order| {
        if generators_commute(rep) {
            Verdict::FiniteAbelian { order }
        } else {
            Verdict::Finite { order }
        }
    };
    let probe = bound.min(PROBE_BOUND);
    if let ClosureOutcome::Finite { order } = orbit_closure(&rep.start, &rep.generators, probe, true) {
        return finite(order);
    }
    if let Some(w) = witness(rep) {
        return Verdict::Infinite { witness: w };
    }
    if bound > probe {
        if let ClosureOutcome::Finite { order } = orbit_closure(&rep.start, &rep.generators, bound, true) {
            return finite(order);
        }
    }
    Verdict::Unknown { bound }
}

/// Whether all generator pairs commute modulo scalars.
pub fn generators_commute<M: ExactMatrix>(rep: &Representation<M>) -> bool {
    let g = &rep.generators;
    (0..g.len()).all(|i| {
        (0..i).all(|j| {
            let ij = rep.start.product(&g[i]).product(&g[j]);
            let ji = rep.start.product(&g[j]).product(&g[i]);
            ij.key(true) == ji.key(true)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FpMatrix;

    fn tl(ell: u32, strands: usize) -> RepSpec {
        RepSpec {
            family: RepFamily::Tl { ell },
            strands,
        }
    }

    fn tl_rep(ell: u32, strands: usize) -> Representation<CycMatrix> {
        match rep_generators(&tl(ell, strands)).unwrap() {
            RepMatrices::Cyclotomic(r) => r,
            _ => unreachable!(),
        }
    }

    #[test]
    fn tl_three_is_abelian() {
        for n in [3, 4] {
            let r = classify_image(&tl(3, n), DEFAULT_IMAGE_BOUND).unwrap();
            assert!(matches!(r.verdict, Verdict::FiniteAbelian { .. }), "{r:?}");
        }
    }

    #[test]
    fn tl_four_and_six_are_finite() {
        for (ell, n, order) in [(4, 3, 24), (4, 4, 192), (6, 3, 24), (6, 4, 648)] {
            let r = classify_image(&tl(ell, n), DEFAULT_IMAGE_BOUND).unwrap();
            assert_eq!(r.verdict, Verdict::Finite { order }, "ℓ={ell} n={n}");
        }
    }

    #[test]
    fn dense_rows_are_infinite() {
        for ell in [5, 7, 8] {
            let r = classify_image(&tl(ell, 3), DEFAULT_IMAGE_BOUND).unwrap();
            match &r.verdict {
                Verdict::Infinite { witness } => {
                    assert!(witness.word.len() <= WITNESS_MAX_LEN);
                    assert!(verify_witness(&tl_rep(ell, 3), witness));
                }
                v => panic!("ℓ={ell}: {v:?}"),
            }
        }
    }

    #[test]
    fn no_witness_for_finite_images() {
        for ell in [3, 4, 6] {
            assert_eq!(infinite_order_witness(&tl_rep(ell, 3), 4), None, "ℓ={ell}");
        }
        let id = CycMatrix::identity(8, 2);
        let trivial = Representation {
            start: id.clone(),
            generators: vec![id.clone()],
            inverses: vec![id],
        };
        assert_eq!(infinite_order_witness(&trivial, 3), None);
    }

    #[test]
    fn witness_is_short_at_five() {
        let w = infinite_order_witness(&tl_rep(5, 3), 4).expect("witness");
        assert!(w.word.len() <= 4);
        let mut forged = w.clone();
        forged.word = vec![1, -1];
        assert!(!verify_witness(&tl_rep(5, 3), &forged));
    }

    #[test]
    fn burau_mod_five() {
        let spec = RepSpec {
            family: RepFamily::BurauModP { p: 5, t0: 2 },
            strands: 3,
        };
        let r = classify_image(&spec, DEFAULT_IMAGE_BOUND).unwrap();
        let order = match r.verdict {
            Verdict::Finite { order } | Verdict::FiniteAbelian { order } => order,
            v => panic!("{v:?}"),
        };
        assert_eq!(480 % order, 0);
        // the linear image sits in GL₂(F₅) too
        let RepMatrices::FiniteField(rep) = rep_generators(&spec).unwrap() else {
            unreachable!()
        };
        match group_closure::<FpMatrix>(&rep.generators, 1000, false) {
            ClosureOutcome::Finite { order } => assert_eq!(480 % order, 0),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn small_bound_is_unknown_not_wrong() {
        let spec = RepSpec {
            family: RepFamily::BurauModP { p: 7, t0: 3 },
            strands: 4,
        };
        let r = classify_image(&spec, 5).unwrap();
        assert_eq!(r.verdict, Verdict::Unknown { bound: 5 });
    }

    #[test]
    fn report_json_round_trip() {
        let r = classify_image(&tl(5, 3), DEFAULT_IMAGE_BOUND).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<ImageReport>(&text).unwrap(), r);
    }
}
