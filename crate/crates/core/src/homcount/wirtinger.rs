use crate::braid::BraidWord;
use crate::error::{Error, Result};

use super::group::FiniteGroup;

/// Default cap on search nodes for [`wirtinger_hom_count`].
pub const DEFAULT_NODE_BUDGET: u128 = 200_000_000;

/// One crossing relation: `out = over^s · under_in · over^{-s}` with `s = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingRelation {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub positive: bool,
}

/// Wirtinger presentation of a braid closure: one generator per arc and one
/// conjugation relation per crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub arcs: usize,
    pub relations: Vec<CrossingRelation>,
}

impl WirtingerPresentation {
    pub fn from_braid(b: &BraidWord) -> Self {
        let n = b.strands();
        let mut next = n;
        let mut arc_at: Vec<usize> = (0..n).collect();
        let mut raw = Vec::with_capacity(b.len());
        for &l in b.letters() {
            let p = l.unsigned_abs() as usize - 1;
            let fresh = next;
            next += 1;
            if l > 0 {
                // strand at p crosses over to p+1; the one at p+1 passes under to p
                let (over, under_in) = (arc_at[p], arc_at[p + 1]);
                raw.push(CrossingRelation {
                    over,
                    under_in,
                    under_out: fresh,
                    positive: true,
                });
                arc_at[p] = fresh;
                arc_at[p + 1] = over;
            } else {
                let (over, under_in) = (arc_at[p + 1], arc_at[p]);
                raw.push(CrossingRelation {
                    over,
                    under_in,
                    under_out: fresh,
                    positive: false,
                });
                arc_at[p] = over;
                arc_at[p + 1] = fresh;
            }
        }
        // closing the braid joins the arc leaving position k at the bottom to
        // the one entering position k at the top
        let mut parent: Vec<usize> = (0..next).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (k, &a) in arc_at.iter().enumerate() {
            let (ra, rk) = (find(&mut parent, a), find(&mut parent, k));
            parent[ra] = rk;
        }
        let mut label = vec![usize::MAX; next];
        let mut arcs = 0;
        let mut relabel = |x: usize, parent: &mut Vec<usize>| {
            let r = find(parent, x);
            if label[r] == usize::MAX {
                label[r] = arcs;
                arcs += 1;
            }
            label[r]
        };
        let relations = raw
            .iter()
            .map(|r| CrossingRelation {
                over: relabel(r.over, &mut parent),
                under_in: relabel(r.under_in, &mut parent),
                under_out: relabel(r.under_out, &mut parent),
                positive: r.positive,
            })
            .collect();
        for x in 0..next {
            relabel(x, &mut parent);
        }
        Self { arcs, relations }
    }
}

/// `|Hom(π₁(S³ ∖ L), G)|` by searching over assignments of group elements
/// to the arcs of the closure diagram of `b`.
pub fn wirtinger_hom_count(b: &BraidWord, g: &FiniteGroup) -> Result<u64> {
    wirtinger_hom_count_with_budget(b, g, DEFAULT_NODE_BUDGET)
}

pub fn wirtinger_hom_count_with_budget(b: &BraidWord, g: &FiniteGroup, budget: u128) -> Result<u64> {
    let pres = WirtingerPresentation::from_braid(b);
    // each relation is checked at the depth where its last arc is assigned
    let mut checks: Vec<Vec<CrossingRelation>> = vec![Vec::new(); pres.arcs];
    for r in &pres.relations {
        let last = r.over.max(r.under_in).max(r.under_out);
        checks[last].push(*r);
    }
    let mut search = Search {
        g,
        checks: &checks,
        assignment: vec![0; pres.arcs],
        nodes: 0,
        budget,
    };
    search.run(0)
}

struct Search<'a> {
    g: &'a FiniteGroup,
    checks: &'a [Vec<CrossingRelation>],
    assignment: Vec<usize>,
    nodes: u128,
    budget: u128,
}

impl Search<'_> {
    fn holds(&self, r: &CrossingRelation) -> bool {
        let a = &self.assignment;
        let over = if r.positive { a[r.over] } else { self.g.inv(a[r.over]) };
        self.g.conj(over, a[r.under_in]) == a[r.under_out]
    }

    fn run(&mut self, depth: usize) -> Result<u64> {
        if depth == self.assignment.len() {
            return Ok(1);
        }
        let mut count = 0;
        for x in 0..self.g.order() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    what: format!("Wirtinger search over {}", self.g),
                    required: self.nodes,
                    budget: self.budget,
                });
            }
            self.assignment[depth] = x;
            if self.checks[depth].iter().all(|r| self.holds(r)) {
                count += self.run(depth + 1)?;
            }
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::tests::arb_braid;
    use crate::homcount::{builtin_group, hom_count_exact};
    use proptest::prelude::*;

    fn braid(w: &str, n: usize) -> BraidWord {
        BraidWord::parse(w, n).unwrap()
    }

    #[test]
    fn arc_counts() {
        assert_eq!(WirtingerPresentation::from_braid(&braid("1", 2)).arcs, 1);
        assert_eq!(WirtingerPresentation::from_braid(&braid("1 1 1", 2)).arcs, 3);
        assert_eq!(WirtingerPresentation::from_braid(&braid("1 1", 2)).arcs, 2);
        assert_eq!(WirtingerPresentation::from_braid(&BraidWord::identity(3)).arcs, 3);
    }

    #[test]
    fn examples() {
        let s3 = builtin_group("S3").unwrap();
        let z2 = builtin_group("Z2").unwrap();
        assert_eq!(wirtinger_hom_count(&braid("1", 2), &s3).unwrap(), 6);
        assert_eq!(wirtinger_hom_count(&braid("1 1 1", 2), &s3).unwrap(), 12);
        assert_eq!(wirtinger_hom_count(&braid("1 1", 2), &z2).unwrap(), 4);
    }

    #[test]
    fn trefoil_by_plain_enumeration() {
        // all 6³ arc assignments, checked against every relation
        let s3 = builtin_group("S3").unwrap();
        let pres = WirtingerPresentation::from_braid(&braid("1 1 1", 2));
        let mut count = 0;
        for a in 0..216 {
            let x = [a % 6, a / 6 % 6, a / 36];
            let ok = pres.relations.iter().all(|r| {
                let o = if r.positive { x[r.over] } else { s3.inv(x[r.over]) };
                s3.conj(o, x[r.under_in]) == x[r.under_out]
            });
            count += ok as u64;
        }
        assert_eq!(count, 12);
    }

    #[test]
    fn budget_refusal() {
        let s4 = builtin_group("S4").unwrap();
        assert!(matches!(
            wirtinger_hom_count_with_budget(&BraidWord::identity(4), &s4, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_hurwitz(b in arb_braid(4, 9), spec in prop::sample::select(vec!["S3", "Q8", "D5", "Z2 x Z2"])) {
            let g = builtin_group(spec).unwrap();
            prop_assert_eq!(wirtinger_hom_count(&b, &g).unwrap(), hom_count_exact(&b, &g).unwrap());
        }
    }
}
