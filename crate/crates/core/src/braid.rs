//! Braid words and the combinatorics of their closures.
//!
//! Letter `+i` is `σ_i`, `-i` is `σ_i^{-1}`; `σ_i` crosses the strands at
//! positions `i` and `i+1` (1-based). Words are read left to right, and every
//! representation in this crate maps a word to the product of generator
//! images in that same order.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidArgument("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 {
                return Err(Error::Parse("zero is not a braid letter".into()));
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(Error::Parse(format!("letter {l} out of range for {strands} strands")));
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self::new(strands, Vec::new()).expect("positive strand count")
    }

    /// Parses whitespace-separated nonzero integers.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| Error::Parse(format!("malformed braid letter {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Crossings of the closure diagram: one per letter.
    pub fn crossings(&self) -> usize {
        self.letters.len()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| i64::from(l.signum())).sum()
    }

    pub fn permutation(&self) -> Permutation {
        // strand_at[pos] = strand index currently at position pos
        let mut strand_at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            strand_at.swap(i - 1, i);
        }
        let mut images = vec![0; self.strands];
        for (pos, &s) in strand_at.iter().enumerate() {
            images[s] = pos;
        }
        Permutation { images }
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        self.permutation().cycle_count()
    }

    /// Component index (0-based, in order of first strand) for each strand
    /// starting position.
    pub fn strand_components(&self) -> Vec<usize> {
        self.permutation().cycle_labels()
    }

    /// Linking numbers between closure components; diagonal is zero.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let comp = self.strand_components();
        let c = self.components();
        let mut twice = vec![vec![0i64; c]; c];
        let mut strand_at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            let (a, b) = (comp[strand_at[i - 1]], comp[strand_at[i]]);
            if a != b {
                let s = i64::from(l.signum());
                twice[a][b] += s;
                twice[b][a] += s;
            }
            strand_at.swap(i - 1, i);
        }
        for row in &mut twice {
            for v in row.iter_mut() {
                debug_assert!(*v % 2 == 0, "odd inter-component crossing count");
                *v /= 2;
            }
        }
        twice
    }

    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Same word with every crossing switched.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().map(|&l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    /// Formal conjugate `g · self · g⁻¹`, without reduction.
    pub fn conjugate(&self, g: &Self) -> Result<Self> {
        g.concat(self)?.concat(&g.inverse())
    }

    /// Markov stabilization: `self · σ_n^{±1}` on `n + 1` strands.
    pub fn stabilize(&self, positive: bool) -> Self {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        Self {
            strands: self.strands + 1,
            letters,
        }
    }

    /// Adds `extra` untouched strands on the right (split union with an
    /// `extra`-component unlink).
    pub fn with_extra_strands(&self, extra: usize) -> Self {
        Self {
            strands: self.strands + extra,
            letters: self.letters.clone(),
        }
    }

    /// Cancels adjacent `x, -x` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self {
            strands: self.strands,
            letters: out,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// A permutation of strand positions: `images[k]` is where the strand that
/// starts at position `k` ends up (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| k == v)
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self {
            images: self.images.iter().map(|&k| other.images[k]).collect(),
        }
    }

    /// Cycle index of each point, numbered in order of smallest element.
    pub fn cycle_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0;
        for start in 0..self.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let mut k = start;
            while label[k] == usize::MAX {
                label[k] = next;
                k = self.images[k];
            }
            next += 1;
        }
        label
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Cycles in 1-based notation, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cyc.push(k + 1);
                k = self.images[k];
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        (1..=max_strands).prop_flat_map(move |n| {
            let letter = if n == 1 {
                Just(0i32).boxed()
            } else {
                prop_oneof![(1..n as i32), (1..n as i32).prop_map(|x| -x)].boxed()
            };
            prop::collection::vec(letter, 0..=max_len).prop_map(move |v| {
                let v = v.into_iter().filter(|&x| x != 0).collect();
                BraidWord::new(n, v).unwrap()
            })
        })
    }

    #[test]
    fn parsing() {
        let t = BraidWord::parse("1 1 1", 2).unwrap();
        assert_eq!(t.letters(), &[1, 1, 1]);
        assert!(BraidWord::parse("", 3).unwrap().is_empty());
        let f8 = BraidWord::parse("1 -2 1 -2", 3).unwrap();
        assert_eq!(f8.letters(), &[1, -2, 1, -2]);
        assert!(matches!(BraidWord::parse("2", 2), Err(Error::Parse(_))));
        assert!(matches!(BraidWord::parse("0", 3), Err(Error::Parse(_))));
        assert!(matches!(BraidWord::parse("1 x", 3), Err(Error::Parse(_))));
        assert!(BraidWord::parse("", 0).is_err());
    }

    #[test]
    fn permutations() {
        let s1 = BraidWord::parse("1", 2).unwrap();
        assert_eq!(s1.permutation().images(), &[1, 0]);
        assert!(BraidWord::identity(4).permutation().is_identity());
        // σ1σ2: strand 1 → 2 → 3, strand 2 → 1, strand 3 → 2
        let p = BraidWord::parse("1 2", 3).unwrap().permutation();
        assert_eq!(p.images(), &[2, 0, 1]);
        assert_eq!(p.to_string(), "(1 3 2)");
    }

    #[test]
    fn purity_and_components() {
        assert!(BraidWord::parse("1 1", 2).unwrap().is_pure());
        assert!(!BraidWord::parse("1", 2).unwrap().is_pure());
        assert!(!BraidWord::parse("1 -2 1 -2", 3).unwrap().is_pure());
        assert_eq!(BraidWord::parse("1 1 1", 2).unwrap().components(), 1);
        assert_eq!(BraidWord::parse("1 1", 2).unwrap().components(), 2);
        assert_eq!(BraidWord::identity(3).components(), 3);
    }

    #[test]
    fn writhes() {
        assert_eq!(BraidWord::parse("1 1 1", 2).unwrap().writhe(), 3);
        assert_eq!(BraidWord::parse("1 -1", 2).unwrap().writhe(), 0);
        assert_eq!(BraidWord::parse("1 -2 1 -2", 3).unwrap().writhe(), 0);
    }

    #[test]
    fn linking_matrices() {
        assert_eq!(
            BraidWord::parse("1 1", 2).unwrap().linking_matrix(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert_eq!(BraidWord::identity(2).linking_matrix(), vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(
            BraidWord::parse("-1 -1", 2).unwrap().linking_matrix(),
            vec![vec![0, -1], vec![-1, 0]]
        );
        // chain of two Hopf links
        assert_eq!(
            BraidWord::parse("1 1 2 2", 3).unwrap().linking_matrix(),
            vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]
        );
    }

    #[test]
    fn markov_moves() {
        let t = BraidWord::parse("1 1 1", 2).unwrap();
        let g = BraidWord::parse("1", 2).unwrap();
        assert_eq!(t.conjugate(&g).unwrap().letters(), &[1, 1, 1, 1, -1]);
        let s = t.stabilize(true);
        assert_eq!((s.strands(), s.letters()), (3, &[1, 1, 1, 2][..]));
        let u = BraidWord::identity(1).stabilize(false);
        assert_eq!((u.strands(), u.letters()), (2, &[-1][..]));
        assert!(t.conjugate(&BraidWord::identity(3)).is_err());
    }

    #[test]
    fn free_reduction() {
        let w = BraidWord::parse("1 2 -2 -1 3", 4).unwrap();
        assert_eq!(w.free_reduce().letters(), &[3]);
    }

    proptest! {
        #[test]
        fn permutation_is_a_homomorphism((a, b) in arb_braid(5, 10).prop_flat_map(|a| {
            let n = a.strands();
            (Just(a), arb_braid(n, 10).prop_filter("same strands", move |b| b.strands() == n))
        })) {
            let ab = a.concat(&b).unwrap();
            prop_assert_eq!(ab.permutation(), a.permutation().then(&b.permutation()));
        }

        #[test]
        fn pure_iff_all_strands_are_components(b in arb_braid(5, 12)) {
            prop_assert_eq!(b.is_pure(), b.components() == b.strands());
        }

        #[test]
        fn linking_matrix_symmetric_and_conjugation_invariant(b in arb_braid(5, 12), g in prop::collection::vec(1i32..5, 0..6)) {
            let m = b.linking_matrix();
            for (i, row) in m.iter().enumerate() {
                prop_assert_eq!(row[i], 0);
                for (j, v) in row.iter().enumerate() {
                    prop_assert_eq!(*v, m[j][i]);
                }
            }
            let n = b.strands() as i32;
            let g: Vec<i32> = g.into_iter().filter(|&x| x < n).collect();
            let g = BraidWord::new(b.strands(), g).unwrap();
            let c = b.conjugate(&g).unwrap();
            prop_assert_eq!(b.components(), c.components());
            // strand k of g·b·g⁻¹ enters b at position perm_g(k)
            let pg = g.permutation();
            let (cb, cc) = (b.strand_components(), c.strand_components());
            let mut relabel = vec![0; c.components()];
            for k in 0..b.strands() {
                relabel[cc[k]] = cb[pg.images()[k]];
            }
            let mc = c.linking_matrix();
            for i in 0..mc.len() {
                for j in 0..mc.len() {
                    prop_assert_eq!(mc[i][j], m[relabel[i]][relabel[j]]);
                }
            }
        }
    }
}
