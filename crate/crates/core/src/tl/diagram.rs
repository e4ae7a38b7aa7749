use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// A Temperley–Lieb diagram: a planar perfect matching on `n` top points
/// (`0..n`, left to right) and `n` bottom points (`n..2n`, left to right).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    partner: Vec<u8>,
}

impl TLDiagram {
    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0u8; 2 * n];
        for k in 0..n {
            partner[k] = (n + k) as u8;
            partner[n + k] = k as u8;
        }
        Self { partner }
    }

    /// The generator `e_i` (1-based): cup and cap joining positions `i, i+1`.
    pub fn e(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "e_{i} does not exist in TL_{n}");
        let mut d = Self::identity(n);
        let (a, b) = (i - 1, i);
        d.partner[a] = b as u8;
        d.partner[b] = a as u8;
        d.partner[n + a] = (n + b) as u8;
        d.partner[n + b] = (n + a) as u8;
        d
    }

    /// Builds a diagram from a partner array, checking that it is a planar
    /// perfect matching.
    pub fn from_partner(partner: Vec<u8>) -> Option<Self> {
        let m = partner.len();
        if !m.is_multiple_of(2) || m > 2 * u8::MAX as usize {
            return None;
        }
        for (i, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= m || p == i || partner[p] as usize != i {
                return None;
            }
        }
        let d = Self { partner };
        d.is_planar().then_some(d)
    }

    pub fn strands(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, point: usize) -> usize {
        self.partner[point] as usize
    }

    pub fn partners(&self) -> &[u8] {
        &self.partner
    }

    /// Position of a point going clockwise around the rectangle: top
    /// left-to-right, then bottom right-to-left.
    fn cyclic_position(&self, point: usize) -> usize {
        let n = self.strands();
        if point < n {
            point
        } else {
            3 * n - 1 - point
        }
    }

    pub fn is_planar(&self) -> bool {
        let chords: Vec<(usize, usize)> = (0..self.partner.len())
            .filter(|&p| p < self.partner(p))
            .map(|p| {
                let (a, b) = (self.cyclic_position(p), self.cyclic_position(self.partner(p)));
                (a.min(b), a.max(b))
            })
            .collect();
        chords.iter().enumerate().all(|(i, &(a, b))| {
            chords[i + 1..]
                .iter()
                .all(|&(c, d)| !((a < c && c < b && b < d) || (c < a && a < d && d < b)))
        })
    }

    /// Stacks `self` on top of `below`; returns the product diagram and the
    /// number of closed loops created in the middle.
    pub fn compose(&self, below: &Self) -> (Self, usize) {
        let n = self.strands();
        assert_eq!(n, below.strands(), "strand mismatch");
        let mut partner = vec![u8::MAX; 2 * n];
        let mut middle_seen = vec![false; n];

        // Follows a path that has just arrived at middle point `j`, coming
        // from the upper diagram (`from_top`) or the lower one. Returns the
        // result endpoint it exits at.
        let walk = |mut j: usize, mut from_top: bool, seen: &mut Vec<bool>| -> usize {
            loop {
                seen[j] = true;
                if from_top {
                    let q = below.partner(j);
                    if q >= n {
                        return q;
                    }
                    j = q;
                    from_top = false;
                } else {
                    let q = self.partner(n + j);
                    if q < n {
                        return q;
                    }
                    j = q - n;
                    from_top = true;
                }
            }
        };

        for k in 0..n {
            if partner[k] == u8::MAX {
                let q = self.partner(k);
                let end = if q < n { q } else { walk(q - n, true, &mut middle_seen) };
                partner[k] = end as u8;
                partner[end] = k as u8;
            }
            let b = n + k;
            if partner[b] == u8::MAX {
                let q = below.partner(b);
                let end = if q >= n { q } else { walk(q, false, &mut middle_seen) };
                partner[b] = end as u8;
                partner[end] = b as u8;
            }
        }

        let mut loops = 0;
        for start in 0..n {
            if middle_seen[start] {
                continue;
            }
            loops += 1;
            let mut j = start;
            loop {
                middle_seen[j] = true;
                // upper diagram joins middle j to another middle point, and so
                // does the lower one; alternate until back at the start
                let up = self.partner(n + j) - n;
                middle_seen[up] = true;
                j = below.partner(up);
                if j == start {
                    break;
                }
            }
        }
        (Self { partner }, loops)
    }

    /// Loops in the closure joining top `k` to bottom `k` for every `k`.
    pub fn closure_loops(&self) -> usize {
        let n = self.strands();
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut p = start;
            loop {
                seen[p] = true;
                let q = self.partner(p);
                seen[q] = true;
                p = if q < n { q + n } else { q - n };
                if p == start {
                    break;
                }
            }
        }
        loops
    }

    /// All diagrams on `n` strands, sorted by partner array.
    pub fn enumerate(n: usize) -> Vec<Self> {
        // non-crossing matchings of points laid out on a circle
        fn rec(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
            if points.is_empty() {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for k in (1..points.len()).step_by(2) {
                let outer = rec(&points[k + 1..]);
                for inner in rec(&points[1..k]) {
                    for o in &outer {
                        let mut m = vec![(points[0], points[k])];
                        m.extend_from_slice(&inner);
                        m.extend_from_slice(o);
                        out.push(m);
                    }
                }
            }
            out
        }
        let cyclic: Vec<usize> = (0..2 * n).collect();
        let raw = rec(&cyclic);
        let point_of = |c: usize| if c < n { c } else { 3 * n - 1 - c };
        let mut out: Vec<Self> = raw
            .into_iter()
            .map(|pairs| {
                let mut partner = vec![0u8; 2 * n];
                for (a, b) in pairs {
                    let (pa, pb) = (point_of(a), point_of(b));
                    partner[pa] = pb as u8;
                    partner[pb] = pa as u8;
                }
                Self { partner }
            })
            .collect();
        out.sort();
        out
    }
}

/// Largest strand count with a precomputed multiplication table.
pub const TABLE_MAX_STRANDS: usize = 8;

/// The Catalan-indexed diagram basis of `TL_n`.
#[derive(Debug)]
pub struct TLBasis {
    n: usize,
    diagrams: Vec<TLDiagram>,
    index: HashMap<TLDiagram, usize>,
    // products[i * len + j] = (index of d_i d_j, loops)
    products: Option<Vec<(u32, u8)>>,
}

impl TLBasis {
    /// Shared basis for `n` strands, built on first use.
    pub fn get(n: usize) -> Arc<TLBasis> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<TLBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.read().unwrap().get(&n) {
            return Arc::clone(b);
        }
        let basis = Arc::new(Self::build(n));
        Arc::clone(cache.write().unwrap().entry(n).or_insert(basis))
    }

    fn build(n: usize) -> Self {
        let diagrams = TLDiagram::enumerate(n);
        let index: HashMap<TLDiagram, usize> = diagrams.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let products = (n <= TABLE_MAX_STRANDS).then(|| {
            use rayon::prelude::*;
            diagrams
                .par_iter()
                .flat_map_iter(|a| {
                    diagrams.iter().map(|b| {
                        let (c, loops) = a.compose(b);
                        (index[&c] as u32, loops as u8)
                    })
                })
                .collect()
        });
        Self {
            n,
            diagrams,
            index,
            products,
        }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagram(&self, i: usize) -> &TLDiagram {
        &self.diagrams[i]
    }

    pub fn diagrams(&self) -> &[TLDiagram] {
        &self.diagrams
    }

    pub fn index_of(&self, d: &TLDiagram) -> usize {
        self.index[d]
    }

    /// Product of basis diagrams `i · j` as (index, loops).
    pub fn product(&self, i: usize, j: usize) -> (usize, usize) {
        match &self.products {
            Some(t) => {
                let (k, l) = t[i * self.len() + j];
                (k as usize, l as usize)
            }
            None => {
                let (c, loops) = self.diagrams[i].compose(&self.diagrams[j]);
                (self.index[&c], loops)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan(n: usize) -> usize {
        (0..n).fold(1usize, |c, k| c * 2 * (2 * k + 1) / (k + 2))
    }

    #[test]
    fn basis_sizes_are_catalan() {
        for n in 1..=7 {
            let ds = TLDiagram::enumerate(n);
            assert_eq!(ds.len(), catalan(n), "n = {n}");
            assert!(ds.iter().all(TLDiagram::is_planar));
        }
    }

    #[test]
    fn identity_squared() {
        let id = TLDiagram::identity(3);
        assert_eq!(id.compose(&id), (id.clone(), 0));
    }

    #[test]
    fn e_squared_gives_a_loop() {
        let e1 = TLDiagram::e(2, 1);
        assert_eq!(e1.compose(&e1), (e1.clone(), 1));
    }

    #[test]
    fn hook_and_jones_relation() {
        let (e1, e2) = (TLDiagram::e(3, 1), TLDiagram::e(3, 2));
        let (hook, loops) = e1.compose(&e2);
        assert_eq!(loops, 0);
        // top cup at 0-1, bottom cap at 1-2, through strand top 2 → bottom 0
        assert_eq!(hook.partners(), &[1, 0, 3, 2, 5, 4]);
        let (back, loops) = hook.compose(&e1);
        assert_eq!((back, loops), (e1.clone(), 0));
    }

    #[test]
    fn far_generators_commute() {
        let (e1, e3) = (TLDiagram::e(4, 1), TLDiagram::e(4, 3));
        assert_eq!(e1.compose(&e3), e3.compose(&e1));
    }

    #[test]
    fn closure_loop_counts() {
        assert_eq!(TLDiagram::identity(2).closure_loops(), 2);
        assert_eq!(TLDiagram::e(2, 1).closure_loops(), 1);
        assert_eq!(TLDiagram::e(4, 2).closure_loops(), 3);
    }

    #[test]
    fn non_planar_rejected() {
        // top 0 ↔ bottom 1, top 1 ↔ bottom 0 is a crossing
        assert!(TLDiagram::from_partner(vec![3, 2, 1, 0]).is_none());
        assert!(TLDiagram::from_partner(vec![2, 3, 0, 1]).is_some());
    }

    #[test]
    fn table_agrees_with_composition() {
        let b = TLBasis::get(4);
        for i in 0..b.len() {
            for j in 0..b.len() {
                let (c, l) = b.diagram(i).compose(b.diagram(j));
                assert_eq!(b.product(i, j), (b.index_of(&c), l));
            }
        }
    }

    #[test]
    fn composition_is_associative() {
        let ds = TLDiagram::enumerate(4);
        for a in &ds {
            for b in &ds {
                for c in ds.iter().step_by(3) {
                    let (ab, l1) = a.compose(b);
                    let (abc, l2) = ab.compose(c);
                    let (bc, l3) = b.compose(c);
                    let (abc2, l4) = a.compose(&bc);
                    assert_eq!(abc, abc2);
                    assert_eq!(l1 + l2, l3 + l4);
                }
            }
        }
    }
}
