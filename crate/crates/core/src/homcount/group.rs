use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::io::Read;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest group order accepted by the constructors.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Groups up to this order get a full associativity check.
const FULL_CHECK_ORDER: usize = 64;
const SPOT_CHECKS: usize = 200_000;

/// A finite group given by its multiplication table on indices `0..order`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    identity: u16,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, `table[a][b] = a·b`, and
    /// verifies the group axioms.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if order > DEFAULT_ORDER_CAP {
            return Err(Error::InvalidGroup(format!(
                "order {order} exceeds the cap of {DEFAULT_ORDER_CAP}"
            )));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidGroup(format!("entry {x} out of range in row {a}")));
                }
                flat.push(x as u16);
            }
        }
        Self::from_flat(name.into(), order, flat)
    }

    fn from_flat(name: String, order: usize, table: Vec<u16>) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        // Latin square: every row and column is a permutation
        let (mut row_seen, mut col_seen) = (vec![usize::MAX; order], vec![usize::MAX; order]);
        for a in 0..order {
            for x in 0..order {
                let (r, c) = (at(a, x), at(x, a));
                if row_seen[r] == a || col_seen[c] == a {
                    return Err(Error::InvalidGroup(format!("element {a} does not cancel")));
                }
                row_seen[r] = a;
                col_seen[c] = a;
            }
        }
        let inverse: Vec<u16> = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| at(a, b) == identity)
                    .map(|b| b as u16)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<_>>()?;
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if order <= FULL_CHECK_ORDER {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..SPOT_CHECKS {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !assoc(a, b, c) {
                    return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        Ok(Self {
            name,
            order,
            table,
            inverse,
            identity: identity as u16,
        })
    }

    /// Tabulates a group from an explicit element list and multiplication.
    /// The first element must be the identity.
    fn from_elements<T: Clone + Eq + Hash>(name: String, elements: Vec<T>, mul: impl Fn(&T, &T) -> T) -> Result<Self> {
        let order = elements.len();
        if order > DEFAULT_ORDER_CAP {
            return Err(Error::InvalidGroup(format!(
                "{name} has order {order}, above the cap of {DEFAULT_ORDER_CAP}"
            )));
        }
        let index: HashMap<&T, u16> = elements.iter().enumerate().map(|(i, x)| (x, i as u16)).collect();
        let mut table = Vec::with_capacity(order * order);
        for a in &elements {
            for b in &elements {
                let c = mul(a, b);
                let &k = index
                    .get(&c)
                    .ok_or_else(|| Error::InvalidGroup(format!("{name} is not closed")))?;
                table.push(k);
            }
        }
        Self::from_flat(name, order, table)
    }

    /// Reads a table as CSV: `order` rows of `order` comma-separated indices.
    pub fn from_csv(name: impl Into<String>, reader: impl Read) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut rows = Vec::new();
        for (r, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Parse(format!("table row {}: {e}", r + 1)))?;
            let row = rec
                .iter()
                .map(|f| {
                    f.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("table row {}: bad index {f:?}", r + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_table(name, &rows)
    }

    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("cyclic group needs k ≥ 1".into()));
        }
        Self::from_elements(format!("Z{k}"), (0..k).collect(), |a, b| (a + b) % k)
    }

    /// Dihedral group of order `2k`: pairs `(r, s)` standing for `ρ^r τ^s`.
    pub fn dihedral(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("dihedral group needs k ≥ 1".into()));
        }
        let elements: Vec<(usize, u8)> = (0..2).flat_map(|s| (0..k).map(move |r| (r, s))).collect();
        Self::from_elements(format!("D{k}"), elements, |&(r1, s1), &(r2, s2)| {
            let r2 = if s1 == 1 { (k - r2) % k } else { r2 };
            ((r1 + r2) % k, s1 ^ s2)
        })
    }

    /// Symmetric group on `k` letters; `a·b` applies `b` first.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("symmetric group needs k ≥ 1".into()));
        }
        let size: usize = (1..=k).product();
        if size > DEFAULT_ORDER_CAP {
            return Err(Error::InvalidGroup(format!(
                "S{k} has order {size}, above the cap of {DEFAULT_ORDER_CAP}"
            )));
        }
        Self::from_elements(format!("S{k}"), permutations(k), |a: &Vec<u8>, b: &Vec<u8>| {
            b.iter().map(|&x| a[x as usize]).collect()
        })
    }

    /// Quaternion group: pairs `(m, e)` standing for `a^m x^e` with
    /// `a⁴ = 1`, `x² = a²`, `x a x⁻¹ = a⁻¹`.
    pub fn quaternion8() -> Result<Self> {
        let elements: Vec<(u8, u8)> = (0..2).flat_map(|e| (0..4).map(move |m| (m, e))).collect();
        Self::from_elements("Q8".into(), elements, |&(m1, e1), &(m2, e2)| {
            if e1 == 0 {
                ((m1 + m2) % 4, e2)
            } else if e2 == 0 {
                ((m1 + 4 - m2) % 4, 1)
            } else {
                ((m1 + 4 - m2 + 2) % 4, 0)
            }
        })
    }

    pub fn direct_product(a: &Self, b: &Self) -> Result<Self> {
        let order = a.order * b.order;
        if order > DEFAULT_ORDER_CAP {
            return Err(Error::InvalidGroup(format!(
                "{a} x {b} has order {order}, above the cap of {DEFAULT_ORDER_CAP}"
            )));
        }
        // identity of each factor first, so the pair (e, e) comes first
        let elems = |g: &Self| {
            let mut v = vec![g.identity as usize];
            v.extend((0..g.order).filter(|&x| x != g.identity as usize));
            v
        };
        let pairs: Vec<(usize, usize)> = elems(a)
            .into_iter()
            .flat_map(|x| elems(b).into_iter().map(move |y| (x, y)))
            .collect();
        Self::from_elements(format!("{a} x {b}"), pairs, |&(x1, y1), &(x2, y2)| {
            (a.mul(x1, x2), b.mul(y1, y2))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a b a⁻¹`
    #[inline]
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a membership mask.
    fn generated(&self, gens: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[self.identity()] = true;
        let mut elems = vec![self.identity()];
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        member
    }

    /// Nilpotency via the lower central series `γ₁ = G`, `γ_{k+1} = [γ_k, G]`.
    pub fn is_nilpotent(&self) -> bool {
        let mut current = vec![true; self.order];
        loop {
            let members: Vec<usize> = (0..self.order).filter(|&x| current[x]).collect();
            if members.len() == 1 {
                return true;
            }
            let mut commutators = vec![false; self.order];
            for &x in &members {
                for y in 0..self.order {
                    let c = self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)));
                    commutators[c] = true;
                }
            }
            let next = self.generated((0..self.order).filter(|&c| commutators[c]));
            if next == current {
                return false;
            }
            current = next;
        }
    }
}

/// All permutations of `0..k` in lexicographic order (identity first).
fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut p: Vec<u8> = (0..k as u8).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Parses a group description: `cyclic k`, `dihedral k` (order `2k`),
/// `symmetric k`, `quaternion8`, the short forms `Zk`, `Dk`, `Sk`, `Q8`, and
/// direct products joined by ` x `.
pub fn builtin_group(spec: &str) -> Result<FiniteGroup> {
    let factors: Vec<&str> = spec.split(" x ").map(str::trim).collect();
    if factors.len() > 1 {
        let mut g = builtin_group(factors[0])?;
        for f in &factors[1..] {
            g = FiniteGroup::direct_product(&g, &builtin_group(f)?)?;
        }
        return Ok(g);
    }
    let s = spec.trim();
    let lower = s.to_ascii_lowercase();
    if lower == "quaternion8" || lower == "q8" {
        return FiniteGroup::quaternion8();
    }
    let split = lower
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::Parse(format!("unknown group {s:?}")))?;
    let (kind, k) = lower.split_at(split);
    let k: usize = k
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad group size in {s:?}")))?;
    match kind.trim() {
        "cyclic" | "z" | "c" => FiniteGroup::cyclic(k),
        "dihedral" | "d" => FiniteGroup::dihedral(k),
        "symmetric" | "s" => FiniteGroup::symmetric(k),
        _ => Err(Error::Parse(format!("unknown group {s:?}"))),
    }
}
