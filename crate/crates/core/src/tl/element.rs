use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::CyclotomicNumber;
use crate::braid::BraidWord;
use crate::error::{Error, Result};

use super::diagram::{TLBasis, TLDiagram};

/// Root-of-unity data for `q = e^{πi/ℓ}`.
///
/// Everything lives at cyclotomic order `4ℓ`. The bracket variable is
/// `A = ζ_{4ℓ}`, so `t = A^4 = q²` and `t^{1/2} = A² = q`; the loop value is
/// `δ = -A² - A⁻²`.
#[derive(Clone, Debug)]
pub struct TlParams {
    ell: u32,
    order: u32,
    delta_powers: Vec<CyclotomicNumber>,
}

impl TlParams {
    pub fn new(ell: u32) -> Result<Self> {
        if ell < 3 {
            return Err(Error::InvalidArgument(format!("ℓ must be at least 3, got {ell}")));
        }
        let order = 4 * ell;
        let delta = -(&CyclotomicNumber::zeta_pow(order, 2) + &CyclotomicNumber::zeta_pow(order, -2));
        Ok(Self {
            ell,
            order,
            delta_powers: vec![CyclotomicNumber::one(order), delta],
        })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `A^k`
    pub fn a_pow(&self, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta_pow(self.order, k)
    }

    pub fn delta(&self) -> &CyclotomicNumber {
        &self.delta_powers[1]
    }

    pub fn delta_pow(&self, k: usize) -> CyclotomicNumber {
        match self.delta_powers.get(k) {
            Some(d) => d.clone(),
            None => self.delta().pow(k as u64),
        }
    }

    /// Makes sure `δ^k` is cached for `k <= max`.
    pub(crate) fn reserve(&mut self, max: usize) {
        while self.delta_powers.len() <= max {
            let next = self.delta_powers.last().unwrap() * self.delta();
            self.delta_powers.push(next);
        }
    }
}

/// Sparse linear combination of TL diagrams with cyclotomic coefficients.
#[derive(Clone, Debug)]
pub struct TLElement {
    basis: Arc<TLBasis>,
    order: u32,
    terms: BTreeMap<usize, CyclotomicNumber>,
}

impl PartialEq for TLElement {
    fn eq(&self, other: &Self) -> bool {
        self.basis.strands() == other.basis.strands() && self.terms == other.terms
    }
}

impl Eq for TLElement {}

impl TLElement {
    pub fn zero(n: usize, order: u32) -> Self {
        Self {
            basis: TLBasis::get(n),
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        Self::from_diagram(&TLDiagram::identity(n), CyclotomicNumber::one(order))
    }

    pub fn from_diagram(d: &TLDiagram, coeff: CyclotomicNumber) -> Self {
        let mut x = Self::zero(d.strands(), coeff.order());
        let idx = x.basis.index_of(d);
        x.add_term(idx, coeff);
        x
    }

    pub fn strands(&self) -> usize {
        self.basis.strands()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn basis(&self) -> &Arc<TLBasis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms as (basis index, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, &CyclotomicNumber)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn coeff(&self, d: &TLDiagram) -> CyclotomicNumber {
        self.terms
            .get(&self.basis.index_of(d))
            .cloned()
            .unwrap_or_else(|| CyclotomicNumber::zero(self.order))
    }

    fn add_term(&mut self, idx: usize, c: CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &other.terms {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        let mut out = Self::zero(self.strands(), self.order);
        for (&i, x) in &self.terms {
            out.add_term(i, x * c);
        }
        out
    }

    /// Algebra product `self · other` (self stacked on top).
    pub fn mul(&self, other: &Self, params: &TlParams) -> Self {
        assert_eq!(self.strands(), other.strands(), "strand mismatch");
        let mut out = Self::zero(self.strands(), self.order);
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                let (k, loops) = self.basis.product(i, j);
                out.add_term(k, &(a * b) * &params.delta_pow(loops));
            }
        }
        out
    }

    /// `self · e_i`.
    fn mul_e(&self, i: usize, params: &TlParams) -> Self {
        let e = self.basis.index_of(&TLDiagram::e(self.strands(), i));
        let mut out = Self::zero(self.strands(), self.order);
        for (&j, c) in &self.terms {
            let (k, loops) = self.basis.product(j, e);
            out.add_term(k, c * &params.delta_pow(loops));
        }
        out
    }

    /// `self · g` for the image `g` of a single braid letter.
    pub(crate) fn mul_letter(&self, letter: i32, params: &TlParams) -> Self {
        let (id_pow, e_pow) = if letter > 0 { (1, -1) } else { (-1, 1) };
        let i = letter.unsigned_abs() as usize;
        let ident = self.scale(&params.a_pow(id_pow));
        let with_e = self.mul_e(i, params).scale(&params.a_pow(e_pow));
        ident.add(&with_e)
    }
}

/// Image of a braid letter: `σ_i ↦ A·1 + A⁻¹·e_i`, `σ_i⁻¹ ↦ A⁻¹·1 + A·e_i`.
pub fn generator_image(n: usize, letter: i32, params: &TlParams) -> TLElement {
    TLElement::identity(n, params.order()).mul_letter(letter, params)
}

/// Image of a braid in `TL_n` at the root of unity fixed by `ℓ`.
pub fn braid_to_tl(b: &BraidWord, ell: u32) -> Result<TLElement> {
    let mut params = TlParams::new(ell)?;
    params.reserve(b.strands());
    Ok(braid_to_tl_with(b, &params))
}

pub fn braid_to_tl_with(b: &BraidWord, params: &TlParams) -> TLElement {
    b.letters()
        .iter()
        .fold(TLElement::identity(b.strands(), params.order()), |x, &l| {
            x.mul_letter(l, params)
        })
}

/// Closure trace: `Σ coeff(d) · δ^{loops(closure d) - 1}`.
pub fn markov_trace(x: &TLElement, params: &TlParams) -> CyclotomicNumber {
    let mut acc = CyclotomicNumber::zero(params.order());
    for (i, c) in x.terms() {
        let loops = x.basis().diagram(i).closure_loops();
        acc = &acc + &(c * &params.delta_pow(loops - 1));
    }
    acc
}
