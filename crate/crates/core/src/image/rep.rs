use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{finite_field, CyclotomicNumber, FpMatrix};
use crate::burau::burau_generator;
use crate::error::{Error, Result};
use crate::tl::{generator_image, TLBasis, TLElement, TlParams};

use super::matrix::{CycMatrix, ExactMatrix};

/// Largest strand count for the TL family (Catalan dimension 132).
pub const TL_MAX_STRANDS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RepFamily {
    /// Jones representation through Temperley–Lieb at `q = e^{πi/ℓ}`.
    Tl { ell: u32 },
    /// Reduced Burau at `t = t0` over `F_p`.
    BurauModP { p: u64, t0: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepSpec {
    #[serde(flatten)]
    pub family: RepFamily,
    pub strands: usize,
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            RepFamily::Tl { ell } => write!(f, "TL(ℓ={ell}) on {} strands", self.strands),
            RepFamily::BurauModP { p, t0 } => {
                write!(f, "Burau mod {p} at t={t0} on {} strands", self.strands)
            }
        }
    }
}

/// Braid generators acting on the right of a row block of states.
///
/// Group elements are identified with `start · M_g`: for Burau `start` is
/// the identity, for TL it is the trace functional, whose orbit identifies
/// elements of the algebra modulo the radical of the trace form.
#[derive(Clone, Debug)]
pub struct Representation<M> {
    pub start: M,
    pub generators: Vec<M>,
    pub inverses: Vec<M>,
}

impl<M: ExactMatrix> Representation<M> {
    /// State of the braid word given as letters.
    pub fn state_of(&self, letters: &[i32]) -> M {
        letters
            .iter()
            .fold(self.start.clone(), |s, &l| s.product(self.matrix_of(l)))
    }

    pub fn matrix_of(&self, letter: i32) -> &M {
        let i = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            &self.generators[i]
        } else {
            &self.inverses[i]
        }
    }

    pub fn dimension(&self) -> usize {
        self.start.cols()
    }
}

#[derive(Clone, Debug)]
pub enum RepMatrices {
    Cyclotomic(Representation<CycMatrix>),
    FiniteField(Representation<FpMatrix>),
}

/// Matrix of left multiplication by `x` on the diagram basis.
fn left_multiplication(x: &TLElement, params: &TlParams) -> CycMatrix {
    let basis = x.basis().clone();
    let order = params.order();
    let mut m = CycMatrix::zeros(order, basis.len(), basis.len());
    for (j, d) in basis.diagrams().iter().enumerate() {
        let col = x.mul(&TLElement::from_diagram(d, CyclotomicNumber::one(order)), params);
        for (i, c) in col.terms() {
            m.set(i, j, c.clone());
        }
    }
    m
}

pub fn rep_generators(spec: &RepSpec) -> Result<RepMatrices> {
    let n = spec.strands;
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two strands".into()));
    }
    match spec.family {
        RepFamily::Tl { ell } => {
            if n > TL_MAX_STRANDS {
                return Err(Error::BudgetExceeded {
                    what: format!("TL representation on {n} strands"),
                    required: TLBasis::get(n).len() as u128,
                    budget: TLBasis::get(TL_MAX_STRANDS).len() as u128,
                });
            }
            let mut params = TlParams::new(ell)?;
            params.reserve(n);
            let basis = TLBasis::get(n);
            let order = params.order();
            let mut start = CycMatrix::zeros(order, 1, basis.len());
            for (j, d) in basis.diagrams().iter().enumerate() {
                start.set(0, j, params.delta_pow(d.closure_loops()));
            }
            let image = |l: i32| left_multiplication(&generator_image(n, l, &params), &params);
            Ok(RepMatrices::Cyclotomic(Representation {
                start,
                generators: (1..n as i32).map(image).collect(),
                inverses: (1..n as i32).map(|i| image(-i)).collect(),
            }))
        }
        RepFamily::BurauModP { p, t0 } => {
            finite_field::require_prime(p)?;
            if t0 % p == 0 {
                return Err(Error::InvalidArgument(format!("t0 = {t0} vanishes mod {p}")));
            }
            let image = |l: i32| burau_generator(n, l).eval_mod(p, t0);
            Ok(RepMatrices::FiniteField(Representation {
                start: FpMatrix::identity(p, n - 1)?,
                generators: (1..n as i32).map(image).collect::<Result<_>>()?,
                inverses: (1..n as i32).map(|i| image(-i)).collect::<Result<_>>()?,
            }))
        }
    }
}
