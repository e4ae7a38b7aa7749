//! The root-of-unity identities for the Jones polynomial, and per-entry
//! evaluation of a corpus.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::CyclotomicNumber;
use crate::braid::BraidWord;
use crate::burau::{alexander_poly, arf_knot, determinant, double_cover_homology};
use crate::error::{Error, Result};
use crate::homcount::{builtin_group, hom_count_exact_with_budget, FiniteGroup};
use crate::tl::{jones_at_root, kauffman_bracket_statesum_capped};

use super::corpus::{CorpusEntry, ExpectKey, ExpectValue};
use super::report::{Check, EntryReport, Status, Value};

/// `(-1)^{c-1}`, the value of `V` at `ℓ = 3`.
pub fn level3_value(components: usize) -> CyclotomicNumber {
    CyclotomicNumber::from_int(1, if components % 2 == 1 { 1 } else { -1 })
}

/// At `ℓ = 4`: `V` vanishes or `|V|² = 2^{c-1}`.
pub fn level4_modulus_holds(v: &CyclotomicNumber, components: usize) -> bool {
    if v.is_zero() {
        return true;
    }
    let norm = v * &v.conj();
    norm.as_integer() == Some(&(BigInt::one() << (components - 1)))
}

/// `(-1)^{Arf}`, the value of `V` at `ℓ = 4` for a knot.
pub fn level4_knot_value(arf: u8) -> CyclotomicNumber {
    CyclotomicNumber::from_int(1, if arf == 0 { 1 } else { -1 })
}

/// `i^{c-1} (i√3)^{d₃}` in `Z[ζ₁₂]`, the value of `V` at `ℓ = 6` up to sign.
pub fn level6_value(components: usize, d3: usize) -> CyclotomicNumber {
    let i = CyclotomicNumber::zeta_pow(12, 3);
    // i√3 = ζ₃ - ζ₃⁻¹
    let i_sqrt3 = &CyclotomicNumber::zeta_pow(12, 4) - &CyclotomicNumber::zeta_pow(12, 8);
    &i.pow(components as u64 - 1) * &i_sqrt3.pow(d3 as u64)
}

/// `Some(±1)` when `v = ±level6_value(c, d₃)`.
pub fn level6_sign(v: &CyclotomicNumber, components: usize, d3: usize) -> Option<i8> {
    let target = level6_value(components, d3);
    if *v == target {
        Some(1)
    } else if *v == -target {
        Some(-1)
    } else {
        None
    }
}

pub fn complex_text(c: &CyclotomicNumber) -> String {
    let z = c.to_complex();
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6} {} {:.6}i", if im < 0.0 { '-' } else { '+' }, im.abs())
    }
}

pub fn jones_value(b: &BraidWord, ell: u32) -> Result<Value> {
    let v = jones_at_root(b, ell)?;
    Ok(Value {
        name: format!("jones.l{ell}"),
        exact: v.to_string(),
        approx: Some(complex_text(&v)),
    })
}

/// Settings for the table check.
#[derive(Clone, Debug)]
pub struct CheckConfig {
    /// Levels at which the TL trace is compared with the state sum.
    pub oracle_ells: Vec<u32>,
    pub statesum_cap: usize,
    /// Groups for which `|Hom| = |G|^c` is checked; all must be abelian.
    pub abelian_groups: Vec<FiniteGroup>,
    pub hom_budget: u128,
    pub timings: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        Self {
            oracle_ells: vec![3, 4, 5, 6, 7, 10],
            statesum_cap: crate::tl::STATESUM_DEFAULT_CAP,
            abelian_groups: ["Z2", "Z3", "Z6"].iter().map(|g| builtin_group(g).unwrap()).collect(),
            hom_budget: crate::homcount::DEFAULT_HOM_BUDGET,
            timings: true,
        }
    }
}

/// A failed computation becomes a skip if it hit a budget, a failure otherwise.
fn errored(name: String, e: Error) -> Check {
    match e {
        Error::BudgetExceeded { .. } => Check::skipped(name, e.to_string()),
        _ => Check {
            name,
            status: Status::Fail,
            actual: None,
            expected: None,
            detail: e.to_string(),
        },
    }
}

fn check_expectation(b: &BraidWord, key: &ExpectKey, want: &ExpectValue, cfg: &CheckConfig) -> Check {
    let name = format!("expect {key}");
    let int = |x: Result<BigInt>| -> Check {
        match (x, want) {
            (Ok(got), ExpectValue::Integer(w)) => {
                Check::compare(name.clone(), got.to_string(), w.to_string(), &got == w)
            }
            (Ok(got), w) => Check::compare(name.clone(), got.to_string(), w.to_string(), false),
            (Err(e), _) => errored(name.clone(), e),
        }
    };
    match key {
        ExpectKey::Jones(ell) => match (jones_at_root(b, *ell), want) {
            (Ok(v), ExpectValue::Cyclotomic(w)) => Check::compare(name, v.to_string(), w.to_string(), &v == w),
            (Ok(v), w) => Check::compare(name, v.to_string(), w.to_string(), false),
            (Err(e), _) => errored(name, e),
        },
        ExpectKey::Alexander => match (alexander_poly(b), want) {
            (Ok(v), ExpectValue::Poly(w)) => {
                let w = w.canonical();
                Check::compare(name, v.to_string(), w.to_string(), v == w)
            }
            (Ok(v), w) => Check::compare(name, v.to_string(), w.to_string(), false),
            (Err(e), _) => errored(name, e),
        },
        ExpectKey::Det => int(determinant(b)),
        ExpectKey::DoubleCover(p) => int(double_cover_homology(b, *p).map(BigInt::from)),
        ExpectKey::Arf => int(arf_knot(b).map(BigInt::from)),
        ExpectKey::Components => int(Ok(BigInt::from(b.components()))),
        ExpectKey::Hom(g) => {
            int(builtin_group(g).and_then(|g| hom_count_exact_with_budget(b, &g, cfg.hom_budget).map(BigInt::from)))
        }
    }
}

/// Runs every identity and expectation on one corpus entry.
pub fn check_entry(entry: &CorpusEntry, cfg: &CheckConfig) -> EntryReport {
    let started = Instant::now();
    let b = &entry.braid;
    let c = b.components();
    let mut values = Vec::new();
    let mut checks = Vec::new();

    for &ell in &cfg.oracle_ells {
        let name = format!("trace = state sum at ℓ={ell}");
        let check = match (
            jones_at_root(b, ell),
            kauffman_bracket_statesum_capped(b, ell, cfg.statesum_cap),
        ) {
            (Ok(v), Ok(s)) => Check::compare(name, v.to_string(), s.to_string(), v == s),
            (Err(e), _) | (_, Err(e)) => errored(name, e),
        };
        checks.push(check);
    }

    let v3 = jones_at_root(b, 3).expect("ℓ = 3 is valid");
    let want3 = level3_value(c);
    checks.push(Check::compare(
        "ℓ=3: V = (-1)^(c-1)",
        v3.to_string(),
        want3.to_string(),
        v3 == want3,
    ));

    let v4 = jones_at_root(b, 4).expect("ℓ = 4 is valid");
    checks.push(
        Check::compare(
            "ℓ=4: V = 0 or |V|² = 2^(c-1)",
            v4.to_string(),
            format!("0 or |V|² = {}", BigInt::one() << (c - 1)),
            level4_modulus_holds(&v4, c),
        )
        .with_detail(if v4.is_zero() {
            "V vanishes".to_string()
        } else {
            String::new()
        }),
    );
    if c == 1 {
        let name = "ℓ=4: V = (-1)^Arf".to_string();
        checks.push(match arf_knot(b) {
            Ok(arf) => {
                let want = level4_knot_value(arf);
                Check::compare(name, v4.to_string(), want.to_string(), v4 == want).with_detail(format!("Arf = {arf}"))
            }
            Err(e) => errored(name, e),
        });
    } else {
        checks.push(Check::skipped(
            "ℓ=4: V = (-1)^Arf",
            format!("Arf is only defined here for knots; observed V = {}", complex_text(&v4)),
        ));
    }

    let v6 = jones_at_root(b, 6).expect("ℓ = 6 is valid");
    let name6 = "ℓ=6: V = ±i^(c-1)(i√3)^d3";
    match double_cover_homology(b, 3) {
        Ok(d3) => {
            let target = level6_value(c, d3);
            let sign = level6_sign(&v6, c, d3);
            checks.push(
                Check::compare(name6, v6.to_string(), format!("±{target}"), sign.is_some()).with_detail(match sign {
                    Some(1) => format!("d3 = {d3}, sign +"),
                    Some(_) => format!("d3 = {d3}, sign -"),
                    None => format!("d3 = {d3}"),
                }),
            );
        }
        Err(e) => checks.push(errored(name6.into(), e)),
    }

    for (key, want) in &entry.expected {
        checks.push(check_expectation(b, key, want, cfg));
    }

    for g in &cfg.abelian_groups {
        let name = format!("Hom(π, {g}) = |G|^c");
        let want = BigInt::from(g.order()).pow(c as u32);
        checks.push(match hom_count_exact_with_budget(b, g, cfg.hom_budget) {
            Ok(n) => Check::compare(name, n.to_string(), want.to_string(), BigInt::from(n) == want),
            Err(e) => errored(name, e),
        });
    }

    for (ell, v) in [(3, &v3), (4, &v4), (6, &v6)] {
        values.push(Value {
            name: format!("jones.l{ell}"),
            exact: v.to_string(),
            approx: Some(complex_text(v)),
        });
    }
    if let Ok(d) = determinant(b) {
        values.push(Value {
            name: "det".into(),
            exact: d.to_string(),
            approx: None,
        });
    }
    if let Ok(a) = alexander_poly(b) {
        values.push(Value {
            name: "alexander".into(),
            exact: a.to_string(),
            approx: None,
        });
    }

    EntryReport {
        name: entry.name.clone(),
        strands: b.strands(),
        word: b.to_string(),
        components: c,
        values,
        checks,
        elapsed_ms: cfg.timings.then(|| started.elapsed().as_secs_f64() * 1e3),
    }
}
