//! Corpus files: one link per line,
//!
//! ```text
//! name ; strands ; word ; key=value, key=value, ...
//! ```
//!
//! with `#` starting a comment. Recognized keys are `jones.l<ℓ>` (an
//! integer or `cyc(N: c0 c1 ...)`), `det`, `d<p>` for a prime `p`, `arf`,
//! `components`, `alexander` (e.g. `t^2 - t + 1`) and `hom.<group>`.

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::{is_prime, CyclotomicNumber, LaurentPoly};
use crate::braid::BraidWord;
use crate::error::{Error, Result};

/// The bundled corpus.
pub const BUNDLED_CORPUS: &str = include_str!("../../data/corpus.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectKey {
    Jones(u32),
    Det,
    DoubleCover(u64),
    Arf,
    Components,
    Alexander,
    Hom(String),
}

impl fmt::Display for ExpectKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectKey::Jones(l) => write!(f, "jones.l{l}"),
            ExpectKey::Det => f.write_str("det"),
            ExpectKey::DoubleCover(p) => write!(f, "d{p}"),
            ExpectKey::Arf => f.write_str("arf"),
            ExpectKey::Components => f.write_str("components"),
            ExpectKey::Alexander => f.write_str("alexander"),
            ExpectKey::Hom(g) => write!(f, "hom.{g}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExpectValue {
    Cyclotomic(CyclotomicNumber),
    Integer(BigInt),
    Poly(LaurentPoly),
}

impl fmt::Display for ExpectValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectValue::Cyclotomic(c) => write!(f, "{c}"),
            ExpectValue::Integer(k) => write!(f, "{k}"),
            ExpectValue::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub braid: BraidWord,
    pub expected: Vec<(ExpectKey, ExpectValue)>,
}

fn parse_key(key: &str) -> Result<ExpectKey> {
    let bad = || Error::Parse(format!("unknown corpus key {key:?}"));
    if let Some(g) = key.strip_prefix("hom.") {
        return Ok(ExpectKey::Hom(g.trim().to_string()));
    }
    if let Some(l) = key.strip_prefix("jones.l") {
        let ell: u32 = l.parse().map_err(|_| bad())?;
        return if ell >= 3 {
            Ok(ExpectKey::Jones(ell))
        } else {
            Err(bad())
        };
    }
    match key {
        "det" => Ok(ExpectKey::Det),
        "arf" => Ok(ExpectKey::Arf),
        "components" => Ok(ExpectKey::Components),
        "alexander" => Ok(ExpectKey::Alexander),
        _ => {
            let p: u64 = key.strip_prefix('d').and_then(|p| p.parse().ok()).ok_or_else(bad)?;
            if is_prime(p) {
                Ok(ExpectKey::DoubleCover(p))
            } else {
                Err(bad())
            }
        }
    }
}

fn parse_value(key: &ExpectKey, text: &str) -> Result<ExpectValue> {
    match key {
        ExpectKey::Jones(_) => Ok(ExpectValue::Cyclotomic(text.parse()?)),
        ExpectKey::Alexander => Ok(ExpectValue::Poly(text.parse()?)),
        _ => text
            .parse::<BigInt>()
            .map(ExpectValue::Integer)
            .map_err(|_| Error::Parse(format!("{key} expects an integer, got {text:?}"))),
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: Error| Error::Parse(format!("line {}: {e}", lineno + 1));
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(at(Error::Parse(
                "expected `name ; strands ; word [; expectations]`".into(),
            )));
        }
        let name = fields[0].to_string();
        if name.is_empty() {
            return Err(at(Error::Parse("empty name".into())));
        }
        let strands: usize = fields[1]
            .parse()
            .map_err(|_| at(Error::Parse(format!("bad strand count {:?}", fields[1]))))?;
        let braid = BraidWord::parse(fields[2], strands).map_err(at)?;
        let mut expected = Vec::new();
        if let Some(spec) = fields.get(3) {
            for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| at(Error::Parse(format!("expected key=value, got {item:?}"))))?;
                let key = parse_key(k.trim()).map_err(at)?;
                let value = parse_value(&key, v.trim()).map_err(at)?;
                expected.push((key, value));
            }
        }
        out.push(CorpusEntry { name, braid, expected });
    }
    let mut names: Vec<&str> = out.iter().map(|e| e.name.as_str()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Parse(format!("duplicate corpus entry {:?}", w[0])));
    }
    Ok(out)
}
