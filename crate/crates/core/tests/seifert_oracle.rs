//! Classical invariants of genus-one knots recomputed from Seifert matrices,
//! independently of the Burau pipeline.

use qll::algebra::LaurentPoly;
use qll::braid::BraidWord;
use qll::burau::{alexander_poly, arf_knot, determinant, double_cover_homology};

struct Seifert {
    name: &'static str,
    strands: usize,
    word: &'static str,
    v: [[i64; 2]; 2],
}

const KNOTS: &[Seifert] = &[
    Seifert {
        name: "trefoil",
        strands: 2,
        word: "1 1 1",
        v: [[-1, 1], [0, -1]],
    },
    Seifert {
        name: "figure-eight",
        strands: 3,
        word: "1 -2 1 -2",
        v: [[-1, 1], [0, 1]],
    },
    Seifert {
        name: "five-two",
        strands: 3,
        word: "1 1 1 2 -1 2",
        v: [[-1, 1], [0, -2]],
    },
];

fn sym(v: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    [[2 * v[0][0], v[0][1] + v[1][0]], [v[1][0] + v[0][1], 2 * v[1][1]]]
}

fn det2(m: &[[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// det(V - t Vᵀ) as a polynomial in t.
fn seifert_alexander(v: &[[i64; 2]; 2]) -> LaurentPoly {
    let entry = |i: usize, j: usize| LaurentPoly::from_i64s(0, &[v[i][j], -v[j][i]]);
    &(&entry(0, 0) * &entry(1, 1)) - &(&entry(0, 1) * &entry(1, 0))
}

/// 2 - rank over F_p of V + Vᵀ.
fn corank_2x2(m: &[[i64; 2]; 2], p: i64) -> usize {
    let r = |x: i64| x.rem_euclid(p);
    if r(det2(m)) != 0 {
        0
    } else if m.iter().flatten().all(|&x| r(x) == 0) {
        2
    } else {
        1
    }
}

#[test]
fn determinant_matches_symmetrized_seifert_form() {
    for k in KNOTS {
        let b = BraidWord::parse(k.word, k.strands).unwrap();
        let want = det2(&sym(&k.v)).abs();
        assert_eq!(determinant(&b).unwrap(), want.into(), "{}", k.name);
    }
}

#[test]
fn alexander_matches_seifert_determinant() {
    for k in KNOTS {
        let b = BraidWord::parse(k.word, k.strands).unwrap();
        assert_eq!(
            alexander_poly(&b).unwrap(),
            seifert_alexander(&k.v).canonical(),
            "{}",
            k.name
        );
    }
}

#[test]
fn double_cover_homology_matches_seifert_form() {
    for k in KNOTS {
        let b = BraidWord::parse(k.word, k.strands).unwrap();
        for p in [2u64, 3, 5, 7, 11] {
            assert_eq!(
                double_cover_homology(&b, p).unwrap(),
                corank_2x2(&sym(&k.v), p as i64),
                "{} at p={p}",
                k.name
            );
        }
    }
}

#[test]
fn arf_matches_seifert_form() {
    // for a genus-one knot with symplectic basis, Arf = v11 · v22 mod 2
    for k in KNOTS {
        let b = BraidWord::parse(k.word, k.strands).unwrap();
        let arf = (k.v[0][0] * k.v[1][1]).rem_euclid(2) as u8;
        assert_eq!(arf_knot(&b).unwrap(), arf, "{}", k.name);
    }
}
