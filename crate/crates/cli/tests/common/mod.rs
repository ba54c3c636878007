#![allow(dead_code)]

pub mod oracle;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thue_twist::{FieldElement, IntPoly, Integer, NumberField, Precision, TwistFamily};

/// Irreducible defining polynomials used to draw random elements and units.
pub const SAMPLE_FIELDS: &[&[i64]] = &[
    &[-2, 0, 1],
    &[-1, -1, 1],
    &[-3, 0, 1],
    &[-5, 0, 1],
    &[-1, -1, 0, 1],
    &[-2, 0, 0, 1],
    &[1, -3, 0, 1],
    &[-3, -1, 0, 1],
    &[1, 0, -4, 0, 1],
    &[-2, 0, 0, 0, 1],
    &[-1, -1, 0, 0, 1],
    &[-1, -1, 0, 0, 0, 1],
    &[-2, 0, 0, 0, 0, 1],
    &[-2, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 1],
];

pub fn field(g: &[i64]) -> thue_twist::Field {
    NumberField::from_i64s(g).expect("sample field")
}

pub fn fields_of_degree(lo: usize, hi: usize) -> Vec<&'static [i64]> {
    SAMPLE_FIELDS.iter().copied().filter(|g| (lo..=hi).contains(&(g.len() - 1))).collect()
}

pub fn random_element(rng: &mut ChaCha8Rng, k: &thue_twist::Field, c: i64) -> FieldElement {
    let coords: Vec<i64> = (0..k.degree()).map(|_| rng.random_range(-c..=c)).collect();
    FieldElement::from_i64s(k, &coords)
}

/// A unit of `k` that is not a root of unity, drawn as a small integral
/// element of norm ±1. Falls back to products of powers of `θ` and the draw
/// when `k` has few small units.
pub fn random_unit(rng: &mut ChaCha8Rng, k: &thue_twist::Field) -> Option<FieldElement> {
    for _ in 0..4000 {
        let u = random_element(rng, k, 2);
        if u.is_zero() || !u.is_unit() {
            continue;
        }
        if thue_twist::twist::root_of_unity_order(&u).is_some() {
            continue;
        }
        let e = rng.random_range(1..=2);
        return u.pow(if rng.random_bool(0.5) { e } else { -e }).ok();
    }
    None
}

/// A family `(α, υ, 1)` with `υ` a random unit and `α` a random nonzero
/// integral element.
pub fn random_family(rng: &mut ChaCha8Rng, fields: &[&[i64]]) -> TwistFamily {
    loop {
        let g = fields[rng.random_range(0..fields.len())];
        let k = field(g);
        let Some(u) = random_unit(rng, &k) else { continue };
        let alpha = random_element(rng, &k, 2);
        if alpha.is_zero() {
            continue;
        }
        if let Ok(f) = TwistFamily::new(alpha, u, Integer::from(1), Precision::default()) {
            return f;
        }
    }
}

/// Random polynomial of the given degree with coefficients in `[-h, h]` and a
/// nonzero leading coefficient.
pub fn random_poly(rng: &mut ChaCha8Rng, d: usize, h: i64) -> IntPoly {
    let mut c: Vec<i64> = (0..=d).map(|_| rng.random_range(-h..=h)).collect();
    while c[d] == 0 {
        c[d] = rng.random_range(-h..=h);
    }
    IntPoly::from_i64s(&c)
}

pub fn bundled_unit_corpus() -> Vec<(&'static str, TwistFamily)> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/families");
    ["golden", "sqrt2", "plastic", "cube_root_two", "quartic"]
        .into_iter()
        .map(|n| {
            let text = std::fs::read_to_string(format!("{dir}/{n}.json")).expect("bundled file");
            let desc = serde_json::from_str(&text).expect("descriptor");
            (n, TwistFamily::from_descriptor(&desc, Precision::default(), false).expect("family"))
        })
        .collect()
}
