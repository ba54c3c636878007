use serde::Serialize;

use crate::ball::Interval;
use crate::error::{Error, Result};
use crate::exact::{IntPoly, Integer};
use crate::field::FieldElement;

use super::{isolate_roots, EmbeddingSet, Precision};

/// `max{1, log x}` as a certified interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogStarValue {
    pub value: Interval,
}

pub fn log_star(x: &Interval) -> Result<LogStarValue> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument("log* needs a positive argument".into()));
    }
    Ok(LogStarValue { value: x.log_star()? })
}

/// `|lc| · ∏ max{1, |root|}` over the roots held by `emb`, which must be the
/// embedding set of `f`.
pub fn mahler_measure(f: &IntPoly, emb: &EmbeddingSet) -> Result<Interval> {
    if f.degree() != Some(emb.degree()) || f.primitive_part() != emb.poly().primitive_part() {
        return Err(Error::InvalidArgument("embedding set belongs to another polynomial".into()));
    }
    let lc = f.leading();
    let mut m = Interval::from_int(&lc, emb.prec() + 32).abs();
    for k in 0..emb.degree() {
        m = &m * &emb.modulus(k).max_one();
    }
    Ok(m)
}

/// Mahler measure of any nonzero integer polynomial, repeated roots allowed.
pub fn mahler_measure_of(f: &IntPoly, cfg: Precision) -> Result<Interval> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("Mahler measure of the zero polynomial".into()));
    }
    let mut m = Interval::from_int(&f.leading(), cfg.bits + 32).abs();
    for (factor, mult) in f.to_rat().squarefree_decomposition() {
        let p = factor.primitive_integer();
        let emb = isolate_roots(&p, cfg)?;
        let mut part = Interval::one(cfg.bits + 32);
        for k in 0..emb.degree() {
            part = &part * &emb.modulus(k).max_one();
        }
        m = &m * &part.powi(mult as i64)?;
    }
    Ok(m)
}

pub fn naive_height(f: &IntPoly) -> Integer {
    f.height()
}

/// Largest conjugate modulus.
pub fn house(emb: &EmbeddingSet) -> &Interval {
    emb.modulus(emb.degree() - 1)
}

/// Absolute logarithmic height `h(x) = log M(P) / deg P` with `P` the
/// primitive minimal polynomial of `x`. Since the characteristic polynomial is
/// a power of `P`, this equals `(1/d) log M(charpoly)`.
pub fn log_height(x: &FieldElement, emb: &EmbeddingSet) -> Result<Interval> {
    if x.is_zero() {
        return Err(Error::InvalidArgument("height of zero".into()));
    }
    let p = x.min_poly();
    let cfg = Precision { bits: emb.prec(), max_bits: emb.config().max_bits.max(emb.prec()) };
    let sub = isolate_roots(&p, cfg)?;
    let m = mahler_measure(&p, &sub)?;
    let e = p.degree().expect("nonconstant") as i64;
    let l = m.ln()?;
    l.checked_div(&Interval::from_i64(e, l.prec()))
}

/// Hypothesis and conclusion of one implication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaPart {
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl LemmaPart {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// Outcome of checking the two implications about real conjugates adjacent to
/// the extreme moduli.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoRealReport {
    pub part_a: LemmaPart,
    pub part_b: LemmaPart,
    pub witness: Option<String>,
}

impl TwoRealReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// With `|γ_1| ≤ … ≤ |γ_d|`:
/// (a) `|γ_1| < |γ_2|` and `γ_2` real imply `|γ_2| < |γ_3|`;
/// (b) `|γ_{d-1}| < |γ_d|` and `γ_{d-1}` real imply `|γ_{d-2}| < |γ_{d-1}|`.
///
/// Inside a tie group the order is free, so "γ_2 real" means the group at
/// position 2 contains a real root.
pub fn check_two_conjugates_real(emb: &EmbeddingSet) -> Result<TwoRealReport> {
    let d = emb.degree();
    if d < 3 {
        return Err(Error::InvalidArgument("the check needs degree >= 3".into()));
    }
    let group_has_real = |k: usize| emb.tie_groups()[emb.group_of(k)].iter().any(|&i| emb.is_real(i));
    let part_a =
        LemmaPart { hypothesis: !emb.same_modulus(0, 1) && group_has_real(1), conclusion: !emb.same_modulus(1, 2) };
    let part_b = LemmaPart {
        hypothesis: !emb.same_modulus(d - 2, d - 1) && group_has_real(d - 2),
        conclusion: !emb.same_modulus(d - 3, d - 2),
    };
    let witness = match (part_a.holds(), part_b.holds()) {
        (true, true) => None,
        (false, _) => Some(format!("|g1| < |g2| = |g3| with a real g2 for {}", emb.poly())),
        (_, false) => Some(format!("|g(d-2)| = |g(d-1)| < |gd| with a real g(d-1) for {}", emb.poly())),
    };
    Ok(TwoRealReport { part_a, part_b, witness })
}
