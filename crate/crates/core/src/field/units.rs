//! Systems of independent units: regulator, the three height properties of a
//! well-conditioned basis, and reduction of an element modulo units.

use nalgebra::{DMatrix, DVector};
use num_traits::Signed;
use serde::Serialize;

use super::FieldElement;
use crate::ball::{Dyadic, Interval};
use crate::embeddings::{log_abs_conjugates, log_height, EmbeddingSet};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Outcome of a certified comparison `lhs ≤ rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Holds for every point of the enclosures.
    Strict,
    /// The enclosures overlap; consistent with equality.
    Tight,
    /// Fails for every point of the enclosures.
    Violated,
}

impl Verdict {
    pub fn le(lhs: &Interval, rhs: &Interval) -> Verdict {
        if lhs.hi() <= rhs.lo() {
            Verdict::Strict
        } else if lhs.lo() > rhs.hi() {
            Verdict::Violated
        } else {
            Verdict::Tight
        }
    }

    pub fn passed(self) -> bool {
        self != Verdict::Violated
    }

    pub fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::Violated, _) | (_, Verdict::Violated) => Verdict::Violated,
            (Verdict::Tight, _) | (_, Verdict::Tight) => Verdict::Tight,
            _ => Verdict::Strict,
        }
    }
}

/// `r` units of one field.
#[derive(Clone, Debug)]
pub struct UnitSystem {
    units: Vec<FieldElement>,
}

impl UnitSystem {
    pub fn new(units: Vec<FieldElement>) -> Result<Self> {
        if let Some(first) = units.first() {
            for u in &units {
                first.same_field(u)?;
                if !u.is_unit() {
                    return Err(Error::NotAUnit);
                }
            }
        }
        Ok(UnitSystem { units })
    }

    pub fn units(&self) -> &[FieldElement] {
        &self.units
    }

    pub fn rank(&self) -> usize {
        self.units.len()
    }
}

/// `r` places: every real embedding, then one embedding per complex pair
/// (the one with positive imaginary part), cut to `r`. Each comes with its
/// local degree.
pub fn unit_places(emb: &EmbeddingSet, r: usize) -> Vec<(usize, u32)> {
    let mut places: Vec<(usize, u32)> = (0..emb.degree()).filter(|&k| emb.is_real(k)).map(|k| (k, 1)).collect();
    places.extend((0..emb.degree()).filter(|&k| !emb.is_real(k) && emb.ball(k).im.is_positive()).map(|k| (k, 2)));
    places.truncate(r);
    places
}

fn check_rank(sys: &UnitSystem, emb: &EmbeddingSet) -> Result<usize> {
    let (r1, r2) = emb.signature();
    let r = r1 + r2 - 1;
    if sys.rank() != r {
        return Err(Error::InvalidArgument(format!("unit system has {} units, the unit rank is {r}", sys.rank())));
    }
    if let Some(u) = sys.units.first() {
        if u.field().poly() != emb.poly() {
            return Err(Error::FieldMismatch);
        }
    }
    Ok(r)
}

/// `log|φ_j(ε_i)|`, rows `i` (units), columns `j` (places), unweighted.
fn log_matrix(sys: &UnitSystem, emb: &EmbeddingSet, places: &[(usize, u32)]) -> Result<Vec<Vec<Interval>>> {
    sys.units
        .iter()
        .map(|u| {
            let l = log_abs_conjugates(u, emb)?;
            Ok(places.iter().map(|&(k, _)| l[k].clone()).collect())
        })
        .collect()
}

/// Determinant of a small interval matrix by Laplace expansion over column
/// subsets.
pub(crate) fn interval_det(m: &[Vec<Interval>], prec: u32) -> Interval {
    let r = m.len();
    if r == 0 {
        return Interval::one(prec);
    }
    let mut memo: Vec<Option<Interval>> = vec![None; 1 << r];
    fn go(m: &[Vec<Interval>], mask: usize, memo: &mut Vec<Option<Interval>>, prec: u32) -> Interval {
        let r = m.len();
        let row = r - mask.count_ones() as usize;
        if mask == 0 {
            return Interval::one(prec);
        }
        if let Some(v) = &memo[mask] {
            return v.clone();
        }
        let mut acc = Interval::zero(prec);
        let mut sign_neg = false;
        for c in 0..r {
            if mask & (1 << c) == 0 {
                continue;
            }
            let term = &m[row][c] * &go(m, mask & !(1 << c), memo, prec);
            acc = if sign_neg { &acc - &term } else { &acc + &term };
            sign_neg = !sign_neg;
        }
        memo[mask] = Some(acc.clone());
        acc
    }
    go(m, (1 << r) - 1, &mut memo, prec)
}

fn minor(m: &[Vec<Interval>], skip_row: usize, skip_col: usize) -> Vec<Vec<Interval>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != skip_col).map(|(_, v)| v.clone()).collect())
        .collect()
}

/// `|det(n_j log|φ_j(ε_i)|)|`; equals the regulator when the system is
/// fundamental. Errors if zero cannot be excluded at the precision cap.
pub fn regulator_from_units(sys: &UnitSystem, emb: &EmbeddingSet) -> Result<Interval> {
    let r = check_rank(sys, emb)?;
    let places = unit_places(emb, r);
    let mut e = emb.clone();
    loop {
        let logs = log_matrix(sys, &e, &places)?;
        let weighted: Vec<Vec<Interval>> = logs
            .iter()
            .map(|row| {
                row.iter().zip(&places).map(|(v, &(_, n))| if n == 2 { v.mul_pow2(1) } else { v.clone() }).collect()
            })
            .collect();
        let det = interval_det(&weighted, e.prec() + 32);
        if !det.contains_zero() {
            return Ok(det.abs());
        }
        if e.prec() >= e.config().max_bits {
            return Err(Error::Singular);
        }
        e = e.refine_to((e.prec() * 2).min(e.config().max_bits))?;
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SiegelReport {
    pub regulator: Option<(f64, f64)>,
    pub heights: Vec<(f64, f64)>,
    pub product_of_heights: (f64, f64),
    pub max_height: (f64, f64),
    pub max_inverse_entry: (f64, f64),
    pub product_bound: Verdict,
    pub max_height_bound: Verdict,
    pub inverse_entry_bound: Verdict,
    pub vacuous: bool,
}

impl SiegelReport {
    pub fn passed(&self) -> bool {
        self.product_bound.passed() && self.max_height_bound.passed() && self.inverse_entry_bound.passed()
    }
}

fn bounds_of(iv: &Interval) -> (f64, f64) {
    (iv.lo_f64(), iv.hi_f64())
}

fn real_point(x: f64, prec: u32) -> Interval {
    Interval::point(Dyadic::from_f64(x), prec)
}

/// Checks `∏ h(ε_i) ≤ κ7 R`, `max h(ε_i) ≤ κ8 R` and that every entry of the
/// inverse of `(log|φ_j(ε_i)|)` is at most `κ9` in absolute value.
pub fn check_siegel_properties(
    sys: &UnitSystem,
    emb: &EmbeddingSet,
    kappa7: f64,
    kappa8: f64,
    kappa9: f64,
) -> Result<SiegelReport> {
    let r = check_rank(sys, emb)?;
    if r == 0 {
        return Ok(SiegelReport {
            regulator: None,
            heights: Vec::new(),
            product_of_heights: (1.0, 1.0),
            max_height: (0.0, 0.0),
            max_inverse_entry: (0.0, 0.0),
            product_bound: Verdict::Strict,
            max_height_bound: Verdict::Strict,
            inverse_entry_bound: Verdict::Strict,
            vacuous: true,
        });
    }
    let reg = regulator_from_units(sys, emb)?;
    let p = emb.prec() + 32;
    let heights = sys.units.iter().map(|u| log_height(u, emb)).collect::<Result<Vec<_>>>()?;
    let mut prod = Interval::one(p);
    let mut max = heights[0].clone();
    for h in &heights {
        prod = &prod * h;
        max = max.max_with(h);
    }
    let places = unit_places(emb, r);
    let logs = log_matrix(sys, emb, &places)?;
    let det = interval_det(&logs, p);
    let mut max_inv = Interval::zero(p);
    for i in 0..r {
        for j in 0..r {
            let cof = interval_det(&minor(&logs, i, j), p);
            let entry = cof.checked_div(&det).map_err(|_| Error::Singular)?.abs();
            max_inv = max_inv.max_with(&entry);
        }
    }
    Ok(SiegelReport {
        regulator: Some(bounds_of(&reg)),
        heights: heights.iter().map(bounds_of).collect(),
        product_of_heights: bounds_of(&prod),
        max_height: bounds_of(&max),
        max_inverse_entry: bounds_of(&max_inv),
        product_bound: Verdict::le(&prod, &(&real_point(kappa7, p) * &reg)),
        max_height_bound: Verdict::le(&max, &(&real_point(kappa8, p) * &reg)),
        inverse_entry_bound: Verdict::le(&max_inv, &real_point(kappa9, p)),
        vacuous: false,
    })
}

/// `β = β̃ · ∏ ε_i^{b_i}`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub exponents: Vec<i64>,
    pub beta_tilde: FieldElement,
    /// `|σ_j(β̃)|` for every embedding.
    pub moduli: Vec<f64>,
    /// `max_j |log(|m|^{-1/d} |σ_j(β̃)|)|`.
    pub log_deviation: f64,
}

/// Solves `Σ_i b_i log|φ_j(ε_i)| ≈ log|φ_j(β)| - (1/d) log|N(β)|` over the
/// `r` chosen places, rounds each `b_i` half away from zero and divides the
/// units out exactly.
pub fn reduce_by_units(beta: &FieldElement, sys: &UnitSystem, emb: &EmbeddingSet) -> Result<Reduction> {
    let r = check_rank(sys, emb)?;
    if beta.is_zero() {
        return Err(Error::InvalidArgument("cannot reduce zero".into()));
    }
    let d = emb.degree() as f64;
    let m = beta.norm();
    let log_m = ratio_ln(&m);
    let places = unit_places(emb, r);
    let lb = log_abs_conjugates(beta, emb)?;
    let mut exponents = Vec::with_capacity(r);
    if r > 0 {
        let logs = log_matrix(sys, emb, &places)?;
        // rows are places, columns units
        let a = DMatrix::from_fn(r, r, |j, i| logs[i][j].to_f64());
        let t = DVector::from_fn(r, |j, _| lb[places[j].0].to_f64() - log_m / d);
        let b = a.lu().solve(&t).ok_or(Error::Singular)?;
        for v in b.iter() {
            if !v.is_finite() || v.abs() > 1e15 {
                return Err(Error::Singular);
            }
            exponents.push(v.round() as i64);
        }
    }
    let mut beta_tilde = beta.clone();
    for (u, &b) in sys.units.iter().zip(&exponents) {
        if b != 0 {
            beta_tilde = beta_tilde.mul(&u.pow(-b)?)?;
        }
    }
    let lt = log_abs_conjugates(&beta_tilde, emb)?;
    let moduli = lt.iter().map(|l| l.to_f64().exp()).collect();
    let log_deviation = lt.iter().map(|l| (l.to_f64() - log_m / d).abs()).fold(0.0, f64::max);
    Ok(Reduction { exponents, beta_tilde, moduli, log_deviation })
}

fn ratio_ln(q: &Rational) -> f64 {
    Interval::from_rational(&q.abs(), 128).ln().map(|l| l.to_f64()).unwrap_or(f64::NEG_INFINITY)
}
