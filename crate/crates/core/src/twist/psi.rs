use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{SolutionTriple, TwistFamily};
use crate::ball::{CInterval, Interval};
use crate::embeddings::{conjugate_boxes, element_conjugates, EmbeddingSet};
use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::field::FieldElement;

/// The normalized ratios `Ψ_i` at one solution.
///
/// Positions follow `|υ_1| ≤ … ≤ |υ_d|` (with `υ^{-1}` in place of `υ` when
/// `a < 0`). The solution is normalized to `y > 0` and `a₀` is cleared by
/// passing to `a₀^{d-1} F_a(a₀ x, y)`.
#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    #[serde(with = "crate::json::decimal")]
    pub x: Integer,
    #[serde(with = "crate::json::decimal")]
    pub y: Integer,
    pub a: i64,
    /// Right-hand side after normalization.
    #[serde(with = "crate::json::decimal")]
    pub m: Integer,
    /// Embedding index at each position.
    pub order: Vec<usize>,
    /// Position (0-based) of the smallest `|β_i|`; lowest on ties.
    pub i0: usize,
    pub psi: Vec<CInterval>,
    pub psi_moduli: Vec<Interval>,
    pub beta_moduli: Vec<Interval>,
    /// `∏ β_i` encloses `m`.
    pub product_contains_m: bool,
    /// `β_{i0}` rebuilt from `Ψ_{i0}` overlaps its direct value.
    pub beta_i0_consistent: bool,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.product_contains_m && self.beta_i0_consistent
    }
}

pub fn psi_values(fam: &TwistFamily, sol: &SolutionTriple, m: &Integer) -> Result<PsiReport> {
    let form = fam.form_at(sol.a)?;
    let value = form.evaluate(&sol.x, &sol.y);
    if value != sol.value {
        return Err(Error::InvalidArgument(format!("F_a(x, y) = {value}, not {}", sol.value)));
    }
    if value.is_zero() || &value.abs() > m {
        return Err(Error::InvalidArgument(format!("|F_a(x, y)| = {} is not in (0, {m}]", value.abs())));
    }
    if sol.y.is_zero() {
        return Err(Error::InvalidArgument("y must be nonzero".into()));
    }
    let d = fam.degree();
    let (mut x, mut y, mut value) = (sol.x.clone(), sol.y.clone(), value);
    if y.is_negative() {
        x = -x;
        y = -y;
        if d % 2 == 1 {
            value = -value;
        }
    }
    let a0 = fam.a0().clone();
    let m_t = &value * num_traits::pow(a0.clone(), d - 1);
    let x_t = &x * &a0;
    let key = if sol.a < 0 { fam.upsilon().inv()? } else { fam.upsilon().clone() };
    let gamma = fam.gamma(sol.a)?.scale_int(&a0);
    let field = fam.field();
    let beta = FieldElement::from_int(field, x_t.clone()).sub(&gamma.scale_int(&y))?;

    let mut e = fam.embeddings().clone();
    loop {
        match attempt(&e, &key, &gamma, &beta, &y, &m_t) {
            Ok(Some(mut rep)) => {
                rep.x = x_t;
                rep.y = y;
                rep.a = sol.a;
                rep.m = m_t;
                return Ok(rep);
            }
            Ok(None) => {}
            Err(err) => return Err(err),
        }
        if e.prec() >= e.config().max_bits {
            return Err(Error::precision(e.prec(), "psi values need nonzero conjugates"));
        }
        e = e.refine_to((e.prec() * 2).min(e.config().max_bits))?;
    }
}

fn attempt(
    e: &EmbeddingSet,
    key: &FieldElement,
    gamma: &FieldElement,
    beta: &FieldElement,
    y: &Integer,
    m: &Integer,
) -> Result<Option<PsiReport>> {
    let d = e.degree();
    let order = element_conjugates(key, e)?.sorted();
    let bc = element_conjugates(beta, e)?;
    let bs = bc.sorted();
    let smallest = &bc.sorted_groups()[0];
    let minimal: Vec<usize> = smallest.iter().map(|&p| bs[p]).collect();
    let i0 = order.iter().position(|j| minimal.contains(j)).expect("some embedding is minimal");

    let gb = conjugate_boxes(gamma, e);
    let bb = conjugate_boxes(beta, e);
    let g: Vec<&CInterval> = order.iter().map(|&j| &gb[j]).collect();
    let b: Vec<&CInterval> = order.iter().map(|&j| &bb[j]).collect();
    let p = gb[0].prec();
    let yc = CInterval::from_int(y, p);
    let mc = CInterval::from_int(m, p);

    let mut psi = Vec::with_capacity(d);
    let mut lower = CInterval::from_i64(1, p);
    for gi in &g[..i0] {
        lower = &lower * gi;
    }
    // γ_{i0}^{i0-2} with 1-based i0
    let gpow = match g[i0].powi(i0 as i64 - 1) {
        Ok(v) => v,
        Err(_) => return Ok(None),
    };
    let ypow = yc.powi(d as i64 - 1)?;
    for i in 0..d {
        let v = if i < i0 {
            b[i].checked_div(&(g[i0] * &yc))
        } else if i > i0 {
            b[i].checked_div(&(g[i] * &yc))
        } else {
            (&(b[i] * &ypow) * &gpow).checked_div(&(&mc * &lower))
        };
        match v {
            Ok(v) => psi.push(v),
            Err(_) => return Ok(None),
        }
    }
    let product = b.iter().fold(CInterval::from_i64(1, p), |acc, v| &acc * v);
    let rebuilt = match (&mc.checked_div(&ypow)? * &lower).checked_div(&gpow) {
        Ok(v) => &v * &psi[i0],
        Err(_) => return Ok(None),
    };
    Ok(Some(PsiReport {
        x: Integer::zero(),
        y: Integer::zero(),
        a: 0,
        m: Integer::zero(),
        order,
        i0,
        psi_moduli: psi.iter().map(CInterval::abs).collect(),
        psi,
        beta_moduli: b.iter().map(|v| v.abs()).collect(),
        product_contains_m: product.contains_rational(&Rational::from_integer(m.clone())),
        beta_i0_consistent: rebuilt.overlaps(b[i0]),
    }))
}
