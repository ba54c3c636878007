//! Families of twisted binary forms `F_a = a₀ ∏ (X − σ_i(α υ^a) Y)` and their
//! invariants.

mod form;
mod psi;
mod special;

use serde::Serialize;

use crate::ball::Interval;
use crate::embeddings::{
    conjugate_boxes, element_conjugates, isolate_roots, ElementConjugates, EmbeddingSet, Precision,
};
use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::field::{Field, FieldElement, NumberField};
use crate::json::FamilyDescriptor;

pub use form::BinaryForm;
pub use psi::{psi_values, PsiReport};
pub use special::{
    corollary_family, corollary_mu_check, cyclotomic_demo, cyclotomic_polynomial, CorollaryReport, CyclotomicReport,
};

/// `(α, υ, a₀)` over a number field, with the field's certified embeddings.
#[derive(Clone, Debug)]
pub struct TwistFamily {
    field: Field,
    alpha: FieldElement,
    upsilon: FieldElement,
    a0: Integer,
    emb: EmbeddingSet,
    root_of_unity_allowed: bool,
}

impl TwistFamily {
    /// Checks every hypothesis: `υ` a unit and not a root of unity, `α ≠ 0`,
    /// `a₀ ≥ 1` and `a₀·charpoly(α)` integral.
    pub fn new(alpha: FieldElement, upsilon: FieldElement, a0: Integer, cfg: Precision) -> Result<Self> {
        let fam = Self::build(alpha, upsilon, a0, cfg, false)?;
        if let Some(k) = root_of_unity_order(&fam.upsilon) {
            return Err(Error::InvalidFamily(format!("upsilon is a root of unity of order {k}")));
        }
        certified_lambda(&fam.upsilon, &fam.emb)?;
        Ok(fam)
    }

    /// Same checks except that `υ` may be a root of unity. Such a family is
    /// outside the hypotheses of the finiteness results.
    pub fn new_unchecked_root_of_unity(
        alpha: FieldElement,
        upsilon: FieldElement,
        a0: Integer,
        cfg: Precision,
    ) -> Result<Self> {
        Self::build(alpha, upsilon, a0, cfg, true)
    }

    fn build(alpha: FieldElement, upsilon: FieldElement, a0: Integer, cfg: Precision, allow: bool) -> Result<Self> {
        alpha.same_field(&upsilon)?;
        if a0 < Integer::from(1) {
            return Err(Error::InvalidFamily("a0 must be at least 1".into()));
        }
        if alpha.is_zero() {
            return Err(Error::InvalidFamily("alpha must be nonzero".into()));
        }
        if !upsilon.is_unit() {
            return Err(Error::NotAUnit);
        }
        scaled_integral(&alpha, &a0)?;
        let field = alpha.field().clone();
        let emb = isolate_roots(field.poly(), cfg)?;
        Ok(TwistFamily { field, alpha, upsilon, a0, emb, root_of_unity_allowed: allow })
    }

    pub fn from_descriptor(desc: &FamilyDescriptor, cfg: Precision, allow_root_of_unity: bool) -> Result<Self> {
        let field = NumberField::new(desc.g.clone())?;
        let alpha = FieldElement::from_descriptor(&field, &desc.alpha)?;
        let upsilon = FieldElement::from_descriptor(&field, &desc.upsilon)?;
        if allow_root_of_unity {
            Self::new_unchecked_root_of_unity(alpha, upsilon, desc.a0.0.clone(), cfg)
        } else {
            Self::new(alpha, upsilon, desc.a0.0.clone(), cfg)
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    pub fn upsilon(&self) -> &FieldElement {
        &self.upsilon
    }

    pub fn a0(&self) -> &Integer {
        &self.a0
    }

    pub fn embeddings(&self) -> &EmbeddingSet {
        &self.emb
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// True if built through the unchecked constructor.
    pub fn outside_hypotheses(&self) -> bool {
        self.root_of_unity_allowed
    }

    /// `α υ^a`.
    pub fn gamma(&self, a: i64) -> Result<FieldElement> {
        self.alpha.mul(&self.upsilon.pow(a)?)
    }

    /// The family with `α` replaced by `α υ^shift`.
    pub fn shifted(&self, shift: i64) -> Result<TwistFamily> {
        let alpha = self.gamma(shift)?;
        scaled_integral(&alpha, &self.a0)?;
        Ok(TwistFamily { alpha, ..self.clone() })
    }

    /// `F_a`, with coefficients `a₀ · charpoly(α υ^a)`.
    pub fn form_at(&self, a: i64) -> Result<BinaryForm> {
        let cp = self.gamma(a)?.charpoly();
        let coeffs = scaled_coeffs(&cp, &self.a0).ok_or_else(|| {
            Error::NonIntegralForm(format!("a0 * charpoly(alpha * upsilon^{a}) has a non-integral coefficient"))
        })?;
        Ok(BinaryForm::new(coeffs.into_iter().rev().collect()))
    }

    /// Whether `α υ^a` generates the field.
    pub fn degree_condition(&self, a: i64) -> Result<bool> {
        Ok(self.gamma(a)?.generates_field())
    }
}

fn scaled_coeffs(cp: &crate::exact::RatPoly, a0: &Integer) -> Option<Vec<Integer>> {
    let k = Rational::from_integer(a0.clone());
    cp.coeffs()
        .iter()
        .map(|c| {
            let v = c * &k;
            v.is_integer().then(|| v.to_integer())
        })
        .collect()
}

fn scaled_integral(alpha: &FieldElement, a0: &Integer) -> Result<()> {
    scaled_coeffs(&alpha.charpoly(), a0)
        .map(|_| ())
        .ok_or_else(|| Error::NonIntegralForm("a0 * charpoly(alpha) is not integral".into()))
}

/// Smallest `k ≥ 1` with `υ^k = 1`, if any. In degree `d` the order of a root
/// of unity satisfies `φ(k) ≤ d`, hence `k ≤ 2d²`.
pub fn root_of_unity_order(u: &FieldElement) -> Option<u64> {
    let d = u.field().degree() as u64;
    let mut p = u.clone();
    for k in 1..=2 * d * d + 2 {
        if p.is_one() {
            return Some(k);
        }
        p = p.mul(u).expect("same field");
    }
    None
}

/// `∏ max{1, |σ_j(υ)|}` over the field embeddings, refined until it is
/// certified above 1. Only call this when `υ` is known not to be a root of
/// unity, so the loop terminates below the cap.
fn certified_lambda(u: &FieldElement, emb: &EmbeddingSet) -> Result<(Interval, ElementConjugates)> {
    let mut e = emb.clone();
    loop {
        let conj = element_conjugates(u, &e)?;
        let lambda = measure_of(&conj);
        if lambda.lo() > &crate::ball::Dyadic::one() {
            return Ok((lambda, conj));
        }
        if e.prec() >= e.config().max_bits {
            return Err(Error::precision(e.prec(), "could not separate M(upsilon) from 1"));
        }
        e = e.refine_to((e.prec() * 2).min(e.config().max_bits))?;
    }
}

fn measure_of(conj: &ElementConjugates) -> Interval {
    let p = conj.roots().prec() + 32;
    (0..conj.degree()).fold(Interval::one(p), |acc, j| &acc * &conj.modulus(j).max_one())
}

/// Which branch of the three-case definition of `μ` applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuCase {
    /// `|υ₁| = |υ_{d-1}|` or `|υ₂| = |υ_d|`: `μ = λ`.
    Case1Tie,
    /// `|υ₁| < |υ₂| = |υ_{d-1}| < |υ_d|`.
    Case2MiddleTie,
    /// `|υ₂| < |υ_{d-1}|`.
    Case3Generic,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyInvariants {
    /// `a₀ ∏ max{1, |σ_i(α)|}`.
    pub lambda0: Interval,
    /// `∏ max{1, |a₀ σ_i(α)|}`, the value after clearing `a₀`.
    pub lambda0_rescaled: Interval,
    pub lambda: Interval,
    pub mu: Interval,
    pub mu_case: MuCase,
    /// `|υ_1| ≤ … ≤ |υ_d|`.
    pub upsilon_moduli: Vec<Interval>,
}

fn mahler_of_boxes(x: &FieldElement, emb: &EmbeddingSet) -> Interval {
    let boxes = conjugate_boxes(x, emb);
    let p = emb.prec() + 32;
    boxes.iter().fold(Interval::one(p), |acc, b| &acc * &b.abs().max_one())
}

/// `μ` from the conjugates of `υ`, ordered by modulus, with ties proven.
pub fn mu_from_conjugates(conj: &ElementConjugates, lambda: &Interval) -> Result<(Interval, MuCase)> {
    let d = conj.degree();
    if d < 2 {
        return Err(Error::InvalidArgument("mu needs degree >= 2".into()));
    }
    let s = conj.sorted();
    let same = |p: usize, q: usize| conj.same_modulus(s[p], s[q]);
    let m = |p: usize| conj.modulus(s[p]);
    if same(0, d - 2) || same(1, d - 1) {
        return Ok((lambda.clone(), MuCase::Case1Tie));
    }
    if same(1, d - 2) {
        let left = m(d - 2).checked_div(m(0))?;
        let right = m(d - 1).checked_div(m(1))?;
        return Ok((left.min_with(&right), MuCase::Case2MiddleTie));
    }
    Ok((m(d - 2).checked_div(m(1))?, MuCase::Case3Generic))
}

pub fn invariants_of(fam: &TwistFamily) -> Result<FamilyInvariants> {
    let (lambda, conj) = if fam.root_of_unity_allowed && root_of_unity_order(&fam.upsilon).is_some() {
        let c = element_conjugates(&fam.upsilon, &fam.emb)?;
        (measure_of(&c), c)
    } else {
        certified_lambda(&fam.upsilon, &fam.emb)?
    };
    let (mu, mu_case) = mu_from_conjugates(&conj, &lambda)?;
    let a0 = Interval::from_int(&fam.a0, fam.emb.prec() + 32);
    let lambda0 = &a0 * &mahler_of_boxes(&fam.alpha, &fam.emb);
    let lambda0_rescaled = mahler_of_boxes(&fam.alpha.scale_int(&fam.a0), &fam.emb);
    let upsilon_moduli = conj.sorted().iter().map(|&j| conj.modulus(j).clone()).collect();
    Ok(FamilyInvariants { lambda0, lambda0_rescaled, lambda, mu, mu_case, upsilon_moduli })
}

/// `(log⋆λ₀)(log⋆λ) log⋆(|a| min{1, log⋆λ/log⋆λ₀})`.
pub fn chi(lambda0: &Interval, lambda: &Interval, a: &Integer) -> Result<Interval> {
    if a == &Integer::from(0) {
        return Err(Error::InvalidArgument("chi needs a != 0".into()));
    }
    let l0 = lambda0.log_star()?;
    let l = lambda.log_star()?;
    let p = l0.prec().max(l.prec());
    let ratio = l.checked_div(&l0)?.min_with(&Interval::one(p));
    let inner = Interval::from_int(a, p).abs();
    Ok(&(&l0 * &l) * &(&inner * &ratio).log_star()?)
}

/// The four inequalities `λ^{1/(d-1)} ≤ |υ_d| ≤ λ` and
/// `λ^{-1} ≤ |υ_1| ≤ λ^{-1/(d-1)}`.
#[derive(Clone, Debug, Serialize)]
pub struct HauteurReport {
    pub top_lower: crate::field::Verdict,
    pub top_upper: crate::field::Verdict,
    pub bottom_lower: crate::field::Verdict,
    pub bottom_upper: crate::field::Verdict,
    pub smallest: Interval,
    pub largest: Interval,
}

impl HauteurReport {
    pub fn passed(&self) -> bool {
        [self.top_lower, self.top_upper, self.bottom_lower, self.bottom_upper].iter().all(|v| v.passed())
    }
}

pub fn hauteurunite_check(conj: &ElementConjugates, lambda: &Interval) -> Result<HauteurReport> {
    use crate::field::Verdict;
    let d = conj.degree();
    if d < 2 {
        return Err(Error::InvalidArgument("needs degree >= 2".into()));
    }
    let s = conj.sorted();
    let smallest = conj.modulus(s[0]).clone();
    let largest = conj.modulus(s[d - 1]).clone();
    let root = lambda.nth_root((d - 1) as u32)?;
    Ok(HauteurReport {
        top_lower: Verdict::le(&root, &largest),
        top_upper: Verdict::le(&largest, lambda),
        bottom_lower: Verdict::le(&lambda.recip()?, &smallest),
        bottom_upper: Verdict::le(&smallest, &root.recip()?),
        smallest,
        largest,
    })
}

/// [`hauteurunite_check`] for the family's `υ`.
pub fn family_hauteurunite(fam: &TwistFamily) -> Result<HauteurReport> {
    let (lambda, conj) = certified_lambda(&fam.upsilon, &fam.emb)?;
    hauteurunite_check(&conj, &lambda)
}

/// A solution `(x, y, a)` with `value = F_a(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SolutionTriple {
    pub a: i64,
    #[serde(with = "crate::json::decimal")]
    pub y: Integer,
    #[serde(with = "crate::json::decimal")]
    pub x: Integer,
    #[serde(with = "crate::json::decimal")]
    pub value: Integer,
}
