//! The two special families: cyclotomic twists (outside the hypotheses) and
//! `∏ (X^h − ε_i^a Y^h)` for a unit `ε`.

use num_traits::{One, Signed};
use serde::Serialize;

use super::{invariants_of, root_of_unity_order, BinaryForm, MuCase, TwistFamily};
use crate::ball::Interval;
use crate::embeddings::{isolate_roots, Precision};
use crate::error::{Error, Result};
use crate::exact::{IntPoly, Integer};
use crate::field::{FieldElement, NumberField, Verdict};

/// `Φ_n`, by dividing `X^n − 1` by `Φ_k` for every proper divisor `k` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut c = vec![Integer::from(0); n + 1];
    c[0] = Integer::from(-1);
    c[n] = Integer::from(1);
    let mut p = IntPoly::new(c);
    for k in (1..n).filter(|k| n.is_multiple_of(*k)) {
        p = p.div_exact(&cyclotomic_polynomial(k)).expect("cyclotomic factor divides X^n - 1");
    }
    p
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclotomicReport {
    pub n: usize,
    pub phi: String,
    /// `Φ_n` homogenized, the form of `ζ_n` itself.
    pub base_form: BinaryForm,
    /// Exponents in `[1, n]` coprime to `n`.
    pub coprime: Vec<i64>,
    /// Those among them for which `F_a` equals the base form exactly.
    pub equal_for: Vec<i64>,
    /// `(x, y)` with `|x|, |y| ≤ search_radius`, `xy ≠ 0` and value 1.
    pub solutions: Vec<(i64, i64)>,
    pub search_radius: i64,
    /// The unit is a root of unity, so the finiteness hypotheses fail.
    pub outside_hypotheses: bool,
}

impl CyclotomicReport {
    pub fn all_equal(&self) -> bool {
        self.coprime == self.equal_for
    }
}

/// Twists of `α = 1` by `υ = ζ_n` in `Q(ζ_n)`: `F_a` is the form of `ζ_n^a`,
/// equal to the base form `Φ_n` whenever `gcd(a, n) = 1`.
pub fn cyclotomic_demo(n: usize, cfg: Precision) -> Result<CyclotomicReport> {
    if n < 3 {
        return Err(Error::InvalidArgument("cyclotomic demo needs n >= 3".into()));
    }
    let phi = cyclotomic_polynomial(n);
    let k = NumberField::new(phi.clone())?;
    let fam =
        TwistFamily::new_unchecked_root_of_unity(FieldElement::one(&k), FieldElement::theta(&k), Integer::one(), cfg)?;
    let base_form = BinaryForm::homogenize(&phi);
    let coprime: Vec<i64> = (1..=n).filter(|&a| gcd(a, n) == 1).map(|a| a as i64).collect();
    let mut equal_for = Vec::new();
    for &a in &coprime {
        if fam.form_at(a)? == base_form {
            equal_for.push(a);
        }
    }
    let radius = 10;
    let one = Integer::one();
    let mut solutions = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            if x != 0 && y != 0 && base_form.evaluate_i64(x, y) == one {
                solutions.push((x, y));
            }
        }
    }
    Ok(CyclotomicReport {
        n,
        phi: phi.display_in("X"),
        base_form,
        coprime,
        equal_for,
        solutions,
        search_radius: radius,
        outside_hypotheses: true,
    })
}

fn unit_field(eps_minpoly: &IntPoly) -> Result<crate::field::Field> {
    let l = eps_minpoly.degree().unwrap_or(0);
    if l < 2 {
        return Err(Error::InvalidArgument("the unit must have degree >= 2".into()));
    }
    if !eps_minpoly.is_monic() || eps_minpoly.coeff(0).abs() != Integer::one() {
        return Err(Error::NotAUnit);
    }
    let k = NumberField::new(eps_minpoly.clone())?;
    if root_of_unity_order(&FieldElement::theta(&k)).is_some() {
        return Err(Error::RootOfUnity);
    }
    Ok(k)
}

/// `∏_i (X^h − ε_i^a Y^h)` over the conjugates of the unit `ε` with minimal
/// polynomial `eps_minpoly`: the characteristic polynomial of `ε^a` with
/// `T = X^h/Y^h`, cleared of denominators.
pub fn corollary_family(eps_minpoly: &IntPoly, h: usize, a: i64) -> Result<BinaryForm> {
    if h < 2 {
        return Err(Error::InvalidArgument("h must be at least 2".into()));
    }
    let k = unit_field(eps_minpoly)?;
    let cp = FieldElement::theta(&k).pow(a)?.charpoly();
    let cp = cp.to_int_poly().ok_or(Error::NotAUnit)?;
    Ok(BinaryForm::homogenize(&cp.substitute_power(h)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub form: BinaryForm,
    pub lambda: Interval,
    pub mu: Interval,
    pub mu_case: MuCase,
    /// `|ε_ℓ/ε_1|^{|a|/h}`.
    pub mu_expected: Interval,
    pub mu_law_holds: bool,
    /// `(2/(d−1)) log λ ≤ log μ`.
    pub log_mu_bound: Verdict,
    pub log_mu: Interval,
    pub log_mu_floor: Interval,
}

/// Builds the corollary form, treats `F_a(X, 1)` as the defining polynomial of
/// a field with `υ = θ`, and compares the certified `μ` with the closed form.
pub fn corollary_mu_check(eps_minpoly: &IntPoly, h: usize, a: i64, cfg: Precision) -> Result<CorollaryReport> {
    let form = corollary_family(eps_minpoly, h, a)?;
    let p = form.dehomogenize();
    let k = NumberField::new(p)?;
    let fam = TwistFamily::new(FieldElement::one(&k), FieldElement::theta(&k), Integer::one(), cfg)?;
    let inv = invariants_of(&fam)?;
    let eps = isolate_roots(eps_minpoly, cfg)?;
    let l = eps.degree();
    let ratio = eps.modulus(l - 1).checked_div(eps.modulus(0))?;
    let mu_expected = ratio.powi(a.abs())?.nth_root(h as u32)?;
    let d = fam.degree();
    let log_mu = inv.mu.ln()?;
    let lp = log_mu.prec();
    let log_mu_floor =
        (&inv.lambda.ln()? * &Interval::from_i64(2, lp)).checked_div(&Interval::from_i64(d as i64 - 1, lp))?;
    Ok(CorollaryReport {
        form,
        mu_law_holds: inv.mu.overlaps(&mu_expected),
        log_mu_bound: Verdict::le(&log_mu_floor, &log_mu),
        lambda: inv.lambda,
        mu: inv.mu,
        mu_case: inv.mu_case,
        mu_expected,
        log_mu,
        log_mu_floor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(12), IntPoly::from_i64s(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(3), IntPoly::from_i64s(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(7), IntPoly::from_i64s(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(1), IntPoly::from_i64s(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(30).degree(), Some(8));
    }

    #[test]
    fn cyclotomic_twelve() {
        let r = cyclotomic_demo(12, Precision::default()).unwrap();
        assert_eq!(r.equal_for, vec![1, 5, 7, 11]);
        assert!(r.all_equal());
        assert_eq!(r.base_form.to_string(), "X^4-X^2Y^2+Y^4");
        let mut s = r.solutions.clone();
        s.sort();
        assert_eq!(s, vec![(-1, -1), (-1, 1), (1, -1), (1, 1)]);
        let r = cyclotomic_demo(3, Precision::default()).unwrap();
        assert_eq!(r.equal_for, vec![1, 2]);
        assert!(cyclotomic_demo(2, Precision::default()).is_err());
    }

    #[test]
    fn corollary_forms() {
        let golden = IntPoly::from_i64s(&[-1, -1, 1]);
        // trace of φ³ is L_3 = 4, norm is (-1)³
        assert_eq!(corollary_family(&golden, 2, 3).unwrap(), BinaryForm::from_i64s(&[1, 0, -4, 0, -1]));
        assert_eq!(corollary_family(&golden, 2, 0).unwrap(), BinaryForm::from_i64s(&[1, 0, -2, 0, 1]));
        assert_eq!(corollary_family(&golden, 2, 1).unwrap(), BinaryForm::from_i64s(&[1, 0, -1, 0, -1]));
        let two_plus_sqrt3 = IntPoly::from_i64s(&[1, -4, 1]);
        assert_eq!(corollary_family(&two_plus_sqrt3, 2, 1).unwrap(), BinaryForm::from_i64s(&[1, 0, -4, 0, 1]));
        assert!(corollary_family(&golden, 1, 1).is_err());
        assert!(matches!(corollary_family(&IntPoly::from_i64s(&[2, 0, 1]), 2, 1), Err(Error::NotAUnit)));
        assert!(matches!(corollary_family(&IntPoly::from_i64s(&[1, 1, 1]), 2, 1), Err(Error::RootOfUnity)));
    }

    #[test]
    fn corollary_mu_law() {
        let r = corollary_mu_check(&IntPoly::from_i64s(&[1, -4, 1]), 2, 1, Precision::default()).unwrap();
        assert!(r.mu_law_holds);
        assert_eq!(r.mu_case, MuCase::Case3Generic);
        assert!((r.mu.to_f64() - (2.0 + 3f64.sqrt())).abs() < 1e-15);
        assert!(r.log_mu_bound.passed());
        let r = corollary_mu_check(&IntPoly::from_i64s(&[-1, -1, 1]), 2, 3, Precision::default()).unwrap();
        assert!(r.mu_law_holds && r.log_mu_bound.passed());
        let phi3 = ((1.0 + 5f64.sqrt()) / 2.0).powi(3);
        assert!((r.mu.to_f64() - phi3).abs() < 1e-12);
    }
}
