//! Explicit constants and the right-hand sides of the effective bounds, all
//! evaluated in log scale so that astronomically large values stay finite.

use num_bigint::Sign;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::ball::Interval;
use crate::embeddings::{mahler_measure, EmbeddingSet};
use crate::error::{Error, Result};
use crate::exact::{IntPoly, Integer};

/// Lower bound for the regulator of any number field of degree at least 2.
pub const FRIEDMAN_CONSTANT: f64 = 0.2052;

/// Slack applied to the conclusion of [`lemma_elementary`] to absorb
/// floating-point rounding.
pub const ELEMENTARY_SLACK: f64 = 1e-12;

/// `log2 |n|`, `-inf` for zero. Accurate to about 1e-15 relative for any size.
pub fn log2_abs_int(n: &Integer) -> f64 {
    if n.sign() == Sign::NoSign {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits in f64").abs().log2();
    }
    let shift = bits - 64;
    let top = (n.magnitude() >> shift).to_f64().expect("64 bits");
    top.log2() + shift as f64
}

/// `log |n|`.
pub fn ln_abs_int(n: &Integer) -> f64 {
    log2_abs_int(n) * std::f64::consts::LN_2
}

/// `max{1, log x}` on floats; `x` must be positive.
pub fn log_star(x: f64) -> f64 {
    if x > std::f64::consts::E {
        x.ln()
    } else {
        1.0
    }
}

fn gs_parts(d: usize) -> (f64, f64) {
    let d = d as f64;
    let t = d * (d + 1.0) / 2.0;
    (t, d * (d + 1.0) / 4.0 + 1.0)
}

/// `log2` of the separation constant `(√3/2)(d(d+1)/2)^{-d(d+1)/4-1}`.
pub fn log2_gs_constant(d: usize) -> f64 {
    let (t, e) = gs_parts(d);
    0.75f64.log2() / 2.0 - e * t.log2()
}

/// The separation constant for degree `d ≥ 2`.
pub fn gs_constant(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::InvalidArgument("separation constant needs degree >= 2".into()));
    }
    Ok(log2_gs_constant(d).exp2())
}

/// Exponent `d(d²+2d-1)/2` of the Mahler measure in the separation bound.
pub fn gs_exponent(d: usize) -> f64 {
    let d = d as f64;
    d * (d * d + 2.0 * d - 1.0) / 2.0
}

/// Guaranteed minimum difference `|α''| - |α'|` between two distinct root
/// moduli of `p`. Uses an upper bound for `M(p)`, so the value is a valid
/// floor (it may underflow to zero for large inputs).
pub fn gs_separation(p: &IntPoly, emb: &EmbeddingSet) -> Result<f64> {
    let d = p.degree().unwrap_or(0);
    let c = gs_constant(d)?;
    let m = mahler_measure(p, emb)?;
    let log2_m = m.hi_f64().log2() * (1.0 + 1e-12);
    Ok(c * (-gs_exponent(d) * log2_m).exp2() * (1.0 - 1e-12))
}

/// Smallest certified gap between distinct root moduli against the separation
/// floor.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationReport {
    pub separation: f64,
    pub min_gap: Option<(f64, f64)>,
}

impl SeparationReport {
    pub fn holds(&self) -> bool {
        self.min_gap.is_none_or(|(lo, _)| lo >= self.separation)
    }
}

/// Distinct moduli are separated only between adjacent tie groups, so those
/// gaps are the only ones to check.
pub fn separation_check(p: &IntPoly, emb: &EmbeddingSet) -> Result<SeparationReport> {
    let separation = gs_separation(p, emb)?;
    let mut min: Option<Interval> = None;
    for w in emb.tie_groups().windows(2) {
        let gap = emb.modulus(w[1][0]) - emb.modulus(*w[0].last().expect("nonempty"));
        min = Some(match min {
            Some(m) if m.lo() <= gap.lo() => m,
            _ => gap,
        });
    }
    Ok(SeparationReport { separation, min_gap: min.map(|m| (m.lo_f64(), m.hi_f64())) })
}

/// Floor for `log(|υ''|/|υ'|)` over distinct moduli of a unit, with the
/// smallest certified log-ratio actually present.
#[derive(Clone, Debug, Serialize)]
pub struct RatioFloor {
    pub floor: f64,
    pub min_log_ratio: Option<(f64, f64)>,
    /// True when every pair of moduli is tied.
    pub vacuous: bool,
}

impl RatioFloor {
    pub fn holds(&self) -> bool {
        self.min_log_ratio.is_none_or(|(lo, _)| lo >= self.floor)
    }
}

/// `(gs_constant(d)/2) λ^{-(d³+2d²-d+2)/2}` for a unit of degree `d ≥ 3`.
pub fn ratio_floor(d: usize, lambda: f64) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidArgument("ratio floor needs degree >= 3".into()));
    }
    if lambda < 1.0 {
        return Err(Error::InvalidArgument("Mahler measure below 1".into()));
    }
    let df = d as f64;
    let e = (df * df * df + 2.0 * df * df - df + 2.0) / 2.0;
    Ok((log2_gs_constant(d) - 1.0 - e * lambda.log2()).exp2())
}

pub fn ratio_lower_bound(emb: &EmbeddingSet, lambda: &Interval) -> Result<RatioFloor> {
    let floor = ratio_floor(emb.degree(), lambda.hi_f64() * (1.0 + 1e-12))?;
    let groups = emb.tie_groups();
    let mut min: Option<Interval> = None;
    for w in groups.windows(2) {
        let lo = emb.modulus(*w[0].last().expect("nonempty"));
        let hi = emb.modulus(w[1][0]);
        let r = hi.checked_div(lo)?.ln()?;
        min = Some(match min {
            Some(m) if m.lo() <= r.lo() => m,
            _ => r,
        });
    }
    Ok(RatioFloor { floor, vacuous: min.is_none(), min_log_ratio: min.map(|m| (m.lo_f64(), m.hi_f64())) })
}

/// Height threshold below which an algebraic integer of degree `d` is a root
/// of unity: `log 2` for `d = 1`, `2/(d (log 3d)³)` otherwise.
pub fn voutier_bound(d: usize) -> Result<f64> {
    match d {
        0 => Err(Error::InvalidArgument("degree must be positive".into())),
        1 => Ok(std::f64::consts::LN_2),
        _ => {
            let d = d as f64;
            Ok(2.0 / (d * (3.0 * d).ln().powi(3)))
        }
    }
}

/// Certified `R > 0.2052`.
pub fn friedman_check(regulator: &Interval) -> bool {
    regulator.lo_f64() > FRIEDMAN_CONSTANT
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElementaryReport {
    pub hypothesis: bool,
    pub conclusion: bool,
}

impl ElementaryReport {
    pub fn holds(&self) -> bool {
        !self.hypothesis || self.conclusion
    }
}

/// `U ≤ V log⋆U` and `U < 2V log⋆V`.
pub fn lemma_elementary(u: f64, v: f64) -> Result<ElementaryReport> {
    if !(u > 0.0 && v > 0.0 && u.is_finite() && v.is_finite()) {
        return Err(Error::InvalidArgument("U and V must be positive".into()));
    }
    Ok(ElementaryReport {
        hypothesis: u <= v * log_star(u),
        conclusion: u < 2.0 * v * log_star(v) * (1.0 + ELEMENTARY_SLACK),
    })
}

/// Constant for one `(s, D)` entry of the linear-forms table. Stored and
/// echoed only; no bound here consumes it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BakerConstant {
    pub s: usize,
    pub d: usize,
    pub value: f64,
}

/// The unspecified constants of the two main bounds. Both default to 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KappaConfig {
    pub kappa_thm1: f64,
    pub kappa_thm2: f64,
    #[serde(default)]
    pub kappa_baker: Vec<BakerConstant>,
}

impl Default for KappaConfig {
    fn default() -> Self {
        KappaConfig { kappa_thm1: 1.0, kappa_thm2: 1.0, kappa_baker: Vec::new() }
    }
}

impl KappaConfig {
    pub fn new(kappa_thm1: f64, kappa_thm2: f64) -> Result<Self> {
        let cfg = KappaConfig { kappa_thm1, kappa_thm2, kappa_baker: Vec::new() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        if ok(self.kappa_thm1) && ok(self.kappa_thm2) && self.kappa_baker.iter().all(|b| ok(b.value)) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("kappa constants must be positive and finite".into()))
        }
    }
}

fn check_common(regulator: f64, log_m: f64, lambda0: f64, lambda: f64) -> Result<()> {
    if !(regulator > 0.0 && regulator.is_finite()) {
        return Err(Error::InvalidArgument("regulator must be positive".into()));
    }
    if !(log_m >= 0.0 && log_m.is_finite()) {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    if !(lambda0 >= 1.0 && lambda0.is_finite()) {
        return Err(Error::InvalidArgument("lambda0 must be at least 1".into()));
    }
    if !(lambda > 1.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument("lambda must exceed 1".into()));
    }
    Ok(())
}

fn check_m(m: &Integer) -> Result<f64> {
    if m.sign() != Sign::Plus {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    Ok(ln_abs_int(m))
}

/// `log` of `κ₁ λ^{d²(d+2)/2} (R + log m + log λ₀) R log⋆R`, with `log m`
/// given directly.
pub fn log_theorem1_bound_from_logs(
    regulator: f64,
    log_m: f64,
    lambda0: f64,
    lambda: f64,
    d: usize,
    cfg: &KappaConfig,
) -> Result<f64> {
    check_common(regulator, log_m, lambda0, lambda)?;
    cfg.validate()?;
    let df = d as f64;
    Ok(cfg.kappa_thm1.ln()
        + df * df * (df + 2.0) / 2.0 * lambda.ln()
        + (regulator + log_m + lambda0.ln()).ln()
        + regulator.ln()
        + log_star(regulator).ln())
}

pub fn log_theorem1_bound(
    regulator: f64,
    m: &Integer,
    lambda0: f64,
    lambda: f64,
    d: usize,
    cfg: &KappaConfig,
) -> Result<f64> {
    log_theorem1_bound_from_logs(regulator, check_m(m)?, lambda0, lambda, d, cfg)
}

pub fn theorem1_bound(
    regulator: f64,
    m: &Integer,
    lambda0: f64,
    lambda: f64,
    d: usize,
    cfg: &KappaConfig,
) -> Result<f64> {
    log_theorem1_bound(regulator, m, lambda0, lambda, d, cfg).map(f64::exp)
}

/// `log` of `κ₂ (log λ/log μ)(R + log m + log λ₀ + log λ) R log⋆(R (log λ)²/log μ)`.
pub fn log_theorem2_bound_from_logs(
    regulator: f64,
    log_m: f64,
    lambda0: f64,
    lambda: f64,
    mu: f64,
    cfg: &KappaConfig,
) -> Result<f64> {
    check_common(regulator, log_m, lambda0, lambda)?;
    cfg.validate()?;
    if !(mu > 1.0 && mu.is_finite()) {
        return Err(Error::InvalidArgument("mu must exceed 1".into()));
    }
    let (ll, lm) = (lambda.ln(), mu.ln());
    Ok(cfg.kappa_thm2.ln() + ll.ln() - lm.ln()
        + (regulator + log_m + lambda0.ln() + ll).ln()
        + regulator.ln()
        + log_star(regulator * ll * ll / lm).ln())
}

pub fn log_theorem2_bound(
    regulator: f64,
    m: &Integer,
    lambda0: f64,
    lambda: f64,
    mu: f64,
    cfg: &KappaConfig,
) -> Result<f64> {
    log_theorem2_bound_from_logs(regulator, check_m(m)?, lambda0, lambda, mu, cfg)
}

pub fn theorem2_bound(
    regulator: f64,
    m: &Integer,
    lambda0: f64,
    lambda: f64,
    mu: f64,
    cfg: &KappaConfig,
) -> Result<f64> {
    log_theorem2_bound(regulator, m, lambda0, lambda, mu, cfg).map(f64::exp)
}

/// `log κ` for the `x, y` bound, `κ = 3^{r+27} (r+1)^{7r+19} d^{2d+6r+15}`.
pub fn log_xy_kappa(d: usize, r: usize) -> f64 {
    let (d, r) = (d as f64, r as f64);
    (r + 27.0) * 3f64.ln() + (7.0 * r + 19.0) * (r + 1.0).ln() + (2.0 * d + 6.0 * r + 15.0) * d.ln()
}

/// `log` of `κ (R + log⋆m + |a| log λ + log λ₀) R log⋆R`, an upper bound for
/// `log max{|x|, |y|}`.
pub fn xy_bound_from_logs(
    regulator: f64,
    log_m: f64,
    lambda0: f64,
    lambda: f64,
    a: &Integer,
    d: usize,
    r: usize,
) -> Result<f64> {
    check_common(regulator, log_m, lambda0, lambda)?;
    let log_star_m = if log_m > 1.0 { log_m } else { 1.0 };
    let a_abs = ln_abs_int(a).exp();
    Ok(log_xy_kappa(d, r)
        + (regulator + log_star_m + a_abs * lambda.ln() + lambda0.ln()).ln()
        + regulator.ln()
        + log_star(regulator).ln())
}

pub fn xy_bound(
    regulator: f64,
    m: &Integer,
    lambda0: f64,
    lambda: f64,
    a: &Integer,
    d: usize,
    r: usize,
) -> Result<f64> {
    xy_bound_from_logs(regulator, check_m(m)?, lambda0, lambda, a, d, r)
}

/// `log` of the constant in `log μ ≥ κ (log λ)²/λ^{d²(d+2)/2}`:
/// `(gs_constant(d)/2) e² (d-2)²/16`.
pub fn log_mu_floor_constant(d: usize) -> f64 {
    let k = (d as f64 - 2.0) / 4.0;
    log2_gs_constant(d) * std::f64::consts::LN_2 - std::f64::consts::LN_2 + 2.0 + 2.0 * k.ln()
}

/// `κ (log λ)²/λ^{d²(d+2)/2}`, a floor for `log μ` when `d ≥ 3`.
pub fn mu_floor(d: usize, lambda: f64) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidArgument("mu floor needs degree >= 3".into()));
    }
    if lambda.is_nan() || lambda <= 1.0 {
        return Err(Error::InvalidArgument("lambda must exceed 1".into()));
    }
    let df = d as f64;
    let ll = lambda.ln();
    Ok((log_mu_floor_constant(d) + 2.0 * ll.ln() - df * df * (df + 2.0) / 2.0 * ll).exp())
}

/// Inputs of the bound evaluators, as point values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundInputs {
    pub regulator: f64,
    #[serde(with = "crate::json::decimal")]
    pub m: Integer,
    pub lambda0: f64,
    pub lambda: f64,
    pub mu: f64,
    pub d: usize,
    pub r: usize,
    #[serde(with = "crate::json::decimal")]
    pub a: Integer,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub log_a_bound_thm1: f64,
    pub log_a_bound_thm2: f64,
    pub log_xy_bound: f64,
    /// `log log μ` floor; `None` for `d < 3`.
    pub log_mu_floor: Option<f64>,
    /// Whether the thm1 bound dominates the thm2 bound here.
    pub thm1_dominates: bool,
    pub inputs: BoundInputs,
    pub kappas: KappaConfig,
    pub caveat: &'static str,
}

pub const KAPPA_CAVEAT: &str =
    "the constants of both bounds are effective but unspecified; values use the configured kappas";

impl BoundReport {
    pub fn compute(inputs: BoundInputs, cfg: &KappaConfig) -> Result<Self> {
        let t1 = log_theorem1_bound(inputs.regulator, &inputs.m, inputs.lambda0, inputs.lambda, inputs.d, cfg)?;
        let t2 = log_theorem2_bound(inputs.regulator, &inputs.m, inputs.lambda0, inputs.lambda, inputs.mu, cfg)?;
        let xy = xy_bound(inputs.regulator, &inputs.m, inputs.lambda0, inputs.lambda, &inputs.a, inputs.d, inputs.r)?;
        let floor = (inputs.d >= 3).then(|| mu_floor(inputs.d, inputs.lambda)).transpose()?;
        let all = [t1, t2, xy];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("bound evaluation overflowed".into()));
        }
        Ok(BoundReport {
            log_a_bound_thm1: t1,
            log_a_bound_thm2: t2,
            log_xy_bound: xy,
            log_mu_floor: floor.map(f64::ln),
            thm1_dominates: t1 >= t2,
            inputs,
            kappas: cfg.clone(),
            caveat: KAPPA_CAVEAT,
        })
    }
}
