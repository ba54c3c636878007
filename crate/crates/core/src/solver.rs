//! Exhaustive search for `0 < |F_a(x, y)| ≤ m`, `xy ≠ 0`, inside a box.
//!
//! For each `y > 0`, any solution has `min_j |x − γ_j y| ≤ (m/a₀)^{1/d}`, so
//! `x` lies in a window around `Re(γ_j) y` for some conjugate with
//! `|Im γ_j| y ≤ (m/a₀)^{1/d}`. Solutions with `y < 0` are the mirrors
//! `(−x, −y)`.

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::Dyadic;
use crate::bounds::{log_theorem2_bound, KappaConfig};
use crate::embeddings::conjugate_boxes;
use crate::error::{Error, Result};
use crate::exact::Integer;
use crate::twist::{invariants_of, psi_values, BinaryForm, SolutionTriple, TwistFamily};

/// `a ∈ [a_min, a_max]`, `1 ≤ |x|, |y| ≤ xy_max`, `0 < |F_a(x, y)| ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBox {
    pub a_min: i64,
    pub a_max: i64,
    pub xy_max: i64,
    #[serde(with = "crate::json::decimal")]
    pub m: Integer,
}

impl SearchBox {
    pub fn new(a_min: i64, a_max: i64, xy_max: i64, m: Integer) -> Result<Self> {
        if a_min > a_max {
            return Err(Error::InvalidArgument("a_min must not exceed a_max".into()));
        }
        if xy_max < 1 {
            return Err(Error::InvalidArgument("xy_max must be at least 1".into()));
        }
        if m < Integer::from(1) {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        Ok(SearchBox { a_min, a_max, xy_max, m })
    }

    fn contains(&self, v: &Integer) -> bool {
        !v.is_zero() && v.abs() <= self.m
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionDiagnostics {
    pub i0: Option<usize>,
    pub psi_moduli: Vec<(f64, f64)>,
    pub degree_condition: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolutionSet {
    pub search_box: SearchBox,
    pub require_degree: bool,
    /// Sorted by `(a, y, x)`.
    pub solutions: Vec<SolutionTriple>,
    pub diagnostics: Vec<SolutionDiagnostics>,
    /// Exponents skipped by the degree filter.
    pub skipped: Vec<i64>,
    /// Rows `(a, y)` scanned in full because the windows were not usable.
    pub full_scan_rows: usize,
    pub outside_hypotheses: bool,
}

struct Scan {
    a: i64,
    solutions: Vec<SolutionTriple>,
    skipped: bool,
    full_rows: usize,
}

/// Windowed exhaustive search, parallel over `a`.
pub fn enumerate(fam: &TwistFamily, sbox: &SearchBox, require_degree: bool) -> Result<SolutionSet> {
    let scans: Vec<Scan> = (sbox.a_min..=sbox.a_max)
        .into_par_iter()
        .map(|a| scan_exponent(fam, sbox, a, require_degree))
        .collect::<Result<_>>()?;
    let mut solutions = Vec::new();
    let mut skipped = Vec::new();
    let mut full_scan_rows = 0;
    for s in scans {
        if s.skipped {
            skipped.push(s.a);
        }
        full_scan_rows += s.full_rows;
        solutions.extend(s.solutions);
    }
    solutions.sort();
    solutions.dedup();
    let diagnostics = solutions.par_iter().map(|s| diagnose(fam, s, &sbox.m)).collect();
    Ok(SolutionSet {
        search_box: sbox.clone(),
        require_degree,
        solutions,
        diagnostics,
        skipped,
        full_scan_rows,
        outside_hypotheses: fam.outside_hypotheses(),
    })
}

fn diagnose(fam: &TwistFamily, s: &SolutionTriple, m: &Integer) -> SolutionDiagnostics {
    let degree_condition = fam.degree_condition(s.a).unwrap_or(false);
    match psi_values(fam, s, m) {
        Ok(r) => SolutionDiagnostics {
            i0: Some(r.i0),
            psi_moduli: r.psi_moduli.iter().map(|v| (v.lo_f64(), v.hi_f64())).collect(),
            degree_condition,
            error: None,
        },
        Err(e) => {
            SolutionDiagnostics { i0: None, psi_moduli: Vec::new(), degree_condition, error: Some(e.to_string()) }
        }
    }
}

fn push_pair(out: &mut Vec<SolutionTriple>, form: &BinaryForm, a: i64, x: i64, y: i64, v: Integer) {
    let mirrored = if form.degree() % 2 == 1 { -v.clone() } else { v.clone() };
    out.push(SolutionTriple { a, x: x.into(), y: y.into(), value: v });
    out.push(SolutionTriple { a, x: (-x).into(), y: (-y).into(), value: mirrored });
}

fn scan_exponent(fam: &TwistFamily, sbox: &SearchBox, a: i64, require_degree: bool) -> Result<Scan> {
    let mut scan = Scan { a, solutions: Vec::new(), skipped: false, full_rows: 0 };
    if require_degree && !fam.degree_condition(a)? {
        scan.skipped = true;
        return Ok(scan);
    }
    let form = fam.form_at(a)?;
    let windows = Windows::new(fam, a, &sbox.m);
    let n = sbox.xy_max;
    for y in 1..=n {
        let xs = match windows.as_ref().and_then(|w| w.candidates(y, n)) {
            Some(xs) => xs,
            None => {
                scan.full_rows += 1;
                (-n..=n).collect()
            }
        };
        for x in xs {
            if x == 0 {
                continue;
            }
            let v = form.evaluate_i64(x, y);
            if sbox.contains(&v) {
                push_pair(&mut scan.solutions, &form, a, x, y, v);
            }
        }
    }
    Ok(scan)
}

/// Certified enclosures of `Re γ_j`, `|Im γ_j|` and the radius `(m/a₀)^{1/d}`.
struct Windows {
    centres: Vec<(f64, f64, f64)>,
    radius: f64,
}

impl Windows {
    fn new(fam: &TwistFamily, a: i64, m: &Integer) -> Option<Windows> {
        let gamma = fam.gamma(a).ok()?;
        let boxes = conjugate_boxes(&gamma, fam.embeddings());
        let centres: Vec<(f64, f64, f64)> = boxes
            .iter()
            .map(|b| {
                let im = b.im.abs();
                (b.re.lo_f64(), b.re.hi_f64(), im.lo_f64())
            })
            .collect();
        if centres.iter().any(|&(lo, hi, im)| !(lo.is_finite() && hi.is_finite() && im.is_finite())) {
            return None;
        }
        let q = m.to_f64()? / fam.a0().to_f64()?;
        if !q.is_finite() {
            return None;
        }
        // outward margin on the root
        let radius = q.powf(1.0 / fam.degree() as f64) * (1.0 + 1e-9) + 1e-9;
        Some(Windows { centres, radius })
    }

    /// Candidate `x` for one `y`, or `None` to request a full row.
    fn candidates(&self, y: i64, n: i64) -> Option<Vec<i64>> {
        let yf = y as f64;
        let mut spans: Vec<(i64, i64)> = Vec::new();
        for &(lo, hi, im) in &self.centres {
            if im * yf * (1.0 - 1e-12) > self.radius {
                continue;
            }
            let l = (lo * yf - self.radius).floor() - 1.0;
            let h = (hi * yf + self.radius).ceil() + 1.0;
            if !(l.is_finite() && h.is_finite()) {
                return None;
            }
            let (l, h) = (l.max(-(n as f64)) as i64, h.min(n as f64) as i64);
            if l <= h {
                spans.push((l, h));
            }
        }
        spans.sort();
        let mut out = Vec::new();
        let mut last = i64::MIN;
        for (l, h) in spans {
            for x in l.max(last.saturating_add(1))..=h {
                out.push(x);
            }
            last = last.max(h);
        }
        Some(out)
    }
}

/// Unconditional double loop over the box; the oracle for [`enumerate`].
pub fn full_scan(fam: &TwistFamily, sbox: &SearchBox, require_degree: bool) -> Result<Vec<SolutionTriple>> {
    let n = sbox.xy_max;
    let mut out = Vec::new();
    for a in sbox.a_min..=sbox.a_max {
        if require_degree && !fam.degree_condition(a)? {
            continue;
        }
        let form = fam.form_at(a)?;
        for y in -n..=n {
            for x in -n..=n {
                if x == 0 || y == 0 {
                    continue;
                }
                let v = form.evaluate_i64(x, y);
                if sbox.contains(&v) {
                    out.push(SolutionTriple { a, x: x.into(), y: y.into(), value: v });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    #[serde(with = "crate::json::decimal")]
    pub value: Integer,
    pub value_matches: bool,
    pub in_range: bool,
    pub xy_nonzero: bool,
    pub degree_condition: bool,
    pub psi: Option<crate::twist::PsiReport>,
    pub psi_error: Option<String>,
    pub passed: bool,
}

/// Re-evaluates a claimed solution exactly and attaches the `Ψ` diagnostics.
pub fn verify_solution(fam: &TwistFamily, sol: &SolutionTriple, m: &Integer) -> Result<VerifyReport> {
    let value = fam.form_at(sol.a)?.evaluate(&sol.x, &sol.y);
    let value_matches = value == sol.value;
    let in_range = !value.is_zero() && &value.abs() <= m;
    let xy_nonzero = !sol.x.is_zero() && !sol.y.is_zero();
    let degree_condition = fam.degree_condition(sol.a)?;
    let (psi, psi_error) = if in_range && xy_nonzero {
        let claimed = SolutionTriple { value: value.clone(), ..sol.clone() };
        match psi_values(fam, &claimed, m) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let passed = value_matches && in_range && xy_nonzero && psi.as_ref().is_some_and(|p| p.passed());
    Ok(VerifyReport { value, value_matches, in_range, xy_nonzero, degree_condition, psi, psi_error, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct KappaFit {
    /// `(a, |a| / rhs)` per solution, with the rhs evaluated at `κ = 1`.
    pub ratios: Vec<(i64, f64)>,
    pub max_abs_a: i64,
    pub fitted_kappa: f64,
    pub vacuous: bool,
    pub log_rhs: f64,
}

/// The smallest `κ` for which every solution found satisfies the second
/// bound. Reports, never asserts.
pub fn empirical_kappa(fam: &TwistFamily, set: &SolutionSet, regulator: f64) -> Result<KappaFit> {
    let inv = invariants_of(fam)?;
    if inv.mu.lo() <= &Dyadic::one() {
        return Err(Error::precision(inv.mu.prec(), "mu is not certified above 1"));
    }
    let log_rhs = log_theorem2_bound(
        regulator,
        &set.search_box.m,
        inv.lambda0.hi_f64(),
        inv.lambda.to_f64(),
        inv.mu.to_f64(),
        &KappaConfig::default(),
    )?;
    let rhs = log_rhs.exp();
    let ratios: Vec<(i64, f64)> = set.solutions.iter().map(|s| (s.a, s.a.unsigned_abs() as f64 / rhs)).collect();
    let fitted_kappa = ratios.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(KappaFit {
        max_abs_a: set.solutions.iter().map(|s| s.a.abs()).max().unwrap_or(0),
        vacuous: ratios.is_empty(),
        ratios,
        fitted_kappa,
        log_rhs,
    })
}
