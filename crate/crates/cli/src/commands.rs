use std::io::Write;
use std::str::FromStr;

use serde_json::{json, Value};
use thue_twist::bounds::{BoundInputs, BoundReport};
use thue_twist::field::{regulator_from_units, UnitSystem};
use thue_twist::json::FamilyDescriptor;
use thue_twist::solver::{empirical_kappa, verify_solution};
use thue_twist::twist::{corollary_mu_check, cyclotomic_demo, invariants_of};
use thue_twist::{
    enumerate, Error, FieldElement, IntPoly, Integer, Interval, KappaConfig, NumberField, Precision, SearchBox,
    SolutionTriple, TwistFamily,
};

use crate::output::{Format, Report};
use crate::{checks, corpus, Command, Demo, FamilyArgs, PrecArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_CERTIFICATION: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

pub(crate) enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Report, bool), Failure>;

pub fn run(cmd: Command) -> u8 {
    let (format, outcome) = dispatch(cmd);
    match outcome {
        Ok((report, ok)) => {
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().write_all(report.render(format).as_bytes());
            if ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            if e.is_certification_failure() {
                EXIT_CERTIFICATION
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn dispatch(cmd: Command) -> (Format, Outcome) {
    match cmd {
        Command::Form { fam, a, out } => (out.format.into(), form(&fam, a)),
        Command::Invariants { fam, out } => (out.format.into(), invariants(&fam)),
        Command::Bounds { fam, regulator, m, a, kappa_thm1, kappa_thm2, out } => {
            (out.format.into(), bounds(&fam, regulator, &m, a, kappa_thm1, kappa_thm2))
        }
        Command::Solve { fam, a, a_range, xy_max, m, require_degree, regulator, out } => {
            (out.format.into(), solve(&fam, a, &a_range, xy_max, &m, require_degree, regulator))
        }
        Command::Verify { fam, x, y, a, m, out } => (out.format.into(), verify(&fam, &x, &y, a, &m)),
        Command::Demo { which: Demo::Cyclotomic { n, prec, out } } => (out.format.into(), demo_cyclotomic(n, prec)),
        Command::Demo { which: Demo::Corollary { eps, h, a, prec, out } } => {
            (out.format.into(), demo_corollary(&eps, h, a, prec))
        }
        Command::Checks { family, prec, out } => (out.format.into(), run_checks(&family, prec)),
    }
}

pub(crate) fn precision(p: PrecArgs) -> Result<Precision, Failure> {
    Precision::new(p.bits, p.max_bits).map_err(|e| Failure::Usage(e.to_string()))
}

fn load_family(args: &FamilyArgs) -> Result<(FamilyDescriptor, TwistFamily), Failure> {
    let desc = corpus::load(&args.family).map_err(Failure::Usage)?;
    let fam = TwistFamily::from_descriptor(&desc, precision(args.prec)?, args.unchecked_root_of_unity)?;
    Ok((desc, fam))
}

fn integer(name: &str, s: &str) -> Result<Integer, Failure> {
    Integer::from_str(s.trim()).map_err(|_| Failure::Usage(format!("--{name} expects an integer, got {s:?}")))
}

fn positive(name: &str, s: &str) -> Result<Integer, Failure> {
    let v = integer(name, s)?;
    if v < Integer::from(1) {
        return Err(Failure::Usage(format!("--{name} must be at least 1")));
    }
    Ok(v)
}

/// `LO:HI` or `LO..HI`, inclusive.
pub(crate) fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("--a-range expects LO:HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").or_else(|| s.split_once(':')).ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Failure::Usage(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

fn iv(i: &Interval) -> String {
    format!("[{:.15e}, {:.15e}]", i.lo_f64(), i.hi_f64())
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn form(args: &FamilyArgs, a: i64) -> Outcome {
    let (_, fam) = load_family(args)?;
    let f = fam.form_at(a)?;
    let text = f.to_string();
    Ok((Report::new(json!({"a": a, "form": text, "coeffs": to_json(&f)}), text), true))
}

fn invariants(args: &FamilyArgs) -> Outcome {
    let (_, fam) = load_family(args)?;
    let inv = invariants_of(&fam)?;
    let case = to_json(&inv.mu_case);
    let text = format!(
        "lambda0 = {}\nlambda0 (a0 cleared) = {}\nlambda = {}\nmu = {}\nmu case = {}\n",
        iv(&inv.lambda0),
        iv(&inv.lambda0_rescaled),
        iv(&inv.lambda),
        iv(&inv.mu),
        case.as_str().unwrap_or_default(),
    );
    let mut j = to_json(&inv);
    j["outside_hypotheses"] = json!(fam.outside_hypotheses());
    Ok((Report::new(j, text), true))
}

/// Regulator and unit rank from the descriptor, when it lists units.
pub(crate) fn descriptor_regulator(
    desc: &FamilyDescriptor,
    fam: &TwistFamily,
) -> Result<Option<(Interval, usize)>, Failure> {
    let Some(units) = &desc.units else { return Ok(None) };
    let units =
        units.iter().map(|u| FieldElement::from_descriptor(fam.field(), u)).collect::<thue_twist::Result<Vec<_>>>()?;
    let sys = UnitSystem::new(units)?;
    Ok(Some((regulator_from_units(&sys, fam.embeddings())?, sys.rank())))
}

fn bounds(args: &FamilyArgs, regulator: Option<f64>, m: &str, a: i64, k1: f64, k2: f64) -> Outcome {
    let m = positive("m", m)?;
    let cfg = KappaConfig::new(k1, k2).map_err(|e| Failure::Usage(e.to_string()))?;
    let (desc, fam) = load_family(args)?;
    let (r1, r2) = fam.embeddings().signature();
    let from_units = descriptor_regulator(&desc, &fam)?;
    let (regulator, r) = match (regulator, &from_units) {
        (Some(v), Some((_, r))) => (v, *r),
        (Some(v), None) => (v, r1 + r2 - 1),
        (None, Some((reg, r))) => (reg.hi_f64(), *r),
        (None, None) => return Err(Failure::Usage("no units in the descriptor; pass --regulator".into())),
    };
    let inv = invariants_of(&fam)?;
    let inputs = BoundInputs {
        regulator,
        m,
        lambda0: inv.lambda0.hi_f64(),
        lambda: inv.lambda.to_f64(),
        mu: inv.mu.to_f64(),
        d: fam.degree(),
        r,
        a: Integer::from(a),
    };
    let rep = BoundReport::compute(inputs, &cfg).map_err(|e| Failure::Usage(e.to_string()))?;
    let floor = rep.log_mu_floor.map_or("n/a".to_string(), |v| format!("{v:.10e}"));
    let text = format!(
        "log |a| bound (first)  = {:.10e}\nlog |a| bound (second) = {:.10e}\nlog max(|x|,|y|) bound = {:.10e}\nlog mu floor = {floor}\nfirst dominates = {}\nregulator = {regulator}\nnote: {}\n",
        rep.log_a_bound_thm1, rep.log_a_bound_thm2, rep.log_xy_bound, rep.thm1_dominates, rep.caveat,
    );
    Ok((Report::new(to_json(&rep), text), true))
}

fn solve(
    args: &FamilyArgs,
    a: Option<i64>,
    a_range: &str,
    xy_max: i64,
    m: &str,
    require_degree: bool,
    regulator: Option<f64>,
) -> Outcome {
    let m = positive("m", m)?;
    let (lo, hi) = match a {
        Some(a) => (a, a),
        None => parse_range(a_range)?,
    };
    let sbox = SearchBox::new(lo, hi, xy_max, m).map_err(|e| Failure::Usage(e.to_string()))?;
    let (_, fam) = load_family(args)?;
    let set = enumerate(&fam, &sbox, require_degree)?;
    let fit = regulator.map(|r| empirical_kappa(&fam, &set, r)).transpose()?;

    let mut text = format!(
        "{} solutions with 0 < |F_a(x,y)| <= {} for a in [{lo}, {hi}], |x|,|y| <= {xy_max}\n",
        set.solutions.len(),
        sbox.m,
    );
    if !set.skipped.is_empty() {
        text.push_str(&format!("skipped a (degree condition): {:?}\n", set.skipped));
    }
    if set.outside_hypotheses {
        text.push_str("note: twisting unit is a root of unity\n");
    }
    let mut rows = Vec::new();
    for (s, d) in set.solutions.iter().zip(&set.diagnostics) {
        let i0 = d.i0.map_or(String::new(), |i| i.to_string());
        text.push_str(&format!("a={} x={} y={} value={}\n", s.a, s.x, s.y, s.value));
        rows.push(vec![
            s.a.to_string(),
            s.x.to_string(),
            s.y.to_string(),
            s.value.to_string(),
            i0,
            d.degree_condition.to_string(),
        ]);
    }
    if let Some(f) = &fit {
        text.push_str(&format!("fitted kappa = {:.6e} (vacuous: {})\n", f.fitted_kappa, f.vacuous));
    }
    let mut j = to_json(&set);
    if let Some(f) = &fit {
        j["kappa_fit"] = to_json(f);
    }
    let headers = ["a", "x", "y", "value", "i0", "degree_condition"].map(String::from).to_vec();
    Ok((Report::new(j, text).with_table(headers, rows), true))
}

fn verify(args: &FamilyArgs, x: &str, y: &str, a: i64, m: &str) -> Outcome {
    let x = integer("x", x)?;
    let y = integer("y", y)?;
    let m = positive("m", m)?;
    let (_, fam) = load_family(args)?;
    let value = fam.form_at(a)?.evaluate(&x, &y);
    let sol = SolutionTriple { a, y, x, value };
    let rep = verify_solution(&fam, &sol, &m)?;
    let mut text = format!("{} value={}", if rep.passed { "pass" } else { "fail" }, rep.value);
    if !rep.xy_nonzero {
        text.push_str(" (xy = 0)");
    } else if !rep.in_range {
        text.push_str(&format!(" (outside 0 < |F| <= {m})"));
    }
    if let Some(p) = &rep.psi {
        text.push_str(&format!(" i0={}", p.i0));
    }
    if let Some(e) = &rep.psi_error {
        text.push_str(&format!(" psi: {e}"));
    }
    Ok((Report::new(to_json(&rep), text), rep.passed))
}

fn demo_cyclotomic(n: usize, prec: PrecArgs) -> Outcome {
    if n < 3 {
        return Err(Failure::Usage("n must be at least 3".into()));
    }
    let rep = cyclotomic_demo(n, precision(prec)?)?;
    let list = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
    let mut sols = rep.solutions.clone();
    sols.sort();
    let mut text = format!("{} = 1 with |x|,|y| <= {}:\n", rep.base_form, rep.search_radius);
    for (x, y) in &sols {
        text.push_str(&format!("  ({x}, {y})\n"));
    }
    text.push_str(&format!("F_a = F_0 for a in {{{}}}\n", list(&rep.equal_for)));
    if !rep.all_equal() {
        text.push_str(&format!("coprime residues: {{{}}}\n", list(&rep.coprime)));
    }
    text.push_str("note: the twisting unit is a root of unity, outside the finiteness hypotheses\n");
    let rows = sols.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]).collect();
    let ok = rep.all_equal();
    Ok((Report::new(to_json(&rep), text).with_table(vec!["x".into(), "y".into()], rows), ok))
}

pub(crate) fn parse_poly(s: &str) -> Result<IntPoly, Failure> {
    let coeffs = s.split(',').map(|c| integer("eps", c)).collect::<Result<Vec<_>, _>>()?;
    Ok(IntPoly::new(coeffs))
}

fn demo_corollary(eps: &str, h: usize, a: i64, prec: PrecArgs) -> Outcome {
    let p = parse_poly(eps)?;
    NumberField::new(p.clone())?;
    let rep = corollary_mu_check(&p, h, a, precision(prec)?)?;
    let text = format!(
        "F_a = {}\nlambda = {}\nmu = {}\nmu case = {}\nexpected mu = {}\nmu law holds = {}\n(2/(d-1)) log lambda <= log mu: {:?}\n",
        rep.form,
        iv(&rep.lambda),
        iv(&rep.mu),
        to_json(&rep.mu_case).as_str().unwrap_or_default(),
        iv(&rep.mu_expected),
        rep.mu_law_holds,
        rep.log_mu_bound,
    );
    let ok = rep.mu_law_holds && rep.log_mu_bound.passed();
    Ok((Report::new(to_json(&rep), text), ok))
}

fn run_checks(extra: &[std::path::PathBuf], prec: PrecArgs) -> Outcome {
    let cfg = precision(prec)?;
    let mut families = corpus::bundled();
    for path in extra {
        let s = path.to_string_lossy().into_owned();
        families.push((s.clone(), corpus::load(&s).map_err(Failure::Usage)?));
    }
    let lines = checks::run(&families, cfg);
    let ok = lines.iter().all(|l| l.passed);
    let text = lines.iter().map(checks::CheckLine::to_text).collect::<Vec<_>>().join("\n");
    let rows = lines
        .iter()
        .map(|l| vec![l.suite.to_string(), l.subject.clone(), l.passed.to_string(), l.detail.clone()])
        .collect();
    let headers = ["suite", "subject", "passed", "detail"].map(String::from).to_vec();
    Ok((Report::new(json!({"passed": ok, "checks": to_json(&lines)}), text).with_table(headers, rows), ok))
}
