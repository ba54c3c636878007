use serde::Serialize;
use thue_twist::bounds::{friedman_check, lemma_elementary, ratio_lower_bound, separation_check, voutier_bound};
use thue_twist::embeddings::{check_two_conjugates_real, element_conjugates, log_height};
use thue_twist::field::Verdict;
use thue_twist::json::FamilyDescriptor;
use thue_twist::twist::{corollary_mu_check, cyclotomic_demo, family_hauteurunite, invariants_of, root_of_unity_order};
use thue_twist::{Error, IntPoly, Precision, TwistFamily};

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub suite: &'static str,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    pub fn to_text(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            format!("{tag} {} {}", self.suite, self.subject)
        } else {
            format!("{tag} {} {}: {}", self.suite, self.subject, self.detail)
        }
    }
}

fn line(suite: &'static str, subject: &str, r: Result<(bool, String), Error>) -> CheckLine {
    match r {
        Ok((passed, detail)) => CheckLine { suite, subject: subject.to_string(), passed, detail },
        Err(e) => CheckLine { suite, subject: subject.to_string(), passed: false, detail: e.to_string() },
    }
}

pub fn run(families: &[(String, FamilyDescriptor)], cfg: Precision) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for (name, desc) in families {
        family_checks(name, desc, cfg, &mut out);
    }
    out.push(line("elementary", "grid", elementary_grid()));
    for (subject, eps, h, a) in [
        ("golden h=2 a=3", &[-1, -1, 1][..], 2, 3),
        ("2+sqrt3 h=2 a=1", &[1, -4, 1], 2, 1),
        ("plastic h=3 a=2", &[-1, -1, 0, 1], 3, 2),
    ] {
        out.push(line("corollary", subject, corollary(eps, h, a, cfg)));
    }
    out.push(line("cyclotomic", "n=12", cyclotomic(cfg)));
    out
}

fn family_checks(name: &str, desc: &FamilyDescriptor, cfg: Precision, out: &mut Vec<CheckLine>) {
    let fam = match TwistFamily::from_descriptor(desc, cfg, true) {
        Ok(f) => f,
        Err(e) => {
            out.push(line("family", name, Err(e)));
            return;
        }
    };
    if let Some(k) = root_of_unity_order(fam.upsilon()) {
        out.push(CheckLine {
            suite: "family",
            subject: name.to_string(),
            passed: true,
            detail: format!("twisting unit has order {k}; unit suites skipped"),
        });
        return;
    }
    out.push(line("hauteurunite", name, family_hauteurunite(&fam).map(|r| (r.passed(), String::new()))));
    out.push(line("voutier", name, voutier(&fam)));
    out.push(line(
        "separation",
        name,
        separation_check(fam.field().poly(), fam.embeddings())
            .map(|r| (r.holds(), format!("{:e} vs {:?}", r.separation, r.min_gap))),
    ));
    let conj = match element_conjugates(fam.upsilon(), fam.embeddings()) {
        Ok(c) => c,
        Err(e) => {
            out.push(line("conjugates", name, Err(e)));
            return;
        }
    };
    if conj.roots().degree() >= 3 {
        out.push(line(
            "two_real",
            name,
            check_two_conjugates_real(conj.roots()).map(|r| (r.passed(), r.witness.unwrap_or_default())),
        ));
        let r = invariants_of(&fam).and_then(|inv| ratio_lower_bound(conj.roots(), &inv.lambda));
        out.push(line("ratio_floor", name, r.map(|r| (r.holds(), format!("{:e} vs {:?}", r.floor, r.min_log_ratio)))));
    }
    let mu = invariants_of(&fam).map(|inv| {
        let v = Verdict::le(&inv.mu, &inv.lambda.sqr());
        (v.passed(), format!("{v:?}"))
    });
    out.push(line("mu_le_lambda_sq", name, mu));
    if let Some(r) = friedman(desc, &fam) {
        out.push(line("friedman", name, r));
    }
}

fn voutier(fam: &TwistFamily) -> Result<(bool, String), Error> {
    let d = fam.upsilon().min_poly().degree().unwrap_or(1);
    let h = log_height(fam.upsilon(), fam.embeddings())?;
    let b = voutier_bound(d)?;
    Ok((h.lo_f64() >= b, format!("h = {:.6e} vs {b:.6e}", h.to_f64())))
}

fn friedman(desc: &FamilyDescriptor, fam: &TwistFamily) -> Option<Result<(bool, String), Error>> {
    match crate::commands::descriptor_regulator(desc, fam) {
        Ok(None) => None,
        Ok(Some((reg, _))) => Some(Ok((friedman_check(&reg), format!("R = {:.10}", reg.to_f64())))),
        Err(crate::commands::Failure::Core(e)) => Some(Err(e)),
        Err(crate::commands::Failure::Usage(msg)) => Some(Err(Error::InvalidArgument(msg))),
    }
}

/// Log-spaced 200 × 200 grid over `[1e-3, 1e6]²`.
fn elementary_grid() -> Result<(bool, String), Error> {
    let n = 200;
    let at = |i: usize| 10f64.powf(-3.0 + 9.0 * i as f64 / (n - 1) as f64);
    let mut hyp = 0;
    let mut bad = 0;
    for i in 0..n {
        for j in 0..n {
            let r = lemma_elementary(at(i), at(j))?;
            hyp += r.hypothesis as usize;
            bad += !r.holds() as usize;
        }
    }
    Ok((bad == 0, format!("{} points, {hyp} with the hypothesis, {bad} violations", n * n)))
}

fn corollary(eps: &[i64], h: usize, a: i64, cfg: Precision) -> Result<(bool, String), Error> {
    let r = corollary_mu_check(&IntPoly::from_i64s(eps), h, a, cfg)?;
    Ok((r.mu_law_holds && r.log_mu_bound.passed(), format!("{} mu = {:.12}", r.form, r.mu.to_f64())))
}

fn cyclotomic(cfg: Precision) -> Result<(bool, String), Error> {
    let r = cyclotomic_demo(12, cfg)?;
    let mut s = r.solutions.clone();
    s.sort();
    let ok = r.all_equal() && s == [(-1, -1), (-1, 1), (1, -1), (1, 1)];
    Ok((ok, format!("F_a = F_0 for a in {:?}, solutions {s:?}", r.equal_for)))
}
