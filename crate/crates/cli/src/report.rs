use std::fmt::Write;

use quatreg_core::check::LimitSummary;
use quatreg_core::forms::Side;
use quatreg_core::identities::IdentityReport;
use quatreg_core::{Mode, ResidualReport, SpecialFunction, Tolerances, Verdict};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub points: usize,
    pub regular: usize,
    pub non_regular: usize,
    pub errors: usize,
}

impl Summary {
    fn of(reports: &[ResidualReport]) -> Self {
        let count = |v| reports.iter().filter(|r| r.verdict == v).count();
        Summary {
            points: reports.len(),
            regular: count(Verdict::Regular),
            non_regular: count(Verdict::NonRegular),
            errors: count(Verdict::Error),
        }
    }

    fn verdict(&self) -> Verdict {
        if self.regular == self.points {
            Verdict::Regular
        } else if self.errors > 0 && self.non_regular == 0 {
            Verdict::Error
        } else {
            Verdict::NonRegular
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutput {
    pub f0: String,
    pub f1: String,
    pub mode: Mode,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub points: Vec<ResidualReport>,
    pub summary: Summary,
    pub verdict: Verdict,
}

impl CheckOutput {
    pub fn new(
        f0: &str,
        f1: &str,
        mode: Mode,
        seed: u64,
        tolerances: Tolerances,
        points: Vec<ResidualReport>,
    ) -> Self {
        let summary = Summary::of(&points);
        CheckOutput {
            f0: f0.to_string(),
            f1: f1.to_string(),
            mode,
            seed,
            tolerances,
            verdict: summary.verdict(),
            points,
            summary,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Text => {
                let mut s = String::new();
                writeln!(s, "f0 = {}", self.f0).unwrap();
                writeln!(s, "f1 = {}", self.f1).unwrap();
                writeln!(s, "mode = {}, seed = {}", self.mode, self.seed).unwrap();
                s.push_str(&table(&self.points));
                writeln!(s, "{}", summary_line(&self.summary, self.verdict)).unwrap();
                s
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivativeOutput {
    pub f0: String,
    pub f1: String,
    pub derivative: SpecialFunction,
    pub tolerances: Tolerances,
    pub points: Vec<ResidualReport>,
    pub summary: Summary,
    pub verdict: Verdict,
}

impl DerivativeOutput {
    pub fn new(
        f0: &str,
        f1: &str,
        derivative: &SpecialFunction,
        tolerances: Tolerances,
        points: Vec<ResidualReport>,
    ) -> Self {
        let summary = Summary::of(&points);
        DerivativeOutput {
            f0: f0.to_string(),
            f1: f1.to_string(),
            derivative: derivative.clone(),
            tolerances,
            verdict: summary.verdict(),
            points,
            summary,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Text => {
                let mut s = String::new();
                writeln!(s, "f0' = {}", self.derivative.f0).unwrap();
                writeln!(s, "f1' = {}", self.derivative.f1).unwrap();
                s.push_str(&table(&self.points));
                writeln!(s, "{}", summary_line(&self.summary, self.verdict)).unwrap();
                s
            }
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn summary_line(summary: &Summary, verdict: Verdict) -> String {
    format!(
        "{} of {} points regular, {} non-regular, {} errors: {}",
        summary.regular, summary.points, summary.non_regular, summary.errors, verdict
    )
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:>12.3e}"))
        .unwrap_or_else(|| format!("{:>12}", "-"))
}

fn spread(limits: &[LimitSummary], side: Side) -> Option<f64> {
    limits.iter().find(|l| l.side == side).map(|l| l.spread)
}

fn table(reports: &[ResidualReport]) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:>4}  {:>9} {:>9} {:>9} {:>9}  {:>12} {:>12} {:>12} {:>12}  verdict",
        "#", "x1", "x2", "x3", "x4", "max|pde|", "max|form|", "spread(L)", "spread(R)"
    )
    .unwrap();
    for (n, r) in reports.iter().enumerate() {
        let [a, b, c, d] = r.point;
        write!(
            s,
            "{:>4}  {a:>9.4} {b:>9.4} {c:>9.4} {d:>9.4}  {} {} {} {}  {}",
            n,
            cell(r.max_pde()),
            cell(r.max_form()),
            cell(spread(&r.limits, Side::Left)),
            cell(spread(&r.limits, Side::Right)),
            r.verdict
        )
        .unwrap();
        if let Some(e) = &r.error {
            write!(s, " ({e})").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn render_identities(report: &IdentityReport, format: Format) -> String {
    if format == Format::Json {
        return json(report);
    }
    let mut s = String::new();
    writeln!(s, "seed = {}, samples = {}", report.seed, report.samples).unwrap();
    writeln!(
        s,
        "{:<24} {:>7} {:>14} {:>10}  status",
        "identity", "cases", "max violation", "tolerance"
    )
    .unwrap();
    for r in &report.results {
        writeln!(
            s,
            "{:<24} {:>7} {:>14.3e} {:>10.0e}  {}",
            r.name,
            r.cases,
            r.max_violation,
            r.tolerance,
            if r.pass { "pass" } else { "FAIL" }
        )
        .unwrap();
    }
    writeln!(
        s,
        "{}",
        if report.pass {
            "all identities hold"
        } else {
            "some identities FAILED"
        }
    )
    .unwrap();
    s
}
