//! Per-point regularity reports combining the three characterizations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::forms::Side;
use crate::quaternion::Quaternion;
use crate::regularity::{
    dq_limit, form_residuals, pde_residuals, LimitConfig, PdeResiduals, SpecialFunction,
};

/// Which characterizations to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Pde,
    Forms,
    DqLeft,
    DqRight,
    All,
}

impl Mode {
    fn pde(self) -> bool {
        matches!(self, Mode::Pde | Mode::All)
    }

    fn forms(self) -> bool {
        matches!(self, Mode::Forms | Mode::All)
    }

    fn sides(self) -> &'static [Side] {
        match self {
            Mode::DqLeft => &[Side::Left],
            Mode::DqRight => &[Side::Right],
            Mode::All => &[Side::Left, Side::Right],
            Mode::Pde | Mode::Forms => &[],
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "pde" => Mode::Pde,
            "forms" => Mode::Forms,
            "dq-left" => Mode::DqLeft,
            "dq-right" => Mode::DqRight,
            "all" => Mode::All,
            other => {
                return Err(format!(
                    "unknown mode '{other}' (expected pde, forms, dq-left, dq-right or all)"
                ))
            }
        })
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Pde => "pde",
            Mode::Forms => "forms",
            Mode::DqLeft => "dq-left",
            Mode::DqRight => "dq-right",
            Mode::All => "all",
        })
    }
}

/// Absolute tolerances for each verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub pde: f64,
    pub forms: f64,
    /// Relative cross-direction spread allowed for a limit to exist.
    pub limit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            pde: 1e-9,
            forms: 1e-8,
            limit: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Regular,
    NonRegular,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Regular => "regular",
            Verdict::NonRegular => "non-regular",
            Verdict::Error => "error",
        })
    }
}

/// Condensed difference-quotient result for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitSummary {
    pub side: Side,
    pub limit: Quaternion,
    pub spread: f64,
    pub exists: bool,
    /// `∂f/∂x1` at the point.
    pub derivative: Quaternion,
    pub limit_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub point: [f64; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pde: Option<PdeResiduals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form_left: Option<Quaternion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form_right: Option<Quaternion>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub limits: Vec<LimitSummary>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ResidualReport {
    fn failed(point: [f64; 4], err: impl fmt::Display) -> Self {
        ResidualReport {
            point,
            pde: None,
            form_left: None,
            form_right: None,
            limits: Vec::new(),
            verdict: Verdict::Error,
            error: Some(err.to_string()),
        }
    }

    /// Largest residual that enters the verdict, for tabular output.
    pub fn max_pde(&self) -> Option<f64> {
        self.pde.map(|r| r.max_abs())
    }

    pub fn max_form(&self) -> Option<f64> {
        match (self.form_left, self.form_right) {
            (Some(l), Some(r)) => Some(l.norm().max(r.norm())),
            _ => None,
        }
    }
}

/// Evaluates the characterizations selected by `mode` at `c`.
///
/// Domain errors are captured in the report instead of being returned.
pub fn check_point(
    f: &SpecialFunction,
    c: [f64; 4],
    mode: Mode,
    tol: &Tolerances,
    limits: &LimitConfig,
) -> ResidualReport {
    let mut report = ResidualReport {
        point: c,
        pde: None,
        form_left: None,
        form_right: None,
        limits: Vec::new(),
        verdict: Verdict::Regular,
        error: None,
    };
    let mut regular = true;

    if mode.pde() {
        match pde_residuals(f, c) {
            Ok(r) => {
                regular &= r.max_abs() <= tol.pde;
                report.pde = Some(r);
            }
            Err(e) => return ResidualReport::failed(c, e),
        }
    }
    if mode.forms() {
        match form_residuals(f, c) {
            Ok((l, r)) => {
                regular &= l.norm() <= tol.forms && r.norm() <= tol.forms;
                report.form_left = Some(l);
                report.form_right = Some(r);
            }
            Err(e) => return ResidualReport::failed(c, e),
        }
    }
    if !mode.sides().is_empty() {
        let derivative = match f.derivative_at(c) {
            Ok(d) => d,
            Err(e) => return ResidualReport::failed(c, e),
        };
        let config = LimitConfig {
            spread_tolerance: tol.limit,
            ..limits.clone()
        };
        for &side in mode.sides() {
            match dq_limit(f, c, side, &config) {
                Ok(d) => {
                    regular &= d.exists;
                    report.limits.push(LimitSummary {
                        side,
                        limit: d.limit,
                        spread: d.spread,
                        exists: d.exists,
                        derivative,
                        limit_error: d.limit.distance(&derivative),
                    });
                }
                Err(e) => return ResidualReport::failed(c, e),
            }
        }
    }
    report.verdict = if regular {
        Verdict::Regular
    } else {
        Verdict::NonRegular
    };
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        let tol = Tolerances::default();
        let cfg = LimitConfig::default();
        let sq = SpecialFunction::parse("2*x1", "x1^2 - x2^2 - x3^2 - x4^2").unwrap();
        let r = check_point(&sq, [0.5, 0.5, -0.5, 1.0], Mode::All, &tol, &cfg);
        assert_eq!(r.verdict, Verdict::Regular);
        assert_eq!(r.limits.len(), 2);

        let bad = SpecialFunction::parse("x2", "0").unwrap();
        let r = check_point(&bad, [0.0, 0.0, 1.0, 0.0], Mode::Pde, &tol, &cfg);
        assert_eq!(r.verdict, Verdict::NonRegular);
        assert!(r.form_left.is_none());
    }

    #[test]
    fn domain_errors_are_captured() {
        let f = SpecialFunction::parse("log(x1)", "0").unwrap();
        let r = check_point(
            &f,
            [0.0, 1.0, 1.0, 1.0],
            Mode::Pde,
            &Tolerances::default(),
            &LimitConfig::default(),
        );
        assert_eq!(r.verdict, Verdict::Error);
        assert!(r.error.unwrap().contains("log"));
    }

    #[test]
    fn mode_names_round_trip() {
        for m in [
            Mode::Pde,
            Mode::Forms,
            Mode::DqLeft,
            Mode::DqRight,
            Mode::All,
        ] {
            assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
        }
        assert!("both".parse::<Mode>().is_err());
    }
}
