use std::fmt;
use std::path::{Path, PathBuf};

use quatreg_core::{parse, Mode, SpecialFunction, Tolerances};
use serde::Deserialize;

/// Per-axis grid: `count[k]` evenly spaced values from `min[k]` to `max[k]`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub min: [f64; 4],
    pub max: [f64; 4],
    pub count: [usize; 4],
}

impl Grid {
    /// Points in row-major order, `x1` varying slowest.
    pub fn points(&self) -> Vec<[f64; 4]> {
        let axis = |k: usize| -> Vec<f64> {
            let n = self.count[k];
            if n == 1 {
                return vec![self.min[k]];
            }
            let step = (self.max[k] - self.min[k]) / (n - 1) as f64;
            (0..n).map(|i| self.min[k] + step * i as f64).collect()
        };
        let axes: Vec<Vec<f64>> = (0..4).map(axis).collect();
        let mut out = Vec::new();
        for &a in &axes[0] {
            for &b in &axes[1] {
                for &c in &axes[2] {
                    for &d in &axes[3] {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    f0: String,
    f1: String,
    #[serde(default)]
    points: Vec<[f64; 4]>,
    grid: Option<Grid>,
    #[serde(default)]
    mode: Option<Mode>,
    #[serde(default)]
    tolerances: Option<Tolerances>,
    seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct Job {
    pub f0: String,
    pub f1: String,
    pub function: SpecialFunction,
    pub points: Vec<[f64; 4]>,
    pub mode: Mode,
    pub tolerances: Tolerances,
    pub seed: Option<u64>,
}

/// A job file that could not be used; maps to exit code 2.
#[derive(Debug)]
pub struct JobError {
    pub path: PathBuf,
    pub message: String,
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path.display(), self.message)
    }
}

impl std::error::Error for JobError {}

fn expression_error(field: &str, text: &str, err: &quatreg_core::ParseError) -> String {
    format!(
        "field '{field}': {err}\n    {text}\n    {caret:>width$}",
        caret = "^",
        width = err.offset + 1
    )
}

impl Job {
    pub fn load(path: &Path) -> Result<Job, JobError> {
        let fail = |message: String| JobError {
            path: path.to_path_buf(),
            message,
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| fail(format!("cannot read job file: {e}")))?;
        Job::from_str(&text).map_err(fail)
    }

    pub fn from_str(text: &str) -> Result<Job, String> {
        let raw: RawJob = serde_json::from_str(text)
            .map_err(|e| format!("line {} column {}: {e}", e.line(), e.column()))?;
        let f0 = parse(&raw.f0).map_err(|e| expression_error("f0", &raw.f0, &e))?;
        let f1 = parse(&raw.f1).map_err(|e| expression_error("f1", &raw.f1, &e))?;

        let mut points = raw.points;
        if let Some(grid) = &raw.grid {
            if let Some(k) = grid.count.iter().position(|&n| n == 0) {
                return Err(format!("grid.count[{k}] must be at least 1"));
            }
            points.extend(grid.points());
        }
        if points.is_empty() {
            return Err("job needs at least one point (\"points\" or \"grid\")".into());
        }
        if let Some(p) = points.iter().find(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(format!("point {p:?} has a non-finite coordinate"));
        }
        Ok(Job {
            f0: raw.f0,
            f1: raw.f1,
            function: SpecialFunction::new(f0, f1),
            points,
            mode: raw.mode.unwrap_or(Mode::All),
            tolerances: raw.tolerances.unwrap_or_default(),
            seed: raw.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_order_and_spacing() {
        let g = Grid {
            min: [0.5, -1.0, -1.0, -1.0],
            max: [0.5, 1.0, 1.0, 1.0],
            count: [1, 5, 5, 5],
        };
        let pts = g.points();
        assert_eq!(pts.len(), 125);
        assert_eq!(pts[0], [0.5, -1.0, -1.0, -1.0]);
        assert_eq!(pts[1], [0.5, -1.0, -1.0, -0.5]);
        assert_eq!(pts[124], [0.5, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn parses_minimal_job() {
        let job =
            Job::from_str(r#"{"f0": "x2", "f1": "0", "points": [[0, 0, 1, 0]], "mode": "pde"}"#)
                .unwrap();
        assert_eq!(job.mode, Mode::Pde);
        assert_eq!(job.points, vec![[0.0, 0.0, 1.0, 0.0]]);
        assert_eq!(job.tolerances, Tolerances::default());
    }

    #[test]
    fn partial_tolerances_keep_defaults() {
        let job = Job::from_str(
            r#"{"f0": "1", "f1": "x1", "points": [[0,0,0,0]], "tolerances": {"pde": 1e-6}}"#,
        )
        .unwrap();
        assert_eq!(job.tolerances.pde, 1e-6);
        assert_eq!(job.tolerances.forms, Tolerances::default().forms);
    }

    #[test]
    fn rejects_bad_input() {
        let err = Job::from_str(r#"{"f0": "x1+", "f1": "0", "points": [[0,0,0,0]]}"#).unwrap_err();
        assert!(
            err.contains("field 'f0'") && err.contains("offset 3"),
            "{err}"
        );
        let err = Job::from_str(r#"{"f0": "1", "f1": "0"}"#).unwrap_err();
        assert!(err.contains("at least one point"));
        let err = Job::from_str(r#"{"f0": "1", "f1": "0", "grid": {"min": [0,0,0,0], "max": [1,1,1,1], "count": [1,0,1,1]}}"#).unwrap_err();
        assert!(err.contains("grid.count[1]"));
        let err = Job::from_str("{\"f0\": \"1\",\n \"f1\": }").unwrap_err();
        assert!(err.starts_with("line 2"), "{err}");
        assert!(
            Job::from_str(r#"{"f0": "1", "f1": "0", "points": [[0,0,0,0]], "mode": "both"}"#)
                .is_err()
        );
    }
}
