//! Randomized verification of the exterior-calculus identities and the
//! regularity equivalence on seeded samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::Tolerances;
use crate::corpus;
use crate::error::DomainError;
use crate::forms::{differential0, fueter, FormField, PointForm, QFunction, Side, SpecialForm};
use crate::quaternion::Quaternion;
use crate::regularity::{form_residuals, pde_residuals};
use crate::sample;

/// Depth of random coefficient expressions.
const DEPTH: u32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub name: String,
    pub statement: String,
    pub cases: usize,
    pub max_violation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub samples: usize,
    pub results: Vec<IdentityResult>,
    pub pass: bool,
}

/// Coefficientwise difference scaled by the larger side, floored at 1.
pub fn violation(a: &PointForm, b: &PointForm) -> f64 {
    a.max_diff(b) / 1f64.max(a.max_abs()).max(b.max_abs())
}

fn qviolation(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).max_abs() / 1f64.max(a.max_abs()).max(b.max_abs())
}

type Case = fn(&mut ChaCha8Rng) -> Result<f64, DomainError>;

struct Identity {
    name: &'static str,
    statement: &'static str,
    tolerance: f64,
    /// Whether `--tol` may replace `tolerance`.
    overridable: bool,
    case: Case,
}

fn graded_commutativity(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let m = rng.gen_range(0..=4);
    let n = rng.gen_range(0..=4 - m);
    let real_left = rng.gen_bool(0.5);
    let a = sample::point_form(rng, m, real_left);
    let b = sample::point_form(rng, n, !real_left);
    let sign = if (m * n) % 2 == 0 { 1.0 } else { -1.0 };
    Ok(violation(&a.wedge(&b), &b.wedge(&a).scale(sign)))
}

fn sum_rule(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let (f, g) = (sample::qfunction(rng, DEPTH), sample::qfunction(rng, DEPTH));
    let p = sample::point(rng);
    let lhs = differential0(&f.sum(&g), p)?;
    let rhs = differential0(&f, p)?.add(&differential0(&g, p)?);
    Ok(violation(&lhs, &rhs))
}

fn product_rule(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let (f, g) = (sample::qfunction(rng, DEPTH), sample::qfunction(rng, DEPTH));
    let p = sample::point(rng);
    let lhs = differential0(&f.product(&g), p)?;
    let fp = PointForm::scalar(f.eval(p)?);
    let gp = PointForm::scalar(g.eval(p)?);
    let rhs = fp
        .wedge(&differential0(&g, p)?)
        .add(&differential0(&f, p)?.wedge(&gp));
    Ok(violation(&lhs, &rhs))
}

fn constant_factor(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let f = sample::qfunction(rng, DEPTH);
    let q = sample::quaternion(rng);
    let p = sample::point(rng);
    let cq = QFunction::constant(q);
    let df = differential0(&f, p)?;
    let left = violation(&differential0(&cq.product(&f), p)?, &df.left_mul(q));
    let right = violation(&differential0(&f.product(&cq), p)?, &df.right_mul(q));
    Ok(left.max(right))
}

fn d_linearity(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let m = rng.gen_range(0..=3);
    let a = sample::form_field(rng, m, DEPTH);
    let b = sample::form_field(rng, m, DEPTH);
    let q = sample::quaternion(rng);
    let p = sample::point(rng);
    let (da, db) = (a.exterior_d(p)?, b.exterior_d(p)?);
    let sum = violation(&a.sum(&b).exterior_d(p)?, &da.add(&db));
    let left = violation(&a.left_mul(q).exterior_d(p)?, &da.left_mul(q));
    let right = violation(&a.right_mul(q).exterior_d(p)?, &da.right_mul(q));
    Ok(sum.max(left).max(right))
}

fn graded_leibniz(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let m = rng.gen_range(0..=2);
    let n = rng.gen_range(0..=3 - m);
    let a = sample::form_field(rng, m, DEPTH);
    let b = sample::form_field(rng, n, DEPTH);
    let p = sample::point(rng);
    let lhs = a.wedge(&b).exterior_d(p)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = a
        .exterior_d(p)?
        .wedge(&b.eval(p)?)
        .add(&a.eval(p)?.wedge(&b.exterior_d(p)?).scale(sign));
    Ok(violation(&lhs, &rhs))
}

fn d_squared(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let m = rng.gen_range(0..=2);
    let a = sample::form_field(rng, m, DEPTH);
    let p = sample::point(rng);
    let da = a.d();
    let dda = da.exterior_d(p)?;
    Ok(dda.max_abs() / 1f64.max(da.eval(p)?.max_abs()))
}

fn wedge_special(
    kind: SpecialForm,
    df: &PointForm,
    p: [f64; 4],
) -> Result<(Quaternion, Quaternion), DomainError> {
    let form = FormField::special(kind).eval(p)?;
    Ok((
        form.wedge(df).volume_coefficient(),
        df.wedge(&form).volume_coefficient(),
    ))
}

fn fueter_left(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let f = sample::qfunction(rng, DEPTH);
    let p = sample::point(rng);
    let (lhs, _) = wedge_special(SpecialForm::Dq, &differential0(&f, p)?, p)?;
    Ok(qviolation(lhs, -fueter(Side::Left, &f, p)?))
}

fn fueter_right(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let f = sample::qfunction(rng, DEPTH);
    let p = sample::point(rng);
    let (_, lhs) = wedge_special(SpecialForm::Dq, &differential0(&f, p)?, p)?;
    Ok(qviolation(lhs, fueter(Side::Right, &f, p)?))
}

fn fueter_anchor(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let p = sample::point(rng);
    let (lhs, _) = wedge_special(
        SpecialForm::Dq,
        &differential0(&QFunction::identity(), p)?,
        p,
    )?;
    Ok(qviolation(lhs, Quaternion::real(2.0)))
}

fn d0q_identity(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let f = sample::qfunction(rng, DEPTH);
    let p = sample::point(rng);
    let [d1, d2, d3, d4] = f.partials(p)?;
    let [_, x2, x3, x4] = p;
    let expected = d1.scale(-(x2 + x3 + x4)) + d2.scale(x2) + d3.scale(x3) + d4.scale(x4);
    let (a, b) = wedge_special(SpecialForm::D0q, &differential0(&f, p)?, p)?;
    Ok(qviolation(a, expected).max(qviolation(-b, expected)))
}

fn d1q_identity(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let f = sample::qfunction(rng, DEPTH);
    let p = sample::point(rng);
    let expected = -f.partials(p)?.into_iter().sum::<Quaternion>();
    let (a, b) = wedge_special(SpecialForm::D1q, &differential0(&f, p)?, p)?;
    Ok(qviolation(a, expected).max(qviolation(-b, expected)))
}

/// 1 when the PDE and form verdicts disagree at a random corpus point.
fn equivalence(rng: &mut ChaCha8Rng) -> Result<f64, DomainError> {
    let tol = Tolerances::default();
    let mut entries = corpus::regular();
    entries.extend(corpus::non_regular());
    let f = &entries[rng.gen_range(0..entries.len())].function;
    let p = sample::point(rng);
    let pde_ok = pde_residuals(f, p)?.max_abs() <= tol.pde;
    let (l, r) = form_residuals(f, p)?;
    let forms_ok = l.norm() <= tol.forms && r.norm() <= tol.forms;
    Ok(if pde_ok == forms_ok { 0.0 } else { 1.0 })
}

const IDENTITIES: [Identity; 13] = [
    Identity {
        name: "graded_commutativity",
        statement: "α∧β = (-1)^(mn) β∧α, one factor real",
        tolerance: 1e-12,
        overridable: true,
        case: graded_commutativity,
    },
    Identity {
        name: "sum_rule",
        statement: "d(f+g) = df + dg",
        tolerance: 1e-9,
        overridable: true,
        case: sum_rule,
    },
    Identity {
        name: "product_rule",
        statement: "d(fg) = f∧dg + df∧g",
        tolerance: 1e-9,
        overridable: true,
        case: product_rule,
    },
    Identity {
        name: "constant_factor",
        statement: "d(qf) = q df, d(fq) = (df) q",
        tolerance: 1e-9,
        overridable: true,
        case: constant_factor,
    },
    Identity {
        name: "d_linearity",
        statement: "d(α+β) = dα + dβ, d(qα) = q dα, d(αq) = (dα) q",
        tolerance: 1e-9,
        overridable: true,
        case: d_linearity,
    },
    Identity {
        name: "graded_leibniz",
        statement: "d(α∧β) = dα∧β + (-1)^m α∧dβ",
        tolerance: 1e-8,
        overridable: true,
        case: graded_leibniz,
    },
    Identity {
        name: "d_squared",
        statement: "d(dα) = 0",
        tolerance: 1e-8,
        overridable: true,
        case: d_squared,
    },
    Identity {
        name: "fueter_left",
        statement: "Dq∧df = -D_l(f) v",
        tolerance: 1e-9,
        overridable: true,
        case: fueter_left,
    },
    Identity {
        name: "fueter_right",
        statement: "df∧Dq = D_r(f) v",
        tolerance: 1e-9,
        overridable: true,
        case: fueter_right,
    },
    Identity {
        name: "fueter_anchor",
        statement: "Dq∧d(x) = 2 e1 v",
        tolerance: 1e-12,
        overridable: true,
        case: fueter_anchor,
    },
    Identity {
        name: "d0q_wedge",
        statement: "D0q∧df = -df∧D0q = (-(x2+x3+x4)∂1f + x2∂2f + x3∂3f + x4∂4f) v",
        tolerance: 1e-9,
        overridable: true,
        case: d0q_identity,
    },
    Identity {
        name: "d1q_wedge",
        statement: "D1q∧df = -df∧D1q = -(∂1f + ∂2f + ∂3f + ∂4f) v",
        tolerance: 1e-9,
        overridable: true,
        case: d1q_identity,
    },
    Identity {
        name: "regularity_equivalence",
        statement: "PDE verdict = form-equation verdict on the corpus",
        tolerance: 0.0,
        overridable: false,
        case: equivalence,
    },
];

/// Runs every identity on `samples` seeded cases.
///
/// Each identity draws from its own ChaCha stream, so results for one
/// identity do not depend on the others.
pub fn run(seed: u64, samples: usize, tolerance: Option<f64>) -> IdentityReport {
    let results: Vec<IdentityResult> = IDENTITIES
        .iter()
        .enumerate()
        .map(|(k, id)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let max_violation = (0..samples)
                .map(|_| (id.case)(&mut rng).unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max);
            let tolerance = match tolerance {
                Some(t) if id.overridable => t,
                _ => id.tolerance,
            };
            IdentityResult {
                name: id.name.to_string(),
                statement: id.statement.to_string(),
                cases: samples,
                max_violation,
                tolerance,
                pass: max_violation <= tolerance,
            }
        })
        .collect();
    let pass = results.iter().all(|r| r.pass);
    IdentityReport {
        seed,
        samples,
        results,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let report = run(11, 10, None);
        for r in &report.results {
            assert!(r.pass, "{} violated: {}", r.name, r.max_violation);
        }
        assert!(report.pass);
    }

    #[test]
    fn zero_samples_is_vacuous() {
        let report = run(0, 0, None);
        assert!(report.pass);
        assert!(report
            .results
            .iter()
            .all(|r| r.cases == 0 && r.max_violation == 0.0));
    }

    #[test]
    fn deterministic() {
        assert_eq!(run(5, 3, None), run(5, 3, None));
    }
}
