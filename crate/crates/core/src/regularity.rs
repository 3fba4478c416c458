//! Algebraic regularity of special-shape functions
//! `f = f1 e1 + Σ_{k=2..4} x_k f0 e_k`, checked three ways: the first-order
//! PDE system, the two form equations built from `Dq`, `D0q`, `D1q`, and
//! limits of corrected difference quotients.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{DomainError, Result};
use crate::expr::{parse, Expr};
use crate::forms::{differential0, FormField, QFunction, Side, SpecialForm};
use crate::quaternion::Quaternion;

/// The pair `(f0, f1)` defining a special-shape function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialFunction {
    pub f0: Expr,
    pub f1: Expr,
}

impl SpecialFunction {
    pub fn new(f0: Expr, f1: Expr) -> Self {
        SpecialFunction { f0, f1 }
    }

    pub fn parse(f0: &str, f1: &str) -> Result<Self> {
        Ok(SpecialFunction::new(parse(f0)?, parse(f1)?))
    }

    /// The induced quaternion-valued function.
    pub fn qfunction(&self) -> QFunction {
        QFunction::special(self.f0.clone(), self.f1.clone())
    }

    pub fn eval(&self, x: [f64; 4]) -> Result<Quaternion, DomainError> {
        let f0 = self.f0.eval_real(x)?;
        let f1 = self.f1.eval_real(x)?;
        Ok(Quaternion([f1, x[1] * f0, x[2] * f0, x[3] * f0]))
    }

    /// `∂f/∂x1` at `c`.
    pub fn derivative_at(&self, c: [f64; 4]) -> Result<Quaternion, DomainError> {
        Ok(self.qfunction().partials(c)?[0])
    }
}

/// Pairs `(i, j)` with `2 <= i < j <= 4`, in the order used for the cross
/// residuals.
pub const PAIRS: [(usize, usize); 3] = [(2, 3), (2, 4), (3, 4)];

/// Residuals of the regularity PDE system at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PdeResiduals {
    /// `∂f1/∂x1 - (f0 + Σ_{k=2..4} x_k ∂f0/∂x_k)`.
    pub main: f64,
    /// `∂f1/∂x_i + x_i ∂f0/∂x1` for i = 2, 3, 4.
    pub axial: [f64; 3],
    /// `x_i ∂f0/∂x_j - x_j ∂f0/∂x_i` for (i, j) in [`PAIRS`].
    pub cross: [f64; 3],
}

impl PdeResiduals {
    pub fn max_abs(&self) -> f64 {
        std::iter::once(self.main)
            .chain(self.axial)
            .chain(self.cross)
            .fold(0.0, |m, r| m.max(r.abs()))
    }
}

pub fn pde_residuals(f: &SpecialFunction, c: [f64; 4]) -> Result<PdeResiduals, DomainError> {
    let g = f.f0.eval_jet(c)?;
    let h = f.f1.eval_jet(c)?;
    let main = h.grad[0] - (g.value + (1..4).map(|k| c[k] * g.grad[k]).sum::<f64>());
    let axial = std::array::from_fn(|n| {
        let i = n + 1;
        h.grad[i] + c[i] * g.grad[0]
    });
    let cross = PAIRS.map(|(i, j)| c[i - 1] * g.grad[j - 1] - c[j - 1] * g.grad[i - 1]);
    Ok(PdeResiduals { main, axial, cross })
}

/// Volume coefficients of `Dq∧df + 2 D0q∧df0 + 2 D1q∧df1` and
/// `df∧Dq + 2 df0∧D0q + 2 df1∧D1q` at `c`.
pub fn form_residuals(
    f: &SpecialFunction,
    c: [f64; 4],
) -> Result<(Quaternion, Quaternion), DomainError> {
    let dq = FormField::special(SpecialForm::Dq).eval(c)?;
    let d0q = FormField::special(SpecialForm::D0q).eval(c)?;
    let d1q = FormField::special(SpecialForm::D1q).eval(c)?;
    let df = differential0(&f.qfunction(), c)?;
    let df0 = differential0(&QFunction::real(f.f0.clone()), c)?;
    let df1 = differential0(&QFunction::real(f.f1.clone()), c)?;

    let left = dq
        .wedge(&df)
        .add(&d0q.wedge(&df0).scale(2.0))
        .add(&d1q.wedge(&df1).scale(2.0));
    let right = df
        .wedge(&dq)
        .add(&df0.wedge(&d0q).scale(2.0))
        .add(&df1.wedge(&d1q).scale(2.0));
    Ok((left.volume_coefficient(), right.volume_coefficient()))
}

/// One of the six pure quaternion-valued correction functions attached to a
/// base point `c`.
///
/// `index` is `9 - i - j` for the pair `2 <= i < j <= 4`. Every `f0`
/// evaluation freezes all coordinates at `c` except one, which is taken from
/// the argument `x`.
#[derive(Debug, Clone)]
pub struct Helper<'a> {
    f0: &'a Expr,
    c: [f64; 4],
    side: Side,
    i: usize,
    j: usize,
}

impl<'a> Helper<'a> {
    pub fn new(f: &'a SpecialFunction, c: [f64; 4], side: Side, index: usize) -> Result<Self> {
        let (i, j) = match index {
            4 => (2, 3),
            3 => (2, 4),
            2 => (3, 4),
            _ => {
                return Err(crate::Error::InvalidArgument(format!(
                    "helper index must be 2, 3 or 4, got {index}"
                )))
            }
        };
        Ok(Helper {
            f0: &f.f0,
            c,
            side,
            i,
            j,
        })
    }

    /// `f0` with coordinate `axis` taken from `x` and the rest from `c`.
    fn f0_along(&self, axis: usize, x: [f64; 4]) -> Result<f64, DomainError> {
        let mut p = self.c;
        p[axis - 1] = x[axis - 1];
        self.f0.eval_real(p)
    }

    pub fn eval(&self, x: [f64; 4]) -> Result<Quaternion, DomainError> {
        let (i, j) = (self.i, self.j);
        let k = 9 - i - j;
        let (ci, cj, ck) = (self.c[i - 1], self.c[j - 1], self.c[k - 1]);
        let sigma = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };

        let along_i = self.f0_along(i, x)?;
        let along_j = self.f0_along(j, x)?;
        let along_1 = self.f0_along(1, x)?;

        let mut q = Quaternion::ZERO;
        q[k - 1] = ci * along_i + cj * along_j;
        match self.side {
            Side::Left => {
                q[j - 1] = -(sigma * ci * along_1 + ck * along_j);
                q[i - 1] = sigma * cj * along_1 - ck * along_i;
            }
            Side::Right => {
                q[j - 1] = sigma * ci * along_1 - ck * along_j;
                q[i - 1] = -(sigma * cj * along_1 + ck * along_i);
            }
        }
        Ok(q)
    }
}

pub fn helper_function<'a>(
    f: &'a SpecialFunction,
    c: [f64; 4],
    side: Side,
    index: usize,
) -> Result<Helper<'a>> {
    Helper::new(f, c, side, index)
}

/// Sampling plan for difference-quotient limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitConfig {
    /// Step magnitudes, largest first.
    pub magnitudes: Vec<f64>,
    /// Random unit directions added to the eight signed basis directions.
    pub random_directions: usize,
    pub seed: u64,
    /// Relative spread allowed for the limit to count as existing.
    pub spread_tolerance: f64,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig {
            magnitudes: (0..=10).map(|k| 1e-2 * 0.5f64.powi(k)).collect(),
            random_directions: 16,
            seed: 2017,
            spread_tolerance: 1e-6,
        }
    }
}

/// `±e1, ±e2, ±e3, ±e4` followed by `count` seeded random unit quaternions.
pub fn limit_directions(count: usize, seed: u64) -> Vec<Quaternion> {
    let mut out = Vec::with_capacity(8 + count);
    for k in 1..=4 {
        let e = Quaternion::basis(k).unwrap();
        out.push(e);
        out.push(-e);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < 8 + count {
        let q = Quaternion(std::array::from_fn(|_| StandardNormal.sample(&mut rng)));
        if let Ok(u) = q.normalized() {
            out.push(u);
        }
    }
    out
}

/// Samples of the corrected difference quotient around one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitDiagnostics {
    pub side: Side,
    pub point: [f64; 4],
    pub directions: Vec<Quaternion>,
    pub magnitudes: Vec<f64>,
    /// `quotients[d][s]`: direction `d`, magnitude index `s`.
    pub quotients: Vec<Vec<Quaternion>>,
    /// Richardson estimate per direction from the two smallest magnitudes.
    pub extrapolated: Vec<Quaternion>,
    /// Mean of the extrapolated values.
    pub limit: Quaternion,
    /// Largest pairwise distance between the extrapolated values.
    pub spread: f64,
    /// Largest pairwise distance between raw quotients at each magnitude.
    pub stage_spread: Vec<f64>,
    pub exists: bool,
}

impl LimitDiagnostics {
    /// Largest distance from `reference` over directions, per magnitude.
    pub fn stage_errors(&self, reference: Quaternion) -> Vec<f64> {
        (0..self.magnitudes.len())
            .map(|s| {
                self.quotients
                    .iter()
                    .map(|row| row[s].distance(&reference))
                    .fold(0.0, f64::max)
            })
            .collect()
    }

    /// Ratio of the last two stage errors; about 0.5 for first-order convergence.
    pub fn halving_ratio(&self, reference: Quaternion) -> Option<f64> {
        let errs = self.stage_errors(reference);
        let n = errs.len();
        (n >= 2 && errs[n - 2] > 0.0).then(|| errs[n - 1] / errs[n - 2])
    }
}

fn max_pairwise_distance(values: &[Quaternion]) -> f64 {
    let mut worst = 0.0f64;
    for (a, p) in values.iter().enumerate() {
        for q in &values[a + 1..] {
            worst = worst.max(p.distance(q));
        }
    }
    worst
}

/// The corrected quotient for a single increment `dq`.
pub fn difference_quotient(
    f: &SpecialFunction,
    c: [f64; 4],
    side: Side,
    dq: Quaternion,
) -> Result<Quaternion> {
    let inv = dq.inverse()?;
    let shifted: [f64; 4] = std::array::from_fn(|k| c[k] + dq[k]);
    let mut num = f.eval(shifted)? - f.eval(c)?;
    for index in 2..=4 {
        let h = Helper::new(f, c, side, index)?;
        let t = dq[index - 1];
        let moved = c.map(|ck| ck + t);
        num += h.eval(moved)? - h.eval(c)?;
    }
    Ok(match side {
        Side::Left => inv * num,
        Side::Right => num * inv,
    })
}

pub fn dq_limit(
    f: &SpecialFunction,
    c: [f64; 4],
    side: Side,
    config: &LimitConfig,
) -> Result<LimitDiagnostics> {
    if config.magnitudes.len() < 2 {
        return Err(crate::Error::InvalidArgument(
            "at least two magnitudes are needed for extrapolation".into(),
        ));
    }
    let directions = limit_directions(config.random_directions, config.seed);
    let mut quotients = Vec::with_capacity(directions.len());
    for u in &directions {
        let row = config
            .magnitudes
            .iter()
            .map(|&t| difference_quotient(f, c, side, u.scale(t)))
            .collect::<Result<Vec<_>>>()?;
        quotients.push(row);
    }

    let n = config.magnitudes.len();
    let (coarse, fine) = (config.magnitudes[n - 2], config.magnitudes[n - 1]);
    let ratio = fine / coarse;
    // first-order Richardson: Q(t) ≈ L + a t
    let extrapolated: Vec<Quaternion> = quotients
        .iter()
        .map(|row| (row[n - 1] - row[n - 2].scale(ratio)).scale(1.0 / (1.0 - ratio)))
        .collect();
    let limit = extrapolated
        .iter()
        .copied()
        .sum::<Quaternion>()
        .scale(1.0 / extrapolated.len() as f64);
    let spread = max_pairwise_distance(&extrapolated);
    let stage_spread = (0..n)
        .map(|s| max_pairwise_distance(&quotients.iter().map(|row| row[s]).collect::<Vec<_>>()))
        .collect();
    let exists = spread <= config.spread_tolerance * (1.0 + limit.norm());

    Ok(LimitDiagnostics {
        side,
        point: c,
        directions,
        magnitudes: config.magnitudes.clone(),
        quotients,
        extrapolated,
        limit,
        spread,
        stage_spread,
        exists,
    })
}

/// `∂f/∂x1` as a special-shape function: `(∂f0/∂x1, ∂f1/∂x1)`.
pub fn quaternion_derivative(f: &SpecialFunction) -> SpecialFunction {
    SpecialFunction {
        f0: f.f0.diff(1).expect("axis 1"),
        f1: f.f1.diff(1).expect("axis 1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(f0: &str, f1: &str) -> SpecialFunction {
        SpecialFunction::parse(f0, f1).unwrap()
    }

    fn square() -> SpecialFunction {
        sf("2*x1", "x1^2 - x2^2 - x3^2 - x4^2")
    }

    const C: [f64; 4] = [0.4, -0.3, 0.8, 0.25];

    #[test]
    fn square_matches_quaternion_square() {
        let f = square();
        let q = Quaternion(C);
        assert!(f.eval(C).unwrap().approx_eq(&(q * q), 1e-15));
    }

    #[test]
    fn pde_examples() {
        for c in [C, [1.0, 2.0, -3.0, 0.5], [0.0; 4]] {
            assert_eq!(pde_residuals(&square(), c).unwrap().max_abs(), 0.0);
            assert_eq!(pde_residuals(&sf("1", "x1"), c).unwrap().max_abs(), 0.0);
        }
        let r = pde_residuals(&sf("x2", "0"), [0.0, 0.0, 1.0, 0.0]).unwrap();
        assert_eq!(r.cross[0], -1.0);
    }

    #[test]
    fn form_examples() {
        let (l, r) = form_residuals(&square(), C).unwrap();
        assert!(l.max_abs() < 1e-14 && r.max_abs() < 1e-14, "{l} {r}");
        let (l, r) = form_residuals(&sf("0", "5"), C).unwrap();
        assert_eq!((l, r), (Quaternion::ZERO, Quaternion::ZERO));
        let (l, r) = form_residuals(&sf("x2", "0"), [0.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(l.norm() > 0.1 && r.norm() > 0.1);
    }

    #[test]
    fn helper_examples() {
        let zero_f0 = sf("0", "x1^3");
        let f = square();
        for side in [Side::Left, Side::Right] {
            for index in 2..=4 {
                let h = Helper::new(&zero_f0, C, side, index).unwrap();
                assert_eq!(h.eval([0.1, 0.2, 0.3, 0.4]).unwrap(), Quaternion::ZERO);
                let h = Helper::new(&f, [0.0; 4], side, index).unwrap();
                assert_eq!(h.eval([0.1, 0.2, 0.3, 0.4]).unwrap(), Quaternion::ZERO);
                let h = Helper::new(&f, C, side, index).unwrap();
                assert_eq!(h.eval([0.7, -0.2, 0.3, 1.4]).unwrap()[0], 0.0);
            }
        }
        let h = Helper::new(&f, C, Side::Left, 4).unwrap();
        let expected = (C[1] + C[2]) * 2.0 * C[0];
        assert!((h.eval(C).unwrap()[3] - expected).abs() < 1e-15);
        assert!(Helper::new(&f, C, Side::Left, 1).is_err());
    }

    #[test]
    fn derivative_examples() {
        let d = quaternion_derivative(&square());
        assert_eq!(
            (d.f0.to_string(), d.f1.to_string()),
            ("2".into(), "2*x1".into())
        );
        let d = quaternion_derivative(&sf("0", "5"));
        assert_eq!(
            (d.f0.to_string(), d.f1.to_string()),
            ("0".into(), "0".into())
        );
        let d = quaternion_derivative(&sf("1", "x1"));
        assert_eq!(
            (d.f0.to_string(), d.f1.to_string()),
            ("0".into(), "1".into())
        );
    }

    #[test]
    fn limits_for_constant_and_square() {
        let cfg = LimitConfig::default();
        for side in [Side::Left, Side::Right] {
            let d = dq_limit(&sf("0", "5"), C, side, &cfg).unwrap();
            assert!(d.exists);
            assert_eq!(d.limit, Quaternion::ZERO);

            let d = dq_limit(&square(), C, side, &cfg).unwrap();
            assert!(d.exists, "spread {}", d.spread);
            assert!(d.limit.approx_eq(&Quaternion(C).scale(2.0), 1e-9));
        }
    }

    #[test]
    fn limit_fails_off_regular_point() {
        let cfg = LimitConfig::default();
        for side in [Side::Left, Side::Right] {
            let d = dq_limit(&sf("x2", "0"), [0.0, 0.0, 1.0, 0.0], side, &cfg).unwrap();
            assert!(!d.exists);
            assert!(d.stage_spread.iter().all(|&s| s > 0.1));
        }
    }

    #[test]
    fn directions_are_unit_and_seeded() {
        let a = limit_directions(16, 7);
        assert_eq!(a.len(), 24);
        assert!(a.iter().all(|u| (u.norm() - 1.0).abs() < 1e-15));
        assert_eq!(a, limit_directions(16, 7));
        assert_ne!(a, limit_directions(16, 8));
    }
}
