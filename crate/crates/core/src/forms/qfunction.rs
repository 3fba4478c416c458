use std::fmt;

use serde::{Deserialize, Serialize};

use super::{MultiIndex, PointForm};
use crate::error::{DomainError, Result};
use crate::expr::{parse, Expr};
use crate::jet::Jet2;
use crate::quaternion::{basis_product, Quaternion};

/// Which side a quaternion factor acts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A quaternion-valued function `f = Σ f_k(x) e_k` with DSL components.
#[derive(Debug, Clone, PartialEq)]
pub struct QFunction {
    components: [Expr; 4],
    /// `(f0, f1)` when built by [`QFunction::special`].
    shape: Option<Box<(Expr, Expr)>>,
}

impl QFunction {
    pub fn new(components: [Expr; 4]) -> Self {
        QFunction {
            components,
            shape: None,
        }
    }

    pub fn parse(components: [&str; 4]) -> Result<Self> {
        let mut out = Vec::with_capacity(4);
        for c in components {
            out.push(parse(c)?);
        }
        Ok(Self::new(out.try_into().unwrap()))
    }

    /// `f = f1 e1 + Σ_{k=2..4} x_k f0 e_k`.
    pub fn special(f0: Expr, f1: Expr) -> Self {
        let imag = |k: usize| Expr::mul(Expr::var(k), f0.clone());
        QFunction {
            components: [f1.clone(), imag(2), imag(3), imag(4)],
            shape: Some(Box::new((f0, f1))),
        }
    }

    /// A real-valued function viewed as `g e1`.
    pub fn real(g: Expr) -> Self {
        Self::new([g, Expr::lit(0.0), Expr::lit(0.0), Expr::lit(0.0)])
    }

    pub fn constant(q: Quaternion) -> Self {
        Self::new(q.0.map(Expr::lit))
    }

    /// `f(x) = x`.
    pub fn identity() -> Self {
        Self::new([Expr::var(1), Expr::var(2), Expr::var(3), Expr::var(4)])
    }

    pub fn components(&self) -> &[Expr; 4] {
        &self.components
    }

    pub fn shape(&self) -> Option<(&Expr, &Expr)> {
        self.shape.as_deref().map(|(a, b)| (a, b))
    }

    pub fn eval(&self, p: [f64; 4]) -> Result<Quaternion, DomainError> {
        let mut q = Quaternion::ZERO;
        for (k, c) in self.components.iter().enumerate() {
            q.0[k] = c.eval_real(p)?;
        }
        Ok(q)
    }

    pub fn jets(&self, p: [f64; 4]) -> Result<[Jet2; 4], DomainError> {
        let mut out = [Jet2::constant(0.0); 4];
        for (k, c) in self.components.iter().enumerate() {
            out[k] = c.eval_jet(p)?;
        }
        Ok(out)
    }

    /// `[∂f/∂x1, .., ∂f/∂x4]` at `p`, where `∂f/∂x_i = Σ_j ∂f_j/∂x_i e_j`.
    pub fn partials(&self, p: [f64; 4]) -> Result<[Quaternion; 4], DomainError> {
        let jets = self.jets(p)?;
        Ok(std::array::from_fn(|i| {
            Quaternion(std::array::from_fn(|j| jets[j].grad[i]))
        }))
    }

    /// Componentwise symbolic partial derivative.
    pub fn diff(&self, axis: usize) -> Result<QFunction> {
        let mut out = Vec::with_capacity(4);
        for c in &self.components {
            out.push(c.diff(axis)?);
        }
        Ok(Self::new(out.try_into().unwrap()))
    }

    /// Pointwise quaternion product `self · other`, as expressions.
    pub fn product(&self, other: &QFunction) -> QFunction {
        let mut out: [Expr; 4] = std::array::from_fn(|_| Expr::lit(0.0));
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.components.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (sign, k) = basis_product(i + 1, j + 1);
                let term = Expr::mul(a.clone(), b.clone());
                let acc = std::mem::replace(&mut out[k - 1], Expr::lit(0.0));
                out[k - 1] = if sign > 0.0 {
                    Expr::add(acc, term)
                } else {
                    Expr::sub(acc, term)
                };
            }
        }
        Self::new(out)
    }

    pub fn sum(&self, other: &QFunction) -> QFunction {
        let c = std::array::from_fn(|k| {
            Expr::add(self.components[k].clone(), other.components[k].clone())
        });
        Self::new(c)
    }
}

impl fmt::Display for QFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) e{}", k + 1)?;
        }
        Ok(())
    }
}

/// `df = Σ_i ∂f/∂x_i dx^i` at `p`.
pub fn differential0(f: &QFunction, p: [f64; 4]) -> Result<PointForm, DomainError> {
    let partials = f.partials(p)?;
    let mut out = PointForm::zero(1);
    for (i, q) in partials.into_iter().enumerate() {
        out.add_term(MultiIndex::single(i + 1).unwrap(), q)
            .expect("degree-1 index");
    }
    Ok(out)
}

/// Left Fueter operator `Σ e_i ∂f/∂x_i` or right `Σ (∂f/∂x_i) e_i` at `p`.
pub fn fueter(side: Side, f: &QFunction, p: [f64; 4]) -> Result<Quaternion, DomainError> {
    let partials = f.partials(p)?;
    Ok(partials
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let e = Quaternion::basis(i + 1).unwrap();
            match side {
                Side::Left => e * d,
                Side::Right => d * e,
            }
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Quaternion {
        Quaternion::basis(i).unwrap()
    }

    const P: [f64; 4] = [0.3, -0.7, 1.1, 0.4];

    #[test]
    fn special_shape_components() {
        let f = QFunction::special(parse("2*x1").unwrap(), parse("x1^2").unwrap());
        let c = f.components();
        assert_eq!(c[0].to_string(), "x1^2");
        assert_eq!(c[1].to_string(), "x2*(2*x1)");
        assert_eq!(c[3].to_string(), "x4*(2*x1)");
        assert!(f.shape().is_some());
    }

    #[test]
    fn differential_examples() {
        let df = differential0(&QFunction::identity(), P).unwrap();
        for i in 1..=4 {
            assert_eq!(df.coefficient(&MultiIndex::single(i).unwrap()), e(i));
        }
        let df =
            differential0(&QFunction::constant(Quaternion::new(1.0, 2.0, 3.0, 4.0)), P).unwrap();
        assert_eq!(df.max_abs(), 0.0);
        let df = differential0(&QFunction::real(Expr::var(1)), P).unwrap();
        assert_eq!(df.coefficient(&MultiIndex::single(1).unwrap()), e(1));
        assert_eq!(
            df.coefficient(&MultiIndex::single(2).unwrap()),
            Quaternion::ZERO
        );
    }

    #[test]
    fn fueter_examples() {
        let id = QFunction::identity();
        assert_eq!(fueter(Side::Left, &id, P).unwrap(), Quaternion::real(-2.0));
        assert_eq!(fueter(Side::Right, &id, P).unwrap(), Quaternion::real(-2.0));
        let c = QFunction::constant(Quaternion::new(1.0, -1.0, 2.0, 0.5));
        assert_eq!(fueter(Side::Left, &c, P).unwrap(), Quaternion::ZERO);
        assert_eq!(
            fueter(Side::Left, &QFunction::real(Expr::var(1)), P).unwrap(),
            e(1)
        );
    }

    #[test]
    fn product_matches_pointwise_multiplication() {
        let f = QFunction::parse(["x1*x2", "sin(x3)", "x4^2", "1"]).unwrap();
        let g = QFunction::parse(["exp(x1)", "x2 - x3", "2", "cos(x4)"]).unwrap();
        let fg = f.product(&g).eval(P).unwrap();
        let expected = f.eval(P).unwrap() * g.eval(P).unwrap();
        assert!(fg.approx_eq(&expected, 1e-14));
    }
}
