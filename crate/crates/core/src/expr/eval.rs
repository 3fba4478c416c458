use std::ops::{Add, Mul, Neg, Sub};

use super::{BinOp, Expr, ExprKind, Func};
use crate::error::DomainError;
use crate::jet::Jet2;

/// Number types an expression can be evaluated over.
trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(v: f64) -> Self;
    fn variable(point: [f64; 4], axis: u8) -> Self;
    fn div(self, rhs: Self) -> Result<Self, DomainError>;
    fn powi(self, n: i32) -> Result<Self, DomainError>;
    fn call(self, f: Func) -> Result<Self, DomainError>;
}

impl Scalar for f64 {
    fn constant(v: f64) -> Self {
        v
    }

    fn variable(point: [f64; 4], axis: u8) -> Self {
        point[axis as usize - 1]
    }

    fn div(self, rhs: Self) -> Result<Self, DomainError> {
        if rhs == 0.0 {
            return Err(DomainError::new("division", rhs));
        }
        Ok(self / rhs)
    }

    fn powi(self, n: i32) -> Result<Self, DomainError> {
        if n < 0 && self == 0.0 {
            return Err(DomainError::new("division", self));
        }
        Ok(f64::powi(self, n))
    }

    fn call(self, f: Func) -> Result<Self, DomainError> {
        Ok(match f {
            Func::Sin => self.sin(),
            Func::Cos => self.cos(),
            Func::Exp => self.exp(),
            Func::Log if self > 0.0 => self.ln(),
            Func::Sqrt if self >= 0.0 => self.sqrt(),
            Func::Log | Func::Sqrt => return Err(DomainError::new(f.name(), self)),
        })
    }
}

impl Scalar for Jet2 {
    fn constant(v: f64) -> Self {
        Jet2::constant(v)
    }

    fn variable(point: [f64; 4], axis: u8) -> Self {
        Jet2::seed(point, axis as usize).expect("parser admits only x1..x4")
    }

    fn div(self, rhs: Self) -> Result<Self, DomainError> {
        self.checked_div(&rhs)
    }

    fn powi(self, n: i32) -> Result<Self, DomainError> {
        Jet2::powi(&self, n)
    }

    fn call(self, f: Func) -> Result<Self, DomainError> {
        match f {
            Func::Sin => Ok(self.sin()),
            Func::Cos => Ok(self.cos()),
            Func::Exp => Ok(self.exp()),
            Func::Log => self.ln(),
            Func::Sqrt => self.sqrt(),
        }
    }
}

fn eval<S: Scalar>(e: &Expr, p: [f64; 4]) -> Result<S, DomainError> {
    let out = match &e.kind {
        ExprKind::Literal(v) => S::constant(*v),
        ExprKind::Var(i) => S::variable(p, *i),
        ExprKind::Neg(a) => -eval::<S>(a, p)?,
        ExprKind::Binary(op, a, b) => {
            let (a, b) = (eval::<S>(a, p)?, eval::<S>(b, p)?);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => a.div(b).map_err(|err| err.at(e.offset))?,
            }
        }
        ExprKind::Pow(a, n) => eval::<S>(a, p)?.powi(*n).map_err(|err| err.at(e.offset))?,
        ExprKind::Call(f, a) => eval::<S>(a, p)?.call(*f).map_err(|err| err.at(e.offset))?,
    };
    Ok(out)
}

impl Expr {
    /// Evaluates at `p = (x1, x2, x3, x4)`.
    pub fn eval_real(&self, p: [f64; 4]) -> Result<f64, DomainError> {
        eval::<f64>(self, p)
    }

    /// Value, gradient and Hessian at `p`.
    pub fn eval_jet(&self, p: [f64; 4]) -> Result<Jet2, DomainError> {
        eval::<Jet2>(self, p)
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::parse;

    #[test]
    fn real_values() {
        let p = [2.0, 3.0, 0.0, 0.0];
        assert_eq!(parse("x1*x2").unwrap().eval_real(p).unwrap(), 6.0);
        for q in [[0.0; 4], [-1.5, 2.0, 3.0, 4.0]] {
            assert_eq!(parse("x1^0").unwrap().eval_real(q).unwrap(), 1.0);
        }
        let err = parse("1 + log(x1)")
            .unwrap()
            .eval_real([0.0; 4])
            .unwrap_err();
        assert_eq!(err.op, "log");
        assert_eq!(err.offset, Some(4));
        let err = parse("x2 / x1")
            .unwrap()
            .eval_real([0.0, 1.0, 0.0, 0.0])
            .unwrap_err();
        assert_eq!((err.op, err.offset), ("division", Some(3)));
    }

    #[test]
    fn jet_values() {
        let j = parse("x1*x2")
            .unwrap()
            .eval_jet([2.0, 3.0, 0.0, 0.0])
            .unwrap();
        assert_eq!(j.value, 6.0);
        assert_eq!(j.grad, [3.0, 2.0, 0.0, 0.0]);
        let j = parse("7").unwrap().eval_jet([1.0; 4]).unwrap();
        assert_eq!(j.grad, [0.0; 4]);
        let j = parse("x2^2")
            .unwrap()
            .eval_jet([0.0, 5.0, 0.0, 0.0])
            .unwrap();
        assert_eq!(j.grad, [0.0, 10.0, 0.0, 0.0]);
        assert_eq!(j.hess[1][1], 2.0);
    }

    #[test]
    fn jet_and_real_agree_on_domain_edges() {
        let e = parse("sqrt(x1)").unwrap();
        assert_eq!(e.eval_real([0.0; 4]).unwrap(), 0.0);
        assert!(e.eval_jet([0.0; 4]).is_err());
    }
}
