use super::{BinOp, Expr, ExprKind, Func};
use crate::error::{Error, Result};

impl Expr {
    /// Symbolic partial derivative with respect to `x_axis` (1-based).
    pub fn diff(&self, axis: usize) -> Result<Expr> {
        if !(1..=4).contains(&axis) {
            return Err(Error::AxisOutOfRange(axis));
        }
        Ok(self.partial(axis as u8))
    }

    fn partial(&self, axis: u8) -> Expr {
        match &self.kind {
            ExprKind::Literal(_) => Expr::lit(0.0),
            ExprKind::Var(i) => Expr::lit(if *i == axis { 1.0 } else { 0.0 }),
            ExprKind::Neg(a) => Expr::neg(a.partial(axis)),
            ExprKind::Binary(op, a, b) => {
                let (da, db) = (a.partial(axis), b.partial(axis));
                let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
                match op {
                    BinOp::Add => Expr::add(da, db),
                    BinOp::Sub => Expr::sub(da, db),
                    BinOp::Mul => Expr::add(Expr::mul(da, b), Expr::mul(a, db)),
                    BinOp::Div => {
                        if db.is_zero() {
                            Expr::div(da, b)
                        } else {
                            Expr::div(
                                Expr::sub(Expr::mul(da, b.clone()), Expr::mul(a, db)),
                                Expr::powi(b, 2),
                            )
                        }
                    }
                }
            }
            ExprKind::Pow(a, n) => {
                let da = a.partial(axis);
                if da.is_zero() {
                    return Expr::lit(0.0);
                }
                let outer = Expr::mul(Expr::lit(*n as f64), Expr::powi(a.as_ref().clone(), n - 1));
                Expr::mul(outer, da)
            }
            ExprKind::Call(f, a) => {
                let da = a.partial(axis);
                if da.is_zero() {
                    return Expr::lit(0.0);
                }
                let a = a.as_ref().clone();
                match f {
                    Func::Sin => Expr::mul(Expr::call(Func::Cos, a), da),
                    Func::Cos => Expr::mul(Expr::neg(Expr::call(Func::Sin, a)), da),
                    Func::Exp => Expr::mul(Expr::call(Func::Exp, a), da),
                    Func::Log => Expr::div(da, a),
                    Func::Sqrt => {
                        Expr::div(da, Expr::mul(Expr::lit(2.0), Expr::call(Func::Sqrt, a)))
                    }
                }
            }
        }
    }
}
