//! Second-order forward-mode differentiation in four variables.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{DomainError, Error, Result};

/// Value, gradient and Hessian of a real function of `x1..x4` at a point.
///
/// The Hessian is kept exactly symmetric: every operation writes the upper
/// triangle and mirrors it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 4],
    pub hess: [[f64; 4]; 4],
}

#[allow(clippy::needless_range_loop)]
fn sym(f: impl Fn(usize, usize) -> f64) -> [[f64; 4]; 4] {
    let mut h = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let v = f(i, j);
            h[i][j] = v;
            h[j][i] = v;
        }
    }
    h
}

impl Jet2 {
    pub fn constant(value: f64) -> Self {
        Jet2 {
            value,
            grad: [0.0; 4],
            hess: [[0.0; 4]; 4],
        }
    }

    /// The coordinate function `x_axis` at `point`; `axis` is 1-based.
    pub fn seed(point: [f64; 4], axis: usize) -> Result<Self> {
        if !(1..=4).contains(&axis) {
            return Err(Error::AxisOutOfRange(axis));
        }
        let mut jet = Jet2::constant(point[axis - 1]);
        jet.grad[axis - 1] = 1.0;
        Ok(jet)
    }

    /// Applies a univariate function given its value and first two derivatives
    /// at `self.value`.
    fn chain(&self, f: f64, df: f64, d2f: f64) -> Self {
        let g = self.grad;
        Jet2 {
            value: f,
            grad: g.map(|gi| df * gi),
            hess: sym(|i, j| df * self.hess[i][j] + d2f * g[i] * g[j]),
        }
    }

    pub fn recip(&self) -> Result<Self, DomainError> {
        let v = self.value;
        if v == 0.0 {
            return Err(DomainError::new("division", v));
        }
        let r = 1.0 / v;
        Ok(self.chain(r, -r * r, 2.0 * r * r * r))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, DomainError> {
        Ok(*self * rhs.recip()?)
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn exp(&self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn ln(&self) -> Result<Self, DomainError> {
        let v = self.value;
        if !(v > 0.0) {
            return Err(DomainError::new("log", v));
        }
        Ok(self.chain(v.ln(), 1.0 / v, -1.0 / (v * v)))
    }

    /// Square root; the derivative is unbounded at zero so zero is excluded.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn sqrt(&self) -> Result<Self, DomainError> {
        let v = self.value;
        if !(v > 0.0) {
            return Err(DomainError::new("sqrt", v));
        }
        let s = v.sqrt();
        Ok(self.chain(s, 0.5 / s, -0.25 / (s * v)))
    }

    /// Integer power. Negative bases are fine; a zero base with a negative
    /// exponent is a division by zero.
    pub fn powi(&self, n: i32) -> Result<Self, DomainError> {
        let v = self.value;
        if n == 0 {
            return Ok(Jet2::constant(1.0));
        }
        if n < 0 && v == 0.0 {
            return Err(DomainError::new("division", v));
        }
        let nf = n as f64;
        let d2f = if n == 1 {
            0.0
        } else {
            nf * (nf - 1.0) * v.powi(n - 2)
        };
        Ok(self.chain(v.powi(n), nf * v.powi(n - 1), d2f))
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Self) -> Self {
        Jet2 {
            value: self.value + rhs.value,
            grad: std::array::from_fn(|i| self.grad[i] + rhs.grad[i]),
            hess: sym(|i, j| self.hess[i][j] + rhs.hess[i][j]),
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Self) -> Self {
        Jet2 {
            value: self.value - rhs.value,
            grad: std::array::from_fn(|i| self.grad[i] - rhs.grad[i]),
            hess: sym(|i, j| self.hess[i][j] - rhs.hess[i][j]),
        }
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Self {
        Jet2 {
            value: -self.value,
            grad: self.grad.map(|g| -g),
            hess: self.hess.map(|row| row.map(|h| -h)),
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self, rhs);
        Jet2 {
            value: a.value * b.value,
            grad: std::array::from_fn(|i| a.grad[i] * b.value + a.value * b.grad[i]),
            hess: sym(|i, j| {
                a.hess[i][j] * b.value
                    + a.value * b.hess[i][j]
                    + a.grad[i] * b.grad[j]
                    + a.grad[j] * b.grad[i]
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeding() {
        let j = Jet2::seed([2.0, 3.0, 0.0, 1.0], 1).unwrap();
        assert_eq!(j.value, 2.0);
        assert_eq!(j.grad, [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(j.hess, [[0.0; 4]; 4]);
        let j = Jet2::seed([0.0; 4], 4).unwrap();
        assert_eq!((j.value, j.grad), (0.0, [0.0, 0.0, 0.0, 1.0]));
        assert_eq!(Jet2::seed([0.0; 4], 5), Err(Error::AxisOutOfRange(5)));
        assert_eq!(Jet2::seed([0.0; 4], 0), Err(Error::AxisOutOfRange(0)));
        let c = Jet2::constant(3.5);
        assert_eq!((c.value, c.grad, c.hess), (3.5, [0.0; 4], [[0.0; 4]; 4]));
    }

    #[test]
    fn product_of_seeds() {
        let p = [2.0, 3.0, 0.0, 0.0];
        let j = Jet2::seed(p, 1).unwrap() * Jet2::seed(p, 2).unwrap();
        assert_eq!(j.value, 6.0);
        assert_eq!(j.grad, [3.0, 2.0, 0.0, 0.0]);
        let mut h = [[0.0; 4]; 4];
        h[0][1] = 1.0;
        h[1][0] = 1.0;
        assert_eq!(j.hess, h);
    }

    #[test]
    fn trivial_arithmetic() {
        let p = [0.3, -1.2, 2.0, 0.7];
        let a = Jet2::seed(p, 2).unwrap().sin() * Jet2::seed(p, 3).unwrap();
        let z = a + (-a);
        assert_eq!(z, Jet2::constant(0.0));
        assert_eq!(a.checked_div(&Jet2::constant(1.0)).unwrap(), a);
        assert!(a.checked_div(&Jet2::constant(0.0)).is_err());
    }

    #[test]
    fn elementary_functions() {
        let e = Jet2::constant(0.0).exp();
        assert_eq!((e.value, e.grad), (1.0, [0.0; 4]));

        let l = Jet2::seed([1.0, 1.0, 1.0, 1.0], 1).unwrap().ln().unwrap();
        assert_eq!(l.value, 0.0);
        assert_eq!(l.grad, [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(l.hess[0][0], -1.0);

        let err = Jet2::constant(0.0).sqrt().unwrap_err();
        assert_eq!(err.op, "sqrt");
        assert!(Jet2::constant(-1.0).ln().is_err());
        assert!(Jet2::constant(0.0).powi(-2).is_err());
        assert_eq!(Jet2::constant(-2.0).powi(3).unwrap().value, -8.0);
    }

    #[test]
    fn powi_at_zero_base() {
        let x = Jet2::seed([0.0; 4], 1).unwrap();
        let sq = x.powi(2).unwrap();
        assert_eq!(sq.grad, [0.0; 4]);
        assert_eq!(sq.hess[0][0], 2.0);
        let lin = x.powi(1).unwrap();
        assert_eq!(lin.grad, [1.0, 0.0, 0.0, 0.0]);
    }
}
