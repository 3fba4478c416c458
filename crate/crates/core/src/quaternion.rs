//! The quaternion algebra H on the basis e1, e2, e3, e4.
//!
//! e1 is the identity, `e_i^2 = -e1` for i = 2, 3, 4, and for 2 <= i < j <= 4
//! `e_i e_j = -e_j e_i = (-1)^(i+j+1) e_(9-i-j)`.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of H, stored as the coefficients on e1..e4.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Quaternion(pub [f64; 4]);

/// Product of two basis elements, as `(sign, index)` with `e_i e_j = sign * e_index`.
///
/// Indices are 1-based to match the basis names.
pub const fn basis_product(i: usize, j: usize) -> (f64, usize) {
    match (i, j) {
        (1, k) | (k, 1) => (1.0, k),
        _ if i == j => (-1.0, 1),
        _ => {
            let (lo, hi, swapped) = if i < j { (i, j, false) } else { (j, i, true) };
            // (-1)^(lo+hi+1)
            let sign = if (lo + hi + 1) % 2 == 0 { 1.0 } else { -1.0 };
            let sign = if swapped { -sign } else { sign };
            (sign, 9 - lo - hi)
        }
    }
}

const fn build_table() -> [[(f64, usize); 4]; 4] {
    let mut table = [[(0.0, 0); 4]; 4];
    let mut i = 0;
    while i < 4 {
        let mut j = 0;
        while j < 4 {
            table[i][j] = basis_product(i + 1, j + 1);
            j += 1;
        }
        i += 1;
    }
    table
}

const TABLE: [[(f64, usize); 4]; 4] = build_table();

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion([0.0; 4]);
    pub const ONE: Quaternion = Quaternion([1.0, 0.0, 0.0, 0.0]);

    pub const fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Self {
        Quaternion([c1, c2, c3, c4])
    }

    /// The basis element e_i (1-based).
    pub fn basis(i: usize) -> Result<Self> {
        if !(1..=4).contains(&i) {
            return Err(Error::AxisOutOfRange(i));
        }
        let mut q = Self::ZERO;
        q.0[i - 1] = 1.0;
        Ok(q)
    }

    pub const fn real(c: f64) -> Self {
        Quaternion([c, 0.0, 0.0, 0.0])
    }

    pub fn coeffs(&self) -> [f64; 4] {
        self.0
    }

    /// Real (e1) part.
    pub fn scalar(&self) -> f64 {
        self.0[0]
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = [0.0; 4];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                let (sign, k) = TABLE[i][j];
                out[k - 1] += sign * a * b;
            }
        }
        Quaternion(out)
    }

    pub fn conjugate(&self) -> Self {
        let [a, b, c, d] = self.0;
        Quaternion([a, -b, -c, -d])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn conjugate_and_norm(&self) -> (Self, f64) {
        (self.conjugate(), self.norm())
    }

    /// Two-sided inverse `conj(a) / |a|^2`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conjugate().scale(1.0 / n2))
    }

    pub fn scale(&self, s: f64) -> Self {
        Quaternion(self.0.map(|c| c * s))
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.scale(1.0 / n))
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    /// Componentwise comparison with an absolute-plus-relative tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let scale = 1.0 + self.max_abs().max(other.max_abs());
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| (a - b).abs() <= tol * scale)
    }
}

impl From<f64> for Quaternion {
    fn from(c: f64) -> Self {
        Quaternion::real(c)
    }
}

impl Index<usize> for Quaternion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Quaternion {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        Quaternion(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Self) -> Self {
        Quaternion(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Quaternion(self.0.map(|c| -c))
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs)
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, rhs: Self) {
        *self = self.multiply(&rhs);
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        rhs.scale(self)
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Self {
        iter.fold(Quaternion::ZERO, |a, b| a + b)
    }
}

/// Renders as `a + b e2 + c e3 + d e4`.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0[0])?;
        for (k, c) in self.0.iter().enumerate().skip(1) {
            if c.is_sign_negative() {
                write!(f, " - {} e{}", -c, k + 1)?;
            } else {
                write!(f, " + {} e{}", c, k + 1)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Quaternion {
        Quaternion::basis(i).unwrap()
    }

    #[test]
    fn imaginary_products() {
        assert_eq!(e(2) * e(3), e(4));
        assert_eq!(e(2) * e(4), -e(3));
        assert_eq!(e(3) * e(4), e(2));
        assert_eq!(e(3) * e(2), -e(4));
        for i in 2..=4 {
            assert_eq!(e(i) * e(i), -e(1));
        }
    }

    #[test]
    fn square_of_one_two_three_four() {
        let q = Quaternion::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q * q, Quaternion::new(-28.0, 4.0, 6.0, 8.0));
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(e(1).inverse().unwrap(), e(1));
        assert_eq!(e(2).inverse().unwrap(), -e(2));
        assert_eq!(Quaternion::ZERO.inverse(), Err(Error::ZeroInverse));
    }

    #[test]
    fn conjugate_and_norm_cases() {
        let (c, n) = e(1).conjugate_and_norm();
        assert_eq!((c, n), (e(1), 1.0));
        let (c, n) = (e(2) + e(3)).conjugate_and_norm();
        assert_eq!(c, -e(2) - e(3));
        assert_eq!(n, 2f64.sqrt());
    }

    #[test]
    fn basis_out_of_range() {
        assert_eq!(Quaternion::basis(0), Err(Error::AxisOutOfRange(0)));
        assert_eq!(Quaternion::basis(5), Err(Error::AxisOutOfRange(5)));
    }

    #[test]
    fn display() {
        let q = Quaternion::new(1.0, -2.0, 0.5, 0.0);
        assert_eq!(q.to_string(), "1 - 2 e2 + 0.5 e3 + 0 e4");
    }
}
