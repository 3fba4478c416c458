use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{differential0, MultiIndex, PointForm, QFunction};
use crate::error::{DomainError, Error, Result};
use crate::expr::Expr;
use crate::quaternion::Quaternion;

/// The named 3-forms and the volume form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialForm {
    /// `Dq = e1 dx^234 + Σ_{2<=i<j<=4} (-1)^(i+j) e_(9-i-j) dx^1ij`.
    Dq,
    /// `D0q = (x2+x3+x4) dx^234 - Σ (-1)^(i+j) x_(9-i-j) dx^1ij`.
    D0q,
    /// `D1q = dx^234 + Σ (-1)^(i+j) dx^1ij`.
    D1q,
    /// `v = dx^1∧dx^2∧dx^3∧dx^4`.
    Volume,
}

/// A quaternion-valued m-form whose coefficients are [`QFunction`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct FormField {
    degree: usize,
    terms: BTreeMap<MultiIndex, QFunction>,
}

fn sign(i: usize, j: usize) -> f64 {
    if (i + j).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

impl FormField {
    pub fn zero(degree: usize) -> Self {
        FormField {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: QFunction) -> Self {
        let mut out = FormField::zero(0);
        out.terms.insert(MultiIndex::EMPTY, f);
        out
    }

    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, QFunction)>,
    ) -> Result<Self> {
        let mut out = FormField::zero(degree);
        for (idx, f) in terms {
            out.add_term(idx, f)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, idx: MultiIndex, f: QFunction) -> Result<()> {
        if idx.degree() != self.degree {
            return Err(Error::InvalidArgument(format!(
                "index {idx} does not belong to a {}-form",
                self.degree
            )));
        }
        let merged = match self.terms.remove(&idx) {
            Some(g) => g.sum(&f),
            None => f,
        };
        self.terms.insert(idx, merged);
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &QFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Option<&QFunction> {
        self.terms.get(idx)
    }

    pub fn special(kind: SpecialForm) -> Self {
        let idx = |a: &[usize]| MultiIndex::new(a).unwrap();
        let q = |c: Quaternion| QFunction::constant(c);
        let real = |e: Expr| QFunction::real(e);
        let e = |k: usize| Quaternion::basis(k).unwrap();
        let pairs = [(2usize, 3usize), (2, 4), (3, 4)];

        let mut out = FormField::zero(3);
        match kind {
            SpecialForm::Volume => {
                out = FormField::zero(4);
                out.terms.insert(MultiIndex::VOLUME, q(Quaternion::ONE));
            }
            SpecialForm::Dq => {
                out.terms.insert(idx(&[2, 3, 4]), q(e(1)));
                for (i, j) in pairs {
                    out.terms
                        .insert(idx(&[1, i, j]), q(e(9 - i - j).scale(sign(i, j))));
                }
            }
            SpecialForm::D0q => {
                let s = Expr::add(Expr::add(Expr::var(2), Expr::var(3)), Expr::var(4));
                out.terms.insert(idx(&[2, 3, 4]), real(s));
                for (i, j) in pairs {
                    let c = Expr::mul(Expr::lit(-sign(i, j)), Expr::var(9 - i - j));
                    out.terms.insert(idx(&[1, i, j]), real(c));
                }
            }
            SpecialForm::D1q => {
                out.terms.insert(idx(&[2, 3, 4]), q(Quaternion::ONE));
                for (i, j) in pairs {
                    out.terms
                        .insert(idx(&[1, i, j]), q(Quaternion::real(sign(i, j))));
                }
            }
        }
        out
    }

    pub fn eval(&self, p: [f64; 4]) -> Result<PointForm, DomainError> {
        let mut out = PointForm::zero(self.degree);
        for (idx, f) in &self.terms {
            out.add_term(*idx, f.eval(p)?).expect("matching degree");
        }
        Ok(out)
    }

    /// `dα = Σ d(f_I) ∧ dx^I` evaluated at `p`, differentiating the
    /// coefficients with jets.
    pub fn exterior_d(&self, p: [f64; 4]) -> Result<PointForm, DomainError> {
        let mut out = PointForm::zero(self.degree + 1);
        for (idx, f) in &self.terms {
            let basis = PointForm::from_index(*idx);
            out = out.add(&differential0(f, p)?.wedge(&basis));
        }
        Ok(out)
    }

    /// `dα` as a field, differentiating the coefficients symbolically.
    pub fn d(&self) -> FormField {
        let mut out = FormField::zero(self.degree + 1);
        for (idx, f) in &self.terms {
            for axis in 1..=4 {
                let dx = MultiIndex::single(axis).unwrap();
                let Some((s, k)) = dx.concat(idx) else {
                    continue;
                };
                let df = f.diff(axis).expect("axis in range");
                let df = if s < 0.0 {
                    QFunction::constant(Quaternion::real(-1.0)).product(&df)
                } else {
                    df
                };
                out.add_term(k, df).expect("matching degree");
            }
        }
        out
    }

    /// # Panics
    /// If the degrees differ.
    pub fn sum(&self, other: &FormField) -> FormField {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        let mut out = self.clone();
        for (idx, f) in &other.terms {
            out.add_term(*idx, f.clone()).expect("matching degree");
        }
        out
    }

    /// `q · self`.
    pub fn left_mul(&self, q: Quaternion) -> FormField {
        let q = QFunction::constant(q);
        self.map(|f| q.product(f))
    }

    /// `self · q`.
    pub fn right_mul(&self, q: Quaternion) -> FormField {
        let q = QFunction::constant(q);
        self.map(|f| f.product(&q))
    }

    fn map(&self, g: impl Fn(&QFunction) -> QFunction) -> FormField {
        FormField {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, f)| (*k, g(f))).collect(),
        }
    }

    /// Symbolic `self ∧ other`, coefficients multiplied left to right.
    pub fn wedge(&self, other: &FormField) -> FormField {
        let mut out = FormField::zero(self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let Some((s, k)) = i.concat(j) else { continue };
                let mut c = a.product(b);
                if s < 0.0 {
                    c = QFunction::constant(Quaternion::real(-1.0)).product(&c);
                }
                out.add_term(k, c).expect("matching degree");
            }
        }
        out
    }
}

impl PointForm {
    /// The basis form `1 · dx^I`.
    pub fn from_index(idx: MultiIndex) -> PointForm {
        let mut out = PointForm::zero(idx.degree());
        out.add_term(idx, Quaternion::ONE).expect("matching degree");
        out
    }
}

impl fmt::Display for FormField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (idx, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{c}] · {idx}")?;
        }
        Ok(())
    }
}
