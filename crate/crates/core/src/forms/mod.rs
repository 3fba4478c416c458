//! Quaternion-valued differential forms on open subsets of R^4.
//!
//! A form is stored as a map from strictly increasing multi-indices to
//! coefficients. Wedge products multiply coefficients left-to-right, so the
//! order of operands matters whenever both carry non-real coefficients.

mod field;
mod qfunction;

use std::collections::BTreeMap;
use std::fmt;

pub use field::{FormField, SpecialForm};
pub use qfunction::{differential0, fueter, QFunction, Side};

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

/// Strictly increasing tuple of axes from 1..=4, naming the basis form
/// `dx^i1 ∧ ... ∧ dx^im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    axes: [u8; 4],
    len: u8,
}

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex {
        axes: [0; 4],
        len: 0,
    };

    /// The basis index of the volume form `dx^1∧dx^2∧dx^3∧dx^4`.
    pub const VOLUME: MultiIndex = MultiIndex {
        axes: [1, 2, 3, 4],
        len: 4,
    };

    pub fn new(axes: &[usize]) -> Result<Self> {
        if axes.len() > 4 {
            return Err(Error::InvalidArgument(format!(
                "multi-index {axes:?} has more than four axes"
            )));
        }
        let mut out = MultiIndex::EMPTY;
        for (k, &a) in axes.iter().enumerate() {
            if !(1..=4).contains(&a) {
                return Err(Error::AxisOutOfRange(a));
            }
            if k > 0 && axes[k - 1] >= a {
                return Err(Error::InvalidArgument(format!(
                    "multi-index {axes:?} is not strictly increasing"
                )));
            }
            out.axes[k] = a as u8;
        }
        out.len = axes.len() as u8;
        Ok(out)
    }

    pub fn single(axis: usize) -> Result<Self> {
        Self::new(&[axis])
    }

    pub fn axes(&self) -> &[u8] {
        &self.axes[..self.len as usize]
    }

    pub fn degree(&self) -> usize {
        self.len as usize
    }

    /// All increasing multi-indices of length `m`, in lexicographic order.
    pub fn all(m: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for mask in 0u8..16 {
            if mask.count_ones() as usize != m {
                continue;
            }
            let axes: Vec<usize> = (0..4)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| b + 1)
                .collect();
            out.push(MultiIndex::new(&axes).unwrap());
        }
        out.sort();
        out
    }

    /// Canonicalizes the concatenation `self ++ other`.
    ///
    /// Returns `None` when an axis repeats (the wedge vanishes), otherwise the
    /// sign of the sorting permutation and the sorted index.
    pub fn concat(&self, other: &MultiIndex) -> Option<(f64, MultiIndex)> {
        let total = self.degree() + other.degree();
        if total > 4 {
            return None;
        }
        let mut seq = [0u8; 4];
        seq[..self.degree()].copy_from_slice(self.axes());
        seq[self.degree()..total].copy_from_slice(other.axes());
        let seq = &mut seq[..total];

        // insertion sort, counting transpositions
        let mut swaps = 0usize;
        for i in 1..seq.len() {
            let mut j = i;
            while j > 0 && seq[j - 1] > seq[j] {
                seq.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if seq.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let sign = if swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
        let mut out = MultiIndex::EMPTY;
        out.axes[..total].copy_from_slice(seq);
        out.len = total as u8;
        Some((sign, out))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.axes().cmp(other.axes())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 0 {
            return f.write_str("1");
        }
        for (k, a) in self.axes().iter().enumerate() {
            if k > 0 {
                f.write_str("∧")?;
            }
            write!(f, "dx^{a}")?;
        }
        Ok(())
    }
}

/// A quaternion-valued m-form evaluated at a point.
///
/// Zero coefficients may or may not be present in the map; use
/// [`PointForm::coefficient`] for lookups.
#[derive(Debug, Clone, PartialEq)]
pub struct PointForm {
    degree: usize,
    terms: BTreeMap<MultiIndex, Quaternion>,
}

impl PointForm {
    pub fn zero(degree: usize) -> Self {
        PointForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form, i.e. a quaternion.
    pub fn scalar(q: Quaternion) -> Self {
        let mut f = PointForm::zero(0);
        f.terms.insert(MultiIndex::EMPTY, q);
        f
    }

    /// `q · v` with `v` the volume form.
    pub fn volume(q: Quaternion) -> Self {
        let mut f = PointForm::zero(4);
        f.terms.insert(MultiIndex::VOLUME, q);
        f
    }

    /// Builds a form from `(axes, coefficient)` pairs; every index must have
    /// the same length. Repeated indices accumulate.
    pub fn from_terms<'a>(
        degree: usize,
        terms: impl IntoIterator<Item = (&'a [usize], Quaternion)>,
    ) -> Result<Self> {
        let mut f = PointForm::zero(degree);
        for (axes, q) in terms {
            let idx = MultiIndex::new(axes)?;
            f.add_term(idx, q)?;
        }
        Ok(f)
    }

    pub fn add_term(&mut self, idx: MultiIndex, q: Quaternion) -> Result<()> {
        if idx.degree() != self.degree {
            return Err(Error::InvalidArgument(format!(
                "index {idx} does not belong to a {}-form",
                self.degree
            )));
        }
        *self.terms.entry(idx).or_default() += q;
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, idx: &MultiIndex) -> Quaternion {
        self.terms.get(idx).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Quaternion)> {
        self.terms.iter()
    }

    /// Coefficient of `dx^1∧dx^2∧dx^3∧dx^4`; zero unless this is a 4-form.
    pub fn volume_coefficient(&self) -> Quaternion {
        self.coefficient(&MultiIndex::VOLUME)
    }

    pub fn is_real(&self) -> bool {
        self.terms
            .values()
            .all(|q| q.0[1..].iter().all(|&c| c == 0.0))
    }

    pub fn wedge(&self, other: &PointForm) -> PointForm {
        let mut out = PointForm::zero(self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if let Some((sign, k)) = i.concat(j) {
                    *out.terms.entry(k).or_default() += (*a * *b).scale(sign);
                }
            }
        }
        out
    }

    fn zip_with(
        &self,
        other: &PointForm,
        f: impl Fn(Quaternion, Quaternion) -> Quaternion,
    ) -> PointForm {
        assert_eq!(
            self.degree, other.degree,
            "cannot combine a {}-form with a {}-form",
            self.degree, other.degree
        );
        let mut out = self.clone();
        for (idx, q) in out.terms.iter_mut() {
            *q = f(*q, other.coefficient(idx));
        }
        for (idx, q) in &other.terms {
            out.terms
                .entry(*idx)
                .or_insert_with(|| f(Quaternion::ZERO, *q));
        }
        out
    }

    /// # Panics
    /// If the degrees differ.
    pub fn add(&self, other: &PointForm) -> PointForm {
        self.zip_with(other, |a, b| a + b)
    }

    /// # Panics
    /// If the degrees differ.
    pub fn sub(&self, other: &PointForm) -> PointForm {
        self.zip_with(other, |a, b| a - b)
    }

    /// `q · self`, multiplying every coefficient on the left.
    pub fn left_mul(&self, q: Quaternion) -> PointForm {
        self.map(|c| q * c)
    }

    /// `self · q`, multiplying every coefficient on the right.
    pub fn right_mul(&self, q: Quaternion) -> PointForm {
        self.map(|c| c * q)
    }

    pub fn scale(&self, s: f64) -> PointForm {
        self.map(|c| c.scale(s))
    }

    fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> PointForm {
        PointForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, v)| (*k, f(*v))).collect(),
        }
    }

    /// Largest absolute coefficient over all terms.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, q| m.max(q.max_abs()))
    }

    /// Largest absolute coefficientwise difference.
    pub fn max_diff(&self, other: &PointForm) -> f64 {
        self.sub(other).max_abs()
    }
}

/// Renders as `(q) · dx^1∧dx^3 + ...`, or `0` for the zero form.
impl fmt::Display for PointForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, q) in &self.terms {
            if *q == Quaternion::ZERO {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if idx.degree() == 0 {
                write!(f, "({q})")?;
            } else {
                write!(f, "({q}) · {idx}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
