//! Seeded random generators for expressions, functions, points and forms.
//!
//! Every generated expression is defined and smooth on all of R^4, so any
//! sampled point is admissible.

use rand::Rng;

use crate::expr::{Expr, Func};
use crate::forms::{FormField, MultiIndex, PointForm, QFunction};
use crate::quaternion::Quaternion;

/// A point in `[-1, 1]^4` whose imaginary part has norm at least 0.1.
///
/// Keeping away from the real axis lets functions built on
/// `sqrt(x2^2 + x3^2 + x4^2)` be sampled without special cases.
pub fn point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    loop {
        let p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        if p[1] * p[1] + p[2] * p[2] + p[3] * p[3] >= 0.01 {
            return p;
        }
    }
}

pub fn quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion(std::array::from_fn(|_| rng.gen_range(-1.0..=1.0)))
}

fn literal<R: Rng + ?Sized>(rng: &mut R) -> Expr {
    let v = (rng.gen_range(-200..=200) as f64) / 100.0;
    Expr::lit(v)
}

fn leaf<R: Rng + ?Sized>(rng: &mut R) -> Expr {
    if rng.gen_bool(0.75) {
        Expr::var(rng.gen_range(1..=4))
    } else {
        literal(rng)
    }
}

/// A random expression of at most `depth` operator levels.
pub fn expr<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> Expr {
    gen_expr(rng, depth, true)
}

fn gen_expr<R: Rng + ?Sized>(rng: &mut R, depth: u32, allow_exp: bool) -> Expr {
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let one = Expr::lit(1.0);
    let sub = |rng: &mut R| gen_expr(rng, depth - 1, allow_exp);
    match rng.gen_range(0..10) {
        0 => Expr::add(sub(rng), sub(rng)),
        1 => Expr::sub(sub(rng), sub(rng)),
        2 | 3 => Expr::mul(sub(rng), sub(rng)),
        4 => {
            let (a, b) = (sub(rng), sub(rng));
            Expr::div(a, Expr::add(one, Expr::powi(b, 2)))
        }
        5 => Expr::powi(sub(rng), rng.gen_range(2..=3)),
        6 => Expr::call(Func::Sin, sub(rng)),
        7 => Expr::call(Func::Cos, sub(rng)),
        8 if allow_exp => Expr::call(Func::Exp, gen_expr(rng, depth - 1, false)),
        8 => Expr::call(Func::Sin, sub(rng)),
        _ => {
            let f = if rng.gen_bool(0.5) {
                Func::Log
            } else {
                Func::Sqrt
            };
            Expr::call(f, Expr::add(one, Expr::powi(sub(rng), 2)))
        }
    }
}

pub fn qfunction<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> QFunction {
    QFunction::new(std::array::from_fn(|_| expr(rng, depth)))
}

/// A real-valued function as a `QFunction`.
pub fn real_qfunction<R: Rng + ?Sized>(rng: &mut R, depth: u32) -> QFunction {
    QFunction::real(expr(rng, depth))
}

/// A point form with a random coefficient on every basis index.
pub fn point_form<R: Rng + ?Sized>(rng: &mut R, degree: usize, real: bool) -> PointForm {
    let mut out = PointForm::zero(degree);
    for idx in MultiIndex::all(degree) {
        let q = if real {
            Quaternion::real(rng.gen_range(-1.0..=1.0))
        } else {
            quaternion(rng)
        };
        out.add_term(idx, q).expect("matching degree");
    }
    out
}

/// A field with a random coefficient function on a random nonempty subset of
/// the basis indices.
pub fn form_field<R: Rng + ?Sized>(rng: &mut R, degree: usize, depth: u32) -> FormField {
    let indices = MultiIndex::all(degree);
    let mut out = FormField::zero(degree);
    let forced = rng.gen_range(0..indices.len().max(1));
    for (n, idx) in indices.into_iter().enumerate() {
        if n == forced || rng.gen_bool(0.5) {
            out.add_term(idx, qfunction(rng, depth))
                .expect("matching degree");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn expressions_evaluate_everywhere_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let e = expr(&mut rng, 3);
            let p = point(&mut rng);
            assert!(e.eval_jet(p).is_ok(), "{e} at {p:?}");
            assert!(e.eval_real(p).unwrap().is_finite());
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = expr(&mut ChaCha8Rng::seed_from_u64(9), 3);
        let b = expr(&mut ChaCha8Rng::seed_from_u64(9), 3);
        assert_eq!(a, b);
    }
}
