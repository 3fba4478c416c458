//! Named special-shape functions with known regularity.

use crate::regularity::SpecialFunction;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub function: SpecialFunction,
}

fn entry(name: &'static str, f0: &str, f1: &str) -> CorpusEntry {
    CorpusEntry {
        name,
        function: SpecialFunction::parse(f0, f1).expect("corpus expressions parse"),
    }
}

const R: &str = "sqrt(x2^2 + x3^2 + x4^2)";

/// Functions that are algebraic regular on `R^4` (the exponential away from
/// the real axis).
pub fn regular() -> Vec<CorpusEntry> {
    vec![
        entry("constant", "0", "5"),
        entry("identity", "1", "x1"),
        entry("square", "2*x1", "x1^2 - x2^2 - x3^2 - x4^2"),
        entry(
            "cube",
            "3*x1^2 - x2^2 - x3^2 - x4^2",
            "x1^3 - 3*x1*(x2^2 + x3^2 + x4^2)",
        ),
        entry(
            "quadratic",
            "6*x1 - 2",
            "3*(x1^2 - x2^2 - x3^2 - x4^2) - 2*x1 + 1",
        ),
        entry(
            "identity_plus_square",
            "1 + 2*x1",
            "x1 + x1^2 - x2^2 - x3^2 - x4^2",
        ),
        entry(
            "exponential",
            &format!("exp(x1)*sin({R})/{R}"),
            &format!("exp(x1)*cos({R})"),
        ),
    ]
}

/// Special-shape functions that fail the regularity system at generic points.
pub fn non_regular() -> Vec<CorpusEntry> {
    vec![
        entry("x2_times_imaginary", "x2", "0"),
        entry("conjugate", "-1", "x1"),
        entry("x1_squared_plus_imaginary", "1", "x1^2"),
        entry("x1_scaled", "x1", "x1^2"),
        entry("trig", "sin(x1)", "cos(x1)"),
        entry("mixed", "x3*x4", "x2"),
        entry("product", "0", "x1*x2"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Quaternion;

    #[test]
    fn closed_forms_match_quaternion_powers() {
        let c = [0.3, -0.6, 0.2, 0.9];
        let x = Quaternion(c);
        let find = |name| {
            regular()
                .into_iter()
                .find(|e| e.name == name)
                .unwrap()
                .function
        };
        assert!(find("square").eval(c).unwrap().approx_eq(&(x * x), 1e-14));
        assert!(find("cube").eval(c).unwrap().approx_eq(&(x * x * x), 1e-14));

        // exp via its power series
        let mut term = Quaternion::ONE;
        let mut series = Quaternion::ONE;
        for n in 1..40 {
            term = (term * x).scale(1.0 / n as f64);
            series += term;
        }
        assert!(find("exponential")
            .eval(c)
            .unwrap()
            .approx_eq(&series, 1e-14));
    }
}
