//! A small language for real-valued functions of `x1..x4`.
//!
//! Grammar, lowest to highest precedence:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= '-'? integer ('^' exponent)?      (right-associative, integers only)
//! atom    := number | x1 | x2 | x3 | x4 | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | exp | log | sqrt
//! ```
//!
//! Numbers are decimal with an optional fraction and exponent. Whitespace is
//! ignored. The printer emits a canonical form that parses back to the same
//! tree.

mod diff;
mod eval;
mod parse;

use std::fmt;

pub use parse::{parse, ParseError};

/// Elementary functions accepted by the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Sin, Func::Cos, Func::Exp, Func::Log, Func::Sqrt];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => " + ",
            BinOp::Sub => " - ",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => PREC_ADD,
            BinOp::Mul | BinOp::Div => PREC_MUL,
        }
    }
}

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_UNARY: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    /// Non-negative finite literal. Negative constants are `Neg(Literal)`.
    Literal(f64),
    /// Coordinate index in 1..=4.
    Var(u8),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

/// An expression tree node.
///
/// `offset` records where a parsed node started in its source text and is
/// ignored by equality.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub offset: Option<usize>,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl From<ExprKind> for Expr {
    fn from(kind: ExprKind) -> Self {
        Expr { kind, offset: None }
    }
}

#[allow(clippy::should_implement_trait, clippy::redundant_guards)]
impl Expr {
    pub(crate) fn with_offset(kind: ExprKind, offset: usize) -> Self {
        Expr {
            kind,
            offset: Some(offset),
        }
    }

    /// A constant. Negative values become a negated literal so every tree
    /// built here survives a print/parse round trip.
    pub fn lit(value: f64) -> Expr {
        if value < 0.0 {
            ExprKind::Neg(Box::new(ExprKind::Literal(-value).into())).into()
        } else {
            // folds -0.0 into 0.0
            ExprKind::Literal(value + 0.0).into()
        }
    }

    /// The coordinate `x_axis`.
    ///
    /// # Panics
    /// If `axis` is outside 1..=4.
    pub fn var(axis: usize) -> Expr {
        assert!((1..=4).contains(&axis), "axis {axis} out of range");
        ExprKind::Var(axis as u8).into()
    }

    /// Numeric value if this node is a (possibly negated) literal.
    pub fn as_constant(&self) -> Option<f64> {
        match &self.kind {
            ExprKind::Literal(v) => Some(*v),
            ExprKind::Neg(inner) => inner.as_constant().map(|v| -v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_constant() == Some(0.0)
    }

    pub fn is_one(&self) -> bool {
        self.as_constant() == Some(1.0)
    }

    // Constructors below prune literal zeros and ones and fold
    // literal-literal arithmetic; nothing further is simplified.

    pub fn neg(a: Expr) -> Expr {
        match a.as_constant() {
            Some(v) => Expr::lit(-v),
            None => match a.kind {
                ExprKind::Neg(inner) => *inner,
                kind => ExprKind::Neg(Box::new(kind.into())).into(),
            },
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) => Expr::lit(x + y),
            (Some(x), _) if x == 0.0 => b,
            (_, Some(y)) if y == 0.0 => a,
            _ => ExprKind::Binary(BinOp::Add, Box::new(a), Box::new(b)).into(),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) => Expr::lit(x - y),
            (Some(x), _) if x == 0.0 => Expr::neg(b),
            (_, Some(y)) if y == 0.0 => a,
            _ => ExprKind::Binary(BinOp::Sub, Box::new(a), Box::new(b)).into(),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) => Expr::lit(x * y),
            (Some(x), _) | (_, Some(x)) if x == 0.0 => Expr::lit(0.0),
            (Some(x), _) if x == 1.0 => b,
            (_, Some(y)) if y == 1.0 => a,
            (Some(x), _) if x == -1.0 => Expr::neg(b),
            (_, Some(y)) if y == -1.0 => Expr::neg(a),
            _ => ExprKind::Binary(BinOp::Mul, Box::new(a), Box::new(b)).into(),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) if y != 0.0 => Expr::lit(x / y),
            (Some(x), _) if x == 0.0 => Expr::lit(0.0),
            (_, Some(y)) if y == 1.0 => a,
            _ => ExprKind::Binary(BinOp::Div, Box::new(a), Box::new(b)).into(),
        }
    }

    pub fn powi(a: Expr, n: i32) -> Expr {
        match n {
            0 => Expr::lit(1.0),
            1 => a,
            _ => ExprKind::Pow(Box::new(a), n).into(),
        }
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        ExprKind::Call(f, Box::new(a)).into()
    }

    /// Largest coordinate index referenced, or 0 for a constant.
    pub fn max_var(&self) -> u8 {
        match &self.kind {
            ExprKind::Literal(_) => 0,
            ExprKind::Var(i) => *i,
            ExprKind::Neg(a) | ExprKind::Pow(a, _) | ExprKind::Call(_, a) => a.max_var(),
            ExprKind::Binary(_, a, b) => a.max_var().max(b.max_var()),
        }
    }

    fn precedence(&self) -> u8 {
        match &self.kind {
            ExprKind::Literal(_) | ExprKind::Var(_) | ExprKind::Call(..) => PREC_ATOM,
            ExprKind::Neg(_) => PREC_UNARY,
            ExprKind::Binary(op, ..) => op.precedence(),
            ExprKind::Pow(..) => PREC_POW,
        }
    }

    fn write_child(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Literal(v) => {
                if *v < 0.0 {
                    // only reachable for trees built without `Expr::lit`
                    write!(f, "(-{})", -v)
                } else {
                    write!(f, "{v}")
                }
            }
            ExprKind::Var(i) => write!(f, "x{i}"),
            ExprKind::Neg(a) => {
                f.write_str("-")?;
                a.write_child(f, PREC_UNARY)
            }
            ExprKind::Binary(op, a, b) => {
                let p = op.precedence();
                a.write_child(f, p)?;
                f.write_str(op.symbol())?;
                b.write_child(f, p + 1)
            }
            ExprKind::Pow(a, n) => {
                a.write_child(f, PREC_ATOM)?;
                write!(f, "^{n}")
            }
            ExprKind::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl serde::Serialize for Expr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Expr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn canonical_printing() {
        for s in [
            "x1^2 - x2^2 - x3^2 - x4^2",
            "2*x1",
            "x1 - (x2 - x3)",
            "x1/(x2*x3)",
            "-x1^2",
            "(-x1)^2",
            "(x1^2)^3",
            "sin(x3)*x4",
            "x1^-1",
            "--x2",
            "exp(-(x1 + x2))",
            "0.125*sqrt(x1)",
        ] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn lit_normalizes_sign() {
        assert_eq!(Expr::lit(-2.0).to_string(), "-2");
        assert_eq!(Expr::lit(-0.0), Expr::lit(0.0));
        assert_eq!(
            parse(&Expr::lit(-2.5).to_string()).unwrap(),
            Expr::lit(-2.5)
        );
    }

    #[test]
    fn pruning() {
        let x = Expr::var(1);
        assert_eq!(Expr::mul(Expr::lit(0.0), x.clone()), Expr::lit(0.0));
        assert_eq!(Expr::mul(Expr::lit(1.0), x.clone()), x);
        assert_eq!(Expr::add(x.clone(), Expr::lit(0.0)), x);
        assert_eq!(Expr::sub(Expr::lit(0.0), x.clone()), Expr::neg(x.clone()));
        assert_eq!(Expr::neg(Expr::neg(x.clone())), x);
        assert_eq!(Expr::powi(x.clone(), 1), x);
        assert_eq!(Expr::mul(Expr::lit(2.0), Expr::lit(3.0)), Expr::lit(6.0));
    }
}
