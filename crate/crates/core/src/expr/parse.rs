use thiserror::Error;

use super::{BinOp, Expr, ExprKind, Func};

/// Syntax error with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: expected {expected}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
}

impl ParseError {
    fn new(offset: usize, expected: impl Into<String>) -> Self {
        ParseError {
            offset,
            expected: expected.into(),
        }
    }
}

type PResult<T> = Result<T, ParseError>;

/// Parses a complete expression; trailing input is an error.
pub fn parse(text: &str) -> PResult<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        let what = if p.src[p.pos] == b')' {
            "end of input (unbalanced ')')"
        } else {
            "operator or end of input"
        };
        return Err(ParseError::new(p.pos, what));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.skip_ws();
        let start = self.pos;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(b'+') => BinOp::Add,
                Some(b'-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::with_offset(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), start);
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        self.skip_ws();
        let start = self.pos;
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(b'*') => BinOp::Mul,
                Some(b'/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            let op_pos = self.pos;
            self.pos += 1;
            let rhs = self.unary()?;
            let at = if op == BinOp::Div { op_pos } else { start };
            lhs = Expr::with_offset(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), at);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        self.skip_ws();
        let start = self.pos;
        if self.eat(b'-') {
            let inner = self.unary()?;
            return Ok(Expr::with_offset(ExprKind::Neg(Box::new(inner)), start));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        self.skip_ws();
        let start = self.pos;
        let base = self.atom()?;
        if self.eat(b'^') {
            let n = self.exponent()?;
            return Ok(Expr::with_offset(ExprKind::Pow(Box::new(base), n), start));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> PResult<i32> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError::new(digits_start, "integer exponent"));
        }
        if matches!(self.src.get(self.pos), Some(b'.' | b'e' | b'E')) {
            return Err(ParseError::new(digits_start, "integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[digits_start..self.pos]).unwrap();
        let magnitude: i32 = text
            .parse()
            .map_err(|_| ParseError::new(digits_start, "exponent within 32-bit range"))?;
        let mut n = if negative { -magnitude } else { magnitude };
        if self.eat(b'^') {
            let inner_pos = self.pos;
            let m = self.exponent()?;
            let m = u32::try_from(m)
                .map_err(|_| ParseError::new(inner_pos, "non-negative integer exponent"))?;
            n = n
                .checked_pow(m)
                .ok_or_else(|| ParseError::new(start, "exponent within 32-bit range"))?;
        }
        Ok(n)
    }

    fn atom(&mut self) -> PResult<Expr> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            None => Err(ParseError::new(start, "expression")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(ParseError::new(self.pos, "')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || *c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            Some(_) => Err(ParseError::new(start, "expression")),
        }
    }

    fn number(&mut self) -> PResult<Expr> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut mantissa = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            mantissa += digits(self);
        }
        if mantissa == 0 {
            return Err(ParseError::new(start, "number"));
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                return Err(ParseError::new(self.pos, "exponent digits"));
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let value: f64 = text.parse().map_err(|_| ParseError::new(start, "number"))?;
        if !value.is_finite() {
            return Err(ParseError::new(start, "finite number"));
        }
        Ok(Expr::with_offset(ExprKind::Literal(value), start))
    }

    fn ident(&mut self) -> PResult<Expr> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if let Some(func) = Func::from_name(name) {
            if !self.eat(b'(') {
                return Err(ParseError::new(self.pos, format!("'(' after {name}")));
            }
            let arg = self.expr()?;
            if !self.eat(b')') {
                return Err(ParseError::new(self.pos, "')'"));
            }
            return Ok(Expr::with_offset(
                ExprKind::Call(func, Box::new(arg)),
                start,
            ));
        }
        match name.as_bytes() {
            [b'x', d @ b'1'..=b'4'] => Ok(Expr::with_offset(ExprKind::Var(d - b'0'), start)),
            _ => Err(ParseError::new(
                start,
                format!("variable x1..x4 or function sin/cos/exp/log/sqrt (found '{name}')"),
            )),
        }
    }
}
