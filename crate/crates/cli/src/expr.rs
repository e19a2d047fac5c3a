//! Parser for power-structure expressions of the form `BASE^EXPONENT`, e.g.
//! `(1-T)^-{1/2}`, `(1+{1/2}T)^2`, `(1+T)^{1/2}`, or `A^0`.
//!
//! The base is a one-plus series written as `1 ± [k*][{elt}]T[^s] ± …`; the
//! exponent is a group-ring element written as a signed sum of `[k*]{elt}`
//! terms or bare integers (meaning `k·{0}`). Braced labels are `p/q`
//! rationals for one-coordinate rings or `(c1,c2,…)` tuples otherwise.

use num_bigint::BigInt;
use orbispec_core::rational::rat_from_str;
use orbispec_core::{
    Coord, CoordKind, CyclicRational, GradingGroup, GroupElementTuple, GroupRingElement,
    TruncatedSeries,
};

/// A parsed `BASE^EXPONENT` expression. `base` is `None` for a symbolic
/// base like `A`, which is only meaningful with a zero exponent.
pub struct PowerExpr {
    pub base: Option<TruncatedSeries>,
    pub exponent: GroupRingElement,
}

pub fn parse_power_expr(
    input: &str,
    sig: &GradingGroup,
    order: usize,
) -> Result<PowerExpr, String> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        sig: sig.clone(),
    };
    let base = if p.peek() == Some('(') {
        p.next();
        let series = p.parse_series(order)?;
        p.expect(')')?;
        Some(series)
    } else if p.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
        while p.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            p.next();
        }
        None
    } else {
        return Err(p.err("expected `(` or a series name"));
    };
    p.expect('^')?;
    let exponent = p.parse_element()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("trailing input after the exponent"));
    }
    if base.is_none() && !exponent.is_zero() {
        return Err(String::from(
            "a symbolic base is only defined for the exponent 0",
        ));
    }
    Ok(PowerExpr { base, exponent })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    sig: GradingGroup,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn next(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while self.peek() == Some(' ') {
            self.pos += 1;
        }
    }

    fn err(&self, msg: &str) -> String {
        format!("column {}: {msg}", self.pos + 1)
    }

    fn expect(&mut self, c: char) -> Result<(), String> {
        self.skip_ws();
        if self.next() == Some(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn parse_integer(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.err("expected an integer"))
    }

    /// A braced label: `{p/q}` for one-coordinate rings, `{(c1,c2,…)}`
    /// otherwise (the inner parentheses are optional either way).
    fn parse_label(&mut self) -> Result<GroupElementTuple, String> {
        self.expect('{')?;
        self.skip_ws();
        let parenthesized = self.peek() == Some('(');
        if parenthesized {
            self.pos += 1;
        }
        let mut coords = Vec::new();
        for (i, kind) in self.sig.kinds().to_vec().into_iter().enumerate() {
            if i > 0 {
                self.expect(',')?;
            }
            self.skip_ws();
            let start = self.pos;
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_digit() || c == '-' || c == '/')
            {
                self.pos += 1;
            }
            let text: String = self.chars[start..self.pos].iter().collect();
            let r = rat_from_str(&text)
                .ok_or_else(|| self.err(&format!("malformed rational `{text}`")))?;
            coords.push(match kind {
                CoordKind::Cyclic => Coord::Cyclic(CyclicRational::new(r)),
                CoordKind::Rational => Coord::Rational(r),
                CoordKind::Integer => {
                    if !r.is_integer() {
                        return Err(self.err("integer coordinate required"));
                    }
                    Coord::Integer(r.to_integer())
                }
            });
        }
        if parenthesized {
            self.expect(')')?;
        }
        self.expect('}')?;
        Ok(GroupElementTuple::new(coords))
    }

    /// A group-ring element: `[-] term (± term)*` with
    /// `term := k | [k*]{elt}`.
    fn parse_element(&mut self) -> Result<GroupRingElement, String> {
        let mut total = GroupRingElement::zero(self.sig.clone());
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    -1i64
                }
                Some('+') => {
                    self.pos += 1;
                    1
                }
                _ if first => 1,
                _ => break,
            };
            self.skip_ws();
            let mut coeff = 1i64;
            let mut tuple = None;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff = self.parse_integer()?;
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.pos += 1;
                    tuple = Some(self.parse_label()?);
                }
            } else if self.peek() == Some('{') {
                tuple = Some(self.parse_label()?);
            } else {
                return Err(self.err("expected a term"));
            }
            let tuple = tuple.unwrap_or_else(|| GroupElementTuple::zero(&self.sig));
            let term =
                GroupRingElement::term(self.sig.clone(), tuple, BigInt::from(sign * coeff))
                    .map_err(|e| self.err(&format!("{e}")))?;
            total = total.try_add(&term).expect("same ring");
            first = false;
        }
        if first {
            return Err(self.err("expected a term"));
        }
        Ok(total)
    }

    /// A one-plus series: `1 (± [k*][{elt}]T[^s])*`.
    fn parse_series(&mut self, order: usize) -> Result<TruncatedSeries, String> {
        self.skip_ws();
        if self.parse_integer()? != 1 {
            return Err(self.err("a series must start with the constant 1"));
        }
        let mut series = TruncatedSeries::one(self.sig.clone(), order);
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => 1i64,
                Some('-') => -1,
                _ => break,
            };
            self.pos += 1;
            self.skip_ws();
            let mut coeff = 1i64;
            let mut tuple = GroupElementTuple::zero(&self.sig);
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                coeff = self.parse_integer()?;
                self.skip_ws();
                if self.peek() == Some('*') {
                    self.pos += 1;
                }
                self.skip_ws();
            }
            if self.peek() == Some('{') {
                tuple = self.parse_label()?;
                self.skip_ws();
            }
            if self.next() != Some('T') {
                return Err(self.err("expected `T`"));
            }
            let mut power = 1usize;
            if self.peek() == Some('^') {
                self.pos += 1;
                let p = self.parse_integer()?;
                if p < 1 {
                    return Err(self.err("T-power must be ≥ 1"));
                }
                power = p as usize;
            }
            if power <= order {
                let term = GroupRingElement::term(
                    self.sig.clone(),
                    tuple,
                    BigInt::from(sign * coeff),
                )
                .map_err(|e| self.err(&format!("{e}")))?;
                let updated = series.coeff(power).try_add(&term).expect("same ring");
                series.set_coeff(power, updated);
            }
        }
        Ok(series)
    }
}
