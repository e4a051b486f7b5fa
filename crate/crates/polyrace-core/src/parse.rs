//! Text grammar for field literals and polynomial expressions.
//!
//! Field literal: `q=5` or `q=9;def=x^2+1` (defining polynomial over F_p in
//! the variable `x`).
//!
//! Polynomial expression: `poly := term (('+'|'-') term)*`,
//! `term := coeff? ('*'? 't' ('^' int)?)?`, `coeff := int | 'a' ('^' int)?`,
//! where `a` denotes a chosen generator of `F_q^*`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ffcore::{make_field, FieldError, FieldSpec, FqElement};
use crate::polyring::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the error was detected.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: {}", self.pos, self.msg)
    }
}

impl core::error::Error for ParseError {}

fn err<T>(pos: usize, msg: &str) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: String::from(msg) })
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Cursor<'a> {
        Cursor { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            err(self.pos, "unexpected character")
        }
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut val: u64 = 0;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            val = val
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(ParseError { pos: start, msg: String::from("integer overflow") })?;
            self.pos += 1;
        }
        if self.pos == start {
            return err(start, "expected integer");
        }
        Ok(val)
    }
}

/// Parses a field literal such as `q=5` or `q=9;def=x^2+1`.
pub fn parse_field(text: &str) -> Result<FieldSpec, ParseError> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    c.expect(b'q').map_err(|e| ParseError { pos: e.pos, msg: String::from("expected 'q='") })?;
    c.expect(b'=')?;
    let q = c.integer()?;
    let (p, e) = split_prime_power(q).ok_or(ParseError {
        pos: 2,
        msg: String::from("field size must be a prime power"),
    })?;
    c.skip_ws();
    let mut def: Option<Vec<u32>> = None;
    if c.eat(b';') {
        c.skip_ws();
        for ch in *b"def=" {
            c.expect(ch)?;
        }
        def = Some(parse_fp_poly(&mut c, p)?);
    }
    c.skip_ws();
    if c.peek().is_some() {
        return err(c.pos, "trailing input after field literal");
    }
    make_field(p, e, def.as_deref()).map_err(|fe| ParseError {
        pos: 0,
        msg: format_field_error(&fe),
    })
}

fn format_field_error(fe: &FieldError) -> String {
    use alloc::format;
    format!("{fe}")
}

fn split_prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 || q > 1 << 16 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut e = 0u32;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if m == 1 {
                return Some((p as u32, e));
            }
            return None;
        }
        p += 1;
    }
    Some((q as u32, 1))
}

/// Parses a polynomial in `x` with coefficients reduced mod p
/// (used for defining polynomials). Returns little-endian coefficients.
fn parse_fp_poly(c: &mut Cursor, p: u32) -> Result<Vec<u32>, ParseError> {
    let mut coeffs: Vec<i64> = Vec::new();
    let mut sign = 1i64;
    loop {
        c.skip_ws();
        let term_pos = c.pos;
        let mut coeff: Option<u64> = None;
        if matches!(c.peek(), Some(b) if b.is_ascii_digit()) {
            coeff = Some(c.integer()?);
        }
        c.eat(b'*');
        let mut exp = 0u64;
        if c.eat(b'x') {
            exp = 1;
            if c.eat(b'^') {
                exp = c.integer()?;
            }
        } else if coeff.is_none() {
            return err(term_pos, "expected term");
        }
        if exp > 64 {
            return err(term_pos, "exponent too large");
        }
        let coeff = coeff.unwrap_or(1) as i64;
        if coeffs.len() <= exp as usize {
            coeffs.resize(exp as usize + 1, 0);
        }
        coeffs[exp as usize] += sign * coeff;
        c.skip_ws();
        if c.eat(b'+') {
            sign = 1;
        } else if c.eat(b'-') {
            sign = -1;
        } else {
            break;
        }
    }
    Ok(coeffs
        .into_iter()
        .map(|v| (v.rem_euclid(p as i64)) as u32)
        .collect())
}

/// A coefficient in a polynomial expression: either an integer literal or a
/// power of the generator symbol `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffExpr {
    Int(i64),
    /// `a^k` with the recorded exponent.
    GenPow(u64),
}

/// A parsed polynomial expression with coefficients not yet bound to a field
/// representation. Binding happens in [`PolyPattern::instantiate`], so the
/// same text can be re-evaluated under different generator choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPattern {
    /// `terms[i]` is the list of signed coefficient expressions contributing
    /// to `t^i`.
    pub terms: Vec<Vec<(i64, CoeffExpr)>>,
}

impl PolyPattern {
    pub fn uses_generator(&self) -> bool {
        self.terms
            .iter()
            .flatten()
            .any(|&(_, c)| matches!(c, CoeffExpr::GenPow(_)))
    }

    /// Evaluates the pattern with `a` bound to `gen`.
    pub fn instantiate(&self, field: &FieldSpec, gen: FqElement) -> Poly {
        let mut coeffs = vec![FqElement::ZERO; self.terms.len()];
        for (i, parts) in self.terms.iter().enumerate() {
            let mut acc = FqElement::ZERO;
            for &(sign, ce) in parts {
                let v = match ce {
                    CoeffExpr::Int(n) => field.from_int(n),
                    CoeffExpr::GenPow(k) => field.pow(gen, k),
                };
                let v = if sign < 0 { field.neg(v) } else { v };
                acc = field.add(acc, v);
            }
            coeffs[i] = acc;
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Parses a polynomial expression into a field-independent pattern.
pub fn parse_poly_pattern(text: &str) -> Result<PolyPattern, ParseError> {
    let mut c = Cursor::new(text);
    let mut terms: Vec<Vec<(i64, CoeffExpr)>> = Vec::new();
    let mut sign = 1i64;
    c.skip_ws();
    if c.eat(b'-') {
        sign = -1;
    }
    loop {
        c.skip_ws();
        let term_pos = c.pos;
        let mut coeff: Option<CoeffExpr> = None;
        match c.peek() {
            Some(b) if b.is_ascii_digit() => {
                coeff = Some(CoeffExpr::Int(c.integer()? as i64));
            }
            Some(b'a') => {
                c.bump();
                let mut k = 1u64;
                if c.eat(b'^') {
                    k = c.integer()?;
                }
                coeff = Some(CoeffExpr::GenPow(k));
            }
            _ => {}
        }
        c.skip_ws();
        c.eat(b'*');
        c.skip_ws();
        let mut exp = 0u64;
        let mut saw_t = false;
        if c.eat(b't') {
            saw_t = true;
            exp = 1;
            if c.eat(b'^') {
                exp = c.integer()?;
            }
        }
        if coeff.is_none() && !saw_t {
            return err(term_pos, "expected term");
        }
        if exp > 4096 {
            return err(term_pos, "exponent too large");
        }
        if terms.len() <= exp as usize {
            terms.resize(exp as usize + 1, Vec::new());
        }
        terms[exp as usize].push((sign, coeff.unwrap_or(CoeffExpr::Int(1))));
        c.skip_ws();
        if c.eat(b'+') {
            sign = 1;
        } else if c.eat(b'-') {
            sign = -1;
        } else {
            break;
        }
    }
    c.skip_ws();
    if c.peek().is_some() {
        return err(c.pos, "trailing input after polynomial");
    }
    Ok(PolyPattern { terms })
}

/// Parses a polynomial expression, binding `a` to the field's canonical
/// generator.
pub fn parse_poly(text: &str, field: &FieldSpec) -> Result<Poly, ParseError> {
    let pat = parse_poly_pattern(text)?;
    Ok(pat.instantiate(field, field.generator()))
}
