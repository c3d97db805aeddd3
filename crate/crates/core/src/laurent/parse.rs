use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{LaurentError, LaurentPoly};

/// Upper bound on `|k|` in `base^k` when the base is not a monomial.
const MAX_POLY_EXPONENT: i64 = 4096;

/// Parse an expression such as `(t1-1)*(t2-1)*t1^-1` into its expansion.
///
/// Grammar: `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := base ('^' int)?`, `base := int | 't' digits | '(' expr ')'`.
/// Unary signs are accepted in front of a factor. A negative exponent is only
/// allowed when the base evaluates to a signed monomial.
pub fn parse_poly(text: &str, arity: usize) -> Result<LaurentPoly, LaurentError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        arity,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    arity: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> LaurentError {
        LaurentError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

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

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.signed_factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.signed_factor()?;
        }
        Ok(acc)
    }

    fn signed_factor(&mut self) -> Result<LaurentPoly, LaurentError> {
        if self.eat(b'-') {
            Ok(-self.signed_factor()?)
        } else if self.eat(b'+') {
            self.signed_factor()
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly, LaurentError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exp_pos = self.pos;
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        self.skip_ws();
        let magnitude = self.digits()?;
        let exp = magnitude
            .to_i64()
            .ok_or(LaurentError::ExponentTooLarge { pos: exp_pos })?;
        let exp = if negative { -exp } else { exp };
        power(&base, exp, exp_pos)
    }

    fn base(&mut self) -> Result<LaurentPoly, LaurentError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b't') => {
                let start = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(self.error("expected variable index after 't'"));
                }
                let idx = self.digits()?;
                let var = idx.to_usize().filter(|&v| v >= 1).ok_or(LaurentError::Syntax {
                    pos: start,
                    msg: format!("invalid variable index t{idx}"),
                })?;
                if var > self.arity {
                    return Err(LaurentError::VariableOutOfRange {
                        var,
                        arity: self.arity,
                    });
                }
                Ok(LaurentPoly::var(var, self.arity))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(LaurentPoly::constant(n, self.arity))
            }
            Some(_) => Err(self.error("expected integer, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<BigInt, LaurentError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("ascii digits parse"))
    }
}

fn power(base: &LaurentPoly, exp: i64, pos: usize) -> Result<LaurentPoly, LaurentError> {
    let arity = base.arity();
    if let Some((c, m)) = base.as_term() {
        if c.abs().is_one() {
            let c = if exp % 2 != 0 { c.clone() } else { BigInt::one() };
            return Ok(LaurentPoly::term(c, m.pow(exp), arity));
        }
    }
    if exp < 0 {
        return Err(LaurentError::NegativePower { pos });
    }
    if base.is_zero() {
        return Ok(if exp == 0 {
            LaurentPoly::one(arity)
        } else {
            LaurentPoly::zero(arity)
        });
    }
    if exp > MAX_POLY_EXPONENT {
        return Err(LaurentError::ExponentTooLarge { pos });
    }
    Ok(base.pow(exp as u32))
}
