//! Cyclotomic literals: a sum of terms `c` or `c*z^k`, where `c` is an
//! integer `p` or a fraction `p/q` and `z` stands for `zeta_N` of the
//! enclosing field. A bare `z` or `z^k` is read with coefficient 1.
//! Whitespace is ignored; decimals are rejected.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{CycNum, CyclotomicField};

/// Parse failure with a 1-based character column into the literal text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralError {
    pub column: usize,
    pub message: String,
}

impl LiteralError {
    fn at(column: usize, message: impl Into<String>) -> Self {
        LiteralError {
            column,
            message: message.into(),
        }
    }
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Cursor { chars, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        match self.chars.get(self.pos) {
            Some(&(col, _)) => col,
            None => self.chars.last().map_or(1, |&(col, _)| col + 1),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<Option<BigInt>, LiteralError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        if self.peek() == Some('.') {
            return Err(LiteralError::at(
                self.column(),
                "decimal literals are not allowed; write p/q",
            ));
        }
        Ok(Some(digits.parse().expect("ascii digits")))
    }
}

/// Parses a cyclotomic literal in `Q(zeta_N)` where `N = field.order()`.
pub fn parse_literal(text: &str, field: &Arc<CyclotomicField>) -> Result<CycNum, LiteralError> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(LiteralError::at(1, "empty literal"));
    }
    let mut total = CycNum::zero(field);
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        if !first {
            let col = cur.column();
            if cur.eat('-') {
                negative = true;
            } else if !cur.eat('+') {
                return Err(LiteralError::at(col, "expected '+' or '-' between terms"));
            }
        }
        // one optional unary sign on the term itself
        if cur.eat('-') {
            negative = !negative;
        } else if first {
            cur.eat('+');
        }
        first = false;
        let term = parse_term(&mut cur, field)?;
        total = if negative { &total - &term } else { &total + &term };
    }
    Ok(total)
}

fn parse_term(cur: &mut Cursor, field: &Arc<CyclotomicField>) -> Result<CycNum, LiteralError> {
    let col = cur.column();
    let coeff = match cur.integer()? {
        Some(p) => {
            let q = if cur.eat('/') {
                let qcol = cur.column();
                let q = cur
                    .integer()?
                    .ok_or_else(|| LiteralError::at(qcol, "expected denominator"))?;
                if q.is_zero() {
                    return Err(LiteralError::at(qcol, "zero denominator"));
                }
                q
            } else {
                BigInt::from(1)
            };
            let c = BigRational::new(p, q);
            if !cur.eat('*') {
                return Ok(CycNum::from_rational(field, &c));
            }
            Some(c)
        }
        None => None,
    };
    let zcol = cur.column();
    if !cur.eat('z') {
        return Err(LiteralError::at(
            if coeff.is_some() { zcol } else { col },
            match cur.peek() {
                Some(c) => format!("unexpected character '{c}'"),
                None => "unexpected end of literal".to_string(),
            },
        ));
    }
    let k = if cur.eat('^') {
        let kcol = cur.column();
        let k = cur
            .integer()?
            .ok_or_else(|| LiteralError::at(kcol, "expected exponent after '^'"))?;
        let modulus = BigInt::from(field.order());
        i64::try_from(k % modulus).expect("reduced exponent fits")
    } else {
        1
    };
    let power = CycNum::zeta_pow(field, k);
    Ok(match coeff {
        Some(c) => &CycNum::from_rational(field, &c) * &power,
        None => power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u64) -> Arc<CyclotomicField> {
        CyclotomicField::new(n)
    }

    #[test]
    fn parses_spec_style_literal() {
        let f = field(8);
        let a = parse_literal("-1/2*z^3 + 1/2*z", &f).unwrap();
        assert_eq!(a.to_string(), "-1/2*z^3 + 1/2*z");
        assert_eq!(&a * &a, CycNum::from_rational(&f, &BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn whitespace_and_bare_powers() {
        let f = field(4);
        assert_eq!(parse_literal(" z ^ 2 ", &f).unwrap(), CycNum::from_integer(&f, -1));
        assert_eq!(parse_literal("-z", &f).unwrap(), -CycNum::zeta(&f));
        assert_eq!(parse_literal("1 + -z^4", &f).unwrap(), CycNum::zero(&f));
        assert_eq!(parse_literal("0", &f).unwrap(), CycNum::zero(&f));
    }

    #[test]
    fn rejects_malformed_literals_with_columns() {
        let f = field(4);
        assert_eq!(parse_literal("0.5", &f).unwrap_err().column, 2);
        assert_eq!(parse_literal("1/0", &f).unwrap_err().column, 3);
        assert_eq!(parse_literal("1 + y", &f).unwrap_err().column, 5);
        assert_eq!(parse_literal("2*", &f).unwrap_err().column, 3);
        assert_eq!(parse_literal("", &f).unwrap_err().column, 1);
        assert_eq!(parse_literal("z 2", &f).unwrap_err().column, 3);
    }
}
