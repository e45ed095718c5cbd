//! Recursive-descent parser for class expressions such as `7*p1 - 7*e` or
//! `(e + 1/2*p2)^3`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' uint)?
//! atom   := 'e' | 'p' uint | uint ('/' uint)? | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::classes::CharClass;
use crate::poly::Rational;
use crate::Error;

pub fn parse_class(input: &str, n: usize) -> Result<CharClass, Error> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        n,
    };
    let c = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(c)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn uint(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let d = self
            .digits()
            .ok_or_else(|| self.error("expected an integer"))?;
        Ok(d.parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<CharClass, Error> {
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

    fn term(&mut self) -> Result<CharClass, Error> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CharClass, Error> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<CharClass, Error> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let k = self.uint()?;
            let k: u32 = k.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<CharClass, Error> {
        match self.peek() {
            Some(b'e') => {
                self.pos += 1;
                Ok(CharClass::euler(self.n))
            }
            Some(b'p') => {
                self.pos += 1;
                let start = self.pos;
                let i = self
                    .digits()
                    .ok_or_else(|| self.error("expected an index after 'p'"))?;
                let i: usize = i.parse().map_err(|_| Error::Parse {
                    position: start,
                    message: "index too large".into(),
                })?;
                if i == 0 || i > self.n {
                    return Err(Error::IndexOutOfRange {
                        index: i,
                        rank: self.n,
                    });
                }
                Ok(CharClass::pontryagin(self.n, i))
            }
            Some(b'0'..=b'9') => {
                let num = self.uint()?;
                let den = if self.eat(b'/') {
                    let at = self.pos;
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(Error::Parse {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(CharClass::constant(self.n, Rational::new(num, den)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{monomial_basis, Notation};
    use crate::poly::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let e = CharClass::euler(2);
        let p1 = CharClass::pontryagin(2, 1);
        assert_eq!(parse_class("e*p1", 2).unwrap(), &e * &p1);
        assert_eq!(parse_class("e^2", 2).unwrap(), CharClass::pontryagin(2, 2));
        assert_eq!(
            parse_class("7*p1 - 7*e", 2).unwrap(),
            &p1.scale(&rat(7)) - &e.scale(&rat(7))
        );
        assert_eq!(
            parse_class(" 13 * (p1^2 + e^2 - 2*e*p1) ", 2)
                .unwrap()
                .to_string(),
            "13*p1^2 - 26*e*p1 + 13*p2"
        );
        assert_eq!(parse_class("-1/2*e", 2).unwrap(), e.scale(&ratio(-1, 2)));
        assert_eq!(parse_class("--e", 2).unwrap(), e);
        assert_eq!(
            parse_class("-e^2", 2).unwrap(),
            -&CharClass::pontryagin(2, 2)
        );
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_class("p3", 2),
            Err(Error::IndexOutOfRange { index: 3, rank: 2 })
        );
        assert!(matches!(
            parse_class("p0", 2),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_class("e +", 2),
            Err(Error::Parse { position: 3, .. })
        ));
        assert!(matches!(
            parse_class("e p1", 2),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(parse_class("(e", 2), Err(Error::Parse { .. })));
        assert!(matches!(parse_class("1/0", 2), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_class("x1", 2),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(parse_class("p", 2), Err(Error::Parse { .. })));
    }

    fn arb_class() -> impl Strategy<Value = CharClass> {
        (1usize..=4).prop_flat_map(|n| {
            let basis = monomial_basis(n, 20);
            prop::collection::vec((0..basis.len(), -20i64..=20, 1i64..=6), 0..6).prop_map(
                move |ts| {
                    let mut c = CharClass::zero(n);
                    for (i, a, b) in ts {
                        c.add_term(basis[i].clone(), ratio(a, b));
                    }
                    c
                },
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(c in arb_class()) {
            let text = c.render(Notation::Text);
            prop_assert_eq!(parse_class(&text, c.rank()).unwrap(), c);
        }
    }
}
