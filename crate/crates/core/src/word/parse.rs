use super::Expr;
use crate::error::{Error, Result};

pub(super) fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = p.product()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        let found = match self.src.get(self.pos) {
            Some(&c) => format!("{message} (found {:?})", c as char),
            None => format!("{message} (found end of input)"),
        };
        Error::WordSyntax {
            offset: self.pos,
            message: found,
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {:?}", c as char)))
        }
    }

    fn starts_atom(c: u8) -> bool {
        matches!(c, b'x' | b'y' | b'z' | b'1' | b'(' | b'[')
    }

    fn product(&mut self) -> Result<Expr> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(self.factor()?);
                }
                Some(c) if Self::starts_atom(c) => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            base = match self.integer_exponent()? {
                Some(k) => Expr::Power(Box::new(base), k),
                None => Expr::Conjugate(Box::new(base), Box::new(self.atom()?)),
            };
        }
        Ok(base)
    }

    /// An integer exponent, bare or parenthesized; `None` if the exponent is
    /// a word (conjugation). Leaves the position untouched in that case.
    fn integer_exponent(&mut self) -> Result<Option<i64>> {
        let start = self.pos;
        let parenthesized = self.peek() == Some(b'(');
        if parenthesized {
            self.pos += 1;
        }
        match self.peek() {
            Some(c) if c == b'-' || c == b'+' || c.is_ascii_digit() => {}
            _ => {
                self.pos = start;
                return Ok(None);
            }
        }
        let num_start = self.pos;
        if matches!(self.src[self.pos], b'-' | b'+') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected digits after sign"));
        }
        let literal = std::str::from_utf8(&self.src[num_start..self.pos]).expect("ascii");
        let value: i64 = literal
            .parse()
            .map_err(|_| Error::ExponentOverflow(literal.to_string()))?;
        if parenthesized {
            if self.peek() != Some(b')') {
                // a word that starts with a digit, e.g. `(1^-1)`
                self.pos = start;
                return Ok(None);
            }
            self.pos += 1;
        }
        Ok(Some(value))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(&d) if (b'1'..=b'9').contains(&d) => {
                        self.pos += 1;
                        if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                            return Err(self.error("variable index must be a single digit 1-9"));
                        }
                        Ok(Expr::Var((d - b'1') as usize))
                    }
                    _ => Ok(Expr::Var(0)),
                }
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Expr::Var(1))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(Expr::Var(2))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Expr::identity())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut acc = self.product()?;
                self.expect(b',')?;
                loop {
                    let next = self.product()?;
                    acc = Expr::Commutator(Box::new(acc), Box::new(next));
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        _ => break,
                    }
                }
                self.expect(b']')?;
                Ok(acc)
            }
            _ => Err(self.error("expected a variable, '1', '(' or '['")),
        }
    }
}
