use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_bigint::BigInt;

/// Byte cursor over ASCII input with 1-based error columns.
pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor { src: text.as_bytes(), pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn column(&mut self) -> usize {
        self.skip_ws();
        self.pos + 1
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    pub(crate) fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let k = kw.as_bytes();
        if self.src[self.pos..].starts_with(k) {
            let next = self.src.get(self.pos + k.len());
            if next.is_none_or(|c| !c.is_ascii_alphanumeric()) {
                self.pos += k.len();
                return true;
            }
        }
        false
    }

    pub(crate) fn error(&mut self, message: impl Into<String>) -> Error {
        let column = self.column();
        let message = message.into();
        let found = match self.src.get(self.pos) {
            Some(&c) => format!("{message}, found '{}'", c as char),
            None => format!("{message}, found end of input"),
        };
        Error::Syntax { column, message: found }
    }

    pub(crate) fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    pub(crate) fn small_uint(&mut self) -> Result<u64> {
        let col = self.column();
        let n = self.uint()?;
        u64::try_from(n).map_err(|_| Error::Syntax { column: col, message: "integer too large".into() })
    }

    pub(crate) fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let col = self.column();
        let n = self.uint()?;
        let n = if neg { -n } else { n };
        i64::try_from(n).map_err(|_| Error::Syntax { column: col, message: "integer too large".into() })
    }

    /// `["-"] uint ["/" uint]`
    pub(crate) fn rational(&mut self) -> Result<Scalar> {
        let neg = self.eat(b'-');
        let num = self.uint()?;
        let col = self.column() + 1;
        let den = if self.eat(b'/') { self.uint()? } else { BigInt::from(1) };
        let s = Scalar::from_big(num, den).ok_or(Error::Syntax { column: col, message: "zero denominator".into() })?;
        Ok(if neg { -s } else { s })
    }

    pub(crate) fn starts_rational(&mut self) -> bool {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_digit() => true,
            Some(b'-') => {
                let mut p = self.pos + 1;
                while p < self.src.len() && self.src[p].is_ascii_whitespace() {
                    p += 1;
                }
                self.src.get(p).is_some_and(|c| c.is_ascii_digit())
            }
            _ => false,
        }
    }

    pub(crate) fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected input"))
        }
    }
}
