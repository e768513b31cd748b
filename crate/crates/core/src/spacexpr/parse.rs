use super::{Mult, Ring, SpaceExpr};
use crate::error::ParseError;

/// Parses the expression grammar. The result is not normalized.
pub fn parse_expr(text: &str) -> Result<SpaceExpr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::new(self.pos, msg)
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError::new(start, "natural number too large"))
    }

    fn expr(&mut self) -> Result<SpaceExpr, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.eat_keyword("sum{") {
            let items = self.items(b'}')?;
            return Ok(SpaceExpr::Sum(items));
        }
        if self.eat_keyword("lim(") {
            return self.lim_body();
        }
        if self.eat_keyword("G(") {
            let x = self.expr()?;
            self.expect(b')')?;
            return Ok(SpaceExpr::g(x));
        }
        if self.eat_keyword("I(") {
            let x = self.expr()?;
            self.expect(b')')?;
            return Ok(SpaceExpr::i(x));
        }
        match self.peek() {
            Some(b'D') => {
                self.pos += 1;
                Ok(SpaceExpr::d())
            }
            Some(b'0') | Some(b'1') => {
                let n = self.nat()?;
                match n {
                    0 => Ok(SpaceExpr::Empty),
                    1 => Ok(SpaceExpr::Point),
                    _ => Err(ParseError::new(start, "only 0 and 1 are expressions")),
                }
            }
            _ => Err(self.error("expected an expression")),
        }
    }

    /// `item ("," item)*` up to the closing delimiter; at least one item.
    fn items(&mut self, close: u8) -> Result<Vec<(SpaceExpr, Mult)>, ParseError> {
        if self.peek() == Some(close) {
            return Err(self.error("empty entry list"));
        }
        let mut out = vec![self.item()?];
        while self.eat(b',') {
            out.push(self.item()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn item(&mut self) -> Result<(SpaceExpr, Mult), ParseError> {
        let m = self.mult()?;
        self.expect(b'*')?;
        let x = self.expr()?;
        Ok((x, m))
    }

    fn mult(&mut self) -> Result<Mult, ParseError> {
        if self.eat(b'w') {
            return Ok(Mult::Omega);
        }
        let at = self.pos;
        match self.nat()? {
            0 => Err(ParseError::new(at, "multiplicity must be positive")),
            n => Ok(Mult::Finite(n)),
        }
    }

    fn ring(&mut self) -> Result<Ring, ParseError> {
        self.expect(b'{')?;
        Ok(Ring::new(self.items(b'}')?))
    }

    fn lim_body(&mut self) -> Result<SpaceExpr, ParseError> {
        let mut prefix = Vec::new();
        if self.peek() != Some(b';') {
            prefix.push(self.ring()?);
            while self.eat(b',') {
                prefix.push(self.ring()?);
            }
        }
        self.expect(b';')?;
        if self.peek() == Some(b')') {
            return Err(self.error("empty tail ring"));
        }
        self.expect(b'{')?;
        if self.peek() == Some(b'}') {
            return Err(self.error("empty tail ring"));
        }
        let tail = Ring::new(self.items(b'}')?);
        self.expect(b')')?;
        Ok(SpaceExpr::Lim { prefix, tail })
    }
}
