//! Parser for the polynomial text grammar used in configs and reports:
//! terms `c * z1^a * z2^b` joined by `+`/`-`, complex coefficients as
//! `(re,im)`, real coefficients as plain literals.

use num_complex::Complex64;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::PolyError;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse(format!("{msg} at byte {} of `{}`", self.pos, self.src))
    }

    fn number(&mut self) -> Result<f64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('+') || self.peek() == Some('-') {
            self.bump();
        }
        let mut saw_digit = false;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            saw_digit = true;
        }
        if self.eat('.') {
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
                saw_digit = true;
            }
        }
        if !saw_digit {
            return Err(self.err("expected number"));
        }
        if self.peek() == Some('e') || self.peek() == Some('E') {
            let save = self.pos;
            self.bump();
            if self.peek() == Some('+') || self.peek() == Some('-') {
                self.bump();
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
            } else {
                self.pos = save;
            }
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map_err(|e| self.err(&format!("bad float: {e}")))
    }

    fn integer(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        self.src[start..self.pos]
            .parse::<u32>()
            .map_err(|e| self.err(&format!("bad integer: {e}")))
    }
}

/// Parse one term's factors: an optional coefficient and monomial parts.
fn parse_term(cur: &mut Cursor) -> Result<(Complex64, Monomial), PolyError> {
    let mut coeff = Complex64::new(1.0, 0.0);
    let mut mono = Monomial::one();
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some('(') => {
                cur.bump();
                let re = cur.number()?;
                cur.skip_ws();
                if !cur.eat(',') {
                    return Err(cur.err("expected `,` in complex literal"));
                }
                let im = cur.number()?;
                cur.skip_ws();
                if !cur.eat(')') {
                    return Err(cur.err("expected `)` in complex literal"));
                }
                coeff *= Complex64::new(re, im);
            }
            Some('z') => {
                cur.bump();
                let var = cur.integer()?;
                if var == 0 {
                    return Err(cur.err("variables are numbered from z1"));
                }
                let exp = if cur.eat('^') { cur.integer()? } else { 1 };
                let mut e = vec![0u32; var as usize];
                e[(var - 1) as usize] = exp;
                mono = mono.mul(&Monomial::new(e));
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let x = cur.number()?;
                coeff *= Complex64::new(x, 0.0);
            }
            _ => return Err(cur.err("expected coefficient or variable")),
        }
        cur.skip_ws();
        if cur.eat('*') {
            continue;
        }
        break;
    }
    Ok((coeff, mono))
}

/// Parse the full grammar. See the module docs for the shape.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, PolyError> {
    let mut cur = Cursor::new(src);
    let mut out = Polynomial::zero();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    if src.trim() == "0" {
        return Ok(out);
    }
    let mut sign = if cur.eat('-') {
        -1.0
    } else {
        cur.eat('+');
        1.0
    };
    loop {
        let (c, m) = parse_term(&mut cur)?;
        out.add_term(m, c * sign);
        cur.skip_ws();
        match cur.peek() {
            Some('+') => {
                cur.bump();
                sign = 1.0;
            }
            Some('-') => {
                cur.bump();
                sign = -1.0;
            }
            None => break,
            Some(_) => return Err(cur.err("expected `+`, `-` or end")),
        }
    }
    Ok(out)
}
