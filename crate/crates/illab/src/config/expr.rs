//! Closed-form coordinate expressions in ε: `+`, `-`, `*`, `/`, integer
//! powers, `sqrt`, decimal and `(re,im)` complex literals, and the
//! variable `eps`.

use num_complex::Complex64;

/// Parsed expression tree.
#[derive(Debug, Clone)]
pub enum Expr {
    Eps,
    Const(Complex64),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn eval(&self, eps: Complex64) -> Complex64 {
        match self {
            Expr::Eps => eps,
            Expr::Const(c) => *c,
            Expr::Neg(e) => -e.eval(eps),
            Expr::Add(a, b) => a.eval(eps) + b.eval(eps),
            Expr::Sub(a, b) => a.eval(eps) - b.eval(eps),
            Expr::Mul(a, b) => a.eval(eps) * b.eval(eps),
            Expr::Div(a, b) => a.eval(eps) / b.eval(eps),
            Expr::Pow(e, k) => e.eval(eps).powu(*k),
            Expr::Sqrt(e) => e.eval(eps).sqrt(),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
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
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word) {
            let after = self.src[self.pos + word.len()..].chars().next();
            if !after.is_some_and(|c| c.is_alphanumeric() || c == '_') {
                self.pos += word.len();
                return true;
            }
        }
        false
    }

    fn err(&self, msg: &str) -> String {
        format!("{msg} at byte {} of `{}`", self.pos, self.src)
    }

    fn number(&mut self) -> Result<f64, String> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('+') || self.peek() == Some('-') {
            self.bump();
        }
        let mut saw = false;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            saw = true;
        }
        if self.peek() == Some('.') {
            self.bump();
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.bump();
                saw = true;
            }
        }
        if !saw {
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
            .parse()
            .map_err(|e| self.err(&format!("bad number: {e}")))
    }
}

fn parse_sum(lx: &mut Lexer) -> Result<Expr, String> {
    let mut acc = parse_product(lx)?;
    loop {
        if lx.eat('+') {
            let rhs = parse_product(lx)?;
            acc = Expr::Add(Box::new(acc), Box::new(rhs));
        } else if lx.eat('-') {
            let rhs = parse_product(lx)?;
            acc = Expr::Sub(Box::new(acc), Box::new(rhs));
        } else {
            return Ok(acc);
        }
    }
}

fn parse_product(lx: &mut Lexer) -> Result<Expr, String> {
    let mut acc = parse_power(lx)?;
    loop {
        if lx.eat('*') {
            let rhs = parse_power(lx)?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        } else if lx.eat('/') {
            let rhs = parse_power(lx)?;
            acc = Expr::Div(Box::new(acc), Box::new(rhs));
        } else {
            return Ok(acc);
        }
    }
}

fn parse_power(lx: &mut Lexer) -> Result<Expr, String> {
    let base = parse_atom(lx)?;
    if lx.eat('^') {
        lx.skip_ws();
        let start = lx.pos;
        while lx.peek().is_some_and(|c| c.is_ascii_digit()) {
            lx.bump();
        }
        if lx.pos == start {
            return Err(lx.err("expected integer exponent"));
        }
        let k: u32 = lx.src[start..lx.pos]
            .parse()
            .map_err(|e| lx.err(&format!("bad exponent: {e}")))?;
        return Ok(Expr::Pow(Box::new(base), k));
    }
    Ok(base)
}

fn parse_atom(lx: &mut Lexer) -> Result<Expr, String> {
    lx.skip_ws();
    if lx.eat('-') {
        return Ok(Expr::Neg(Box::new(parse_atom(lx)?)));
    }
    if lx.eat_word("eps") {
        return Ok(Expr::Eps);
    }
    if lx.eat_word("sqrt") {
        if !lx.eat('(') {
            return Err(lx.err("expected `(` after sqrt"));
        }
        let inner = parse_sum(lx)?;
        if !lx.eat(')') {
            return Err(lx.err("expected `)`"));
        }
        return Ok(Expr::Sqrt(Box::new(inner)));
    }
    if lx.eat('(') {
        // complex literal `(re,im)` or parenthesized expression
        let save = lx.pos;
        if let Ok(re) = lx.number() {
            if lx.eat(',') {
                let im = lx.number()?;
                if !lx.eat(')') {
                    return Err(lx.err("expected `)` after complex literal"));
                }
                return Ok(Expr::Const(Complex64::new(re, im)));
            }
        }
        lx.pos = save;
        let inner = parse_sum(lx)?;
        if !lx.eat(')') {
            return Err(lx.err("expected `)`"));
        }
        return Ok(inner);
    }
    let x = lx.number()?;
    Ok(Expr::Const(Complex64::new(x, 0.0)))
}

/// Parse a coordinate expression.
pub fn parse_expr(src: &str) -> Result<Expr, String> {
    let mut lx = Lexer { src, pos: 0 };
    let e = parse_sum(&mut lx)?;
    lx.skip_ws();
    if lx.pos != src.len() {
        return Err(lx.err("trailing input"));
    }
    Ok(e)
}
