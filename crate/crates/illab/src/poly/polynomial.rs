//! Sparse complex polynomials keyed by monomials in graded-lex order.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::monomial::Monomial;

const ZERO_DROP: f64 = 0.0;

/// Sparse polynomial with complex coefficients. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Complex64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Complex64) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one() -> Self {
        Polynomial::constant(Complex64::new(1.0, 0.0))
    }

    /// The variable z_{j+1} (0-based index).
    pub fn var(j: usize) -> Self {
        Polynomial::from_monomial(Monomial::var(j), Complex64::new(1.0, 0.0))
    }

    pub fn from_monomial(m: Monomial, c: Complex64) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    /// c · z1^a · z2^b convenience constructor.
    pub fn term_xy(c: Complex64, a: u32, b: u32) -> Self {
        Polynomial::from_monomial(Monomial::xy(a, b), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        if c.norm() <= ZERO_DROP {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry += c;
        if entry.norm() == 0.0 {
            self.terms.remove(&m);
        }
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Largest monomial in graded-lex order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Complex64 {
        self.terms.values().next_back().copied().unwrap_or_default()
    }

    /// Sup norm of the coefficient vector.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drop coefficients below `rel_tol` times the largest one.
    pub fn cleanup(&mut self, rel_tol: f64) {
        let scale = self.max_coeff();
        if scale == 0.0 {
            return;
        }
        self.terms.retain(|_, c| c.norm() > rel_tol * scale);
    }

    pub fn scaled(&self, c: Complex64) -> Polynomial {
        if c.norm() == 0.0 {
            return Polynomial::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    /// Make the graded-lex leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        let lc = self.leading_coeff();
        if lc.norm() == 0.0 {
            return self.clone();
        }
        self.scaled(Complex64::new(1.0, 0.0) / lc)
    }

    /// Multiply by a single monomial.
    pub fn mul_monomial(&self, m: &Monomial, c: Complex64) -> Polynomial {
        let mut out = Polynomial::zero();
        for (mm, cc) in &self.terms {
            out.add_term(mm.mul(m), *cc * c);
        }
        out
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::default();
        for (m, c) in &self.terms {
            let mut t = *c;
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= point[j].powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Component of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), *c);
            }
        }
        out
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.nvars()).max().unwrap_or(0)
    }

    /// Substitute z ↦ A·z for a 2×2 matrix A acting on (z1, z2).
    pub fn substitute_linear(&self, a: &[[Complex64; 2]; 2]) -> Polynomial {
        let img1 = {
            let mut p = Polynomial::term_xy(a[0][0], 1, 0);
            p = &p + &Polynomial::term_xy(a[0][1], 0, 1);
            p
        };
        let img2 = {
            let mut p = Polynomial::term_xy(a[1][0], 1, 0);
            p = &p + &Polynomial::term_xy(a[1][1], 0, 1);
            p
        };
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(*c);
            for _ in 0..m.exponent(0) {
                t = &t * &img1;
            }
            for _ in 0..m.exponent(1) {
                t = &t * &img2;
            }
            out = &out + &t;
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -*c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scaled(Complex64::new(-1.0, 0.0))
    }
}

fn fmt_f64(x: f64) -> String {
    // shortest round-trip representation, stable across runs
    format!("{x}")
}

impl fmt::Display for Polynomial {
    /// Text form `c * z1^a * z2^b` with terms joined by `+`/`-`, leading
    /// term first (descending graded-lex). Complex coefficients print as
    /// `(re,im)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (lead_sign, coeff_str) = if c.im == 0.0 {
                let mag = c.re.abs();
                let body = if mag == 1.0 && m.degree() > 0 {
                    String::new()
                } else {
                    fmt_f64(mag)
                };
                (c.re < 0.0, body)
            } else {
                (false, format!("({},{})", fmt_f64(c.re), fmt_f64(c.im)))
            };
            if first {
                if lead_sign {
                    write!(f, "-")?;
                }
                first = false;
            } else if lead_sign {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (coeff_str.is_empty(), m.degree() == 0) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{m}")?,
                (false, true) => write!(f, "{coeff_str}")?,
                (false, false) => write!(f, "{coeff_str} * {m}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn arithmetic_and_eval() {
        // (z1 + z2)^2 = z1^2 + 2 z1 z2 + z2^2
        let s = &Polynomial::var(0) + &Polynomial::var(1);
        let sq = &s * &s;
        assert_eq!(sq.coeff(&Monomial::xy(2, 0)), c(1.0, 0.0));
        assert_eq!(sq.coeff(&Monomial::xy(1, 1)), c(2.0, 0.0));
        assert_eq!(sq.coeff(&Monomial::xy(0, 2)), c(1.0, 0.0));
        let v = sq.eval(&[c(2.0, 0.0), c(-1.0, 1.0)]);
        // (2 + (-1+i))^2 = (1+i)^2 = 2i
        assert!((v - c(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn leading_monomial_is_graded_lex_max() {
        let p = &Polynomial::term_xy(c(3.0, 0.0), 1, 1) + &Polynomial::term_xy(c(1.0, 0.0), 0, 2);
        assert_eq!(p.leading_monomial().unwrap(), &Monomial::xy(1, 1));
    }

    #[test]
    fn display_formats() {
        let p = &(&Polynomial::term_xy(c(1.0, 0.0), 2, 0)
            - &Polynomial::term_xy(c(0.5, 0.0), 0, 2))
            + &Polynomial::term_xy(c(0.0, 1.0), 1, 0);
        assert_eq!(p.to_string(), "z1^2 - 0.5 * z2^2 + (0,1) * z1");
    }

    #[test]
    fn substitute_diagonal() {
        // f = z1*z2, A = diag(2, 3i): f(Az) = 6i z1 z2
        let f = Polynomial::term_xy(c(1.0, 0.0), 1, 1);
        let a = [[c(2.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 3.0)]];
        let g = f.substitute_linear(&a);
        assert_eq!(g.num_terms(), 1);
        assert!((g.coeff(&Monomial::xy(1, 1)) - c(0.0, 6.0)).norm() < 1e-14);
    }
}
