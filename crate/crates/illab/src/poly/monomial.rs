//! Monomials in n variables with the graded lexicographic order, z1 > z2.

use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial. Trailing zero exponents are trimmed, so
/// `z1` is the same monomial regardless of the ambient variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let mut e = exponents;
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    /// The constant monomial 1.
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Monomial z1^a · z2^b.
    pub fn xy(a: u32, b: u32) -> Self {
        Monomial::new(vec![a, b])
    }

    /// Single variable z_{j+1} (0-based index).
    pub fn var(j: usize) -> Self {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        Monomial(e)
    }

    pub fn exponent(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new(
            (0..n)
                .map(|j| self.exponent(j) + other.exponent(j))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(j, &e)| e <= other.exponent(j))
    }

    /// Componentwise α < 𝒩 against a shape vector.
    pub fn below_shape(&self, shape: &[usize]) -> bool {
        (0..shape.len().max(self.0.len()))
            .all(|j| (self.exponent(j) as usize) < shape.get(j).copied().unwrap_or(1))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic with z1 > z2 > …: compare total degree first,
    /// then the exponent of the earliest variable where they differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {
                let n = self.0.len().max(other.0.len());
                for j in 0..n {
                    match self.exponent(j).cmp(&other.exponent(j)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "z{}", j + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials in `nvars` variables of total degree ≤ `cap`, ascending
/// in the graded-lex order.
pub fn monomials_upto(nvars: usize, cap: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, current: &mut Vec<u32>, j: usize, remaining: u32) {
        if j == current.len() {
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in 0..=remaining {
            current[j] = e;
            rec(out, current, j + 1, remaining - e);
        }
        current[j] = 0;
    }
    rec(&mut out, &mut current, 0, cap);
    out.sort();
    out
}

/// All monomials of total degree exactly `d` in 2 variables, ascending.
pub fn monomials_of_degree_2v(d: u32) -> Vec<Monomial> {
    (0..=d).map(|a| Monomial::xy(a, d - a)).collect()
}
