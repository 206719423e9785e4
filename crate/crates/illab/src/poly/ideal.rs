//! Zero-dimensional ideals under a degree cap: reduced echelon bases,
//! quotient staircases, lengths, normal forms and membership.
//!
//! The engine is linear-algebraic: the degree-≤cap slice of the ideal is
//! spanned by monomial multiples of the generators (a Macaulay block),
//! row-reduced against the graded-lex column order. Pivot monomials form
//! the leading-term set; the complementary monomials are the staircase,
//! automatically closed under divisibility.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::linalg::rref;
use crate::tol::Tolerances;

use super::monomial::{monomials_upto, Monomial};
use super::polynomial::Polynomial;
use super::PolyError;

/// Length (co-length) of an ideal: the dimension of the quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Length::Finite(n) => Some(*n),
            Length::Infinite => None,
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n as u64),
            Length::Infinite => s.serialize_none(),
        }
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

/// An ideal presented by generators, with its reduced graded-lex basis
/// and quotient staircase cached up to a degree cap. Immutable after
/// construction.
#[derive(Debug, Clone)]
pub struct Ideal {
    generators: Vec<Polynomial>,
    cap: u32,
    /// Reduced echelon basis of the degree-≤cap slice, descending by
    /// leading monomial. Each row is monic with staircase-only tail.
    basis: Vec<Polynomial>,
    leading: Vec<Monomial>,
    staircase: Vec<Monomial>,
    length: Length,
    nvars: usize,
}

struct SliceReduction {
    basis: Vec<Polynomial>,
    leading: Vec<Monomial>,
    staircase: Vec<Monomial>,
    closed: bool,
}

fn reduce_slice(gens: &[Polynomial], nvars: usize, cap: u32, tol: &Tolerances) -> SliceReduction {
    let cols = monomials_upto(nvars, cap);
    let col_index: std::collections::HashMap<&Monomial, usize> =
        cols.iter().enumerate().map(|(i, m)| (m, i)).collect();

    // Macaulay block: monomial multiples of each generator up to the cap,
    // each row normalized to unit sup norm so pivot thresholds are
    // scale-free.
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for g in gens {
        let gdeg = match g.degree() {
            Some(d) => d,
            None => continue,
        };
        if gdeg > cap {
            continue;
        }
        for m in monomials_upto(nvars, cap - gdeg) {
            let prod = g.mul_monomial(&m, Complex64::new(1.0, 0.0));
            let scale = prod.max_coeff();
            if scale == 0.0 {
                continue;
            }
            let mut row = vec![Complex64::default(); cols.len()];
            for (mm, c) in prod.terms() {
                row[col_index[mm]] = c / scale;
            }
            rows.push(row);
        }
    }

    if rows.is_empty() {
        return SliceReduction {
            basis: Vec::new(),
            leading: Vec::new(),
            staircase: cols,
            closed: false,
        };
    }

    let nrows = rows.len();
    let mut mat = DMatrix::from_fn(nrows, cols.len(), |r, c| rows[r][c]);
    // pivot on the largest monomials first
    let order: Vec<usize> = (0..cols.len()).rev().collect();
    let pivots = rref(&mut mat, &order, tol.svd_rank);

    let mut basis = Vec::with_capacity(pivots.len());
    let mut leading = Vec::with_capacity(pivots.len());
    let mut pivot_cols = vec![false; cols.len()];
    for &(r, c) in &pivots {
        pivot_cols[c] = true;
        let mut p = Polynomial::zero();
        for (j, m) in cols.iter().enumerate() {
            let v = mat[(r, j)];
            if v.norm() > 0.0 {
                p.add_term(m.clone(), v);
            }
        }
        p.cleanup(tol.coeff_cleanup);
        leading.push(cols[c].clone());
        basis.push(p);
    }

    let staircase: Vec<Monomial> = cols
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivot_cols[*i])
        .map(|(_, m)| m.clone())
        .collect();

    // The staircase is complete iff no staircase monomial sits at the cap
    // boundary: then every higher-degree monomial is divisible by a
    // leading monomial.
    let closed = staircase.iter().all(|m| m.degree() < cap);

    SliceReduction {
        basis,
        leading,
        staircase,
        closed,
    }
}

impl Ideal {
    /// Build an ideal from generators, echelonizing the degree-≤cap slice.
    /// If the staircase is not closed under the cap, the cap is raised by
    /// 2 once; a staircase still touching the boundary reports
    /// `Length::Infinite`.
    pub fn from_generators(
        generators: Vec<Polynomial>,
        cap: u32,
        tol: &Tolerances,
    ) -> Result<Ideal, PolyError> {
        let mut gens: Vec<Polynomial> = generators;
        for g in &mut gens {
            g.cleanup(tol.coeff_cleanup);
        }
        gens.retain(|g| !g.is_zero());
        if gens.is_empty() {
            return Err(PolyError::ZeroIdeal);
        }
        let nvars = gens.iter().map(|g| g.nvars()).max().unwrap_or(2).max(2);
        let min_cap = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
        let cap = cap.max(min_cap);

        let first = reduce_slice(&gens, nvars, cap, tol);
        let (red, cap) = if first.closed {
            (first, cap)
        } else {
            let retry = reduce_slice(&gens, nvars, cap + 2, tol);
            (retry, cap + 2)
        };
        let length = if red.closed {
            Length::Finite(red.staircase.len())
        } else {
            Length::Infinite
        };
        Ok(Ideal {
            generators: gens,
            cap,
            basis: red.basis,
            leading: red.leading,
            staircase: red.staircase,
            length,
            nvars,
        })
    }

    /// Replace the generator list by the rows of the reduced basis whose
    /// leading monomials are minimal (not divisible by another leading
    /// monomial). The extraction is verified by regeneration; if the
    /// minimal rows do not regenerate the same staircase, the presentation
    /// is left unchanged.
    pub fn with_minimal_generators(self, tol: &Tolerances) -> Ideal {
        let minimal: Vec<Polynomial> = self
            .basis
            .iter()
            .zip(&self.leading)
            .filter(|(_, lm)| {
                !self
                    .leading
                    .iter()
                    .any(|other| other != *lm && other.divides(lm))
            })
            .map(|(p, _)| p.clone())
            .collect();
        if minimal.is_empty() {
            return self;
        }
        match Ideal::from_generators(minimal.clone(), self.cap, tol) {
            Ok(regen) if regen.staircase == self.staircase => Ideal {
                generators: minimal,
                ..regen
            },
            _ => self,
        }
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn reduced_basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    /// Standard monomials of the quotient, ascending graded-lex.
    pub fn staircase(&self) -> &[Monomial] {
        &self.staircase
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn length(&self) -> Length {
        self.length
    }

    /// Remainder of `f` after reduction against the cached basis: the
    /// unique representative supported on the staircase. For `deg f`
    /// beyond the cap the slice is rebuilt at a larger cap from the
    /// stored generators.
    pub fn normal_form(&self, f: &Polynomial, tol: &Tolerances) -> Result<Polynomial, PolyError> {
        let fdeg = f.degree().unwrap_or(0);
        if fdeg > self.cap {
            let bigger = Ideal::from_generators(self.generators.clone(), fdeg, tol)?;
            if fdeg > bigger.cap {
                return Err(PolyError::CapTooSmall {
                    cap: bigger.cap,
                    needed: fdeg,
                });
            }
            return bigger.normal_form(f, tol);
        }
        let scale = f.max_coeff();
        let mut rem = f.clone();
        // Basis rows are fully reduced against each other, so one sweep in
        // descending leading-monomial order projects onto the staircase.
        for (row, lm) in self.basis.iter().zip(&self.leading) {
            let c = rem.coeff(lm);
            if c.norm() > 0.0 {
                rem = &rem - &row.scaled(c);
            }
        }
        if scale > 0.0 {
            let drop = tol.coeff_cleanup * scale;
            let mut cleaned = Polynomial::zero();
            for (m, c) in rem.terms() {
                if c.norm() > drop {
                    cleaned.add_term(m.clone(), *c);
                }
            }
            rem = cleaned;
        }
        Ok(rem)
    }

    /// Membership test: ‖normal_form(f)‖ ≤ membership·‖f‖ in sup norm.
    pub fn contains(&self, f: &Polynomial, tol: &Tolerances) -> Result<bool, PolyError> {
        if f.is_zero() {
            return Ok(true);
        }
        let nf = self.normal_form(f, tol)?;
        Ok(nf.max_coeff() <= tol.membership * f.max_coeff())
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal, tol: &Tolerances) -> Result<bool, PolyError> {
        for g in &other.generators {
            if !self.contains(g, tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal, tol: &Tolerances) -> Result<bool, PolyError> {
        Ok(self.contains_ideal(other, tol)? && other.contains_ideal(self, tol)?)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}

/// The k-th power 𝔐₀ᵏ of the maximal ideal at the origin of ℂ²:
/// generated by all monomials of total degree k; length k(k+1)/2.
pub fn power_ideal(k: u32, tol: &Tolerances) -> Ideal {
    assert!(k >= 1, "power_ideal requires k >= 1");
    let gens: Vec<Polynomial> = super::monomial::monomials_of_degree_2v(k)
        .into_iter()
        .map(|m| Polynomial::from_monomial(m, Complex64::new(1.0, 0.0)))
        .collect();
    Ideal::from_generators(gens, k + 1, tol).expect("monomial generators are nonzero")
}
