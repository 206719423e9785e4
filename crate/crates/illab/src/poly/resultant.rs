//! Sylvester resultant of binary quadratic forms.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::PolyError;

/// Resultant of two homogeneous quadratics in (z1, z2), as the 4×4
/// Sylvester determinant of the dehomogenized forms (z2 = 1). Nonzero iff
/// the forms share no projective root. Symmetric in its arguments (the
/// sign (−1)^{2·2} is even).
pub fn resultant_binary_quadratics(f: &Polynomial, g: &Polynomial) -> Result<Complex64, PolyError> {
    for (name, p) in [("f", f), ("g", g)] {
        if !p.is_homogeneous_of_degree(2) || p.nvars() > 2 {
            return Err(PolyError::NotHomogeneous {
                which: name.to_string(),
            });
        }
    }
    let a = f.coeff(&Monomial::xy(2, 0));
    let b = f.coeff(&Monomial::xy(1, 1));
    let c = f.coeff(&Monomial::xy(0, 2));
    let d = g.coeff(&Monomial::xy(2, 0));
    let e = g.coeff(&Monomial::xy(1, 1));
    let h = g.coeff(&Monomial::xy(0, 2));
    let zero = Complex64::default();
    let m = DMatrix::from_row_slice(
        4,
        4,
        &[
            a, b, c, zero, //
            zero, a, b, c, //
            d, e, h, zero, //
            zero, d, e, h,
        ],
    );
    Ok(m.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn res(f: &str, g: &str) -> Complex64 {
        resultant_binary_quadratics(&parse_polynomial(f).unwrap(), &parse_polynomial(g).unwrap())
            .unwrap()
    }

    #[test]
    fn axis_forms_are_coprime() {
        assert!((res("z1^2", "z2^2") - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn identical_forms_vanish() {
        assert!(res("z1*z2", "z1*z2").norm() < 1e-14);
    }

    #[test]
    fn hyperbola_pair() {
        // Res(z2^2 - z1^2, z2^2 + z1^2): dehomogenized (1 - t^2, 1 + t^2),
        // product formula: lc(f)^2 · g(1) · g(-1) = (-1)^2 · 2 · 2 = 4.
        assert!((res("z2^2 - z1^2", "z2^2 + z1^2") - Complex64::new(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn symmetric_in_arguments() {
        let r1 = res("z1^2 + 2*z1*z2", "z2^2 - z1*z2");
        let r2 = res("z2^2 - z1*z2", "z1^2 + 2*z1*z2");
        assert!((r1 - r2).norm() < 1e-12);
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let f = parse_polynomial("z1^2 + z1").unwrap();
        let g = parse_polynomial("z2^2").unwrap();
        assert!(resultant_binary_quadratics(&f, &g).is_err());
    }

    #[test]
    fn shared_root_at_infinity_vanishes() {
        // both divisible by z2: common projective root [1:0]
        assert!(res("z1*z2", "z2^2").norm() < 1e-14);
    }
}
