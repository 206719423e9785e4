//! Double-double arithmetic (~31 significant digits) for the per-sample
//! frame pipeline on ill-conditioned collapsing grids.
//!
//! A value is an unevaluated sum hi + lo with |lo| ≤ ulp(hi)/2. Products
//! use the FMA-based two-product; division and square root refine a
//! double-precision seed with one Newton step.

/// Double-double real number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

#[allow(clippy::should_implement_trait)]
impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        // double seed + one Newton-ish correction
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul(Dd::from_f64(q1)));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul(Dd::from_f64(q2)));
        let q3 = r2.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        // Karp's trick: x ≈ 1/sqrt(a); s = a·x; e = (a − s²)·x/2
        let x = 1.0 / self.hi.sqrt();
        let s = self.hi * x;
        let sd = Dd::from_f64(s);
        let e = self.sub(sd.mul(sd)).hi * (x * 0.5);
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }
}

/// Double-double complex number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdC {
    pub re: Dd,
    pub im: Dd,
}

#[allow(clippy::should_implement_trait)]
impl DdC {
    pub const ZERO: DdC = DdC {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };
    pub const ONE: DdC = DdC {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_c64(z: num_complex::Complex64) -> DdC {
        DdC {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    #[inline]
    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    #[inline]
    pub fn add(self, o: DdC) -> DdC {
        DdC {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    #[inline]
    pub fn sub(self, o: DdC) -> DdC {
        DdC {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    #[inline]
    pub fn mul(self, o: DdC) -> DdC {
        DdC {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    pub fn conj(self) -> DdC {
        DdC {
            re: self.re,
            im: self.im.neg(),
        }
    }

    #[inline]
    pub fn norm_sqr(self) -> Dd {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }

    pub fn div(self, o: DdC) -> DdC {
        let den = o.norm_sqr();
        let num = self.mul(o.conj());
        DdC {
            re: num.re.div(den),
            im: num.im.div(den),
        }
    }

    #[inline]
    pub fn scale(self, s: Dd) -> DdC {
        DdC {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_recovers_cancelled_digits() {
        // (1 + 1e-20) - 1 is 0 in f64 but exact in dd
        let a = Dd::from_f64(1.0).add(Dd { hi: 1e-20, lo: 0.0 });
        let d = a.sub(Dd::ONE);
        assert!((d.to_f64() - 1e-20).abs() < 1e-33);
    }

    #[test]
    fn dd_mul_div_roundtrip() {
        let a = Dd::from_f64(std::f64::consts::PI);
        let b = Dd::from_f64(1.0 / 3.0).add(Dd { hi: 1e-18, lo: 0.0 });
        let q = a.mul(b).div(b);
        let err = q.sub(a);
        assert!(err.to_f64().abs() < 1e-30);
    }

    #[test]
    fn dd_sqrt_squares_back() {
        let a = Dd::from_f64(2.0);
        let r = a.sqrt();
        let back = r.mul(r).sub(a);
        assert!(back.to_f64().abs() < 1e-30);
    }

    #[test]
    fn ddc_division() {
        let a = DdC::from_c64(num_complex::Complex64::new(3.0, -4.5));
        let b = DdC::from_c64(num_complex::Complex64::new(-0.7, 0.2));
        let q = a.div(b);
        let back = q.mul(b).sub(a);
        assert!(back.norm_sqr().to_f64().sqrt() < 1e-29);
    }
}
