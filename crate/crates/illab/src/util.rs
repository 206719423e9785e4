//! Deterministic sampling helpers: a small splittable PRNG for seeded test
//! data and Halton sequences for low-discrepancy sphere samples.

use num_complex::Complex64;

/// SplitMix64. Deterministic, seedable, dependency-free; used wherever
/// "random" data must be bit-reproducible across runs.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform in [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Complex with re, im uniform in [-1, 1).
    pub fn next_complex(&mut self) -> Complex64 {
        Complex64::new(self.range(-1.0, 1.0), self.range(-1.0, 1.0))
    }
}

/// Halton radical-inverse in the given base, index starting at 0.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let b = base as f64;
    index += 1; // skip the origin
    while index > 0 {
        f /= b;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// k-th point of a Halton (2,3,5) sequence on the unit sphere of ℂ²,
/// via |z₁| = cos(πu/2), |z₂| = sin(πu/2) and independent phases.
pub fn halton_sphere_point(k: u64) -> [Complex64; 2] {
    let u = halton(k, 2);
    let v = halton(k, 3);
    let w = halton(k, 5);
    let (s, c) = (std::f64::consts::FRAC_PI_2 * u).sin_cos();
    let phase1 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * v);
    let phase2 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * w);
    [c * phase1, s * phase2]
}

/// Unit complex number from a phase angle.
pub fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}
