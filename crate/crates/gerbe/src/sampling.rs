//! Deterministic sample streams.
//!
//! Every stream is ChaCha20 (rand_chacha, 20 rounds) keyed by `seed_from_u64(seed)`
//! with the stream id set to FNV-1a-64 of the identity name. Uniforms are
//! `(next_u64() >> 11) * 2^-53`; complex standard normals use Box–Muller on two
//! uniforms u₁, u₂ as √(−2 ln(1−u₁))·(cos 2πu₂ + i sin 2πu₂), so each of the real
//! and imaginary parts is N(0, 1).

use crate::lattice::{in_domain, GroupElement, HomPoint, LatticeVector, Mat3, CoVector};
use crate::special::Sl2;
use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use std::f64::consts::PI;

pub fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub struct Sampler {
    rng: ChaCha20Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: &str) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(fnv1a(stream));
        Self { rng }
    }

    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on [lo, hi).
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer on [lo, hi] (inclusive).
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.rng.next_u64() % span) as i64
    }

    pub fn cnormal(&mut self) -> Complex64 {
        let (u1, u2) = (self.uniform(), self.uniform());
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        Complex64::from_polar(r, 2.0 * PI * u2)
    }

    pub fn cnormal_scaled(&mut self, s: f64) -> Complex64 {
        self.cnormal() * s
    }

    /// A point of the upper half-plane with imaginary part in [lo, hi].
    pub fn upper(&mut self, lo: f64, hi: f64) -> Complex64 {
        Complex64::new(self.range(-0.5, 0.5), self.range(lo, hi))
    }

    pub fn sign(&mut self) -> f64 {
        if self.rng.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Random SL₂(ℤ) word in S and T^{±k}, k ≤ 2.
    pub fn sl2(&mut self, len: usize) -> Sl2 {
        let mut g: Sl2 = [[1, 0], [0, 1]];
        for _ in 0..len {
            let m: Sl2 = match self.int(0, 2) {
                0 => crate::special::SL2_S,
                _ => [[1, self.int(-2, 2)], [0, 1]],
            };
            g = crate::special::sl2_mul(&g, &m);
        }
        g
    }

    /// Random SL₃(ℤ) product of elementary matrices and signed permutations.
    pub fn sl3(&mut self, len: usize) -> Mat3 {
        let mut g = Mat3::IDENTITY;
        for _ in 0..len {
            let i = self.int(0, 2) as usize;
            let j = (i + self.int(1, 2) as usize) % 3;
            let mut e = Mat3::IDENTITY;
            if self.int(0, 3) == 0 {
                // rotation in the (i, j) plane by a quarter turn
                e.0[i][i] = 0;
                e.0[j][j] = 0;
                e.0[i][j] = -1;
                e.0[j][i] = 1;
            } else {
                e.0[i][j] = self.int(-1, 1);
            }
            g = g.mul(&e).expect("small entries");
        }
        g
    }

    pub fn covector(&mut self, bound: i64) -> CoVector {
        CoVector::new(self.int(-bound, bound), self.int(-bound, bound), self.int(-bound, bound))
    }

    pub fn primitive(&mut self, bound: i64) -> LatticeVector {
        loop {
            let v = LatticeVector::new(self.int(-bound, bound), self.int(-bound, bound), self.int(-bound, bound));
            if v.is_primitive() {
                return v;
            }
        }
    }

    pub fn group_element(&mut self, len: usize, bound: i64) -> GroupElement {
        GroupElement::new(self.sl3(len), self.covector(bound)).expect("det 1")
    }

    /// Rejection sampling of x ∈ ∩ U_a⁺ from complex Gaussians; `None` after `tries` misses.
    pub fn domain_x(&mut self, vs: &[LatticeVector], tries: usize) -> Option<[Complex64; 3]> {
        for _ in 0..tries {
            let x = [self.cnormal(), self.cnormal(), self.cnormal()];
            if vs.iter().all(|a| in_domain(a, &x)) && well_separated(vs, &x) {
                return Some(x);
            }
        }
        None
    }

    /// A point of U_a⁺ ∩ U_b⁺ ∩ U_c⁺ for an oriented basis (a, b, c): start from the
    /// dual-basis coordinates (1, (−1−i√3)/2, (−1+i√3)/2), perturb, and rescale.
    pub fn triple_x(&mut self, a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> Option<[Complex64; 3]> {
        let s3 = 3f64.sqrt();
        let base = [
            Complex64::new(1.0, 0.0),
            Complex64::new(-0.5, -s3 / 2.0),
            Complex64::new(-0.5, s3 / 2.0),
        ];
        for _ in 0..200 {
            let coords: Vec<Complex64> = base.iter().map(|z| z + self.cnormal_scaled(0.25)).collect();
            // x = Σ coordᵢ·vᵢ so that the dual basis reads off the coordinates
            let mut x = [Complex64::new(0.0, 0.0); 3];
            for (cf, v) in coords.iter().zip([a, b, c]) {
                for k in 0..3 {
                    x[k] += cf * v.0[k] as f64;
                }
            }
            let l = self.cnormal();
            if l.norm() < 0.2 {
                continue;
            }
            let x = x.map(|v| v * l);
            if [a, b, c].iter().all(|v| in_domain(v, &x)) && well_separated(&[*a, *b, *c], &x) {
                return Some(x);
            }
        }
        None
    }

    pub fn point(&mut self, x: [Complex64; 3], wscale: f64) -> HomPoint {
        let w = self.cnormal_scaled(wscale);
        HomPoint::new(w, x)
    }
}

/// Keeps samples away from the boundary of the domains, where the products converge slowly.
fn well_separated(vs: &[LatticeVector], x: &[Complex64; 3]) -> bool {
    vs.iter().all(|a| {
        let f = crate::lattice::framing_of(a).expect("primitive");
        let t = f.alpha[1].eval(x) / f.alpha[2].eval(x);
        t.im > 0.08 * t.norm().max(1.0)
    })
}
