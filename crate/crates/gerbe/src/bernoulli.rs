//! Multiple Bernoulli polynomials B_{r,n}(w, x₁…x_r), the coefficients of tⁿ/n! in
//! e^{wt} ∏ t/(e^{xⱼt} − 1), in exact rational arithmetic.

use crate::poly::{q, qi, Poly, Q};
use num::{One, Zero};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BernoulliError {
    #[error("arity must be at least 1")]
    BadArity,
    #[error("expected {expected} x-values, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("x{0} vanishes")]
    ZeroPeriod(usize),
}

/// Classical Bernoulli numbers B₀…B_m with B₁ = −1/2.
pub fn bernoulli_numbers(m: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for k in 1..=m {
        // Σ_{j<k+1} C(k+1, j) B_j = 0
        let mut s = Q::zero();
        let mut binom = Q::one();
        for (j, bj) in b.iter().enumerate() {
            s += &binom * bj;
            binom = binom * qi((k + 1 - j) as i64) / qi((j + 1) as i64);
        }
        b.push(-s / qi((k + 1) as i64));
    }
    b
}

fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * qi(k as i64))
}

/// B_{r,n} stored as N = B_{r,n}·x₁⋯x_r, a polynomial in (w, x₁, …, x_r).
#[derive(Clone, Debug, PartialEq)]
pub struct MultiBernoulli {
    pub r: usize,
    pub n: usize,
    pub numer: Poly,
}

#[derive(Serialize)]
pub struct MonomialEntry {
    /// exponents of (w, x₁, …, x_r) in the cleared numerator
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

fn cache() -> &'static Mutex<HashMap<(usize, usize), MultiBernoulli>> {
    static C: OnceLock<Mutex<HashMap<(usize, usize), MultiBernoulli>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

pub fn multi_bernoulli(r: usize, n: usize) -> Result<MultiBernoulli, BernoulliError> {
    if r == 0 {
        return Err(BernoulliError::BadArity);
    }
    if let Some(m) = cache().lock().unwrap().get(&(r, n)) {
        return Ok(m.clone());
    }
    let m = build(r, n);
    cache().lock().unwrap().insert((r, n), m.clone());
    Ok(m)
}

fn build(r: usize, n: usize) -> MultiBernoulli {
    let nv = r + 1;
    let b = bernoulli_numbers(n);
    // series coefficients of t^k
    let mut series: Vec<Poly> = (0..=n)
        .map(|k| Poly::var(nv, 0).pow(k as u32).scale(&(Q::one() / factorial(k))))
        .collect();
    for j in 1..=r {
        let factor: Vec<Poly> = (0..=n)
            .map(|k| Poly::var(nv, j).pow(k as u32).scale(&(&b[k] / factorial(k))))
            .collect();
        let mut next = vec![Poly::zero(nv); n + 1];
        for (i, si) in series.iter().enumerate() {
            for (k, fk) in factor.iter().enumerate().take(n + 1 - i) {
                next[i + k] = next[i + k].add(&si.mul(fk));
            }
        }
        series = next;
    }
    MultiBernoulli { r, n, numer: series[n].scale(&factorial(n)) }
}

impl MultiBernoulli {
    pub fn eval(&self, w: Complex64, x: &[Complex64]) -> Result<Complex64, BernoulliError> {
        if x.len() != self.r {
            return Err(BernoulliError::WrongArity { expected: self.r, got: x.len() });
        }
        if let Some(i) = x.iter().position(|v| *v == Complex64::new(0.0, 0.0)) {
            return Err(BernoulliError::ZeroPeriod(i + 1));
        }
        let mut vals = vec![w];
        vals.extend_from_slice(x);
        let den: Complex64 = x.iter().product();
        Ok(self.numer.eval(&vals) / den)
    }

    pub fn eval_real(&self, w: f64, x: &[f64]) -> Result<f64, BernoulliError> {
        let xc: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Ok(self.eval(Complex64::new(w, 0.0), &xc)?.re)
    }

    /// Exact value at rational arguments.
    pub fn eval_exact(&self, w: &Q, x: &[Q]) -> Q {
        let mut vals = vec![w.clone()];
        vals.extend_from_slice(x);
        let den = x.iter().fold(Q::one(), |a, v| a * v);
        self.numer.eval_exact(&vals) / den
    }

    pub fn monomials(&self) -> Vec<MonomialEntry> {
        self.numer
            .terms()
            .map(|(e, c)| MonomialEntry { exponents: e.clone(), coefficient: c.to_string() })
            .collect()
    }

    /// Symmetric in x₁…x_r, exactly.
    pub fn is_symmetric(&self) -> bool {
        (1..self.r).all(|i| {
            let mut map: Vec<usize> = (0..=self.r).collect();
            map.swap(i, i + 1);
            self.numer.embed(self.r + 1, &map) == self.numer
        })
    }
}

pub fn p2() -> MultiBernoulli {
    multi_bernoulli(2, 2).unwrap()
}

pub fn p3() -> MultiBernoulli {
    multi_bernoulli(3, 3).unwrap()
}

pub fn r3() -> MultiBernoulli {
    multi_bernoulli(2, 3).unwrap()
}

pub fn b12() -> MultiBernoulli {
    multi_bernoulli(1, 2).unwrap()
}

/// N_{r,n}(w + c·x_i, x) − N_{r,n}(w, x) and c·x_i·N_{r−1,n−1}(w, x̂ᵢ) as polynomials.
fn difference_sides(r: usize, n: usize, i: usize, c: &Q) -> (Poly, Poly) {
    let nv = r + 1;
    let big = multi_bernoulli(r, n).unwrap().numer;
    let mut images: Vec<Poly> = (0..nv).map(|k| Poly::var(nv, k)).collect();
    images[0] = images[0].add(&Poly::var(nv, i));
    let lhs = big.compose(&images).sub(&big);
    let small = multi_bernoulli(r - 1, n - 1).unwrap().numer;
    let map: Vec<usize> = (0..nv).filter(|&k| k != i).collect();
    let rhs = small.embed(nv, &map).mul(&Poly::var(nv, i)).scale(c);
    (lhs, rhs)
}

/// B_{r,n}(w + xᵢ, x) − B_{r,n}(w, x) = n·B_{r−1,n−1}(w, x̂ᵢ), checked exactly.
///
/// The factor n comes from the tⁿ/n! normalization of the generating function.
pub fn check_difference(r: usize, n: usize, i: usize) -> bool {
    assert!(r >= 2 && n >= 1 && (1..=r).contains(&i));
    let (lhs, rhs) = difference_sides(r, n, i, &qi(n as i64));
    lhs == rhs
}

/// The same relation with an arbitrary constant in place of n.
pub fn check_difference_with_factor(r: usize, n: usize, i: usize, c: i64) -> bool {
    let (lhs, rhs) = difference_sides(r, n, i, &qi(c));
    lhs == rhs
}

/// B_{r,n}(ζ, t₁, …) = Σ_{j<m} B_{r,n}(ζ + j t₁, m t₁, t₂, …), checked exactly.
pub fn subdivision_identity(r: usize, n: usize, m: usize) -> bool {
    assert!(r >= 1 && m >= 1);
    let nv = r + 1;
    let big = multi_bernoulli(r, n).unwrap().numer;
    let mut sum = Poly::zero(nv);
    for j in 0..m {
        let mut images: Vec<Poly> = (0..nv).map(|k| Poly::var(nv, k)).collect();
        images[0] = images[0].add(&Poly::var(nv, 1).scale(&qi(j as i64)));
        images[1] = Poly::var(nv, 1).scale(&qi(m as i64));
        sum = sum.add(&big.compose(&images));
    }
    // the cleared numerators differ by the factor m from x₁ ↦ m x₁
    sum.scale(&q(1, m as i64)) == big
}
