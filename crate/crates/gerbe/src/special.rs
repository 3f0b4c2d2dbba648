//! θ₀, the elliptic gamma function on all four chambers, the multiple elliptic
//! gammas G_n and the SL₂(ℤ) theta multiplier.

use crate::bernoulli::multi_bernoulli;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Factors closer than this to zero are reported instead of evaluated.
pub const POLE_ZERO_EPS: f64 = 1e-13;
/// |log| beyond which a value is reported as out of range.
const LOG_RANGE: f64 = 690.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecialError {
    #[error("modular parameter has zero imaginary part")]
    RealModulus,
    #[error("argument outside the supported chamber: {0}")]
    Chamber(&'static str),
    #[error("pole or zero of the product at index {index:?}")]
    PoleZero { index: Vec<i64> },
    #[error("truncation needs {needed} terms per direction, cap is {cap}")]
    TooManyTerms { needed: usize, cap: usize },
    #[error("value out of floating-point range (log-modulus {0:.1})")]
    OutOfRange(f64),
    #[error("singular transformation: c·τ + d = 0")]
    Singular,
}

pub type Result<T> = std::result::Result<T, SpecialError>;

impl SpecialError {
    /// Conditions a sampler should answer by drawing a new point.
    pub fn is_resample(&self) -> bool {
        matches!(self, Self::PoleZero { .. } | Self::TooManyTerms { .. } | Self::OutOfRange(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    /// bound on |log| of the neglected tail
    pub tol: f64,
    /// cap on the number of terms per product direction
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self { tol: 1e-15, max_terms: 1500 }
    }
}

/// A value together with the bound on |log| of the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eval {
    pub value: Complex64,
    pub tail_bound: f64,
}

impl Eval {
    pub fn exact(value: Complex64) -> Self {
        Self { value, tail_bound: 0.0 }
    }

    pub fn inv(self) -> Self {
        Self { value: self.value.inv(), tail_bound: self.tail_bound }
    }

    pub fn mul(self, o: Self) -> Self {
        Self { value: self.value * o.value, tail_bound: self.tail_bound + o.tail_bound }
    }
}

/// Running product kept as mantissa × e^scale, so long products neither overflow nor underflow.
#[derive(Debug, Clone, Copy)]
pub struct ScaledProduct {
    m: Complex64,
    scale: f64,
}

impl Default for ScaledProduct {
    fn default() -> Self {
        Self { m: ONE, scale: 0.0 }
    }
}

impl ScaledProduct {
    pub fn mul(&mut self, f: Complex64) {
        self.m *= f;
        let a = self.m.norm();
        if !(1e-100..=1e100).contains(&a) && a > 0.0 {
            self.scale += a.ln();
            self.m /= a;
        }
    }

    pub fn div(&mut self, f: Complex64) {
        self.mul(f.inv())
    }

    pub fn absorb(&mut self, o: &ScaledProduct) {
        self.mul(o.m);
        self.scale += o.scale;
    }

    pub fn log_norm(&self) -> f64 {
        self.scale + self.m.norm().ln()
    }

    pub fn finish(&self) -> Result<Complex64> {
        let l = self.log_norm();
        if !l.is_finite() || l.abs() > LOG_RANGE {
            return Err(SpecialError::OutOfRange(l));
        }
        Ok(self.m * self.scale.exp())
    }
}

/// e^{2πit}, reducing Re t modulo 1 first.
pub fn e(t: Complex64) -> Complex64 {
    let re = t.re - t.re.round();
    Complex64::from_polar((-2.0 * PI * t.im).exp(), 2.0 * PI * re)
}

/// 1 − e^{2πit}, accurate near the zeros t ∈ ℤ.
pub fn one_minus_e(t: Complex64) -> Complex64 {
    let r = Complex64::new(t.re - t.re.round(), t.im);
    if r.norm() < 0.25 {
        -2.0 * I * (PI * r).sin() * (I * PI * r).exp()
    } else {
        ONE - e(r)
    }
}

fn reduce(t: Complex64) -> Complex64 {
    Complex64::new(t.re - t.re.round(), t.im)
}

/// Smallest J ≥ 1 with c·ρ^J ≤ `target` and c·ρ^J ≤ 1/2.
fn terms_needed(c: f64, rho: f64, target: f64, cap: usize) -> Result<usize> {
    let goal = target.min(0.5);
    let need = if c <= goal { 1.0 } else { ((goal / c).ln() / rho.ln()).ceil().max(1.0) };
    if !need.is_finite() || need > cap as f64 {
        return Err(SpecialError::TooManyTerms { needed: if need.is_finite() { need as usize } else { usize::MAX }, cap });
    }
    Ok(need as usize)
}

/// ∏_{j≥0}(1 − q^{j+1}/y)(1 − q^j y) with q = e^{2πiτ}, y = e^{2πiz}, Im τ > 0.
fn theta_upper(z: Complex64, tau: Complex64, pol: &TruncationPolicy) -> Result<Eval> {
    let (z, tau) = (reduce(z), reduce(tau));
    let rho = (-2.0 * PI * tau.im).exp();
    let c = (2.0 * PI * z.im).exp() * rho + (-2.0 * PI * z.im).exp();
    // tail Σ_{j≥J} |u_j|/(1−|u_j|) ≤ 2c ρ^J/(1−ρ)
    let jn = terms_needed(c, rho, pol.tol * (1.0 - rho) / 2.0, pol.max_terms)?;
    let tail = 2.0 * c * rho.powi(jn as i32) / (1.0 - rho);
    let mut p = ScaledProduct::default();
    for j in 0..jn {
        let jf = j as f64;
        for (k, t) in [(0, (jf + 1.0) * tau - z), (1, jf * tau + z)] {
            let f = one_minus_e(t);
            if f.norm() < POLE_ZERO_EPS {
                return Err(SpecialError::PoleZero { index: vec![j as i64, k] });
            }
            p.mul(f);
        }
    }
    Ok(Eval { value: p.finish()?, tail_bound: tail })
}

/// θ₀(z, τ); for Im τ < 0 via θ₀(z, τ) = 1/θ₀(−z, −τ).
pub fn theta0(z: Complex64, tau: Complex64, pol: &TruncationPolicy) -> Result<Eval> {
    if tau.im > 0.0 {
        theta_upper(z, tau, pol)
    } else if tau.im < 0.0 {
        Ok(theta_upper(-z, -tau, pol)?.inv())
    } else {
        Err(SpecialError::RealModulus)
    }
}

/// Double product ∏_{j,k≥0} (1 − y₁q^j p^k)^{+1} (1 − y₂ q^j p^k)^{−1}, given the
/// exponents t₁ + jτ' + kσ' of the numerator and t₂ + jτ' + kσ' of the denominator.
fn double_product(
    t1: Complex64,
    t2: Complex64,
    tau: Complex64,
    sigma: Complex64,
    pol: &TruncationPolicy,
) -> Result<Eval> {
    let rq = (-2.0 * PI * tau.im).exp();
    let rp = (-2.0 * PI * sigma.im).exp();
    let c = (-2.0 * PI * t1.im).exp() + (-2.0 * PI * t2.im).exp();
    // tail ≤ 2c(ρ_q^J + ρ_p^K)/((1−ρ_q)(1−ρ_p)); split the budget evenly
    let den = (1.0 - rq) * (1.0 - rp);
    let target = pol.tol * den / 4.0;
    let jn = terms_needed(c, rq, target, pol.max_terms)?;
    let kn = terms_needed(c, rp, target, pol.max_terms)?;
    if jn * kn > pol.max_terms * pol.max_terms / 4 {
        return Err(SpecialError::TooManyTerms { needed: jn.max(kn), cap: pol.max_terms });
    }
    let tail = 2.0 * c * (rq.powi(jn as i32) + rp.powi(kn as i32)) / den;
    let mut p = ScaledProduct::default();
    for j in 0..jn {
        let base = j as f64 * tau;
        for k in 0..kn {
            let s = base + k as f64 * sigma;
            let f1 = one_minus_e(t1 + s);
            let f2 = one_minus_e(t2 + s);
            if f1.norm() < POLE_ZERO_EPS || f2.norm() < POLE_ZERO_EPS {
                return Err(SpecialError::PoleZero { index: vec![j as i64, k as i64] });
            }
            p.mul(f1 / f2);
        }
    }
    Ok(Eval { value: p.finish()?, tail_bound: tail })
}

/// Chamber (+,+): ∏ (1 − e^{2πi((j+1)τ+(k+1)σ−z)}) / (1 − e^{2πi(jτ+kσ+z)}).
fn gamma_pp(z: Complex64, tau: Complex64, sigma: Complex64, pol: &TruncationPolicy) -> Result<Eval> {
    let (z, tau, sigma) = (reduce(z), reduce(tau), reduce(sigma));
    double_product(tau + sigma - z, z, tau, sigma, pol)
}

/// Chamber (−,+): ∏ (1 − e^{2πi(z−(j+1)τ+kσ)}) / (1 − e^{2πi(−z−jτ+(k+1)σ)}).
fn gamma_mp(z: Complex64, tau: Complex64, sigma: Complex64, pol: &TruncationPolicy) -> Result<Eval> {
    let (z, tau, sigma) = (reduce(z), reduce(tau), reduce(sigma));
    double_product(z - tau, sigma - z, -tau, sigma, pol)
}

/// Γ(z, τ, σ) for Im τ, Im σ ≠ 0.
pub fn elliptic_gamma(z: Complex64, tau: Complex64, sigma: Complex64, pol: &TruncationPolicy) -> Result<Eval> {
    if tau.im == 0.0 || sigma.im == 0.0 {
        return Err(SpecialError::RealModulus);
    }
    match (tau.im > 0.0, sigma.im > 0.0) {
        (true, true) => gamma_pp(z, tau, sigma, pol),
        (false, true) => gamma_mp(z, tau, sigma, pol),
        // Γ(z,τ,σ) = 1/Γ(z−σ, τ, −σ)
        (true, false) => Ok(gamma_pp(z - sigma, tau, -sigma, pol)?.inv()),
        // Γ(z,τ,σ) = Γ(z−τ−σ, −τ, −σ)
        (false, false) => gamma_pp(z - tau - sigma, -tau, -sigma, pol),
    }
}

/// The (−,+) chamber via Γ(z,τ,σ) = 1/Γ(z−τ, −τ, σ) instead of the direct product.
pub fn elliptic_gamma_via_reflection(
    z: Complex64,
    tau: Complex64,
    sigma: Complex64,
    pol: &TruncationPolicy,
) -> Result<Eval> {
    if !(tau.im < 0.0 && sigma.im > 0.0) {
        return Err(SpecialError::Chamber("expected Im τ < 0 < Im σ"));
    }
    Ok(gamma_pp(z - tau, -tau, sigma, pol)?.inv())
}

/// G_n(z, τ₀…τ_n) = ∏_{j∈ℕ^{n+1}} (1 − e^{2πi((j+1)·τ − z)})·(1 − e^{2πi(j·τ + z)})^{(−1)^n},
/// all Im τᵢ > 0.
pub fn multiple_gamma(n: usize, z: Complex64, taus: &[Complex64], pol: &TruncationPolicy) -> Result<Eval> {
    if taus.len() != n + 1 {
        return Err(SpecialError::Chamber("G_n takes n+1 periods"));
    }
    if taus.iter().any(|t| t.im <= 0.0) {
        return Err(SpecialError::Chamber("G_n is implemented on the positive chamber only"));
    }
    let z = reduce(z);
    let taus: Vec<Complex64> = taus.iter().map(|&t| reduce(t)).collect();
    let shift: Complex64 = taus.iter().sum();
    let t1 = shift - z;
    let c = (-2.0 * PI * t1.im).exp() + (2.0 * PI * z.im).exp();
    let rhos: Vec<f64> = taus.iter().map(|t| (-2.0 * PI * t.im).exp()).collect();
    let den: f64 = rhos.iter().map(|r| 1.0 - r).product();
    let target = pol.tol * den / (2.0 * (n as f64 + 1.0));
    let lens: Vec<usize> = rhos.iter().map(|&r| terms_needed(c, r, target, pol.max_terms)).collect::<Result<_>>()?;
    let total: f64 = lens.iter().map(|&l| l as f64).product();
    if total > (pol.max_terms as f64).powi(2) {
        return Err(SpecialError::TooManyTerms { needed: total as usize, cap: pol.max_terms });
    }
    let tail = 2.0 * c * rhos.iter().zip(&lens).map(|(r, &l)| r.powi(l as i32)).sum::<f64>() / den;
    let sign_inv = n % 2 == 1;
    let mut p = ScaledProduct::default();
    let mut idx = vec![0usize; n + 1];
    loop {
        let s: Complex64 = idx.iter().zip(&taus).map(|(&j, &t)| j as f64 * t).sum();
        let f1 = one_minus_e(t1 + s);
        let f2 = one_minus_e(z + s);
        if f1.norm() < POLE_ZERO_EPS || f2.norm() < POLE_ZERO_EPS {
            return Err(SpecialError::PoleZero { index: idx.iter().map(|&v| v as i64).collect() });
        }
        p.mul(f1);
        if sign_inv {
            p.div(f2)
        } else {
            p.mul(f2)
        }
        // odometer
        let mut d = 0;
        loop {
            if d == idx.len() {
                return Ok(Eval { value: p.finish()?, tail_bound: tail });
            }
            idx[d] += 1;
            if idx[d] < lens[d] {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// 2×2 integer matrix (a b; c d) stored row-major.
pub type Sl2 = [[i64; 2]; 2];

pub const SL2_T: Sl2 = [[1, 1], [0, 1]];
pub const SL2_S: Sl2 = [[0, -1], [1, 0]];

pub fn sl2_mul(x: &Sl2, y: &Sl2) -> Sl2 {
    let mut o = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            o[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    o
}

pub fn sl2_inv(g: &Sl2) -> Sl2 {
    [[g[1][1], -g[0][1]], [-g[1][0], g[0][0]]]
}

/// g·(z, τ) = (z/(cτ+d), (aτ+b)/(cτ+d)).
pub fn sl2_act(g: &Sl2, z: Complex64, tau: Complex64) -> Result<(Complex64, Complex64)> {
    let [[a, b], [c, d]] = *g;
    let j = c as f64 * tau + d as f64;
    if j == Complex64::new(0.0, 0.0) {
        return Err(SpecialError::Singular);
    }
    Ok((z / j, (a as f64 * tau + b as f64) / j))
}

/// N: SL₂(ℤ) → ℤ/12 with N(T) = 1, N(S) = −3, from a Euclidean word in S and T.
pub fn n_value(g: &Sl2) -> i64 {
    assert_eq!(g[0][0] * g[1][1] - g[0][1] * g[1][0], 1, "not in SL2(Z)");
    let mut m = *g;
    let mut acc = 0i64; // Σ N over the generators applied on the left
    while m[1][0] != 0 {
        let k = m[0][0].div_euclid(m[1][0]);
        // m ← T^{−k} m
        m = [[m[0][0] - k * m[1][0], m[0][1] - k * m[1][1]], m[1]];
        acc -= k;
        // m ← S m
        m = [[-m[1][0], -m[1][1]], m[0]];
        acc -= 3;
    }
    // m = ±T^b
    let fin = if m[0][0] == 1 { m[0][1] } else { 6 - m[0][1] };
    (fin - acc).rem_euclid(12)
}

/// exp(−πiQ(g; z, τ)), so that θ₀(z, τ) = multiplier · θ₀(g⁻¹·(z, τ)).
///
/// With g⁻¹ = (a b; c d):
/// Q = cz²/(cτ+d) + z/(cτ+d) − z − (aτ+b)/(6(cτ+d)) + τ/6 − N(g)/6.
pub fn theta_multiplier(g: &Sl2, z: Complex64, tau: Complex64) -> Result<Complex64> {
    let [[a, b], [c, d]] = sl2_inv(g);
    let (a, b, c, d) = (a as f64, b as f64, c as f64, d as f64);
    let j = c * tau + d;
    if j == Complex64::new(0.0, 0.0) {
        return Err(SpecialError::Singular);
    }
    let nq = n_value(g) as f64;
    let qv = c * z * z / j + z / j - z - (a * tau + b) / (6.0 * j) + tau / 6.0 - nq / 6.0;
    Ok((-I * PI * qv).exp())
}

/// ∏_k G_{r−2}(w/x_k, (x_j/x_k)_{j≠k}) and exp(−(2πi/r!)B_{r,r}(w, x)), for r ∈ {2, 3}.
pub fn narukawa_sides(w: Complex64, x: &[Complex64], pol: &TruncationPolicy) -> Result<(Complex64, Complex64)> {
    let r = x.len();
    if !(2..=3).contains(&r) {
        return Err(SpecialError::Chamber("Narukawa relation implemented for r = 2, 3"));
    }
    let mut lhs = Eval::exact(ONE);
    for k in 0..r {
        let periods: Vec<Complex64> = (0..r).filter(|&j| j != k).map(|j| x[j] / x[k]).collect();
        let z = w / x[k];
        let f = match r {
            2 => theta0(z, periods[0], pol)?,
            _ => elliptic_gamma(z, periods[0], periods[1], pol)?,
        };
        lhs = lhs.mul(f);
    }
    let b = multi_bernoulli(r, r).expect("r ≥ 1").eval(w, x).map_err(|_| SpecialError::Singular)?;
    let fact: f64 = (1..=r).map(|v| v as f64).product();
    Ok((lhs.value, (-2.0 * PI * I * b / fact).exp()))
}

pub fn rel_dev(lhs: Complex64, rhs: Complex64) -> f64 {
    let m = lhs.norm().max(rhs.norm());
    if m == 0.0 {
        0.0
    } else {
        (lhs - rhs).norm() / m
    }
}
