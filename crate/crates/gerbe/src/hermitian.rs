//! Hermitian metric on the gamma gerbe: h₂, h₃, the components h_{a,b}, h_a, the
//! invariant norms, and the curvature (1,1)-forms.
//!
//! Every h is exp of a multiple Bernoulli polynomial in imaginary parts:
//! h₂ = exp(−2π B_{1,2}(Im z, Im τ)), h₃ = exp(−(2π/3) B_{2,3}(Im z, Im τ, Im σ)).

use crate::bernoulli::{b12, r3};
use crate::lattice::{in_domain, CoVector, Framing, GroupElement, HomPoint, LatticeVector, Wedge};
use crate::special::{theta0, TruncationPolicy};
use crate::wedge::{self, WedgeError};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HermitianError {
    #[error("degenerate imaginary part: {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Wedge(#[from] WedgeError),
    #[error("series oracle did not converge within {0} terms")]
    SlowConvergence(usize),
}

impl HermitianError {
    pub fn is_resample(&self) -> bool {
        match self {
            Self::Wedge(e) => e.is_resample(),
            Self::Degenerate(_) => true,
            Self::SlowConvergence(_) => false,
        }
    }
}

impl From<crate::special::SpecialError> for HermitianError {
    fn from(e: crate::special::SpecialError) -> Self {
        Self::Wedge(e.into())
    }
}

pub type Result<T> = std::result::Result<T, HermitianError>;

fn nonzero(t: f64, what: &'static str) -> Result<()> {
    if t == 0.0 || !t.is_finite() {
        Err(HermitianError::Degenerate(what))
    } else {
        Ok(())
    }
}

pub fn log_h2(z: Complex64, tau: Complex64) -> Result<f64> {
    nonzero(tau.im, "Im τ")?;
    Ok(-2.0 * PI * b12().eval_real(z.im, &[tau.im]).expect("arity 1"))
}

pub fn h2(z: Complex64, tau: Complex64) -> Result<f64> {
    Ok(log_h2(z, tau)?.exp())
}

pub fn log_h3(z: Complex64, tau: Complex64, sigma: Complex64) -> Result<f64> {
    nonzero(tau.im, "Im τ")?;
    nonzero(sigma.im, "Im σ")?;
    Ok(-2.0 * PI / 3.0 * r3().eval_real(z.im, &[tau.im, sigma.im]).expect("arity 2"))
}

pub fn h3(z: Complex64, tau: Complex64, sigma: Complex64) -> Result<f64> {
    Ok(log_h3(z, tau, sigma)?.exp())
}

fn check_domain(a: &LatticeVector, p: &HomPoint) -> Result<()> {
    if in_domain(a, &p.x) {
        Ok(())
    } else {
        Err(WedgeError::Domain(*a).into())
    }
}

/// Σ_δ log h₃((w+δ(x))/γ(x), α(x)/γ(x), β(x)/γ(x)) for explicit wedge data.
pub fn log_h_ab_with(gamma: &CoVector, alpha: &CoVector, beta: &CoVector, fset: &[CoVector], p: &HomPoint) -> Result<f64> {
    let gx = gamma.eval(&p.x);
    let (tau, sigma) = (alpha.eval(&p.x) / gx, beta.eval(&p.x) / gx);
    fset.iter().map(|d| log_h3((p.w + d.eval(&p.x)) / gx, tau, sigma)).sum()
}

pub fn log_h_ab(w: &Wedge, p: &HomPoint) -> Result<f64> {
    check_domain(&w.a, p)?;
    check_domain(&w.b, p)?;
    if w.a == w.b {
        return Ok(0.0);
    }
    let d = w.data().map_err(WedgeError::from)?;
    log_h_ab_with(&d.gamma, &d.alpha, &d.beta, &d.fundamental_set, p)
}

pub fn h_ab(w: &Wedge, p: &HomPoint) -> Result<f64> {
    Ok(log_h_ab(w, p)?.exp())
}

/// log h_a(μ; w, x) = Σ_{0≤j<μ(a)} log h₂((w + jα₁(x))/α₃(x), α₂(x)/α₃(x)), negated
/// over μ(a) ≤ j < 0 when μ(a) < 0.
pub fn log_h_a(f: &Framing, mu: &CoVector, p: &HomPoint) -> Result<f64> {
    check_domain(&f.a, p)?;
    let n = mu.pair(&f.a);
    let [a1, a2, a3] = f.alpha.map(|c| c.eval(&p.x));
    let tau = a2 / a3;
    let range = if n >= 0 { 0..n } else { n..0 };
    let mut acc = 0.0;
    for j in range {
        acc += log_h2((p.w + a1 * j as f64) / a3, tau)?;
    }
    Ok(if n >= 0 { acc } else { -acc })
}

pub fn h_a(f: &Framing, mu: &CoVector, p: &HomPoint) -> Result<f64> {
    Ok(log_h_a(f, mu, p)?.exp())
}

/// h_a((g, μ); y) = h_a(μ∘g⁻¹; y).
pub fn h_a_group(f: &Framing, el: &GroupElement, p: &HomPoint) -> Result<f64> {
    h_a(f, &el.translation_part(), p)
}

/// log ‖Γ_{a,b}‖² = log h_{a,b} + 2 log|Γ_{a,b}|, accumulated factor by factor.
pub fn log_norm_gamma(w: &Wedge, p: &HomPoint, pol: &TruncationPolicy) -> Result<f64> {
    check_domain(&w.a, p)?;
    check_domain(&w.b, p)?;
    if w.a == w.b {
        return Ok(0.0);
    }
    let d = w.data().map_err(WedgeError::from)?;
    let gx = d.gamma.eval(&p.x);
    let (tau, sigma) = (d.alpha.eval(&p.x) / gx, d.beta.eval(&p.x) / gx);
    let mut acc = 0.0;
    for delta in &d.fundamental_set {
        let z = (p.w + delta.eval(&p.x)) / gx;
        let g = crate::special::elliptic_gamma(z, tau, sigma, pol)?;
        acc += log_h3(z, tau, sigma)? + 2.0 * g.value.norm().ln();
    }
    Ok(acc)
}

/// ‖Γ_{a,b}‖² = h_{a,b}|Γ_{a,b}|².
pub fn norm_gamma(w: &Wedge, p: &HomPoint, pol: &TruncationPolicy) -> Result<f64> {
    Ok(log_norm_gamma(w, p, pol)?.exp())
}

/// log ‖Δ_a(μ)‖² as a sum of log h₂|θ₀|² over the factors of Δ_a.
pub fn log_norm_delta(f: &Framing, mu: &CoVector, p: &HomPoint, pol: &TruncationPolicy) -> Result<f64> {
    check_domain(&f.a, p)?;
    let n = mu.pair(&f.a);
    let [a1, a2, a3] = f.alpha.map(|c| c.eval(&p.x));
    let tau = a2 / a3;
    let range = if n >= 0 { 0..n } else { n..0 };
    let mut acc = 0.0;
    for j in range {
        let z = (p.w + a1 * j as f64) / a3;
        acc += log_h2(z, tau)? + 2.0 * theta0(z, tau, pol)?.value.norm().ln();
    }
    Ok(if n >= 0 { acc } else { -acc })
}

/// ‖Δ_a(μ)‖² = h_a(μ)|Δ_a(μ)|².
pub fn norm_delta(f: &Framing, mu: &CoVector, p: &HomPoint, pol: &TruncationPolicy) -> Result<f64> {
    Ok(log_norm_delta(f, mu, p, pol)?.exp())
}

pub fn norm_delta_group(f: &Framing, el: &GroupElement, p: &HomPoint, pol: &TruncationPolicy) -> Result<f64> {
    norm_delta(f, &el.translation_part(), p, pol)
}

/// h₂(z, τ)|θ₀(z, τ)|², the quantity invariant under ISL₂(ℤ).
pub fn theta_norm(z: Complex64, tau: Complex64, pol: &TruncationPolicy) -> Result<f64> {
    Ok(h2(z, tau)? * theta0(z, tau, pol)?.value.norm_sqr())
}

/// Coefficients C_ij of a (1,1)-form Σ C_ij dz_i∧dz̄_j.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoFormCoefficients {
    pub coeffs: Vec<Vec<Complex64>>,
}

impl TwoFormCoefficients {
    pub fn zeros(n: usize) -> Self {
        Self { coeffs: vec![vec![Complex64::new(0.0, 0.0); n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|r| r.iter().map(|v| v * c).collect()).collect() }
    }

    /// The form is real iff C_ji = −conj(C_ij).
    pub fn is_real_form(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (self.coeffs[j][i] + self.coeffs[i][j].conj()).norm() <= tol * self.max_abs().max(1.0)))
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// max |Cᵢⱼ − Dᵢⱼ| / max |Cᵢⱼ|.
    pub fn rel_dev(&self, o: &Self) -> f64 {
        let num = self
            .coeffs
            .iter()
            .flatten()
            .zip(o.coeffs.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let den = self.max_abs().max(o.max_abs());
        if den == 0.0 {
            num
        } else {
            num / den
        }
    }

    /// Pullback along a holomorphic map with Jacobian J (J[k][i] = ∂Z_k/∂y_i): Jᵀ C J̄.
    pub fn pullback(&self, jac: &[Vec<Complex64>]) -> Self {
        let m = jac[0].len();
        let n = self.dim();
        let mut out = Self::zeros(m);
        for i in 0..m {
            for j in 0..m {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    for l in 0..n {
                        s += jac[k][i] * self.coeffs[k][l] * jac[l][j].conj();
                    }
                }
                out.coeffs[i][j] = s;
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (r, s) in out.coeffs.iter_mut().zip(&o.coeffs) {
            for (a, b) in r.iter_mut().zip(s) {
                *a += b;
            }
        }
        out
    }
}

/// ∂̄∂ of a function of the imaginary parts only, from its Hessian H: −H/4.
fn ddbar_from_hessian(h: &[Vec<f64>]) -> TwoFormCoefficients {
    TwoFormCoefficients {
        coeffs: h.iter().map(|r| r.iter().map(|v| Complex64::new(-v / 4.0, 0.0)).collect()).collect(),
    }
}

/// ∂̄∂ log h₂ in the basis (dz, dτ): with ζ = Im z, t = Im τ,
/// (π/t)(dz − (ζ/t)dτ)∧conj(dz − (ζ/t)dτ).
pub fn ddbar_log_h2(z: Complex64, tau: Complex64) -> Result<TwoFormCoefficients> {
    nonzero(tau.im, "Im τ")?;
    let (zeta, t) = (z.im, tau.im);
    let u = [1.0, -zeta / t];
    let coeffs = (0..2).map(|i| (0..2).map(|j| Complex64::new(PI / t * u[i] * u[j], 0.0)).collect()).collect();
    Ok(TwoFormCoefficients { coeffs })
}

/// c₁ = (i/2π)∂̄∂ log h₂.
pub fn curvature_h2(z: Complex64, tau: Complex64) -> Result<TwoFormCoefficients> {
    Ok(ddbar_log_h2(z, tau)?.scale(Complex64::new(0.0, 1.0 / (2.0 * PI))))
}

/// Hessian of R₃(ζ, t, s) = ζ³/(ts) − (3/2)(1/t + 1/s)ζ² + (t/2s + s/2t + 3/2)ζ − (t+s)/4.
fn hessian_r3(zeta: f64, t: f64, s: f64) -> Vec<Vec<f64>> {
    let (z2, z3) = (zeta * zeta, zeta * zeta * zeta);
    let hzz = 6.0 * zeta / (t * s) - 3.0 * (1.0 / t + 1.0 / s);
    let hzt = -3.0 * z2 / (t * t * s) + 3.0 * zeta / (t * t) + 1.0 / (2.0 * s) - s / (2.0 * t * t);
    let hzs = -3.0 * z2 / (t * s * s) + 3.0 * zeta / (s * s) + 1.0 / (2.0 * t) - t / (2.0 * s * s);
    let htt = 2.0 * z3 / (t * t * t * s) - 3.0 * z2 / (t * t * t) + s * zeta / (t * t * t);
    let hss = 2.0 * z3 / (t * s * s * s) - 3.0 * z2 / (s * s * s) + t * zeta / (s * s * s);
    let hts = z3 / (t * t * s * s) - zeta / (2.0 * s * s) - zeta / (2.0 * t * t);
    vec![vec![hzz, hzt, hzs], vec![hzt, htt, hts], vec![hzs, hts, hss]]
}

/// ∂̄∂ log h₃ = (π/6)·Hess R₃ in the basis (dz, dτ, dσ).
pub fn curvature_h3(z: Complex64, tau: Complex64, sigma: Complex64) -> Result<TwoFormCoefficients> {
    nonzero(tau.im, "Im τ")?;
    nonzero(sigma.im, "Im σ")?;
    let h = hessian_r3(z.im, tau.im, sigma.im);
    let scaled: Vec<Vec<f64>> = h.iter().map(|r| r.iter().map(|v| -2.0 * PI / 3.0 * v).collect()).collect();
    Ok(ddbar_from_hessian(&scaled))
}

/// ∂̄∂f by central differences in (Re, Im) of each variable, assembled from
/// ∂_{zᵢ}∂_{z̄ⱼ} = ¼[(∂xᵢ∂xⱼ + ∂yᵢ∂yⱼ) + i(∂xᵢ∂yⱼ − ∂yᵢ∂xⱼ)]; the form is −f_{i j̄}.
pub fn ddbar_fd<F>(f: F, at: &[Complex64], step: f64) -> TwoFormCoefficients
where
    F: Fn(&[Complex64]) -> f64,
{
    let n = at.len();
    // real coordinate k: variable k/2, real part if even
    let shift = |k: usize, h: f64| -> Complex64 {
        if k % 2 == 0 {
            Complex64::new(h, 0.0)
        } else {
            Complex64::new(0.0, h)
        }
    };
    let eval = |moves: &[(usize, f64)]| -> f64 {
        let mut p = at.to_vec();
        for &(k, h) in moves {
            p[k / 2] += shift(k, h);
        }
        f(&p)
    };
    let f0 = f(at);
    let d2 = |k: usize, l: usize| -> f64 {
        let h = step;
        if k == l {
            (eval(&[(k, h)]) - 2.0 * f0 + eval(&[(k, -h)])) / (h * h)
        } else {
            (eval(&[(k, h), (l, h)]) - eval(&[(k, h), (l, -h)]) - eval(&[(k, -h), (l, h)]) + eval(&[(k, -h), (l, -h)]))
                / (4.0 * h * h)
        }
    };
    let mut out = TwoFormCoefficients::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
            let re = d2(xi, xj) + d2(yi, yj);
            let im = d2(xi, yj) - d2(yi, xj);
            out.coeffs[i][j] = -Complex64::new(re, im) / 4.0;
        }
    }
    out
}

/// Finite-difference ∂̄∂f at `step`, refined by one Richardson step if the
/// first pass is farther than `tol` from `reference`.
pub fn ddbar_fd_checked<F>(f: F, at: &[Complex64], step: f64, reference: &TwoFormCoefficients, tol: f64) -> (TwoFormCoefficients, f64)
where
    F: Fn(&[Complex64]) -> f64,
{
    let coarse = ddbar_fd(&f, at, step);
    let dev = reference.rel_dev(&coarse);
    if dev < tol {
        return (coarse, dev);
    }
    let fine = ddbar_fd(&f, at, step / 2.0);
    let rich = fine.scale(Complex64::new(4.0 / 3.0, 0.0)).add(&coarse.scale(Complex64::new(-1.0 / 3.0, 0.0)));
    let dev = reference.rel_dev(&rich);
    (rich, dev)
}

/// Jacobian of Φ_δ(w, x) = ((w+δ(x))/γ(x), α(x)/γ(x), β(x)/γ(x)) in (w, x₁, x₂, x₃).
fn phi_jacobian(delta: &CoVector, alpha: &CoVector, beta: &CoVector, gamma: &CoVector, p: &HomPoint) -> Vec<Vec<Complex64>> {
    let gx = gamma.eval(&p.x);
    let nums = [p.w + delta.eval(&p.x), alpha.eval(&p.x), beta.eval(&p.x)];
    let lin = [delta, alpha, beta];
    let mut jac = vec![vec![Complex64::new(0.0, 0.0); 4]; 3];
    jac[0][0] = 1.0 / gx;
    for k in 0..3 {
        for i in 0..3 {
            jac[k][i + 1] = lin[k].0[i] as f64 / gx - nums[k] * gamma.0[i] as f64 / (gx * gx);
        }
    }
    jac
}

/// F_{a,b} = ∂̄∂ log h_{a,b} = Σ_δ Φ_δ*(∂̄∂ log h₃), in the basis (dw, dx₁, dx₂, dx₃).
pub fn curvature_h_ab(w: &Wedge, p: &HomPoint) -> Result<TwoFormCoefficients> {
    check_domain(&w.a, p)?;
    check_domain(&w.b, p)?;
    let mut acc = TwoFormCoefficients::zeros(4);
    if w.a == w.b {
        return Ok(acc);
    }
    let d = w.data().map_err(WedgeError::from)?;
    let gx = d.gamma.eval(&p.x);
    let (tau, sigma) = (d.alpha.eval(&p.x) / gx, d.beta.eval(&p.x) / gx);
    for delta in &d.fundamental_set {
        let z = (p.w + delta.eval(&p.x)) / gx;
        let c = curvature_h3(z, tau, sigma)?;
        acc = acc.add(&c.pullback(&phi_jacobian(delta, &d.alpha, &d.beta, &d.gamma, p)));
    }
    Ok(acc)
}

/// Neumaier-compensated sum.
#[derive(Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// ∫ c₁ over the fibre ℂ/(ℤ + τℤ): midpoint rule on an n×n grid in z = u + vτ.
/// On the fibre dz∧dz̄ = −2i dx∧dy and dx∧dy = Im τ du∧dv.
pub fn fibre_integral(tau: Complex64, zeta_offset: Complex64, n: usize) -> Result<f64> {
    nonzero(tau.im, "Im τ")?;
    let h = 1.0 / n as f64;
    let mut acc = CompensatedSum::default();
    for i in 0..n {
        for j in 0..n {
            let (u, v) = ((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
            let z = zeta_offset + u + tau * v;
            let c = curvature_h2(z, tau)?.coeffs[0][0] * Complex64::new(0.0, -2.0);
            acc.add(c.re * tau.im.abs() * h * h);
        }
    }
    Ok(acc.value())
}

/// Both sides of
/// Im(z₁⋯zₙ/(w₁⋯wₙ)) = Σⱼ Im(z₁/wⱼ)⋯Im(zₙ/wⱼ) / ∏_{i≠j} Im(wᵢ/wⱼ).
pub fn im_product_sides(z: &[Complex64], w: &[Complex64]) -> Result<(f64, f64)> {
    assert_eq!(z.len(), w.len());
    let n = z.len();
    for i in 0..n {
        for j in 0..i {
            nonzero((w[i] * w[j].conj()).im, "Im(wᵢ w̄ⱼ)")?;
        }
    }
    let lhs = (z.iter().product::<Complex64>() / w.iter().product::<Complex64>()).im;
    let mut rhs = 0.0;
    for j in 0..n {
        let num: f64 = z.iter().map(|zi| (zi / w[j]).im).product();
        let den: f64 = (0..n).filter(|&i| i != j).map(|i| (w[i] / w[j]).im).product();
        rhs += num / den;
    }
    Ok((lhs, rhs))
}

/// |LHS − RHS| / max(|LHS|, |RHS|) of the identity above.
pub fn im_product_identity_check(z: &[Complex64], w: &[Complex64]) -> Result<f64> {
    let (l, r) = im_product_sides(z, w)?;
    let m = l.abs().max(r.abs());
    Ok(if m == 0.0 { 0.0 } else { (l - r).abs() / m })
}

const ORACLE_NODES: usize = 80;
const ORACLE_DEGREE: usize = 16;
const ORACLE_WINDOW: f64 = 0.4;

/// Partial sum of Σ_{j≥0} e^{−t(j+1)T} (t, T < 0), to relative size `cutoff`.
fn cone_row_sum(t: f64, big_t: f64, cutoff: f64, cap: usize) -> Result<f64> {
    let rate = t * big_t;
    let mut acc = CompensatedSum::default();
    for j in 0..cap {
        let term = (-rate * (j + 1) as f64).exp();
        acc.add(term);
        if term < cutoff * (-rate).exp() {
            return Ok(acc.value());
        }
    }
    Err(HermitianError::SlowConvergence(cap))
}

/// d^m/dx^m T_k at x = 1: ∏_{i<m} (k² − i²)/(2i + 1).
fn cheb_derivative_at_one(k: usize, m: usize) -> f64 {
    let k2 = (k * k) as f64;
    (0..m).map(|i| (k2 - (i * i) as f64) / (2 * i + 1) as f64).product()
}

/// h_{a,b} from the cone series: on V_a ∩ V_b with T = Im(α/γ) < 0, S = Im(β/γ) > 0,
///
///   S_{a,b}(t) = Σ_{δ̄∈F} e^{tζ_δ} t² Σ_{j≥0} e^{−t(j+1)T} / (e^{tS} − 1),  ζ_δ = Im((w+δ̄(x))/γ(x)),
///
/// where the j-sum runs over the cone along α and converges for real t < 0; the
/// β-direction is resummed in closed form. The smooth factor multiplying e^{tζ} is
/// sampled at Chebyshev nodes on [−L, 0], its derivatives at 0 are read off the
/// Chebyshev fit, and h_{a,b} = exp(−(2π/3)S'''(0)).
pub fn h_ab_series_oracle(w: &Wedge, p: &HomPoint, cutoff: f64) -> Result<f64> {
    check_domain(&w.a, p)?;
    check_domain(&w.b, p)?;
    if w.a == w.b {
        return Ok(1.0);
    }
    let d = w.data().map_err(WedgeError::from)?;
    let gx = d.gamma.eval(&p.x);
    let big_t = (d.alpha.eval(&p.x) / gx).im;
    let big_s = (d.beta.eval(&p.x) / gx).im;
    if !(big_t < 0.0 && big_s > 0.0) {
        return Err(WedgeError::Domain(w.a).into());
    }
    let radius = 2.0 * PI / big_t.abs().max(big_s);
    let len = ORACLE_WINDOW * radius;
    let n = ORACLE_NODES;
    let cap = 200_000_000;
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let xk = (PI * (k as f64 + 0.5) / n as f64).cos();
        let t = (xk - 1.0) * len / 2.0;
        let row = cone_row_sum(t, big_t, cutoff, cap)?;
        samples.push((xk, t * t * row / (t * big_s).exp_m1()));
    }
    // discrete Chebyshev transform on Gauss nodes = least-squares fit of degree < n
    let coef: Vec<f64> = (0..=ORACLE_DEGREE)
        .map(|j| {
            let mut acc = CompensatedSum::default();
            for &(xk, fk) in &samples {
                acc.add(fk * (j as f64 * xk.acos()).cos());
            }
            acc.value() * if j == 0 { 1.0 } else { 2.0 } / n as f64
        })
        .collect();
    let derivs: Vec<f64> = (0..4)
        .map(|m| {
            let s: f64 = coef.iter().enumerate().map(|(k, c)| c * cheb_derivative_at_one(k, m)).sum();
            s * (2.0 / len).powi(m as i32)
        })
        .collect();
    let binom = [1.0, 3.0, 3.0, 1.0];
    let mut s3 = 0.0;
    for delta in &d.fundamental_set {
        let zeta = ((p.w + delta.eval(&p.x)) / gx).im;
        s3 += (0..4).map(|m| binom[m] * zeta.powi(3 - m as i32) * derivs[m]).sum::<f64>();
    }
    Ok((-2.0 * PI / 3.0 * s3).exp())
}

/// The cone sum S_{a,b}(t) itself at a real t < 0 (finite there).
pub fn series_value(w: &Wedge, p: &HomPoint, t: f64, cutoff: f64) -> Result<f64> {
    let d = w.data().map_err(WedgeError::from)?;
    let gx = d.gamma.eval(&p.x);
    let big_t = (d.alpha.eval(&p.x) / gx).im;
    let big_s = (d.beta.eval(&p.x) / gx).im;
    let row = cone_row_sum(t, big_t, cutoff, 200_000_000)?;
    let factor = t * t * row / (t * big_s).exp_m1();
    Ok(d
        .fundamental_set
        .iter()
        .map(|delta| (t * ((p.w + delta.eval(&p.x)) / gx).im).exp() * factor)
        .sum())
}

/// |φ_{a,b,c}|⁻² and h_{a,b}h_{b,c}h_{c,a} in log form.
pub fn triple_metric_sides(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector, p: &HomPoint) -> Result<(f64, f64)> {
    let lhs = log_h_ab(&Wedge::new(*a, *b).map_err(WedgeError::from)?, p)?
        + log_h_ab(&Wedge::new(*b, *c).map_err(WedgeError::from)?, p)?
        + log_h_ab(&Wedge::new(*c, *a).map_err(WedgeError::from)?, p)?;
    let phi = wedge::cocycle_phi_abc(a, b, c, p)?;
    Ok((lhs, -2.0 * phi.norm().ln()))
}
