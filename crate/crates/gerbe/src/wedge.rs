//! Gamma functions of wedges Γ_{a,b}, theta products Δ_a, the exact polynomials
//! P_{a,b,c} and P_a(μ,ν), and the cocycle φ.

use crate::bernoulli::p3;
use crate::lattice::{
    det_covectors, det_vectors, direction_vector, framing_of, fundamental_set3, in_domain, CoVector, Framing,
    GroupElement, HomPoint, LatticeError, LatticeVector, Wedge,
};
use crate::poly::{q, qi, Poly, Q};
use crate::special::{self, elliptic_gamma, one_minus_e, theta0, Eval, ScaledProduct, SpecialError, TruncationPolicy, I};
use num::{BigInt, One, Zero};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WedgeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error("point is outside U_{0}⁺")]
    Domain(LatticeVector),
    #[error("{0}")]
    Invalid(&'static str),
    #[error("coboundary is not a constant: {0}")]
    NotConstant(String),
}

impl WedgeError {
    pub fn is_resample(&self) -> bool {
        match self {
            Self::Special(e) => e.is_resample(),
            Self::Domain(_) => true,
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, WedgeError>;

fn check_domain(a: &LatticeVector, p: &HomPoint) -> Result<()> {
    if in_domain(a, &p.x) {
        Ok(())
    } else {
        Err(WedgeError::Domain(*a))
    }
}

/// Γ_{a,b}(w, x) = ∏_{δ∈F/ℤγ} Γ((w+δ(x))/γ(x), α(x)/γ(x), β(x)/γ(x)); Γ_{a,a} = 1.
pub fn wedge_gamma(w: &Wedge, p: &HomPoint, pol: &TruncationPolicy) -> Result<Eval> {
    check_domain(&w.a, p)?;
    check_domain(&w.b, p)?;
    if w.a == w.b {
        return Ok(Eval::exact(Complex64::new(1.0, 0.0)));
    }
    let d = w.data()?;
    let gx = d.gamma.eval(&p.x);
    let tau = d.alpha.eval(&p.x) / gx;
    let sigma = d.beta.eval(&p.x) / gx;
    let mut acc = Eval::exact(Complex64::new(1.0, 0.0));
    for delta in &d.fundamental_set {
        acc = acc.mul(elliptic_gamma((p.w + delta.eval(&p.x)) / gx, tau, sigma, pol)?);
    }
    Ok(acc)
}

/// Γ_{a,b} straight from the cone product
/// ∏_{C₊₋/ℤγ}(1 − e^{−2πi(δ(x)−w)/γ(x)}) / ∏_{C₋₊/ℤγ}(1 − e^{2πi(δ(x)−w)/γ(x)}),
/// keeping every factor whose exponential exceeds `cutoff` in modulus.
pub fn wedge_gamma_direct(w: &Wedge, p: &HomPoint, cutoff: f64) -> Result<Complex64> {
    check_domain(&w.a, p)?;
    check_domain(&w.b, p)?;
    if w.a == w.b {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let d = w.data()?;
    let (r, s) = (d.r, d.s);
    // class representatives δ = (u ε₁ + k ε₂)∘g with u = δ(a), δ(b) = ru + sk
    let xg = d.g.apply_complex(&p.x);
    let gx = xg[2];
    let lc = cutoff.ln();
    let mut prod = ScaledProduct::default();
    // numerator: exponent E = −(δ(x) − w)/γ(x), |e^{2πiE}| = e^{−2π Im E}
    let ln_mag = |u: i64, k: i64, sign: f64| -> (Complex64, f64) {
        let dx = xg[0] * u as f64 + xg[1] * k as f64;
        let ex = sign * (dx - p.w) / gx;
        (ex, -2.0 * PI * ex.im)
    };
    for (sign, upos) in [(-1.0, true), (1.0, false)] {
        // slopes of the log-modulus along u and k
        let (_, l0) = ln_mag(0, 0, sign);
        let lu = ln_mag(1, 0, sign).1 - l0;
        let lk = ln_mag(0, 1, sign).1 - l0;
        // C₊₋: u ≥ 1, k ≤ −ru/s, decay needs lk > 0 and lu − (r/s)lk < 0;
        // C₋₊: u ≤ 0, k > −ru/s, decay needs lk < 0 and lu − (r/s)lk > 0.
        let edge = lu - (r as f64 / s as f64) * lk;
        let ok = if upos { lk > 0.0 && edge < 0.0 } else { lk < 0.0 && edge > 0.0 };
        if !ok {
            return Err(WedgeError::Invalid("cone product does not converge at this point"));
        }
        let mut step = 0i64;
        loop {
            let u = if upos { 1 + step } else { -step };
            // largest modulus on this line is at the cone edge
            if l0 + u as f64 * edge + lk.abs() < lc {
                break;
            }
            let kedge = (-r * u).div_euclid(s);
            let mut m = 0i64;
            loop {
                let k = if upos { kedge - m } else { kedge + 1 + m };
                let (ex, lm) = ln_mag(u, k, sign);
                if lm < lc {
                    break;
                }
                let f = one_minus_e(ex);
                if f.norm() < special::POLE_ZERO_EPS {
                    return Err(SpecialError::PoleZero { index: vec![u, k] }.into());
                }
                if upos {
                    prod.mul(f)
                } else {
                    prod.div(f)
                }
                m += 1;
            }
            step += 1;
        }
    }
    Ok(prod.finish()?)
}

/// Δ_a(μ; w, x) = ∏_{0≤j<μ(a)} θ₀((w + jα₁(x))/α₃(x), α₂(x)/α₃(x)),
/// and ∏_{μ(a)≤j<0} θ₀(…)⁻¹ for μ(a) < 0.
pub fn delta(f: &Framing, mu: &CoVector, p: &HomPoint, pol: &TruncationPolicy) -> Result<Eval> {
    check_domain(&f.a, p)?;
    let n = mu.pair(&f.a);
    let [a1, a2, a3] = f.alpha.map(|c| c.eval(&p.x));
    let tau = a2 / a3;
    let mut acc = Eval::exact(Complex64::new(1.0, 0.0));
    let range = if n >= 0 { 0..n } else { n..0 };
    for j in range {
        let t = theta0((p.w + a1 * j as f64) / a3, tau, pol)?;
        acc = acc.mul(if n >= 0 { t } else { t.inv() });
    }
    let m = acc.value.norm();
    if !m.is_finite() || m == 0.0 || !m.ln().is_finite() || m.ln().abs() > 690.0 {
        return Err(SpecialError::OutOfRange(m.ln()).into());
    }
    Ok(acc)
}

/// Δ_a((g, μ); y) = Δ_a(μ∘g⁻¹; y).
pub fn delta_group(f: &Framing, el: &GroupElement, p: &HomPoint, pol: &TruncationPolicy) -> Result<Eval> {
    delta(f, &el.translation_part(), p, pol)
}

/// Rational function numer/denom in the variables (w, x₁, x₂, x₃).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub numer: Poly,
    pub denom: Poly,
}

fn lin(c: &CoVector) -> Poly {
    Poly::linear(&[0, c.0[0], c.0[1], c.0[2]])
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self { numer: Poly::zero(4), denom: Poly::one(4) }
    }

    pub fn eval(&self, p: &HomPoint) -> Complex64 {
        let v = [p.w, p.x[0], p.x[1], p.x[2]];
        self.numer.eval(&v) / self.denom.eval(&v)
    }

    pub fn neg(&self) -> Self {
        Self { numer: self.numer.scale(&-Q::one()), denom: self.denom.clone() }
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, o: &Self) -> bool {
        self.numer.mul(&o.denom) == o.numer.mul(&self.denom)
    }

    /// (w, x) ↦ (w + μ(x), x).
    pub fn shift_w(&self, mu: &CoVector) -> Self {
        let images = [Poly::var(4, 0).add(&lin(mu)), Poly::var(4, 1), Poly::var(4, 2), Poly::var(4, 3)];
        Self { numer: self.numer.compose(&images), denom: self.denom.compose(&images) }
    }

    /// (w, x) ↦ (w, m·x).
    pub fn linear_substitution(&self, m: &crate::lattice::Mat3) -> Self {
        let mut images = vec![Poly::var(4, 0)];
        for i in 0..3 {
            images.push(lin(&m.row(i)));
        }
        Self { numer: self.numer.compose(&images), denom: self.denom.compose(&images) }
    }

    /// Coefficient of w³ as a rational function of x.
    pub fn w3_coefficient(&self) -> Self {
        Self { numer: self.numer.coefficient_of(0, 3), denom: self.denom.clone() }
    }
}

/// P_{a,b,c}(w, x) = Σ_{δ∈F(a,b,c)} P₃(w + δ(x), α(x), β(x), γ(x)).
///
/// Zero on dependent triples, antisymmetric under permutations.
pub fn poly_pabc(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> Result<RationalFunction> {
    for v in [a, b, c] {
        if !v.is_primitive() {
            return Err(LatticeError::NotPrimitive(*v).into());
        }
    }
    for (u, v) in [(a, b), (b, c), (a, c)] {
        if *u == v.neg() {
            return Err(WedgeError::Invalid("triple contains an opposite pair"));
        }
    }
    let det = det_vectors(a, b, c);
    if det == 0 {
        return Ok(RationalFunction::zero());
    }
    if det < 0 {
        return Ok(poly_pabc(b, a, c)?.neg());
    }
    let (al, _) = direction_vector(b, c)?.expect("independent");
    let (be, _) = direction_vector(c, a)?.expect("independent");
    let (ga, _) = direction_vector(a, b)?.expect("independent");
    let n3 = p3().numer;
    let mut numer = Poly::zero(4);
    for delta in fundamental_set3(a, b, c)? {
        let images = [Poly::var(4, 0).add(&lin(&delta)), lin(&al), lin(&be), lin(&ga)];
        numer = numer.add(&n3.compose(&images));
    }
    let denom = lin(&al).mul(&lin(&be)).mul(&lin(&ga));
    Ok(RationalFunction { numer, denom })
}

/// det(α, β, γ) for the pairwise direction vectors of an independent triple.
pub fn pabc_volume(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> Result<i128> {
    let (al, _) = direction_vector(b, c)?.ok_or(LatticeError::BadTriple)?;
    let (be, _) = direction_vector(c, a)?.ok_or(LatticeError::BadTriple)?;
    let (ga, _) = direction_vector(a, b)?.ok_or(LatticeError::BadTriple)?;
    Ok(det_covectors(&al, &be, &ga))
}

/// P_a(μ,ν; w, x) = (n₁m₂/α₃(x))[w + ((2m₁+n₁−1)/2)α₁(x) + ((m₂−1)/2)α₂(x) + α₃(x)/2],
/// with (mᵢ), (nᵢ) the framing coordinates of μ, ν.
pub fn poly_pa(f: &Framing, mu: &CoVector, nu: &CoVector) -> RationalFunction {
    let m = f.coordinates(mu);
    let n = f.coordinates(nu);
    let [a1, a2, a3] = f.alpha.map(|c| lin(&c));
    let bracket = Poly::var(4, 0)
        .add(&a1.scale(&q(2 * m[0] + n[0] - 1, 2)))
        .add(&a2.scale(&q(m[1] - 1, 2)))
        .add(&a3.scale(&q(1, 2)));
    RationalFunction { numer: bracket.scale(&qi(n[0] * m[1])), denom: a3 }
}

/// The group coboundary of P_a on translations:
/// −P_a(μ,ν; w+λ(x)) + P_a(λ+μ,ν) − P_a(λ,μ+ν) + P_a(λ,μ), returned as an integer.
pub fn translation_coboundary(f: &Framing, l: &CoVector, m: &CoVector, n: &CoVector) -> Result<BigInt> {
    let terms = [
        (poly_pa(f, m, n).shift_w(l), -1),
        (poly_pa(f, &l.add(m), n), 1),
        (poly_pa(f, l, &m.add(n)), -1),
        (poly_pa(f, l, m), 1),
    ];
    // all share the denominator α₃(x)
    let mut numer = Poly::zero(4);
    for (rf, sgn) in &terms {
        numer = numer.add(&rf.numer.scale(&qi(*sgn)));
    }
    let den = &terms[0].0.denom;
    let c = if numer.is_zero() { Some(Q::zero()) } else { numer.ratio_to(den) };
    match c {
        Some(c) if c.is_integer() => Ok(c.to_integer()),
        _ => Err(WedgeError::NotConstant(numer.to_string())),
    }
}

/// −n₁m₂ℓ₃ in framing coordinates, the value the coboundary above takes.
pub fn expected_translation_cocycle(f: &Framing, l: &CoVector, m: &CoVector, n: &CoVector) -> i64 {
    let (l, m, n) = (f.coordinates(l), f.coordinates(m), f.coordinates(n));
    -n[0] * m[1] * l[2]
}

/// φ_{a,b,c}(w, x) = exp(−(πi/3)P_{a,b,c}(w, x)).
pub fn cocycle_phi_abc(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector, p: &HomPoint) -> Result<Complex64> {
    for v in [a, b, c] {
        check_domain(v, p)?;
    }
    let pv = poly_pabc(a, b, c)?.eval(p);
    Ok((-I * PI / 3.0 * pv).exp())
}

/// Source of framings: the deterministic one unless overridden.
pub trait Framings {
    fn framing(&self, a: &LatticeVector) -> Result<Framing>;
}

pub struct DefaultFramings;

impl Framings for DefaultFramings {
    fn framing(&self, a: &LatticeVector) -> Result<Framing> {
        Ok(framing_of(a)?)
    }
}

/// φ_{a,b}(g; y) := Δ_a(g; y)Γ_{a,b}(y) / (Γ_{g⁻¹a,g⁻¹b}(g⁻¹y)Δ_b(g; y)).
pub fn cocycle_phi_ab(
    a: &LatticeVector,
    b: &LatticeVector,
    el: &GroupElement,
    p: &HomPoint,
    fr: &dyn Framings,
    pol: &TruncationPolicy,
) -> Result<Complex64> {
    let gi = el.inverse()?;
    let (ga, gb) = (gi.act_vector(a)?, gi.act_vector(b)?);
    let da = delta_group(&fr.framing(a)?, el, p, pol)?;
    let db = delta_group(&fr.framing(b)?, el, p, pol)?;
    let gab = wedge_gamma(&Wedge::new(*a, *b)?, p, pol)?;
    let gab2 = wedge_gamma(&Wedge::new(ga, gb)?, &gi.act(p), pol)?;
    Ok(da.value * gab.value / (gab2.value * db.value))
}

/// φ_a(g, h; y) := Δ_a(g; y)Δ_{g⁻¹a}(h; g⁻¹y) / Δ_a(gh; y).
pub fn cocycle_phi_a(
    a: &LatticeVector,
    g: &GroupElement,
    h: &GroupElement,
    p: &HomPoint,
    fr: &dyn Framings,
    pol: &TruncationPolicy,
) -> Result<Complex64> {
    let gi = g.inverse()?;
    let fa = fr.framing(a)?;
    let d1 = delta_group(&fa, g, p, pol)?;
    let d2 = delta_group(&fr.framing(&gi.act_vector(a)?)?, h, &gi.act(p), pol)?;
    let d12 = delta_group(&fa, &g.compose(h)?, p, pol)?;
    finite((d1.value.ln() + d2.value.ln() - d12.value.ln()).exp())
}

fn finite(z: Complex64) -> Result<Complex64> {
    if z.is_finite() && z.norm() > 0.0 {
        Ok(z)
    } else {
        Err(SpecialError::OutOfRange(z.norm().ln()).into())
    }
}

/// φ_a(μ, ν) = exp(−2πi P_a(μ, ν)) for translations.
pub fn cocycle_phi_a_translation(f: &Framing, mu: &CoVector, nu: &CoVector, p: &HomPoint) -> Complex64 {
    (-2.0 * PI * I * poly_pa(f, mu, nu).eval(p)).exp()
}
