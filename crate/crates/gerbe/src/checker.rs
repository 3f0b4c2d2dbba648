//! Identity-fuzzing harness: every identity is a named check that draws
//! deterministic samples, evaluates both sides, and aggregates deviations.

use crate::bernoulli::{self, multi_bernoulli};
use crate::hermitian::{self as herm, HermitianError};
use crate::lattice::{
    self, normal_form, Framing, GroupElement, HomPoint, LatticeError, LatticeVector, NormalKind, Wedge,
};
use crate::poly::{q, Poly};
use crate::sampling::Sampler;
use crate::special::{self, SpecialError, TruncationPolicy, I};
use crate::wedge::{self, DefaultFramings, WedgeError};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

type C = Complex64;

const ONE: C = C::new(1.0, 0.0);

/// Why a sample produced no comparison.
#[derive(Debug)]
pub enum SampleError {
    /// pole/zero proximity, slow convergence or a domain miss: draw again
    Resample,
    Fail(String),
}

impl From<SpecialError> for SampleError {
    fn from(e: SpecialError) -> Self {
        if e.is_resample() {
            Self::Resample
        } else {
            Self::Fail(e.to_string())
        }
    }
}

impl From<WedgeError> for SampleError {
    fn from(e: WedgeError) -> Self {
        if e.is_resample() {
            Self::Resample
        } else {
            Self::Fail(e.to_string())
        }
    }
}

impl From<HermitianError> for SampleError {
    fn from(e: HermitianError) -> Self {
        if e.is_resample() {
            Self::Resample
        } else {
            Self::Fail(e.to_string())
        }
    }
}

impl From<LatticeError> for SampleError {
    fn from(e: LatticeError) -> Self {
        Self::Fail(e.to_string())
    }
}

/// Both sides of one instance of an identity.
#[derive(Debug, Clone, Copy)]
pub struct Pair {
    pub lhs: C,
    pub rhs: C,
}

fn pair(lhs: C, rhs: C) -> Pair {
    Pair { lhs, rhs }
}

fn real(lhs: f64, rhs: f64) -> Pair {
    Pair { lhs: C::new(lhs, 0.0), rhs: C::new(rhs, 0.0) }
}

fn holds(b: bool) -> Pair {
    real(if b { 1.0 } else { 0.0 }, 1.0)
}

/// A measured relative deviation d as the pair (1 + d, 1).
fn deviation(d: f64) -> Pair {
    real(1.0 + d, 1.0)
}

/// exp(l − r) against 1, for identities between logarithms of positive quantities.
fn logs(l: f64, r: f64) -> Pair {
    real((l - r).exp(), 1.0)
}

pub type SampleResult = Result<Vec<Pair>, SampleError>;
pub type Evaluator = fn(&mut Sampler, &TruncationPolicy) -> SampleResult;

pub struct IdentitySpec {
    pub name: &'static str,
    /// The identity as a formula.
    pub formula: &'static str,
    /// What is sampled.
    pub domain: &'static str,
    pub samples: usize,
    pub tol: f64,
    pub eval: Evaluator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub identity: String,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_abs_dev: f64,
    pub max_rel_dev: f64,
    pub failures: Vec<String>,
    pub failure_count: usize,
    pub resamples: usize,
    pub inconclusive: bool,
    pub pass: bool,
    pub wall_time_ms: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CheckerError {
    #[error("unknown identity {0:?}")]
    Unknown(String),
    #[error("config: {0}")]
    Config(#[from] serde_json::Error),
}

const MAX_LISTED_FAILURES: usize = 20;

/// Runs one identity: `samples` accepted samples drawn from the stream of `(seed, name)`,
/// redrawing on pole/zero signals at most 10×`samples` times.
pub fn run_check(name: &str, samples: usize, seed: u64, tol: f64, pol: &TruncationPolicy) -> Result<CheckReport, CheckerError> {
    let spec = registry().into_iter().find(|s| s.name == name).ok_or_else(|| CheckerError::Unknown(name.into()))?;
    Ok(run_spec(&spec, samples, seed, tol, pol))
}

fn run_spec(spec: &IdentitySpec, samples: usize, seed: u64, tol: f64, pol: &TruncationPolicy) -> CheckReport {
    let start = Instant::now();
    let mut sampler = Sampler::new(seed, spec.name);
    let (mut max_abs, mut max_rel) = (0.0f64, 0.0f64);
    let mut failures = Vec::new();
    let mut failure_count = 0;
    let mut resamples = 0;
    let mut accepted = 0;
    let mut inconclusive = false;
    let mut note = |failures: &mut Vec<String>, s: String| {
        failure_count += 1;
        if failures.len() < MAX_LISTED_FAILURES {
            failures.push(s);
        }
    };
    while accepted < samples {
        match (spec.eval)(&mut sampler, pol) {
            Ok(pairs) => {
                for (k, p) in pairs.iter().enumerate() {
                    let abs = (p.lhs - p.rhs).norm();
                    let rel = special::rel_dev(p.lhs, p.rhs);
                    if !abs.is_finite() || !rel.is_finite() {
                        note(&mut failures, format!("sample {accepted}.{k}: non-finite lhs={} rhs={}", p.lhs, p.rhs));
                        max_rel = f64::INFINITY;
                        max_abs = f64::INFINITY;
                        continue;
                    }
                    max_abs = max_abs.max(abs);
                    max_rel = max_rel.max(rel);
                    if rel >= tol {
                        note(&mut failures, format!("sample {accepted}.{k}: lhs={} rhs={} rel={rel:e}", p.lhs, p.rhs));
                    }
                }
                accepted += 1;
            }
            Err(SampleError::Resample) => {
                resamples += 1;
                if resamples > 10 * samples.max(1) {
                    inconclusive = true;
                    break;
                }
            }
            Err(SampleError::Fail(msg)) => {
                note(&mut failures, format!("sample {accepted}: {msg}"));
                accepted += 1;
            }
        }
    }
    let pass = !inconclusive && failure_count == 0 && max_rel < tol;
    CheckReport {
        identity: spec.name.into(),
        samples,
        seed,
        tol,
        max_abs_dev: max_abs,
        max_rel_dev: max_rel,
        failures,
        failure_count,
        resamples,
        inconclusive,
        pass,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

/// Per-identity overrides, read from JSON of the form `{"name": {"samples": N, "tol": T}}`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Override {
    pub samples: Option<usize>,
    pub tol: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub overrides: BTreeMap<String, Override>,
    /// Only identities whose name contains this substring.
    pub filter: Option<String>,
    pub pol: TruncationPolicy,
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: 42, overrides: BTreeMap::new(), filter: None, pol: TruncationPolicy::default(), parallel: true }
    }
}

pub fn parse_overrides(json: &str) -> Result<BTreeMap<String, Override>, CheckerError> {
    let map: BTreeMap<String, Override> = serde_json::from_str(json)?;
    let names: Vec<&str> = registry().iter().map(|s| s.name).collect();
    if let Some(bad) = map.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(CheckerError::Unknown(bad.clone()));
    }
    Ok(map)
}

/// Runs every selected identity in registry order.
pub fn run_all(cfg: &RunConfig) -> Vec<CheckReport> {
    let specs: Vec<IdentitySpec> = registry()
        .into_iter()
        .filter(|s| cfg.filter.as_deref().map_or(true, |f| s.name.contains(f)))
        .collect();
    let run = |s: &IdentitySpec| {
        let o = cfg.overrides.get(s.name).cloned().unwrap_or_default();
        run_spec(s, o.samples.unwrap_or(s.samples), cfg.seed, o.tol.unwrap_or(s.tol), &cfg.pol)
    };
    if cfg.parallel {
        specs.par_iter().map(run).collect()
    } else {
        specs.iter().map(run).collect()
    }
}

// ---------------------------------------------------------------------------
// samplers shared by the identities

fn z_point(s: &mut Sampler) -> C {
    s.cnormal_scaled(0.4)
}

/// τ with |Im τ| ∈ [0.4, 1.6] and a random sign.
fn modulus(s: &mut Sampler) -> C {
    let t = s.upper(0.4, 1.6);
    if s.sign() > 0.0 {
        t
    } else {
        -t
    }
}

fn upper(s: &mut Sampler) -> C {
    s.upper(0.4, 1.6)
}

/// x ∈ ℂ³ with all ratios xᵢ/xⱼ comfortably away from the real line.
fn generic_x(s: &mut Sampler) -> Result<[C; 3], SampleError> {
    let x = [s.cnormal(), s.cnormal(), s.cnormal()];
    for i in 0..3 {
        for j in 0..i {
            let r = x[i] / x[j];
            if r.im.abs() < 0.25 * r.norm().max(1.0) {
                return Err(SampleError::Resample);
            }
        }
    }
    Ok(x)
}

fn domain_point(s: &mut Sampler, vs: &[LatticeVector]) -> Result<HomPoint, SampleError> {
    let x = s.domain_x(vs, 400).ok_or(SampleError::Resample)?;
    Ok(s.point(x, 0.3))
}

fn random_wedge(s: &mut Sampler, bound: i64, max_modulus: i64) -> Wedge {
    loop {
        let (a, b) = (s.primitive(bound), s.primitive(bound));
        if let Ok(w) = Wedge::new(a, b) {
            if w.modulus >= 1 && w.modulus <= max_modulus {
                return w;
            }
        }
    }
}

/// Three pairwise independent primitive vectors.
fn random_triple(s: &mut Sampler, bound: i64) -> [LatticeVector; 3] {
    loop {
        let t = [s.primitive(bound), s.primitive(bound), s.primitive(bound)];
        let ok = (0..3).all(|i| (0..i).all(|j| t[i].cross(&t[j]) != [0, 0, 0]));
        if ok {
            return t;
        }
    }
}

fn small_group_element(s: &mut Sampler) -> GroupElement {
    let len = s.int(1, 3) as usize;
    s.group_element(len, 1)
}

/// A second valid framing of the same vector: α₁ + kα₂ + lα₃ and an SL₂ change of (α₂, α₃).
fn other_framing(s: &mut Sampler, f: &Framing) -> Framing {
    let [a1, a2, a3] = f.alpha;
    let (k, l) = (s.int(-2, 2), s.int(-2, 2));
    let m = s.sl2(3);
    let n2 = a2.scale(m[0][0]).add(&a3.scale(m[0][1]));
    let n3 = a2.scale(m[1][0]).add(&a3.scale(m[1][1]));
    let n1 = a1.add(&a2.scale(k)).add(&a3.scale(l));
    Framing::new(f.a, [n1, n2, n3]).expect("unimodular change of framing")
}

// ---------------------------------------------------------------------------
// printed closed forms used as independent oracles

fn poly_from(nv: usize, terms: &[(&[u32], i64, i64)]) -> Poly {
    let mut p = Poly::zero(nv);
    for (e, n, d) in terms {
        p.add_term(e.to_vec(), q(*n, *d));
    }
    p
}

/// x₁x₂·P₂(w, x) = w² − (x₁+x₂)w + (x₁² + x₂² + 3x₁x₂)/6.
pub fn printed_p2_numerator() -> Poly {
    poly_from(
        3,
        &[(&[2, 0, 0], 1, 1), (&[1, 1, 0], -1, 1), (&[1, 0, 1], -1, 1), (&[0, 2, 0], 1, 6), (&[0, 0, 2], 1, 6), (&[0, 1, 1], 1, 2)],
    )
}

/// x₁x₂x₃·P₃(w, x).
pub fn printed_p3_numerator() -> Poly {
    poly_from(
        4,
        &[
            (&[3, 0, 0, 0], 1, 1),
            (&[2, 1, 0, 0], -3, 2),
            (&[2, 0, 1, 0], -3, 2),
            (&[2, 0, 0, 1], -3, 2),
            (&[1, 2, 0, 0], 1, 2),
            (&[1, 0, 2, 0], 1, 2),
            (&[1, 0, 0, 2], 1, 2),
            (&[1, 1, 1, 0], 3, 2),
            (&[1, 0, 1, 1], 3, 2),
            (&[1, 1, 0, 1], 3, 2),
            // −¼(x₁+x₂+x₃)(x₂x₃ + x₁x₃ + x₁x₂)
            (&[0, 2, 1, 0], -1, 4),
            (&[0, 2, 0, 1], -1, 4),
            (&[0, 1, 2, 0], -1, 4),
            (&[0, 0, 2, 1], -1, 4),
            (&[0, 1, 0, 2], -1, 4),
            (&[0, 0, 1, 2], -1, 4),
            (&[0, 1, 1, 1], -3, 4),
        ],
    )
}

/// t·s·R₃(ζ, t, s).
pub fn printed_r3_numerator() -> Poly {
    poly_from(
        3,
        &[
            (&[3, 0, 0], 1, 1),
            (&[2, 0, 1], -3, 2),
            (&[2, 1, 0], -3, 2),
            (&[1, 2, 0], 1, 2),
            (&[1, 0, 2], 1, 2),
            (&[1, 1, 1], 3, 2),
            (&[0, 2, 1], -1, 4),
            (&[0, 1, 2], -1, 4),
        ],
    )
}

fn printed_p2(w: C, x1: C, x2: C) -> C {
    (w * w - (x1 + x2) * w + (x1 * x1 + x2 * x2 + 3.0 * x1 * x2) / 6.0) / (x1 * x2)
}

fn printed_p3(w: C, x: &[C; 3]) -> C {
    let [x1, x2, x3] = *x;
    let p = x1 * x2 * x3;
    let s = x1 + x2 + x3;
    w * w * w / p - 1.5 * s / p * w * w
        + (x1 * x1 + x2 * x2 + x3 * x3 + 3.0 * (x1 * x2 + x2 * x3 + x1 * x3)) / (2.0 * p) * w
        - 0.25 * s * (1.0 / x1 + 1.0 / x2 + 1.0 / x3)
}

// ---------------------------------------------------------------------------
// identities

fn bernoulli_printed(_: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    Ok(vec![
        holds(bernoulli::p2().numer == printed_p2_numerator()),
        holds(bernoulli::p3().numer == printed_p3_numerator()),
        holds(bernoulli::r3().numer == printed_r3_numerator()),
    ])
}

fn bernoulli_difference(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let r = s.int(2, 4) as usize;
    let n = s.int(1, 5) as usize;
    let i = s.int(1, r as i64) as usize;
    Ok(vec![holds(bernoulli::check_difference(r, n, i))])
}

fn bernoulli_subdivision(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let r = s.int(1, 4) as usize;
    let n = s.int(0, 5) as usize;
    let m = s.int(1, 4) as usize;
    Ok(vec![holds(bernoulli::subdivision_identity(r, n, m))])
}

fn bernoulli_symmetry(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let r = s.int(1, 4) as usize;
    let n = s.int(0, 5) as usize;
    Ok(vec![holds(multi_bernoulli(r, n).expect("r ≥ 1").is_symmetric())])
}

fn theta_periodicity(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau) = (z_point(s), modulus(s));
    let t = special::theta0(z, tau, pol)?.value;
    Ok(vec![
        pair(special::theta0(z + 1.0, tau, pol)?.value, t),
        pair(special::theta0(z, tau + 1.0, pol)?.value, t),
    ])
}

fn theta_quasi_periodicity(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau) = (z_point(s), upper(s));
    let lhs = special::theta0(z + tau, tau, pol)?.value;
    let rhs = -(-2.0 * PI * I * z).exp() * special::theta0(z, tau, pol)?.value;
    Ok(vec![pair(lhs, rhs)])
}

/// On the lower half-plane θ₀ is defined by reflection; the functional equations persist.
fn theta_extension(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau) = (z_point(s), -upper(s));
    let t = special::theta0(z, tau, pol)?.value;
    Ok(vec![
        pair(special::theta0(z + tau, tau, pol)?.value, -(-2.0 * PI * I * z).exp() * t),
        pair(special::theta0(tau - z, tau, pol)?.value, t),
        pair(t * special::theta0(-z, -tau, pol)?.value, ONE),
    ])
}

fn theta_modular(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let x = generic_x(s)?;
    let (x1, x2) = (x[0], x[1]);
    let w = s.cnormal_scaled(0.5) * x2;
    let lhs = special::theta0(w / x2, x1 / x2, pol)?.value * special::theta0(w / x1, x2 / x1, pol)?.value;
    Ok(vec![pair(lhs, (-PI * I * printed_p2(w, x1, x2)).exp())])
}

fn theta_multiplier(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let len = s.int(1, 6) as usize;
    let g = s.sl2(len);
    let (z, tau) = (z_point(s), upper(s));
    let (z2, tau2) = special::sl2_act(&special::sl2_inv(&g), z, tau)?;
    if tau2.im < 0.05 {
        return Err(SampleError::Resample);
    }
    let lhs = special::theta0(z, tau, pol)?.value;
    let rhs = special::theta_multiplier(&g, z, tau)? * special::theta0(z2, tau2, pol)?.value;
    Ok(vec![pair(lhs, rhs)])
}

fn gamma_points(s: &mut Sampler) -> (C, C, C) {
    (z_point(s), modulus(s), modulus(s))
}

fn gamma_difference_tau(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = gamma_points(s);
    let lhs = special::elliptic_gamma(z + tau, tau, sigma, pol)?.value;
    let rhs = special::theta0(z, sigma, pol)?.value * special::elliptic_gamma(z, tau, sigma, pol)?.value;
    Ok(vec![pair(lhs, rhs)])
}

fn gamma_difference_sigma(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = gamma_points(s);
    let lhs = special::elliptic_gamma(z + sigma, tau, sigma, pol)?.value;
    let rhs = special::theta0(z, tau, pol)?.value * special::elliptic_gamma(z, tau, sigma, pol)?.value;
    Ok(vec![pair(lhs, rhs)])
}

fn gamma_symmetry(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = gamma_points(s);
    Ok(vec![pair(
        special::elliptic_gamma(z, tau, sigma, pol)?.value,
        special::elliptic_gamma(z, sigma, tau, pol)?.value,
    )])
}

fn gamma_reflection(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = gamma_points(s);
    let g = special::elliptic_gamma(z, tau, sigma, pol)?.value;
    Ok(vec![
        pair(g * special::elliptic_gamma(-z, -sigma, -tau, pol)?.value, ONE),
        pair(g * special::elliptic_gamma(tau + sigma - z, tau, sigma, pol)?.value, ONE),
    ])
}

fn gamma_three_term(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = (z_point(s), upper(s), upper(s));
    let lhs = special::elliptic_gamma(z, tau, sigma, pol)?.value;
    let rhs = special::elliptic_gamma(z, tau, tau + sigma, pol)?.value
        * special::elliptic_gamma(z + sigma, tau + sigma, sigma, pol)?.value;
    Ok(vec![pair(lhs, rhs)])
}

fn gamma_modular(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let x = generic_x(s)?;
    let w = s.cnormal_scaled(0.5) * x[2];
    let [x1, x2, x3] = x;
    let lhs = special::elliptic_gamma(w / x3, x1 / x3, x2 / x3, pol)?.value
        * special::elliptic_gamma(w / x1, x2 / x1, x3 / x1, pol)?.value
        * special::elliptic_gamma(w / x2, x3 / x2, x1 / x2, pol)?.value;
    Ok(vec![pair(lhs, (-PI * I * printed_p3(w, &x) / 3.0).exp())])
}

/// The chamber formulas agree with each other and with the extension rules.
fn gamma_chamber_consistency(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = gamma_points(s);
    let g = special::elliptic_gamma(z, tau, sigma, pol)?.value;
    let mut out = vec![
        pair(g * special::elliptic_gamma(z - tau, -tau, sigma, pol)?.value, ONE),
        pair(g * special::elliptic_gamma(z - sigma, tau, -sigma, pol)?.value, ONE),
    ];
    let (tn, sp) = (-upper(s), upper(s));
    out.push(pair(
        special::elliptic_gamma(z, tn, sp, pol)?.value,
        special::elliptic_gamma_via_reflection(z, tn, sp, pol)?.value,
    ));
    Ok(out)
}

fn multiple_gamma(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let z = z_point(s);
    let t: Vec<C> = (0..3).map(|_| upper(s)).collect();
    let g2 = special::multiple_gamma(2, z, &t, pol)?.value;
    Ok(vec![
        pair(special::multiple_gamma(0, z, &t[..1], pol)?.value, special::theta0(z, t[0], pol)?.value),
        pair(special::multiple_gamma(1, z, &t[..2], pol)?.value, special::elliptic_gamma(z, t[0], t[1], pol)?.value),
        pair(
            special::multiple_gamma(2, z + t[0], &t, pol)?.value,
            special::elliptic_gamma(z, t[1], t[2], pol)?.value * g2,
        ),
        pair(
            special::multiple_gamma(2, z + t[2], &t, pol)?.value,
            special::elliptic_gamma(z, t[0], t[1], pol)?.value * g2,
        ),
    ])
}

fn narukawa(s: &mut Sampler, pol: &TruncationPolicy, r: usize) -> SampleResult {
    let x = generic_x(s)?;
    let w = s.cnormal_scaled(0.5) * x[0];
    let (l, rr) = special::narukawa_sides(w, &x[..r], pol)?;
    Ok(vec![pair(l, rr)])
}

fn narukawa_2(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    narukawa(s, pol, 2)
}

fn narukawa_3(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    narukawa(s, pol, 3)
}

fn gamma_ab(a: &LatticeVector, b: &LatticeVector, p: &HomPoint, pol: &TruncationPolicy) -> Result<C, SampleError> {
    Ok(wedge::wedge_gamma(&Wedge::new(*a, *b)?, p, pol)?.value)
}

fn inversion(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 4);
    let p = domain_point(s, &[w.a, w.b])?;
    Ok(vec![pair(gamma_ab(&w.a, &w.b, &p, pol)? * gamma_ab(&w.b, &w.a, &p, pol)?, ONE)])
}

/// φ_{a,b,c}Γ_{a,c} = Γ_{a,b}Γ_{b,c}.
fn triple_sides(t: &[LatticeVector; 3], p: &HomPoint, pol: &TruncationPolicy) -> Result<Pair, SampleError> {
    let [a, b, c] = t;
    let phi = wedge::cocycle_phi_abc(a, b, c, p)?;
    Ok(pair(phi * gamma_ab(a, c, p, pol)?, gamma_ab(a, b, p, pol)? * gamma_ab(b, c, p, pol)?))
}

fn fixed_triple(s: &mut Sampler, pol: &TruncationPolicy, t: [LatticeVector; 3]) -> SampleResult {
    let p = domain_point(s, &t)?;
    Ok(vec![triple_sides(&t, &p, pol)?])
}

fn three_term_e1e2e3(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    use LatticeVector as V;
    let t = [V::E1, V::E2, V::E3];
    let x = s.triple_x(&t[0], &t[1], &t[2]).ok_or(SampleError::Resample)?;
    let p = s.point(x, 0.3);
    Ok(vec![triple_sides(&t, &p, pol)?])
}

fn three_term_coplanar(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    use LatticeVector as V;
    fixed_triple(s, pol, [V::E1, V::new(1, -1, 0), V::E2])
}

fn four_term(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    use LatticeVector as V;
    fixed_triple(s, pol, [V::E1, V::new(1, 2, 0), V::E3])
}

fn cocycle_abc(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let t = random_triple(s, 2);
    fixed_triple(s, pol, t)
}

fn wedge_oracle(s: &mut Sampler, _pol: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 3);
    let p = domain_point(s, &[w.a, w.b])?;
    let pol = TruncationPolicy { tol: 1e-16, max_terms: 4000 };
    let lhs = wedge::wedge_gamma(&w, &p, &pol)?.value;
    let rhs = wedge::wedge_gamma_direct(&w, &p, 1e-18)?;
    Ok(vec![pair(lhs, rhs)])
}

/// Γ_{ga,gb}(w, x) = Γ_{a,b}(w, g⁻¹x).
fn wedge_equivariance(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 3);
    let len = s.int(1, 4) as usize;
    let g = s.sl3(len);
    let (ga, gb) = (g.apply(&w.a)?, g.apply(&w.b)?);
    let p = domain_point(s, &[ga, gb])?;
    let q = HomPoint::new(p.w, g.inverse()?.apply_complex(&p.x));
    Ok(vec![pair(gamma_ab(&ga, &gb, &p, pol)?, gamma_ab(&w.a, &w.b, &q, pol)?)])
}

/// Lagrange extrapolation of an exp-quadratic from w, w+h, w+2h to w+3h and w−h.
fn exp_quadratic_pairs<F>(p: &HomPoint, h: C, f: F) -> Result<Vec<Pair>, SampleError>
where
    F: Fn(&HomPoint) -> Result<C, SampleError>,
{
    let at = |k: f64| HomPoint::new(p.w + h * k, p.x);
    let v: Vec<C> = [-1.0, 0.0, 1.0, 2.0, 3.0].iter().map(|&k| f(&at(k))).collect::<Result<_, _>>()?;
    if v.iter().any(|z| !z.is_finite() || z.norm() == 0.0) {
        return Err(SampleError::Resample);
    }
    // compare logarithms, so values near the ends of the f64 range do not overflow when cubed
    let l: Vec<C> = v.iter().map(|z| z.ln()).collect();
    let (m1, f0, f1, f2, f3) = (l[0], l[1], l[2], l[3], l[4]);
    let one = C::new(1.0, 0.0);
    Ok(vec![pair((f3 - f0 - 3.0 * (f2 - f1)).exp(), one), pair((m1 - 3.0 * f0 - f2 + 3.0 * f1).exp(), one)])
}

fn cocycle_ab(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 3);
    let el = small_group_element(s);
    let p = domain_point(s, &[w.a, w.b])?;
    let h = s.cnormal_scaled(0.3);
    exp_quadratic_pairs(&p, h, |q| Ok(wedge::cocycle_phi_ab(&w.a, &w.b, &el, q, &DefaultFramings, pol)?))
}

fn cocycle_a_translations(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let a = s.primitive(2);
    let f = lattice::framing_of(&a)?;
    let (mu, nu) = (s.covector(2), s.covector(2));
    let p = domain_point(s, &[a])?;
    let (g, h) = (GroupElement::translation(mu), GroupElement::translation(nu));
    let lhs = wedge::cocycle_phi_a(&a, &g, &h, &p, &DefaultFramings, pol)?;
    Ok(vec![pair(lhs, wedge::cocycle_phi_a_translation(&f, &mu, &nu, &p))])
}

fn cocycle_a_general(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let a = s.primitive(2);
    let (g, h, k) = (small_group_element(s), small_group_element(s), small_group_element(s));
    let p = domain_point(s, &[a])?;
    let fr = DefaultFramings;
    let gi = g.inverse()?;
    let lhs = wedge::cocycle_phi_a(&a, &g, &h, &p, &fr, pol)? * wedge::cocycle_phi_a(&a, &g.compose(&h)?, &k, &p, &fr, pol)?;
    let rhs = wedge::cocycle_phi_a(&a, &g, &h.compose(&k)?, &p, &fr, pol)?
        * wedge::cocycle_phi_a(&gi.act_vector(&a)?, &h, &k, &gi.act(&p), &fr, pol)?;
    let hstep = s.cnormal_scaled(0.3);
    let mut out = vec![pair(lhs, rhs)];
    out.extend(exp_quadratic_pairs(&p, hstep, |q| Ok(wedge::cocycle_phi_a(&a, &g, &h, q, &fr, pol)?))?);
    Ok(out)
}

/// φ_{a,b}(g)φ_{b,c}(g)/φ_{a,c}(g) = φ_{a,b,c}(y)/φ_{g⁻¹a,g⁻¹b,g⁻¹c}(g⁻¹y).
fn cocycle_mixed(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let t = random_triple(s, 1);
    let [a, b, c] = t;
    let el = small_group_element(s);
    let p = domain_point(s, &t)?;
    let fr = DefaultFramings;
    let phi = |u: &LatticeVector, v: &LatticeVector| wedge::cocycle_phi_ab(u, v, &el, &p, &fr, pol);
    let lhs = phi(&a, &b)? * phi(&b, &c)? / phi(&a, &c)?;
    let gi = el.inverse()?;
    let [ga, gb, gc] = [gi.act_vector(&a)?, gi.act_vector(&b)?, gi.act_vector(&c)?];
    let rhs = wedge::cocycle_phi_abc(&a, &b, &c, &p)? / wedge::cocycle_phi_abc(&ga, &gb, &gc, &gi.act(&p))?;
    Ok(vec![pair(lhs, rhs)])
}

fn translation_3_cocycle(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let a = s.primitive(3);
    let f = lattice::framing_of(&a)?;
    let (l, m, n) = (s.covector(3), s.covector(3), s.covector(3));
    let c = wedge::translation_coboundary(&f, &l, &m, &n)?;
    let c: f64 = c.to_string().parse().expect("integer");
    Ok(vec![real(c, wedge::expected_translation_cocycle(&f, &l, &m, &n) as f64)])
}

fn fundamental_set_cardinality(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 4, i64::MAX);
    let d = w.data()?;
    Ok(vec![real(d.fundamental_set.len() as f64, w.modulus as f64)])
}

fn euler_phi(n: i64) -> i64 {
    (1..=n).filter(|&k| num::integer::gcd(k, n) == 1).count() as i64
}

/// Normal forms with a = e₁ and b over the box of entries ≤ 8 realize exactly φ(s) classes r mod s.
fn orbit_count(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let modulus = s.int(1, 6);
    let mut seen = std::collections::BTreeSet::new();
    for b0 in -8..=8 {
        for b1 in -8..=8 {
            for b2 in -8..=8 {
                let b = LatticeVector::new(b0, b1, b2);
                if !b.is_primitive() {
                    continue;
                }
                if let NormalKind::General { r, s } = normal_form(&LatticeVector::E1, &b)?.kind {
                    if s == modulus {
                        seen.insert(r);
                    }
                }
            }
        }
    }
    Ok(vec![real(seen.len() as f64, euler_phi(modulus) as f64)])
}

/// The normal form is an SL₃(ℤ) invariant.
fn normal_form_invariance(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 4, i64::MAX);
    let len = s.int(1, 5) as usize;
    let g = s.sl3(len);
    let k1 = normal_form(&w.a, &w.b)?.kind;
    let k2 = normal_form(&g.apply(&w.a)?, &g.apply(&w.b)?)?.kind;
    let coprime = match k1 {
        NormalKind::General { r, s } => num::integer::gcd(r, s) == 1 && (0..s).contains(&r),
        _ => true,
    };
    Ok(vec![holds(k1 == k2), holds(coprime)])
}

fn hermitian_bertie(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let len = s.int(1, 5) as usize;
    let g = s.sl2(len);
    let (n1, n2) = (s.int(-2, 2), s.int(-2, 2));
    let (z, tau) = (z_point(s), modulus(s));
    let shifted = z + tau * n1 as f64 + n2 as f64;
    let (z2, tau2) = special::sl2_act(&g, shifted, tau)?;
    if tau2.im.abs() < 0.05 {
        return Err(SampleError::Resample);
    }
    let base = herm::theta_norm(z, tau, pol)?;
    Ok(vec![
        real(herm::theta_norm(shifted, tau, pol)?, base),
        real(herm::theta_norm(z2, tau2, pol)?, base),
    ])
}

fn h2_reflection(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let (z, tau) = (z_point(s), modulus(s));
    Ok(vec![real(herm::h2(z, tau)? * herm::h2(-z, -tau)?, 1.0)])
}

fn hermitian_inversion(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 4);
    let p = domain_point(s, &[w.a, w.b])?;
    Ok(vec![logs(herm::log_h_ab(&w, &p)? + herm::log_h_ab(&w.reversed(), &p)?, 0.0)])
}

/// h_{a,b}h_{b,c}h_{c,a} = |φ_{a,b,c}|⁻².
fn hermitian_cocycle(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    use LatticeVector as V;
    let t = match s.int(0, 2) {
        0 => [V::E1, V::E2, V::E3],
        1 => [V::E1, V::new(1, -1, 0), V::E2],
        _ => random_triple(s, 2),
    };
    let p = domain_point(s, &t)?;
    let (l, r) = herm::triple_metric_sides(&t[0], &t[1], &t[2], &p)?;
    Ok(vec![logs(l, r)])
}

/// h_{g⁻¹a,g⁻¹b}(g⁻¹y)h_b(g;y) = |φ_{a,b}(g;y)|²h_a(g;y)h_{a,b}(y).
fn hermitian_metric_ab(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 3);
    let el = small_group_element(s);
    let p = domain_point(s, &[w.a, w.b])?;
    let gi = el.inverse()?;
    let w2 = Wedge::new(gi.act_vector(&w.a)?, gi.act_vector(&w.b)?)?;
    let fa = lattice::framing_of(&w.a)?;
    let fb = lattice::framing_of(&w.b)?;
    let phi = wedge::cocycle_phi_ab(&w.a, &w.b, &el, &p, &DefaultFramings, pol)?;
    let l = herm::log_h_ab(&w2, &gi.act(&p))? + herm::h_a_group(&fb, &el, &p)?.ln();
    let r = 2.0 * phi.norm().ln() + herm::h_a_group(&fa, &el, &p)?.ln() + herm::log_h_ab(&w, &p)?;
    Ok(vec![logs(l, r)])
}

/// h_a(g₁g₂;y) = |φ_a(g₁,g₂;y)|²h_a(g₁;y)h_{g₁⁻¹a}(g₂;g₁⁻¹y).
fn hermitian_metric_a(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let a = s.primitive(2);
    let (g1, g2) = (small_group_element(s), small_group_element(s));
    let p = domain_point(s, &[a])?;
    let gi = g1.inverse()?;
    let fa = lattice::framing_of(&a)?;
    let fa2 = lattice::framing_of(&gi.act_vector(&a)?)?;
    let phi = wedge::cocycle_phi_a(&a, &g1, &g2, &p, &DefaultFramings, pol)?;
    let l = herm::log_h_a(&fa, &g1.compose(&g2)?.translation_part(), &p)?;
    let r = 2.0 * phi.norm().ln()
        + herm::log_h_a(&fa, &g1.translation_part(), &p)?
        + herm::log_h_a(&fa2, &g2.translation_part(), &gi.act(&p))?;
    Ok(vec![logs(l, r)])
}

fn equazione1(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 3);
    let mu = s.covector(1);
    let p = domain_point(s, &[w.a, w.b])?;
    let (fa, fb) = (lattice::framing_of(&w.a)?, lattice::framing_of(&w.b)?);
    let lhs = herm::log_norm_gamma(&w, &p.shifted(&mu), pol)? + herm::log_norm_delta(&fb, &mu, &p, pol)?;
    let rhs = herm::log_norm_gamma(&w, &p, pol)? + herm::log_norm_delta(&fa, &mu, &p, pol)?;
    Ok(vec![logs(lhs, rhs)])
}

fn equazione2(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let a = s.primitive(2);
    let f = lattice::framing_of(&a)?;
    let (mu, nu) = (s.covector(2), s.covector(2));
    let p = domain_point(s, &[a])?;
    let lhs = herm::log_norm_delta(&f, &mu.add(&nu), &p, pol)?;
    let rhs = herm::log_norm_delta(&f, &mu, &p, pol)? + herm::log_norm_delta(&f, &nu, &p.shifted(&mu), pol)?;
    Ok(vec![logs(lhs, rhs)])
}

/// ‖Δ_a(μ∘g⁻¹; w, x)‖² = ‖Δ_{g⁻¹a}(μ; w, g⁻¹x)‖².
fn equazione3(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let a = s.primitive(2);
    let len = s.int(1, 3) as usize;
    let g = s.sl3(len);
    let gi = g.inverse()?;
    let mu = s.covector(2);
    let p = domain_point(s, &[a])?;
    let ga = gi.apply(&a)?;
    let lhs = herm::log_norm_delta(&lattice::framing_of(&a)?, &mu.compose(&gi), &p, pol)?;
    let q = HomPoint::new(p.w, gi.apply_complex(&p.x));
    let rhs = herm::log_norm_delta(&lattice::framing_of(&ga)?, &mu, &q, pol)?;
    Ok(vec![logs(lhs, rhs)])
}

/// ‖Δ_a‖² does not depend on the framing, and is invariant under w ↦ w + μ(x) for μ ∈ H(a).
fn framing_independence(s: &mut Sampler, pol: &TruncationPolicy) -> SampleResult {
    let a = s.primitive(2);
    let f = lattice::framing_of(&a)?;
    let f2 = other_framing(s, &f);
    let mu = s.covector(2);
    let p = domain_point(s, &[a])?;
    let base = herm::log_norm_delta(&f, &mu, &p, pol)?;
    let plane = f.alpha[1].scale(s.int(-1, 1)).add(&f.alpha[2].scale(s.int(-1, 1)));
    // Δ_a(μ) only depends on μ(a), so compare translations with equal pairing
    Ok(vec![
        logs(herm::log_norm_delta(&f2, &mu, &p, pol)?, base),
        logs(herm::log_norm_delta(&f, &mu, &p.shifted(&plane), pol)?, base),
    ])
}

fn h3_shift(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = gamma_points(s);
    Ok(vec![logs(herm::log_h3(z + tau, tau, sigma)?, herm::log_h2(z, sigma)? + herm::log_h3(z, tau, sigma)?)])
}

fn h3_subdivision(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = gamma_points(s);
    let base = herm::log_h3(z, tau, sigma)?;
    let mut out = Vec::new();
    for n in 2..=3 {
        let mut acc = 0.0;
        for j in 0..n {
            acc += herm::log_h3(z + tau * j as f64, tau * n as f64, sigma)?;
        }
        out.push(logs(acc, base));
    }
    Ok(out)
}

fn im_product(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let n = s.int(1, 5) as usize;
    let z: Vec<C> = (0..n).map(|_| s.cnormal()).collect();
    let w: Vec<C> = (0..n).map(|_| s.cnormal()).collect();
    for i in 0..n {
        for j in 0..i {
            if (w[i] * w[j].conj()).im.abs() < 0.05 * w[i].norm() * w[j].norm() {
                return Err(SampleError::Resample);
            }
        }
    }
    let (l, r) = herm::im_product_sides(&z, &w)?;
    Ok(vec![real(l, r)])
}

fn h_ab_series(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    use LatticeVector as V;
    let w = match s.int(0, 2) {
        0 => Wedge::new(V::E1, V::E2)?,
        1 => Wedge::new(V::E1, V::new(1, 2, 0))?,
        _ => random_wedge(s, 2, 2),
    };
    let p = domain_point(s, &[w.a, w.b])?;
    let oracle = herm::h_ab_series_oracle(&w, &p, 1e-18)?;
    Ok(vec![real(herm::h_ab(&w, &p)?, oracle)])
}

/// Replacing α by α + γ (and β by β + γ) leaves h_{a,b} unchanged.
fn h_ab_well_defined(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 3);
    let p = domain_point(s, &[w.a, w.b])?;
    let d = w.data()?;
    let (k, l) = (s.int(-2, 2), s.int(-2, 2));
    let base = herm::log_h_ab(&w, &p)?;
    let moved = herm::log_h_ab_with(&d.gamma, &d.alpha.add(&d.gamma.scale(k)), &d.beta.add(&d.gamma.scale(l)), &d.fundamental_set, &p)?;
    Ok(vec![logs(moved, base)])
}

fn curvature_h2(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let (z, tau) = (z_point(s), modulus(s));
    let exact = herm::ddbar_log_h2(z, tau)?;
    let f = |v: &[C]| herm::log_h2(v[0], v[1]).expect("Im τ ≠ 0");
    let (_, dev) = herm::ddbar_fd_checked(f, &[z, tau], 1e-4, &exact, 1e-6);
    let c1 = herm::curvature_h2(z, tau)?;
    Ok(vec![deviation(dev), holds(c1.is_real_form(1e-14))])
}

fn curvature_h3(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let (z, tau, sigma) = gamma_points(s);
    let exact = herm::curvature_h3(z, tau, sigma)?;
    let f = |v: &[C]| herm::log_h3(v[0], v[1], v[2]).expect("nondegenerate");
    let (_, dev) = herm::ddbar_fd_checked(f, &[z, tau, sigma], 1e-4, &exact, 1e-6);
    Ok(vec![deviation(dev), holds(exact.scale(I).is_real_form(1e-14))])
}

fn curvature_h_ab(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 2);
    let p = domain_point(s, &[w.a, w.b])?;
    let exact = herm::curvature_h_ab(&w, &p)?;
    let f = |v: &[C]| herm::log_h_ab(&w, &HomPoint::new(v[0], [v[1], v[2], v[3]])).unwrap_or(f64::NAN);
    let at = [p.w, p.x[0], p.x[1], p.x[2]];
    let (_, dev) = herm::ddbar_fd_checked(f, &at, 1e-4, &exact, 1e-6);
    Ok(vec![deviation(dev)])
}

fn fibre_integral(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let tau = upper(s);
    let offset = z_point(s);
    Ok(vec![real(herm::fibre_integral(tau, offset, 200)?, 1.0)])
}

/// The series S_{a,b}(t) is finite at small negative t.
fn series_finite(s: &mut Sampler, _: &TruncationPolicy) -> SampleResult {
    let w = random_wedge(s, 2, 2);
    let p = domain_point(s, &[w.a, w.b])?;
    let t = -s.range(0.01, 0.1);
    let v = herm::series_value(&w, &p, t, 1e-18)?;
    Ok(vec![holds(v.is_finite())])
}

macro_rules! spec {
    ($name:expr, $f:expr, $dom:expr, $n:expr, $tol:expr, $eval:expr) => {
        IdentitySpec { name: $name, formula: $f, domain: $dom, samples: $n, tol: $tol, eval: $eval }
    };
}

/// All registered identities, in reporting order.
pub fn registry() -> Vec<IdentitySpec> {
    vec![
        spec!("bernoulli-printed", "B_{2,2} = P₂, B_{3,3} = P₃, B_{2,3} = R₃ coefficientwise", "exact", 1, 1e-12, bernoulli_printed),
        spec!("bernoulli-difference", "B_{r,n}(w+xᵢ,x) − B_{r,n}(w,x) = n·B_{r−1,n−1}(w,x̂ᵢ)", "r ≤ 4, n ≤ 5, exact", 20, 1e-12, bernoulli_difference),
        spec!("bernoulli-subdivision", "B_{r,n}(w,x) = Σ_{j<m} B_{r,n}(w+jx₁, mx₁, x₂, …)", "r ≤ 4, n ≤ 5, m ≤ 4, exact", 20, 1e-12, bernoulli_subdivision),
        spec!("bernoulli-symmetry", "B_{r,n} is symmetric in x₁…x_r", "r ≤ 4, n ≤ 5, exact", 10, 1e-12, bernoulli_symmetry),
        spec!("theta-periodicity", "θ₀(z+1,τ) = θ₀(z,τ+1) = θ₀(z,τ)", "Im τ ≠ 0", 100, 1e-10, theta_periodicity),
        spec!("theta-quasi-periodicity", "θ₀(z+τ,τ) = −e^{−2πiz}θ₀(z,τ)", "Im τ > 0", 100, 1e-10, theta_quasi_periodicity),
        spec!("theta-extension", "θ₀(z,τ) = 1/θ₀(−z,−τ); quasi-periodicity and z ↦ τ−z on Im τ < 0", "Im τ < 0", 100, 1e-10, theta_extension),
        spec!("theta-modular", "θ₀(w/x₂,x₁/x₂)θ₀(w/x₁,x₂/x₁) = exp(−πiP₂(w,x))", "x₁/x₂ ∉ ℝ", 50, 1e-9, theta_modular),
        spec!("theta-multiplier", "θ₀(z,τ) = exp(−πiQ(g;z,τ))·θ₀(g⁻¹·(z,τ))", "g ∈ SL₂(ℤ) words", 50, 1e-9, theta_multiplier),
        spec!("gamma-difference-tau", "Γ(z+τ,τ,σ) = θ₀(z,σ)Γ(z,τ,σ)", "all chambers", 100, 1e-8, gamma_difference_tau),
        spec!("gamma-difference-sigma", "Γ(z+σ,τ,σ) = θ₀(z,τ)Γ(z,τ,σ)", "all chambers", 100, 1e-8, gamma_difference_sigma),
        spec!("gamma-symmetry", "Γ(z,τ,σ) = Γ(z,σ,τ)", "all chambers", 100, 1e-8, gamma_symmetry),
        spec!("gamma-reflection", "Γ(z,τ,σ)Γ(−z,−σ,−τ) = 1, Γ(z,τ,σ)Γ(τ+σ−z,τ,σ) = 1", "all chambers", 100, 1e-8, gamma_reflection),
        spec!("gamma-three-term", "Γ(z,τ,σ) = Γ(z,τ,τ+σ)Γ(z+σ,τ+σ,σ)", "Im τ, Im σ > 0", 100, 1e-8, gamma_three_term),
        spec!("gamma-modular", "Γ(w/x₃,x₁/x₃,x₂/x₃)Γ(w/x₁,x₂/x₁,x₃/x₁)Γ(w/x₂,x₃/x₂,x₁/x₂) = exp(−πiP₃(w,x)/3)", "xᵢ/xⱼ ∉ ℝ", 100, 1e-8, gamma_modular),
        spec!("gamma-chamber-consistency", "Γ(z,τ,σ) = 1/Γ(z−τ,−τ,σ) = 1/Γ(z−σ,τ,−σ); direct (−,+) product = reflected one", "all chambers", 100, 1e-8, gamma_chamber_consistency),
        spec!("multiple-gamma", "G₀ = θ₀, G₁ = Γ, G₂(z+τᵢ) = G₁(z, τ̂ᵢ)G₂(z)", "Im τᵢ > 0", 30, 1e-8, multiple_gamma),
        spec!("narukawa-2", "∏_k θ₀(w/x_k, x_j/x_k) = exp(−πiB_{2,2}(w,x))", "xᵢ/xⱼ ∉ ℝ", 50, 1e-8, narukawa_2),
        spec!("narukawa-3", "∏_k Γ(w/x_k, (x_j/x_k)_{j≠k}) = exp(−(πi/3)B_{3,3}(w,x))", "xᵢ/xⱼ ∉ ℝ", 50, 1e-8, narukawa_3),
        spec!("inversion", "Γ_{a,b}Γ_{b,a} = 1", "random wedges, x ∈ U_a⁺∩U_b⁺", 100, 1e-9, inversion),
        spec!("three-term-e1e2e3", "φ_{a,b,c}Γ_{a,c} = Γ_{a,b}Γ_{b,c}, (a,b,c) = (e₁,e₂,e₃)", "x ∈ U_a⁺∩U_b⁺∩U_c⁺", 100, 1e-8, three_term_e1e2e3),
        spec!("three-term-coplanar", "Γ_{a,c} = Γ_{a,b}Γ_{b,c}, (a,b,c) = (e₁,e₁−e₂,e₂)", "x ∈ U_a⁺∩U_b⁺∩U_c⁺", 100, 1e-8, three_term_coplanar),
        spec!("four-term", "φ_{a,b,c}Γ_{a,c} = Γ_{a,b}Γ_{b,c}, (a,b,c) = (e₁,e₁+2e₂,e₃)", "x ∈ U_a⁺∩U_b⁺∩U_c⁺", 100, 1e-8, four_term),
        spec!("wedge-oracle", "Γ_{a,b} = direct cone product over C₊₋ and C₋₊ mod ℤγ", "random wedges, modulus ≤ 3", 50, 1e-8, wedge_oracle),
        spec!("wedge-equivariance", "Γ_{ga,gb}(w,x) = Γ_{a,b}(w,g⁻¹x)", "g ∈ SL₃(ℤ) words", 50, 1e-8, wedge_equivariance),
        spec!("cocycle-abc", "φ_{a,b,c}Γ_{a,c} = Γ_{a,b}Γ_{b,c}, φ_{a,b,c} = exp(−(πi/3)P_{a,b,c})", "random triples", 50, 1e-8, cocycle_abc),
        spec!("cocycle-ab", "φ_{a,b}(g;w,x) := Δ_a(g)Γ_{a,b}/(Γ_{g⁻¹a,g⁻¹b}(g⁻¹y)Δ_b(g)) is exp-quadratic in w", "random wedges and group elements", 50, 1e-8, cocycle_ab),
        spec!("cocycle-a-translations", "Δ_a(μ)Δ_a(ν;w+μ(x))/Δ_a(μ+ν) = exp(−2πiP_a(μ,ν))", "random translations", 50, 1e-8, cocycle_a_translations),
        spec!("cocycle-a-general", "φ_a(g,h)φ_a(gh,k) = φ_a(g,hk)φ_{g⁻¹a}(h,k;g⁻¹y); φ_a(g,h) exp-quadratic in w", "random group elements", 50, 1e-8, cocycle_a_general),
        spec!("cocycle-mixed", "φ_{a,b}(g)φ_{b,c}(g)/φ_{a,c}(g) = φ_{a,b,c}(y)/φ_{g⁻¹a,g⁻¹b,g⁻¹c}(g⁻¹y)", "random triples and group elements", 50, 1e-8, cocycle_mixed),
        spec!("translation-3-cocycle", "δP_a(λ,μ,ν) = −n₁m₂ℓ₃ in framing coordinates, exactly", "random covectors", 20, 1e-12, translation_3_cocycle),
        spec!("fundamental-set-cardinality", "|F/ℤγ| = mod(a,b)", "wedges with entries ≤ 4", 100, 1e-12, fundamental_set_cardinality),
        spec!("orbit-count", "#{r mod s in normal forms (e₁, b)} = φ(s)", "s ≤ 6, entries ≤ 8", 6, 1e-12, orbit_count),
        spec!("normal-form-invariance", "normal form of (ga, gb) = normal form of (a, b); gcd(r, s) = 1", "g ∈ SL₃(ℤ) words", 100, 1e-12, normal_form_invariance),
        spec!("hermitian-bertie", "h₂|θ₀|² is ISL₂(ℤ)-invariant", "random ISL₂(ℤ) elements", 50, 1e-9, hermitian_bertie),
        spec!("h2-reflection", "h₂(−z,−τ)h₂(z,τ) = 1", "Im τ ≠ 0", 50, 1e-12, h2_reflection),
        spec!("hermitian-inversion", "h_{a,b}h_{b,a} = 1", "random wedges", 50, 1e-8, hermitian_inversion),
        spec!("hermitian-cocycle", "h_{a,b}h_{b,c}h_{c,a} = |φ_{a,b,c}|⁻²", "triples", 50, 1e-8, hermitian_cocycle),
        spec!("hermitian-metric-ab", "h_{g⁻¹a,g⁻¹b}(g⁻¹y)h_b(g;y) = |φ_{a,b}(g;y)|²h_a(g;y)h_{a,b}(y)", "random wedges and group elements", 50, 1e-8, hermitian_metric_ab),
        spec!("hermitian-metric-a", "h_a(g₁g₂;y) = |φ_a(g₁,g₂;y)|²h_a(g₁;y)h_{g₁⁻¹a}(g₂;g₁⁻¹y)", "random group elements", 50, 1e-8, hermitian_metric_a),
        spec!("equazione1", "‖Γ_{a,b}(w+μ(x),x)‖²‖Δ_b(μ)‖² = ‖Γ_{a,b}(w,x)‖²‖Δ_a(μ)‖²", "random wedges, covectors", 50, 1e-8, equazione1),
        spec!("equazione2", "‖Δ_a(μ+ν)‖² = ‖Δ_a(μ)‖²‖Δ_a(ν; w+μ(x))‖²", "random covectors", 50, 1e-8, equazione2),
        spec!("equazione3", "‖Δ_a(μ∘g⁻¹; w,x)‖² = ‖Δ_{g⁻¹a}(μ; w,g⁻¹x)‖²", "g ∈ SL₃(ℤ) words", 50, 1e-8, equazione3),
        spec!("framing-independence", "‖Δ_a‖² is independent of the framing and of w ↦ w+μ(x), μ ∈ H(a)", "two framings", 50, 1e-8, framing_independence),
        spec!("h3-shift", "h₃(z+τ,τ,σ) = h₂(z,σ)h₃(z,τ,σ)", "Im τ, Im σ ≠ 0", 50, 1e-12, h3_shift),
        spec!("h3-subdivision", "h₃(z,τ,σ) = ∏_{j<n} h₃(z+jτ,nτ,σ), n = 2, 3", "Im τ, Im σ ≠ 0", 50, 1e-12, h3_subdivision),
        spec!("im-product", "Im ∏zᵢ/∏wᵢ = Σⱼ ∏ᵢIm(zᵢ/wⱼ) / ∏_{i≠j}Im(wᵢ/wⱼ)", "n ≤ 5", 100, 1e-10, im_product),
        spec!("h-ab-series", "h_{a,b} = exp(−(2π/3)S'''_{a,b}(0)) from the cone series", "modulus ≤ 2", 20, 1e-6, h_ab_series),
        spec!("h-ab-well-defined", "h_{a,b} unchanged under α ↦ α + kγ, β ↦ β + lγ", "random wedges", 30, 1e-10, h_ab_well_defined),
        spec!("series-finite", "S_{a,b}(t) finite for small t < 0", "modulus ≤ 2", 10, 1e-12, series_finite),
        spec!("curvature-h2", "∂̄∂ log h₂ = (π/t)(dz − (ζ/t)dτ)∧conj(·) vs finite differences", "Im τ ≠ 0", 20, 1e-5, curvature_h2),
        spec!("curvature-h3", "∂̄∂ log h₃ = (π/6)Σ ∂ᵢ∂ⱼR₃ dzᵢ∧dz̄ⱼ vs finite differences", "Im τ, Im σ ≠ 0", 20, 1e-5, curvature_h3),
        spec!("curvature-h-ab", "∂̄∂ log h_{a,b} = Σ_δ Φ_δ*(∂̄∂ log h₃) vs finite differences", "modulus ≤ 2", 10, 1e-5, curvature_h_ab),
        spec!("fibre-integral", "∫_{ℂ/(ℤ+τℤ)} c₁ = 1", "200×200 midpoint grid", 5, 1e-3, fibre_integral),
    ]
}
