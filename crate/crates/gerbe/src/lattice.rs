//! Integer algebra on Λ = ℤ³ and its dual: wedges, SL₃(ℤ) normal forms,
//! framings, the domains U_a⁺ and the ISL₃(ℤ) action on points (w, x).

use num::integer::Integer;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("vector {0} is not primitive")]
    NotPrimitive(LatticeVector),
    #[error("wedge ({0}, {1}) is degenerate (linearly dependent)")]
    Degenerate(LatticeVector, LatticeVector),
    #[error("triple is linearly dependent or negatively oriented")]
    BadTriple,
    #[error("matrix determinant is {0}, expected 1")]
    NotUnimodular(i128),
    #[error("integer overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, LatticeError>;

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| LatticeError::Overflow)
}

fn gcd3(v: [i64; 3]) -> i64 {
    v[0].gcd(&v[1]).gcd(&v[2])
}

/// Element of Λ = ℤ³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVector(pub [i64; 3]);

/// Element of Λ^∨; pairs with vectors by δ(a) = Σ δᵢaᵢ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoVector(pub [i64; 3]);

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for CoVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.0[0], self.0[1], self.0[2])
    }
}

impl LatticeVector {
    pub const E1: Self = Self([1, 0, 0]);
    pub const E2: Self = Self([0, 1, 0]);
    pub const E3: Self = Self([0, 0, 1]);

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self([a, b, c])
    }

    pub fn is_primitive(&self) -> bool {
        gcd3(self.0) == 1
    }

    pub fn neg(&self) -> Self {
        Self([-self.0[0], -self.0[1], -self.0[2]])
    }

    pub fn add(&self, o: &Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn scale(&self, k: i64) -> Self {
        Self([k * self.0[0], k * self.0[1], k * self.0[2]])
    }

    /// a × b, i.e. the covector x ↦ det(a, b, x).
    pub fn cross(&self, o: &Self) -> [i128; 3] {
        let (a, b) = (self.0.map(i128::from), o.0.map(i128::from));
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    }
}

impl CoVector {
    pub const ZERO: Self = Self([0, 0, 0]);
    pub const EPS1: Self = Self([1, 0, 0]);
    pub const EPS2: Self = Self([0, 1, 0]);
    pub const EPS3: Self = Self([0, 0, 1]);

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self([a, b, c])
    }

    pub fn pair(&self, v: &LatticeVector) -> i64 {
        self.0[0] * v.0[0] + self.0[1] * v.0[1] + self.0[2] * v.0[2]
    }

    pub fn eval(&self, x: &[Complex64; 3]) -> Complex64 {
        x[0] * self.0[0] as f64 + x[1] * self.0[1] as f64 + x[2] * self.0[2] as f64
    }

    pub fn add(&self, o: &Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.map(|v| k * v))
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn is_primitive(&self) -> bool {
        gcd3(self.0) == 1
    }

    /// δ∘g, the row vector δ times g.
    pub fn compose(&self, g: &Mat3) -> Self {
        let mut out = [0i64; 3];
        for (j, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|i| self.0[i] * g.0[i][j]).sum();
        }
        Self(out)
    }
}

pub fn det3(rows: [[i64; 3]; 3]) -> i128 {
    let m = rows.map(|r| r.map(i128::from));
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// det(a, b, c) with a, b, c as columns.
pub fn det_vectors(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> i128 {
    det3([a.0, b.0, c.0])
}

/// det(α, β, γ) with covectors as rows.
pub fn det_covectors(a: &CoVector, b: &CoVector, c: &CoVector) -> i128 {
    det3([a.0, b.0, c.0])
}

/// 3×3 integer matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat3(pub [[i64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Self = Self([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub fn det(&self) -> i128 {
        det3(self.0)
    }

    pub fn row(&self, i: usize) -> CoVector {
        CoVector(self.0[i])
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut out = [[0i64; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let s: i128 = (0..3).map(|k| self.0[i][k] as i128 * o.0[k][j] as i128).sum();
                *e = narrow(s)?;
            }
        }
        Ok(Self(out))
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        let mut out = [0i64; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = narrow((0..3).map(|k| self.0[i][k] as i128 * v.0[k] as i128).sum())?;
        }
        Ok(LatticeVector(out))
    }

    pub fn apply_complex(&self, x: &[Complex64; 3]) -> [Complex64; 3] {
        [0, 1, 2].map(|i| (0..3).map(|k| x[k] * self.0[i][k] as f64).sum())
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d != 1 {
            return Err(LatticeError::NotUnimodular(d));
        }
        let m = self.0.map(|r| r.map(i128::from));
        let mut out = [[0i64; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
                let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
                *e = narrow(m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0])?;
            }
        }
        Ok(Self(out))
    }

    fn row_axpy(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..3 {
            self.0[dst][j] -= k * self.0[src][j];
        }
    }

    fn swap_rows_oriented(&mut self, i: usize, j: usize) {
        // swap and negate the remaining row: stays in SL₃
        self.0.swap(i, j);
        let k = 3 - i - j;
        self.0[k] = self.0[k].map(|v| -v);
    }
}

/// Row operations on `u` that take the column `v` to ±e_p, returning p.
fn reduce_to_unit(v: &mut [i64; 3], u: &mut Mat3, idx: &[usize]) -> Option<usize> {
    loop {
        let nz: Vec<usize> = idx.iter().copied().filter(|&i| v[i] != 0).collect();
        match nz.len() {
            0 => return None,
            1 => return Some(nz[0]),
            _ => {}
        }
        let p = *nz.iter().min_by_key(|&&i| (v[i].unsigned_abs(), i)).unwrap();
        for &i in &nz {
            if i != p {
                let q = v[i].div_euclid(v[p]);
                v[i] -= q * v[p];
                u.row_axpy(i, p, q);
            }
        }
    }
}

pub fn is_primitive(v: &LatticeVector) -> bool {
    v.is_primitive()
}

/// (γ, s) with det(a, b, ·) = s·γ, or None for dependent pairs (modulus 0).
pub fn direction_vector(a: &LatticeVector, b: &LatticeVector) -> Result<Option<(CoVector, i64)>> {
    for v in [a, b] {
        if !v.is_primitive() {
            return Err(LatticeError::NotPrimitive(*v));
        }
    }
    let c = a.cross(b);
    if c == [0, 0, 0] {
        return Ok(None);
    }
    let c = [narrow(c[0])?, narrow(c[1])?, narrow(c[2])?];
    let s = gcd3(c);
    Ok(Some((CoVector(c.map(|v| v / s)), s)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalKind {
    ParallelPlus,
    ParallelMinus,
    General { r: i64, s: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub kind: NormalKind,
    /// g ∈ SL₃(ℤ) with g·a = e₁ and g·b the normal form.
    pub g: Mat3,
}

impl NormalForm {
    /// The completion c = g⁻¹e₃ of (a, b); det(a, b, c) = s and γ(c) = 1.
    pub fn completion(&self) -> Result<LatticeVector> {
        self.g.inverse()?.apply(&LatticeVector::E3)
    }
}

/// g ∈ SL₃(ℤ) with g·a = e₁, obtained by Euclidean row reduction.
fn unimodular_to_e1(a: &LatticeVector) -> Result<Mat3> {
    if !a.is_primitive() {
        return Err(LatticeError::NotPrimitive(*a));
    }
    let mut u = Mat3::IDENTITY;
    let mut v = a.0;
    let p = reduce_to_unit(&mut v, &mut u, &[0, 1, 2]).expect("primitive vector is nonzero");
    if p != 0 {
        u.swap_rows_oriented(0, p);
        v.swap(0, p);
    }
    if v[0] == -1 {
        u.0[0] = u.0[0].map(|x| -x);
        u.0[1] = u.0[1].map(|x| -x);
    }
    Ok(u)
}

pub fn normal_form(a: &LatticeVector, b: &LatticeVector) -> Result<NormalForm> {
    let mut g = unimodular_to_e1(a)?;
    if !b.is_primitive() {
        return Err(LatticeError::NotPrimitive(*b));
    }
    let mut v = g.apply(b)?.0;
    let Some(p) = reduce_to_unit(&mut v, &mut g, &[1, 2]) else {
        let kind = if v[0] == 1 { NormalKind::ParallelPlus } else { NormalKind::ParallelMinus };
        return Ok(NormalForm { kind, g });
    };
    if p == 2 {
        g.0.swap(1, 2);
        g.0[2] = g.0[2].map(|x| -x);
        v.swap(1, 2);
    }
    if v[1] < 0 {
        g.0[1] = g.0[1].map(|x| -x);
        g.0[2] = g.0[2].map(|x| -x);
        v[1] = -v[1];
    }
    let s = v[1];
    let k = v[0].div_euclid(s);
    g.row_axpy(0, 1, k);
    let r = v[0] - k * s;
    Ok(NormalForm { kind: NormalKind::General { r, s }, g })
}

/// A pair of primitive vectors with cached direction vector and modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wedge {
    pub a: LatticeVector,
    pub b: LatticeVector,
    pub gamma: Option<CoVector>,
    pub modulus: i64,
}

/// Lattice data of a non-degenerate wedge in the form used by the products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WedgeData {
    pub r: i64,
    pub s: i64,
    pub gamma: CoVector,
    pub alpha: CoVector,
    pub beta: CoVector,
    pub completion: LatticeVector,
    pub g: Mat3,
    pub fundamental_set: Vec<CoVector>,
}

impl Wedge {
    pub fn new(a: LatticeVector, b: LatticeVector) -> Result<Self> {
        let dv = direction_vector(&a, &b)?;
        Ok(match dv {
            Some((gamma, s)) => Self { a, b, gamma: Some(gamma), modulus: s },
            None => Self { a, b, gamma: None, modulus: 0 },
        })
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.b, self.a).expect("entries already validated")
    }

    pub fn normal_form(&self) -> NormalForm {
        normal_form(&self.a, &self.b).expect("entries already validated")
    }

    /// α, β, γ, F and the normal-form data; errors on degenerate wedges.
    pub fn data(&self) -> Result<WedgeData> {
        let nf = self.normal_form();
        let NormalKind::General { r, s } = nf.kind else {
            return Err(LatticeError::Degenerate(self.a, self.b));
        };
        let g = nf.g;
        let alpha = CoVector::new(s, -r, 0).compose(&g);
        let beta = CoVector::EPS2.compose(&g);
        let fundamental_set = (0..s)
            .map(|j| CoVector::new(j, -(r * j).div_euclid(s), 0).compose(&g))
            .collect();
        Ok(WedgeData {
            r,
            s,
            gamma: g.row(2),
            alpha,
            beta,
            completion: nf.completion()?,
            g,
            fundamental_set,
        })
    }

    /// Representative of δ + ℤγ with δ(c) ∈ [0, γ(c)) = {0}, c the completion.
    pub fn canonical_lift(&self, delta: &CoVector) -> Result<CoVector> {
        let d = self.data()?;
        Ok(delta.sub(&d.gamma.scale(delta.pair(&d.completion))))
    }
}

pub fn complement_covectors(w: &Wedge) -> Result<(CoVector, CoVector)> {
    let d = w.data()?;
    Ok((d.alpha, d.beta))
}

pub fn fundamental_set(w: &Wedge) -> Result<Vec<CoVector>> {
    Ok(w.data()?.fundamental_set)
}

/// F(a,b,c) for an oriented triple: all δ with 0 ≤ δ(a) < α(a), 0 ≤ δ(b) < β(b),
/// 0 ≤ δ(c) < γ(c), where α, β, γ are the direction vectors of (b,c), (c,a), (a,b).
pub fn fundamental_set3(a: &LatticeVector, b: &LatticeVector, c: &LatticeVector) -> Result<Vec<CoVector>> {
    let det = det_vectors(a, b, c);
    if det <= 0 {
        return Err(LatticeError::BadTriple);
    }
    let (al, _) = direction_vector(b, c)?.ok_or(LatticeError::BadTriple)?;
    let (be, _) = direction_vector(c, a)?.ok_or(LatticeError::BadTriple)?;
    let (ga, _) = direction_vector(a, b)?.ok_or(LatticeError::BadTriple)?;
    let bounds = [al.pair(a), be.pair(b), ga.pair(c)];
    // δ = M^{-T} u with M = (a|b|c); M^{-T} = adj(M)^T / det, adj(M)^T rows are the crosses
    let rows = [b.cross(c), c.cross(a), a.cross(b)];
    let mut out = Vec::new();
    for u0 in 0..bounds[0] {
        for u1 in 0..bounds[1] {
            for u2 in 0..bounds[2] {
                let u = [u0 as i128, u1 as i128, u2 as i128];
                let mut d = [0i64; 3];
                let mut integral = true;
                for (k, dk) in d.iter_mut().enumerate() {
                    let num: i128 = (0..3).map(|i| rows[i][k] * u[i]).sum();
                    if num % det != 0 {
                        integral = false;
                        break;
                    }
                    *dk = narrow(num / det)?;
                }
                if integral {
                    out.push(CoVector(d));
                }
            }
        }
    }
    Ok(out)
}

/// An oriented basis (α₁, α₂, α₃) of Λ^∨ with α₁(a) = 1 and α₂, α₃ ∈ H(a).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Framing {
    pub a: LatticeVector,
    pub alpha: [CoVector; 3],
}

impl Framing {
    /// Validates an arbitrary framing of `a`.
    pub fn new(a: LatticeVector, alpha: [CoVector; 3]) -> Option<Self> {
        let ok = alpha[0].pair(&a) == 1
            && alpha[1].pair(&a) == 0
            && alpha[2].pair(&a) == 0
            && det_covectors(&alpha[0], &alpha[1], &alpha[2]) == 1;
        ok.then_some(Self { a, alpha })
    }

    pub fn matrix(&self) -> Mat3 {
        Mat3(self.alpha.map(|c| c.0))
    }

    /// Coordinates (m₁, m₂, m₃) of μ = Σ mᵢαᵢ.
    pub fn coordinates(&self, mu: &CoVector) -> [i64; 3] {
        mu.compose(&self.matrix().inverse().expect("framing has det 1")).0
    }

    /// Transport along g ∈ SL₃(ℤ): the framing of g·a given by αᵢ∘g⁻¹.
    pub fn transport(&self, g: &Mat3) -> Result<Self> {
        let gi = g.inverse()?;
        Ok(Self { a: g.apply(&self.a)?, alpha: self.alpha.map(|c| c.compose(&gi)) })
    }
}

/// The deterministic framing: the rows of the Euclidean reduction taking a to e₁.
pub fn framing_of(a: &LatticeVector) -> Result<Framing> {
    let u = unimodular_to_e1(a)?;
    Ok(Framing { a: *a, alpha: [u.row(0), u.row(1), u.row(2)] })
}

/// x ∈ U_a⁺: Im(α₂(x)·conj(α₃(x))) > 0 for the framing basis of H(a).
pub fn in_domain(a: &LatticeVector, x: &[Complex64; 3]) -> bool {
    match framing_of(a) {
        Ok(f) => (f.alpha[1].eval(x) * f.alpha[2].eval(x).conj()).im > 0.0,
        Err(_) => false,
    }
}

/// Homogeneous point (w, x); (λw, λx) represents the same point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomPoint {
    pub w: Complex64,
    pub x: [Complex64; 3],
}

impl HomPoint {
    pub fn new(w: Complex64, x: [Complex64; 3]) -> Self {
        Self { w, x }
    }

    pub fn scaled(&self, l: Complex64) -> Self {
        Self { w: self.w * l, x: self.x.map(|v| v * l) }
    }

    pub fn shifted(&self, mu: &CoVector) -> Self {
        Self { w: self.w + mu.eval(&self.x), x: self.x }
    }

    /// Not in ℂ·ℝ³.
    pub fn is_valid(&self) -> bool {
        (0..3).any(|i| (0..3).any(|j| (self.x[i] * self.x[j].conj()).im != 0.0))
    }
}

/// (g, μ) ∈ ISL₃(ℤ) acting by (w, x) ↦ (w − μ(x), g·x).
///
/// Composition (g,μ)(h,ν) = (gh, ν + μ∘h) makes this a left action;
/// equivalently (g,μ) is the translation by μ∘g⁻¹ after the linear map g.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    pub g: Mat3,
    pub mu: CoVector,
}

impl GroupElement {
    pub const IDENTITY: Self = Self { g: Mat3::IDENTITY, mu: CoVector::ZERO };

    pub fn new(g: Mat3, mu: CoVector) -> Result<Self> {
        let d = g.det();
        if d != 1 {
            return Err(LatticeError::NotUnimodular(d));
        }
        Ok(Self { g, mu })
    }

    pub fn translation(mu: CoVector) -> Self {
        Self { g: Mat3::IDENTITY, mu }
    }

    pub fn linear(g: Mat3) -> Result<Self> {
        Self::new(g, CoVector::ZERO)
    }

    pub fn compose(&self, o: &Self) -> Result<Self> {
        Ok(Self { g: self.g.mul(&o.g)?, mu: o.mu.add(&self.mu.compose(&o.g)) })
    }

    pub fn inverse(&self) -> Result<Self> {
        let gi = self.g.inverse()?;
        Ok(Self { g: gi, mu: self.mu.compose(&gi).neg() })
    }

    /// μ∘g⁻¹: the covector by which w is shifted after the linear part.
    pub fn translation_part(&self) -> CoVector {
        self.mu.compose(&self.g.inverse().expect("det 1"))
    }

    pub fn act(&self, p: &HomPoint) -> HomPoint {
        HomPoint { w: p.w - self.mu.eval(&p.x), x: self.g.apply_complex(&p.x) }
    }

    pub fn act_vector(&self, a: &LatticeVector) -> Result<LatticeVector> {
        self.g.apply(a)
    }
}

pub fn group_act(el: &GroupElement, p: &HomPoint) -> HomPoint {
    el.act(p)
}
