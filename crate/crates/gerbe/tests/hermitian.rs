use gerbe::hermitian::*;
use gerbe::lattice::*;
use gerbe::sampling::Sampler;
use gerbe::special::{sl2_act, sl2_mul, TruncationPolicy, SL2_S};
use gerbe::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn points(name: &str, vs: &[LatticeVector], n: usize) -> Vec<HomPoint> {
    let mut s = Sampler::new(9, name);
    let mut out = Vec::new();
    while out.len() < n {
        if let Some(x) = s.domain_x(vs, 400) {
            out.push(s.point(x, 0.3));
        }
    }
    out
}

#[test]
fn h2_on_the_real_axis() {
    for t in [0.3, 1.0, 2.5, -0.7] {
        let h = h2(c(0.4, 0.0), c(0.1, t)).unwrap();
        assert!((h / (-PI * t / 3.0).exp() - 1.0).abs() < 1e-14);
    }
    assert!(h2(c(0.1, 0.2), c(0.5, 0.0)).is_err());
}

#[test]
fn h2_closed_form() {
    // exp(−2π(ζ²/t − ζ + t/6))
    for (zeta, t) in [(0.3, 1.1), (-0.4, 0.6), (1.7, -0.9)] {
        let expect = (-2.0 * PI * (zeta * zeta / t - zeta + t / 6.0)).exp();
        assert!((h2(c(0.0, zeta), c(0.0, t)).unwrap() / expect - 1.0).abs() < 1e-13);
    }
}

#[test]
fn trivial_components() {
    let a = v(1, -1, 2);
    let f = framing_of(&a).unwrap();
    for p in points("trivial", &[a], 3) {
        assert_eq!(h_ab(&Wedge::new(a, a).unwrap(), &p).unwrap(), 1.0);
        assert_eq!(h_a(&f, &f.alpha[1], &p).unwrap(), 1.0);
    }
}

fn v(a: i64, b: i64, c: i64) -> LatticeVector {
    LatticeVector::new(a, b, c)
}

#[test]
fn h2_curvature_at_real_z() {
    // dz∧dz̄ coefficient of c₁ is i/(2 Im τ) when Im z = 0
    for t in [0.5, 1.3] {
        let c1 = curvature_h2(c(0.2, 0.0), c(0.3, t)).unwrap();
        assert!((c1.coeffs[0][0] - c(0.0, 1.0 / (2.0 * t))).norm() < 1e-15);
        assert!(c1.coeffs[0][1].norm() < 1e-15);
        assert!(c1.is_real_form(1e-15) || c1.scale(c(0.0, -1.0)).is_real_form(1e-15));
    }
}

#[test]
fn curvatures_against_finite_differences() {
    let mut s = Sampler::new(1, "fd-test");
    for _ in 0..5 {
        let z = s.cnormal_scaled(0.4);
        let tau = c(s.range(-0.5, 0.5), s.range(0.4, 1.6));
        let sigma = c(s.range(-0.5, 0.5), -s.range(0.4, 1.6));
        let exact = ddbar_log_h2(z, tau).unwrap();
        let fd = ddbar_fd(|v| log_h2(v[0], v[1]).unwrap(), &[z, tau], 1e-3);
        assert!(exact.rel_dev(&fd) < 1e-5);
        let exact = curvature_h3(z, tau, sigma).unwrap();
        let fd = ddbar_fd(|v| log_h3(v[0], v[1], v[2]).unwrap(), &[z, tau, sigma], 1e-3);
        assert!(exact.rel_dev(&fd) < 1e-5);
    }
}

#[test]
fn wedge_curvature_against_finite_differences() {
    for (a, b) in [(LatticeVector::E1, LatticeVector::E2), (LatticeVector::E1, v(1, 2, 0))] {
        let w = Wedge::new(a, b).unwrap();
        for p in points("fab", &[a, b], 3) {
            let exact = curvature_h_ab(&w, &p).unwrap();
            let at = [p.w, p.x[0], p.x[1], p.x[2]];
            let f = |y: &[Complex64]| log_h_ab(&w, &HomPoint::new(y[0], [y[1], y[2], y[3]])).unwrap();
            let (_, dev) = ddbar_fd_checked(f, &at, 1e-3, &exact, 1e-5);
            assert!(dev < 1e-5, "{dev}");
        }
    }
}

#[test]
fn fibre_integral_is_one() {
    for (tau, off) in [(c(0.0, 1.0), c(0.0, 0.0)), (c(0.4, 0.7), c(0.3, -0.2))] {
        assert!((fibre_integral(tau, off, 200).unwrap() - 1.0).abs() < 1e-3);
    }
}

#[test]
fn im_product_small_cases() {
    let (z, w) = ([c(0.3, 1.2)], [c(-0.7, 0.4)]);
    let (l, r) = im_product_sides(&z, &w).unwrap();
    assert!((l - r).abs() <= 1e-15 * l.abs());
    let z = [c(0.3, 1.2), c(1.0, -0.5), c(0.2, 0.9)];
    let w = [c(-0.7, 0.4), c(0.6, 0.8), c(1.1, -0.3)];
    assert!(im_product_identity_check(&z, &w).unwrap() < 1e-12);
    // the right-hand side does not depend on the order of the wⱼ
    let (_, r1) = im_product_sides(&z, &w).unwrap();
    let (_, r2) = im_product_sides(&z, &[w[2], w[0], w[1]]).unwrap();
    assert!((r1 - r2).abs() < 1e-12 * r1.abs());
}

#[test]
fn series_oracle_matches_h_ab() {
    for (a, b) in [(LatticeVector::E1, LatticeVector::E2), (LatticeVector::E1, v(1, 2, 0))] {
        let w = Wedge::new(a, b).unwrap();
        for p in points("series", &[a, b], 3) {
            let oracle = h_ab_series_oracle(&w, &p, 1e-18).unwrap();
            let direct = h_ab(&w, &p).unwrap();
            assert!((oracle.ln() - direct.ln()).abs() < 1e-6, "{oracle} vs {direct}");
            let t = series_value(&w, &p, -0.05, 1e-18).unwrap();
            assert!(t.is_finite());
        }
    }
}

#[test]
fn metric_of_the_triple() {
    let (a, b, cc) = (LatticeVector::E1, LatticeVector::E2, LatticeVector::E3);
    for p in points("triple", &[a, b, cc], 5) {
        let (l, r) = triple_metric_sides(&a, &b, &cc, &p).unwrap();
        assert!((l - r).abs() < 1e-9 * (1.0 + l.abs()));
    }
}

#[test]
fn metric_condition_needs_the_wedge_factor() {
    // at g = 1 we have φ_{a,b} = h_a = h_b = 1, so a metric condition without the h_{a,b}(y)
    // factor on the right would force h_{a,b} ≡ 1, which it is not
    let w = Wedge::new(LatticeVector::E1, v(1, 2, 0)).unwrap();
    for p in points("hab", &[w.a, w.b], 5) {
        assert!((h_ab(&w, &p).unwrap() - 1.0).abs() > 1e-6);
    }
}

fn upper() -> impl Strategy<Value = Complex64> {
    (-0.5f64..0.5, 0.4f64..1.5).prop_map(|(a, b)| c(a, b))
}

fn small() -> impl Strategy<Value = Complex64> {
    (-0.6f64..0.6, -0.3f64..0.3).prop_map(|(a, b)| c(a, b))
}

fn nonzero_im() -> impl Strategy<Value = Complex64> {
    (-0.5f64..0.5, 0.3f64..1.5, any::<bool>()).prop_map(|(a, b, s)| c(a, if s { b } else { -b }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_norm_is_isl2_invariant(z in small(), tau in upper(), m in -2i64..=2, n in -2i64..=2, k in 0usize..4) {
        let base = theta_norm(z, tau, &pol()).unwrap();
        // translation by the lattice
        let moved = theta_norm(z + m as f64 + tau * n as f64, tau, &pol()).unwrap();
        prop_assert!((moved / base - 1.0).abs() < 1e-9);
        // an SL₂ word
        let mut g = [[1, 0], [0, 1]];
        for _ in 0..k {
            g = sl2_mul(&g, &SL2_S);
            g = sl2_mul(&g, &[[1, m], [0, 1]]);
        }
        let (z2, t2) = sl2_act(&g, z, tau).unwrap();
        prop_assume!(t2.im > 0.05);
        let Ok(other) = theta_norm(z2, t2, &pol()) else { return Ok(()) };
        prop_assert!((other / base - 1.0).abs() < 1e-8, "{} vs {}", other, base);
    }

    #[test]
    fn h2_reflection(z in small(), tau in nonzero_im()) {
        prop_assert!((log_h2(-z, -tau).unwrap() + log_h2(z, tau).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn h3_shift(z in small(), tau in nonzero_im(), sigma in nonzero_im()) {
        let l = log_h3(z + tau, tau, sigma).unwrap();
        let r = log_h2(z, sigma).unwrap() + log_h3(z, tau, sigma).unwrap();
        prop_assert!((l - r).abs() < 1e-10 * (1.0 + l.abs()));
    }

    #[test]
    fn h3_subdivision(z in small(), tau in nonzero_im(), sigma in nonzero_im(), n in 2usize..=4) {
        let base = log_h3(z, tau, sigma).unwrap();
        let parts: f64 = (0..n).map(|j| log_h3(z + tau * j as f64, tau * n as f64, sigma).unwrap()).sum();
        prop_assert!((parts - base).abs() < 1e-10 * (1.0 + base.abs()));
    }

    #[test]
    fn im_product_identity(zs in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5), ws in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 5), n in 1usize..=5) {
        let z: Vec<Complex64> = zs[..n].iter().map(|&(a, b)| c(a, b)).collect();
        let w: Vec<Complex64> = ws[..n].iter().map(|&(a, b)| c(a, b)).collect();
        for i in 0..n {
            for j in 0..i {
                prop_assume!((w[i] * w[j].conj()).im.abs() > 0.05 * w[i].norm() * w[j].norm());
            }
        }
        prop_assume!(w.iter().all(|x| x.norm() > 0.1));
        prop_assert!(im_product_identity_check(&z, &w).unwrap() < 1e-9);
    }
}
