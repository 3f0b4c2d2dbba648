use gerbe::special::*;
use gerbe::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn e(t: Complex64) -> Complex64 {
    (2.0 * PI * I * t).exp()
}

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

/// ∏_{j≥0}(1 − e(−z + (j+1)τ))(1 − e(z + jτ)), multiplied out naively.
fn naive_theta(z: Complex64, tau: Complex64) -> Complex64 {
    (0..400).fold(c(1.0, 0.0), |acc, j| {
        let j = j as f64;
        acc * (1.0 - e(-z + (j + 1.0) * tau)) * (1.0 - e(z + j * tau))
    })
}

/// ∏_{j,k≥0}(1 − e((j+1)τ + (k+1)σ − z))/(1 − e(jτ + kσ + z)) for Im τ, Im σ > 0.
fn naive_gamma(z: Complex64, tau: Complex64, sigma: Complex64) -> Complex64 {
    let mut acc = c(1.0, 0.0);
    for j in 0..200 {
        for k in 0..200 {
            let (j, k) = (j as f64, k as f64);
            acc *= (1.0 - e((j + 1.0) * tau + (k + 1.0) * sigma - z)) / (1.0 - e(j * tau + k * sigma + z));
        }
    }
    acc
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    rel_dev(a, b) < tol
}

#[test]
fn theta_against_the_naive_product() {
    for (z, tau) in [(c(0.31, 0.11), c(0.2, 0.9)), (c(-0.7, 0.4), c(0.45, 0.6)), (c(1.3, -0.2), c(-0.1, 1.4))] {
        assert!(close(theta0(z, tau, &pol()).unwrap().value, naive_theta(z, tau), 1e-13));
    }
}

#[test]
fn theta_extension_to_the_lower_half_plane() {
    // θ₀(z, τ) = 1/θ₀(z − τ, −τ)
    for (z, tau) in [(c(0.31, 0.11), c(0.2, 0.9)), (c(-0.7, 0.4), c(0.45, 0.6))] {
        let lower = theta0(z, -tau, &pol()).unwrap().value;
        assert!(close(lower, 1.0 / naive_theta(z + tau, tau), 1e-13));
    }
    assert!(theta0(c(0.1, 0.0), c(0.3, 0.0), &pol()).is_err());
}

#[test]
fn theta_zero_at_the_origin() {
    match theta0(c(0.0, 0.0), c(0.2, 0.9), &pol()) {
        Ok(v) => assert_eq!(v.value, c(0.0, 0.0)),
        Err(err) => assert!(matches!(err, SpecialError::PoleZero { .. })),
    }
}

#[test]
fn theta_periodicity_and_quasi_periodicity() {
    let (z, tau) = (c(0.31, 0.11), c(0.2, 0.9));
    let t = |z, tau| theta0(z, tau, &pol()).unwrap().value;
    assert!(close(t(z + 1.0, tau), t(z, tau), 1e-13));
    assert!(close(t(z, tau + 1.0), t(z, tau), 1e-13));
    assert!(close(t(z + tau, tau), -(-2.0 * PI * I * z).exp() * t(z, tau), 1e-13));
}

#[test]
fn gamma_against_the_naive_product() {
    let (z, tau, sigma) = (c(0.2, 0.3), c(0.1, 0.8), c(-0.3, 0.6));
    assert!(close(elliptic_gamma(z, tau, sigma, &pol()).unwrap().value, naive_gamma(z, tau, sigma), 1e-12));
}

#[test]
fn gamma_relations_at_the_sample_point() {
    let (z, tau, sigma) = (c(0.2, 0.3), c(0.1, 0.8), c(-0.3, 0.6));
    let g = |z, t, s| elliptic_gamma(z, t, s, &pol()).unwrap().value;
    let th = |z, t| theta0(z, t, &pol()).unwrap().value;
    assert!(close(g(z, tau, sigma), g(z, sigma, tau), 1e-13));
    assert!(close(g(z + sigma, tau, sigma), th(z, tau) * g(z, tau, sigma), 1e-12));
    assert!(close(g(z + tau, tau, sigma), th(z, sigma) * g(z, tau, sigma), 1e-12));
    assert!(close(g(z, tau, sigma) * g(-z, -sigma, -tau), c(1.0, 0.0), 1e-12));
    assert!(close(g(z, tau, sigma), g(z, tau, tau + sigma) * g(z + sigma, tau + sigma, sigma), 1e-12));
    // the mixed chamber, against the reflection formula
    let (a, b) = (g(z, -tau, sigma), elliptic_gamma_via_reflection(z, -tau, sigma, &pol()).unwrap().value);
    assert!(close(a, b, 1e-12));
}

#[test]
fn multiple_gammas_specialise() {
    let (z, tau, sigma, rho) = (c(0.15, 0.2), c(0.1, 0.7), c(-0.2, 0.9), c(0.3, 0.8));
    let g0 = multiple_gamma(0, z, &[tau], &pol()).unwrap().value;
    assert!(close(g0, theta0(z, tau, &pol()).unwrap().value, 1e-13));
    let g1 = multiple_gamma(1, z, &[tau, sigma], &pol()).unwrap().value;
    assert!(close(g1, elliptic_gamma(z, tau, sigma, &pol()).unwrap().value, 1e-12));
    // G₂(z + τ₀) = G₁(z, τ₁, τ₂)·G₂(z)
    let taus = [tau, sigma, rho];
    let g2 = |z| multiple_gamma(2, z, &taus, &pol()).unwrap().value;
    let g1 = elliptic_gamma(z, sigma, rho, &pol()).unwrap().value;
    assert!(close(g2(z + tau), g1 * g2(z), 1e-11));
}

#[test]
fn n_homomorphism_on_generators() {
    assert_eq!(n_value(&[[1, 0], [0, 1]]), 0);
    assert_eq!(n_value(&SL2_T), 1);
    assert_eq!(n_value(&SL2_S), 12 - 3);
    assert_eq!(n_value(&sl2_mul(&SL2_S, &SL2_S)), 6);
}

#[test]
fn multiplier_is_trivial_for_the_identity() {
    let m = theta_multiplier(&[[1, 0], [0, 1]], c(0.3, 0.2), c(0.1, 0.9)).unwrap();
    assert!(close(m, c(1.0, 0.0), 1e-15));
}

#[test]
fn narukawa_r2_is_the_modular_relation() {
    let w = c(0.2, 0.1);
    let x = [c(1.0, 0.3), c(-0.2, 1.1)];
    let (l, r) = narukawa_sides(w, &x, &pol()).unwrap();
    assert!(close(l, r, 1e-12));
    let lhs = theta0(w / x[1], x[0] / x[1], &pol()).unwrap().value * theta0(w / x[0], x[1] / x[0], &pol()).unwrap().value;
    assert!(close(l, lhs, 1e-14));
}

fn upper() -> impl Strategy<Value = Complex64> {
    (-0.5f64..0.5, 0.4f64..1.5).prop_map(|(a, b)| c(a, b))
}

fn small() -> impl Strategy<Value = Complex64> {
    (-0.6f64..0.6, -0.3f64..0.3).prop_map(|(a, b)| c(a, b))
}

fn word() -> impl Strategy<Value = Sl2> {
    prop::collection::vec(prop_oneof![Just(SL2_S), (-2i64..=2).prop_map(|k| [[1, k], [0, 1]])], 0..5)
        .prop_map(|ws| ws.iter().fold([[1, 0], [0, 1]], |g, m| sl2_mul(&g, m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn n_is_a_homomorphism(g in word(), h in word()) {
        prop_assert_eq!(n_value(&sl2_mul(&g, &h)), (n_value(&g) + n_value(&h)).rem_euclid(12));
    }

    #[test]
    fn theta_transforms_with_the_multiplier(g in word(), z in small(), tau in upper()) {
        let (z2, t2) = sl2_act(&sl2_inv(&g), z, tau).unwrap();
        prop_assume!(t2.im > 0.05 && t2.im < 20.0 && z2.im.abs() < 3.0 * t2.im);
        let Ok(rhs) = theta0(z2, t2, &pol()) else { return Ok(()) };
        let lhs = theta0(z, tau, &pol()).unwrap().value;
        let m = theta_multiplier(&g, z, tau).unwrap();
        prop_assert!(close(lhs, m * rhs.value, 1e-9), "{} vs {}", lhs, m * rhs.value);
    }

    #[test]
    fn gamma_is_symmetric_and_reflects(z in small(), tau in upper(), sigma in upper()) {
        let g = |z, t, s| elliptic_gamma(z, t, s, &pol()).unwrap().value;
        prop_assert!(close(g(z, tau, sigma), g(z, sigma, tau), 1e-12));
        prop_assert!(close(g(z, tau, sigma) * g(-z, -sigma, -tau), c(1.0, 0.0), 1e-11));
    }

    #[test]
    fn theta_is_odd_up_to_a_factor(z in small(), tau in upper()) {
        // θ₀(−z, τ) = −e^{−2πiz}θ₀(z, τ)
        let t = |z| theta0(z, tau, &pol()).unwrap().value;
        prop_assume!(z.norm() > 1e-3);
        prop_assert!(close(t(-z), -(-2.0 * PI * I * z).exp() * t(z), 1e-12));
    }
}
