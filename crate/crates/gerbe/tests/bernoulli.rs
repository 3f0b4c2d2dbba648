use gerbe::bernoulli::*;
use gerbe::checker::{printed_p2_numerator, printed_p3_numerator, printed_r3_numerator};
use gerbe::Complex64;
use num::{BigInt, BigRational, One, Zero};
use proptest::prelude::*;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Truncated power series in t with exact coefficients.
fn exp_series(a: &Q, len: usize) -> Vec<Q> {
    let mut out = vec![Q::one()];
    for k in 1..len {
        let prev = out[k - 1].clone();
        out.push(prev * a / Q::from_integer(BigInt::from(k as i64)));
    }
    out
}

fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let len = a.len().min(b.len());
    (0..len).map(|k| (0..=k).fold(Q::zero(), |acc, i| acc + &a[i] * &b[k - i])).collect()
}

/// t/(e^{xt} − 1) by dividing out the leading t from e^{xt} − 1 and inverting.
fn bernoulli_factor(x: &Q, len: usize) -> Vec<Q> {
    let e = exp_series(x, len + 1);
    let d: Vec<Q> = e[1..].to_vec(); // (e^{xt} − 1)/t
    let mut inv = vec![Q::one() / &d[0]];
    for k in 1..len {
        let s = (1..=k).fold(Q::zero(), |acc, i| acc + &d[i] * &inv[k - i]);
        inv.push(-s / &d[0]);
    }
    inv
}

/// n!·[tⁿ] e^{wt}∏ t/(e^{xⱼt} − 1), straight from the generating function.
fn oracle(n: usize, w: &Q, x: &[Q]) -> Q {
    let len = n + 1;
    let mut s = exp_series(w, len);
    for xi in x {
        s = mul(&s, &bernoulli_factor(xi, len));
    }
    let fact: BigInt = (1..=n as i64).map(BigInt::from).product();
    s[n].clone() * Q::from_integer(fact)
}

#[test]
fn printed_polynomials() {
    assert_eq!(p2().numer, printed_p2_numerator());
    assert_eq!(p3().numer, printed_p3_numerator());
    assert_eq!(r3().numer, printed_r3_numerator());
    assert!(p2().is_symmetric() && p3().is_symmetric() && r3().is_symmetric());
}

#[test]
fn b12_closed_form() {
    // ζ²/t − ζ + t/6
    for (z, t) in [(q(1, 3), q(2, 1)), (q(-5, 2), q(7, 3)), (q(0, 1), q(-1, 4))] {
        let expect = &z * &z / &t - &z + &t / q(6, 1);
        assert_eq!(b12().eval_exact(&z, &[t]), expect);
    }
}

#[test]
fn p2_at_the_origin() {
    assert_eq!(p2().eval_exact(&q(0, 1), &[q(1, 1), q(1, 1)]), q(5, 6));
    let v = p2().eval(Complex64::new(0.0, 0.0), &[Complex64::new(1.0, 0.0); 2]).unwrap();
    assert!((v - Complex64::new(5.0 / 6.0, 0.0)).norm() < 1e-15);
}

#[test]
fn generating_function_oracle() {
    let pts = [
        (q(1, 3), vec![q(2, 1)]),
        (q(-3, 2), vec![q(1, 2), q(5, 3)]),
        (q(2, 7), vec![q(-1, 1), q(3, 4), q(2, 5)]),
        (q(1, 1), vec![q(1, 1), q(-2, 3), q(4, 1), q(1, 5)]),
    ];
    for (w, x) in &pts {
        for n in 0..=6 {
            assert_eq!(multi_bernoulli(x.len(), n).unwrap().eval_exact(w, x), oracle(n, w, x), "r = {}, n = {n}", x.len());
        }
    }
}

#[test]
fn difference_relation_examples() {
    assert!(check_difference(2, 2, 1));
    assert!(check_difference(3, 3, 2));
    assert!(check_difference(2, 3, 1));
    // without the factor n the relation fails once n ≥ 2
    assert!(!check_difference_with_factor(2, 2, 1, 1));
    assert!(check_difference_with_factor(2, 1, 1, 1));
}

#[test]
fn subdivision_examples() {
    assert!(subdivision_identity(2, 3, 1));
    assert!(subdivision_identity(2, 3, 2));
    assert!(subdivision_identity(2, 2, 3));
}

#[test]
fn arity_errors() {
    assert!(p2().eval(Complex64::new(1.0, 0.0), &[Complex64::new(1.0, 0.0)]).is_err());
    assert!(p2().eval(Complex64::new(1.0, 0.0), &[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).is_err());
}

fn rat() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Q> {
    rat().prop_filter("nonzero", |v| !v.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn homogeneous_of_degree_n_minus_r(r in 1usize..=3, n in 0usize..=5, w in rat(), x in prop::collection::vec(nonzero_rat(), 3), l in nonzero_rat()) {
        let b = multi_bernoulli(r, n).unwrap();
        let x = &x[..r];
        let lx: Vec<Q> = x.iter().map(|v| v * &l).collect();
        let lhs = b.eval_exact(&(&w * &l), &lx);
        let pow = n as i64 - r as i64;
        let scale = if pow >= 0 { num::pow(l.clone(), pow as usize) } else { Q::one() / num::pow(l.clone(), (-pow) as usize) };
        prop_assert_eq!(lhs, b.eval_exact(&w, x) * scale);
    }

    #[test]
    fn symmetric_in_the_periods(r in 2usize..=4, n in 0usize..=5, w in rat(), x in prop::collection::vec(nonzero_rat(), 4), i in 0usize..4, j in 0usize..4) {
        let b = multi_bernoulli(r, n).unwrap();
        prop_assume!(i < r && j < r);
        let mut y = x[..r].to_vec();
        y.swap(i, j);
        prop_assert_eq!(b.eval_exact(&w, &x[..r]), b.eval_exact(&w, &y));
    }

    #[test]
    fn matches_generating_function(r in 1usize..=3, n in 0usize..=5, w in rat(), x in prop::collection::vec(nonzero_rat(), 3)) {
        prop_assert_eq!(multi_bernoulli(r, n).unwrap().eval_exact(&w, &x[..r]), oracle(n, &w, &x[..r]));
    }
}
