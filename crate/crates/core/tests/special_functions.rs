use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use quietzone::cylwave::{
    bessel_j, bessel_j_prime, graf_translate, green, hankel1, hankel1_prime, wave_u, wave_v, Point2, Sign,
};

/// `J_n(x)` by its power series, summed in extended steps; good for `x ≲ 20`.
fn j_series(n: u32, x: f64) -> f64 {
    let half = x / 2.0;
    let mut term = half.powi(n as i32) / (1..=n).map(f64::from).product::<f64>();
    let mut sum = term;
    for m in 1..200 {
        term *= -half * half / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn first_zero_of_j0() -> f64 {
    let (mut lo, mut hi) = (2.0, 3.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if j_series(0, lo) * j_series(0, mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn j0_vanishes_at_series_zero() {
    let x = first_zero_of_j0();
    assert!(bessel_j(0, x).unwrap().abs() < 1e-10);
}

#[test]
fn trivial_values() {
    assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
    assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
    assert_eq!(bessel_j_prime(0, 0.0).unwrap(), 0.0);
    assert_relative_eq!(bessel_j_prime(1, 0.0).unwrap(), 0.5);
}

#[test]
fn derivative_matches_series_recurrence() {
    let want = 0.5 * (j_series(4, 3.7) - j_series(6, 3.7));
    assert_relative_eq!(bessel_j_prime(5, 3.7).unwrap(), want, max_relative = 1e-12);
}

#[test]
fn j_matches_series() {
    for n in 0..12 {
        for x in [0.3, 1.0, 4.5, 9.0] {
            assert_relative_eq!(
                bessel_j(n, x).unwrap(),
                j_series(n as u32, x),
                max_relative = 1e-11,
                epsilon = 1e-300
            );
        }
    }
}

#[test]
fn hankel_large_argument() {
    let x = 100.0;
    let asym = Complex64::from_polar(
        (2.0 / (std::f64::consts::PI * x)).sqrt(),
        x - std::f64::consts::FRAC_PI_4,
    );
    assert!((hankel1(0, x).unwrap() - asym).norm() < 0.01 * asym.norm());
    let v = wave_v(0, Sign::Plus, 2.0, Point2::new(30.0, 40.0)).unwrap();
    assert_relative_eq!(
        v.norm(),
        (2.0 / (100.0 * std::f64::consts::PI)).sqrt(),
        max_relative = 1e-2
    );
}

#[test]
fn green_far_field_magnitude() {
    let g = green(1.0, Point2::new(60.0, 80.0), Point2::ORIGIN).unwrap();
    assert_relative_eq!(
        g.norm(),
        0.25 * (2.0 / (100.0 * std::f64::consts::PI)).sqrt(),
        max_relative = 1e-2
    );
}

#[test]
fn v_minus_one_identity() {
    let p = Point2::new(0.7, -1.3);
    let a = wave_v(-1, Sign::Plus, 1.4, p).unwrap();
    let b = wave_v(1, Sign::Minus, 1.4, p).unwrap();
    assert!((a + b).norm() < 1e-14);
}

fn point() -> impl Strategy<Value = Point2> {
    (0.05f64..5.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Point2::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn wronskian(n in 0i32..=30, x in 0.1f64..100.0) {
        let h = hankel1(n, x).unwrap();
        let hp = hankel1_prime(n, x).unwrap();
        let w = h.re * hp.im - hp.re * h.im;
        let want = 2.0 / (std::f64::consts::PI * x);
        prop_assert!((w - want).abs() <= 1e-10 * want, "n={n} x={x} w={w} want={want}");
    }

    #[test]
    fn recurrence(n in 1i32..=60, x in 0.1f64..150.0) {
        let lhs = bessel_j(n - 1, x).unwrap() + bessel_j(n + 1, x).unwrap();
        let rhs = 2.0 * n as f64 / x * bessel_j(n, x).unwrap();
        let scale = bessel_j(n - 1, x).unwrap().abs().max(bessel_j(n + 1, x).unwrap().abs()).max(1e-300);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
    }

    #[test]
    fn derivative_identity(n in -40i32..=40, x in 0.0f64..150.0) {
        let lhs = bessel_j(n - 1, x).unwrap() - bessel_j(n + 1, x).unwrap();
        let rhs = 2.0 * bessel_j_prime(n, x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-14 + 1e-12 * rhs.abs());
    }

    #[test]
    fn order_parity(n in 0i32..=20, x in 0.01f64..150.0) {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(bessel_j(-n, x).unwrap(), s * bessel_j(n, x).unwrap());
        let h = hankel1(n, x).unwrap();
        prop_assert_eq!(hankel1(-n, x).unwrap(), h * s);
    }

    #[test]
    fn reflection_parity(n in -20i32..=20, k in 0.2f64..5.0, p in point()) {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        for sign in [Sign::Plus, Sign::Minus] {
            let u = wave_u(n, sign, k, p).unwrap();
            let um = wave_u(n, sign, k, -p).unwrap();
            prop_assert!((um - u * s).norm() <= 1e-10 * u.norm().max(1e-300));
            let v = wave_v(n, sign, k, p).unwrap();
            let vm = wave_v(n, sign, k, -p).unwrap();
            prop_assert!((vm - v * s).norm() <= 1e-10 * v.norm());
        }
    }

    #[test]
    fn graf_both_branches(l in -6i32..=6, k in 0.3f64..3.0, y in point(), t in 0.0f64..std::f64::consts::TAU,
                          ratio in prop::sample::select(vec![0.3, 3.0])) {
        let x = Point2::from_polar(ratio * y.norm(), t);
        let direct = wave_v(l, Sign::Plus, k, x - y).unwrap();
        let series = graf_translate(l, k, x, y).unwrap();
        prop_assert!((series - direct).norm() <= 1e-10 * direct.norm().max(1.0),
            "l={l} k={k} |x|/|y|={ratio} series={series} direct={direct}");
    }
}
