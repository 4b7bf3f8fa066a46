mod reference;

use helmsource_core::specfun::{
    bessel_j, bessel_j_derivative, bessel_j_orders, bessel_y, bessel_zero, hankel1, BesselZeroTable,
};
use reference::{J_TABLE, Y_TABLE, ZERO_TABLE};

#[test]
fn j_matches_reference_table() {
    let mut worst = 0.0f64;
    for &(m, x, want) in J_TABLE {
        let got = bessel_j(m, x).unwrap();
        let err = (got - want).abs();
        let tol = 1e-12f64.max(1e-12 * want.abs());
        assert!(
            err <= tol,
            "J_{m}({x}) = {got:e}, want {want:e}, err {err:e}"
        );
        worst = worst.max(err);
    }
    assert!(worst < 1e-12);
}

#[test]
fn y_matches_reference_table() {
    for &(m, x, want) in Y_TABLE {
        let got = bessel_y(m, x).unwrap();
        let rel = (got - want).abs() / want.abs().max(1.0);
        assert!(rel <= 1e-10, "Y_{m}({x}) = {got:e}, want {want:e}");
    }
}

#[test]
fn hankel_zero_order_at_one() {
    let j = J_TABLE.iter().find(|r| r.0 == 0 && r.1 == 1.0).unwrap().2;
    let y = Y_TABLE.iter().find(|r| r.0 == 0 && r.1 == 1.0).unwrap().2;
    let h = hankel1(0, 1.0).unwrap();
    let want = (j * j + y * y).sqrt();
    assert!((h.re - j).abs() <= 1e-10 * want);
    assert!((h.im - y).abs() <= 1e-10 * want);
}

#[test]
fn hankel_imaginary_part_is_y() {
    let mut x = 0.05;
    while x < 4000.0 {
        for n in [0, 1, 4] {
            assert_eq!(hankel1(n, x).unwrap().im, bessel_y(n, x).unwrap());
        }
        x *= 1.37;
    }
}

#[test]
fn wronskian_identity() {
    let mut x = 0.2;
    while x < 3000.0 {
        for n in 1..30 {
            let jn = bessel_j(n, x).unwrap();
            let jn1 = bessel_j(n + 1, x).unwrap();
            let yn = bessel_y(n, x).unwrap();
            let yn1 = bessel_y(n + 1, x).unwrap();
            if !(yn.is_finite() && yn1.is_finite()) || yn.abs() > 1e200 {
                continue;
            }
            let w = jn1 * yn - jn * yn1;
            let want = 2.0 / (std::f64::consts::PI * x);
            assert!(
                (w - want).abs() <= 1e-10 * want,
                "n={n} x={x}: {w:e} vs {want:e}"
            );
        }
        x *= 1.61;
    }
}

#[test]
fn derivative_matches_finite_difference() {
    let h = 1e-6;
    let fd = (bessel_j(2, 3.7 + h).unwrap() - bessel_j(2, 3.7 - h).unwrap()) / (2.0 * h);
    let d = bessel_j_derivative(2, 3.7).unwrap();
    assert!((fd - d).abs() <= 1e-7);
}

#[test]
fn zeros_match_reference_table() {
    for &(m, n, want) in ZERO_TABLE {
        let got = bessel_zero(m, n).unwrap();
        assert!(
            (got - want).abs() <= 1e-11 * want,
            "j_{m},{n}: {got} vs {want}"
        );
    }
}

fn series_j0(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= -(x * x / 4.0) / (k * k) as f64;
        sum += term;
    }
    sum
}

#[test]
fn second_zero_of_j0_against_bisection() {
    // sign change of the plain series on [3, 7]
    let (mut a, mut b) = (3.0, 7.0);
    let fa = series_j0(a);
    assert!(fa * series_j0(b) < 0.0);
    for _ in 0..200 {
        let c = 0.5 * (a + b);
        if (series_j0(c) > 0.0) == (fa > 0.0) {
            a = c;
        } else {
            b = c;
        }
    }
    let z = bessel_zero(0, 2).unwrap();
    assert!((z - 0.5 * (a + b)).abs() <= 1e-9);
}

#[test]
fn orders_agree_with_single_evaluation() {
    for &x in &[0.5, 7.0, 13.0, 40.0, 250.0] {
        let all = bessel_j_orders(60, x).unwrap();
        for (m, &v) in all.iter().enumerate() {
            let single = bessel_j(m as i32, x).unwrap();
            assert!((v - single).abs() <= 1e-13, "m={m} x={x}");
        }
    }
}

#[test]
fn table_residuals_small() {
    let t = BesselZeroTable::new(20, 20).unwrap();
    for (m, n, z) in t.iter() {
        assert!(bessel_j(m as i32, z).unwrap().abs() < 1e-11, "m={m} n={n}");
    }
}
