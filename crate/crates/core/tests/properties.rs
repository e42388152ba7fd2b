use biconfluent::analytic::{general_solution, log_linear_grid, schrodinger_residual, tabulate};
use biconfluent::model::{Branch, PhysParams};
use biconfluent::specfun::{gamma, hermite_h, hermite_real, kummer_m, AxisValue};
use biconfluent::spectrum::find_roots;
use biconfluent::{Complex64, PhysParams64};
use proptest::prelude::*;

/// Monomial coefficients of the physicists' Hermite polynomial `H_n`.
fn hermite_coefficients(n: usize) -> Vec<f64> {
    let mut prev = vec![1.0];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 2.0];
    for k in 1..n {
        let mut next = vec![0.0; k + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= 2.0 * k as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

proptest! {
    #[test]
    fn gamma_recurrence(x in -10.0f64..10.0) {
        // stay clear of the poles where both sides blow up
        prop_assume!((x - x.round()).abs() > 1e-3 || x > 0.5);
        let g = gamma(x).unwrap();
        let g1 = gamma(x + 1.0).unwrap();
        prop_assert!((g1 - x * g).abs() <= 1e-12 * g1.abs().max(1.0));
    }

    #[test]
    fn kummer_limit_is_exponential(a in -5.0f64..5.0, z in -20.0f64..20.0) {
        // M(a, a, z) = e^z
        prop_assume!(a.fract().abs() > 1e-3);
        let m = kummer_m(a, a, z).unwrap();
        prop_assert!((m - z.exp()).abs() <= 1e-12 * z.exp());
    }

    #[test]
    fn hermite_recurrence_holds(nu in -2.5f64..6.0, x in -4.0f64..6.0) {
        let a = hermite_real(nu + 1.0, x).unwrap();
        let b = hermite_real(nu, x).unwrap();
        let c = hermite_real(nu - 1.0, x).unwrap();
        let scale = a.abs() + (2.0 * x * b).abs() + (2.0 * nu * c).abs();
        prop_assert!((a - 2.0 * x * b + 2.0 * nu * c).abs() <= 1e-10 * scale);
    }

    #[test]
    fn imaginary_argument_conjugation(nu in -2.0f64..5.0, s in 0.01f64..4.0) {
        let up = hermite_h(nu, AxisValue::Imaginary(s)).unwrap();
        let down = hermite_h(nu, AxisValue::Imaginary(-s)).unwrap();
        prop_assert!((up.conj() - down).norm() <= 1e-12 * up.norm().max(1.0));
    }

    #[test]
    fn energy_map_round_trip(de in 0.01f64..200.0, m in 0.2f64..3.0, v1 in 0.2f64..3.0) {
        let p = PhysParams64::new(m, 1.0, 0.0, v1).unwrap();
        let e = -de;
        let a = p.a_of_energy(e, Branch::Minus).unwrap();
        prop_assert!(a > 0.0);
        let back = p.energy_of_a(a).unwrap();
        prop_assert!((back - e).abs() <= 1e-12 * e.abs());
        // the plus branch flips the sign of a
        let ap = p.a_of_energy(e, Branch::Plus).unwrap();
        prop_assert!((ap + a).abs() <= 1e-12 * a);
    }

    #[test]
    fn a_is_monotone_in_energy(e1 in -100.0f64..-0.01, gap in 1e-3f64..10.0) {
        let p = PhysParams64::default();
        let e2 = e1 - gap;
        // deeper energies give smaller a
        prop_assert!(p.a_of_energy(e2, Branch::Minus).unwrap() < p.a_of_energy(e1, Branch::Minus).unwrap());
    }

    #[test]
    fn general_solution_is_linear(c1 in -3.0f64..3.0, c2 in -3.0f64..3.0, x in 0.05f64..4.0) {
        let p = PhysParams64::default();
        let e = -12.5;
        let m = general_solution(&p, e, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), x).unwrap();
        let q = general_solution(&p, e, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), x).unwrap();
        let both = general_solution(&p, e, Complex64::new(c1, 0.0), Complex64::new(c2, 0.0), x).unwrap();
        let expect = m * c1 + q * c2;
        prop_assert!((both - expect).norm() <= 1e-12 * (m.norm() * c1.abs() + q.norm() * c2.abs()).max(1e-300));
    }
}

#[test]
fn hermite_reduces_to_polynomials() {
    for n in 0..=6usize {
        let coeffs = hermite_coefficients(n);
        for i in 0..200 {
            let x = -5.0 + 10.0 * i as f64 / 199.0;
            let exact = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
            let scale: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (c * x.powi(k as i32)).abs())
                .sum();
            let h = hermite_real(n as f64, x).unwrap();
            assert!(
                (h - exact).abs() <= 1e-10 * scale.max(1.0),
                "n = {n}, x = {x}: {h} vs {exact}"
            );
        }
    }
}

#[test]
fn root_search_is_deterministic() {
    let a = find_roots(8.0_f64, 0.01).unwrap();
    let b = find_roots(8.0_f64, 0.01).unwrap();
    assert_eq!(a, b);
}

#[test]
fn residual_of_a_scaled_potential() {
    // heavier particle and stronger coupling: the closed form must still solve the equation
    let p = PhysParams64::new(2.0, 1.0, 1.5, 0.7).unwrap();
    let l = 1.0 / (2.0 * 2.0 * 0.7 * 0.7);
    let grid = log_linear_grid(0.05 * l, 5.0 * l, 8000, 0.3 * l).unwrap();
    let e = -4.0;
    let w = tabulate(&p, e, Branch::Minus, &grid).unwrap();
    assert!(schrodinger_residual(&p, e, &w).unwrap() < 1e-5);
}

#[test]
fn single_precision_kernels() {
    let g = gamma(0.5_f32).unwrap();
    assert!((g - std::f32::consts::PI.sqrt()).abs() < 1e-5);
    let h = hermite_real(2.0_f32, 1.5).unwrap();
    assert!((h - 7.0).abs() < 1e-4);
    let p = PhysParams::<f32>::default();
    assert!((p.potential(1.0).unwrap() + 14.84375).abs() < 1e-4);
}
