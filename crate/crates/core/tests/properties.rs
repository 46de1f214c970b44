use num_complex::Complex64;
use proptest::prelude::*;

use pthermit::algebra::{build_gamma_rep, eigenvalues, mat_exp_gamma5, spectral_distance, ComplexMatrix};
use pthermit::cli::figures::format_g;
use pthermit::desitter::{sample_hyperboloid, verify_factorization, Factorization};
use pthermit::dirac::{build_hamiltonian, expected_eigenvalues, SignVariant};
use pthermit::innerproduct::{cpt_inner, cpt_norm_closed_form, Spinor};
use pthermit::massdomain::{branch_masses, from_alpha, from_theta, max_mass, Branch, Family};
use pthermit::symmetry::{c_operator, pt_operator, pt_pairing, verify_c_conditions};

fn complex() -> impl Strategy<Value = Complex64> {
    (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn square(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec(complex(), dim * dim).prop_map(|e| ComplexMatrix::from_row_major(e).unwrap())
}

fn variant() -> impl Strategy<Value = SignVariant> {
    prop::sample::select(SignVariant::ALL.to_vec())
}

/// `(dim, p)` with one momentum component in 2D and three in 4D.
fn momentum() -> impl Strategy<Value = (usize, Vec<f64>)> {
    prop_oneof![
        prop::collection::vec(-50.0..50.0f64, 1).prop_map(|p| (2, p)),
        prop::collection::vec(-50.0..50.0f64, 3).prop_map(|p| (4, p)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eigenvalues_are_roots_of_the_characteristic_polynomial(a in prop_oneof![square(2), square(3), square(4)]) {
        let n = a.dim();
        let lambdas = eigenvalues(&a).unwrap();
        prop_assert_eq!(lambdas.len(), n);
        let scale = a.norm().max(1.0);
        for &l in &lambdas {
            let shifted = &a - &ComplexMatrix::identity(n).scale(l);
            prop_assert!(shifted.determinant().norm() <= 1e-8 * scale.powi(n as i32), "det {:e}", shifted.determinant().norm());
        }
        let sum: Complex64 = lambdas.iter().sum();
        prop_assert!((sum - a.trace()).norm() <= 1e-9 * scale * n as f64);
    }

    #[test]
    fn gamma5_exponential_is_additive(a in -3.0..3.0f64, b in -3.0..3.0f64, dim in prop::sample::select(vec![2usize, 4])) {
        let rep = build_gamma_rep(dim).unwrap();
        let product = &mat_exp_gamma5(a, &rep) * &mat_exp_gamma5(b, &rep);
        let sum = mat_exp_gamma5(a + b, &rep);
        prop_assert!(product.distance(&sum) <= 1e-12 * sum.norm());
        let closed = &rep.identity().scale_real(a.cosh()) + &rep.gamma5().scale_real(a.sinh());
        prop_assert!(mat_exp_gamma5(a, &rep).distance(&closed) <= 1e-14 * closed.norm());
    }

    #[test]
    fn spectral_law_holds(
        (dim, p) in momentum(),
        m1 in 0.0..100.0f64,
        m2 in 0.0..100.0f64,
        v in variant(),
    ) {
        let rep = build_gamma_rep(dim).unwrap();
        let h = build_hamiltonian(&rep, &p, m1, m2, v).unwrap();
        let got = eigenvalues(h.matrix()).unwrap();
        let want = expected_eigenvalues(&h);
        prop_assert!(spectral_distance(&got, &want) <= 1e-9 * h.norm().max(1.0));
    }

    #[test]
    fn spectrum_ignores_sign_variant((dim, p) in momentum(), m1 in 0.0..100.0f64, m2 in 0.0..100.0f64) {
        let rep = build_gamma_rep(dim).unwrap();
        let reference = eigenvalues(build_hamiltonian(&rep, &p, m1, m2, SignVariant::MinusMinus).unwrap().matrix()).unwrap();
        for v in SignVariant::ALL {
            let h = build_hamiltonian(&rep, &p, m1, m2, v).unwrap();
            prop_assert!(spectral_distance(&eigenvalues(h.matrix()).unwrap(), &reference) <= 1e-9 * h.norm().max(1.0));
        }
    }

    #[test]
    fn c_operator_conditions((dim, p) in momentum(), m1 in 0.1..100.0f64, ratio in 0.0..0.99f64) {
        let rep = build_gamma_rep(dim).unwrap();
        let m2 = m1 * ratio;
        let h = build_hamiltonian(&rep, &p, m1, m2, SignVariant::MinusMinus).unwrap();
        let c = c_operator(m1, m2, &rep).unwrap();
        for r in verify_c_conditions(&c, &h, &pt_operator(&rep)) {
            prop_assert!(r.passed, "{} residual {:e} > {:e}", r.name, r.residual, r.tolerance);
        }
    }

    #[test]
    fn cpt_norm_matches_closed_form(
        x in -10.0..10.0f64, y in -10.0..10.0f64, u in -10.0..10.0f64, v in -10.0..10.0f64,
        m1 in 0.1..100.0f64, ratio in 0.0..0.99f64,
    ) {
        prop_assume!(x * x + y * y + u * u + v * v > 1e-6);
        let rep = build_gamma_rep(2).unwrap();
        let m2 = m1 * ratio;
        let psi = Spinor::two(x, y, u, v).unwrap();
        let c = c_operator(m1, m2, &rep).unwrap();
        let norm = cpt_inner(&psi, &psi, &c, &pt_pairing(&rep)).unwrap();
        let want = cpt_norm_closed_form(&psi, m1, m2).unwrap();
        prop_assert!(want > 0.0);
        prop_assert!((norm.re - want).abs() <= 1e-12 * want);
        prop_assert!(norm.im.abs() <= 1e-12 * want);
    }

    #[test]
    fn alpha_chart_stays_in_domain(alpha in 0.0..8.0f64, m_max in 1.0..1e4f64) {
        let p = from_alpha(alpha, m_max).unwrap();
        prop_assert!(p.m >= 0.0 && p.m <= m_max * (1.0 + 1e-12));
        let (m1, m2) = p.selected();
        prop_assert!((m1 * m1 - m2 * m2 - p.m * p.m).abs() <= 1e-10 * m_max * m_max);
        if m2 > 1e-9 * m_max {
            prop_assert!((max_mass(m1, m2).unwrap() - m_max).abs() <= 1e-9 * m_max);
        }
    }

    #[test]
    fn theta_chart_invariants(theta in 0.0..std::f64::consts::FRAC_PI_2, m_max in 1.0..1e4f64) {
        for family in [Family::Ordinary, Family::Exotic] {
            let p = from_theta(theta, m_max, family).unwrap();
            prop_assert!((p.m - m_max * (2.0 * theta).sin()).abs() <= 1e-12 * m_max);
            prop_assert!(p.pythagorean_defect() <= 1e-10 * m_max * m_max);
        }
    }

    #[test]
    fn branches_bracket_the_peak(fraction in 0.0..1.0f64, m_max in 1.0..1e4f64) {
        let m = fraction * m_max;
        let lower = branch_masses(m, m_max, Branch::Lower).unwrap();
        let upper = branch_masses(m, m_max, Branch::Upper).unwrap();
        prop_assert_eq!(lower.lower(), upper.lower());
        prop_assert!(lower.m1 <= lower.m3 * (1.0 + 1e-12));
        prop_assert!(lower.m2 <= lower.m4 * (1.0 + 1e-12));
        prop_assert!(lower.m2 <= m_max * (1.0 + 1e-12) && lower.m4 >= m_max * (1.0 - 1e-12));
    }

    #[test]
    fn csv_numbers_keep_twelve_digits(x in prop_oneof![-1e15..1e15f64, -1e-6..1e-6f64]) {
        let text = format_g(x, 12);
        let back: f64 = text.parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs(), "{} -> {}", x, text);
        prop_assert!(!text.contains(',') && !text.ends_with('.'));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn factorizations_hold_on_sampled_shells(big_m in 1.0..1e5f64, ratio in 0.0..1.0f64, seed in any::<u64>()) {
        let rep = build_gamma_rep(4).unwrap();
        let m = big_m * ratio;
        for pt in sample_hyperboloid(big_m, m, 8, seed).unwrap() {
            for which in [Factorization::Eq1, Factorization::Eq2, Factorization::EqK2, Factorization::EqK4] {
                let r = verify_factorization(&pt, m, &rep, which).unwrap();
                prop_assert!(r.passed, "{} residual {:e} > {:e}", r.name, r.residual, r.tolerance);
            }
        }
    }
}
