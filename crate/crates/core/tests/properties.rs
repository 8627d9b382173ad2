use kulkarni::fibration::{eta, iota_embed, pi_tilde, random_isometry};
use kulkarni::hermitian::{
    conj_dependent, f_value, f_value_coordinates, gram2, herm_inner, span_class_det, span_class_eig, IndefiniteVector,
    DEFAULT_TOL,
};
use kulkarni::limit_set::{classify, partition_label};
use kulkarni::projective::{in_lambda0, normalize, q_project};
use num_complex::Complex64;
use proptest::prelude::*;

const TOL: f64 = DEFAULT_TOL;

fn vector(n: usize) -> impl Strategy<Value = IndefiniteVector> {
    prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64), n + 1)
        .prop_filter("nonzero", |c| c.iter().any(|&(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|c| IndefiniteVector::from_pairs(&c).unwrap())
}

fn dim_and_vectors() -> impl Strategy<Value = (usize, IndefiniteVector, IndefiniteVector)> {
    (2usize..=6).prop_flat_map(|n| (Just(n), vector(n), vector(n)))
}

fn scalar() -> impl Strategy<Value = Complex64> {
    (-5.0..5.0f64, -5.0..5.0f64)
        .prop_filter("away from 0", |(a, b)| a.hypot(*b) > 0.1)
        .prop_map(|(a, b)| Complex64::new(a, b))
}

fn away(z: &IndefiniteVector) -> bool {
    let ns = z.norm_sqr();
    f_value(z).abs() > 10.0 * TOL * ns * ns && z.self_inner().abs() > 10.0 * TOL * ns
}

proptest! {
    #[test]
    fn form_is_hermitian((_, z, w) in dim_and_vectors()) {
        let scale = z.norm() * w.norm();
        prop_assert!((herm_inner(&w, &z).unwrap() - herm_inner(&z, &w).unwrap().conj()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn form_is_sesquilinear((_, z, w) in dim_and_vectors(), alpha in scalar()) {
        let lhs = herm_inner(&z.scale(alpha), &w).unwrap();
        let rhs = alpha * herm_inner(&z, &w).unwrap();
        let conj_lhs = herm_inner(&z, &w.scale(alpha)).unwrap();
        let conj_rhs = alpha.conj() * herm_inner(&z, &w).unwrap();
        let scale = alpha.norm() * z.norm() * w.norm();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
        prop_assert!((conj_lhs - conj_rhs).norm() <= 1e-12 * scale);
    }

    #[test]
    fn f_formulas_agree((_, z, _w) in dim_and_vectors()) {
        let scale = z.norm_sqr().powi(2);
        prop_assert!((f_value(&z) - f_value_coordinates(&z)).abs() <= 1e-10 * scale);
    }

    #[test]
    fn f_is_quartic((_, z, _w) in dim_and_vectors(), alpha in scalar()) {
        let a4 = alpha.norm_sqr().powi(2);
        let scale = a4 * z.norm_sqr().powi(2);
        prop_assert!((f_value(&z.scale(alpha)) - a4 * f_value(&z)).abs() <= 1e-10 * scale);
    }

    #[test]
    fn span_classifiers_agree((_, z, w) in dim_and_vectors()) {
        let det = gram2(&z, &w).unwrap().det();
        prop_assume!(det.abs() > TOL * z.norm_sqr() * w.norm_sqr());
        prop_assert_eq!(span_class_det(&z, &w, TOL).unwrap(), span_class_eig(&z, &w, TOL).unwrap());
    }

    #[test]
    fn eigenvalue_product_is_determinant((_, z, w) in dim_and_vectors()) {
        let g = gram2(&z, &w).unwrap();
        let det = g.det();
        prop_assume!(det.abs() > TOL * z.norm_sqr() * w.norm_sqr());
        let (l1, l2) = g.eigenvalues();
        prop_assert!(l1 >= l2);
        prop_assert!((l1 * l2 - det).abs() <= 1e-10 * det.abs());
    }

    #[test]
    fn normalize_is_projective((_, z, _w) in dim_and_vectors(), alpha in scalar()) {
        let p = normalize(&z).unwrap();
        prop_assert!(p.distance(&normalize(&z.scale(alpha)).unwrap()).unwrap() <= 1e-12);
        prop_assert_eq!(&normalize(p.rep()).unwrap(), &p);
    }

    #[test]
    fn classify_is_projective((n, z, _w) in dim_and_vectors(), m in 2usize..=6, alpha in scalar()) {
        prop_assume!(m <= n);
        prop_assume!(!in_lambda0(&z, m, TOL).unwrap());
        let q = q_project(&z, m, TOL).unwrap();
        prop_assume!(!conj_dependent(&q, TOL) && away(&q));
        prop_assert_eq!(classify(&z, m, TOL).ok(), classify(&z.scale(alpha), m, TOL).ok());
    }

    #[test]
    fn classify_factors_through_projection((n, z, _w) in dim_and_vectors(), m in 2usize..=6) {
        prop_assume!(m < n);
        prop_assume!(!in_lambda0(&z, m, TOL).unwrap());
        let q = q_project(&z, m, TOL).unwrap();
        prop_assert_eq!(classify(&z, m, TOL).ok(), classify(&q, m, TOL).ok());
        prop_assert_eq!(q_project(&z.conj(), m, TOL).unwrap(), q.conj());
    }

    #[test]
    fn isometries_preserve_f_and_labels(
        (n, z, _w) in dim_and_vectors(),
        m in 2usize..=6,
        seed in any::<u64>(),
    ) {
        prop_assume!(m <= n);
        let g = iota_embed(&random_isometry(m, seed, 1), n).unwrap();
        let gz = g.apply(&z).unwrap();
        if m == n {
            prop_assert!((f_value(&gz) - f_value(&z)).abs() <= 1e-8 * z.norm_sqr().powi(2));
        }
        prop_assume!(!in_lambda0(&z, m, TOL).unwrap());
        let (q, gq) = (q_project(&z, m, TOL).unwrap(), q_project(&gz, m, TOL).unwrap());
        prop_assume!([&z, &gz, &q, &gq].iter().all(|v| away(v)));
        prop_assert_eq!(partition_label(&z, TOL).unwrap(), partition_label(&gz, TOL).unwrap());
        prop_assert_eq!(classify(&z, m, TOL).ok(), classify(&gz, m, TOL).ok());
    }

    #[test]
    fn eta_squares_to_minus_bilinear((_, z, _w) in dim_and_vectors()) {
        let e = eta(&z);
        prop_assert!(e.re >= 0.0);
        let bilinear = herm_inner(&z, &z.conj()).unwrap();
        prop_assert!((e * e + bilinear).norm() <= 1e-12 * z.norm_sqr());
    }

    #[test]
    fn pi_tilde_is_real_and_negative((_, z, _w) in dim_and_vectors()) {
        let ns = z.norm_sqr();
        prop_assume!(f_value(&z) > 10.0 * TOL * ns * ns);
        let p = pi_tilde(&z, TOL).unwrap();
        prop_assert!(p.im().iter().all(|&v| v.abs() <= 1e-12 * p.norm()));
        let e2 = eta(&z).norm_sqr();
        let expected = 2.0 * e2 * (z.self_inner() - e2);
        prop_assert!(expected < 0.0 && p.self_inner() < 0.0);
        prop_assert!((p.self_inner() - expected).abs() <= 1e-10 * expected.abs());
    }
}
