use logderiv_core::algebra::{exp_series, log_series, Algebra, DiagonalDerivation, HopfAlgebra};
use logderiv_core::dynkin::{dynkin_bracket, dynkin_convolution, lie_project, LetterDerivation, ProjectionMode};
use logderiv_core::enveloping::{log_truncated, witt, PbwAlgebra, WittDerivation};
use logderiv_core::lincomb::LinComb;
use logderiv_core::magnus::{dynkin_inverse, log_derivative, magnus_forward, magnus_solve};
use logderiv_core::ode::{Poly, random_matrix};
use logderiv_core::random::Sampler;
use logderiv_core::rational::{format_rational, parse_rational, rat, Rational};
use logderiv_core::tensor::{antipode, bracket, concat_mul, is_primitive, TensorAlgebra, TensorElt, Word};
use logderiv_core::verify::{free_context, sequence_context};
use proptest::prelude::*;

fn word_strategy(k: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k, 0..=max_len).prop_map(Word::new)
}

fn element_strategy(k: u8, max_len: usize) -> impl Strategy<Value = TensorElt> {
    prop::collection::vec((word_strategy(k, max_len), -3i64..=3, 1i64..=3), 0..4)
        .prop_map(|terms| terms.into_iter().map(|(w, p, q)| (w, rat(p, q))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn antipode_reverses_products(u in element_strategy(3, 3), v in element_strategy(3, 3)) {
        prop_assert_eq!(antipode(&concat_mul(&u, &v)), concat_mul(&antipode(&v), &antipode(&u)));
    }

    #[test]
    fn coproduct_is_multiplicative(u in element_strategy(2, 3), v in element_strategy(2, 3)) {
        let t = TensorAlgebra::new(2).unwrap();
        let lhs = t.coproduct(&t.mul(&u, &v));
        let rhs = t.tensor_mul(&t.coproduct(&u), &t.coproduct(&v), None);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn brackets_are_primitive(u in element_strategy(3, 3), v in element_strategy(3, 3)) {
        let lu = dynkin_convolution(&LetterDerivation::graduation(3), &u);
        let lv = dynkin_convolution(&LetterDerivation::graduation(3), &v);
        prop_assert!(is_primitive(&lu));
        prop_assert!(is_primitive(&bracket(&lu, &lv)));
    }

    #[test]
    fn bracket_form_matches_convolution(w in word_strategy(2, 6), p in -3i64..=3, q in -3i64..=3) {
        let f = LetterDerivation::diagonal([rat(p, 1), rat(q, 2)]);
        prop_assert_eq!(dynkin_bracket(&f, &w), dynkin_convolution(&f, &LinComb::basis(w.clone())));
    }

    #[test]
    fn classical_projection_is_idempotent(seed in any::<u64>(), n in 1usize..=5) {
        let mut s = Sampler::new(seed);
        let a = s.tensor_homogeneous(2, n, 4);
        let p = lie_project(2, &a, ProjectionMode::Classical).unwrap();
        prop_assert!(is_primitive(&p));
        prop_assert_eq!(lie_project(2, &p, ProjectionMode::Classical).unwrap(), p);
    }

    #[test]
    fn dynkin_scales_lie_elements_by_degree(seed in any::<u64>(), n in 1usize..=5) {
        let mut s = Sampler::new(seed);
        let l = s.lie_homogeneous(3, n);
        prop_assert_eq!(dynkin_convolution(&LetterDerivation::graduation(3), &l), l.scaled(&rat(n as i64, 1)));
    }

    #[test]
    fn exp_and_log_are_inverse_on_lie_elements(seed in any::<u64>()) {
        let t = TensorAlgebra::new(2).unwrap();
        let l = Sampler::new(seed).lie_element(2, 4);
        let g = exp_series(&t, &l, 5);
        prop_assert!(t.is_grouplike(&g, 5));
        prop_assert_eq!(log_series(&t, &g, 5), l.truncated(5));
    }

    #[test]
    fn dynkin_inverse_inverts_dynkin(seed in any::<u64>()) {
        let t = TensorAlgebra::new(2).unwrap();
        let l = Sampler::new(seed).lie_element(2, 5);
        let g = dynkin_inverse(&t, &l, 5).unwrap().element(&t);
        prop_assert!(t.is_grouplike(&g, 5));
        prop_assert_eq!(log_derivative(&t, &DiagonalDerivation::Graduation, &g).truncated(5), l);
    }

    #[test]
    fn magnus_solve_inverts_forward(seed in any::<u64>()) {
        let t = TensorAlgebra::new(2).unwrap();
        let mut s = Sampler::new(seed);
        let delta = DiagonalDerivation::weights(s.positive_weights(2));
        let l = s.lie_element(2, 4);
        let h = magnus_forward(&t, &delta, &l, 4).unwrap();
        prop_assert_eq!(magnus_solve(&t, &delta, &h, 4).unwrap(), l.truncated(4));
    }

    #[test]
    fn logderiv_theorem_in_both_weights(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let free = free_context(std::sync::Arc::new(|x: &TensorElt| DiagonalDerivation::Graduation.apply(x)), 4).unwrap();
        let x = s.tensor_positive(2, 2, 3);
        prop_assert_eq!(free.logderiv_sum(&x, 4).unwrap(), free.logderiv_direct(&x, 4).unwrap());
        let seq = sequence_context(2, 4).unwrap();
        let xs = vec![s.tensor_positive(2, 2, 2), s.tensor_positive(2, 2, 2)];
        prop_assert_eq!(seq.logderiv_sum(&xs, 4).unwrap(), seq.logderiv_direct(&xs, 4).unwrap());
    }

    #[test]
    fn witt_log_of_exp(seed in any::<u64>()) {
        let w = PbwAlgebra::new(witt(5, WittDerivation::Graduation).unwrap());
        let l = Sampler::new(seed).pbw_lie(&w, 5);
        let g = exp_series(&w, &l, 5);
        prop_assert!(w.is_grouplike(&g, 5));
        prop_assert_eq!(log_truncated(&w, &g, 5).unwrap(), l);
    }

    #[test]
    fn polynomial_integral_is_right_inverse_of_derivative(cs in prop::collection::vec(-5i64..=5, 0..6)) {
        let p = Poly::new(cs.into_iter().map(|c| rat(c, 1)).collect());
        prop_assert_eq!(p.integral().derivative(), p.clone());
        prop_assert_eq!(p.integral().eval(&Rational::from_integer(0.into())), rat(0, 1));
    }

    #[test]
    fn matrix_integration_by_parts(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = random_matrix(&mut s, 2, 2);
        let b = random_matrix(&mut s, 2, 2);
        // ∫(A'B + AB') = AB - A(0)B(0)
        let lhs = a.derivative().mul(&b).add(&a.mul(&b.derivative())).integral();
        let ab = a.mul(&b);
        let at_zero = ab.eval(&rat(0, 1));
        let at_zero = logderiv_core::ode::MatrixPoly::constant(&at_zero).unwrap();
        prop_assert_eq!(lhs, ab.sub(&at_zero));
    }
}
