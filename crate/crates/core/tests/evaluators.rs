use autoeval::cost::{self, g1, g2, lopt, Method};
use autoeval::eval::{self, eval_best};
use autoeval::{sample, DensePoly, FieldContext, Subfield};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn direct_scheme_worst_case_is_two_n_minus_one() {
    let f = FieldContext::with_degree(5, 4).unwrap();
    let mut r = rng(1);
    for n in [1usize, 7, 64, 300] {
        let poly = sample::worst_case_poly(&f, None, n, &mut r);
        let a = f.pow(f.alpha(), 11);
        let got = eval::eval_direct(&f, &poly, &a).unwrap();
        assert_eq!(got.value, poly.evaluate(&f, &a));
        assert_eq!(got.counter.mul, 2 * n as u64 - 1, "n = {n}");
        assert_eq!(got.counter.add, n as u64);
    }
}

#[test]
fn horner_on_degree_hundred_over_f7() {
    let f = FieldContext::with_degree(7, 3).unwrap();
    let poly = sample::worst_case_poly(&f, None, 100, &mut rng(2));
    let a = f.alpha();
    let got = eval::eval_horner(&f, &poly, &a).unwrap();
    assert_eq!(got.counter.add, 100);
    // every accumulator that hits 0 or 1 saves exactly one product
    let mut acc = poly.coeffs()[100];
    let mut expected = 0;
    for c in poly.coeffs()[..100].iter().rev() {
        expected += u64::from(!acc.is_trivial());
        acc = f.add(&f.mul(&acc, &a).unwrap(), c).unwrap();
    }
    assert_eq!(got.counter.mul, expected);
    assert_eq!(got.value, acc);
}

/// With every leaf of full degree and every coefficient outside {0, 1},
/// only a leaf value or accumulator equal to 0 or 1 can save a product;
/// the pinned instances at the primitive point avoid that.
#[test]
fn method_one_meets_its_formula_on_full_leaves() {
    let cases = [(3u64, 7usize, 2u32, 1u64), (5, 4, 1, 2), (7, 3, 1, 3), (3, 7, 3, 4), (5, 4, 2, 5)];
    for (p, m, depth, seed) in cases {
        let f = FieldContext::with_degree(p, m).unwrap();
        let block = p.pow(depth) as usize;
        let mut r = rng(seed);
        let n = block * r.gen_range(2..6) + block - 1;
        let poly = sample::worst_case_poly(&f, None, n, &mut r);
        let a = f.alpha();
        let got = eval::eval_m1(&f, &poly, &a, depth).unwrap();
        assert_eq!(got.value, poly.evaluate(&f, &a));
        assert_eq!(got.counter.mul, g1(p, n as u64, depth), "p={p} n={n} L={depth}");
    }
}

#[test]
fn binary_examples() {
    let f = FieldContext::with_degree(2, 8).unwrap();
    let mut r = rng(3);
    for _ in 0..20 {
        let poly = sample::poly(&f, None, 255, &mut r);
        let a = sample::element(&f, &mut r);
        let m1 = eval::eval_m1(&f, &poly, &a, 4).unwrap();
        assert_eq!(m1.value, poly.evaluate(&f, &a));
        assert!(m1.counter.mul <= 33);
        let m2 = eval::eval_m2(&f, &poly, &a, 3).unwrap();
        assert_eq!(m2.value, m1.value);
        assert!(m2.counter.charged_mul() <= 51);
    }
    assert_eq!(g1(2, 255, 4), 33);
    assert_eq!(g2(2, 255, 3), 51);
}

#[test]
fn additions_stay_within_leaf_and_rebuild_budget() {
    for (p, m) in [(2u64, 8usize), (3, 5), (5, 4)] {
        let f = FieldContext::with_degree(p, m).unwrap();
        let mut r = rng(p);
        for n in [10usize, 99, 500] {
            let poly = sample::poly(&f, None, n, &mut r);
            let a = sample::element(&f, &mut r);
            for depth in 1..=3u32 {
                let budget = n as u64 + p.pow(depth) - 1;
                let m1 = eval::eval_m1(&f, &poly, &a, depth).unwrap();
                let m2 = eval::eval_m2(&f, &poly, &a, depth).unwrap();
                assert!(m1.counter.add <= budget, "m1 p={p} n={n} L={depth}");
                assert!(m2.counter.add <= budget, "m2 p={p} n={n} L={depth}");
            }
        }
    }
}

#[test]
fn ext_basis_matches_horner_at_random_points() {
    let f = FieldContext::with_degree(2, 8).unwrap();
    let sub = Subfield::new(&f, 2).unwrap();
    let mut r = rng(4);
    let poly = sample::poly(&f, Some(&sub), 254, &mut r);
    for _ in 0..100 {
        let a = sample::element(&f, &mut r);
        let got = eval::eval_ext_basis(&f, &sub, &poly, &a).unwrap();
        assert_eq!(got.value, eval::eval_horner(&f, &poly, &a).unwrap().value);
        assert!(got.counter.mul <= cost::g1_ext_firstmethod_bound(2, 2, 254));
    }
}

#[test]
fn ext_basis_bound_on_worst_case_inputs() {
    for (p, m, s) in [(2u64, 8usize, 4usize), (3, 4, 2), (2, 6, 3)] {
        let f = FieldContext::with_degree(p, m).unwrap();
        let sub = Subfield::new(&f, s).unwrap();
        let mut r = rng(10 + p);
        for n in [100usize, 400, 1500] {
            let poly = sample::worst_case_poly(&f, Some(&sub), n, &mut r);
            let a = sample::element(&f, &mut r);
            let got = eval::eval_ext_basis(&f, &sub, &poly, &a).unwrap();
            assert_eq!(got.value, poly.evaluate(&f, &a));
            let bound = cost::g1_ext_firstmethod_bound(p, s as u32, n as u64);
            assert!(got.counter.mul <= bound, "p={p} s={s} n={n}: {} > {bound}", got.counter.mul);
        }
    }
}

#[test]
fn best_plan_is_sound_across_degrees() {
    let f = FieldContext::with_degree(3, 5).unwrap();
    let sub = Subfield::new(&FieldContext::with_degree(2, 8).unwrap(), 4).unwrap();
    let g = FieldContext::with_degree(2, 8).unwrap();
    let mut r = rng(5);
    for n in [0usize, 1, 2, 9, 10, 50, 400] {
        let poly = sample::worst_case_poly(&f, None, n, &mut r);
        let a = sample::element(&f, &mut r);
        let (value, plan, counter) = eval_best(&f, &poly, &a).unwrap();
        assert_eq!(value, poly.evaluate(&f, &a));
        assert!(counter.charged_mul() <= plan.predicted_mul, "n={n} {plan:?}");
        assert!(plan.predicted_mul <= n as u64);

        let poly = sample::poly(&g, Some(&sub), n * 3, &mut r);
        let a = sample::element(&g, &mut r);
        let (value, plan, counter) = eval_best(&g, &poly, &a).unwrap();
        assert_eq!(value, poly.evaluate(&g, &a));
        assert!(counter.charged_mul() <= plan.predicted_mul, "s=4 n={} {plan:?}", n * 3);
    }
}

#[test]
fn dispatcher_covers_every_method() {
    let f = FieldContext::with_degree(2, 8).unwrap();
    let mut r = rng(6);
    let poly = sample::poly(&f, None, 120, &mut r).redeclare(&f, 2).unwrap();
    let a = sample::element(&f, &mut r);
    let expected = poly.evaluate(&f, &a);
    for method in Method::ALL {
        let depth = if method.has_depth() { lopt(method, 2, 2, 120).depth } else { 0 };
        let got = eval::evaluate(&f, &poly, &a, method, depth).unwrap();
        assert_eq!(got.value, expected, "{method}");
    }
}

#[test]
fn zero_polynomial_costs_nothing() {
    let f = FieldContext::with_degree(5, 2).unwrap();
    let zero = DensePoly::zero(1);
    for method in [Method::Direct, Method::Horner, Method::M1, Method::M2] {
        let got = eval::evaluate(&f, &zero, &f.alpha(), method, 1).unwrap();
        assert!(got.value.is_zero());
        assert_eq!(got.counter.charged_mul(), 0);
    }
}
