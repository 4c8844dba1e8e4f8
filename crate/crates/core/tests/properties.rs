//! Algebraic invariants on random inputs.

use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;

use implicitize::coeff::{Field, Zp, QQ};
use implicitize::direct::{DirectOptions, DirectSearch, DirectStep};
use implicitize::parse::load_problem;
use implicitize::ring::{OrderingMatrix, Polynomial, PowerProduct, Ring};

fn ring() -> Arc<Ring> {
    Ring::with_weights(["x", "y", "z", "h"], vec![1, 2, 1, 1]).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec(([0u32..4, 0u32..4, 0u32..4], -20i64..20), 1..6)
}

fn poly<F: Field>(field: &F, t: &[([u32; 3], i64)]) -> Polynomial<F> {
    let r = ring();
    Polynomial::from_terms(
        &r,
        field,
        t.iter().map(|(e, c)| (PowerProduct::from_exponents(e), field.from_i64(*c))),
    )
}

fn pp() -> impl Strategy<Value = PowerProduct> {
    [0u32..6, 0u32..6, 0u32..6].prop_map(|e| PowerProduct::from_exponents(&e))
}

fn ordering() -> impl Strategy<Value = OrderingMatrix> {
    prop_oneof![
        Just(OrderingMatrix::degrevlex(&[1, 1, 1])),
        Just(OrderingMatrix::degrevlex(&[2, 1, 3])),
        Just(OrderingMatrix::deglex(3)),
        Just(OrderingMatrix::lex(3)),
        Just(OrderingMatrix::elimination(&[1, 1, 1], &[1])),
        Just(OrderingMatrix::graded_elimination(&[1, 1, 2], &[0, 2])),
    ]
}

proptest! {
    #[test]
    fn shifted_homogenization_is_multiplicative(a in terms(), b in terms(), e1 in 0u64..3, e2 in 0u64..3) {
        let (f, g) = (poly(&QQ, &a), poly(&QQ, &b));
        let (d1, d2) = (f.degree() + e1, g.degree() + e2);
        let lhs = f.shifted_homogenize(d1, 3).unwrap().mul(&g.shifted_homogenize(d2, 3).unwrap());
        prop_assert_eq!(lhs, f.mul(&g).shifted_homogenize(d1 + d2, 3).unwrap());
    }

    #[test]
    fn shifted_homogenization_is_additive(a in terms(), b in terms(), e in 0u64..3) {
        let zp = Zp::new(101).unwrap();
        let (f, g) = (poly(&zp, &a), poly(&zp, &b));
        let d = f.degree().max(g.degree()) + e;
        let lhs = f.shifted_homogenize(d, 3).unwrap().add(&g.shifted_homogenize(d, 3).unwrap());
        prop_assert_eq!(lhs, f.add(&g).shifted_homogenize(d, 3).unwrap());
    }

    #[test]
    fn homogenization_round_trips(a in terms(), e in 0u64..3) {
        let f = poly(&QQ, &a);
        let h = f.shifted_homogenize(f.degree() + e, 3).unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize(3).unwrap(), f);
    }

    #[test]
    fn orderings_are_term_orderings(sigma in ordering(), a in pp(), b in pp(), c in pp()) {
        let ab = sigma.compare(&a, &b);
        prop_assert_eq!(ab, sigma.compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(sigma.compare(&a.mul(&c), &b.mul(&c)), ab);
        if ab == Ordering::Less && sigma.compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(sigma.compare(&a, &c), Ordering::Less);
        }
        if !a.is_one() {
            prop_assert_eq!(sigma.compare(&PowerProduct::one(), &a), Ordering::Less);
        }
    }

    #[test]
    fn enumerative_orderings_bound_the_smaller_terms(sigma in ordering(), t0 in pp(), t in pp()) {
        if sigma.is_enumerative() && sigma.compare(&t, &t0) == Ordering::Less {
            let w = |p: &PowerProduct| (0..3).map(|i| sigma.first_row()[i] * p.exp(i) as i64).sum::<i64>();
            prop_assert!(w(&t) <= w(&t0));
        }
    }
}

fn coordinate() -> impl Strategy<Value = String> {
    prop::collection::vec((1i64..6, 0u32..3, 0u32..3), 1..4).prop_map(|ts| {
        let mut s: Vec<String> = ts.iter().map(|(c, a, b)| format!("{c}*t1^{a}*t2^{b}")).collect();
        // keep the coordinate non-constant
        s.push("t1".into());
        s.join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn direct_frontier_invariant_holds_every_iteration(
        x1 in coordinate(), x2 in coordinate(), x3 in coordinate()
    ) {
        let text = format!("params: t1 t2\nx1 = {x1}\nx2 = {x2}\nx3 = {x3}\n");
        let par = load_problem(&text).unwrap().over_prime(32003).unwrap();
        let mut search = DirectSearch::new(&par, &DirectOptions::default()).unwrap();
        let g = loop {
            prop_assert!(search.frontier_invariant_holds());
            match search.step().unwrap() {
                DirectStep::Independent(_) => {}
                DirectStep::Found(g) => break g,
            }
        };
        prop_assert!(par.vanishes_on(&g).unwrap());
    }
}
