use local_harmonic::exact::rational::rat;
use local_harmonic::exact::{Cyclotomic, RationalFunction};
use proptest::prelude::*;

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    let orders = prop::sample::select(vec![1u64, 3, 4, 5, 8, 9, 12, 15]);
    (orders, prop::collection::vec((-4i64..5, 1i64..4, 0i64..40), 1..4)).prop_map(|(n, terms)| {
        terms
            .into_iter()
            .map(|(a, b, k)| Cyclotomic::root_of_unity(n, k).scale(&rat(a, b)))
            .sum()
    })
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    let term = (-3i64..4, 0i64..3, -1i64..2, 0i64..2);
    (
        prop::collection::vec(term.clone(), 1..3),
        prop::collection::vec(term, 1..3),
    )
        .prop_map(|(num, den)| {
            let build = |ts: Vec<(i64, i64, i64, i64)>| -> RationalFunction {
                ts.into_iter()
                    .map(|(c, xe, ae, ye)| {
                        RationalFunction::monomial(3, Cyclotomic::from_int(c), xe, ae, ye)
                    })
                    .sum()
            };
            let d = build(den);
            let d = if d.is_zero() { RationalFunction::one() } else { d };
            build(num)
                .div(&d.add(&RationalFunction::x(3).scale(&Cyclotomic::from_int(7))))
                .unwrap_or_else(|_| RationalFunction::one())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_ring_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
    }

    #[test]
    fn cyclotomic_conj_and_embed(a in cyclotomic(), b in cyclotomic()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        let lhs = a.mul(&b).embed();
        let rhs = a.embed() * b.embed();
        prop_assert!((lhs - rhs).norm() < 1e-10);
        prop_assert!((a.conj().embed() - a.embed().conj()).norm() < 1e-10);
    }

    #[test]
    fn cyclotomic_inverse(a in cyclotomic()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv()).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ratfunc_ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn ratfunc_division_round_trip(a in ratfunc(), b in ratfunc()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.div(&b).unwrap().mul(&b), a);
    }

    #[test]
    fn ratfunc_conj_involution(a in ratfunc()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.alpha_inverse().alpha_inverse(), a);
    }
}
