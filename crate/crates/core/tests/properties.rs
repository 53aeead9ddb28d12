//! Property tests for the algebraic invariants: polynomial gcd and
//! squarefree structure, Ore arithmetic laws, the embedding into the Weyl
//! algebra, and commutator containments.

use ahoch::ore::{f_alpha, hy_basis, ore_to_weyl, weyl_to_ore, OreAlgebra, OreElement};
use ahoch::poly::Poly;
use ahoch::scalar::Field;
use proptest::prelude::*;

fn q() -> Field {
    Field::Rational
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1).prop_map(|ints| Poly::from_ints(q(), &ints))
}

fn arb_nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    arb_poly(max_deg).prop_filter("nonzero", |f| !f.is_zero())
}

fn arb_ore(h: Poly, max_x: usize, max_y: usize) -> impl Strategy<Value = OreElement> {
    let alg = OreAlgebra::new(h).unwrap();
    prop::collection::vec((0..=max_x, 0..=max_y, -5i64..=5), 1..=4).prop_map(move |terms| {
        let mut acc = alg.zero();
        for (i, j, c) in terms {
            acc = acc.add(&alg.monomial(alg.field().from_i64(c), i, j));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_both_and_product_witness(
        f in arb_nonzero_poly(6),
        g in arb_nonzero_poly(6),
        d in arb_nonzero_poly(3),
    ) {
        let gcd = f.gcd_monic(&g).unwrap();
        prop_assert!(gcd.divides(&f));
        prop_assert!(gcd.divides(&g));
        // common factors are picked up: gcd(d·f, d·g) is divisible by monic d
        let gcd2 = d.mul(&f).gcd_monic(&d.mul(&g)).unwrap();
        prop_assert!(d.monic().divides(&gcd2));
    }

    #[test]
    fn extended_gcd_bezout(f in arb_nonzero_poly(6), g in arb_nonzero_poly(6)) {
        let (d, a, b) = f.extended_gcd(&g).unwrap();
        prop_assert_eq!(a.mul(&f).add(&b.mul(&g)), d);
    }

    #[test]
    fn squarefree_decomposition_reconstructs(f in arb_nonzero_poly(6)) {
        let fac = f.squarefree_decomposition().unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (i, (s, _)) in fac.factors().iter().enumerate() {
            // each s is squarefree
            let g = s.gcd_monic(&s.derivative(1)).unwrap();
            prop_assert!(g.is_one());
            // pairwise coprime
            for (t, _) in fac.factors().iter().skip(i + 1) {
                prop_assert!(s.gcd_monic(t).unwrap().is_one());
            }
        }
    }

    #[test]
    fn derivative_leibniz(f in arb_poly(5), g in arb_poly(5)) {
        prop_assert_eq!(
            f.mul(&g).derivative(1),
            f.derivative(1).mul(&g).add(&f.mul(&g.derivative(1)))
        );
    }

    #[test]
    fn ore_mul_associative_and_distributive(
        h in arb_nonzero_poly(3),
        abc in (Just(()), ).prop_flat_map(|_| (any::<u64>(),)),
    ) {
        // derive three elements from one seed to keep the strategy light
        let alg = OreAlgebra::new(h.clone()).unwrap();
        let seed = abc.0;
        let mk = |s: u64| {
            let i = (s % 4) as usize;
            let j = ((s / 4) % 3) as usize;
            let c = ((s / 12) % 9) as i64 - 4;
            let c = if c == 0 { 1 } else { c };
            alg.monomial(alg.field().from_i64(c), i, j)
                .add(&alg.x())
        };
        let a = mk(seed);
        let b = mk(seed / 7 + 3);
        let c = mk(seed / 13 + 11);
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(
            a.mul(&b.add(&c)),
            a.mul(&b).add(&a.mul(&c))
        );
    }

    #[test]
    fn eq21_matches_single_step_rewriting(h in arb_nonzero_poly(3), seed in any::<u64>()) {
        let strategy_elt = |alg: &OreAlgebra, s: u64| {
            alg.monomial(alg.field().from_i64(((s % 7) as i64) - 3).add(&alg.field().one()), (s % 5) as usize, ((s / 5) % 4) as usize)
        };
        let alg = OreAlgebra::new(h).unwrap();
        let a = strategy_elt(&alg, seed).add(&alg.yhat());
        let b = strategy_elt(&alg, seed / 3 + 1).add(&alg.x());
        prop_assert_eq!(a.mul(&b), a.mul_oracle(&b));
    }
}

fn arb_h_with_pair() -> impl Strategy<Value = (Poly, OreElement, OreElement)> {
    arb_nonzero_poly(3)
        .prop_flat_map(|h| (Just(h.clone()), arb_ore(h.clone(), 3, 2), arb_ore(h, 3, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn embedding_is_injective_ring_hom((h, a, b) in arb_h_with_pair()) {
        prop_assert_eq!(
            ore_to_weyl(&a.mul(&b)),
            ore_to_weyl(&a).mul(&ore_to_weyl(&b))
        );
        // round trip
        prop_assert_eq!(weyl_to_ore(&ore_to_weyl(&a), &h).unwrap(), a.clone());
        // hy-basis reconstructs
        prop_assert_eq!(hy_basis(&a).reconstruct(), a);
    }

    #[test]
    fn commutators_lie_in_h_a((h, a, b) in arb_h_with_pair()) {
        let c = a.commutator(&b);
        prop_assert!(c.is_divisible_by(&h));
        // char 0: division by h lands back in A
        prop_assert!(c.divide_poly(&h).is_ok());
    }

    #[test]
    fn f_alpha_derivation_and_commutator_shift(
        h in arb_nonzero_poly(3),
        f in arb_poly(4),
        g in arb_poly(4),
    ) {
        let alg = OreAlgebra::new(h.clone()).unwrap();
        let alpha = alg.yhat().add(&alg.term(&Poly::from_ints(q(), &[1, 2]), 1));
        // derivation property
        let lhs = f_alpha(&alpha, &f.mul(&g));
        let rhs = f_alpha(&alpha, &g)
            .mul_poly_left(&f)
            .add(&f_alpha(&alpha, &f).mul(&alg.from_poly(&g)));
        prop_assert_eq!(lhs, rhs);
        // F_α(f) − f'·α lies in [x, A] = hA (characteristic 0)
        let shift = f_alpha(&alpha, &f).sub(&alpha.mul_poly_left(&f.derivative(1)));
        prop_assert!(shift.is_divisible_by(&h));
    }
}
