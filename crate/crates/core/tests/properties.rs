use proptest::prelude::*;

use ternopt_core::code::{build_code, syndrome};
use ternopt_core::field::FieldElem;
use ternopt_core::{factor, FieldCtx, Gf3, Poly};

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u8..3, 0..=max_len).prop_map(|c| Poly::from_u8s(&c))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn naive_powmod(a: &Poly, e: u128, f: &Poly) -> Poly {
    let mut acc = Poly::one();
    let base = a.rem(f).unwrap();
    for _ in 0..e {
        acc = (&acc * &base).rem(f).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn ring_axioms(a in poly(33), b in poly(33), c in poly(33)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn divrem_round_trip(a in poly(40), b in nonzero_poly(20)) {
        let (q, r) = a.divrem(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_and_is_monic(a in nonzero_poly(25), b in poly(25), c in nonzero_poly(8)) {
        let (a, b) = (&a * &c, &b * &c);
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
        prop_assert!(g.rem(&c.monic()).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn frobenius_power_matches_naive_powmod(a in poly(12), f in nonzero_poly(11), d in 0u32..=4) {
        prop_assume!(f.degree() >= Some(1));
        let fast = a.frobenius_power(d, &f).unwrap();
        prop_assert_eq!(fast, naive_powmod(&a, 3u128.pow(d), &f));
    }

    #[test]
    fn factor_round_trip_and_irreducible(f in nonzero_poly(24)) {
        let fac = factor(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (p, k) in &fac.factors {
            prop_assert!(*k >= 1);
            prop_assert!(p.is_monic());
            prop_assert!(p.is_irreducible().unwrap());
        }
    }
}

// d = 6 with a degree-10 modulus is too slow for the naive oracle above; spot-check it.
#[test]
fn frobenius_power_six() {
    let f = Poly::from_u8s(&[1, 2, 0, 1, 0, 0, 2, 0, 1, 0, 1]);
    let a = Poly::from_u8s(&[0, 1, 1, 0, 2]);
    let mut expect = a.clone();
    for _ in 0..6 {
        expect = naive_powmod(&expect, 3, &f);
    }
    assert_eq!(a.frobenius_power(6, &f).unwrap(), expect);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn frobenius_is_a_ring_endomorphism(m in 1u32..=7, a in any::<u64>(), b in any::<u64>()) {
        let ctx = FieldCtx::build(m).unwrap();
        let (a, b) = (ctx.element_at(a % ctx.size()), ctx.element_at(b % ctx.size()));
        let cube = |x| ctx.pow(x, 3);
        prop_assert_eq!(cube(ctx.add(a, b)), ctx.add(cube(a), cube(b)));
        prop_assert_eq!(cube(ctx.mul(a, b)), ctx.mul(cube(a), cube(b)));
        prop_assert_eq!(ctx.frobenius(a), cube(a));
    }

    // independent oracle: polynomial product reduced by the modulus
    #[test]
    fn field_mul_matches_poly_arithmetic(m in 1u32..=12, a in any::<u64>(), b in any::<u64>()) {
        let ctx = FieldCtx::build(m).unwrap();
        let (a, b) = (ctx.element_at(a % ctx.size()), ctx.element_at(b % ctx.size()));
        let expect = (&a.to_poly() * &b.to_poly()).rem(ctx.modulus()).unwrap();
        prop_assert_eq!(ctx.mul(a, b).to_poly(), expect.clone());
        prop_assert_eq!(ctx.from_poly(&expect), ctx.mul(a, b));
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), FieldElem::ONE);
        }
    }

    #[test]
    fn syndrome_is_linear(words in prop::collection::vec((0u64..80, 1u8..3), 0..10),
                          others in prop::collection::vec((0u64..80, 1u8..3), 0..10)) {
        let ctx = FieldCtx::build(4).unwrap();
        let to_word = |w: &[(u64, u8)]| -> Vec<(u64, Gf3)> { w.iter().map(|&(i, c)| (i, Gf3::new(c))).collect() };
        let (a, b) = (to_word(&words), to_word(&others));
        let (sa, sb) = (syndrome(&ctx, 14, &a), syndrome(&ctx, 14, &b));
        let joined: Vec<_> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(syndrome(&ctx, 14, &joined), (sa.0.add(sb.0), sa.1.add(sb.1)));
    }

    #[test]
    fn codewords_are_closed_under_addition(a in poly(71), b in poly(71)) {
        let ctx = FieldCtx::build(4).unwrap();
        let code = build_code(&ctx, 14).unwrap();
        let (ca, cb) = (&a * &code.generator, &b * &code.generator);
        prop_assert!(code.is_codeword(&ca) && code.is_codeword(&cb));
        prop_assert!(code.is_codeword(&(&ca + &cb)));
        // a word is a codeword iff its syndrome vanishes
        let word: Vec<(u64, Gf3)> = ca.coeffs().iter().enumerate()
            .filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i as u64, c)).collect();
        prop_assert_eq!(syndrome(&ctx, 14, &word), (FieldElem::ZERO, FieldElem::ZERO));
    }
}
