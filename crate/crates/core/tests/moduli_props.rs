use brauer_y02::moduli::checks::*;
use brauer_y02::moduli::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn identities_hold_exhaustively() {
    for q in [13, 25, 27, 49] {
        let r = check_identities(&FiniteField::new(q).unwrap());
        assert_eq!(r.valid_t as u64, q - 2);
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn taut_family_discriminant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for r in check_taut_discriminants(1000, &mut rng) {
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn change_of_variables_everywhere() {
    let fields = supported_fields(49);
    assert_eq!(fields.len(), 18);
    for f in fields {
        let r = check_change_of_variables(&f);
        assert!(r.valid_t > 0 || f.order() == 3, "{r:?}");
        assert_eq!(r.matched, r.valid_t, "{r:?}");
    }
}

#[test]
fn point_fixing_automorphisms_divide_four() {
    for q in [9, 13, 25, 27] {
        let f = FiniteField::new(q).unwrap();
        let s = aut_survey(&f);
        assert!(s.all_divide_four(), "{s:?}");
        // every pair with 4 automorphisms has j = 1728 and sits in the s = −1/4 fiber
        let special = special_fiber(&f);
        let n = special.aut_fixing_point(special.point.as_ref().unwrap()).unwrap();
        assert_eq!(n, if q % 4 == 1 { 4 } else { 2 }, "F{q}");
        assert_eq!(s.histogram.contains_key(&4), q % 4 == 1);
    }
}

#[test]
fn four_automorphisms_only_over_special_fiber() {
    for q in [9, 13, 25] {
        let f = FiniteField::new(q).unwrap();
        for t in f.elements() {
            let Ok(s) = s_of_t(&t) else { continue };
            let e = WeierstrassCurve::legendre(&t);
            let n = e.aut_fixing_point(&(f.zero(), f.zero())).unwrap();
            let special = s == f.from_int(-1).mul(&f.from_int(4).inv().unwrap());
            assert_eq!(n == 4, special, "F{q} t={t}");
        }
    }
}

proptest! {
    #[test]
    fn s_is_invariant_under_inversion(i in 0u64..343) {
        let f = FiniteField::new(343).unwrap();
        let t = f.element(i);
        if let Ok(s) = s_of_t(&t) {
            prop_assert_eq!(s_of_t(&t.inv().unwrap()).unwrap(), s);
        }
    }
}
