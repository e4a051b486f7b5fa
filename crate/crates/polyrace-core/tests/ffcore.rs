use polyrace_core::ffcore::{element_order, find_generator, make_field, FieldError, FqElement};
use proptest::prelude::*;

#[test]
fn prime_field_basics() {
    let f5 = make_field(5, 1, None).unwrap();
    assert_eq!(f5.q, 5);
    let two = f5.from_int(2);
    let three = f5.from_int(3);
    assert_eq!(f5.add(two, three), FqElement::ZERO);
    assert_eq!(f5.mul(two, three), f5.from_int(1));
    assert_eq!(f5.neg(two), three);
    assert_eq!(f5.inv(two).unwrap(), three);
}

#[test]
fn f9_default_representation() {
    // Smallest irreducible quadratic over F_3 in odometer order is x^2 + 1.
    let f9 = make_field(3, 2, None).unwrap();
    assert_eq!(f9.defining_poly, vec![1, 0, 1]);
    // x^2 = -1 in this representation.
    let x = f9.from_coeffs(&[0, 1]);
    assert_eq!(f9.mul(x, x), f9.neg(f9.from_int(1)));
    // Canonical generator is x + 1, of order 8.
    let gen = f9.generator();
    assert_eq!(gen, f9.from_coeffs(&[1, 1]));
    assert_eq!(element_order(&f9, gen).unwrap(), 8);
}

#[test]
fn generator_has_full_order() {
    for (p, e) in [(2, 1), (3, 1), (7, 1), (3, 2), (5, 2), (2, 4), (3, 3)] {
        let f = make_field(p, e, None).unwrap();
        let g = find_generator(&f);
        assert_eq!(element_order(&f, g).unwrap(), (f.q - 1) as u64);
    }
}

#[test]
fn dlog_round_trip() {
    let f9 = make_field(3, 2, None).unwrap();
    let g = f9.generator();
    for k in 0..8u32 {
        let a = f9.pow(g, k as u64);
        assert_eq!(f9.dlog(a).unwrap(), k);
    }
    assert!(f9.dlog(FqElement::ZERO).is_err());
}

#[test]
fn format_element_styles() {
    let f5 = make_field(5, 1, None).unwrap();
    assert_eq!(f5.format_element(f5.from_int(3)), "3");
    let f9 = make_field(3, 2, None).unwrap();
    assert_eq!(f9.format_element(FqElement::ZERO), "0");
    assert_eq!(f9.format_element(f9.from_int(1)), "1");
    assert_eq!(f9.format_element(f9.generator()), "a");
    let g2 = f9.mul(f9.generator(), f9.generator());
    assert_eq!(f9.format_element(g2), "a^2");
}

#[test]
fn rejects_bad_parameters() {
    assert!(matches!(make_field(6, 1, None), Err(FieldError::NotPrime(6))));
    assert!(matches!(make_field(4, 1, None), Err(FieldError::NotPrime(4))));
    // x^2 - 1 is reducible over F_3.
    assert!(matches!(
        make_field(3, 2, Some(&[2, 0, 1])),
        Err(FieldError::ReduciblePoly)
    ));
}

fn field_cases() -> Vec<(u32, u32)> {
    vec![(2, 1), (3, 1), (5, 1), (3, 2), (2, 3), (5, 2), (7, 2)]
}

proptest! {
    #[test]
    fn field_axioms(case in 0usize..7, ai in 0u64..10_000, bi in 0u64..10_000, ci in 0u64..10_000) {
        let (p, e) = field_cases()[case];
        let f = make_field(p, e, None).unwrap();
        let q = f.q as u64;
        let elems: Vec<FqElement> = f.elements().collect();
        let a = elems[(ai % q) as usize];
        let b = elems[(bi % q) as usize];
        let c = elems[(ci % q) as usize];
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FqElement::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.from_int(1));
            // Fermat: a^(q-1) = 1
            prop_assert_eq!(f.pow(a, q - 1), f.from_int(1));
        }
    }
}
