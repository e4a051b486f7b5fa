use num_complex::Complex;
use polyrace_core::characters::{
    c_coefficient, make_context, quadratic_residues, CharError, CharValue,
};
use polyrace_core::ffcore::make_field;
use polyrace_core::parse::parse_poly;
use polyrace_core::polyring::{poly_from_packed, Poly};
use proptest::prelude::*;

#[test]
fn simplest_modulus() {
    let f3 = make_field(3, 1, None).unwrap();
    let ctx = make_context(&f3, &Poly::t()).unwrap();
    assert_eq!(ctx.phi, 2);
    let chars = ctx.all_characters().unwrap();
    assert_eq!(chars.len(), 2);
    let chi = chars.iter().find(|c| !c.is_principal).unwrap();
    let two = Poly::constant(f3.from_int(2));
    assert_eq!(ctx.evaluate(chi, &two).as_int(), Some(-1));
    assert_eq!(ctx.evaluate(chi, &Poly::one()).as_int(), Some(1));
    assert_eq!(ctx.evaluate(chi, &Poly::t()), CharValue::Zero);
    // Principal character is 1 on every unit.
    let chi0 = ctx.principal();
    assert_eq!(ctx.evaluate(&chi0, &two).as_int(), Some(1));
}

#[test]
fn phi_of_irreducible_degree5_modulus() {
    let f5 = make_field(5, 1, None).unwrap();
    let m = parse_poly("t^5+3t^4+4t^3+2t+2", &f5).unwrap();
    let ctx = make_context(&f5, &m).unwrap();
    assert_eq!(ctx.phi, 5u64.pow(5) - 1); // 3124
    assert!(ctx.is_squarefree);
    assert_eq!(ctx.omega_m, 1);
    let (squares, nonsquares) = quadratic_residues(&ctx).unwrap();
    assert_eq!(squares.len(), 1562);
    assert_eq!(nonsquares.len(), 1562);
}

#[test]
fn phi_of_two_factor_modulus() {
    let f5 = make_field(5, 1, None).unwrap();
    let m = parse_poly("t^6+2t^4+3t+1", &f5).unwrap();
    let ctx = make_context(&f5, &m).unwrap();
    // Two irreducible cubic factors.
    assert_eq!(ctx.omega_m, 2);
    assert!(ctx.is_squarefree);
    assert_eq!(ctx.phi, (125 - 1) * (125 - 1)); // 15376
    let quads = ctx.quadratic_characters().unwrap();
    assert_eq!(quads.len(), 3);
    assert!(quads.iter().all(|c| c.order == 2 && c.is_real && !c.is_principal));
}

#[test]
fn quadratic_residue_index_in_multi_factor_group() {
    let f9 = make_field(3, 2, None).unwrap();
    let m = parse_poly("t^3-t", &f9).unwrap();
    let ctx = make_context(&f9, &m).unwrap();
    assert_eq!(ctx.omega_m, 3);
    assert_eq!(ctx.phi, 8 * 8 * 8);
    let (squares, _) = quadratic_residues(&ctx).unwrap();
    assert_eq!(squares.len(), ctx.phi / 8);
    assert_eq!(ctx.quadratic_characters().unwrap().len(), 7);
}

#[test]
fn non_squarefree_modulus_supported_for_characters() {
    let f3 = make_field(3, 1, None).unwrap();
    // M = t^2: phi = 9 - 3 = 6
    let m = Poly::t().mul(&Poly::t(), &f3);
    let ctx = make_context(&f3, &m).unwrap();
    assert_eq!(ctx.phi, 6);
    assert!(!ctx.is_squarefree);
    assert_eq!(ctx.all_characters().unwrap().len(), 6);
    assert!(matches!(
        ctx.quadratic_characters(),
        Err(CharError::NotSquarefree)
    ));
    // M = t^3 over F_3 exercises the one-unit basis with two generators.
    let m3 = m.mul(&Poly::t(), &f3);
    let ctx3 = make_context(&f3, &m3).unwrap();
    assert_eq!(ctx3.phi, 27 - 9);
    assert_eq!(ctx3.all_characters().unwrap().len(), 18);
}

fn orthogonality_check(p: u32, e: u32, m_expr: &str) {
    let f = make_field(p, e, None).unwrap();
    let m = parse_poly(m_expr, &f).unwrap();
    let ctx = make_context(&f, &m).unwrap();
    let chars = ctx.all_characters().unwrap();
    let units = ctx.unit_table().unwrap();
    let width = ctx.modulus.deg();
    // Row orthogonality over all pairs.
    for (i, chi) in chars.iter().enumerate() {
        for (j, psi) in chars.iter().enumerate() {
            let mut sum = Complex::new(0.0, 0.0);
            for &packed in &units.classes {
                let a = poly_from_packed(&f, packed, width);
                sum += ctx.evaluate(chi, &a).to_complex()
                    * ctx.evaluate(psi, &a).conj().to_complex();
            }
            let expected = if i == j { ctx.phi as f64 } else { 0.0 };
            assert!(
                (sum.re - expected).abs() < 1e-9 && sum.im.abs() < 1e-9,
                "orthogonality failed for pair ({i},{j}): {sum}"
            );
        }
    }
}

#[test]
fn character_orthogonality() {
    orthogonality_check(3, 1, "t^2+1"); // phi = 8, cyclic
    orthogonality_check(5, 1, "t^2+t"); // t(t+1): phi = 16, product group
    orthogonality_check(3, 1, "t^3"); // non-squarefree
}

#[test]
fn race_coefficients_for_square_race() {
    let f5 = make_field(5, 1, None).unwrap();
    let m = parse_poly("t^2+2", &f5).unwrap(); // irreducible: phi = 24
    let ctx = make_context(&f5, &m).unwrap();
    let (sq, nsq) = quadratic_residues(&ctx).unwrap();
    let chars = ctx.all_characters().unwrap();
    for chi in &chars {
        let c = c_coefficient(&ctx, chi, &sq, &nsq).unwrap();
        if chi.is_principal {
            assert!(c.norm() < 1e-12);
        } else if chi.is_real {
            let expected = 1.0 / nsq.len() as f64;
            assert!((c.re - expected).abs() < 1e-12 && c.im.abs() < 1e-12);
        } else {
            assert!(c.norm() < 1e-12, "non-real character should drop out: {c}");
        }
    }
}

#[test]
fn character_powers_and_products() {
    let f5 = make_field(5, 1, None).unwrap();
    let m = parse_poly("t^2+2", &f5).unwrap();
    let ctx = make_context(&f5, &m).unwrap();
    let chars = ctx.all_characters().unwrap();
    let chi = chars.iter().find(|c| c.order == 24).unwrap();
    assert_eq!(ctx.char_pow(chi, 12).order, 2);
    assert!(ctx.char_pow(chi, 24).is_principal);
    let sq = ctx.char_mul(chi, chi);
    assert_eq!(sq.order, 12);
    assert_eq!(&ctx.char_pow(chi, 2), &sq);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_multiplicative(ai in 0u64..625, bi in 0u64..625, chi_idx in 0usize..100) {
        let f5 = make_field(5, 1, None).unwrap();
        let m = parse_poly("t^3+t+1", &f5).unwrap();
        let ctx = make_context(&f5, &m).unwrap();
        let chars = ctx.all_characters().unwrap();
        let chi = &chars[chi_idx % chars.len()];
        let a = poly_from_packed(&f5, ai % 125, 3);
        let b = poly_from_packed(&f5, bi % 125, 3);
        let ab = a.mul(&b, &f5);
        let lhs = ctx.evaluate(chi, &ab).to_complex();
        let rhs = ctx.evaluate(chi, &a).to_complex() * ctx.evaluate(chi, &b).to_complex();
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }
}
