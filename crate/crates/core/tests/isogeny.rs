use ccr_core::field::{CurveParams, PrimeField};
use ccr_core::isogeny::{elkies_power_sums, elkies_step, ElkiesPolys};
use proptest::prelude::*;

fn f1009() -> PrimeField {
    PrimeField::from_u64(1009).unwrap()
}

#[test]
fn atkin_curve_gives_empty_list() {
    let f = f1009();
    let polys = ElkiesPolys::build(5, &f, false).unwrap();
    let mut found = false;
    for b in 1..200 {
        let Ok(c) = CurveParams::from_i64(&f, 1, b) else { continue };
        let rep = elkies_step(&c, 5, &polys, 0).unwrap();
        if rep.is_atkin() {
            assert!(rep.results.is_empty() && rep.diagnostics.is_empty());
            found = true;
            break;
        }
    }
    assert!(found);
}

#[test]
fn deterministic_and_consistent() {
    let f = f1009();
    let polys = ElkiesPolys::build(7, &f, true).unwrap();
    let l = f.elem(7);
    let mut seen = 0;
    for b in 1..60 {
        let Ok(c) = CurveParams::from_i64(&f, 2, b) else { continue };
        let r1 = elkies_step(&c, 7, &polys, 1).unwrap();
        let r2 = elkies_step(&c, 7, &polys, 99).unwrap();
        assert_eq!(r1.results, r2.results);
        for r in &r1.results {
            seen += 1;
            assert_eq!(r.a_star, f.mul(&f.mul_int(&f.pow_u64(&l, 4), -3), &r.e4t));
            assert_eq!(r.b_star, f.mul(&f.mul_int(&f.pow_u64(&l, 6), -2), &r.e6t));
            assert_eq!(r.validated.v_root, Some(true));
            assert_eq!(r.validated.w_root, Some(true));
            assert_eq!(r.validated.phi_match, Some(true));
        }
    }
    assert!(seen > 0);
}

proptest! {
    #[test]
    fn power_sums_invert(a in 0u64..1009, b in 0u64..1009, a_s in 0u64..1009, b_s in 0u64..1009, s in 0u64..1009) {
        let f = f1009();
        let e = |v| f.elem(v);
        let (s0, s2, s3) = elkies_power_sums(&f, &e(a), &e(b), &e(a_s), &e(b_s), &e(s), 11).unwrap();
        prop_assert_eq!(s0.clone(), e(5));
        let lhs = f.mul_int(&f.add(&f.mul_int(&s2, 6), &f.mul_int(&f.mul(&e(a), &s0), 2)), 5);
        prop_assert_eq!(lhs, f.sub(&e(a), &e(a_s)));
        let inner = f.add(&f.add(&f.mul_int(&s3, 10), &f.mul_int(&f.mul(&e(a), &e(s)), 6)), &f.mul_int(&f.mul(&e(b), &s0), 4));
        prop_assert_eq!(f.mul_int(&inner, 7), f.sub(&e(b), &e(b_s)));
    }
}
