use ccr_core::field::{
    division_poly, division_poly_symbolic, expected_degree, CurveParams, Fp, PrimeField, UniPoly,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn f1009() -> PrimeField {
    PrimeField::from_u64(1009).unwrap()
}

#[test]
fn rejects_composites() {
    assert!(PrimeField::from_u64(9).is_err());
    assert!(PrimeField::new(BigUint::from(561u32)).is_err());
    let p256: BigUint = "115792089237316195423570985008687907853269984665640564039457584007908834671663"
        .parse()
        .unwrap();
    assert!(PrimeField::new(p256).is_ok());
}

#[test]
fn division_polys_over_field_match_symbolic() {
    let f = f1009();
    let c = CurveParams::from_i64(&f, 1, 3).unwrap();
    for n in 2..9 {
        let p = division_poly(n, &c);
        let s = division_poly_symbolic(n);
        assert_eq!(p.degree().map(|d| d as u32), expected_degree(n));
        assert_eq!(s.degree_x(), expected_degree(n));
    }
}

/// Roots of f_3 are the x-coordinates of 3-torsion points: 2P = -P,
/// i.e. the tangent at P meets the curve again at x(P).
#[test]
fn three_division_roots_are_three_torsion() {
    let f = f1009();
    let c = CurveParams::from_i64(&f, 1, 3).unwrap();
    let roots = division_poly(3, &c).roots(&f, 3).unwrap();
    for x in roots {
        // x(2P) = lambda^2 - 2x with lambda^2 = (3x^2 + A)^2 / (4 y^2)
        let y2 = f.add(&f.add(&f.pow_u64(&x, 3), &f.mul(c.a(), &x)), c.b());
        let num = f.square(&f.add(&f.mul_int(&f.square(&x), 3), c.a()));
        let lam2 = f.div(&num, &f.mul_int(&y2, 4)).unwrap();
        assert_eq!(f.sub(&lam2, &f.mul_int(&x, 2)), x);
    }
}

fn elems() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..1009, 1..8)
}

proptest! {
    #[test]
    fn field_laws(a in 0u64..1009, b in 1u64..1009) {
        let f = f1009();
        let (x, y) = (f.elem(a), f.elem(b));
        prop_assert_eq!(f.mul(&f.div(&x, &y).unwrap(), &y), x.clone());
        prop_assert_eq!(f.add(&f.sub(&x, &y), &y), x.clone());
        prop_assert_eq!(f.pow_u64(&y, 1008), f.one());
    }

    #[test]
    fn divmod_reconstructs(a in elems(), b in elems()) {
        let f = f1009();
        let to = |v: &[u64]| UniPoly::from_coeffs(v.iter().map(|x| f.elem(*x)).collect());
        let (pa, pb) = (to(&a), to(&b));
        prop_assume!(!pb.is_zero());
        let (q, r) = pa.divmod(&pb, &f).unwrap();
        prop_assert_eq!(q.mul(&pb, &f).add(&r, &f), pa);
        prop_assert!(r.degree().unwrap_or(0) < pb.degree().unwrap().max(1) || r.is_zero());
    }

    #[test]
    fn roots_of_split_product(rs in prop::collection::btree_set(0u64..1009, 1..6), seed in 0u64..100) {
        let f = f1009();
        let mut p = UniPoly::constant(f.one());
        for r in &rs {
            p = p.mul(&UniPoly::from_coeffs(vec![f.neg(&f.elem(*r)), f.one()]), &f);
        }
        // an irreducible quadratic factor contributes no roots
        p = p.mul(&UniPoly::from_i64s(&f, &[11, 0, 1]), &f);
        let got: Vec<Fp> = p.roots(&f, seed).unwrap();
        let want: Vec<Fp> = rs.iter().map(|r| f.elem(*r)).collect();
        prop_assert_eq!(got, want);
    }
}
