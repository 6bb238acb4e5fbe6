use ccr_core::qseries::{classical_identities, delta_product, expand, FormName, PowerSeries, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn identities_to_precision_50() {
    for (name, ok) in classical_identities(50).unwrap() {
        assert!(ok, "{name}");
    }
}

#[test]
fn ramanujan_tau() {
    let d = delta_product(8).unwrap();
    let tau: Vec<i64> = (1..8).map(|n| d.coeff(n).unwrap().to_integer().try_into().unwrap()).collect();
    assert_eq!(tau, vec![1, -24, 252, -1472, 4830, -6048, -16744]);
}

#[test]
fn eta_product_for_ell_11() {
    // (eta(q) eta(q^11))^2 = q - 2q^2 - q^3 + 2q^4 + q^5 + 2q^6 - 2q^7 ...
    let f = expand(FormName::EtaSquaredProduct(11), 8).unwrap();
    let c: Vec<i64> = (1..8).map(|n| f.coeff(n).unwrap().to_integer().try_into().unwrap()).collect();
    assert_eq!(c, vec![1, -2, -1, 2, 1, 2, -2]);
    assert!(expand(FormName::EtaSquaredProduct(13), 5).is_err());
}

fn series() -> impl Strategy<Value = PowerSeries> {
    (prop::collection::vec(-20i64..20, 1..12), -2i64..3)
        .prop_map(|(c, lead)| PowerSeries::from_ints(1, lead, &c).unwrap())
}

proptest! {
    #[test]
    fn inverse_is_inverse(s in series()) {
        let s = s.strip_leading_zeros();
        prop_assume!(!s.is_zero());
        let inv = s.inverse().unwrap();
        let one = s.mul(&inv).unwrap();
        prop_assert_eq!(one.valuation(), Some(0));
        prop_assert_eq!(one.coeff(0), Some(Rational::from_integer(BigInt::from(1))));
        prop_assert!((1..one.end()).all(|n| one.coeff(n).unwrap() == Rational::from_integer(BigInt::from(0))));
    }

    #[test]
    fn mul_commutes_and_qdiff_is_a_derivation(a in series(), b in series()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        let lhs = ab.qdiff();
        let rhs = a.qdiff().mul(&b).unwrap().add(&a.mul(&b.qdiff()).unwrap()).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn substitution_then_extraction(a in series(), l in 2u32..6) {
        // extracting the progression of F(x^l) in step l recovers l * F
        let s = a.substitute_q_power(l).unwrap().with_step(l).unwrap();
        let back = s.extract_arithmetic_progression(l).unwrap();
        prop_assert!(back.sub(&a.scale_int(l as i64).truncate(back.end()).unwrap()).unwrap().is_zero());
    }
}
