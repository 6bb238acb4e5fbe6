use ccr_core::modpoly::{
    atkin_lehner_check, build, build_classical_phi, euler_identities, root_identity, Basis,
    PolyKind, StoredPoly,
};

#[test]
fn u5_matches_published_form() {
    let u = build(PolyKind::U, 5).unwrap().to_basis(Basis::AB);
    assert_eq!(
        u.to_string(),
        "X^6 + 20*X^4*A + 160*X^3*B - 80*X^2*A^2 - 128*X*A*B - 80*B^2"
    );
}

#[test]
fn ua11_matches_published_form() {
    let u = build(PolyKind::Ua, 11).unwrap();
    assert_eq!(
        u.to_delta().to_string(),
        "X^12 - 990*X^6*Delta + 440*X^4*E4*Delta - 165*X^3*E6*Delta + 22*X^2*E4^2*Delta \
         - X*E4*E6*Delta - 11*Delta^2"
    );
    assert!(atkin_lehner_check(&u, 20));
}

#[test]
fn structure_for_small_ell() {
    for ell in [5u32, 7] {
        for kind in [PolyKind::U, PolyKind::V, PolyKind::W] {
            let p = build(kind, ell).unwrap();
            let ab = p.to_basis(Basis::AB);
            assert!(ab.is_integral(), "{kind}_{ell}");
            assert!(p.is_monic() && p.is_weighted_homogeneous(), "{kind}_{ell}");
            assert!(euler_identities(&p).iter().all(|(_, ok)| *ok), "{kind}_{ell}");
            assert!(root_identity(&p, 25).unwrap(), "{kind}_{ell}");
        }
    }
}

#[test]
fn invalid_pairs() {
    assert!(build(PolyKind::U, 4).is_err());
    assert!(build(PolyKind::U, 3).is_err());
    assert!(build(PolyKind::Ua, 13).is_err());
    assert!(build_classical_phi(17).is_err());
}

#[test]
fn store_round_trip() {
    let u = build(PolyKind::Ua, 11).unwrap();
    for s in [
        StoredPoly::Weighted(u.clone()),
        StoredPoly::Weighted(u.to_basis(Basis::AB)),
        StoredPoly::Delta(u.to_delta()),
        StoredPoly::Phi(build_classical_phi(5).unwrap()),
    ] {
        let text = s.to_store();
        let back = StoredPoly::parse(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_store(), text);
    }
    assert!(StoredPoly::parse("CCR kind=U ell=5 basis=XY\n").is_err());
    assert!(StoredPoly::parse("CCR kind=U ell=5 basis=AB\n6 0 0\n").is_err());
}

#[test]
fn perturbation_breaks_root_identity() {
    let u = build(PolyKind::U, 7).unwrap();
    let bad = u.perturbed((2, 3, 0), &ccr_core::qseries::Rational::from_integer(1.into()));
    assert!(!root_identity(&bad, 25).unwrap());
}
