use ccr_core::field::{derivative_bundle, CurveParams, DerivativeBundle, Fp, PrimeField, ReducedPoly};
use ccr_core::isogeny::{atkin_e4_tilde, atkin_sigma, e4_tilde, e6_tilde};
use ccr_core::modpoly::{build, Basis, PolyKind};
use ccr_symbolic::{derive, Case, Var};

fn values<'a>(
    f: &'a PrimeField,
    ell: u32,
    slot: Var,
    root: &'a Fp,
    b: &'a DerivativeBundle,
    c: &'a CurveParams,
) -> impl Fn(Var) -> Fp + 'a {
    move |v| match v {
        Var::Ell => f.elem(ell as u64),
        Var::E4 => c.e4(),
        Var::E6 => c.e6(),
        Var::D4 => b.du_4.clone(),
        Var::D6 => b.du_6.clone(),
        Var::D46 => b.du_46.clone(),
        Var::Ds | Var::Df => b.du_s.clone(),
        Var::Ds4 | Var::Df4 => b.du_s4.clone(),
        Var::Ds6 | Var::Df6 => b.du_s6.clone(),
        x if x == slot => root.clone(),
        _ => f.zero(),
    }
}

#[test]
fn all_cases_pass() {
    for c in Case::ALL {
        let d = derive(c).unwrap();
        assert!(d.steps.len() >= 4, "{}", c.as_str());
    }
}

#[test]
fn reruns_are_identical() {
    let a = derive(Case::E6t).unwrap().to_string();
    let b = derive(Case::E6t).unwrap().to_string();
    assert_eq!(a, b);
}

#[test]
fn displayed_n_differs_in_constant_term() {
    let d = derive(Case::E6t).unwrap();
    assert!(d.notes.iter().any(|n| n.ends_with("= -7*sigma^3*ds^3")));
}

#[test]
fn ell5_numeric_point() {
    let f = PrimeField::from_u64(1009).unwrap();
    let c = CurveParams::from_i64(&f, 1, 3).unwrap();
    let u = ReducedPoly::new(&build(PolyKind::U, 5).unwrap().to_basis(Basis::AB), &f).unwrap();
    let s = f.elem(584);
    let b = derivative_bundle(&u, &c, &s).unwrap();
    let vals = values(&f, 5, Var::Sigma, &s, &b, &c);
    let e4t = derive(Case::E4t).unwrap().result.eval_fp(&vals, &f).unwrap();
    let e6t = derive(Case::E6t).unwrap().result.eval_fp(&vals, &f).unwrap();
    assert_eq!(e4t, f.elem(497));
    assert_eq!(e4t, e4_tilde(&f, 5, &s, &b, &c.e4(), &c.e6()).unwrap());
    assert_eq!(e6t, e6_tilde(&f, 5, &s, &b, &c.e4(), &c.e6()).unwrap());
    assert_eq!(f.mul_int(&e6t, -2 * 5i64.pow(6)), f.elem(997));
}

#[test]
fn ell11_numeric_point() {
    let f = PrimeField::from_u64(1009).unwrap();
    let c = CurveParams::from_i64(&f, 1, 3).unwrap();
    let ua = ReducedPoly::new(&build(PolyKind::Ua, 11).unwrap().to_basis(Basis::AB), &f).unwrap();
    let r = f.elem(65);
    let b = derivative_bundle(&ua, &c, &r).unwrap();
    let vals = values(&f, 11, Var::F, &r, &b, &c);
    let s = derive(Case::AtkinSigma).unwrap().result.eval_fp(&vals, &f).unwrap();
    let e4t = derive(Case::AtkinE4t).unwrap().result.eval_fp(&vals, &f).unwrap();
    assert_eq!(s, f.elem(75));
    assert_eq!(e4t, f.elem(532));
    assert_eq!(s, atkin_sigma(&f, 11, &r, &b, &c.e4(), &c.e6()).unwrap());
    assert_eq!(e4t, atkin_e4_tilde(&f, 11, &r, &b, &c.e4(), &c.e6()).unwrap());
}
