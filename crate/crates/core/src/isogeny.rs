//! Recovering the isogenous curve from a root of a specialized modular
//! polynomial: `Ẽ4`, `Ẽ6` from the partials of `U_l` on the Elkies side,
//! `sigma`, `Ẽ4` and a gcd for `B*` on the Atkin side (`l = 11 mod 12`).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::field::{
    derivative_bundle, is_probable_prime, specialize, CurveParams, DerivativeBundle, FieldError,
    Fp, PrimeField, ReducedPoly, UniPoly,
};
use crate::formula::{eval, formula, FormulaError, FpRing};
use crate::modpoly::{build, build_classical_phi, Basis, BuildError, ClassicalModularPoly, PolyKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsogenyError {
    #[error("degenerate derivative: {0} = 0")]
    DegenerateDerivative(String),
    #[error("degenerate point: {0} = 0")]
    DegeneratePoint(String),
    #[error("gcd of the two B* polynomials has degree 2")]
    GcdDegreeTwo,
    #[error("gcd of the two B* polynomials has degree {0}")]
    NoCommonRoot(usize),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// `None` means the check was not run (the polynomial was not supplied).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub v_root: Option<bool>,
    pub w_root: Option<bool>,
    pub phi_match: Option<bool>,
}

impl Validation {
    /// No check that was run failed.
    pub fn passed(&self) -> bool {
        [self.v_root, self.w_root, self.phi_match]
            .iter()
            .all(|c| c != &Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyStepResult {
    pub ell: u32,
    pub sigma: Fp,
    pub e4t: Fp,
    pub e6t: Fp,
    pub a_star: Fp,
    pub b_star: Fp,
    pub sigma0: Fp,
    pub sigma2: Fp,
    pub sigma3: Fp,
    pub validated: Validation,
}

/// Values of the variables of the formula table at one point.
struct Point<'a> {
    f: &'a PrimeField,
    vals: BTreeMap<&'static str, Fp>,
}

impl Point<'_> {
    fn eval(&self, name: &str) -> Result<Fp, IsogenyError> {
        let get = |v: &str| self.vals.get(v).cloned();
        Ok(eval(formula(name)?, &FpRing(self.f), &get)?)
    }

    fn quotient(&self, num: &str, den: &str) -> Result<Fp, IsogenyError> {
        let d = self.eval(den)?;
        if d.is_zero() {
            return Err(IsogenyError::DegeneratePoint(den.to_string()));
        }
        Ok(self.f.div(&self.eval(num)?, &d)?)
    }

    fn require_nonzero(&self, names: &[&'static str], derivative: bool) -> Result<(), IsogenyError> {
        for n in names {
            if self.vals[n].is_zero() {
                let n = n.to_string();
                return Err(if derivative {
                    IsogenyError::DegenerateDerivative(n)
                } else {
                    IsogenyError::DegeneratePoint(n)
                });
            }
        }
        Ok(())
    }
}

fn elkies_point<'a>(
    f: &'a PrimeField,
    ell: u32,
    sigma: &Fp,
    b: &DerivativeBundle,
    e4: &Fp,
    e6: &Fp,
) -> Point<'a> {
    let vals = [
        ("ell", f.elem(ell as u64)),
        ("sigma", sigma.clone()),
        ("E4", e4.clone()),
        ("E6", e6.clone()),
        ("ds", b.du_s.clone()),
        ("d4", b.du_4.clone()),
        ("d6", b.du_6.clone()),
        ("ds4", b.du_s4.clone()),
        ("ds6", b.du_s6.clone()),
        ("d46", b.du_46.clone()),
    ]
    .into_iter()
    .collect();
    Point { f, vals }
}

fn atkin_point<'a>(
    f: &'a PrimeField,
    ell: u32,
    root: &Fp,
    b: &DerivativeBundle,
    e4: &Fp,
    e6: &Fp,
) -> Point<'a> {
    let vals = [
        ("ell", f.elem(ell as u64)),
        ("f", root.clone()),
        ("E4", e4.clone()),
        ("E6", e6.clone()),
        ("df", b.du_s.clone()),
        ("d4", b.du_4.clone()),
        ("d6", b.du_6.clone()),
        ("df4", b.du_s4.clone()),
        ("df6", b.du_s6.clone()),
        ("d46", b.du_46.clone()),
    ]
    .into_iter()
    .collect();
    Point { f, vals }
}

pub fn e4_tilde(
    f: &PrimeField,
    ell: u32,
    sigma: &Fp,
    bundle: &DerivativeBundle,
    e4: &Fp,
    e6: &Fp,
) -> Result<Fp, IsogenyError> {
    let pt = elkies_point(f, ell, sigma, bundle, e4, e6);
    pt.require_nonzero(&["ds"], true)?;
    pt.quotient("e4t_num", "e4t_den")
}

/// `Ẽ6 = -N / (l^6 ds^3)` with the diagonal partials eliminated first.
pub fn e6_tilde(
    f: &PrimeField,
    ell: u32,
    sigma: &Fp,
    bundle: &DerivativeBundle,
    e4: &Fp,
    e6: &Fp,
) -> Result<Fp, IsogenyError> {
    let mut pt = elkies_point(f, ell, sigma, bundle, e4, e6);
    pt.require_nonzero(&["ds"], true)?;
    pt.require_nonzero(&["sigma", "E4", "E6"], false)?;
    for d in ["dss", "d44", "d66"] {
        let v = pt.quotient(&format!("{d}_num"), &format!("{d}_den"))?;
        pt.vals.insert(d, v);
    }
    Ok(f.neg(&pt.quotient("n", "e6t_den")?))
}

pub fn atkin_sigma(
    f: &PrimeField,
    ell: u32,
    root: &Fp,
    bundle: &DerivativeBundle,
    e4: &Fp,
    e6: &Fp,
) -> Result<Fp, IsogenyError> {
    let pt = atkin_point(f, ell, root, bundle, e4, e6);
    pt.require_nonzero(&["df"], true)?;
    pt.require_nonzero(&["f"], false)?;
    pt.quotient("atkin_sigma_num", "atkin_sigma_den")
}

/// `Ẽ4 = -M / (l^2 f^2 E4 E6 df^3)`.
pub fn atkin_e4_tilde(
    f: &PrimeField,
    ell: u32,
    root: &Fp,
    bundle: &DerivativeBundle,
    e4: &Fp,
    e6: &Fp,
) -> Result<Fp, IsogenyError> {
    let pt = atkin_point(f, ell, root, bundle, e4, e6);
    pt.require_nonzero(&["df"], true)?;
    pt.require_nonzero(&["f", "E4", "E6"], false)?;
    Ok(f.neg(&pt.quotient("m", "atkin_e4t_den")?))
}

/// Root of `gcd(p1, p2)` when the gcd is linear.
pub fn common_root(p1: &UniPoly, p2: &UniPoly, f: &PrimeField) -> Result<Fp, IsogenyError> {
    let g = p1.gcd(p2, f)?;
    match g.degree() {
        Some(1) => Ok(f.neg(&g.coeff(0).cloned().unwrap_or_else(|| f.zero()))),
        Some(2) => Err(IsogenyError::GcdDegreeTwo),
        d => Err(IsogenyError::NoCommonRoot(d.unwrap_or(0))),
    }
}

/// `B*` as the common root of `Y^2 + 6912 f^12/Δ + 4A*^3/27` and
/// `U^a(-l f, A*, Y)`, with `Δ = (E4^3 - E6^2)/1728`. `ua` must be in the
/// `AB` basis.
pub fn atkin_b_star(
    curve: &CurveParams,
    ell: u32,
    root: &Fp,
    a_star: &Fp,
    ua: &ReducedPoly,
) -> Result<Fp, IsogenyError> {
    let (p1, p2) = atkin_b_star_polys(curve, ell, root, a_star, ua)?;
    common_root(&p1, &p2, curve.field())
}

/// The two polynomials in `Y` whose gcd reveals `B*`.
pub fn atkin_b_star_polys(
    curve: &CurveParams,
    ell: u32,
    root: &Fp,
    a_star: &Fp,
    ua: &ReducedPoly,
) -> Result<(UniPoly, UniPoly), IsogenyError> {
    if ua.kind != PolyKind::Ua || ua.basis != Basis::AB {
        return Err(IsogenyError::Unsupported("need U^a in the AB basis".into()));
    }
    let f = curve.field();
    let (e4, e6) = (curve.e4(), curve.e6());
    let delta = f.div(
        &f.sub(&f.mul(&f.square(&e4), &e4), &f.square(&e6)),
        &f.elem(1728),
    )?;
    if delta.is_zero() {
        return Err(IsogenyError::DegeneratePoint("Delta".into()));
    }
    let f12 = f.pow_u64(root, 12);
    let a3 = f.mul(&f.square(a_star), a_star);
    let c0 = f.add(
        &f.mul_int(&f.div(&f12, &delta)?, 6912),
        &f.div(&f.mul_int(&a3, 4), &f.elem(27))?,
    );
    let p1 = UniPoly::from_coeffs(vec![c0, f.zero(), f.one()]);
    let x = f.neg(&f.mul_int(root, ell as i64));
    let p2 = ua.in_third_slot(&x, a_star, f);
    Ok((p1, p2))
}

/// `(sigma0, sigma2, sigma3)` from `A - A* = 5(6 sigma2 + 2A sigma0)` and
/// `B - B* = 7(10 sigma3 + 6A sigma + 4B sigma0)`.
pub fn elkies_power_sums(
    f: &PrimeField,
    a: &Fp,
    b: &Fp,
    a_star: &Fp,
    b_star: &Fp,
    sigma: &Fp,
    ell: u32,
) -> Result<(Fp, Fp, Fp), IsogenyError> {
    let p = f.modulus();
    if *p == BigUint::from(5u32) || *p == BigUint::from(7u32) {
        return Err(IsogenyError::Unsupported(format!("p = {p}")));
    }
    let s0 = f.elem(((ell - 1) / 2) as u64);
    let two_a_s0 = f.mul_int(&f.mul(a, &s0), 2);
    let s2 = f.div(
        &f.sub(&f.div(&f.sub(a, a_star), &f.elem(5))?, &two_a_s0),
        &f.elem(6),
    )?;
    let rest = f.add(&f.mul_int(&f.mul(a, sigma), 6), &f.mul_int(&f.mul(b, &s0), 4));
    let s3 = f.div(
        &f.sub(&f.div(&f.sub(b, b_star), &f.elem(7))?, &rest),
        &f.elem(10),
    )?;
    Ok((s0, s2, s3))
}

/// Polynomials for the Elkies step; only `u` is required.
#[derive(Clone, Debug)]
pub struct ElkiesPolys {
    pub u: ReducedPoly,
    pub v: Option<ReducedPoly>,
    pub w: Option<ReducedPoly>,
    pub phi: Option<ClassicalModularPoly>,
}

impl ElkiesPolys {
    /// Builds `U_l` and, if `validate`, `V_l`, `W_l` and (for `l <= 13`) `Phi_l`.
    pub fn build(ell: u32, f: &PrimeField, validate: bool) -> Result<Self, IsogenyError> {
        let red = |k| -> Result<ReducedPoly, IsogenyError> {
            Ok(ReducedPoly::new(&build(k, ell)?.to_basis(Basis::AB), f)?)
        };
        Ok(ElkiesPolys {
            u: red(PolyKind::U)?,
            v: if validate { Some(red(PolyKind::V)?) } else { None },
            w: if validate { Some(red(PolyKind::W)?) } else { None },
            phi: if validate && ell <= 13 {
                Some(build_classical_phi(ell)?)
            } else {
                None
            },
        })
    }
}

fn check_params(curve: &CurveParams, ell: u32) -> Result<(), IsogenyError> {
    if ell < 5 || !is_probable_prime(&ell.into()) {
        return Err(IsogenyError::Unsupported(format!("ell = {ell} is not a prime >= 5")));
    }
    if *curve.field().modulus() == BigUint::from(ell) {
        return Err(IsogenyError::Unsupported("p = ell".into()));
    }
    Ok(())
}

fn validate(
    curve: &CurveParams,
    a_star: &Fp,
    b_star: Option<&Fp>,
    v: Option<&ReducedPoly>,
    w: Option<&ReducedPoly>,
    phi: Option<&ClassicalModularPoly>,
) -> Validation {
    let f = curve.field();
    let phi_match = match (phi, b_star) {
        (Some(phi), Some(b)) => Some(match CurveParams::new(f, a_star.clone(), b.clone()) {
            Ok(star) => phi.eval_fp(&curve.j_invariant(), &star.j_invariant(), f).is_zero(),
            Err(_) => false,
        }),
        _ => None,
    };
    Validation {
        v_root: v.map(|v| v.eval_on_curve(a_star, curve).is_zero()),
        w_root: match (w, b_star) {
            (Some(w), Some(b)) => Some(w.eval_on_curve(b, curve).is_zero()),
            _ => None,
        },
        phi_match,
    }
}

/// The Elkies formulas at one root `sigma` of the specialized `U_l`.
pub fn elkies_root(
    curve: &CurveParams,
    ell: u32,
    polys: &ElkiesPolys,
    sigma: &Fp,
) -> Result<IsogenyStepResult, IsogenyError> {
    let f = curve.field();
    let (e4, e6) = (curve.e4(), curve.e6());
    let bundle = derivative_bundle(&polys.u, curve, sigma)?;
    let e4t = e4_tilde(f, ell, sigma, &bundle, &e4, &e6)?;
    let e6t = e6_tilde(f, ell, sigma, &bundle, &e4, &e6)?;
    let l = f.elem(ell as u64);
    let a_star = f.mul(&f.mul_int(&f.pow_u64(&l, 4), -3), &e4t);
    let b_star = f.mul(&f.mul_int(&f.pow_u64(&l, 6), -2), &e6t);
    let (sigma0, sigma2, sigma3) =
        elkies_power_sums(f, curve.a(), curve.b(), &a_star, &b_star, sigma, ell)?;
    let validated = validate(
        curve,
        &a_star,
        Some(&b_star),
        polys.v.as_ref(),
        polys.w.as_ref(),
        polys.phi.as_ref(),
    );
    Ok(IsogenyStepResult {
        ell,
        sigma: sigma.clone(),
        e4t,
        e6t,
        a_star,
        b_star,
        sigma0,
        sigma2,
        sigma3,
        validated,
    })
}

/// Outcome of a step over all roots, in sorted root order.
#[derive(Clone, Debug)]
pub struct ElkiesReport {
    pub roots: Vec<Fp>,
    pub results: Vec<IsogenyStepResult>,
    pub diagnostics: Vec<(Fp, IsogenyError)>,
}

impl ElkiesReport {
    /// No roots: `l` is an Atkin prime for this curve.
    pub fn is_atkin(&self) -> bool {
        self.roots.is_empty()
    }
}

pub fn elkies_step(
    curve: &CurveParams,
    ell: u32,
    polys: &ElkiesPolys,
    seed: u64,
) -> Result<ElkiesReport, IsogenyError> {
    check_params(curve, ell)?;
    if polys.u.kind != PolyKind::U || polys.u.ell != ell {
        return Err(IsogenyError::Unsupported("U polynomial does not match ell".into()));
    }
    let roots = specialize(&polys.u, curve).roots(curve.field(), seed)?;
    let mut results = Vec::new();
    let mut diagnostics = Vec::new();
    for r in &roots {
        match elkies_root(curve, ell, polys, r) {
            Ok(res) => results.push(res),
            Err(e @ IsogenyError::Unsupported(_)) => return Err(e),
            Err(e) => diagnostics.push((r.clone(), e)),
        }
    }
    Ok(ElkiesReport {
        roots,
        results,
        diagnostics,
    })
}

/// One root `f` of the specialized `U^a_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtkinBranch {
    pub f: Fp,
    pub sigma: Option<Fp>,
    pub e4t: Option<Fp>,
    pub a_star: Option<Fp>,
    pub gcd_degree: Option<usize>,
    pub b_star: Option<Fp>,
    pub e6t: Option<Fp>,
    pub validated: Validation,
    pub error: Option<IsogenyError>,
}

#[derive(Clone, Debug)]
pub struct AtkinReport {
    pub roots: Vec<Fp>,
    pub branches: Vec<AtkinBranch>,
}

/// Polynomials for the Atkin step; `ua` is required and must be in the
/// `AB` basis.
#[derive(Clone, Debug)]
pub struct AtkinPolys {
    pub ua: ReducedPoly,
    pub v: Option<ReducedPoly>,
    pub w: Option<ReducedPoly>,
    pub phi: Option<ClassicalModularPoly>,
}

impl AtkinPolys {
    pub fn build(ell: u32, f: &PrimeField, validate: bool) -> Result<Self, IsogenyError> {
        let red = |k| -> Result<ReducedPoly, IsogenyError> {
            Ok(ReducedPoly::new(&build(k, ell)?.to_basis(Basis::AB), f)?)
        };
        Ok(AtkinPolys {
            ua: red(PolyKind::Ua)?,
            v: if validate { Some(red(PolyKind::V)?) } else { None },
            w: if validate { Some(red(PolyKind::W)?) } else { None },
            phi: if validate && ell <= 13 {
                Some(build_classical_phi(ell)?)
            } else {
                None
            },
        })
    }
}

pub fn atkin_root(curve: &CurveParams, ell: u32, polys: &AtkinPolys, root: &Fp) -> AtkinBranch {
    let mut br = AtkinBranch {
        f: root.clone(),
        sigma: None,
        e4t: None,
        a_star: None,
        gcd_degree: None,
        b_star: None,
        e6t: None,
        validated: Validation::default(),
        error: None,
    };
    let f = curve.field();
    let (e4, e6) = (curve.e4(), curve.e6());
    let l = f.elem(ell as u64);
    let run = |br: &mut AtkinBranch| -> Result<(), IsogenyError> {
        let bundle = derivative_bundle(&polys.ua, curve, root)?;
        br.sigma = Some(atkin_sigma(f, ell, root, &bundle, &e4, &e6)?);
        let e4t = atkin_e4_tilde(f, ell, root, &bundle, &e4, &e6)?;
        let a_star = f.mul(&f.mul_int(&f.pow_u64(&l, 4), -3), &e4t);
        br.e4t = Some(e4t);
        br.a_star = Some(a_star.clone());
        let (p1, p2) = atkin_b_star_polys(curve, ell, root, &a_star, &polys.ua)?;
        br.gcd_degree = p1.gcd(&p2, f)?.degree();
        let b_star = common_root(&p1, &p2, f)?;
        br.e6t = Some(f.div(&b_star, &f.mul_int(&f.pow_u64(&l, 6), -2))?);
        br.b_star = Some(b_star);
        Ok(())
    };
    if let Err(e) = run(&mut br) {
        br.error = Some(e);
    }
    if let Some(a_star) = &br.a_star {
        br.validated = validate(
            curve,
            a_star,
            br.b_star.as_ref(),
            polys.v.as_ref(),
            polys.w.as_ref(),
            polys.phi.as_ref(),
        );
    }
    br
}

pub fn atkin_step(
    curve: &CurveParams,
    ell: u32,
    polys: &AtkinPolys,
    seed: u64,
) -> Result<AtkinReport, IsogenyError> {
    check_params(curve, ell)?;
    if ell % 12 != 11 {
        return Err(IsogenyError::Unsupported(format!("ell = {ell} is not 11 mod 12")));
    }
    if polys.ua.kind != PolyKind::Ua || polys.ua.ell != ell || polys.ua.basis != Basis::AB {
        return Err(IsogenyError::Unsupported("U^a polynomial does not match ell".into()));
    }
    let roots = specialize(&polys.ua, curve).roots(curve.field(), seed)?;
    let branches = roots.iter().map(|r| atkin_root(curve, ell, polys, r)).collect();
    Ok(AtkinReport { roots, branches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (PrimeField, CurveParams) {
        let f = PrimeField::from_u64(1009).unwrap();
        let c = CurveParams::from_i64(&f, 1, 3).unwrap();
        (f, c)
    }

    #[test]
    fn ell5_worked_example() {
        let (f, c) = setup();
        let polys = ElkiesPolys::build(5, &f, true).unwrap();
        let rep = elkies_step(&c, 5, &polys, 1).unwrap();
        assert!(rep.roots.contains(&f.elem(584)));
        let r = rep.results.iter().find(|r| r.sigma == f.elem(584)).unwrap();
        assert_eq!(r.e4t, f.elem(497));
        assert_eq!(r.a_star, f.elem(441));
        assert_eq!(r.b_star, f.elem(997));
        assert_eq!(r.validated.v_root, Some(true));
        assert_eq!(r.validated.w_root, Some(true));
        assert_eq!(r.validated.phi_match, Some(true));
        assert_eq!(r.sigma0, f.elem(2));
    }

    #[test]
    fn ell11_atkin_example() {
        let (f, c) = setup();
        let polys = AtkinPolys::build(11, &f, true).unwrap();
        let rep = atkin_step(&c, 11, &polys, 7).unwrap();
        assert_eq!(rep.roots, vec![f.elem(65), f.elem(333)]);
        let b = &rep.branches[0];
        assert_eq!(b.error, None);
        assert_eq!(b.sigma, Some(f.elem(75)));
        assert_eq!(b.e4t, Some(f.elem(532)));
        assert_eq!(b.a_star, Some(f.elem(395)));
        assert_eq!(b.gcd_degree, Some(1));
        assert_eq!(b.b_star, Some(f.elem(460)));
        assert!(b.validated.passed());
        assert_eq!(b.validated.w_root, Some(true));
        let b = &rep.branches[1];
        assert_eq!(b.sigma, Some(f.elem(681)));
        assert_eq!(b.e4t, Some(f.elem(430)));
        assert_eq!(b.b_star, Some(f.elem(584)));
    }

    #[test]
    fn power_sums_round_trip() {
        let f = PrimeField::from_u64(1009).unwrap();
        let z = f.zero();
        let (_, s2, s3) = elkies_power_sums(&f, &z, &z, &z, &z, &z, 5).unwrap();
        assert!(s2.is_zero() && s3.is_zero());
        let e = |v| f.elem(v);
        let (a, b, a_s, b_s, s) = (e(17), e(400), e(3), e(998), e(123));
        let (s0, s2, s3) = elkies_power_sums(&f, &a, &b, &a_s, &b_s, &s, 7).unwrap();
        let lhs = f.mul_int(&f.add(&f.mul_int(&s2, 6), &f.mul_int(&f.mul(&a, &s0), 2)), 5);
        assert_eq!(lhs, f.sub(&a, &a_s));
        let inner = f.add(
            &f.add(&f.mul_int(&s3, 10), &f.mul_int(&f.mul(&a, &s), 6)),
            &f.mul_int(&f.mul(&b, &s0), 4),
        );
        assert_eq!(f.mul_int(&inner, 7), f.sub(&b, &b_s));
        let f7 = PrimeField::from_u64(7).unwrap();
        let z = f7.zero();
        assert!(elkies_power_sums(&f7, &z, &z, &z, &z, &z, 5).is_err());
    }

    #[test]
    fn gcd_degree_two() {
        let f = PrimeField::from_u64(1009).unwrap();
        let p = UniPoly::from_i64s(&f, &[2, 3, 1]);
        assert_eq!(common_root(&p, &p, &f), Err(IsogenyError::GcdDegreeTwo));
        let q = UniPoly::from_i64s(&f, &[1, 1]);
        assert_eq!(common_root(&p, &q, &f), Ok(f.elem(1008)));
        let r = UniPoly::from_i64s(&f, &[5, 1]);
        assert_eq!(common_root(&p, &r, &f), Err(IsogenyError::NoCommonRoot(0)));
    }

    #[test]
    fn degenerate_inputs() {
        let f = PrimeField::from_u64(1009).unwrap();
        let z = f.zero();
        let b = DerivativeBundle {
            u: z.clone(),
            du_s: z.clone(),
            du_4: f.one(),
            du_6: f.one(),
            du_s4: f.one(),
            du_s6: f.one(),
            du_46: f.one(),
        };
        let one = f.one();
        assert!(matches!(
            e4_tilde(&f, 5, &one, &b, &one, &one),
            Err(IsogenyError::DegenerateDerivative(_))
        ));
        let b = DerivativeBundle { du_s: f.one(), ..b };
        assert!(matches!(
            e6_tilde(&f, 5, &one, &b, &z, &one),
            Err(IsogenyError::DegeneratePoint(_))
        ));
        assert!(matches!(
            atkin_e4_tilde(&f, 11, &one, &b, &one, &z),
            Err(IsogenyError::DegeneratePoint(_))
        ));
    }

    #[test]
    fn rejects_p_equal_ell() {
        let f = PrimeField::from_u64(7).unwrap();
        let c = CurveParams::from_i64(&f, 1, 1).unwrap();
        let u = ReducedPoly::new(&build(PolyKind::U, 7).unwrap().to_basis(Basis::AB), &f).unwrap();
        let polys = ElkiesPolys { u, v: None, w: None, phi: None };
        assert!(matches!(elkies_step(&c, 7, &polys, 0), Err(IsogenyError::Unsupported(_))));
    }
}
