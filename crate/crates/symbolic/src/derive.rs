//! Mechanical re-derivation of the four closed formulas.
//!
//! Each derivation differentiates the relation `P(x, E4, E6) = 0` along
//! `q d/dq` with Ramanujan's system, clears denominators, checks that the
//! coefficients of the positive powers of `E2` are multiples of the Euler
//! combination `H` (which vanishes at a root), solves the `E2`-free part
//! for the unknown and compares the result with the formula table.

use std::fmt;

use ccr_core::formula::{eval, formula, FormulaError};
use ccr_core::qseries::Rational;
use num_bigint::BigInt;
use thiserror::Error;

use crate::multipoly::{MultiPoly, PolyError, Var};
use crate::rational::{FractionRing, RationalExpression};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("{case}: assertion failed: {step}")]
    Assertion { case: &'static str, step: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    E4t,
    E6t,
    AtkinSigma,
    AtkinE4t,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::E4t, Case::E6t, Case::AtkinSigma, Case::AtkinE4t];

    pub fn as_str(self) -> &'static str {
        match self {
            Case::E4t => "e4t",
            Case::E6t => "e6t",
            Case::AtkinSigma => "a-sigma",
            Case::AtkinE4t => "a-e4t",
        }
    }

    pub fn parse(s: &str) -> Option<Case> {
        Case::ALL.iter().copied().find(|c| c.as_str() == s)
    }
}

/// A derivation that passed every assertion.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub case: Case,
    /// Assertions in the order they were checked, with a short detail.
    pub steps: Vec<(String, String)>,
    /// Observations that are not assertions.
    pub notes: Vec<String>,
    pub result: RationalExpression,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case {}", self.case.as_str())?;
        for (s, d) in &self.steps {
            if d.is_empty() {
                writeln!(f, "  PASS {s}")?;
            } else {
                writeln!(f, "  PASS {s}: {d}")?;
            }
        }
        for n in &self.notes {
            writeln!(f, "  note {n}")?;
        }
        writeln!(f, "  result numerator: {}", self.result.num())?;
        writeln!(f, "  result denominator: {}", self.result.den())
    }
}

struct Recorder {
    case: Case,
    steps: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Recorder {
    fn new(case: Case) -> Self {
        Recorder {
            case,
            steps: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, step: &str, ok: bool, detail: String) -> Result<(), DeriveError> {
        if !ok {
            return Err(DeriveError::Assertion {
                case: self.case.as_str(),
                step: step.to_string(),
            });
        }
        self.steps.push((step.to_string(), detail));
        Ok(())
    }

    fn finish(self, result: RationalExpression) -> Derivation {
        Derivation {
            case: self.case,
            steps: self.steps,
            notes: self.notes,
            result,
        }
    }
}

fn v(x: Var) -> RationalExpression {
    RationalExpression::var(x)
}

fn n(k: i64) -> RationalExpression {
    RationalExpression::int(k)
}

fn q(a: i64, b: i64) -> RationalExpression {
    RationalExpression::poly(MultiPoly::constant(Rational::new(BigInt::from(a), BigInt::from(b))))
}

/// `H_U = sigma ds + 2 E4 d4 + 3 E6 d6`.
pub fn h_u() -> MultiPoly {
    (v(Var::Sigma) * v(Var::Ds) + n(2) * v(Var::E4) * v(Var::D4) + n(3) * v(Var::E6) * v(Var::D6))
        .numerator()
}

/// `H_f = f df + 2 E4 d4 + 3 E6 d6`.
pub fn h_f() -> MultiPoly {
    (v(Var::F) * v(Var::Df) + n(2) * v(Var::E4) * v(Var::D4) + n(3) * v(Var::E6) * v(Var::D6))
        .numerator()
}

/// Asserts `c` is an exact multiple of `h` and returns the quotient.
fn divisible(
    rec: &mut Recorder,
    step: &str,
    c: &MultiPoly,
    h: &MultiPoly,
) -> Result<(), DeriveError> {
    match c.exact_divide(h) {
        Ok(qt) => rec.check(step, true, format!("quotient {qt}")),
        Err(_) => rec.check(step, false, String::new()),
    }
}

/// `-c0 / c1` where `p = c1 * x + c0`.
fn solve_linear(
    rec: &mut Recorder,
    p: &MultiPoly,
    x: Var,
) -> Result<RationalExpression, DeriveError> {
    rec.check(
        &format!("constant coefficient is linear in {}", x.name()),
        p.degree_in(x) == Some(1),
        String::new(),
    )?;
    Ok(RationalExpression::new(
        -&p.coefficient_of(x, 0),
        p.coefficient_of(x, 1),
    )?)
}

fn table(name: &str, vars: &dyn Fn(&str) -> Option<RationalExpression>) -> Result<RationalExpression, DeriveError> {
    Ok(eval(formula(name)?, &FractionRing, vars)?)
}

fn plain_vars(name: &str) -> Option<RationalExpression> {
    Var::from_name(name).map(RationalExpression::var)
}

/// Table quotient `-num/den` or `num/den`.
fn table_quotient(
    num: &str,
    den: &str,
    negate: bool,
    vars: &dyn Fn(&str) -> Option<RationalExpression>,
) -> Result<RationalExpression, DeriveError> {
    let q = table(num, vars)?.div(&table(den, vars)?)?;
    Ok(if negate { -q } else { q })
}

struct Ramanujan {
    e2p: RationalExpression,
    e4p: RationalExpression,
    e6p: RationalExpression,
}

fn ramanujan() -> Ramanujan {
    let (e2, e4, e6) = (v(Var::E2), v(Var::E4), v(Var::E6));
    Ramanujan {
        e2p: (&e2 * &e2 - &e4) / n(12),
        e4p: (&e2 * &e4 - &e6) / n(3),
        e6p: (&e2 * &e6 - &e4 * &e4) / n(2),
    }
}

/// `E2(q^l)` in terms of `E2` and `sigma`.
fn e2_tilde(sigma: &RationalExpression) -> RationalExpression {
    let ell = v(Var::Ell);
    (v(Var::E2) + n(2) * sigma / &ell) / &ell
}

/// `sigma' = (l/24)(4 sigma^2/l^2 + 4 sigma E2/l - (l^2 E4t - E4))`.
fn sigma_prime(e4t: &RationalExpression) -> RationalExpression {
    let (ell, s) = (v(Var::Ell), v(Var::Sigma));
    &ell / n(24)
        * (n(4) * &s * &s / (&ell * &ell) + n(4) * &s / &ell * v(Var::E2)
            - (&ell * &ell * e4t - v(Var::E4)))
}

pub fn derive_e4t() -> Result<Derivation, DeriveError> {
    let mut rec = Recorder::new(Case::E4t);
    let r = ramanujan();
    let sigp = sigma_prime(&v(Var::E4t));
    let tmp = sigp * v(Var::Ds) + &r.e4p * v(Var::D4) + &r.e6p * v(Var::D6);
    let num = tmp.numerator();
    rec.check("degree in E2 is 1", num.degree_in(Var::E2) == Some(1), String::new())?;
    divisible(&mut rec, "E2 coefficient is a multiple of H_U", &num.coefficient_of(Var::E2, 1), &h_u())?;
    let e4t = solve_linear(&mut rec, &num.coefficient_of(Var::E2, 0), Var::E4t)?;
    let expect = table_quotient("e4t_num", "e4t_den", false, &plain_vars)?;
    rec.check("E4t equals the closed formula", e4t.equals(&expect), String::new())?;
    Ok(rec.finish(e4t))
}

/// Variables of the table with the diagonal partials replaced by their
/// Euler eliminations, with `slot` standing for `sigma` or `f`.
fn diagonal_vars(slot: Var, d_slot: Var, d_slot4: Var, d_slot6: Var) -> impl Fn(&str) -> Option<RationalExpression> {
    let (ell, e4, e6) = (v(Var::Ell), v(Var::E4), v(Var::E6));
    let (s, ds, ds4, ds6) = (v(slot), v(d_slot), v(d_slot4), v(d_slot6));
    let (d4, d6, d46) = (v(Var::D4), v(Var::D6), v(Var::D46));
    let dss = (&ell * &ds - n(2) * &e4 * &ds4 - n(3) * &e6 * &ds6) / &s;
    let d44 = ((&ell - n(1)) * &d4 - &s * &ds4 - n(3) * &e6 * &d46) / (n(2) * &e4);
    let d66 = ((&ell - n(2)) * &d6 - &s * &ds6 - n(2) * &e4 * &d46) / (n(3) * &e6);
    move |name: &str| match name {
        "dss" | "dff" => Some(dss.clone()),
        "d44" => Some(d44.clone()),
        "d66" => Some(d66.clone()),
        _ => plain_vars(name),
    }
}

pub fn derive_e6t() -> Result<Derivation, DeriveError> {
    let e4t = derive_e4t()?.result;
    let mut rec = Recorder::new(Case::E6t);
    let r = ramanujan();
    let (ell, e2, e4, e6) = (v(Var::Ell), v(Var::E2), v(Var::E4), v(Var::E6));
    let e6t = v(Var::E6t);
    let e2t = e2_tilde(&v(Var::Sigma));
    let sigp = sigma_prime(&e4t);
    let e4pp = q(1, 3) * (&r.e2p * &e4 + &e2 * &r.e4p - &r.e6p);
    let e6pp = q(1, 2) * (&r.e2p * &e6 + &e2 * &r.e6p - n(2) * &e4 * &r.e4p);
    let e4tp = q(1, 3) * (&e2t * &e4t - &e6t);
    let e2tp = (&e2t * &e2t - &e4t) / n(12);
    let e2pp = q(1, 12) * (n(2) * &e2 * &r.e2p - &r.e4p);
    let e2tpp = q(1, 12) * (n(2) * &e2t * &e2tp - &e4tp);
    let sigpp = &ell * (&ell * &ell * &ell * &e2tpp - &e2pp) / n(2);

    let diag = diagonal_vars(Var::Sigma, Var::Ds, Var::Ds4, Var::Ds6);
    let (dss, d44, d66) = (diag("dss").unwrap(), diag("d44").unwrap(), diag("d66").unwrap());
    let (ds, d4, d6) = (v(Var::Ds), v(Var::D4), v(Var::D6));
    let (ds4, ds6, d46) = (v(Var::Ds4), v(Var::Ds6), v(Var::D46));
    let tmp = &sigpp * &ds + &sigp * (&sigp * &dss + &r.e4p * &ds4 + &r.e6p * &ds6)
        + &e4pp * &d4 + &r.e4p * (&sigp * &ds4 + &r.e4p * &d44 + &r.e6p * &d46)
        + &e6pp * &d6 + &r.e6p * (&sigp * &ds6 + &r.e4p * &d46 + &r.e6p * &d66);
    let num = tmp.numerator();
    rec.check("degree in E2 is 2", num.degree_in(Var::E2) == Some(2), String::new())?;
    let h = h_u();
    divisible(&mut rec, "E2^2 coefficient C2 is a multiple of H_U", &num.coefficient_of(Var::E2, 2), &h)?;
    divisible(&mut rec, "E2^1 coefficient C1 is a multiple of H_U", &num.coefficient_of(Var::E2, 1), &h)?;
    let sol = solve_linear(&mut rec, &num.coefficient_of(Var::E2, 0), Var::E6t)?;
    rec.check(
        "no E2, E4t, E6t in the result",
        ![Var::E2, Var::E4t, Var::E6t].iter().any(|x| sol.involves(*x)),
        String::new(),
    )?;
    let den = table("e6t_den", &diag)?;
    rec.check(
        "denominator l^6 ds^3",
        den.equals(&(ell.pow(6) * ds.pow(3))),
        String::new(),
    )?;
    let derived_n = -(&sol * &den);
    let n_table = table("n", &diag)?;
    rec.check("N equals the table N", derived_n.equals(&n_table), String::new())?;
    let c2 = table("c2", &diag)?;
    let s = v(Var::Sigma);
    let bracket = n(3) * &e4 * &e4 * &d6 + n(2) * &e6 * &d4;
    let rest = -(&e6 * ds.pow(3) * ell.pow(3)) + n(12) * ds.pow(2) * &s * &bracket * &ell
        - n(8) * ds.pow(3) * s.pow(3);
    let derived_c2 = (&derived_n - &rest) / ell.pow(2);
    rec.check("c2 equals the displayed c2", derived_c2.equals(&c2), String::new())?;
    let printed = table("n_as_printed", &diag)?;
    rec.notes.push(format!(
        "derived N - displayed N = {}",
        &derived_n - &printed
    ));
    Ok(rec.finish(sol))
}

/// `f' = (f/12)(l Ẽ2 + E2)`.
fn f_prime(e2t: &RationalExpression) -> RationalExpression {
    v(Var::F) / n(12) * (v(Var::Ell) * e2t + v(Var::E2))
}

pub fn derive_atkin_sigma() -> Result<Derivation, DeriveError> {
    let mut rec = Recorder::new(Case::AtkinSigma);
    let r = ramanujan();
    let fp = f_prime(&e2_tilde(&v(Var::Sigma)));
    let tmp = fp * v(Var::Df) + &r.e4p * v(Var::D4) + &r.e6p * v(Var::D6);
    let num = tmp.numerator();
    rec.check("degree in E2 is 1", num.degree_in(Var::E2) == Some(1), String::new())?;
    divisible(&mut rec, "E2 coefficient is a multiple of H_f", &num.coefficient_of(Var::E2, 1), &h_f())?;
    let sig = solve_linear(&mut rec, &num.coefficient_of(Var::E2, 0), Var::Sigma)?;
    let expect = table_quotient("atkin_sigma_num", "atkin_sigma_den", false, &plain_vars)?;
    rec.check("sigma equals the closed formula", sig.equals(&expect), String::new())?;
    Ok(rec.finish(sig))
}

pub fn derive_atkin_e4t() -> Result<Derivation, DeriveError> {
    let sig = derive_atkin_sigma()?.result;
    let mut rec = Recorder::new(Case::AtkinE4t);
    let r = ramanujan();
    let (ell, e2, e4, e6) = (v(Var::Ell), v(Var::E2), v(Var::E4), v(Var::E6));
    let e2t = e2_tilde(&sig);
    let fp = f_prime(&e2t);
    let lin = &ell * &e2t + &e2;
    let fpp = v(Var::F) / n(144)
        * (&lin * &lin + &ell * &ell * (&e2t * &e2t - v(Var::E4t)) + (&e2 * &e2 - &e4));
    let e4pp = q(1, 3) * (&r.e2p * &e4 + &e2 * &r.e4p - &r.e6p);
    let e6pp = q(1, 2) * (&r.e2p * &e6 + &e2 * &r.e6p - n(2) * &e4 * &r.e4p);

    let diag = diagonal_vars(Var::F, Var::Df, Var::Df4, Var::Df6);
    let (dff, d44, d66) = (diag("dff").unwrap(), diag("d44").unwrap(), diag("d66").unwrap());
    let (df, d4, d6) = (v(Var::Df), v(Var::D4), v(Var::D6));
    let (df4, df6, d46) = (v(Var::Df4), v(Var::Df6), v(Var::D46));
    let tmp = &fpp * &df + &fp * (&fp * &dff + &r.e4p * &df4 + &r.e6p * &df6)
        + &e4pp * &d4 + &r.e4p * (&fp * &df4 + &r.e4p * &d44 + &r.e6p * &d46)
        + &e6pp * &d6 + &r.e6p * (&fp * &df6 + &r.e4p * &d46 + &r.e6p * &d66);
    let num = tmp.numerator();
    rec.check("degree in E2 is 2", num.degree_in(Var::E2) == Some(2), String::new())?;
    let h = h_f();
    divisible(&mut rec, "E2^2 coefficient is a multiple of H_f", &num.coefficient_of(Var::E2, 2), &h)?;
    divisible(&mut rec, "E2^1 coefficient is a multiple of H_f", &num.coefficient_of(Var::E2, 1), &h)?;
    let sol = solve_linear(&mut rec, &num.coefficient_of(Var::E2, 0), Var::E4t)?;
    rec.check(
        "no E2, sigma, E4t in the result",
        ![Var::E2, Var::Sigma, Var::E4t].iter().any(|x| sol.involves(*x)),
        String::new(),
    )?;
    let den = table("atkin_e4t_den", &plain_vars)?;
    let derived_m = -(&sol * &den);
    let m = table("m", &plain_vars)?;
    rec.check("M equals the displayed M", derived_m.equals(&m), String::new())?;
    Ok(rec.finish(sol))
}

pub fn derive(case: Case) -> Result<Derivation, DeriveError> {
    match case {
        Case::E4t => derive_e4t(),
        Case::E6t => derive_e6t(),
        Case::AtkinSigma => derive_atkin_sigma(),
        Case::AtkinE4t => derive_atkin_e4t(),
    }
}
