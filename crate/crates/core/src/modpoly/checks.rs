//! Exact checks on built polynomials: Euler identities, series
//! evaluation, root identities and the Atkin-Lehner relation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::build::{conjugate_series, BuildError};
use super::{Basis, PolyKind, WeightedPoly};
use crate::qseries::{expand, FormName, PowerSeries, Rational, SeriesError};

/// Raw trivariate terms `(i, a, b) -> c` for `X^i Y^a Z^b`.
pub type TriTerms = BTreeMap<(u32, u32, u32), Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    Z,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn partial(t: &TriTerms, v: Var) -> TriTerms {
    let mut out = TriTerms::new();
    for (&(i, a, b), c) in t {
        let (e, key) = match v {
            Var::X if i > 0 => (i, (i - 1, a, b)),
            Var::Y if a > 0 => (a, (i, a - 1, b)),
            Var::Z if b > 0 => (b, (i, a, b - 1)),
            _ => continue,
        };
        out.insert(key, c * rat(e as i64));
    }
    out
}

fn euler_operator(t: &TriTerms, wx: u32) -> TriTerms {
    let mut out = TriTerms::new();
    for (&(i, a, b), c) in t {
        let w = (wx * i + 2 * a + 3 * b) as i64;
        if w != 0 {
            out.insert((i, a, b), c * rat(w));
        }
    }
    out
}

fn scaled(t: &TriTerms, k: i64) -> TriTerms {
    t.iter()
        .filter(|_| k != 0)
        .map(|(key, c)| (*key, c * rat(k)))
        .collect()
}

/// Euler's relation `w P = w_X X P_X + 2 Y P_Y + 3 Z P_Z` for `P` and each
/// of its three first partials, where `w` is the weight of the term being
/// tested. Each entry is `(name, holds)`; the relation for `P` itself is
/// computed term by term, not assumed.
pub fn euler_identities(p: &WeightedPoly) -> Vec<(String, bool)> {
    let wx = p.kind.x_weight();
    let top = (wx * (p.ell + 1)) as i64;
    let t = p.terms().clone();
    let mut out = Vec::new();
    let mut check = |name: &str, poly: &TriTerms, w: i64| {
        // Euler operator applied through the partials, compared with w * poly.
        let lhs: TriTerms = {
            let mut acc = TriTerms::new();
            for (v, weight) in [(Var::X, wx), (Var::Y, 2), (Var::Z, 3)] {
                let d = partial(poly, v);
                for (&(i, a, b), c) in &d {
                    let key = match v {
                        Var::X => (i + 1, a, b),
                        Var::Y => (i, a + 1, b),
                        Var::Z => (i, a, b + 1),
                    };
                    *acc.entry(key).or_insert_with(Rational::zero) += c * rat(weight as i64);
                }
            }
            acc.retain(|_, c| !c.is_zero());
            acc
        };
        let ok = lhs == scaled(poly, w) && euler_operator(poly, wx) == lhs;
        out.push((name.to_string(), ok));
    };
    check("P", &t, top);
    check("P_X", &partial(&t, Var::X), top - wx as i64);
    check("P_Y", &partial(&t, Var::Y), top - 2);
    check("P_Z", &partial(&t, Var::Z), top - 3);
    out
}

/// `P(x, y, z)` for series arguments; `y`, `z` stand for the basis
/// generators of `p`.
pub fn evaluate_series(
    p: &WeightedPoly,
    x: &PowerSeries,
    y: &PowerSeries,
    z: &PowerSeries,
) -> Result<PowerSeries, SeriesError> {
    let end = x.end().min(y.end()).min(z.end());
    let d = p.degree_x().unwrap_or(0);
    let max_a = p.terms().keys().map(|k| k.1).max().unwrap_or(0);
    let max_b = p.terms().keys().map(|k| k.2).max().unwrap_or(0);
    let powers = |s: &PowerSeries, n: u32| -> Result<Vec<PowerSeries>, SeriesError> {
        let mut v = vec![PowerSeries::one(end)?.with_step(s.step())?];
        for k in 1..=n as usize {
            let next = v[k - 1].mul(s)?;
            v.push(next);
        }
        Ok(v)
    };
    let yp = powers(y, max_a)?;
    let zp = powers(z, max_b)?;
    let mut acc: Option<PowerSeries> = None;
    for i in (0..=d).rev() {
        let mut coeff: Option<PowerSeries> = None;
        for (&(_, a, b), c) in p.terms().range((i, 0, 0)..=(i, u32::MAX, u32::MAX)) {
            let t = yp[a as usize].mul(&zp[b as usize])?.scale(c);
            coeff = Some(match coeff {
                None => t,
                Some(s) => s.add(&t)?,
            });
        }
        acc = match (acc, coeff) {
            (None, c) => c,
            (Some(s), c) => {
                let s = s.mul(x)?;
                Some(match c {
                    None => s,
                    Some(c) => s.add(&c)?,
                })
            }
        };
    }
    match acc {
        Some(s) => s.truncate(end),
        None => PowerSeries::zero(1, 0, end),
    }
}

fn generators(basis: Basis, end: i64, m: u32) -> Result<(PowerSeries, PowerSeries), SeriesError> {
    let sub = |name| -> Result<PowerSeries, SeriesError> {
        expand(name, end / m as i64 + 1)?
            .substitute_q_power(m)?
            .truncate(end)
    };
    let (e4, e6) = (sub(FormName::E4)?, sub(FormName::E6)?);
    Ok(match basis {
        Basis::E4E6 => (e4, e6),
        Basis::AB => (e4.scale_int(-3), e6.scale_int(-2)),
    })
}

/// `P(r_inf(q), E4(q), E6(q)) = 0` below `q^n`, where `r_inf` is the root
/// at infinity used by the builder.
pub fn root_identity(p: &WeightedPoly, n: i64) -> Result<bool, BuildError> {
    let (r_inf, _) = conjugate_series(p.kind, p.ell, n)?;
    let (y, z) = generators(p.basis, n, 1)?;
    Ok(evaluate_series(p, &r_inf, &y, &z)?.is_zero())
}

/// `U^a(-l r, A*, B*) = 0` below `q^n` with `r = -l f(q)` the builder's root,
/// `A* = -3 l^4 E4(q^l)` and `B* = -2 l^6 E6(q^l)`, in the `AB` basis.
pub fn atkin_lehner_check(ua: &WeightedPoly, n: i64) -> bool {
    let run = || -> Result<bool, BuildError> {
        if ua.kind != PolyKind::Ua {
            return Ok(false);
        }
        let l = ua.ell as i64;
        let ab = ua.to_basis(Basis::AB);
        let (r_inf, _) = conjugate_series(PolyKind::Ua, ua.ell, n)?;
        let (a, b) = generators(Basis::AB, n, ua.ell)?;
        let a_star = a.scale_int(l.pow(4));
        let b_star = b.scale_int(l.pow(6));
        let x = r_inf.scale_int(-l);
        Ok(evaluate_series(&ab, &x, &a_star, &b_star)?.is_zero())
    };
    run().unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modpoly::build;

    #[test]
    fn partials_of_monomial() {
        let t: TriTerms = [((2, 3, 1), rat(5))].into_iter().collect();
        assert_eq!(partial(&t, Var::X)[&(1, 3, 1)], rat(10));
        assert_eq!(partial(&t, Var::Y)[&(2, 2, 1)], rat(15));
        assert_eq!(partial(&t, Var::Z)[&(2, 3, 0)], rat(5));
        let c: TriTerms = [((0, 0, 0), rat(5))].into_iter().collect();
        assert!(partial(&c, Var::X).is_empty());
    }

    #[test]
    fn u5_checks() {
        let u = build(PolyKind::U, 5).unwrap();
        assert!(euler_identities(&u).iter().all(|(_, ok)| *ok));
        assert!(root_identity(&u, 15).unwrap());
        assert!(root_identity(&u.to_basis(Basis::AB), 15).unwrap());
        let bad = u.perturbed((0, 3, 0), &rat(1));
        assert!(!root_identity(&bad, 15).unwrap());
    }

    #[test]
    fn euler_detects_inhomogeneous_term() {
        let u = build(PolyKind::U, 5).unwrap().perturbed((0, 1, 0), &rat(1));
        assert!(!euler_identities(&u)[0].1);
    }
}
