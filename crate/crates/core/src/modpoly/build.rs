//! Builder: conjugate root series, their power sums, Newton's identities
//! and the match of each elementary symmetric function against
//! `E4^a E6^b`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Basis, PolyKind, WeightedPoly};
use crate::field::is_probable_prime;
use crate::qseries::{expand, FormName, PowerSeries, Rational, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("invalid ell {ell} for kind {kind}: {reason}")]
    InvalidEll {
        kind: String,
        ell: u32,
        reason: String,
    },
    #[error("need {needed} coefficients to match weight {weight}, have {have}")]
    InsufficientPrecision {
        weight: u32,
        needed: usize,
        have: usize,
    },
    #[error("series is not a combination of E4^a E6^b of weight {weight}")]
    Inconsistent { weight: u32 },
    #[error("{kind}_{ell} has a non-integral coefficient")]
    NotIntegral { kind: String, ell: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn check_ell(kind: PolyKind, ell: u32) -> Result<(), BuildError> {
    let bad = |reason: &str| BuildError::InvalidEll {
        kind: kind.to_string(),
        ell,
        reason: reason.to_string(),
    };
    if ell <= 3 || !is_probable_prime(&ell.into()) {
        return Err(bad("must be a prime greater than 3"));
    }
    if kind == PolyKind::Ua && ell % 12 != 11 {
        return Err(bad("must be 11 mod 12"));
    }
    Ok(())
}

/// q-precision used by [`build`]: `l + 12`.
pub fn default_precision(ell: u32) -> i64 {
    ell as i64 + 12
}

/// The root at infinity (a q-series) and the series `R` in `x = q^(1/l)`
/// whose substitutions `x -> zeta^j x` give the other `l` roots. `r_inf` is
/// known below `q^nq`, `R` below `x^(l nq)`.
pub fn conjugate_series(
    kind: PolyKind,
    ell: u32,
    nq: i64,
) -> Result<(PowerSeries, PowerSeries), BuildError> {
    check_ell(kind, ell)?;
    let l = ell as i64;
    let nx = l * nq;
    let sub_end = nq / l + 1;
    // F(q^l) known below q^nq, and F(x) / F(x^l) in the step-l variable.
    let at_ql = |name| -> Result<PowerSeries, SeriesError> {
        expand(name, sub_end)?.substitute_q_power(ell)?.truncate(nq)
    };
    let in_x = |name| -> Result<PowerSeries, SeriesError> { expand(name, nx)?.with_step(ell) };
    let out = match kind {
        PolyKind::U => {
            let half_l = Rational::new(BigInt::from(l), BigInt::from(2));
            let r_inf = at_ql(FormName::E2)?
                .scale_int(l)
                .sub(&expand(FormName::E2, nq)?)?
                .scale(&half_l);
            let e2_xl = expand(FormName::E2, nq)?
                .substitute_q_power(ell)?
                .with_step(ell)?;
            let r = in_x(FormName::E2)?
                .sub(&e2_xl.scale_int(l))?
                .scale(&Rational::new(BigInt::one(), BigInt::from(2)));
            (r_inf, r)
        }
        PolyKind::V => (
            at_ql(FormName::E4)?.scale_int(-3 * l.pow(4)),
            in_x(FormName::E4)?.scale_int(-3),
        ),
        PolyKind::W => (
            at_ql(FormName::E6)?.scale_int(-2 * l.pow(6)),
            in_x(FormName::E6)?.scale_int(-2),
        ),
        PolyKind::Ua => {
            let f = expand(FormName::EtaSquaredProduct(ell), nq)?;
            let g = expand(FormName::EtaSquaredProduct(ell), nx)?.with_step(ell)?;
            (f.scale_int(-l), g)
        }
    };
    Ok(out)
}

/// `s_k = r_inf^k + trace(R^k)` for `k = 1..=k_max`, known below `q^nq`.
pub fn power_sums(
    kind: PolyKind,
    ell: u32,
    k_max: u32,
    nq: i64,
) -> Result<Vec<PowerSeries>, BuildError> {
    let (r_inf, r) = conjugate_series(kind, ell, nq)?;
    let mut out = Vec::with_capacity(k_max as usize);
    let mut rk = r.clone();
    let mut ik = r_inf.clone();
    for k in 1..=k_max {
        if k > 1 {
            rk = rk.mul(&r)?;
            ik = ik.mul(&r_inf)?;
        }
        let s = ik.add(&rk.extract_arithmetic_progression(ell)?)?;
        out.push(s.truncate(nq)?);
    }
    Ok(out)
}

/// Elementary symmetric functions `e_0..=e_n` from power sums `s_1..=s_n`
/// via `k e_k = sum_{i=1}^k (-1)^(i-1) e_(k-i) s_i`.
pub fn newton_elementary(s: &[PowerSeries], nq: i64) -> Result<Vec<PowerSeries>, BuildError> {
    let mut e = vec![PowerSeries::one(nq)?];
    for k in 1..=s.len() {
        let mut acc = PowerSeries::zero(1, 0, nq)?;
        for i in 1..=k {
            let t = e[k - i].mul(&s[i - 1])?;
            acc = if i % 2 == 1 { acc.add(&t)? } else { acc.sub(&t)? };
        }
        e.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))).truncate(nq)?);
    }
    Ok(e)
}

/// Exponent pairs `(a, b)` with `2a + 3b = w`, by increasing `b`.
pub fn monomials_of_weight(w: u32) -> Vec<(u32, u32)> {
    (0..=w / 3)
        .filter(|b| (w - 3 * b) % 2 == 0)
        .map(|b| ((w - 3 * b) / 2, b))
        .collect()
}

/// Cached powers of `E4` and `E6` known below `q^end`.
pub struct FormBasisCache {
    end: i64,
    e4: Vec<PowerSeries>,
    e6: Vec<PowerSeries>,
}

impl FormBasisCache {
    pub fn new(end: i64) -> Result<Self, SeriesError> {
        Ok(FormBasisCache {
            end,
            e4: vec![PowerSeries::one(end)?, expand(FormName::E4, end)?],
            e6: vec![PowerSeries::one(end)?, expand(FormName::E6, end)?],
        })
    }

    pub fn end(&self) -> i64 {
        self.end
    }

    fn power(v: &mut Vec<PowerSeries>, k: usize) -> Result<PowerSeries, SeriesError> {
        while v.len() <= k {
            let next = v[v.len() - 1].mul(&v[1])?;
            v.push(next);
        }
        Ok(v[k].clone())
    }

    /// `E4^a E6^b`.
    pub fn monomial(&mut self, a: u32, b: u32) -> Result<PowerSeries, SeriesError> {
        let x = Self::power(&mut self.e4, a as usize)?;
        let y = Self::power(&mut self.e6, b as usize)?;
        x.mul(&y)
    }
}

/// Writes `s` as `sum c_(a,b) E4^a E6^b` over `2a + 3b = weight`. The
/// system is solved exactly and must be consistent on every known
/// coefficient, at least three more than there are unknowns.
pub fn match_to_form_basis(
    s: &PowerSeries,
    weight: u32,
    cache: &mut FormBasisCache,
) -> Result<BTreeMap<(u32, u32), Rational>, BuildError> {
    let monos = monomials_of_weight(weight);
    let end = s.end().min(cache.end());
    let have = end.max(0) as usize;
    let needed = monos.len() + 3;
    if s.step() != 1 || have < needed {
        return Err(BuildError::InsufficientPrecision {
            weight,
            needed,
            have,
        });
    }
    if s.valuation().is_some_and(|v| v < 0) {
        return Err(BuildError::Inconsistent { weight });
    }
    let cols: Vec<PowerSeries> = monos
        .iter()
        .map(|&(a, b)| cache.monomial(a, b))
        .collect::<Result<_, _>>()?;
    let n = monos.len();
    let mut rows: Vec<Vec<Rational>> = (0..end)
        .map(|q| {
            let mut row: Vec<Rational> = cols.iter().map(|c| c.coeff(q).unwrap()).collect();
            row.push(s.coeff(q).unwrap());
            row
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return Err(BuildError::Inconsistent { weight });
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot).skip(col) {
                *v -= &factor * pv;
            }
        }
        pivot_row += 1;
    }
    if rows[n..].iter().any(|r| !r[n].is_zero()) {
        return Err(BuildError::Inconsistent { weight });
    }
    Ok(monos
        .into_iter()
        .zip(rows)
        .filter(|(_, r)| !r[n].is_zero())
        .map(|(m, r)| (m, r[n].clone()))
        .collect())
}

/// Builds the polynomial at q-precision `nq`, in the `E4E6` basis.
pub fn build_with_precision(
    kind: PolyKind,
    ell: u32,
    nq: i64,
) -> Result<WeightedPoly, BuildError> {
    let d = ell + 1;
    let s = power_sums(kind, ell, d, nq)?;
    let e = newton_elementary(&s, nq)?;
    let mut cache = FormBasisCache::new(nq)?;
    let wx = kind.x_weight();
    let mut terms = BTreeMap::new();
    terms.insert((d, 0, 0), Rational::one());
    for (k, ek) in e.iter().enumerate().skip(1) {
        let k = k as u32;
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        for ((a, b), c) in match_to_form_basis(ek, wx * k, &mut cache)? {
            terms.insert((d - k, a, b), c * &sign);
        }
    }
    let p = WeightedPoly::new(kind, ell, Basis::E4E6, terms);
    if kind != PolyKind::Ua && !p.to_basis(Basis::AB).is_integral() {
        return Err(BuildError::NotIntegral {
            kind: kind.to_string(),
            ell,
        });
    }
    Ok(p)
}

/// Builds `kind` for `ell` in the `E4E6` basis, doubling the precision
/// once if the basis match cannot be verified.
pub fn build(kind: PolyKind, ell: u32) -> Result<WeightedPoly, BuildError> {
    let nq = default_precision(ell);
    match build_with_precision(kind, ell, nq) {
        Err(BuildError::Inconsistent { .. } | BuildError::InsufficientPrecision { .. }) => {
            build_with_precision(kind, ell, 2 * nq)
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::coeff_i64;

    #[test]
    fn conjugate_constant_terms() {
        let (r, _) = conjugate_series(PolyKind::U, 5, 10).unwrap();
        assert_eq!(coeff_i64(&r, 0), Some(10));
        let (r, _) = conjugate_series(PolyKind::V, 5, 10).unwrap();
        assert_eq!(coeff_i64(&r, 0), Some(-1875));
        let (r, g) = conjugate_series(PolyKind::Ua, 11, 10).unwrap();
        assert_eq!(r.valuation(), Some(1));
        assert_eq!(coeff_i64(&r, 1), Some(-11));
        assert_eq!(g.step(), 11);
        assert!(conjugate_series(PolyKind::Ua, 13, 10).is_err());
        assert!(conjugate_series(PolyKind::U, 9, 10).is_err());
    }

    #[test]
    fn first_power_sums() {
        let s = power_sums(PolyKind::U, 5, 2, 20).unwrap();
        assert!(s[0].is_zero());
        let e4 = expand(FormName::E4, 20).unwrap();
        assert_eq!(s[1], e4.scale_int(120));
        let s = power_sums(PolyKind::Ua, 11, 5, 15).unwrap();
        assert!(s.iter().all(PowerSeries::is_zero));
    }

    #[test]
    fn basis_matching() {
        let mut cache = FormBasisCache::new(12).unwrap();
        let delta = expand(FormName::Delta, 12).unwrap().scale_int(1728);
        let m = match_to_form_basis(&delta, 6, &mut cache).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&(3, 0)], rat(1));
        assert_eq!(m[&(0, 2)], rat(-1));
        let zero = PowerSeries::zero(1, 0, 12).unwrap();
        assert!(match_to_form_basis(&zero, 8, &mut cache).unwrap().is_empty());
        let e4sq = expand(FormName::E4, 12).unwrap().pow(2).unwrap();
        let m = match_to_form_basis(&e4sq, 4, &mut cache).unwrap();
        assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![((2, 0), rat(1))]);
        // E2 is not modular
        let e2 = expand(FormName::E2, 12).unwrap();
        assert!(matches!(
            match_to_form_basis(&e2, 1, &mut cache),
            Err(BuildError::Inconsistent { .. })
        ));
        let short = expand(FormName::E4, 3).unwrap();
        assert!(matches!(
            match_to_form_basis(&short, 2, &mut cache),
            Err(BuildError::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn newton_round_trip() {
        // roots 1, 2, 3 as constant series
        let nq = 4;
        let c = |v: i64| PowerSeries::constant(rat(v), nq).unwrap();
        let s: Vec<PowerSeries> = (1..=3u32)
            .map(|k| c(1 + 2i64.pow(k) + 3i64.pow(k)))
            .collect();
        let e = newton_elementary(&s, nq).unwrap();
        assert_eq!(e[1], c(6));
        assert_eq!(e[2], c(11));
        assert_eq!(e[3], c(6));
    }

    #[test]
    fn u5_matches_display() {
        let p = build(PolyKind::U, 5).unwrap().to_basis(Basis::AB);
        assert_eq!(
            p.to_string(),
            "X^6 + 20*X^4*A + 160*X^3*B - 80*X^2*A^2 - 128*X*A*B - 80*B^2"
        );
    }
}
