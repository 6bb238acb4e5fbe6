//! Classical modular polynomial `Phi_l(X, j)`, used as an independent
//! oracle. The power sums of `j(q^l)` and the `j((tau+k)/l)` are Laurent
//! series in `q` with a pole of order `l k`; they are turned into
//! polynomials in `j` by peeling off leading terms with powers of `j`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::build::BuildError;
use crate::field::{Fp, PrimeField};
use crate::qseries::{expand, FormName, PowerSeries, Rational};

/// `Phi_l(X, j) = sum c_(i,k) X^i j^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalModularPoly {
    pub ell: u32,
    terms: BTreeMap<(u32, u32), BigInt>,
}

const SURPLUS: i64 = 3;

impl ClassicalModularPoly {
    pub fn from_terms(ell: u32, mut terms: BTreeMap<(u32, u32), BigInt>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        ClassicalModularPoly { ell, terms }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, k: u32) -> BigInt {
        self.terms.get(&(i, k)).cloned().unwrap_or_default()
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(&(i, k), c)| self.terms.get(&(k, i)) == Some(c))
    }

    /// `Phi_l(x, y)` in `F_p`.
    pub fn eval_fp(&self, x: &Fp, y: &Fp, f: &PrimeField) -> Fp {
        let d = self.ell as usize + 1;
        let mut xp = vec![f.one()];
        let mut yp = vec![f.one()];
        for k in 1..=d {
            xp.push(f.mul(&xp[k - 1], x));
            yp.push(f.mul(&yp[k - 1], y));
        }
        self.terms.iter().fold(f.zero(), |acc, (&(i, k), c)| {
            let t = f.mul(&f.from_bigint(c), &f.mul(&xp[i as usize], &yp[k as usize]));
            f.add(&acc, &t)
        })
    }

    /// `Phi_l(x(q), y(q))` for q-series arguments.
    pub fn eval_series(&self, x: &PowerSeries, y: &PowerSeries) -> Result<PowerSeries, BuildError> {
        let d = self.ell + 1;
        let mut acc: Option<PowerSeries> = None;
        for i in (0..=d).rev() {
            let mut c: Option<PowerSeries> = None;
            for k in (0..=d).rev() {
                let v = self.coeff(i, k);
                c = match c {
                    None if v.is_zero() => None,
                    None => Some(PowerSeries::constant(Rational::from_integer(v), y.end())?),
                    Some(s) => Some(s.mul(y)?.add(&PowerSeries::constant(
                        Rational::from_integer(v),
                        y.end(),
                    )?)?),
                };
            }
            acc = match (acc, c) {
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
        Ok(acc.expect("Phi has a leading term"))
    }
}

/// Polynomial in `j` with rational coefficients, lowest degree first.
type JPoly = Vec<Rational>;

fn jpoly_mul(a: &JPoly, b: &JPoly) -> JPoly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn jpoly_axpy(acc: &mut JPoly, c: &Rational, b: &JPoly) {
    if acc.len() < b.len() {
        acc.resize(b.len(), Rational::zero());
    }
    for (a, y) in acc.iter_mut().zip(b) {
        *a += c * y;
    }
}

/// Builds `Phi_l` for a prime `l <= 13`.
pub fn build_classical_phi(ell: u32) -> Result<ClassicalModularPoly, BuildError> {
    if ![2, 3, 5, 7, 11, 13].contains(&ell) {
        return Err(BuildError::InvalidEll {
            kind: "Phi".into(),
            ell,
            reason: "supported for 2, 3, 5, 7, 11, 13".into(),
        });
    }
    let l = ell as i64;
    let d = ell + 1;
    let max_pole = l * d as i64;
    // Everything is needed on [q^-max_pole, q^SURPLUS].
    let end_q = SURPLUS + 1;
    let j_q = expand(FormName::J, max_pole + end_q + 2)?;
    let mut jpow: Vec<PowerSeries> = vec![PowerSeries::one(end_q)?, j_q.truncate(end_q)?];
    {
        let mut cur = j_q.clone();
        for n in 2..=max_pole {
            cur = cur.mul(&j_q)?;
            // j^n is needed below q^end_q only; keep what the next product needs.
            cur = cur.truncate(end_q + max_pole - n + 1)?;
            jpow.push(cur.truncate(end_q)?);
        }
    }

    let j_ql = expand(FormName::J, end_q + d as i64 + 2)?.substitute_q_power(ell)?;
    let j_x = expand(FormName::J, l * end_q + d as i64 + 2)?.with_step(ell)?;

    let mut sums: Vec<JPoly> = Vec::with_capacity(d as usize);
    let mut a = j_ql.clone();
    let mut b = j_x.clone();
    for k in 1..=d {
        if k > 1 {
            a = a.mul(&j_ql)?;
            b = b.mul(&j_x)?;
        }
        let s = a.add(&b.extract_arithmetic_progression(ell)?)?;
        let mut rest = s.truncate(end_q)?;
        let mut poly: JPoly = vec![Rational::zero(); (l * k as i64) as usize + 1];
        let top = -rest.lead();
        for n in (1..=top).rev() {
            let c = rest.coeff(-n).unwrap();
            if c.is_zero() {
                continue;
            }
            rest = rest.sub(&jpow[n as usize].scale(&c))?;
            poly[n as usize] = c;
        }
        poly[0] = rest.coeff(0).unwrap();
        if (1..end_q).any(|m| !rest.coeff(m).unwrap().is_zero()) {
            return Err(BuildError::Inconsistent { weight: 0 });
        }
        sums.push(poly);
    }

    // Newton's identities over Q[j].
    let mut e: Vec<JPoly> = vec![vec![Rational::one()]];
    for k in 1..=d as usize {
        let mut acc: JPoly = vec![Rational::zero()];
        for i in 1..=k {
            let t = jpoly_mul(&e[k - i], &sums[i - 1]);
            let sign = if i % 2 == 1 { Rational::one() } else { -Rational::one() };
            jpoly_axpy(&mut acc, &sign, &t);
        }
        let inv = Rational::new(BigInt::one(), BigInt::from(k));
        e.push(acc.into_iter().map(|c| c * &inv).collect());
    }
    let mut terms = BTreeMap::new();
    for (k, ek) in e.iter().enumerate() {
        for (n, c) in ek.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return Err(BuildError::NotIntegral {
                    kind: "Phi".into(),
                    ell,
                });
            }
            let c = if k % 2 == 0 { c.to_integer() } else { -c.to_integer() };
            terms.insert((d - k as u32, n as u32), c);
        }
    }
    Ok(ClassicalModularPoly::from_terms(ell, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi2() {
        let p = build_classical_phi(2).unwrap();
        assert_eq!(p.coeff(0, 0), "-157464000000000".parse::<BigInt>().unwrap());
        assert_eq!(p.coeff(3, 0), BigInt::one());
        assert_eq!(p.coeff(2, 2), BigInt::from(-1));
        assert_eq!(p.coeff(2, 1), BigInt::from(1488));
        assert_eq!(p.coeff(2, 0), BigInt::from(-162000));
        assert_eq!(p.coeff(1, 1), BigInt::from(40773375));
        assert!(p.is_symmetric());
    }

    #[test]
    fn series_oracle() {
        for ell in [2u32, 3, 5] {
            let p = build_classical_phi(ell).unwrap();
            let n = 30;
            let d = ell as i64 + 1;
            let ex = n + d * ell as i64 + d + 2;
            let j = expand(FormName::J, ex).unwrap();
            let jl = expand(FormName::J, ex / ell as i64 + 2)
                .unwrap()
                .substitute_q_power(ell)
                .unwrap();
            let v = p.eval_series(&j, &jl.truncate(ex).unwrap()).unwrap();
            assert!(v.end() >= n, "ell = {ell}");
            assert!(v.is_zero(), "ell = {ell}");
        }
    }
}
