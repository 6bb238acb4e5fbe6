//! Sparse polynomials over Q in a fixed set of 17 indeterminates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use ccr_core::field::{FieldError, Fp, PrimeField};
use ccr_core::qseries::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub const NVARS: usize = 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Ell,
    E2,
    E4,
    E6,
    Sigma,
    E4t,
    E6t,
    D4,
    D6,
    Ds,
    Ds4,
    Ds6,
    D46,
    F,
    Df,
    Df4,
    Df6,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::Ell,
        Var::E2,
        Var::E4,
        Var::E6,
        Var::Sigma,
        Var::E4t,
        Var::E6t,
        Var::D4,
        Var::D6,
        Var::Ds,
        Var::Ds4,
        Var::Ds6,
        Var::D46,
        Var::F,
        Var::Df,
        Var::Df4,
        Var::Df6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::Ell => "ell",
            Var::E2 => "E2",
            Var::E4 => "E4",
            Var::E6 => "E6",
            Var::Sigma => "sigma",
            Var::E4t => "E4t",
            Var::E6t => "E6t",
            Var::D4 => "d4",
            Var::D6 => "d6",
            Var::Ds => "ds",
            Var::Ds4 => "ds4",
            Var::Ds6 => "ds6",
            Var::D46 => "d46",
            Var::F => "f",
            Var::Df => "df",
            Var::Df4 => "df4",
            Var::Df6 => "df6",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.iter().copied().find(|v| v.name() == s)
    }

    fn idx(self) -> usize {
        self as usize
    }
}

pub type Exps = [u16; NVARS];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Terms are kept in a `BTreeMap` keyed by exponent vectors in lexicographic
/// order of `Var::ALL`; no zero coefficient is stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exps, Rational>,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.idx()] = 1;
        Self::monomial(e, rat(1))
    }

    pub fn monomial(e: Exps, c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Single term (a scalar times a monomial).
    pub fn as_term(&self) -> Option<(&Exps, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Exps, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (add_exps(e, m), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_in(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|e| e[v.idx()]).max()
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v).is_some_and(|d| d > 0)
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coefficient_of(&self, v: Var, k: u16) -> Self {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            if e[v.idx()] == k {
                let mut e = *e;
                e[v.idx()] = 0;
                out.terms.insert(e, c.clone());
            }
        }
        out
    }

    /// Positive rational `c` with `self / c` having coprime integer
    /// coefficients.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::zero();
        }
        Rational::new(num, den)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Exps {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return [0; NVARS];
        };
        let mut m = *first;
        for e in it {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    }

    /// Divides every term by the monomial `m`; `m` must divide each term.
    pub fn div_monomial(&self, m: &Exps) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    for i in 0..NVARS {
                        e[i] -= m[i];
                    }
                    (e, c.clone())
                })
                .collect(),
        }
    }

    fn leading(&self) -> Option<(&Exps, &Rational)> {
        self.terms.iter().next_back()
    }

    /// `self / d` when the division is exact.
    pub fn exact_divide(&self, d: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let (ld, lc) = d.leading().ok_or(PolyError::DivisionByZero)?;
        let (ld, lc) = (*ld, lc.clone());
        let mut rem = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((le, c)) = rem.leading() {
            let mut m = *le;
            for i in 0..NVARS {
                if m[i] < ld[i] {
                    return Err(PolyError::NotDivisible);
                }
                m[i] -= ld[i];
            }
            let c = c / &lc;
            rem = &rem - &d.mul_term(&m, &c);
            q.terms.insert(m, c);
        }
        Ok(q)
    }

    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let d = self.degree_in(v).unwrap_or(0);
        let mut acc = MultiPoly::zero();
        let mut pw = MultiPoly::one();
        for k in 0..=d {
            let c = self.coefficient_of(v, k);
            if !c.is_zero() {
                acc = &acc + &(&c * &pw);
            }
            if k < d {
                pw = &pw * value;
            }
        }
        acc
    }

    pub fn eval_fp(&self, values: &dyn Fn(Var) -> Fp, f: &PrimeField) -> Result<Fp, PolyError> {
        let vals: Vec<Fp> = Var::ALL.iter().map(|v| values(*v)).collect();
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = f.from_rational(c)?;
            for (i, k) in e.iter().enumerate() {
                if *k > 0 {
                    t = f.mul(&t, &f.pow_u64(&vals[i], *k as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, values: &dyn Fn(Var) -> Rational) -> Rational {
        let vals: Vec<Rational> = Var::ALL.iter().map(|v| values(*v)).collect();
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, k) in e.iter().enumerate() {
                for _ in 0..*k {
                    t *= &vals[i];
                }
            }
            acc += t;
        }
        acc
    }
}

fn add_exps(a: &Exps, b: &Exps) -> Exps {
    let mut e = *a;
    for i in 0..NVARS {
        e[i] += b[i];
    }
    e
}

fn combine(a: &MultiPoly, b: &MultiPoly, sign: bool) -> MultiPoly {
    let mut terms = a.terms.clone();
    for (e, c) in &b.terms {
        let entry = terms.entry(*e).or_insert_with(Rational::zero);
        if sign {
            *entry += c;
        } else {
            *entry -= c;
        }
        if entry.is_zero() {
            terms.remove(e);
        }
    }
    MultiPoly { terms }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        combine(self, o, true)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        combine(self, o, false)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut acc: HashMap<Exps, Rational> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                *acc.entry(add_exps(e1, e2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        MultiPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

fn fmt_monomial(e: &Exps) -> Vec<String> {
    Var::ALL
        .iter()
        .zip(e)
        .filter(|(_, k)| **k > 0)
        .map(|(v, k)| {
            if *k == 1 {
                v.name().to_string()
            } else {
                format!("{}^{}", v.name(), k)
            }
        })
        .collect()
}

/// Terms in descending lexicographic order, e.g. `-12*ell*E4^2*d6 + 4*ell^2*E4*ds`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut parts = fmt_monomial(e);
            if !a.is_one() || parts.is_empty() {
                parts.insert(0, a.to_string());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MultiPoly {
        MultiPoly::var(x)
    }

    #[test]
    fn exact_division() {
        let (a, b) = (v(Var::E4), v(Var::E6));
        let num = &(&a * &a) - &(&b * &b);
        let q = num.exact_divide(&(&a - &b)).unwrap();
        assert_eq!(q, &a + &b);
        let bad = &(&a * &a) + &b;
        assert_eq!(bad.exact_divide(&(&a - &b)), Err(PolyError::NotDivisible));
    }

    #[test]
    fn coefficient_and_content() {
        let e2 = v(Var::E2);
        let p = &(&(&e2 * &e2) * &v(Var::D4)).scale(&rat(3)) + &(&e2 * &v(Var::Ds));
        assert_eq!(p.coefficient_of(Var::E2, 1), v(Var::Ds));
        assert_eq!(p.degree_in(Var::E2), Some(2));
        let c = &v(Var::E4).scale(&rat(6)) + &v(Var::E6).scale(&rat(9));
        assert_eq!(c.content(), rat(3));
        let half = c.scale(&Rational::new(1.into(), 4.into()));
        assert_eq!(half.content(), Rational::new(3.into(), 4.into()));
    }

    #[test]
    fn display_is_canonical() {
        let p = &(&v(Var::Ell) * &v(Var::E4)).scale(&rat(-12)) + &MultiPoly::int(5);
        assert_eq!(p.to_string(), "-12*ell*E4 + 5");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn substitution() {
        let p = &v(Var::Sigma).pow(2) + &v(Var::Ell);
        let s = p.substitute(Var::Sigma, &(&v(Var::E4) + &MultiPoly::one()));
        let expect = &(&(&v(Var::E4).pow(2) + &v(Var::E4).scale(&rat(2))) + &MultiPoly::one()) + &v(Var::Ell);
        assert_eq!(s, expect);
    }
}
