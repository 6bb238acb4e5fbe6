//! Exact truncated power series over ℚ and the classical q-expansions.
//!
//! A [`PowerSeries`] stores a dense window of coefficients in the variable
//! `x = q^(1/step)`. The window is `[lead, end)` in units of `x`: every
//! coefficient below `lead` is zero and nothing is known from `end` on.
//! All operations track that window so precision loss is visible in the
//! result instead of being silently padded with zeros.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a series with no nonzero coefficient")]
    DivisionByZero,
    #[error("precision underflow: result would hold no coefficient")]
    PrecisionUnderflow,
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("series step must be positive")]
    ZeroStep,
    #[error("step mismatch: series has step {found}, expected a multiple of {expected}")]
    StepMismatch { found: u32, expected: u32 },
}

#[derive(Clone, Debug)]
pub struct PowerSeries {
    step: u32,
    lead: i64,
    coeffs: Vec<Rational>,
}

/// Binary operation selector for [`series_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(i64),
}

/// Applies `op` to `a` and `b` (`b` is ignored for `Pow`).
pub fn series_arith(
    a: &PowerSeries,
    b: &PowerSeries,
    op: SeriesOp,
) -> Result<PowerSeries, SeriesError> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Div => a.div(b),
        SeriesOp::Pow(k) => a.pow(k),
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn lcm_of_denominators<'a>(it: impl Iterator<Item = &'a Rational>) -> BigInt {
    it.fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

impl PowerSeries {
    pub fn new(step: u32, lead: i64, coeffs: Vec<Rational>) -> Result<Self, SeriesError> {
        if step == 0 {
            return Err(SeriesError::ZeroStep);
        }
        if coeffs.is_empty() {
            return Err(SeriesError::PrecisionUnderflow);
        }
        Ok(PowerSeries { step, lead, coeffs })
    }

    pub fn from_ints(step: u32, lead: i64, coeffs: &[i64]) -> Result<Self, SeriesError> {
        Self::new(step, lead, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(step: u32, lead: i64, coeffs: Vec<BigInt>) -> Result<Self, SeriesError> {
        Self::new(step, lead, coeffs.into_iter().map(Rational::from_integer).collect())
    }

    /// The zero series known on `[lead, end)`.
    pub fn zero(step: u32, lead: i64, end: i64) -> Result<Self, SeriesError> {
        if end <= lead {
            return Err(SeriesError::PrecisionUnderflow);
        }
        Self::new(step, lead, vec![Rational::zero(); (end - lead) as usize])
    }

    /// The constant `c` as a plain q-series known below `q^end`.
    pub fn constant(c: Rational, end: i64) -> Result<Self, SeriesError> {
        let mut s = Self::zero(1, 0, end)?;
        s.coeffs[0] = c;
        Ok(s)
    }

    pub fn one(end: i64) -> Result<Self, SeriesError> {
        Self::constant(Rational::one(), end)
    }

    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Number of stored (trustworthy) coefficients.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// First exponent (in units of `x`) that is not known.
    pub fn end(&self) -> i64 {
        self.lead + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; `None` when `n` is beyond the known window.
    pub fn coeff(&self, n: i64) -> Option<Rational> {
        if n >= self.end() {
            None
        } else if n < self.lead {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(n - self.lead) as usize].clone())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.lead + i as i64)
    }

    /// Drops leading zero coefficients. A zero series is left untouched.
    pub fn strip_leading_zeros(&self) -> PowerSeries {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) | None => self.clone(),
            Some(i) => PowerSeries {
                step: self.step,
                lead: self.lead + i as i64,
                coeffs: self.coeffs[i..].to_vec(),
            },
        }
    }

    /// Forgets every coefficient at or beyond `x^end`.
    pub fn truncate(&self, end: i64) -> Result<PowerSeries, SeriesError> {
        if end >= self.end() {
            return Ok(self.clone());
        }
        if end <= self.lead {
            return Err(SeriesError::PrecisionUnderflow);
        }
        Ok(PowerSeries {
            step: self.step,
            lead: self.lead,
            coeffs: self.coeffs[..(end - self.lead) as usize].to_vec(),
        })
    }

    /// Same coefficients read in the variable `q^(1/step)`; turns `E2(q)`
    /// into `E2(x)` with `x = q^(1/step)`.
    pub fn with_step(&self, step: u32) -> Result<PowerSeries, SeriesError> {
        if step == 0 {
            return Err(SeriesError::ZeroStep);
        }
        Ok(PowerSeries {
            step,
            ..self.clone()
        })
    }

    fn spread(&self, m: u32, step: u32) -> PowerSeries {
        if m == 1 {
            return PowerSeries {
                step,
                ..self.clone()
            };
        }
        let m = m as usize;
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() * m];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m] = c.clone();
        }
        PowerSeries {
            step,
            lead: self.lead * m as i64,
            coeffs,
        }
    }

    /// Rewrites the series in the finer variable `q^(1/(step*m))`.
    pub fn refine_step(&self, m: u32) -> Result<PowerSeries, SeriesError> {
        if m == 0 {
            return Err(SeriesError::ZeroStep);
        }
        Ok(self.spread(m, self.step * m))
    }

    /// `q ↦ q^m`.
    pub fn substitute_q_power(&self, m: u32) -> Result<PowerSeries, SeriesError> {
        if m == 0 {
            return Err(SeriesError::ZeroStep);
        }
        Ok(self.spread(m, self.step))
    }

    fn aligned(a: &PowerSeries, b: &PowerSeries) -> (PowerSeries, PowerSeries) {
        if a.step == b.step {
            return (a.clone(), b.clone());
        }
        let t = (a.step as u64).lcm(&(b.step as u64)) as u32;
        (a.spread(t / a.step, t), b.spread(t / b.step, t))
    }

    fn combine(&self, other: &PowerSeries, negate: bool) -> Result<PowerSeries, SeriesError> {
        let (a, b) = Self::aligned(self, other);
        let lead = a.lead.min(b.lead);
        let end = a.end().min(b.end());
        if end <= lead {
            return Err(SeriesError::PrecisionUnderflow);
        }
        let coeffs = (lead..end)
            .map(|n| {
                let x = a.coeff(n).unwrap();
                let y = b.coeff(n).unwrap();
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        Ok(PowerSeries {
            step: a.step,
            lead,
            coeffs,
        })
    }

    pub fn add(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        self.combine(other, true)
    }

    pub fn neg(&self) -> PowerSeries {
        PowerSeries {
            step: self.step,
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PowerSeries {
        PowerSeries {
            step: self.step,
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> PowerSeries {
        self.scale(&rat(c))
    }

    /// Multiplication by `x^shift`; the known window moves with it.
    pub fn shift(&self, shift: i64) -> PowerSeries {
        PowerSeries {
            lead: self.lead + shift,
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        let (a, b) = Self::aligned(self, other);
        let a = a.strip_leading_zeros();
        let b = b.strip_leading_zeros();
        let lead = a.lead + b.lead;
        let end = (a.lead + b.end()).min(b.lead + a.end());
        if end <= lead {
            return Err(SeriesError::PrecisionUnderflow);
        }
        let n = (end - lead) as usize;
        let na = a.coeffs.len().min(n);
        let nb = b.coeffs.len().min(n);
        // Convolve integer numerators over a common denominator; far cheaper
        // than normalizing a rational after every product.
        let da = lcm_of_denominators(a.coeffs[..na].iter());
        let db = lcm_of_denominators(b.coeffs[..nb].iter());
        let ia: Vec<BigInt> = a.coeffs[..na]
            .iter()
            .map(|c| c.numer() * (&da / c.denom()))
            .collect();
        let ib: Vec<BigInt> = b.coeffs[..nb]
            .iter()
            .map(|c| c.numer() * (&db / c.denom()))
            .collect();
        let mut acc = vec![BigInt::zero(); n];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().take(n - i).enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        let coeffs = acc
            .into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect();
        Ok(PowerSeries {
            step: a.step,
            lead,
            coeffs,
        })
    }

    pub fn inverse(&self) -> Result<PowerSeries, SeriesError> {
        let b = self.strip_leading_zeros();
        if b.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let n = b.coeffs.len();
        let d = lcm_of_denominators(b.coeffs.iter());
        let ib: Vec<BigInt> = b
            .coeffs
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        let coeffs: Vec<Rational> = if ib[0].abs().is_one() {
            // Unit leading coefficient: the inverse of the integer series
            // stays integral.
            let u = ib[0].clone();
            let mut c: Vec<BigInt> = Vec::with_capacity(n);
            c.push(u.clone());
            for k in 1..n {
                let mut s = BigInt::zero();
                for j in 1..=k {
                    if !ib[j].is_zero() {
                        s += &ib[j] * &c[k - j];
                    }
                }
                c.push(-s * &u);
            }
            c.into_iter()
                .map(|x| Rational::from_integer(x * &d))
                .collect()
        } else {
            let b0inv = b.coeffs[0].recip();
            let mut c: Vec<Rational> = Vec::with_capacity(n);
            c.push(b0inv.clone());
            for k in 1..n {
                let mut s = Rational::zero();
                for j in 1..=k {
                    if !b.coeffs[j].is_zero() {
                        s += &b.coeffs[j] * &c[k - j];
                    }
                }
                c.push(-s * &b0inv);
            }
            c
        };
        Ok(PowerSeries {
            step: b.step,
            lead: -b.lead,
            coeffs,
        })
    }

    pub fn div(&self, other: &PowerSeries) -> Result<PowerSeries, SeriesError> {
        if other.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        self.mul(&other.inverse()?)
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<PowerSeries, SeriesError> {
        let (base, mut e) = if k < 0 {
            (self.inverse()?, k.unsigned_abs())
        } else {
            (self.strip_leading_zeros(), k as u64)
        };
        if e == 0 {
            // Precision of x^0 is that of the base relative to its valuation.
            let len = base.coeffs.len() as i64;
            let mut one = PowerSeries::zero(base.step, 0, len)?;
            one.coeffs[0] = Rational::one();
            return Ok(one);
        }
        let mut result: Option<PowerSeries> = None;
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => r.mul(&sq)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq)?;
        }
        Ok(result.unwrap())
    }

    /// The operator `q d/dq`: the coefficient of `x^n` becomes `(n/step)·a_n`.
    pub fn qdiff(&self) -> PowerSeries {
        let s = rat(self.step as i64);
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * rat(self.lead + i as i64) / &s)
            .collect();
        PowerSeries {
            step: self.step,
            lead: self.lead,
            coeffs,
        }
    }

    /// Sum of `F(ζ^j x)` over the `ell`-th roots of unity: keeps the terms
    /// whose exponent is a multiple of `ell`, rewrites `x^(ell m)` as
    /// `q^m` and multiplies by `ell`.
    pub fn extract_arithmetic_progression(&self, ell: u32) -> Result<PowerSeries, SeriesError> {
        if ell == 0 || self.step % ell != 0 {
            return Err(SeriesError::StepMismatch {
                found: self.step,
                expected: ell,
            });
        }
        let l = ell as i64;
        let lead = Integer::div_ceil(&self.lead, &l);
        let end = Integer::div_ceil(&self.end(), &l);
        if end <= lead {
            return Err(SeriesError::PrecisionUnderflow);
        }
        let factor = rat(l);
        let coeffs = (lead..end)
            .map(|m| &self.coeffs[(m * l - self.lead) as usize] * &factor)
            .collect();
        Ok(PowerSeries {
            step: self.step / ell,
            lead,
            coeffs,
        })
    }
}

impl PartialEq for PowerSeries {
    /// Equal when the steps, the known windows' ends and every known
    /// coefficient agree (coefficients below a lead count as zero).
    fn eq(&self, other: &Self) -> bool {
        if self.step != other.step || self.end() != other.end() {
            return false;
        }
        let lo = self.lead.min(other.lead);
        (lo..self.end()).all(|n| self.coeff(n) == other.coeff(n))
    }
}

impl Eq for PowerSeries {}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = if self.step == 1 {
            "q".to_string()
        } else {
            format!("q^(1/{})", self.step)
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.lead + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*{var}")?,
                _ => write!(f, "{c}*{var}^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({var}^{})", self.end())
    }
}

/// Named modular forms and q-series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormName {
    E2,
    E4,
    E6,
    Delta,
    J,
    /// `E2(q) - n E2(q^n)`, weight 2 on Γ0(n).
    F(u32),
    /// `(ell/2)(ell E2(q^ell) - E2(q))`.
    Sigma1(u32),
    /// `q^((ell+1)/12) Π ((1-q^n)(1-q^(ell n)))^2` for `ell ≡ 11 (mod 12)`.
    EtaSquaredProduct(u32),
}

/// `sigma_r(n)` for `1 <= n < len`, by a divisor sieve.
pub fn divisor_sums(r: u32, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for d in 1..len {
        let dr = BigInt::from(d).pow(r);
        let mut m = d;
        while m < len {
            out[m] += &dr;
            m += d;
        }
    }
    out
}

fn eisenstein(constant: i64, r: u32, end: i64) -> Result<PowerSeries, SeriesError> {
    if end < 1 {
        return Err(SeriesError::PrecisionUnderflow);
    }
    let len = end as usize;
    let sums = divisor_sums(r, len);
    let c = BigInt::from(constant);
    let mut coeffs = Vec::with_capacity(len);
    coeffs.push(BigInt::one());
    for s in sums.into_iter().skip(1) {
        coeffs.push(&c * s);
    }
    PowerSeries::from_bigints(1, 0, coeffs)
}

/// Coefficients of `Π_{n>=1} ((1-q^n)(1-q^(ell n)))^2` below `q^len`.
pub fn eta_squared_product_coeffs(ell: u32, len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    if len == 0 {
        return c;
    }
    c[0] = BigInt::one();
    let mult = |m: usize, c: &mut Vec<BigInt>| {
        for _ in 0..2 {
            for i in (m..len).rev() {
                let t = c[i - m].clone();
                c[i] -= t;
            }
        }
    };
    for n in 1..len {
        mult(n, &mut c);
        let ln = n * ell as usize;
        if ln < len {
            mult(ln, &mut c);
        }
    }
    c
}

/// Exact expansion of `name`, known for every exponent below `q^end`.
pub fn expand(name: FormName, end: i64) -> Result<PowerSeries, SeriesError> {
    if end < 1 {
        return Err(SeriesError::PrecisionUnderflow);
    }
    match name {
        FormName::E2 => eisenstein(-24, 1, end),
        FormName::E4 => eisenstein(240, 3, end),
        FormName::E6 => eisenstein(-504, 5, end),
        FormName::Delta => {
            let e4 = expand(FormName::E4, end)?;
            let e6 = expand(FormName::E6, end)?;
            Ok(e4.pow(3)?.sub(&e6.pow(2)?)?.scale(&Rational::new(
                BigInt::one(),
                BigInt::from(1728),
            )))
        }
        FormName::J => {
            // 1/Δ starts at q^-1, which costs two coefficients of input.
            let e4 = expand(FormName::E4, end + 2)?;
            let delta = expand(FormName::Delta, end + 2)?;
            e4.pow(3)?.div(&delta)?.truncate(end)
        }
        FormName::F(n) => {
            if n < 2 {
                return Err(SeriesError::InvalidForm(format!("F_n needs n >= 2, got {n}")));
            }
            let e2 = expand(FormName::E2, end)?;
            e2.sub(&e2.substitute_q_power(n)?.scale_int(n as i64))?
                .truncate(end)
        }
        FormName::Sigma1(ell) => {
            if ell < 2 {
                return Err(SeriesError::InvalidForm(format!("sigma1 needs ell >= 2, got {ell}")));
            }
            let e2 = expand(FormName::E2, end)?;
            let l = ell as i64;
            let s = e2
                .substitute_q_power(ell)?
                .scale_int(l)
                .sub(&e2)?
                .scale(&Rational::new(BigInt::from(l), BigInt::from(2)));
            s.truncate(end)
        }
        FormName::EtaSquaredProduct(ell) => {
            if ell % 12 != 11 {
                return Err(SeriesError::InvalidForm(format!(
                    "eta product (eta(q)eta(q^l))^2 needs l = 11 mod 12, got {ell}"
                )));
            }
            let lead = ((ell + 1) / 12) as i64;
            if end <= lead {
                return PowerSeries::zero(1, 0, end);
            }
            let prod = eta_squared_product_coeffs(ell, (end - lead) as usize);
            PowerSeries::from_bigints(1, lead, prod)
        }
    }
}

/// Integer value of a coefficient, when it is one.
pub fn as_integer(c: &Rational) -> Option<BigInt> {
    c.is_integer().then(|| c.to_integer())
}

/// Convenience for tests and dumps.
pub fn coeff_i64(s: &PowerSeries, n: i64) -> Option<i64> {
    s.coeff(n).and_then(|c| as_integer(&c)).and_then(|c| c.to_i64())
}

/// `q prod (1 - q^n)^24`, computed from the product rather than from E4, E6.
pub fn delta_product(end: i64) -> Result<PowerSeries, SeriesError> {
    let mut p = PowerSeries::one(end)?;
    for n in 1..end {
        let mut c = vec![0i64; end as usize];
        c[0] = 1;
        c[n as usize] = -1;
        p = p.mul(&PowerSeries::from_ints(1, 0, &c)?)?;
    }
    p.pow(24)?.shift(1).truncate(end)
}

/// The classical identities below `q^n`: Ramanujan's system, the `j` and
/// `Delta` relations, the logarithmic derivatives of `j` and `Delta`, and
/// `sigma_1 = -(l/2) F_l` for `l` in 5, 7, 11, 13. Each entry is
/// `(name, holds)`.
pub fn classical_identities(n: i64) -> Result<Vec<(String, bool)>, SeriesError> {
    let m = n + 4;
    let e2 = expand(FormName::E2, m)?;
    let e4 = expand(FormName::E4, m)?;
    let e6 = expand(FormName::E6, m)?;
    let delta = expand(FormName::Delta, m)?;
    let j = expand(FormName::J, m)?;
    let c1728 = PowerSeries::constant(rat(1728), m)?;
    let same = |a: &PowerSeries, b: &PowerSeries| -> Result<bool, SeriesError> {
        let end = n.min(a.end()).min(b.end());
        Ok(end >= n && a.truncate(end)?.sub(&b.truncate(end)?)?.is_zero())
    };
    let mut out = Vec::new();
    let mut push = |name: &str, ok: bool| out.push((name.to_string(), ok));
    push(
        "3 E4' = E2 E4 - E6",
        same(&e4.qdiff().scale_int(3), &e2.mul(&e4)?.sub(&e6)?)?,
    );
    push(
        "2 E6' = E2 E6 - E4^2",
        same(&e6.qdiff().scale_int(2), &e2.mul(&e6)?.sub(&e4.pow(2)?)?)?,
    );
    push(
        "12 E2' = E2^2 - E4",
        same(&e2.qdiff().scale_int(12), &e2.pow(2)?.sub(&e4)?)?,
    );
    push(
        "Delta = (E4^3 - E6^2)/1728 = q prod (1-q^n)^24",
        same(&delta, &delta_product(m)?)?,
    );
    push("j = E4^3 / Delta", same(&j, &e4.pow(3)?.div(&delta)?)?);
    push(
        "j - 1728 = E6^2 / Delta",
        same(&j.sub(&c1728)?, &e6.pow(2)?.div(&delta)?)?,
    );
    let jp = j.qdiff();
    push("j'/j = -E6/E4", same(&jp.div(&j)?, &e6.div(&e4)?.neg())?);
    push(
        "j'/(j - 1728) = -E4^2/E6",
        same(&jp.div(&j.sub(&c1728)?)?, &e4.pow(2)?.div(&e6)?.neg())?,
    );
    push(
        "j' = -E4^2 E6 / Delta",
        same(&jp, &e4.pow(2)?.mul(&e6)?.div(&delta)?.neg())?,
    );
    push("Delta'/Delta = E2", same(&delta.qdiff().div(&delta)?, &e2)?);
    for l in [5u32, 7, 11, 13] {
        let s = expand(FormName::Sigma1(l), m)?;
        let f = expand(FormName::F(l), m)?;
        let rhs = f.scale(&Rational::new(BigInt::from(-(l as i64)), BigInt::from(2)));
        push(&format!("sigma1 = -(l/2) F_l for l = {l}"), same(&s, &rhs)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> PowerSeries {
        PowerSeries::from_ints(1, 0, coeffs).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = q(&[1, 1, 0]);
        let b = q(&[1, -1, 0]);
        assert_eq!(a.mul(&b).unwrap(), q(&[1, 0, -1]));
    }

    #[test]
    fn geometric_series() {
        let a = q(&[1, -1, 0, 0]);
        assert_eq!(a.inverse().unwrap(), q(&[1, 1, 1, 1]));
        let one = q(&[1, 0, 0, 0]);
        assert_eq!(one.div(&a).unwrap(), q(&[1, 1, 1, 1]));
    }

    #[test]
    fn non_unit_inverse() {
        let a = q(&[2, 1, 0, 0]);
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv).unwrap();
        assert_eq!(prod, q(&[1, 0, 0, 0]));
    }

    #[test]
    fn jdelta_first_terms() {
        let e4 = expand(FormName::E4, 3).unwrap();
        let e6 = expand(FormName::E6, 3).unwrap();
        let d = e4.pow(3).unwrap().sub(&e6.pow(2).unwrap()).unwrap();
        assert_eq!(coeff_i64(&d, 0), Some(0));
        assert_eq!(coeff_i64(&d, 1), Some(1728));
        assert_eq!(coeff_i64(&d, 2), Some(-41472));
    }

    #[test]
    fn division_by_zero_series() {
        let z = PowerSeries::zero(1, 0, 4).unwrap();
        assert_eq!(q(&[1, 2]).div(&z), Err(SeriesError::DivisionByZero));
    }

    #[test]
    fn underflow_is_reported() {
        let a = q(&[1]);
        assert_eq!(a.truncate(0), Err(SeriesError::PrecisionUnderflow));
        assert!(PowerSeries::new(1, 0, vec![]).is_err());
    }

    #[test]
    fn qdiff_monomials() {
        let s = PowerSeries::from_ints(1, 2, &[1, 0]).unwrap();
        assert_eq!(s.qdiff(), PowerSeries::from_ints(1, 2, &[2, 0]).unwrap());
        let c = q(&[1, 0, 0]);
        assert!(c.qdiff().is_zero());
        // x = q^(1/3): q d/dq x^3 = x^3
        let x3 = PowerSeries::from_ints(3, 3, &[1]).unwrap();
        assert_eq!(x3.qdiff(), x3);
    }

    #[test]
    fn substitution_and_extraction() {
        let s = q(&[1, 1]).substitute_q_power(3).unwrap();
        assert_eq!(coeff_i64(&s, 3), Some(1));
        assert_eq!(s.end(), 6);
        let j = PowerSeries::from_ints(1, -1, &[1, 744]).unwrap();
        let j2 = j.substitute_q_power(2).unwrap();
        assert_eq!(j2.lead(), -2);
        assert_eq!(coeff_i64(&j2, 0), Some(744));
        assert_eq!(coeff_i64(&j2, -1), Some(0));

        let mut c = vec![0i64; 11];
        c[1] = 1;
        c[5] = 1;
        c[10] = 2;
        let f = PowerSeries::from_ints(5, 0, &c).unwrap();
        let e = f.extract_arithmetic_progression(5).unwrap();
        assert_eq!(e.step(), 1);
        assert_eq!(coeff_i64(&e, 0), Some(0));
        assert_eq!(coeff_i64(&e, 1), Some(5));
        assert_eq!(coeff_i64(&e, 2), Some(10));
        let one = PowerSeries::from_ints(7, 0, &[1]).unwrap();
        assert_eq!(coeff_i64(&one.extract_arithmetic_progression(7).unwrap(), 0), Some(7));
        assert!(q(&[1]).extract_arithmetic_progression(5).is_err());
    }

    #[test]
    fn expansions() {
        let e4 = expand(FormName::E4, 3).unwrap();
        assert_eq!(e4, q(&[1, 240, 2160]));
        let d = expand(FormName::Delta, 3).unwrap();
        assert_eq!(coeff_i64(&d, 1), Some(1));
        assert_eq!(coeff_i64(&d, 2), Some(-24));
        let s = expand(FormName::Sigma1(5), 2).unwrap();
        assert_eq!(coeff_i64(&s, 0), Some(10));
        let e2 = expand(FormName::E2, 4).unwrap().substitute_q_power(2).unwrap();
        assert_eq!(coeff_i64(&e2, 2), Some(-24));
        assert_eq!(coeff_i64(&e2, 4), Some(-72));
        let j = expand(FormName::J, 3).unwrap();
        assert_eq!(j.lead(), -1);
        assert_eq!(coeff_i64(&j, -1), Some(1));
        assert_eq!(coeff_i64(&j, 0), Some(744));
        assert_eq!(coeff_i64(&j, 1), Some(196884));
        assert_eq!(coeff_i64(&j, 2), Some(21493760));
        let f = expand(FormName::EtaSquaredProduct(11), 4).unwrap();
        assert_eq!(f.lead(), 1);
        assert_eq!(coeff_i64(&f, 1), Some(1));
        assert_eq!(coeff_i64(&f, 2), Some(-2));
        assert!(expand(FormName::EtaSquaredProduct(13), 4).is_err());
        assert!(expand(FormName::F(1), 4).is_err());
    }

    #[test]
    fn mixed_steps_align() {
        let a = PowerSeries::from_ints(2, 0, &[1, 1, 0, 0]).unwrap(); // 1 + q^(1/2)
        let b = q(&[0, 1]); // q
        let s = a.add(&b).unwrap();
        assert_eq!(s.step(), 2);
        assert_eq!(s.end(), 4);
        assert_eq!(s.coeff(2), Some(rat(1)));
    }
}
