//! Quotients of [`MultiPoly`]s.

use std::fmt;

use ccr_core::field::{Fp, PrimeField};
use ccr_core::formula::FormulaRing;
use ccr_core::qseries::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::multipoly::{Exps, MultiPoly, PolyError, Var, NVARS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalExpression {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalExpression {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(RationalExpression { num, den }.normalized())
    }

    pub fn poly(p: MultiPoly) -> Self {
        RationalExpression {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::poly(MultiPoly::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::poly(MultiPoly::var(v))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels the common monomial content and makes the denominator's
    /// content 1 with a positive leading coefficient.
    pub fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = MultiPoly::one();
            return self;
        }
        let mn = self.num.monomial_content();
        let md = self.den.monomial_content();
        let mut m: Exps = [0; NVARS];
        for i in 0..NVARS {
            m[i] = mn[i].min(md[i]);
        }
        if m.iter().any(|k| *k > 0) {
            self.num = self.num.div_monomial(&m);
            self.den = self.den.div_monomial(&m);
        }
        let mut c = self.den.content();
        if self.den.terms().values().next_back().is_some_and(|x| x.is_negative()) {
            c = -c;
        }
        let inv = Rational::from_integer(BigInt::from(1)) / c;
        self.num = self.num.scale(&inv);
        self.den = self.den.scale(&inv);
        self
    }

    /// The numerator after normalization: the expression with its
    /// (monomial) denominator cleared.
    pub fn numerator(&self) -> MultiPoly {
        self.num.clone()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RationalExpression {
                num: &self.num + &o.num,
                den: self.den.clone(),
            }
            .normalized();
        }
        if let (Some((e1, c1)), Some((e2, c2))) = (self.den.as_term(), o.den.as_term()) {
            let mut l: Exps = [0; NVARS];
            for i in 0..NVARS {
                l[i] = e1[i].max(e2[i]);
            }
            let lift = |p: &MultiPoly, e: &Exps, c: &Rational| {
                let mut m = l;
                for i in 0..NVARS {
                    m[i] -= e[i];
                }
                p.mul_term(&m, &(Rational::from_integer(BigInt::from(1)) / c))
            };
            let num = &lift(&self.num, e1, c1) + &lift(&o.num, e2, c2);
            return RationalExpression {
                num,
                den: MultiPoly::monomial(l, Rational::from_integer(BigInt::from(1))),
            }
            .normalized();
        }
        RationalExpression {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        RationalExpression {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalExpression {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
        .normalized()
    }

    pub fn div(&self, o: &Self) -> Result<Self, PolyError> {
        RationalExpression::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalExpression {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalExpression {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    /// `self == o` as rational functions (cross-multiplication).
    pub fn equals(&self, o: &Self) -> bool {
        (&self.num * &o.den) == (&o.num * &self.den)
    }

    /// `self - o` as a single numerator over `self.den * o.den`.
    pub fn difference_numerator(&self, o: &Self) -> MultiPoly {
        &(&self.num * &o.den) - &(&o.num * &self.den)
    }

    pub fn substitute(&self, v: Var, value: &RationalExpression) -> Self {
        let sub = |p: &MultiPoly| -> RationalExpression {
            let d = p.degree_in(v).unwrap_or(0);
            let mut acc = RationalExpression::int(0);
            let mut pw = RationalExpression::int(1);
            for k in 0..=d {
                let c = p.coefficient_of(v, k);
                if !c.is_zero() {
                    acc = acc.add(&RationalExpression::poly(c).mul(&pw));
                }
                if k < d {
                    pw = pw.mul(value);
                }
            }
            acc
        };
        let n = sub(&self.num);
        let d = sub(&self.den);
        n.div(&d).expect("substituted denominator is nonzero")
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    pub fn eval_fp(&self, values: &dyn Fn(Var) -> Fp, f: &PrimeField) -> Result<Fp, PolyError> {
        let n = self.num.eval_fp(values, f)?;
        let d = self.den.eval_fp(values, f)?;
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(f.div(&n, &d)?)
    }

    pub fn eval_rational(&self, values: &dyn Fn(Var) -> Rational) -> Option<Rational> {
        let d = self.den.eval_rational(values);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(values) / d)
    }
}

impl fmt::Display for RationalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MultiPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl std::ops::$tr<&RationalExpression> for &RationalExpression {
            type Output = RationalExpression;
            fn $m(self, o: &RationalExpression) -> RationalExpression {
                $body(self, o)
            }
        }
        impl std::ops::$tr<RationalExpression> for RationalExpression {
            type Output = RationalExpression;
            fn $m(self, o: RationalExpression) -> RationalExpression {
                $body(&self, &o)
            }
        }
        impl std::ops::$tr<&RationalExpression> for RationalExpression {
            type Output = RationalExpression;
            fn $m(self, o: &RationalExpression) -> RationalExpression {
                $body(&self, o)
            }
        }
        impl std::ops::$tr<RationalExpression> for &RationalExpression {
            type Output = RationalExpression;
            fn $m(self, o: RationalExpression) -> RationalExpression {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &RationalExpression, b| a.add(b));
binop!(Sub, sub, |a: &RationalExpression, b| a.sub(b));
binop!(Mul, mul, |a: &RationalExpression, b| a.mul(b));
// Panics on a zero divisor; the checked form is `RationalExpression::div`.
binop!(Div, div, |a: &RationalExpression, b| a
    .div(b)
    .expect("division by zero"));

impl std::ops::Neg for RationalExpression {
    type Output = RationalExpression;
    fn neg(self) -> RationalExpression {
        RationalExpression::neg(&self)
    }
}

impl std::ops::Neg for &RationalExpression {
    type Output = RationalExpression;
    fn neg(self) -> RationalExpression {
        RationalExpression::neg(self)
    }
}

/// Formula-table evaluation over `Q[vars]`.
pub struct PolyRing;

impl FormulaRing for PolyRing {
    type Elem = MultiPoly;
    fn int(&self, n: &BigInt) -> MultiPoly {
        MultiPoly::constant(Rational::from_integer(n.clone()))
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a - b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        -a
    }
}

/// Formula-table evaluation over `Q(vars)`.
pub struct FractionRing;

impl FormulaRing for FractionRing {
    type Elem = RationalExpression;
    fn int(&self, n: &BigInt) -> RationalExpression {
        RationalExpression::poly(MultiPoly::constant(Rational::from_integer(n.clone())))
    }
    fn add(&self, a: &RationalExpression, b: &RationalExpression) -> RationalExpression {
        a.add(b)
    }
    fn sub(&self, a: &RationalExpression, b: &RationalExpression) -> RationalExpression {
        a.sub(b)
    }
    fn mul(&self, a: &RationalExpression, b: &RationalExpression) -> RationalExpression {
        a.mul(b)
    }
    fn neg(&self, a: &RationalExpression) -> RationalExpression {
        a.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> RationalExpression {
        RationalExpression::var(x)
    }

    #[test]
    fn arithmetic_and_normalization() {
        let x = v(Var::E4);
        let y = v(Var::Sigma);
        let q = x.div(&y).unwrap();
        let back = q.mul(&y);
        assert_eq!(back, x);
        let s = q.add(&RationalExpression::int(1).div(&y).unwrap());
        assert_eq!(s.den(), &MultiPoly::var(Var::Sigma));
        assert!(s.equals(&x.add(&RationalExpression::int(1)).div(&y).unwrap()));
        let half = RationalExpression::new(MultiPoly::int(1), MultiPoly::int(-2)).unwrap();
        assert_eq!(half.den(), &MultiPoly::one());
        assert!(RationalExpression::new(MultiPoly::one(), MultiPoly::zero()).is_err());
    }

    #[test]
    fn substitution_into_fraction() {
        let e = v(Var::E4t).div(&v(Var::Ds)).unwrap();
        let s = e.substitute(Var::E4t, &v(Var::Ell).div(&v(Var::E6)).unwrap());
        let expect = v(Var::Ell)
            .div(&v(Var::E6).mul(&v(Var::Ds)))
            .unwrap();
        assert!(s.equals(&expect));
    }
}
