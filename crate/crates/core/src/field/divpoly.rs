//! Division polynomials `f_n`, normalised so that `f_n = psi_n` for odd `n`
//! and `f_n = psi_n / (2Y)` for even `n`, with `Y^2 = X^3 + AX + B` folded in.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{CurveParams, UniPoly};

/// Operations the recurrence needs; implemented once over `Z[X, A, B]` and
/// once over `F_p[X]`.
trait DivRing {
    type P: Clone;
    fn int(&self, k: i64) -> Self::P;
    fn x(&self) -> Self::P;
    fn a(&self) -> Self::P;
    fn b(&self) -> Self::P;
    fn add(&self, l: &Self::P, r: &Self::P) -> Self::P;
    fn sub(&self, l: &Self::P, r: &Self::P) -> Self::P;
    fn mul(&self, l: &Self::P, r: &Self::P) -> Self::P;
}

fn lin<R: DivRing>(r: &R, terms: &[(i64, R::P)]) -> R::P {
    terms
        .iter()
        .fold(r.int(0), |acc, (k, t)| r.add(&acc, &r.mul(&r.int(*k), t)))
}

fn compute<R: DivRing>(r: &R, n: i64) -> R::P {
    assert!(n >= -1, "division polynomial index must be >= -1");
    let mut memo: HashMap<i64, R::P> = HashMap::new();
    eval(r, n, &mut memo)
}

fn eval<R: DivRing>(r: &R, n: i64, memo: &mut HashMap<i64, R::P>) -> R::P {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let (x, a, b) = (r.x(), r.a(), r.b());
    let x2 = r.mul(&x, &x);
    let p = match n {
        -1 => r.int(-1),
        0 => r.int(0),
        1 | 2 => r.int(1),
        3 => {
            let x4 = r.mul(&x2, &x2);
            lin(
                r,
                &[
                    (3, x4),
                    (6, r.mul(&a, &x2)),
                    (12, r.mul(&b, &x)),
                    (-1, r.mul(&a, &a)),
                ],
            )
        }
        4 => {
            let x3 = r.mul(&x2, &x);
            let a2 = r.mul(&a, &a);
            lin(
                r,
                &[
                    (2, r.mul(&x3, &x3)),
                    (10, r.mul(&a, &r.mul(&x2, &x2))),
                    (40, r.mul(&b, &x3)),
                    (-10, r.mul(&a2, &x2)),
                    (-8, r.mul(&r.mul(&a, &b), &x)),
                    (-16, r.mul(&b, &b)),
                    (-2, r.mul(&a2, &a)),
                ],
            )
        }
        _ => {
            let e = r.add(&r.add(&r.mul(&x2, &x), &r.mul(&a, &x)), &b);
            let e2_16 = r.mul(&r.int(16), &r.mul(&e, &e));
            let m = n / 2;
            let cube = |p: &R::P| r.mul(p, &r.mul(p, p));
            let sq = |p: &R::P| r.mul(p, p);
            if n % 2 == 1 {
                let fm2 = eval(r, m + 2, memo);
                let fm = eval(r, m, memo);
                let fm1 = eval(r, m - 1, memo);
                let fp1 = eval(r, m + 1, memo);
                let left = r.mul(&fm2, &cube(&fm));
                let right = r.mul(&fm1, &cube(&fp1));
                if m % 2 == 0 {
                    r.sub(&r.mul(&e2_16, &left), &right)
                } else {
                    r.sub(&left, &r.mul(&e2_16, &right))
                }
            } else {
                let fm = eval(r, m, memo);
                let fm2 = eval(r, m + 2, memo);
                let fm1 = eval(r, m - 1, memo);
                let fmm2 = eval(r, m - 2, memo);
                let fp1 = eval(r, m + 1, memo);
                let inner = r.sub(&r.mul(&fm2, &sq(&fm1)), &r.mul(&fmm2, &sq(&fp1)));
                r.mul(&fm, &inner)
            }
        }
    };
    memo.insert(n, p.clone());
    p
}

/// Element of `Z[X, A, B]`, keyed by exponents `(i, a, b)` of `X^i A^a B^b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicDivPoly {
    terms: BTreeMap<(u32, u32, u32), BigInt>,
}

impl SymbolicDivPoly {
    fn monomial(c: BigInt, e: (u32, u32, u32)) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        SymbolicDivPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32, u32), BigInt> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, a: u32, b: u32) -> BigInt {
        self.terms.get(&(i, a, b)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    /// The common weighted degree (X:1, A:2, B:3), if every monomial shares it.
    pub fn weighted_degree(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|&(i, a, b)| i + 2 * a + 3 * b);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    /// Halves every coefficient; `None` if one of them is odd.
    pub fn halve(&self) -> Option<SymbolicDivPoly> {
        let two = BigInt::from(2);
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if !(c % &two).is_zero() {
                return None;
            }
            terms.insert(*k, c / &two);
        }
        Some(SymbolicDivPoly { terms })
    }

    /// Parses a sum of terms like `3*X^4 + 6*A*X^2 - A^2`.
    pub fn parse(s: &str) -> Option<SymbolicDivPoly> {
        let mut out = SymbolicDivPoly::default();
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for ch in cleaned.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        if !cur.is_empty() {
            chunks.push(cur);
        }
        for chunk in chunks {
            let (neg, body) = match chunk.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            let mut c = BigInt::one();
            let mut e = (0u32, 0u32, 0u32);
            for factor in body.split('*') {
                let (base, pow) = match factor.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().ok()?),
                    None => (factor, 1),
                };
                match base {
                    "X" => e.0 += pow,
                    "A" => e.1 += pow,
                    "B" => e.2 += pow,
                    num => c *= num.parse::<BigInt>().ok()?.pow(pow),
                }
            }
            if neg {
                c = -c;
            }
            out = DivRing::add(&Symbolic, &out, &SymbolicDivPoly::monomial(c, e));
        }
        Some(out)
    }
}

impl fmt::Display for SymbolicDivPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, a, b), c)) in self.terms.iter().rev().enumerate() {
            let mut parts = Vec::new();
            for (name, e) in [("X", i), ("A", a), ("B", b)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            let mag = if c < &BigInt::zero() { -c } else { c.clone() };
            let sign = if c < &BigInt::zero() { "-" } else { "+" };
            if n == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if parts.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "{mag}*{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Symbolic;

impl DivRing for Symbolic {
    type P = SymbolicDivPoly;

    fn int(&self, k: i64) -> SymbolicDivPoly {
        SymbolicDivPoly::monomial(BigInt::from(k), (0, 0, 0))
    }
    fn x(&self) -> SymbolicDivPoly {
        SymbolicDivPoly::monomial(BigInt::one(), (1, 0, 0))
    }
    fn a(&self) -> SymbolicDivPoly {
        SymbolicDivPoly::monomial(BigInt::one(), (0, 1, 0))
    }
    fn b(&self) -> SymbolicDivPoly {
        SymbolicDivPoly::monomial(BigInt::one(), (0, 0, 1))
    }
    fn add(&self, l: &SymbolicDivPoly, r: &SymbolicDivPoly) -> SymbolicDivPoly {
        let mut terms = l.terms.clone();
        for (k, c) in &r.terms {
            let e = terms.entry(*k).or_default();
            *e += c;
            if e.is_zero() {
                terms.remove(k);
            }
        }
        SymbolicDivPoly { terms }
    }
    fn sub(&self, l: &SymbolicDivPoly, r: &SymbolicDivPoly) -> SymbolicDivPoly {
        let neg = SymbolicDivPoly {
            terms: r.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        };
        self.add(l, &neg)
    }
    fn mul(&self, l: &SymbolicDivPoly, r: &SymbolicDivPoly) -> SymbolicDivPoly {
        let mut terms: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
        for (k1, c1) in &l.terms {
            for (k2, c2) in &r.terms {
                let k = (k1.0 + k2.0, k1.1 + k2.1, k1.2 + k2.2);
                *terms.entry(k).or_default() += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        SymbolicDivPoly { terms }
    }
}

struct OverField<'a>(&'a CurveParams);

impl DivRing for OverField<'_> {
    type P = UniPoly;

    fn int(&self, k: i64) -> UniPoly {
        UniPoly::constant(self.0.field().from_i64(k))
    }
    fn x(&self) -> UniPoly {
        UniPoly::x(self.0.field())
    }
    fn a(&self) -> UniPoly {
        UniPoly::constant(self.0.a().clone())
    }
    fn b(&self) -> UniPoly {
        UniPoly::constant(self.0.b().clone())
    }
    fn add(&self, l: &UniPoly, r: &UniPoly) -> UniPoly {
        l.add(r, self.0.field())
    }
    fn sub(&self, l: &UniPoly, r: &UniPoly) -> UniPoly {
        l.sub(r, self.0.field())
    }
    fn mul(&self, l: &UniPoly, r: &UniPoly) -> UniPoly {
        l.mul(r, self.0.field())
    }
}

/// `f_n` in `Z[X, A, B]`, for `n >= -1`.
pub fn division_poly_symbolic(n: i64) -> SymbolicDivPoly {
    compute(&Symbolic, n)
}

/// `f_n` of a specific curve, in `F_p[X]`.
pub fn division_poly(n: i64, curve: &CurveParams) -> UniPoly {
    compute(&OverField(curve), n)
}

/// Expected `deg f_n`: `(n^2-1)/2` for odd `n`, `(n^2-4)/2` for even `n`.
pub fn expected_degree(n: i64) -> Option<u32> {
    match n {
        i64::MIN..=0 => None,
        _ if n % 2 == 1 => Some(((n * n - 1) / 2) as u32),
        _ => Some(((n * n - 4) / 2) as u32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn small_cases() {
        assert_eq!(division_poly_symbolic(-1).to_string(), "-1");
        assert!(division_poly_symbolic(0).is_zero());
        assert_eq!(division_poly_symbolic(1).to_string(), "1");
        assert_eq!(division_poly_symbolic(2).to_string(), "1");
        let f3 = SymbolicDivPoly::parse("3*X^4 + 6*A*X^2 + 12*B*X - A^2").unwrap();
        assert_eq!(division_poly_symbolic(3), f3);
    }

    #[test]
    fn f4_is_twice_the_displayed_form() {
        let shown =
            SymbolicDivPoly::parse("X^6 + 5*A*X^4 + 20*B*X^3 - 5*A^2*X^2 - 4*A*B*X - 8*B^2 - A^3")
                .unwrap();
        assert_eq!(division_poly_symbolic(4).halve().unwrap(), shown);
    }

    #[test]
    fn degrees_and_weights() {
        for n in 1..=20 {
            let f = division_poly_symbolic(n);
            let d = expected_degree(n).unwrap();
            assert_eq!(f.degree_x().unwrap(), d, "n = {n}");
            assert_eq!(f.weighted_degree(), Some(d), "n = {n}");
        }
    }

    #[test]
    fn field_version_agrees_with_symbolic() {
        let field = PrimeField::from_u64(1009).unwrap();
        let curve = CurveParams::new(&field, field.elem(1), field.elem(3)).unwrap();
        for n in [3i64, 5, 6, 9, 12] {
            let sym = division_poly_symbolic(n);
            let mut coeffs = vec![field.zero(); sym.degree_x().unwrap() as usize + 1];
            for (&(i, a, b), c) in sym.terms() {
                let v = field.mul(&field.from_bigint(c), &field.pow_u64(&field.elem(3), b as u64));
                let v = field.mul(&v, &field.pow_u64(&field.elem(1), a as u64));
                coeffs[i as usize] = field.add(&coeffs[i as usize], &v);
            }
            assert_eq!(division_poly(n, &curve), UniPoly::from_coeffs(coeffs));
        }
    }
}
