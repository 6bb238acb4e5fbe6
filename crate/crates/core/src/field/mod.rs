//! Prime-field arithmetic and the univariate machinery built on it.
//!
//! A [`PrimeField`] is a cheap, cloneable handle on the modulus. Elements
//! ([`Fp`]) are plain canonical residues and never carry the modulus, so
//! every operation goes through the field handle. The handle also counts
//! multiplications, which is how the per-root cost of the isogeny formulas
//! is measured.

mod divpoly;
mod poly;
mod specialize;

pub use divpoly::{division_poly, division_poly_symbolic, expected_degree, SymbolicDivPoly};
pub use poly::UniPoly;
pub use specialize::{derivative_bundle, specialize, CurveParams, DerivativeBundle, ReducedPoly};

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::qseries::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(BigUint),
    #[error("modulus must exceed 3, got {0}")]
    ModulusTooSmall(BigUint),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("singular curve: 4A^3 + 27B^2 = 0")]
    SingularCurve,
    #[error("value is not a root of the polynomial")]
    NotARoot,
    #[error("polynomial kind or basis not supported here: {0}")]
    Unsupported(String),
}

/// Canonical residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp(BigUint);

impl Fp {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: BigUint,
    mults: AtomicU64,
    invs: AtomicU64,
}

#[derive(Clone)]
pub struct PrimeField {
    inner: Arc<Inner>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeField({})", self.inner.p)
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p
    }
}

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Miller-Rabin. The first twelve prime bases make it exact below 3.3e24;
/// above that, 16 extra bases drawn from a fixed-seed generator are tried.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &sp in &SMALL_PRIMES {
        let sp = BigUint::from(sp);
        if *n == sp {
            return true;
        }
        if (n % &sp).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            return true;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                return true;
            }
        }
        false
    };
    if !SMALL_PRIMES.iter().all(|&b| witness(&BigUint::from(b))) {
        return false;
    }
    if n.bits() <= 80 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..16).all(|_| {
        let a = random_below(&mut rng, &(n - 3u32)) + 2u32;
        witness(&a)
    })
}

/// Uniform-ish integer in `[0, bound)`; the bias from reducing a value
/// 64 bits wider than `bound` is negligible.
pub(crate) fn random_below(rng: &mut impl RngCore, bound: &BigUint) -> BigUint {
    let nbytes = (bound.bits() as usize).div_ceil(8) + 8;
    let mut buf = vec![0u8; nbytes];
    rng.fill_bytes(&mut buf);
    BigUint::from_bytes_le(&buf) % bound
}

impl PrimeField {
    pub fn new(p: BigUint) -> Result<Self, FieldError> {
        if p <= BigUint::from(3u32) {
            return Err(FieldError::ModulusTooSmall(p));
        }
        if !is_probable_prime(&p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField {
            inner: Arc::new(Inner {
                p,
                mults: AtomicU64::new(0),
                invs: AtomicU64::new(0),
            }),
        })
    }

    pub fn from_u64(p: u64) -> Result<Self, FieldError> {
        Self::new(BigUint::from(p))
    }

    pub fn modulus(&self) -> &BigUint {
        &self.inner.p
    }

    /// Multiplications performed through this field (and its clones).
    pub fn mul_count(&self) -> u64 {
        self.inner.mults.load(Ordering::Relaxed)
    }

    pub fn inv_count(&self) -> u64 {
        self.inner.invs.load(Ordering::Relaxed)
    }

    pub(crate) fn count_mults(&self, n: u64) {
        self.inner.mults.fetch_add(n, Ordering::Relaxed);
    }

    pub fn zero(&self) -> Fp {
        Fp(BigUint::zero())
    }

    pub fn one(&self) -> Fp {
        Fp(BigUint::one())
    }

    pub fn elem(&self, v: u64) -> Fp {
        Fp(BigUint::from(v) % &self.inner.p)
    }

    pub fn from_i64(&self, v: i64) -> Fp {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_biguint(&self, v: &BigUint) -> Fp {
        Fp(v % &self.inner.p)
    }

    pub fn from_bigint(&self, v: &BigInt) -> Fp {
        let p = BigInt::from_biguint(Sign::Plus, self.inner.p.clone());
        let r = v.mod_floor(&p);
        Fp(r.to_biguint().expect("mod_floor is non-negative"))
    }

    pub fn from_rational(&self, v: &Rational) -> Result<Fp, FieldError> {
        let n = self.from_bigint(v.numer());
        let d = self.from_bigint(v.denom());
        self.div(&n, &d)
            .map_err(|_| FieldError::NotInvertible(format!("denominator of {v}")))
    }

    pub(crate) fn reduce(&self, v: BigUint) -> Fp {
        Fp(v % &self.inner.p)
    }

    pub fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let s = &a.0 + &b.0;
        if s >= self.inner.p {
            Fp(s - &self.inner.p)
        } else {
            Fp(s)
        }
    }

    pub fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        if a.0 >= b.0 {
            Fp(&a.0 - &b.0)
        } else {
            Fp(&self.inner.p - &b.0 + &a.0)
        }
    }

    pub fn neg(&self, a: &Fp) -> Fp {
        if a.0.is_zero() {
            a.clone()
        } else {
            Fp(&self.inner.p - &a.0)
        }
    }

    pub fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        self.count_mults(1);
        Fp((&a.0 * &b.0) % &self.inner.p)
    }

    pub fn square(&self, a: &Fp) -> Fp {
        self.mul(a, a)
    }

    /// Multiplication by a small integer constant (counted as a multiplication).
    pub fn mul_int(&self, a: &Fp, k: i64) -> Fp {
        let kk = self.from_i64(k);
        self.mul(a, &kk)
    }

    pub fn pow(&self, a: &Fp, e: &BigUint) -> Fp {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.square(&result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    pub fn pow_u64(&self, a: &Fp, e: u64) -> Fp {
        self.pow(a, &BigUint::from(e))
    }

    pub fn inv(&self, a: &Fp) -> Result<Fp, FieldError> {
        if a.0.is_zero() {
            return Err(FieldError::NotInvertible("0".into()));
        }
        self.inner.invs.fetch_add(1, Ordering::Relaxed);
        a.0.modinv(&self.inner.p)
            .map(Fp)
            .ok_or_else(|| FieldError::NotInvertible(a.to_string()))
    }

    pub fn div(&self, a: &Fp, b: &Fp) -> Result<Fp, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a` as a signed integer in `(-p/2, p/2]`.
    pub fn centered(&self, a: &Fp) -> BigInt {
        let half = &self.inner.p >> 1;
        if a.0 > half {
            BigInt::from_biguint(Sign::Plus, a.0.clone())
                - BigInt::from_biguint(Sign::Plus, self.inner.p.clone())
        } else {
            BigInt::from_biguint(Sign::Plus, a.0.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(PrimeField::from_u64(9), Err(FieldError::NotPrime(_))));
        assert!(matches!(PrimeField::from_u64(3), Err(FieldError::ModulusTooSmall(_))));
        assert!(PrimeField::from_u64(1009).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..3000u64 {
            assert_eq!(is_probable_prime(&BigUint::from(n)), trial(n), "n = {n}");
        }
        // Carmichael numbers
        for n in [561u64, 1105, 1729, 2465, 2821, 6601, 8911] {
            assert!(!is_probable_prime(&BigUint::from(n)));
        }
    }

    #[test]
    fn large_prime() {
        let p = (BigUint::one() << 256u32) - 189u32;
        assert!(is_probable_prime(&p));
        assert!(!is_probable_prime(&(&p + 2u32)));
    }

    #[test]
    fn arithmetic() {
        let f = PrimeField::from_u64(1009).unwrap();
        let a = f.elem(1000);
        let b = f.elem(20);
        assert_eq!(f.add(&a, &b), f.elem(11));
        assert_eq!(f.sub(&b, &a), f.elem(29));
        assert_eq!(f.neg(&f.zero()), f.zero());
        let third = f.from_rational(&Rational::new(1.into(), 3.into())).unwrap();
        assert_eq!(f.mul(&third, &f.elem(3)), f.one());
        assert_eq!(f.from_i64(-1), f.elem(1008));
        assert!(f.inv(&f.zero()).is_err());
        assert_eq!(f.pow_u64(&f.elem(5), 1008), f.one());
        assert_eq!(f.centered(&f.elem(1008)), BigInt::from(-1));
    }

    #[test]
    fn counts_multiplications() {
        let f = PrimeField::from_u64(101).unwrap();
        let before = f.mul_count();
        let g = f.clone();
        g.mul(&f.elem(3), &f.elem(4));
        assert_eq!(f.mul_count() - before, 1);
    }
}
