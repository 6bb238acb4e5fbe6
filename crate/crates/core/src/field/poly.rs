use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_below, FieldError, Fp, PrimeField};

/// Dense polynomial over 𝔽_p, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Fp>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Fp>) -> Self {
        while coeffs.last().is_some_and(Fp::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(f: &PrimeField, coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn constant(c: Fp) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `X`.
    pub fn x(f: &PrimeField) -> Self {
        UniPoly {
            coeffs: vec![f.zero(), f.one()],
        }
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&Fp> {
        self.coeffs.get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Fp> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly, f: &PrimeField) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = f.zero();
        let coeffs = (0..n)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).unwrap_or(&z),
                    other.coeffs.get(i).unwrap_or(&z),
                )
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly, f: &PrimeField) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = f.zero();
        let coeffs = (0..n)
            .map(|i| {
                f.sub(
                    self.coeffs.get(i).unwrap_or(&z),
                    other.coeffs.get(i).unwrap_or(&z),
                )
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Fp, f: &PrimeField) -> UniPoly {
        Self::from_coeffs(self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    /// Schoolbook product; each output coefficient is reduced once.
    pub fn mul(&self, other: &UniPoly, f: &PrimeField) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut acc = vec![BigUint::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                acc[i + j] += &a.0 * &b.0;
            }
        }
        f.count_mults((self.coeffs.len() * other.coeffs.len()) as u64);
        Self::from_coeffs(acc.into_iter().map(|c| f.reduce(c)).collect())
    }

    pub fn monic(&self, f: &PrimeField) -> Result<UniPoly, FieldError> {
        match self.leading() {
            None => Err(FieldError::ZeroDivisor),
            Some(l) => {
                let inv = f.inv(l)?;
                Ok(self.scale(&inv, f))
            }
        }
    }

    pub fn divmod(&self, d: &UniPoly, f: &PrimeField) -> Result<(UniPoly, UniPoly), FieldError> {
        let dd = d.degree().ok_or(FieldError::ZeroDivisor)?;
        let lead_inv = f.inv(d.leading().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &lead_inv);
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    let t = f.mul(&c, dj);
                    r[k + j] = f.sub(&r[k + j], &t);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }

    pub fn rem(&self, d: &UniPoly, f: &PrimeField) -> Result<UniPoly, FieldError> {
        Ok(self.divmod(d, f)?.1)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly, f: &PrimeField) -> Result<UniPoly, FieldError> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic(f)
        }
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &UniPoly, f: &PrimeField) -> Result<UniPoly, FieldError> {
        if m.degree().ok_or(FieldError::ZeroDivisor)? == 0 {
            return Ok(UniPoly::zero());
        }
        let base = self.rem(m, f)?;
        let mut result = UniPoly::constant(f.one());
        for i in (0..e.bits()).rev() {
            result = result.mul(&result, f).rem(m, f)?;
            if e.bit(i) {
                result = result.mul(&base, f).rem(m, f)?;
            }
        }
        Ok(result)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Fp, f: &PrimeField) -> Fp {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self, f: &PrimeField) -> UniPoly {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &f.elem(i as u64)))
                .collect(),
        )
    }

    /// Distinct roots in 𝔽_p, sorted by residue.
    ///
    /// `gcd(X^p - X, self)` isolates the product of the linear factors,
    /// which is then split with `gcd((X+a)^((p-1)/2) - 1, .)` for random
    /// `a`. The seed only changes the work done, never the output.
    pub fn roots(&self, f: &PrimeField, seed: u64) -> Result<Vec<Fp>, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroDivisor);
        }
        let g = self.monic(f)?;
        if g.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let x = UniPoly::x(f);
        let xp = x.powmod(f.modulus(), &g, f)?;
        let linear = xp.sub(&x, f).gcd(&g, f)?;
        let linear = if linear.is_zero() { g } else { linear };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        split_linear(&linear, f, &mut rng, &mut out)?;
        out.sort();
        Ok(out)
    }
}

fn split_linear(
    g: &UniPoly,
    f: &PrimeField,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Fp>,
) -> Result<(), FieldError> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            let g = g.monic(f)?;
            out.push(f.neg(&g.coeffs[0]));
            return Ok(());
        }
        _ => {}
    }
    let half = (f.modulus() - 1u32) >> 1;
    loop {
        let a = f.reduce(random_below(rng, f.modulus()));
        let shifted = UniPoly::from_coeffs(vec![a, f.one()]);
        let t = shifted
            .powmod(&half, g, f)?
            .sub(&UniPoly::constant(f.one()), f);
        let d = t.gcd(g, f)?;
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (other, _) = g.divmod(&d, f)?;
            split_linear(&d, f, rng, out)?;
            split_linear(&other, f, rng, out)?;
            return Ok(());
        }
    }
}

impl UniPoly {
    /// `true` when `x` is a root.
    pub fn has_root(&self, x: &Fp, f: &PrimeField) -> bool {
        self.eval(x, f).is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].0.is_one()
    }
}
