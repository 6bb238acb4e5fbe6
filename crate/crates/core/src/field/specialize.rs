use super::{FieldError, Fp, PrimeField, UniPoly};
use crate::modpoly::{Basis, PolyKind, WeightedPoly};

/// `Y^2 = X^3 + AX + B` over `F_p`, nonsingular.
#[derive(Clone, Debug)]
pub struct CurveParams {
    field: PrimeField,
    a: Fp,
    b: Fp,
}

impl CurveParams {
    pub fn new(field: &PrimeField, a: Fp, b: Fp) -> Result<Self, FieldError> {
        let c = CurveParams {
            field: field.clone(),
            a: field.from_biguint(a.value()),
            b: field.from_biguint(b.value()),
        };
        if c.discriminant().is_zero() {
            return Err(FieldError::SingularCurve);
        }
        Ok(c)
    }

    pub fn from_i64(field: &PrimeField, a: i64, b: i64) -> Result<Self, FieldError> {
        Self::new(field, field.from_i64(a), field.from_i64(b))
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn a(&self) -> &Fp {
        &self.a
    }

    pub fn b(&self) -> &Fp {
        &self.b
    }

    /// `4A^3 + 27B^2`.
    pub fn discriminant(&self) -> Fp {
        let f = &self.field;
        let a3 = f.mul(&f.square(&self.a), &self.a);
        f.add(&f.mul_int(&a3, 4), &f.mul_int(&f.square(&self.b), 27))
    }

    /// `E4 = -A/3`.
    pub fn e4(&self) -> Fp {
        let f = &self.field;
        f.div(&f.neg(&self.a), &f.elem(3)).expect("p > 3")
    }

    /// `E6 = -B/2`.
    pub fn e6(&self) -> Fp {
        let f = &self.field;
        f.div(&f.neg(&self.b), &f.elem(2)).expect("p > 3")
    }

    /// `j = 1728 * 4A^3 / (4A^3 + 27B^2)`.
    pub fn j_invariant(&self) -> Fp {
        let f = &self.field;
        let a3 = f.mul_int(&f.mul(&f.square(&self.a), &self.a), 4);
        f.mul_int(&f.div(&a3, &self.discriminant()).expect("nonsingular"), 1728)
    }
}

/// A weighted polynomial with its coefficients reduced into `F_p` once.
#[derive(Clone, Debug)]
pub struct ReducedPoly {
    pub kind: PolyKind,
    pub ell: u32,
    pub basis: Basis,
    degree: u32,
    terms: Vec<(u32, u32, u32, Fp)>,
}

impl ReducedPoly {
    pub fn new(p: &WeightedPoly, field: &PrimeField) -> Result<Self, FieldError> {
        let terms = p
            .terms()
            .iter()
            .map(|(&(i, a, b), c)| Ok((i, a, b, field.from_rational(c)?)))
            .collect::<Result<Vec<_>, FieldError>>()?;
        Ok(ReducedPoly {
            kind: p.kind,
            ell: p.ell,
            basis: p.basis,
            degree: p.degree_x().unwrap_or(0),
            terms,
        })
    }

    fn generators(&self, curve: &CurveParams) -> (Fp, Fp) {
        match self.basis {
            Basis::AB => (curve.a().clone(), curve.b().clone()),
            Basis::E4E6 => (curve.e4(), curve.e6()),
        }
    }

    /// `P(x, Y, Z)` with the curve's generator values.
    pub fn eval(&self, x: &Fp, y: &Fp, z: &Fp, f: &PrimeField) -> Fp {
        let t = Tables::new(self, x, y, z, f);
        self.terms.iter().fold(f.zero(), |acc, (i, a, b, c)| {
            let m = f.mul(c, &f.mul(&t.x[*i as usize], &f.mul(&t.y[*a as usize], &t.z[*b as usize])));
            f.add(&acc, &m)
        })
    }

    /// `P(x, ., .)` with the curve in the generator slots.
    pub fn eval_on_curve(&self, x: &Fp, curve: &CurveParams) -> Fp {
        let (y, z) = self.generators(curve);
        self.eval(x, &y, &z, curve.field())
    }

    /// `P(x, y, Z)` as a polynomial in the third slot.
    pub fn in_third_slot(&self, x: &Fp, y: &Fp, f: &PrimeField) -> UniPoly {
        let zero = f.zero();
        let t = Tables::new(self, x, y, &zero, f);
        let max_b = self.terms.iter().map(|t| t.2).max().unwrap_or(0);
        let mut coeffs = vec![f.zero(); max_b as usize + 1];
        for (i, a, b, c) in &self.terms {
            let m = f.mul(c, &f.mul(&t.x[*i as usize], &t.y[*a as usize]));
            coeffs[*b as usize] = f.add(&coeffs[*b as usize], &m);
        }
        UniPoly::from_coeffs(coeffs)
    }
}

struct Tables {
    x: Vec<Fp>,
    y: Vec<Fp>,
    z: Vec<Fp>,
}

impl Tables {
    fn new(p: &ReducedPoly, x: &Fp, y: &Fp, z: &Fp, f: &PrimeField) -> Self {
        let max_a = p.terms.iter().map(|t| t.1).max().unwrap_or(0);
        let max_b = p.terms.iter().map(|t| t.2).max().unwrap_or(0);
        let pows = |v: &Fp, n: u32| {
            let mut out = vec![f.one()];
            for k in 1..=n as usize {
                out.push(f.mul(&out[k - 1], v));
            }
            out
        };
        Tables {
            x: pows(x, p.degree),
            y: pows(y, max_a),
            z: pows(z, max_b),
        }
    }
}

/// Univariate polynomial in `X` obtained by substituting the curve.
pub fn specialize(p: &ReducedPoly, curve: &CurveParams) -> UniPoly {
    let f = curve.field();
    let (y, z) = p.generators(curve);
    let t = Tables::new(p, &f.zero(), &y, &z, f);
    let mut coeffs = vec![f.zero(); p.degree as usize + 1];
    for (i, a, b, c) in &p.terms {
        let m = f.mul(c, &f.mul(&t.y[*a as usize], &t.z[*b as usize]));
        coeffs[*i as usize] = f.add(&coeffs[*i as usize], &m);
    }
    UniPoly::from_coeffs(coeffs)
}

/// Value and partial derivatives at `(root, E4, E6)`, always with respect
/// to `E4` and `E6` (the chain rule is applied for the `AB` basis).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeBundle {
    pub u: Fp,
    pub du_s: Fp,
    pub du_4: Fp,
    pub du_6: Fp,
    pub du_s4: Fp,
    pub du_s6: Fp,
    pub du_46: Fp,
}

pub fn derivative_bundle(
    p: &ReducedPoly,
    curve: &CurveParams,
    root: &Fp,
) -> Result<DerivativeBundle, FieldError> {
    let f = curve.field();
    let (y, z) = p.generators(curve);
    let t = Tables::new(p, root, &y, &z, f);
    let mut acc = [f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero()];
    let add = |slot: &mut Fp, k: u64, v: Fp| {
        let v = if k == 1 { v } else { f.mul(&v, &f.elem(k)) };
        *slot = f.add(slot, &v);
    };
    for (i, a, b, c) in &p.terms {
        let (i, a, b) = (*i as usize, *a as usize, *b as usize);
        let yz = f.mul(c, &f.mul(&t.y[a], &t.z[b]));
        add(&mut acc[0], 1, f.mul(&yz, &t.x[i]));
        if i > 0 {
            let d = f.mul(&yz, &t.x[i - 1]);
            add(&mut acc[1], i as u64, d);
        }
        if a > 0 {
            let cy = f.mul(c, &f.mul(&t.y[a - 1], &t.z[b]));
            add(&mut acc[2], a as u64, f.mul(&cy, &t.x[i]));
            if i > 0 {
                add(&mut acc[4], (i * a) as u64, f.mul(&cy, &t.x[i - 1]));
            }
            if b > 0 {
                let cyz = f.mul(c, &f.mul(&t.y[a - 1], &t.z[b - 1]));
                add(&mut acc[6], (a * b) as u64, f.mul(&cyz, &t.x[i]));
            }
        }
        if b > 0 {
            let cz = f.mul(c, &f.mul(&t.y[a], &t.z[b - 1]));
            add(&mut acc[3], b as u64, f.mul(&cz, &t.x[i]));
            if i > 0 {
                add(&mut acc[5], (i * b) as u64, f.mul(&cz, &t.x[i - 1]));
            }
        }
    }
    let [u, ux, uy, uz, uxy, uxz, uyz] = acc;
    if !u.is_zero() {
        return Err(FieldError::NotARoot);
    }
    let bundle = match p.basis {
        Basis::E4E6 => DerivativeBundle {
            u,
            du_s: ux,
            du_4: uy,
            du_6: uz,
            du_s4: uxy,
            du_s6: uxz,
            du_46: uyz,
        },
        Basis::AB => DerivativeBundle {
            u,
            du_s: ux,
            du_4: f.mul_int(&uy, -3),
            du_6: f.mul_int(&uz, -2),
            du_s4: f.mul_int(&uxy, -3),
            du_s6: f.mul_int(&uxz, -2),
            du_46: f.mul_int(&uyz, 6),
        },
    };
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modpoly::build;

    fn setup() -> (PrimeField, CurveParams) {
        let f = PrimeField::from_u64(1009).unwrap();
        let c = CurveParams::from_i64(&f, 1, 3).unwrap();
        (f, c)
    }

    #[test]
    fn curve_basics() {
        let (f, c) = setup();
        assert_eq!(f.mul_int(&c.e4(), -3), f.elem(1));
        assert_eq!(f.mul_int(&c.e6(), -2), f.elem(3));
        assert!(CurveParams::from_i64(&f, -3, 2).is_err());
        // y^2 = x^3 + 1 has j = 0, y^2 = x^3 + x has j = 1728
        assert!(CurveParams::from_i64(&f, 0, 1).unwrap().j_invariant().is_zero());
        assert_eq!(CurveParams::from_i64(&f, 1, 0).unwrap().j_invariant(), f.elem(1728 % 1009));
    }

    #[test]
    fn u5_specialization_and_bundle() {
        let (f, c) = setup();
        let u = build(PolyKind::U, 5).unwrap();
        for basis in [Basis::E4E6, Basis::AB] {
            let r = ReducedPoly::new(&u.to_basis(basis), &f).unwrap();
            let s = specialize(&r, &c);
            assert_eq!(s, UniPoly::from_i64s(&f, &[-720, -384, -80, 480, 20, 0, 1]));
            let b = derivative_bundle(&r, &c, &f.elem(584)).unwrap();
            assert_eq!((b.du_s.clone(), b.du_4.clone(), b.du_6.clone()), (f.elem(905), f.elem(779), f.elem(140)));
            assert!(matches!(derivative_bundle(&r, &c, &f.elem(1)), Err(FieldError::NotARoot)));
        }
        let zero = CurveParams::from_i64(&f, 0, 0);
        assert!(zero.is_err());
    }
}
