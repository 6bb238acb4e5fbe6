//! Weighted trivariate modular polynomials `U`, `V`, `W`, `U^a` and the
//! classical `Phi_l`, together with their text store format.

mod build;
mod checks;
mod phi;

pub use build::{
    build, build_with_precision, conjugate_series, default_precision, match_to_form_basis,
    monomials_of_weight, newton_elementary, power_sums, BuildError, FormBasisCache,
};
pub use checks::{
    atkin_lehner_check, euler_identities, evaluate_series, partial, root_identity, TriTerms, Var,
};
pub use phi::{build_classical_phi, ClassicalModularPoly};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::qseries::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyKind {
    U,
    V,
    W,
    Ua,
}

impl PolyKind {
    /// Weight of `X` in the units where `E4`, `E6` weigh 2, 3.
    pub fn x_weight(self) -> u32 {
        match self {
            PolyKind::U | PolyKind::Ua => 1,
            PolyKind::V => 2,
            PolyKind::W => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PolyKind::U => "U",
            PolyKind::V => "V",
            PolyKind::W => "W",
            PolyKind::Ua => "Ua",
        }
    }
}

impl FromStr for PolyKind {
    type Err = StoreError;
    fn from_str(s: &str) -> Result<Self, StoreError> {
        match s {
            "U" => Ok(PolyKind::U),
            "V" => Ok(PolyKind::V),
            "W" => Ok(PolyKind::W),
            "Ua" => Ok(PolyKind::Ua),
            _ => Err(StoreError::Header(format!("unknown kind {s}"))),
        }
    }
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Coefficient ring generators: `(E4, E6)` or `(A, B) = (-3E4, -2E6)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    E4E6,
    AB,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::E4E6 => "E4E6",
            Basis::AB => "AB",
        }
    }

    fn names(self) -> (&'static str, &'static str) {
        match self {
            Basis::E4E6 => ("E4", "E6"),
            Basis::AB => ("A", "B"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("bad header: {0}")]
    Header(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `(-1/3)^a (-1/2)^b`, the factor turning `E4^a E6^b` into `A^a B^b`.
fn ab_factor(a: u32, b: u32) -> Rational {
    let mut r = Rational::one();
    for _ in 0..a {
        r *= Rational::new(BigInt::from(-1), BigInt::from(3));
    }
    for _ in 0..b {
        r *= Rational::new(BigInt::from(-1), BigInt::from(2));
    }
    r
}

/// `p`-adic valuation of a nonzero integer.
fn valuation(n: &BigInt, p: u32) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// Monic polynomial in `X` whose coefficients are forms in `(E4, E6)` or
/// `(A, B)`; term `(i, a, b)` is `X^i Y^a Z^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoly {
    pub kind: PolyKind,
    pub ell: u32,
    pub basis: Basis,
    terms: BTreeMap<(u32, u32, u32), Rational>,
}

impl WeightedPoly {
    pub fn new(
        kind: PolyKind,
        ell: u32,
        basis: Basis,
        mut terms: BTreeMap<(u32, u32, u32), Rational>,
    ) -> Self {
        terms.retain(|_, c| !c.is_zero());
        WeightedPoly {
            kind,
            ell,
            basis,
            terms,
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, a: u32, b: u32) -> Rational {
        self.terms.get(&(i, a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn is_monic(&self) -> bool {
        let d = self.ell + 1;
        self.degree_x() == Some(d)
            && self.coeff(d, 0, 0).is_one()
            && self.terms.keys().filter(|k| k.0 == d).count() == 1
    }

    /// The same polynomial written over the other generators.
    pub fn to_basis(&self, basis: Basis) -> WeightedPoly {
        if basis == self.basis {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&(i, a, b), c)| {
                let f = ab_factor(a, b);
                let c = if basis == Basis::AB { c * f } else { c / f };
                ((i, a, b), c)
            })
            .collect();
        WeightedPoly::new(self.kind, self.ell, basis, terms)
    }

    /// Every monomial has weight `w_X (l+1)` with `X`, `Y`, `Z` weighing
    /// `w_X`, 2, 3.
    pub fn is_weighted_homogeneous(&self) -> bool {
        let wx = self.kind.x_weight();
        let target = wx * (self.ell + 1);
        self.terms
            .keys()
            .all(|&(i, a, b)| wx * i + 2 * a + 3 * b == target)
    }

    /// The plain rule `i + 2a + 3b = l + 1`.
    pub fn has_unit_x_weight(&self) -> bool {
        self.terms
            .keys()
            .all(|&(i, a, b)| i + 2 * a + 3 * b == self.ell + 1)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Largest power of `p` dividing a coefficient denominator.
    pub fn denominator_valuation(&self, p: u32) -> u32 {
        self.terms
            .values()
            .map(|c| valuation(c.denom(), p))
            .max()
            .unwrap_or(0)
    }

    /// `c^(l+1) P(X/c)`: the coefficient of `X^i` is multiplied by `c^(l+1-i)`.
    pub fn rescale_root(&self, c: i64) -> WeightedPoly {
        let d = self.ell + 1;
        let terms = self
            .terms
            .iter()
            .map(|(&(i, a, b), v)| ((i, a, b), v * rat(c).pow((d - i) as i32)))
            .collect();
        WeightedPoly::new(self.kind, self.ell, self.basis, terms)
    }

    /// Adds `delta` to the coefficient of `(i, a, b)`.
    pub fn perturbed(&self, key: (u32, u32, u32), delta: &Rational) -> WeightedPoly {
        let mut terms = self.terms.clone();
        *terms.entry(key).or_insert_with(Rational::zero) += delta;
        WeightedPoly::new(self.kind, self.ell, self.basis, terms)
    }

    /// Rewrites the `E4E6` form with `E6` to degree at most one and powers
    /// of `Delta = (E4^3 - E6^2)/1728` factored out.
    pub fn to_delta(&self) -> DeltaPoly {
        let base = self.to_basis(Basis::E4E6);
        let mut out: BTreeMap<(u32, u32, u32, u32), Rational> = BTreeMap::new();
        let mut pending: Vec<((u32, u32, u32, u32), Rational)> = base
            .terms
            .iter()
            .map(|(&(i, a, b), c)| ((i, a, b, 0), c.clone()))
            .collect();
        // E6^2 = E4^3 - 1728 Delta
        while let Some(((i, a, b, m), c)) = pending.pop() {
            if b >= 2 {
                pending.push(((i, a + 3, b - 2, m), c.clone()));
                pending.push(((i, a, b - 2, m + 1), -c * rat(1728)));
            } else {
                *out.entry((i, a, b, m)).or_insert_with(Rational::zero) += c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        DeltaPoly {
            kind: self.kind,
            ell: self.ell,
            terms: out,
        }
    }

    /// Store-format text (see [`StoredPoly`]).
    pub fn to_store(&self) -> String {
        StoredPoly::Weighted(self.clone()).to_store()
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn write_sum(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Rational, Vec<(String, u32)>)>,
) -> fmt::Result {
    let mut first = true;
    for (c, vars) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        let parts: Vec<String> = vars
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .map(|(n, e)| if e == 1 { n } else { format!("{n}^{e}") })
            .collect();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        if parts.is_empty() {
            write!(f, "{}", fmt_coeff(&mag))?;
        } else if mag.is_one() {
            write!(f, "{}", parts.join("*"))?;
        } else {
            write!(f, "{}*{}", fmt_coeff(&mag), parts.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (y, z) = self.basis.names();
        write_sum(
            f,
            self.terms.iter().rev().map(|(&(i, a, b), c)| {
                (
                    c.clone(),
                    vec![("X".into(), i), (y.into(), a), (z.into(), b)],
                )
            }),
        )
    }
}

/// `U`-type polynomial displayed over `E4^a E6^b Delta^m` with `b <= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPoly {
    pub kind: PolyKind,
    pub ell: u32,
    terms: BTreeMap<(u32, u32, u32, u32), Rational>,
}

impl DeltaPoly {
    pub fn terms(&self) -> &BTreeMap<(u32, u32, u32, u32), Rational> {
        &self.terms
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Expands `Delta` again, giving the `E4E6` form.
    pub fn to_weighted(&self) -> WeightedPoly {
        let delta: BTreeMap<(u32, u32), Rational> = [
            ((3, 0), Rational::new(1.into(), 1728.into())),
            ((0, 2), Rational::new((-1).into(), 1728.into())),
        ]
        .into_iter()
        .collect();
        let mut out: BTreeMap<(u32, u32, u32), Rational> = BTreeMap::new();
        for (&(i, a, b, m), c) in &self.terms {
            let mut poly: BTreeMap<(u32, u32), Rational> = [((a, b), c.clone())].into();
            for _ in 0..m {
                let mut next = BTreeMap::new();
                for (&(a1, b1), c1) in &poly {
                    for (&(a2, b2), c2) in &delta {
                        *next
                            .entry((a1 + a2, b1 + b2))
                            .or_insert_with(Rational::zero) += c1 * c2;
                    }
                }
                poly = next;
            }
            for ((a, b), c) in poly {
                *out.entry((i, a, b)).or_insert_with(Rational::zero) += c;
            }
        }
        WeightedPoly::new(self.kind, self.ell, Basis::E4E6, out)
    }
}

impl fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(
            f,
            self.terms.iter().rev().map(|(&(i, a, b, m), c)| {
                (
                    c.clone(),
                    vec![
                        ("X".into(), i),
                        ("E4".into(), a),
                        ("E6".into(), b),
                        ("Delta".into(), m),
                    ],
                )
            }),
        )
    }
}

/// Anything the store format can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StoredPoly {
    Weighted(WeightedPoly),
    Delta(DeltaPoly),
    Phi(ClassicalModularPoly),
}

/// Text format: a header `CCR kind=<kind> ell=<l> basis=<basis>` followed
/// by one term per line, sorted by exponents in descending order.
/// Weighted terms are `i a b c`, Delta terms `i a b m c` (E4^a E6^b
/// Delta^m) and Phi terms `i k 0 c` (X^i j^k). Coefficients are integers
/// or `num/den`.
impl StoredPoly {
    pub fn to_store(&self) -> String {
        let mut out = String::new();
        match self {
            StoredPoly::Weighted(p) => {
                out.push_str(&format!(
                    "CCR kind={} ell={} basis={}\n",
                    p.kind,
                    p.ell,
                    p.basis.as_str()
                ));
                for (&(i, a, b), c) in p.terms.iter().rev() {
                    out.push_str(&format!("{i} {a} {b} {}\n", fmt_coeff(c)));
                }
            }
            StoredPoly::Delta(p) => {
                out.push_str(&format!("CCR kind={} ell={} basis=Delta\n", p.kind, p.ell));
                for (&(i, a, b, m), c) in p.terms.iter().rev() {
                    out.push_str(&format!("{i} {a} {b} {m} {}\n", fmt_coeff(c)));
                }
            }
            StoredPoly::Phi(p) => {
                out.push_str(&format!("CCR kind=Phi ell={} basis=j\n", p.ell));
                for (&(i, k), c) in p.terms().iter().rev() {
                    out.push_str(&format!("{i} {k} 0 {c}\n"));
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<StoredPoly, StoreError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| StoreError::Header("empty input".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("CCR") {
            return Err(StoreError::Header("missing CCR tag".into()));
        }
        let mut kind = None;
        let mut ell = None;
        let mut basis = None;
        for kv in fields {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| StoreError::Header(format!("bad field {kv}")))?;
            match k {
                "kind" => kind = Some(v.to_string()),
                "ell" => {
                    ell = Some(
                        v.parse::<u32>()
                            .map_err(|_| StoreError::Header(format!("bad ell {v}")))?,
                    )
                }
                "basis" => basis = Some(v.to_string()),
                _ => return Err(StoreError::Header(format!("unknown field {k}"))),
            }
        }
        let kind = kind.ok_or_else(|| StoreError::Header("missing kind".into()))?;
        let ell = ell.ok_or_else(|| StoreError::Header("missing ell".into()))?;
        let basis = basis.ok_or_else(|| StoreError::Header("missing basis".into()))?;

        let nfields = match (kind.as_str(), basis.as_str()) {
            ("Phi", "j") => 4,
            ("Phi", _) => return Err(StoreError::Header("Phi is stored in basis j".into())),
            (_, "Delta") => 5,
            (_, "E4E6") | (_, "AB") => 4,
            (_, b) => return Err(StoreError::Header(format!("unknown basis {b}"))),
        };
        let mut rows: Vec<(Vec<u32>, Rational)> = Vec::new();
        for (n, line) in lines {
            let bad = |msg: &str| StoreError::Line {
                line: n + 1,
                msg: msg.to_string(),
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != nfields {
                return Err(bad("wrong number of fields"));
            }
            let exps = parts[..nfields - 1]
                .iter()
                .map(|s| s.parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("bad exponent"))?;
            let c = parse_coeff(parts[nfields - 1]).ok_or_else(|| bad("bad coefficient"))?;
            rows.push((exps, c));
        }
        if kind == "Phi" {
            let mut terms = BTreeMap::new();
            for (e, c) in rows {
                if !c.is_integer() || e[2] != 0 {
                    return Err(StoreError::Header("Phi terms are integral `i k 0 c`".into()));
                }
                terms.insert((e[0], e[1]), c.to_integer());
            }
            return Ok(StoredPoly::Phi(ClassicalModularPoly::from_terms(ell, terms)));
        }
        let kind: PolyKind = kind.parse()?;
        if basis == "Delta" {
            let terms = rows
                .into_iter()
                .map(|(e, c)| ((e[0], e[1], e[2], e[3]), c))
                .collect();
            return Ok(StoredPoly::Delta(DeltaPoly { kind, ell, terms }));
        }
        let basis = if basis == "AB" { Basis::AB } else { Basis::E4E6 };
        let terms = rows
            .into_iter()
            .map(|(e, c)| ((e[0], e[1], e[2]), c))
            .collect();
        Ok(StoredPoly::Weighted(WeightedPoly::new(kind, ell, basis, terms)))
    }
}

fn parse_coeff(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u5_ab() -> WeightedPoly {
        let t: BTreeMap<(u32, u32, u32), Rational> = [
            ((6, 0, 0), 1),
            ((4, 1, 0), 20),
            ((3, 0, 1), 160),
            ((2, 2, 0), -80),
            ((1, 1, 1), -128),
            ((0, 0, 2), -80),
        ]
        .into_iter()
        .map(|(k, c)| (k, rat(c)))
        .collect();
        WeightedPoly::new(PolyKind::U, 5, Basis::AB, t)
    }

    #[test]
    fn basis_round_trip() {
        let p = u5_ab();
        let e = p.to_basis(Basis::E4E6);
        assert_eq!(e.coeff(4, 1, 0), rat(-60));
        assert_eq!(e.to_basis(Basis::AB), p);
        assert!(p.is_monic() && p.is_weighted_homogeneous() && p.has_unit_x_weight());
    }

    #[test]
    fn display() {
        assert_eq!(
            u5_ab().to_string(),
            "X^6 + 20*X^4*A + 160*X^3*B - 80*X^2*A^2 - 128*X*A*B - 80*B^2"
        );
    }

    #[test]
    fn store_round_trip() {
        let p = u5_ab().to_basis(Basis::E4E6);
        let text = p.to_store();
        assert!(text.starts_with("CCR kind=U ell=5 basis=E4E6\n6 0 0 1\n"));
        assert_eq!(StoredPoly::parse(&text).unwrap(), StoredPoly::Weighted(p.clone()));
        let d = p.to_delta();
        let text = StoredPoly::Delta(d.clone()).to_store();
        assert_eq!(StoredPoly::parse(&text).unwrap(), StoredPoly::Delta(d.clone()));
        assert_eq!(d.to_weighted(), p);
    }

    #[test]
    fn store_rejects_garbage() {
        assert!(StoredPoly::parse("").is_err());
        assert!(StoredPoly::parse("CCR kind=U ell=5 basis=XY\n").is_err());
        assert!(StoredPoly::parse("CCR kind=U ell=5 basis=AB\n1 2 x\n").is_err());
        assert!(StoredPoly::parse("CCR kind=U ell=5 basis=AB\n1 2 3 1/0\n").is_err());
    }

    #[test]
    fn delta_form_of_discriminant() {
        // E4^3 - E6^2 = 1728 Delta
        let t: BTreeMap<(u32, u32, u32), Rational> =
            [((0, 3, 0), rat(1)), ((0, 0, 2), rat(-1))].into_iter().collect();
        let p = WeightedPoly::new(PolyKind::U, 5, Basis::E4E6, t);
        let d = p.to_delta();
        assert_eq!(d.terms().len(), 1);
        assert_eq!(d.terms()[&(0, 0, 0, 1)], rat(1728));
    }

    #[test]
    fn rescaling_and_valuations() {
        let t: BTreeMap<(u32, u32, u32), Rational> = [
            ((2, 0, 0), rat(1)),
            ((0, 1, 0), Rational::new(1.into(), 144.into())),
        ]
        .into_iter()
        .collect();
        let p = WeightedPoly::new(PolyKind::Ua, 1, Basis::E4E6, t);
        assert_eq!(p.denominator_valuation(2), 4);
        assert_eq!(p.denominator_valuation(3), 2);
        assert!(p.rescale_root(12).is_integral());
    }
}
