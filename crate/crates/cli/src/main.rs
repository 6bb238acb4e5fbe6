mod store;

use std::path::PathBuf;
use std::process::ExitCode;

use ccr_core::field::{is_probable_prime, CurveParams, FieldError, Fp, PrimeField, ReducedPoly};
use ccr_core::isogeny::{
    atkin_step, elkies_step, AtkinPolys, ElkiesPolys, IsogenyError, Validation,
};
use ccr_core::modpoly::{ClassicalModularPoly, PolyKind, StoredPoly};
use ccr_core::qseries::{expand, FormName};
use ccr_symbolic::{derive, Case};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};

use store::{Kind, StoreBasis};

#[derive(Debug)]
pub enum CliError {
    NoResult(String),
    Usage(String),
    Verify(String),
    Degenerate(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::NoResult(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Verify(_) => 3,
            CliError::Degenerate(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::NoResult(m)
            | CliError::Usage(m)
            | CliError::Verify(m)
            | CliError::Degenerate(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "ccr", about = "CCR modular polynomials and isogeny formulas")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    U,
    V,
    W,
    Ua,
    Phi,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    #[value(name = "E4E6")]
    E4E6,
    #[value(name = "AB")]
    AB,
    #[value(name = "Delta")]
    Delta,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    E4t,
    E6t,
    #[value(name = "a-sigma")]
    ASigma,
    #[value(name = "a-e4t")]
    AE4t,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a polynomial and write it in the store format.
    Build {
        #[arg(long)]
        ell: u32,
        #[arg(long, value_enum, ignore_case = true)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "AB")]
        basis: BasisArg,
        /// Output file; stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Rebuild even if cached and require the cached copy to match.
        #[arg(long)]
        rebuild: bool,
    },
    /// Elkies step: isogenous curves from the roots of U_l.
    Elkies {
        #[command(flatten)]
        curve: CurveArgs,
        /// Skip the V, W and Phi checks.
        #[arg(long)]
        no_validate: bool,
    },
    /// Atkin step for l = 11 mod 12 from the roots of U^a_l.
    Atkin {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        no_validate: bool,
    },
    /// Re-derive the closed formulas symbolically.
    VerifySymbolic {
        #[arg(long, value_enum, default_value = "all")]
        case: CaseArg,
    },
    /// Print the q-expansion of a named form.
    Series {
        /// E2, E4, E6, Delta, j, F_n (or F with --ell), sigma1 or f.
        #[arg(long)]
        name: String,
        #[arg(long)]
        ell: Option<u32>,
        /// Number of coefficients.
        #[arg(long, default_value_t = 10)]
        prec: i64,
    },
    /// Quick end-to-end check on the two worked examples.
    Selftest,
}

#[derive(clap::Args)]
struct CurveArgs {
    #[arg(long)]
    p: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long)]
    ell: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory searched for store files before the cache.
    #[arg(long)]
    poly_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Build {
            ell,
            kind,
            basis,
            out,
            rebuild,
        } => cmd_build(ell, kind, basis, out, rebuild),
        Cmd::Elkies { curve, no_validate } => cmd_elkies(&curve, !no_validate),
        Cmd::Atkin { curve, no_validate } => cmd_atkin(&curve, !no_validate),
        Cmd::VerifySymbolic { case } => cmd_verify(case),
        Cmd::Series { name, ell, prec } => cmd_series(&name, ell, prec),
        Cmd::Selftest => cmd_selftest(),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn kind_of(k: KindArg) -> Kind {
    match k {
        KindArg::U => Kind::Poly(PolyKind::U),
        KindArg::V => Kind::Poly(PolyKind::V),
        KindArg::W => Kind::Poly(PolyKind::W),
        KindArg::Ua => Kind::Poly(PolyKind::Ua),
        KindArg::Phi => Kind::Phi,
    }
}

fn cmd_build(
    ell: u32,
    kind: KindArg,
    basis: BasisArg,
    out: Option<PathBuf>,
    rebuild: bool,
) -> Result<(), CliError> {
    let basis = match basis {
        BasisArg::E4E6 => StoreBasis::E4E6,
        BasisArg::AB => StoreBasis::AB,
        BasisArg::Delta => StoreBasis::Delta,
    };
    let text = store::load(kind_of(kind), ell, basis, None, rebuild)?;
    match out {
        Some(path) => std::fs::write(&path, &text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Setup {
    field: PrimeField,
    curve: CurveParams,
}

fn setup(c: &CurveArgs) -> Result<Setup, CliError> {
    let p: BigUint = c
        .p
        .parse()
        .map_err(|_| CliError::Usage(format!("bad p {}", c.p)))?;
    let field = PrimeField::new(p).map_err(|e| match e {
        FieldError::NotPrime(_) => CliError::Usage("p not prime".into()),
        e => CliError::Usage(e.to_string()),
    })?;
    let int = |s: &str| -> Result<Fp, CliError> {
        let v: BigInt = s.parse().map_err(|_| CliError::Usage(format!("bad integer {s}")))?;
        Ok(field.from_bigint(&v))
    };
    let curve = CurveParams::new(&field, int(&c.a)?, int(&c.b)?)
        .map_err(|_| CliError::Usage("singular curve".into()))?;
    if c.ell < 5 || !is_probable_prime(&c.ell.into()) {
        return Err(CliError::Usage(format!("ell = {} is not a prime >= 5", c.ell)));
    }
    if field.modulus() == &BigUint::from(c.ell) {
        return Err(CliError::Usage("p = ell".into()));
    }
    Ok(Setup { field, curve })
}

fn reduced(kind: PolyKind, c: &CurveArgs, f: &PrimeField) -> Result<ReducedPoly, CliError> {
    let text = store::load(Kind::Poly(kind), c.ell, StoreBasis::AB, c.poly_dir.as_deref(), false)?;
    match store::parse(&text)? {
        StoredPoly::Weighted(p) if p.kind == kind && p.ell == c.ell => ReducedPoly::new(&p, f)
            .map_err(|e| CliError::Usage(format!("{kind}_{}: {e}", c.ell))),
        _ => Err(CliError::Verify(format!("store file for {kind}_{} has the wrong contents", c.ell))),
    }
}

fn phi(c: &CurveArgs) -> Result<Option<ClassicalModularPoly>, CliError> {
    if c.ell > 13 {
        return Ok(None);
    }
    let text = store::load(Kind::Phi, c.ell, StoreBasis::AB, c.poly_dir.as_deref(), false)?;
    match store::parse(&text)? {
        StoredPoly::Phi(p) if p.ell == c.ell => Ok(Some(p)),
        _ => Err(CliError::Verify(format!("store file for Phi_{} has the wrong contents", c.ell))),
    }
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "skipped",
    }
}

fn flags(v: &Validation) -> String {
    format!(
        "v_root={} w_root={} phi_match={}",
        flag(v.v_root),
        flag(v.w_root),
        flag(v.phi_match)
    )
}

fn engine_error(e: IsogenyError) -> CliError {
    match e {
        IsogenyError::Unsupported(m) => CliError::Usage(m),
        e => CliError::Verify(e.to_string()),
    }
}

fn cmd_elkies(c: &CurveArgs, validate: bool) -> Result<(), CliError> {
    let Setup { field, curve } = setup(c)?;
    let polys = ElkiesPolys {
        u: reduced(PolyKind::U, c, &field)?,
        v: if validate { Some(reduced(PolyKind::V, c, &field)?) } else { None },
        w: if validate { Some(reduced(PolyKind::W, c, &field)?) } else { None },
        phi: if validate { phi(c)? } else { None },
    };
    let rep = elkies_step(&curve, c.ell, &polys, c.seed).map_err(engine_error)?;
    println!("p={} A={} B={} ell={}", field.modulus(), curve.a(), curve.b(), c.ell);
    let roots: Vec<String> = rep.roots.iter().map(|r| r.to_string()).collect();
    println!("roots=[{}]", roots.join(","));
    if rep.is_atkin() {
        return Err(CliError::NoResult(format!("Atkin prime: U_{} has no roots", c.ell)));
    }
    for r in &rep.results {
        println!(
            "sigma={} Astar={} Bstar={} E4t={} E6t={} sigma0={} sigma2={} sigma3={} {}",
            r.sigma,
            r.a_star,
            r.b_star,
            r.e4t,
            r.e6t,
            r.sigma0,
            r.sigma2,
            r.sigma3,
            flags(&r.validated)
        );
    }
    for (r, e) in &rep.diagnostics {
        println!("sigma={r} error={e}");
    }
    if rep.results.is_empty() {
        return Err(CliError::Degenerate("degenerate derivative at every root".into()));
    }
    if !rep.results.iter().any(|r| r.validated.passed()) {
        return Err(CliError::Verify("no result passed validation".into()));
    }
    Ok(())
}

fn opt(v: &Option<Fp>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn cmd_atkin(c: &CurveArgs, validate: bool) -> Result<(), CliError> {
    if c.ell % 12 != 11 {
        return Err(CliError::Usage(format!("ell = {} is not 11 mod 12", c.ell)));
    }
    let Setup { field, curve } = setup(c)?;
    let polys = AtkinPolys {
        ua: reduced(PolyKind::Ua, c, &field)?,
        v: if validate { Some(reduced(PolyKind::V, c, &field)?) } else { None },
        w: if validate { Some(reduced(PolyKind::W, c, &field)?) } else { None },
        phi: if validate { phi(c)? } else { None },
    };
    let rep = atkin_step(&curve, c.ell, &polys, c.seed).map_err(engine_error)?;
    println!("p={} A={} B={} ell={}", field.modulus(), curve.a(), curve.b(), c.ell);
    let roots: Vec<String> = rep.roots.iter().map(|r| r.to_string()).collect();
    println!("roots=[{}]", roots.join(","));
    if rep.roots.is_empty() {
        return Err(CliError::NoResult(format!("Atkin prime: U^a_{} has no roots", c.ell)));
    }
    let mut good = 0;
    for b in &rep.branches {
        let mut line = format!(
            "f={} sigma={} E4t={} Bstar={} Astar={} E6t={} gcd_degree={} {}",
            b.f,
            opt(&b.sigma),
            opt(&b.e4t),
            opt(&b.b_star),
            opt(&b.a_star),
            opt(&b.e6t),
            b.gcd_degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
            flags(&b.validated)
        );
        if let Some(e) = &b.error {
            line.push_str(&format!(" error={e}"));
        }
        println!("{line}");
        if b.b_star.is_some() && b.validated.passed() {
            good += 1;
        }
    }
    if good > 0 {
        return Ok(());
    }
    if rep.branches.iter().all(|b| b.b_star.is_none()) {
        return Err(CliError::Degenerate("no branch produced B*".into()));
    }
    Err(CliError::Verify("no branch passed validation".into()))
}

fn cmd_verify(case: CaseArg) -> Result<(), CliError> {
    let cases: Vec<Case> = match case {
        CaseArg::E4t => vec![Case::E4t],
        CaseArg::E6t => vec![Case::E6t],
        CaseArg::ASigma => vec![Case::AtkinSigma],
        CaseArg::AE4t => vec![Case::AtkinE4t],
        CaseArg::All => Case::ALL.to_vec(),
    };
    let mut summary = Vec::new();
    for c in cases {
        match derive(c) {
            Ok(d) => {
                print!("{d}");
                summary.push(format!("PASS {}", c.as_str()));
            }
            Err(e) => {
                for s in &summary {
                    println!("{s}");
                }
                println!("FAIL {}", c.as_str());
                return Err(CliError::Verify(e.to_string()));
            }
        }
    }
    for s in &summary {
        println!("{s}");
    }
    Ok(())
}

fn form_name(name: &str, ell: Option<u32>) -> Result<FormName, CliError> {
    let need = |what: &str| {
        ell.ok_or_else(|| CliError::Usage(format!("{what} needs --ell")))
    };
    Ok(match name {
        "E2" => FormName::E2,
        "E4" => FormName::E4,
        "E6" => FormName::E6,
        "Delta" => FormName::Delta,
        "j" => FormName::J,
        "F" => FormName::F(need("F")?),
        "sigma1" => FormName::Sigma1(need("sigma1")?),
        "f" => {
            let l = need("f")?;
            if l % 12 != 11 {
                return Err(CliError::Usage(format!("f needs ell = 11 mod 12, got {l}")));
            }
            FormName::EtaSquaredProduct(l)
        }
        other => match other.strip_prefix("F_").map(str::parse::<u32>) {
            Some(Ok(n)) => FormName::F(n),
            _ => return Err(CliError::Usage(format!("unknown series {other}"))),
        },
    })
}

fn cmd_series(name: &str, ell: Option<u32>, prec: i64) -> Result<(), CliError> {
    let form = form_name(name, ell)?;
    if prec < 1 {
        return Err(CliError::Usage("--prec must be positive".into()));
    }
    let s = expand(form, prec).map_err(|e| CliError::Usage(e.to_string()))?;
    for (k, c) in s.coeffs().iter().enumerate() {
        let e = s.lead() + k as i64 * s.step() as i64;
        if e >= prec {
            break;
        }
        println!("{e} {c}");
    }
    Ok(())
}

fn cmd_selftest() -> Result<(), CliError> {
    let check = |name: &str, ok: bool| -> Result<(), CliError> {
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        if ok {
            Ok(())
        } else {
            Err(CliError::Verify(format!("selftest failed: {name}")))
        }
    };
    let f = PrimeField::from_u64(1009).map_err(|e| CliError::Verify(e.to_string()))?;
    let curve = CurveParams::from_i64(&f, 1, 3).map_err(|e| CliError::Verify(e.to_string()))?;
    let polys = ElkiesPolys::build(5, &f, true).map_err(engine_error)?;
    let rep = elkies_step(&curve, 5, &polys, 0).map_err(engine_error)?;
    let hit = rep.results.iter().any(|r| {
        r.sigma == f.elem(584) && r.a_star == f.elem(441) && r.b_star == f.elem(997)
    });
    check("elkies l=5 sigma=584 Astar=441 Bstar=997", hit)?;
    let polys = AtkinPolys::build(11, &f, false).map_err(engine_error)?;
    let rep = atkin_step(&curve, 11, &polys, 0).map_err(engine_error)?;
    let hit = rep.branches.iter().any(|b| {
        b.f == f.elem(65) && b.sigma == Some(f.elem(75)) && b.b_star == Some(f.elem(460))
    });
    check("atkin l=11 f=65 sigma=75 Bstar=460", hit)?;
    check("symbolic e4t", derive(Case::E4t).is_ok())?;
    Ok(())
}
