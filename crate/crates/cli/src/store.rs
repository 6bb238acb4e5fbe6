//! On-disk polynomial cache keyed by (kind, ell, basis).

use std::fs;
use std::path::{Path, PathBuf};

use ccr_core::modpoly::{build, build_classical_phi, Basis, BuildError, PolyKind, StoredPoly};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Poly(PolyKind),
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StoreBasis {
    E4E6,
    AB,
    Delta,
}

impl StoreBasis {
    fn as_str(self) -> &'static str {
        match self {
            StoreBasis::E4E6 => "E4E6",
            StoreBasis::AB => "AB",
            StoreBasis::Delta => "Delta",
        }
    }
}

pub fn file_name(kind: Kind, ell: u32, basis: StoreBasis) -> String {
    match kind {
        Kind::Phi => format!("Phi_{ell}_j.ccr"),
        Kind::Poly(k) => format!("{}_{ell}_{}.ccr", k.as_str(), basis.as_str()),
    }
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os("CCR_CACHE_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".ccr-cache"))
}

fn build_error(e: BuildError) -> CliError {
    match e {
        BuildError::InvalidEll { .. } => CliError::Usage(e.to_string()),
        e => CliError::Verify(e.to_string()),
    }
}

/// Builds the polynomial and renders it in the store format.
pub fn render(kind: Kind, ell: u32, basis: StoreBasis) -> Result<String, CliError> {
    let stored = match kind {
        Kind::Phi => StoredPoly::Phi(build_classical_phi(ell).map_err(build_error)?),
        Kind::Poly(k) => {
            let p = build(k, ell).map_err(build_error)?;
            match basis {
                StoreBasis::E4E6 => StoredPoly::Weighted(p.to_basis(Basis::E4E6)),
                StoreBasis::AB => StoredPoly::Weighted(p.to_basis(Basis::AB)),
                StoreBasis::Delta => StoredPoly::Delta(p.to_basis(Basis::E4E6).to_delta()),
            }
        }
    };
    Ok(stored.to_store())
}

fn read(path: &Path) -> Option<String> {
    fs::read_to_string(path).ok()
}

fn write_cache(path: &Path, text: &str) {
    let ok = path
        .parent()
        .map(|d| fs::create_dir_all(d).is_ok())
        .unwrap_or(true)
        && fs::write(path, text).is_ok();
    if !ok {
        eprintln!("warning: could not write cache file {}", path.display());
    }
}

/// Store text from `poly_dir`, then the cache, else built and cached.
/// With `rebuild`, a cached copy must be byte-identical to the fresh build.
pub fn load(
    kind: Kind,
    ell: u32,
    basis: StoreBasis,
    poly_dir: Option<&Path>,
    rebuild: bool,
) -> Result<String, CliError> {
    let name = file_name(kind, ell, basis);
    if !rebuild {
        if let Some(text) = poly_dir.and_then(|d| read(&d.join(&name))) {
            return Ok(text);
        }
    }
    let cached = cache_dir().join(&name);
    let old = read(&cached);
    if let (Some(text), false) = (&old, rebuild) {
        return Ok(text.clone());
    }
    let text = render(kind, ell, basis)?;
    match old {
        Some(old) if old != text => {
            return Err(CliError::Verify(format!(
                "rebuilt {name} differs from the cached copy {}",
                cached.display()
            )))
        }
        Some(_) => {}
        None => write_cache(&cached, &text),
    }
    Ok(text)
}

pub fn parse(text: &str) -> Result<StoredPoly, CliError> {
    StoredPoly::parse(text).map_err(|e| CliError::Verify(format!("bad store file: {e}")))
}
