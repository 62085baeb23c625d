//! Built-in Kochen-Specker direction catalogs and direction-set file I/O.
//!
//! The shipped catalogs are the classic small uncolorable sets: the Peres
//! 33-ray set over {0, +-1, +-sqrt2}, a 31-direction set over {0, +-1, +-2}
//! after Conway and Kochen's record, and a second 33-direction Q(sqrt2) set
//! after Bub. The latter two are uncolorability-preserving reconstructions
//! (see examples/gen_catalogs.rs); their orthogonality structure is frozen by
//! regression tests and their defining property — no coloring function
//! exists — is proved by the solver on every test run.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::geometry::{DirectionSet, DirectionSetFile, GeometryError, LoadedDirectionSet};
use crate::solver::Verdict;

/// Environment variable that redirects builtin catalog lookups to a
/// directory of {name}.json files.
pub const CATALOG_DIR_ENV: &str = "KSCOLOR_CATALOG_DIR";

pub const BUILTIN_NAMES: [&str; 3] = ["peres33", "ck31", "bub33"];

const PERES33_JSON: &str = include_str!("../../../catalogs/peres33.json");
const CK31_JSON: &str = include_str!("../../../catalogs/ck31.json");
const BUB33_JSON: &str = include_str!("../../../catalogs/bub33.json");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog {name}; available: {}", BUILTIN_NAMES.join(", "))]
    UnknownName { name: String },
    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A named direction set with its literature citation and the verdict the
/// solver is expected to reach on it.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub citation: String,
    pub directions: DirectionSet,
    pub expected_verdict: Verdict,
}

fn citation(name: &str) -> &'static str {
    match name {
        "peres33" => {
            "A. Peres, Quantum Theory: Concepts and Methods, Kluwer (2002), p. 114: \
             33 rays over {0, +-1, +-sqrt2}"
        }
        "ck31" => {
            "J. H. Conway and S. Kochen's 31-ray record, cited in A. Peres, Quantum \
             Theory: Concepts and Methods, Kluwer (2002), p. 198; reconstructed \
             presentation over {0, +-1, +-2}"
        }
        "bub33" => {
            "J. Bub, Schuette's tautology and the Kochen-Specker theorem, Found. \
             Phys. 26, 787-806 (1996); reconstructed 33-ray Q(sqrt2) presentation"
        }
        _ => unreachable!("citation requested for unknown catalog"),
    }
}

/// Returns a built-in catalog, honoring the KSCOLOR_CATALOG_DIR override.
pub fn builtin(name: &str) -> Result<CatalogEntry, CatalogError> {
    if let Ok(dir) = std::env::var(CATALOG_DIR_ENV) {
        return builtin_from_dir(Path::new(&dir), name);
    }
    let json = match name {
        "peres33" => PERES33_JSON,
        "ck31" => CK31_JSON,
        "bub33" => BUB33_JSON,
        _ => {
            return Err(CatalogError::UnknownName {
                name: name.to_string(),
            })
        }
    };
    let loaded = parse_json(json, &format!("builtin:{name}"))?;
    Ok(entry_from(name, loaded.set))
}

/// Builtin lookup against an explicit directory of {name}.json files.
pub fn builtin_from_dir(dir: &Path, name: &str) -> Result<CatalogEntry, CatalogError> {
    if !BUILTIN_NAMES.contains(&name) {
        return Err(CatalogError::UnknownName {
            name: name.to_string(),
        });
    }
    let loaded = load(&dir.join(format!("{name}.json")))?;
    Ok(entry_from(name, loaded.set))
}

fn entry_from(name: &str, directions: DirectionSet) -> CatalogEntry {
    CatalogEntry {
        name: name.to_string(),
        citation: citation(name).to_string(),
        directions,
        expected_verdict: Verdict::Uncolorable,
    }
}

fn parse_json(json: &str, path: &str) -> Result<LoadedDirectionSet, CatalogError> {
    let file: DirectionSetFile =
        serde_json::from_str(json).map_err(|source| CatalogError::Parse {
            path: path.to_string(),
            source,
        })?;
    Ok(file.into_set()?)
}

/// Loads a direction-set JSON file; non-canonical directions are accepted
/// and reported in the returned warnings.
pub fn load(path: &Path) -> Result<LoadedDirectionSet, CatalogError> {
    let text = fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_json(&text, &path.display().to_string())
}

/// Saves a direction set in the JSON interchange format (canonical forms).
pub fn save(ds: &DirectionSet, name: &str, path: &Path) -> Result<(), CatalogError> {
    let file = ds.to_file(name);
    let json = serde_json::to_string_pretty(&file).expect("direction sets serialize");
    fs::write(path, json + "\n").map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}
