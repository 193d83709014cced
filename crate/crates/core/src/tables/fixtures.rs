//! The bundled table of decomposable δ-polynomials of degree at most 12.

use serde::Deserialize;
use thiserror::Error;

use super::param::{parse_param_poly, ParamPolynomial, Var};
use crate::syntax::ParseError;

/// The fixture file shipped with the crate.
pub const BUNDLED: &str = include_str!("../../data/reference_tables.toml");

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("fixture file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unsupported fixture schema version {0}")]
    Version(u32),
    #[error("entry {index}: {source}")]
    Expr { index: usize, source: ParseError },
    #[error("entry {index}: unknown parameter '{name}'")]
    Param { index: usize, name: String },
    #[error("entry {index}: {message}")]
    Shape { index: usize, message: String },
    #[error("reading fixtures: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Deserialize)]
struct RawFile {
    version: u32,
    #[serde(default)]
    entry: Vec<RawEntry>,
}

#[derive(Debug, Clone, Deserialize)]
struct RawEntry {
    table: u32,
    degree: usize,
    e: usize,
    descent: usize,
    sequences: Vec<Vec<usize>>,
    params: Vec<String>,
    lhs: String,
    chains: Vec<Vec<String>>,
}

/// One transcribed family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub table: u32,
    pub degree: usize,
    pub e: usize,
    pub descent: usize,
    pub sequences: Vec<Vec<usize>>,
    pub params: Vec<Var>,
    pub lhs: ParamPolynomial,
    pub chains: Vec<Vec<ParamPolynomial>>,
}

pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>, FixtureError> {
    let raw: RawFile = toml::from_str(text)?;
    if raw.version != SCHEMA_VERSION {
        return Err(FixtureError::Version(raw.version));
    }
    raw.entry
        .into_iter()
        .enumerate()
        .map(|(index, r)| {
            let expr = |s: &str| {
                parse_param_poly(s).map_err(|source| FixtureError::Expr { index, source })
            };
            let params = r
                .params
                .iter()
                .map(|n| {
                    Var::from_name(n).ok_or_else(|| FixtureError::Param {
                        index,
                        name: n.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let lhs = expr(&r.lhs)?;
            let chains = r
                .chains
                .iter()
                .map(|c| c.iter().map(|s| expr(s)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            if chains.len() != r.sequences.len() {
                return Err(FixtureError::Shape {
                    index,
                    message: "one chain per sequence expected".into(),
                });
            }
            Ok(Fixture {
                table: r.table,
                degree: r.degree,
                e: r.e,
                descent: r.descent,
                sequences: r.sequences,
                params,
                lhs,
                chains,
            })
        })
        .collect()
}

pub fn bundled_fixtures() -> Vec<Fixture> {
    parse_fixtures(BUNDLED).expect("bundled fixtures are well formed")
}

pub fn load_fixtures(path: &std::path::Path) -> Result<Vec<Fixture>, FixtureError> {
    parse_fixtures(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_parses() {
        let f = bundled_fixtures();
        assert_eq!(f.len(), 60);
        assert!(f.iter().all(|x| x.e + x.descent == x.degree || x.e == 0));
    }

    #[test]
    fn rejects_bad_version() {
        assert!(matches!(
            parse_fixtures("version = 2\n"),
            Err(FixtureError::Version(2))
        ));
    }
}
