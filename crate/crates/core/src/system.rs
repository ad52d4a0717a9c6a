//! JSON system descriptions:
//! `{"n": 2, "supports": [[[0,0],[1,0]], ...], "polynomials": [{"terms": [{"exp": [1,0], "coeff": "3/2"}]}], "degrees": [..]}`.
//! `supports` may be omitted when `polynomials` is given.

use serde::Deserialize;

use crate::bounds::SystemSpec;
use crate::certificate::{parse_coefficient, SparsePolynomial};
use crate::error::{Error, Result};
use crate::polytope::{ExponentVector, Support};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    exp: Vec<i64>,
    coeff: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolynomial {
    terms: Vec<RawTerm>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    n: usize,
    #[serde(default)]
    supports: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default)]
    polynomials: Option<Vec<RawPolynomial>>,
    #[serde(default)]
    degrees: Option<Vec<u64>>,
}

/// A parsed and validated system description.
#[derive(Debug, Clone)]
pub struct SystemFile {
    pub n: usize,
    pub supports: Vec<Support>,
    pub polynomials: Option<Vec<SparsePolynomial>>,
    pub degrees: Option<Vec<u64>>,
}

fn polynomial(n: usize, raw: &RawPolynomial) -> Result<SparsePolynomial> {
    let terms = raw
        .terms
        .iter()
        .map(|t| {
            if t.exp.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: t.exp.len(),
                });
            }
            Ok((
                ExponentVector::from_signed(&t.exp)?,
                parse_coefficient(&t.coeff)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let p = SparsePolynomial::from_terms(n, terms)?;
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p)
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<SystemFile> {
        let raw: RawSystem =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let n = raw.n;
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let polynomials = raw
            .polynomials
            .as_ref()
            .map(|ps| {
                ps.iter()
                    .map(|p| polynomial(n, p))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let declared = raw
            .supports
            .as_ref()
            .map(|ss| {
                ss.iter()
                    .map(|rows| Support::from_rows(n, rows))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        let supports = match (declared, &polynomials) {
            (Some(declared), Some(ps)) => {
                if declared.len() != ps.len() {
                    return Err(Error::Arity {
                        expected: ps.len(),
                        found: declared.len(),
                    });
                }
                for (i, (a, p)) in declared.iter().zip(ps).enumerate() {
                    if *a != p.support()? {
                        return Err(Error::Malformed(format!(
                            "support {} does not match the terms of polynomial {}",
                            i + 1,
                            i + 1
                        )));
                    }
                }
                declared
            }
            (Some(declared), None) => declared,
            (None, Some(ps)) => ps.iter().map(|p| p.support()).collect::<Result<Vec<_>>>()?,
            (None, None) => {
                return Err(Error::Malformed(
                    "either supports or polynomials is required".into(),
                ))
            }
        };
        if supports.is_empty() {
            return Err(Error::Empty("system"));
        }
        if let Some(d) = &raw.degrees {
            if d.len() != supports.len() {
                return Err(Error::Arity {
                    expected: supports.len(),
                    found: d.len(),
                });
            }
        }
        Ok(SystemFile {
            n,
            supports,
            polynomials,
            degrees: raw.degrees,
        })
    }

    pub fn spec(&self) -> Result<SystemSpec> {
        match &self.degrees {
            Some(d) => SystemSpec::with_degrees(self.n, self.supports.clone(), d.clone()),
            None => SystemSpec::new(self.n, self.supports.clone()),
        }
    }
}
