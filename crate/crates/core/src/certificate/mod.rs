//! Explicit Nullstellensatz certificates `1 = g_1 f_1 + ... + g_s f_s` found by
//! exact linear algebra under a degree or Newton-polytope cap.

mod poly;
mod solve;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json;
use crate::mixed_volume::normalized_volume;
use crate::polytope::{self, ExponentVector, Support};

pub use poly::{grlex, parse_coefficient, Grlex, SparsePolynomial};
pub use solve::solve_sparse;

/// Largest number of cofactor coefficients a single search will set up.
pub const MAX_UNKNOWNS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub cofactors: Vec<SparsePolynomial>,
    pub cap_used: u64,
    /// `max_i deg(g_i f_i)` over nonzero cofactors.
    pub max_product_degree: u64,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        let cofactors: Vec<Value> = self
            .cofactors
            .iter()
            .map(|g| {
                Value::Array(
                    g.terms()
                        .map(|(e, c)| json!({ "exp": e.coords(), "coeff": json::coefficient(c) }))
                        .collect(),
                )
            })
            .collect();
        json!({
            "cofactors": cofactors,
            "cap_used": self.cap_used,
            "max_product_degree": self.max_product_degree,
        })
    }

    /// Largest cofactor degree, the quantity the subset-form bound caps.
    pub fn max_cofactor_degree(&self) -> u64 {
        self.cofactors
            .iter()
            .filter_map(|g| g.degree())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchMode {
    /// Cofactors range over all monomials with `deg(g_i f_i) <= cap`.
    TotalDegree,
    /// Cofactor supports are the lattice points of `(n! Vol(A u Delta_n) - 1) conv(A u Delta_n)`,
    /// with `A` the given common support or the union of the input supports.
    Newton { common: Option<Support> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Certificate),
    /// No certificate with the allowed cofactor supports. This does not by
    /// itself show that the ideal is proper.
    InfeasibleAtCap {
        cap: u64,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::InfeasibleAtCap { .. } => None,
        }
    }
}

fn check_inputs(fs: &[SparsePolynomial]) -> Result<usize> {
    let first = fs.first().ok_or(Error::Empty("polynomial list"))?;
    let dim = first.dim();
    for f in fs {
        if f.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: f.dim(),
            });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    Ok(dim)
}

/// All exponents of total degree at most `k`, in graded lexicographic order.
pub fn monomials_up_to(dim: usize, k: u64) -> Vec<ExponentVector> {
    fn rec(dim: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if cur.len() == dim {
            out.push(ExponentVector::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e as u32);
            rec(dim, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, k, &mut Vec::with_capacity(dim), &mut out);
    out.sort_by(grlex);
    out
}

/// `binom(k + dim, dim)`, saturating.
fn monomial_count(dim: usize, k: u64) -> u128 {
    let mut c: u128 = 1;
    for i in 1..=dim as u128 {
        c = match c.checked_mul(k as u128 + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    c
}

/// Searches for cofactors with the allowed supports by solving the
/// coefficient-matching system exactly.
pub fn certificate_search(
    fs: &[SparsePolynomial],
    mode: &SearchMode,
    cap: u64,
) -> Result<SearchOutcome> {
    let dim = check_inputs(fs)?;
    let (supports, cap_used): (Vec<Vec<ExponentVector>>, u64) = match mode {
        SearchMode::TotalDegree => {
            let needed: u128 = fs
                .iter()
                .map(|f| {
                    cap.checked_sub(f.degree().unwrap())
                        .map_or(0, |k| monomial_count(dim, k))
                })
                .fold(0u128, u128::saturating_add);
            if needed > MAX_UNKNOWNS as u128 {
                return Err(Error::LimitExceeded(format!(
                    "certificate search at cap {cap} needs {needed} unknowns (limit {MAX_UNKNOWNS})"
                )));
            }
            let supports = fs
                .iter()
                .map(|f| {
                    let d = f.degree().unwrap();
                    if cap < d {
                        Vec::new()
                    } else {
                        monomials_up_to(dim, cap - d)
                    }
                })
                .collect();
            (supports, cap)
        }
        SearchMode::Newton { common } => {
            let (pts, mult) = newton_cofactor_support(fs, common.as_ref())?;
            (vec![pts; fs.len()], mult)
        }
    };
    solve_with_supports(fs, &supports, cap_used)
}

/// Lattice points of the Newton cap and its multiplier.
pub fn newton_cofactor_support(
    fs: &[SparsePolynomial],
    common: Option<&Support>,
) -> Result<(Vec<ExponentVector>, u64)> {
    let dim = check_inputs(fs)?;
    let supports = fs.iter().map(|f| f.support()).collect::<Result<Vec<_>>>()?;
    let common = match common {
        Some(a) => {
            if supports.iter().any(|s| !s.is_subset(a)) {
                return Err(Error::NotUnmixed);
            }
            a.clone()
        }
        None => supports[1..]
            .iter()
            .try_fold(supports[0].clone(), |acc, s| acc.union(s))?,
    };
    let full = common.union(&polytope::standard_simplex(dim)?)?;
    let mult: num_bigint::BigInt = normalized_volume(&full) - 1u32;
    let mult = mult
        .to_u32()
        .ok_or_else(|| Error::OutOfRange(format!("Newton multiplier {mult} too large")))?;
    let mut pts = if mult == 0 {
        vec![ExponentVector::zero(dim)]
    } else {
        polytope::lattice_points(&polytope::dilate_support(&full, mult)?)?
    };
    pts.sort_by(grlex);
    Ok((pts, mult as u64))
}

fn solve_with_supports(
    fs: &[SparsePolynomial],
    supports: &[Vec<ExponentVector>],
    cap_used: u64,
) -> Result<SearchOutcome> {
    let dim = fs[0].dim();
    let unknowns: usize = supports.iter().map(Vec::len).sum();
    if unknowns > MAX_UNKNOWNS {
        return Err(Error::LimitExceeded(format!(
            "certificate search at cap {cap_used} needs {unknowns} unknowns (limit {MAX_UNKNOWNS})"
        )));
    }
    // column j <-> (polynomial i, exponent beta), ordered by i then grlex
    let mut columns: Vec<(usize, &ExponentVector)> = Vec::new();
    for (i, s) in supports.iter().enumerate() {
        columns.extend(s.iter().map(|b| (i, b)));
    }
    let mut rows: BTreeMap<Grlex, Vec<(usize, BigRational)>> = BTreeMap::new();
    for (col, &(i, beta)) in columns.iter().enumerate() {
        for (alpha, c) in fs[i].terms() {
            rows.entry(Grlex(beta.add(alpha)))
                .or_default()
                .push((col, c.clone()));
        }
    }
    let constant = Grlex(ExponentVector::zero(dim));
    if !rows.contains_key(&constant) {
        return Ok(SearchOutcome::InfeasibleAtCap { cap: cap_used });
    }
    let system: Vec<(Vec<(usize, BigRational)>, BigRational)> = rows
        .into_iter()
        .map(|(m, entries)| {
            let rhs = if m == constant {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            };
            (entries, rhs)
        })
        .collect();
    let Some(x) = solve_sparse(columns.len(), system) else {
        return Ok(SearchOutcome::InfeasibleAtCap { cap: cap_used });
    };

    let mut per_poly: Vec<Vec<(ExponentVector, BigRational)>> = vec![Vec::new(); fs.len()];
    for (&(i, beta), v) in columns.iter().zip(x) {
        per_poly[i].push((beta.clone(), v));
    }
    let cofactors = per_poly
        .into_iter()
        .map(|t| SparsePolynomial::from_terms(dim, t))
        .collect::<Result<Vec<_>>>()?;
    let max_product_degree = cofactors
        .iter()
        .zip(fs)
        .filter_map(|(g, f)| Some(g.degree()? + f.degree()?))
        .max()
        .unwrap_or(0);
    let cert = Certificate {
        cofactors,
        cap_used,
        max_product_degree,
    };
    if !verify_certificate(fs, &cert)? {
        return Err(Error::CrossCheck(
            "solver returned a certificate that does not expand to 1".into(),
        ));
    }
    Ok(SearchOutcome::Found(cert))
}

/// Expands `sum g_i f_i` exactly and compares with the constant `1`.
pub fn verify_certificate(fs: &[SparsePolynomial], cert: &Certificate) -> Result<bool> {
    if fs.len() != cert.cofactors.len() {
        return Err(Error::Arity {
            expected: fs.len(),
            found: cert.cofactors.len(),
        });
    }
    let Some(first) = fs.first() else {
        return Ok(false);
    };
    let mut total = SparsePolynomial::zero(first.dim());
    for (f, g) in fs.iter().zip(&cert.cofactors) {
        total = total.add(&g.multiply(f)?);
    }
    Ok(total.is_one())
}

/// Smallest total-degree cap in `[0, max_cap]` admitting a certificate.
///
/// Feasibility is monotone in the cap, so caps `0, 1, 2, 4, ...` are probed
/// and the bracketing interval is bisected.
pub fn minimal_certificate_degree(
    fs: &[SparsePolynomial],
    max_cap: u64,
) -> Result<Option<Certificate>> {
    check_inputs(fs)?;
    let run = |cap: u64| certificate_search(fs, &SearchMode::TotalDegree, cap);
    let mut lo_infeasible: Option<u64> = None;
    let mut probe = 0u64;
    let (mut hi, mut best) = loop {
        match run(probe)? {
            SearchOutcome::Found(c) => break (probe, c),
            SearchOutcome::InfeasibleAtCap { .. } => {
                lo_infeasible = Some(probe);
                if probe >= max_cap {
                    return Ok(None);
                }
                probe = if probe == 0 {
                    1
                } else {
                    (probe * 2).min(max_cap)
                };
            }
        }
    };
    let mut lo = lo_infeasible.map_or(0, |l| l + 1);
    // invariant: hi feasible, everything below lo infeasible
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match run(mid)? {
            SearchOutcome::Found(c) => {
                hi = mid;
                best = c;
            }
            SearchOutcome::InfeasibleAtCap { .. } => lo = mid + 1,
        }
    }
    Ok(Some(best))
}
