//! Sparse Nullstellensatz and Noether-exponent bounds computed from supports.
//!
//! All values are exact integers. The mixed bounds are minima over several
//! candidates; ties resolve to the first candidate in enumeration order.

mod classical;
mod report;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::mixed_volume::{self, map_maybe_parallel, SupportTuple};
use crate::polytope::{self, ExponentVector, RationalPolytope, Support};

pub use classical::{classical_bounds, Caps, Comparator};
pub use report::{bound_report, BoundReport, ReportOptions};

/// Largest number of subsets a single minimization may enumerate.
pub const MAX_SUBSETS: u128 = 1_000_000;

/// Supports of `f_1, ..., f_s` in dimension `n`, with their degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSpec {
    dim: usize,
    supports: Vec<Support>,
    degrees: Vec<u64>,
}

impl SystemSpec {
    /// Degrees default to the support degrees.
    pub fn new(dim: usize, supports: Vec<Support>) -> Result<Self> {
        let degrees = supports.iter().map(polytope::degree).collect();
        Self::with_degrees(dim, supports, degrees)
    }

    /// Explicit degrees may exceed, but never undercut, the support degree.
    pub fn with_degrees(dim: usize, supports: Vec<Support>, degrees: Vec<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if supports.is_empty() {
            return Err(Error::Empty("system"));
        }
        if degrees.len() != supports.len() {
            return Err(Error::Arity {
                expected: supports.len(),
                found: degrees.len(),
            });
        }
        for (s, &d) in supports.iter().zip(&degrees) {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.dim(),
                });
            }
            let support = polytope::degree(s);
            if d < support {
                return Err(Error::DegreeBelowSupport { given: d, support });
            }
        }
        Ok(SystemSpec {
            dim,
            supports,
            degrees,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn supports(&self) -> &[Support] {
        &self.supports
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `d = max d_i`.
    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Union of all supports.
    pub fn union_support(&self) -> Support {
        self.supports[1..]
            .iter()
            .fold(self.supports[0].clone(), |acc, s| {
                acc.union(s).expect("same dimension")
            })
    }

    /// Supports `A_{J,i} = A_{j_i} u (union of A_k, k not in J)` for a subset `J`
    /// (0-based, increasing), with degrees taken as maxima over the merged polynomials.
    pub fn merged(&self, subset: &[usize]) -> SystemSpec {
        let outside: Vec<usize> = (0..self.len()).filter(|k| !subset.contains(k)).collect();
        let (supports, degrees) = subset
            .iter()
            .map(|&j| {
                let s = outside.iter().fold(self.supports[j].clone(), |acc, &k| {
                    acc.union(&self.supports[k]).expect("same dimension")
                });
                let d = outside
                    .iter()
                    .map(|&k| self.degrees[k])
                    .fold(self.degrees[j], u64::max);
                (s, d)
            })
            .unzip();
        SystemSpec {
            dim: self.dim,
            supports,
            degrees,
        }
    }
}

/// Which candidate attained the mixed Nullstellensatz minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NssArgmin {
    /// `d * M`.
    DegreeTimesLifted,
    /// `d_j * delta_j * M_j`, 0-based `j`.
    Dropped(usize),
}

/// Intermediates and value of the mixed Nullstellensatz bound `N(A_1, ..., A_s; n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedNss {
    pub d: u64,
    pub d_j: Vec<u64>,
    /// `None` when `s = 1`.
    pub delta_j: Vec<Option<u64>>,
    /// `MV_{n+1}(lift(A_i) u Delta_{n+1}, ..., Delta_{n+1}^(n+1-s))`.
    pub m: BigInt,
    /// `MV_n` with `A_j` dropped and `Delta_n^(n+1-s)` padding; empty when `s = 1`.
    pub m_j: Vec<BigInt>,
    pub value: BigInt,
    pub argmin: NssArgmin,
}

/// Result for `s > n + 1`: the minimum of `N` over merged `(n+1)`-subsets.
/// The value caps `deg(g_i)`, not `deg(g_i f_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedNssMany {
    pub value: BigInt,
    /// 0-based indices of the first minimizing subset.
    pub subset: Vec<usize>,
    pub at_subset: MixedNss,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoetherBound {
    pub value: BigInt,
    pub mixed_volume: BigInt,
    /// 0-based minimizing subset when `s >= n + 1`.
    pub subset: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnmixedNss {
    pub degree_bound: BigInt,
    pub newton_multiplier: BigInt,
    /// `conv(A u Delta_n)`; the cofactor Newton polytopes lie in
    /// `newton_multiplier * hull`.
    pub hull: RationalPolytope,
}

fn with_simplex(a: &Support) -> Support {
    a.union(&polytope::standard_simplex(a.dim()).expect("dimension >= 1"))
        .expect("same dimension")
}

/// `MV_n(A_1 u Delta_n, ..., A_k u Delta_n, Delta_n^(n-k))`.
pub fn padded_mixed_volume(dim: usize, supports: &[&Support]) -> Result<BigInt> {
    if supports.len() > dim {
        return Err(Error::Arity {
            expected: dim,
            found: supports.len(),
        });
    }
    let simplex = polytope::standard_simplex(dim)?;
    let mut entries: Vec<Support> = supports.iter().map(|s| with_simplex(s)).collect();
    entries.extend(std::iter::repeat_n(simplex, dim - supports.len()));
    mixed_volume::mixed_volume(&SupportTuple::new(dim, entries)?)
}

/// `MV_{n+1}(lift(A_1) u Delta_{n+1}, ..., Delta_{n+1}^(n+1-k))`.
pub fn lifted_mixed_volume(dim: usize, supports: &[&Support]) -> Result<BigInt> {
    let lifted: Vec<Support> = supports.iter().map(|s| polytope::lift(s)).collect();
    let refs: Vec<&Support> = lifted.iter().collect();
    padded_mixed_volume(dim + 1, &refs)
}

/// `n! Vol_n(A u Delta_n)`.
pub fn unmixed_noether_bound(a: &Support) -> BigInt {
    mixed_volume::normalized_volume(&with_simplex(a))
}

/// Degree bound `d n! Vol_n(A u Delta_n)` and the Newton-polytope cap for the cofactors.
pub fn unmixed_nss_bound(a: &Support, d: u64) -> Result<UnmixedNss> {
    let support = polytope::degree(a);
    if d < support {
        return Err(Error::DegreeBelowSupport { given: d, support });
    }
    let full = with_simplex(a);
    let vol = mixed_volume::normalized_volume(&full);
    Ok(UnmixedNss {
        degree_bound: BigInt::from(d) * &vol,
        newton_multiplier: vol - BigInt::one(),
        hull: full.hull(),
    })
}

/// `N(A_1, ..., A_s; n) = min{d M; d_j delta_j M_j}` for `1 <= s <= n + 1`.
pub fn mixed_nss_bound(spec: &SystemSpec) -> Result<MixedNss> {
    let n = spec.dim;
    let s = spec.len();
    if s > n + 1 {
        return Err(Error::OutOfRange(format!(
            "mixed Nullstellensatz bound needs s <= n + 1 (s = {s}, n = {n}); use the subset form"
        )));
    }
    let all: Vec<&Support> = spec.supports.iter().collect();
    let m = lifted_mixed_volume(n, &all)?;
    let d = spec.max_degree();
    let mut value = BigInt::from(d) * &m;
    let mut argmin = NssArgmin::DegreeTimesLifted;

    let (delta_j, m_j) = if s == 1 {
        (vec![None], Vec::new())
    } else {
        let delta_j: Vec<Option<u64>> = (0..s)
            .map(|j| (0..s).filter(|&i| i != j).map(|i| spec.degrees[i]).max())
            .collect();
        let m_j = map_maybe_parallel(&(0..s).collect::<Vec<_>>(), |&j| {
            let rest: Vec<&Support> = (0..s)
                .filter(|&i| i != j)
                .map(|i| &spec.supports[i])
                .collect();
            padded_mixed_volume(n, &rest)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        for j in 0..s {
            let cand = BigInt::from(spec.degrees[j]) * BigInt::from(delta_j[j].unwrap()) * &m_j[j];
            if cand < value {
                value = cand;
                argmin = NssArgmin::Dropped(j);
            }
        }
        (delta_j, m_j)
    };

    Ok(MixedNss {
        d,
        d_j: spec.degrees.clone(),
        delta_j,
        m,
        m_j,
        value,
        argmin,
    })
}

fn check_subset_count(s: usize, k: usize) -> Result<()> {
    let count = (0..k).fold(1u128, |acc, i| acc * (s - i) as u128 / (i + 1) as u128);
    if count > MAX_SUBSETS {
        return Err(Error::LimitExceeded(format!(
            "{count} subsets of size {k} exceed the limit of {MAX_SUBSETS}"
        )));
    }
    Ok(())
}

/// Minimum of `N` over the merged systems of every `(n+1)`-subset, for `s > n + 1`.
pub fn mixed_nss_bound_many(spec: &SystemSpec) -> Result<MixedNssMany> {
    let n = spec.dim;
    let s = spec.len();
    if s <= n + 1 {
        return Err(Error::OutOfRange(format!(
            "subset form needs s > n + 1 (s = {s}, n = {n})"
        )));
    }
    check_subset_count(s, n + 1)?;
    let subsets: Vec<Vec<usize>> = (0..s).combinations(n + 1).collect();
    let evaluated = map_maybe_parallel(&subsets, |j| mixed_nss_bound(&spec.merged(j)));
    let mut best: Option<(usize, MixedNss)> = None;
    for (idx, r) in evaluated.into_iter().enumerate() {
        let r = r?;
        if best.as_ref().is_none_or(|(_, b)| r.value < b.value) {
            best = Some((idx, r));
        }
    }
    let (idx, at_subset) = best.expect("at least one subset");
    Ok(MixedNssMany {
        value: at_subset.value.clone(),
        subset: subsets[idx].clone(),
        at_subset,
    })
}

/// Mixed Noether-exponent bound for any `s >= 1`.
pub fn mixed_noether_bound(spec: &SystemSpec) -> Result<NoetherBound> {
    let n = spec.dim;
    let s = spec.len();
    let d = BigInt::from(spec.max_degree());
    if s <= n {
        let all: Vec<&Support> = spec.supports.iter().collect();
        let mv = padded_mixed_volume(n, &all)?;
        return Ok(NoetherBound {
            value: &d * &mv,
            mixed_volume: mv,
            subset: None,
        });
    }
    check_subset_count(s, n)?;
    let subsets: Vec<Vec<usize>> = (0..s).combinations(n).collect();
    let evaluated = map_maybe_parallel(&subsets, |j| {
        let merged = spec.merged(j);
        let refs: Vec<&Support> = merged.supports.iter().collect();
        padded_mixed_volume(n, &refs)
    });
    let mut best: Option<(usize, BigInt)> = None;
    for (idx, r) in evaluated.into_iter().enumerate() {
        let r = r?;
        if best.as_ref().is_none_or(|(_, b)| r < *b) {
            best = Some((idx, r));
        }
    }
    let (idx, mv) = best.expect("at least one subset");
    Ok(NoetherBound {
        value: &d * &mv,
        mixed_volume: mv,
        subset: Some(subsets[idx].clone()),
    })
}

/// `MV_{n+1}(lift(A_0) u {D e_0}, lift(A_1) u {0, e_0}, ..., lift(A_n) u {0, e_0})`,
/// bounding `deg W(t_0^D, t_1, ..., t_n)` for the implicit equation `W` of
/// `(h_0, ..., h_n)`.
pub fn implicitization_degree_bound(h_supports: &[Support], big_d: u32) -> Result<BigInt> {
    let Some(first) = h_supports.first() else {
        return Err(Error::Empty("implicitization supports"));
    };
    let n = first.dim();
    if h_supports.len() != n + 1 {
        return Err(Error::Arity {
            expected: n + 1,
            found: h_supports.len(),
        });
    }
    if big_d == 0 {
        return Err(Error::OutOfRange("D must be a positive integer".into()));
    }
    let mut e0 = vec![0u32; n + 1];
    e0[0] = 1;
    let e0 = ExponentVector::new(e0);
    let origin = ExponentVector::zero(n + 1);
    let mut entries = Vec::with_capacity(n + 1);
    for (i, a) in h_supports.iter().enumerate() {
        if a.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.dim(),
            });
        }
        let extra: Vec<ExponentVector> = if i == 0 {
            vec![e0.scale(big_d)]
        } else {
            vec![origin.clone(), e0.clone()]
        };
        entries.push(polytope::lift(a).union(&Support::new(n + 1, extra)?)?);
    }
    mixed_volume::mixed_volume(&SupportTuple::new(n + 1, entries)?)
}

/// `deg(G) * d * MV_n(A_1 u Delta_n, ..., A_s u Delta_n, Delta_n^(n-s))` for `s <= n`.
pub fn elimination_degree_bound(spec: &SystemSpec, deg_g: u64) -> Result<BigInt> {
    if spec.len() > spec.dim {
        return Err(Error::OutOfRange(format!(
            "elimination bound needs s <= n (s = {}, n = {})",
            spec.len(),
            spec.dim
        )));
    }
    if deg_g == 0 {
        return Err(Error::OutOfRange("deg(G) must be positive".into()));
    }
    let all: Vec<&Support> = spec.supports.iter().collect();
    let mv = padded_mixed_volume(spec.dim, &all)?;
    Ok(BigInt::from(deg_g) * BigInt::from(spec.max_degree()) * mv)
}

/// Degree cap for a total-degree certificate search together with a label of
/// the result it relies on. Caps `deg(g_i f_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApplicableCap {
    pub cap: BigInt,
    pub source: &'static str,
}

/// Smallest of the available product-degree bounds for a system.
pub fn applicable_nss_cap(spec: &SystemSpec) -> Result<ApplicableCap> {
    let d = spec.max_degree();
    let union = spec.union_support();
    let unmixed = unmixed_nss_bound(&union, d)?.degree_bound;
    let mixed = if spec.len() <= spec.dim + 1 {
        let m = mixed_nss_bound(spec)?;
        ApplicableCap {
            cap: m.value,
            source: "mixed sparse Nullstellensatz bound N(A_1..A_s; n)",
        }
    } else {
        // the subset form caps deg(g_i); add d to cap the products
        let m = mixed_nss_bound_many(spec)?;
        ApplicableCap {
            cap: m.value + BigInt::from(d),
            source: "subset form of the mixed bound (cap on deg g_i, plus d)",
        }
    };
    if unmixed < mixed.cap {
        Ok(ApplicableCap {
            cap: unmixed,
            source: "unmixed sparse Nullstellensatz bound d n! Vol(A u Delta_n)",
        })
    } else {
        Ok(mixed)
    }
}
