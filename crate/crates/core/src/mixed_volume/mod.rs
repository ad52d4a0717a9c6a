//! Mixed volumes of lattice polytopes, normalized so that `MV(A, ..., A) = n! Vol_n(A)`.
//!
//! The primary routine uses inclusion-exclusion over Minkowski sums. An
//! independent routine based on a random-lifting mixed subdivision lives in
//! [`oracle`] and is used for cross-validation.

mod oracle;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polytope::{self, RationalPolytope, Support};

pub use oracle::{mixed_volume_oracle, mixed_volume_oracle_with_budget, DEFAULT_LIFT_ATTEMPTS};

/// Largest dimension accepted by the inclusion-exclusion routine.
pub const MAX_INCLUSION_EXCLUSION_DIM: usize = 10;

/// An ordered list of exactly `n` supports in dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportTuple {
    dim: usize,
    entries: Vec<Support>,
}

impl SupportTuple {
    pub fn new(dim: usize, entries: Vec<Support>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if entries.len() != dim {
            return Err(Error::Arity {
                expected: dim,
                found: entries.len(),
            });
        }
        if let Some(s) = entries.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: s.dim(),
            });
        }
        Ok(SupportTuple { dim, entries })
    }

    /// Builds a tuple from `(support, repetitions)` groups, expanding `A^(r)`.
    pub fn from_groups(dim: usize, groups: &[(&Support, usize)]) -> Result<Self> {
        let entries = groups
            .iter()
            .flat_map(|(s, r)| std::iter::repeat_n((*s).clone(), *r))
            .collect();
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Support] {
        &self.entries
    }
}

/// `n! Vol_n(conv A)`.
pub fn normalized_volume(a: &Support) -> BigInt {
    let n = a.dim();
    let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    let v = a.hull().volume() * BigRational::from_integer(fact);
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Mixed volume by inclusion-exclusion:
/// `MV = sum over nonempty S of (-1)^(n-|S|) Vol_n(sum_{i in S} conv A_i)`.
///
/// Repeated entries are grouped, so a subset is described by how many copies
/// of each distinct support it takes and `k` copies of `P` sum to `k P`.
pub fn mixed_volume(t: &SupportTuple) -> Result<BigInt> {
    let n = t.dim;
    if n > MAX_INCLUSION_EXCLUSION_DIM {
        return Err(Error::LimitExceeded(format!(
            "inclusion-exclusion is limited to n <= {MAX_INCLUSION_EXCLUSION_DIM}; use the subdivision oracle"
        )));
    }
    let mut groups: Vec<(&Support, usize)> = Vec::new();
    for s in &t.entries {
        match groups.iter_mut().find(|(g, _)| *g == s) {
            Some((_, r)) => *r += 1,
            None => groups.push((s, 1)),
        }
    }
    // a point summand contributes nothing
    if groups.iter().any(|(s, _)| s.len() == 1) {
        return Ok(BigInt::zero());
    }
    let hulls: Vec<RationalPolytope> = groups.iter().map(|(s, _)| s.hull()).collect();
    let reps: Vec<usize> = groups.iter().map(|(_, r)| *r).collect();

    // count vectors grouped by total, each level built from the previous one
    let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    enumerate_counts(&reps, &mut vec![0; reps.len()], 0, &mut levels);

    let mut sums: HashMap<Vec<usize>, RationalPolytope> = HashMap::new();
    let mut total = BigRational::zero();
    for (size, level) in levels.iter().enumerate().skip(1) {
        let built: Vec<Result<(Vec<usize>, RationalPolytope)>> = map_maybe_parallel(level, |c| {
            let j = c.iter().rposition(|&x| x > 0).unwrap();
            let mut prev = c.clone();
            prev[j] -= 1;
            let poly = if size == 1 {
                hulls[j].clone()
            } else {
                polytope::minkowski_sum(&sums[&prev], &hulls[j])?
            };
            Ok((c.clone(), poly))
        });
        let mut next = HashMap::new();
        for r in built {
            let (c, poly) = r?;
            let weight: BigInt = c.iter().zip(&reps).map(|(&k, &r)| binomial(r, k)).product();
            let term = BigRational::from_integer(weight) * poly.volume();
            if (n - size).is_multiple_of(2) {
                total += term;
            } else {
                total -= term;
            }
            next.insert(c, poly);
        }
        sums = next;
    }
    debug_assert!(
        total.is_integer(),
        "mixed volume of lattice polytopes is an integer"
    );
    Ok(total.to_integer())
}

fn enumerate_counts(reps: &[usize], cur: &mut Vec<usize>, i: usize, out: &mut [Vec<Vec<usize>>]) {
    if i == reps.len() {
        let s: usize = cur.iter().sum();
        out[s].push(cur.clone());
        return;
    }
    for k in 0..=reps[i] {
        cur[i] = k;
        enumerate_counts(reps, cur, i + 1, out);
    }
    cur[i] = 0;
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

#[cfg(feature = "parallel")]
pub(crate) fn map_maybe_parallel<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_maybe_parallel<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> R + Sync + Send,
) -> Vec<R> {
    items.iter().map(f).collect()
}
