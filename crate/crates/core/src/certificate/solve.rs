//! Sparse fraction-free elimination for `A x = b` over the rationals.
//!
//! Rows are scaled to primitive integer vectors. Eliminating with a pivot row
//! `p` replaces a row `r` by `lead(p) r - lead(r) p` and divides out the
//! content, so no fractions appear until back substitution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
struct Row {
    // sorted by column, no zeros
    entries: Vec<(usize, BigInt)>,
    rhs: BigInt,
}

impl Row {
    fn from_rational(entries: Vec<(usize, BigRational)>, rhs: BigRational) -> Row {
        let l = entries
            .iter()
            .map(|(_, v)| v.denom())
            .chain(std::iter::once(rhs.denom()))
            .fold(BigInt::one(), |acc, d| acc.lcm(d));
        let scale = |v: &BigRational| (v * BigRational::from_integer(l.clone())).to_integer();
        let mut row = Row {
            entries: entries
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (*c, scale(v)))
                .collect(),
            rhs: scale(&rhs),
        };
        row.entries.sort_by_key(|(c, _)| *c);
        row.make_primitive();
        row
    }

    fn lead(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    fn make_primitive(&mut self) {
        let g = self
            .entries
            .iter()
            .map(|(_, v)| v)
            .chain(std::iter::once(&self.rhs))
            .fold(BigInt::zero(), |g, v| g.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for (_, v) in self.entries.iter_mut() {
                *v /= &g;
            }
            self.rhs /= &g;
        }
    }

    /// `a * self - b * other`, merged by column.
    fn combine(&self, a: &BigInt, other: &Row, b: &BigInt) -> Row {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let ci = self.entries.get(i).map(|e| e.0);
            let cj = other.entries.get(j).map(|e| e.0);
            let (col, v) = match (ci, cj) {
                (Some(x), Some(y)) if x == y => {
                    let v = a * &self.entries[i].1 - b * &other.entries[j].1;
                    i += 1;
                    j += 1;
                    (x, v)
                }
                (Some(x), Some(y)) if x < y => {
                    i += 1;
                    (x, a * &self.entries[i - 1].1)
                }
                (Some(x), None) => {
                    i += 1;
                    (x, a * &self.entries[i - 1].1)
                }
                (_, Some(y)) => {
                    j += 1;
                    (y, -(b * &other.entries[j - 1].1))
                }
                (None, None) => unreachable!(),
            };
            if !v.is_zero() {
                out.push((col, v));
            }
        }
        let mut row = Row {
            entries: out,
            rhs: a * &self.rhs - b * &other.rhs,
        };
        row.make_primitive();
        row
    }
}

/// Solves a sparse system given as rows of `(column, value)` pairs.
///
/// Returns `None` when inconsistent. Free variables are set to zero.
pub fn solve_sparse(
    ncols: usize,
    rows: Vec<(Vec<(usize, BigRational)>, BigRational)>,
) -> Option<Vec<BigRational>> {
    // rows bucketed by leading column
    let mut buckets: BTreeMap<usize, Vec<Row>> = BTreeMap::new();
    for (entries, rhs) in rows {
        let row = Row::from_rational(entries, rhs);
        match row.lead() {
            Some(c) => buckets.entry(c).or_default().push(row),
            None if row.rhs.is_zero() => {}
            None => return None,
        }
    }

    let mut pivots: Vec<Row> = Vec::new();
    while let Some((_, mut cands)) = buckets.pop_first() {
        // sparsest row, then smallest leading magnitude, pivots
        let best = (0..cands.len())
            .min_by(|&x, &y| {
                let (rx, ry) = (&cands[x], &cands[y]);
                rx.entries
                    .len()
                    .cmp(&ry.entries.len())
                    .then_with(|| rx.entries[0].1.abs().cmp(&ry.entries[0].1.abs()))
            })
            .unwrap();
        let pivot = cands.swap_remove(best);
        let lp = pivot.entries[0].1.clone();
        for r in cands {
            let lr = r.entries[0].1.clone();
            let g = lp.gcd(&lr);
            let reduced = r.combine(&(&lp / &g), &pivot, &(&lr / &g));
            match reduced.lead() {
                Some(c) => buckets.entry(c).or_default().push(reduced),
                None if reduced.rhs.is_zero() => {}
                None => return None,
            }
        }
        pivots.push(pivot);
    }

    let mut x = vec![BigRational::zero(); ncols];
    for row in pivots.iter().rev() {
        let (c, lead) = &row.entries[0];
        let mut acc = BigRational::from_integer(row.rhs.clone());
        for (j, v) in &row.entries[1..] {
            acc -= BigRational::from_integer(v.clone()) * &x[*j];
        }
        x[*c] = acc / BigRational::from_integer(lead.clone());
    }
    Some(x)
}
