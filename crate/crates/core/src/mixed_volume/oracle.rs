//! Mixed volume through a fine mixed subdivision induced by a random lifting.
//!
//! Each support point gets an integer height. A choice of one pair of points
//! per support is a mixed cell when some inner normal `(g, 1)` makes that pair
//! the exact minimizing set of every lifted support; the cell contributes
//! `|det|` of the edge vectors. Ties mean the lifting was not generic and a
//! fresh one is drawn.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SupportTuple;
use crate::error::{Error, Result};

pub const DEFAULT_LIFT_ATTEMPTS: u32 = 32;
const LIFT_RANGE: i64 = 1 << 16;

/// Mixed volume by random lifting with the default retry budget.
pub fn mixed_volume_oracle(t: &SupportTuple, seed: u64) -> Result<BigInt> {
    mixed_volume_oracle_with_budget(t, seed, DEFAULT_LIFT_ATTEMPTS)
}

pub fn mixed_volume_oracle_with_budget(
    t: &SupportTuple,
    seed: u64,
    attempts: u32,
) -> Result<BigInt> {
    let supports: Vec<Vec<Vec<i128>>> = t
        .entries()
        .iter()
        .map(|s| {
            s.points()
                .map(|p| p.coords().iter().map(|&c| c as i128).collect())
                .collect()
        })
        .collect();
    if supports.iter().any(|s| s.len() < 2) {
        return Ok(BigInt::from(0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let lifts: Vec<Vec<i128>> = supports
            .iter()
            .map(|s| {
                s.iter()
                    .map(|_| rng.random_range(0..LIFT_RANGE) as i128)
                    .collect()
            })
            .collect();
        let mut search = CellSearch {
            supports: &supports,
            lifts: &lifts,
            chosen: Vec::with_capacity(supports.len()),
            total: 0,
        };
        match search.descend() {
            Ok(()) => return Ok(BigInt::from(search.total)),
            Err(Outcome::NotFine) => continue,
            Err(Outcome::Overflow) => return Err(Error::Overflow("mixed volume oracle")),
        }
    }
    Err(Error::GenericityFailure(attempts))
}

enum Outcome {
    NotFine,
    Overflow,
}

struct CellSearch<'a> {
    supports: &'a [Vec<Vec<i128>>],
    lifts: &'a [Vec<i128>],
    chosen: Vec<(usize, usize)>,
    total: i128,
}

impl CellSearch<'_> {
    fn descend(&mut self) -> std::result::Result<(), Outcome> {
        let i = self.chosen.len();
        if i == self.supports.len() {
            return self.leaf();
        }
        let m = self.supports[i].len();
        for a in 0..m {
            for b in (a + 1)..m {
                self.chosen.push((a, b));
                if self.edges_independent() {
                    self.descend()?;
                }
                self.chosen.pop();
            }
        }
        Ok(())
    }

    fn edge(&self, i: usize) -> Vec<i128> {
        let (a, b) = self.chosen[i];
        let s = &self.supports[i];
        s[b].iter().zip(&s[a]).map(|(x, y)| x - y).collect()
    }

    // dependent edge sets give degenerate cells whatever the remaining choices
    fn edges_independent(&self) -> bool {
        let rows: Vec<Vec<i128>> = (0..self.chosen.len()).map(|i| self.edge(i)).collect();
        matches!(rank_i128(rows), Some(r) if r == self.chosen.len())
    }

    fn leaf(&mut self) -> std::result::Result<(), Outcome> {
        let n = self.supports.len();
        let edges: Vec<Vec<i128>> = (0..n).map(|i| self.edge(i)).collect();
        // <b - a, g> = w(a) - w(b) for every chosen pair
        let rhs: Vec<i128> = self
            .chosen
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| self.lifts[i][a] - self.lifts[i][b])
            .collect();
        let det = det_i128(edges.clone()).ok_or(Outcome::Overflow)?;
        if det == 0 {
            return Ok(());
        }
        // Cramer: g = normal / det
        let mut normal = Vec::with_capacity(n);
        for j in 0..n {
            let mut m = edges.clone();
            for (row, r) in m.iter_mut().zip(&rhs) {
                row[j] = *r;
            }
            normal.push(det_i128(m).ok_or(Outcome::Overflow)?);
        }
        let sign = det.signum();
        for (i, &(a, b)) in self.chosen.iter().enumerate() {
            let s = &self.supports[i];
            let w = &self.lifts[i];
            let base = lifted_value(&s[a], w[a], &normal, det).ok_or(Outcome::Overflow)?;
            for (p, pt) in s.iter().enumerate() {
                if p == a || p == b {
                    continue;
                }
                let v = lifted_value(pt, w[p], &normal, det).ok_or(Outcome::Overflow)?;
                let diff = (v - base) * sign;
                if diff == 0 {
                    return Err(Outcome::NotFine);
                }
                if diff < 0 {
                    return Ok(());
                }
            }
        }
        self.total = self.total.checked_add(det.abs()).ok_or(Outcome::Overflow)?;
        Ok(())
    }
}

/// `det * (<p, g> + w)` with `g = normal / det`.
fn lifted_value(p: &[i128], w: i128, normal: &[i128], det: i128) -> Option<i128> {
    let mut acc = w.checked_mul(det)?;
    for (x, y) in p.iter().zip(normal) {
        acc = acc.checked_add(x.checked_mul(*y)?)?;
    }
    Some(acc)
}

fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| m[i][k] != 0) else {
            return Some(0);
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])?
                    .checked_sub(m[i][k].checked_mul(m[k][j])?)?;
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    let d = m[n - 1][n - 1];
    Some(if negate { -d } else { d })
}

fn rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            if m[i][c] != 0 {
                let (f, g) = (m[i][c], m[r][c]);
                let pivot = m[r].clone();
                for (x, &y) in m[i].iter_mut().zip(&pivot) {
                    *x = x.checked_mul(g)?.checked_sub(y.checked_mul(f)?)?;
                }
                let content = m[i].iter().fold(0i128, |acc, &v| gcd(acc, v));
                if content > 1 {
                    m[i].iter_mut().for_each(|v| *v /= content);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    Some(r)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
