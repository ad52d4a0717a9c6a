//! Exact incremental (beneath-beyond) convex hull over integer points.
//!
//! The input is projected onto a coordinate subset that is injective on its
//! affine hull, so the incremental step always runs in full dimension.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg;

/// Facet hyperplane `normal . x[coords] <= offset`, primitive normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

/// Result of the integer hull computation.
#[derive(Debug, Clone)]
pub(crate) struct IntHull {
    /// Extreme points, lexicographically sorted.
    pub vertices: Vec<Vec<BigInt>>,
    pub affine_dim: usize,
    /// Coordinates onto which the affine hull projects injectively.
    pub coords: Vec<usize>,
    /// Base point and RREF basis of the direction space of the affine hull.
    pub base: Vec<BigInt>,
    pub basis: Vec<Vec<BigRational>>,
    /// Facets in projected coordinates.
    pub facets: Vec<Halfspace>,
    /// `k! * vol_k` of the projected hull, i.e. the sum of |det| over a triangulation.
    pub simplex_volume_sum: BigInt,
}

impl IntHull {
    /// Exact membership test for an integer point in ambient coordinates.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let diff: Vec<BigRational> = x
            .iter()
            .zip(&self.base)
            .map(|(a, b)| BigRational::from_integer(a - b))
            .collect();
        // x - base must be the combination of basis rows given by its pivot entries.
        let mut residual = diff.clone();
        for (row, &c) in self.basis.iter().zip(&self.coords) {
            let f = diff[c].clone();
            for (r, v) in residual.iter_mut().zip(row) {
                *r -= &f * v;
            }
        }
        if residual.iter().any(|r| !r.is_zero()) {
            return false;
        }
        let proj: Vec<BigInt> = self.coords.iter().map(|&c| x[c].clone()).collect();
        self.facets
            .iter()
            .all(|h| linalg::dot(&h.normal, &proj) <= h.offset)
    }
}

struct Facet {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
    alive: bool,
}

/// Convex hull of a nonempty set of integer points of common length.
pub(crate) fn hull(points: &[Vec<BigInt>]) -> IntHull {
    let pts: Vec<Vec<BigInt>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(!pts.is_empty());
    let n = pts[0].len();
    let base = pts[0].clone();

    let diffs: Vec<Vec<BigRational>> = pts[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(&base)
                .map(|(a, b)| BigRational::from_integer(a - b))
                .collect()
        })
        .collect();
    let (basis, coords) = if diffs.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        linalg::rref(diffs, n)
    };
    let k = coords.len();

    if k == 0 {
        return IntHull {
            vertices: vec![base.clone()],
            affine_dim: 0,
            coords,
            base,
            basis,
            facets: Vec::new(),
            simplex_volume_sum: BigInt::zero(),
        };
    }

    let proj: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| coords.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let bb = BeneathBeyond::run(&proj, k);

    let mut facets: BTreeSet<Halfspace> = BTreeSet::new();
    let mut on_boundary: BTreeSet<usize> = BTreeSet::new();
    let mut vol = BigInt::zero();
    for f in bb.facets.iter().filter(|f| f.alive) {
        let g = linalg::gcd_all(&f.normal);
        facets.insert(Halfspace {
            normal: f.normal.iter().map(|v| v / &g).collect(),
            offset: &f.offset / &g,
        });
        on_boundary.extend(f.verts.iter().copied());
        // fan from the lexicographically smallest point, which is always extreme
        if !f.verts.contains(&0) {
            let m: Vec<Vec<BigInt>> = f
                .verts
                .iter()
                .map(|&v| proj[v].iter().zip(&proj[0]).map(|(a, b)| a - b).collect())
                .collect();
            vol += linalg::det(m).abs();
        }
    }
    let facets: Vec<Halfspace> = facets.into_iter().collect();

    let vertices = on_boundary
        .into_iter()
        .filter(|&i| {
            let tight: Vec<Vec<BigInt>> = facets
                .iter()
                .filter(|h| linalg::dot(&h.normal, &proj[i]) == h.offset)
                .map(|h| h.normal.clone())
                .collect();
            linalg::rank(&tight) == k
        })
        .map(|i| pts[i].clone())
        .collect();

    IntHull {
        vertices,
        affine_dim: k,
        coords,
        base,
        basis,
        facets,
        simplex_volume_sum: vol,
    }
}

struct BeneathBeyond {
    facets: Vec<Facet>,
}

impl BeneathBeyond {
    /// Incremental hull of full-dimensional, deduplicated, lex-sorted points in `R^k`.
    fn run(pts: &[Vec<BigInt>], k: usize) -> Self {
        let simplex = initial_simplex(pts, k);
        let mut interior = vec![BigInt::zero(); k];
        for &i in &simplex {
            for (c, v) in interior.iter_mut().zip(&pts[i]) {
                *c += v;
            }
        }
        let scale = BigInt::from(k as u64 + 1);
        let mut bb = BeneathBeyond { facets: Vec::new() };
        for omit in 0..simplex.len() {
            let mut verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != omit)
                .map(|(_, &v)| v)
                .collect();
            verts.sort_unstable();
            bb.push(pts, verts, &interior, &scale, k);
        }
        let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
        for p in 0..pts.len() {
            if in_simplex.contains(&p) {
                continue;
            }
            let visible: Vec<usize> = bb
                .facets
                .iter()
                .enumerate()
                .filter(|(_, f)| f.alive && linalg::dot(&f.normal, &pts[p]) > f.offset)
                .map(|(i, _)| i)
                .collect();
            if visible.is_empty() {
                continue;
            }
            let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
            for &fi in &visible {
                let verts = &bb.facets[fi].verts;
                for omit in 0..verts.len() {
                    let ridge: Vec<usize> = verts
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != omit)
                        .map(|(_, &v)| v)
                        .collect();
                    *ridges.entry(ridge).or_insert(0) += 1;
                }
            }
            for &fi in &visible {
                bb.facets[fi].alive = false;
            }
            let mut horizon: Vec<Vec<usize>> = ridges
                .into_iter()
                .filter(|(_, c)| *c == 1)
                .map(|(r, _)| r)
                .collect();
            horizon.sort();
            for mut ridge in horizon {
                ridge.push(p);
                ridge.sort_unstable();
                bb.push(pts, ridge, &interior, &scale, k);
            }
        }
        bb
    }

    fn push(
        &mut self,
        pts: &[Vec<BigInt>],
        verts: Vec<usize>,
        interior: &[BigInt],
        scale: &BigInt,
        k: usize,
    ) {
        let origin = &pts[verts[0]];
        let rows: Vec<Vec<BigInt>> = verts[1..]
            .iter()
            .map(|&v| pts[v].iter().zip(origin).map(|(a, b)| a - b).collect())
            .collect();
        let mut normal = linalg::cofactor_normal(&rows, k);
        let mut offset = linalg::dot(&normal, origin);
        let side = linalg::dot(&normal, interior) - &offset * scale;
        debug_assert!(!side.is_zero(), "interior point on a facet hyperplane");
        if side.is_positive() {
            normal.iter_mut().for_each(|v| *v = -v.clone());
            offset = -offset;
        }
        self.facets.push(Facet {
            verts,
            normal,
            offset,
            alive: true,
        });
    }
}

/// Picks `k + 1` affinely independent points, starting from the first one.
fn initial_simplex(pts: &[Vec<BigInt>], k: usize) -> Vec<usize> {
    let mut chosen = vec![0usize];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in pts.iter().enumerate().skip(1) {
        let d: Vec<BigInt> = p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
        rows.push(d);
        if linalg::rank(&rows) == rows.len() {
            chosen.push(i);
            if chosen.len() == k + 1 {
                break;
            }
        } else {
            rows.pop();
        }
    }
    debug_assert_eq!(chosen.len(), k + 1);
    chosen
}
