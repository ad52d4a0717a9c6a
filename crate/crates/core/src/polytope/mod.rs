//! Lattice points, supports and exact rational polytopes.
//!
//! Every predicate is evaluated in exact integer arithmetic: rational inputs
//! are scaled by a common denominator before reaching the hull kernel.

mod hull;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use hull::IntHull;

/// A monomial exponent `alpha` in `Z_{>=0}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Self {
        ExponentVector(coords)
    }

    /// Builds an exponent vector from signed input, rejecting negative entries.
    pub fn from_signed(coords: &[i64]) -> Result<Self> {
        coords
            .iter()
            .map(|&c| u32::try_from(c))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(ExponentVector)
            .map_err(|_| Error::NegativeCoordinate(format!("{coords:?}")))
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Total degree `|alpha|`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, m: u32) -> Self {
        ExponentVector(self.0.iter().map(|a| a * m).collect())
    }

    fn to_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn to_rational(&self) -> Vec<BigRational> {
        self.0
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite nonempty set of exponent vectors of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    dim: usize,
    points: BTreeSet<ExponentVector>,
}

impl Support {
    pub fn new(dim: usize, points: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        let points: BTreeSet<ExponentVector> = points.into_iter().collect();
        if points.is_empty() {
            return Err(Error::Empty("support"));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(Support { dim, points })
    }

    /// Convenience constructor from signed integer rows.
    pub fn from_rows(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let pts = rows
            .iter()
            .map(|r| ExponentVector::from_signed(r))
            .collect::<Result<Vec<_>>>()?;
        Support::new(dim, pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &ExponentVector> {
        self.points.iter()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &ExponentVector) -> bool {
        self.points.contains(p)
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn union(&self, other: &Support) -> Result<Support> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Support {
            dim: self.dim,
            points: self.points.union(&other.points).cloned().collect(),
        })
    }

    /// Shifts every point by `shift`; used for translation checks.
    pub fn translate(&self, shift: &ExponentVector) -> Support {
        Support {
            dim: self.dim,
            points: self.points.iter().map(|p| p.add(shift)).collect(),
        }
    }

    /// Pointwise multiple `{m * alpha}`. Its hull is `m * conv(A)`.
    pub fn scale(&self, m: u32) -> Support {
        Support {
            dim: self.dim,
            points: self.points.iter().map(|p| p.scale(m)).collect(),
        }
    }

    pub fn hull(&self) -> RationalPolytope {
        let pts: Vec<Vec<BigInt>> = self.points.iter().map(|p| p.to_bigint()).collect();
        RationalPolytope::from_int_hull(self.dim, hull::hull(&pts), BigInt::one())
    }
}

/// `Delta_n = {0, e_1, ..., e_n}`.
pub fn standard_simplex(n: usize) -> Result<Support> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let pts =
        std::iter::once(ExponentVector::zero(n)).chain((0..n).map(|i| ExponentVector::unit(n, i)));
    Support::new(n, pts)
}

/// `{0} x A` in dimension `n + 1`, the new coordinate first.
pub fn lift(a: &Support) -> Support {
    Support {
        dim: a.dim + 1,
        points: a
            .points
            .iter()
            .map(|p| {
                let mut c = Vec::with_capacity(a.dim + 1);
                c.push(0);
                c.extend_from_slice(p.coords());
                ExponentVector(c)
            })
            .collect(),
    }
}

/// Maximum total degree over the support.
pub fn degree(a: &Support) -> u64 {
    a.points
        .iter()
        .map(ExponentVector::degree)
        .max()
        .unwrap_or(0)
}

/// Convex hull of rational points in the normalized vertex representation.
#[derive(Debug, Clone)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<Vec<BigRational>>,
    affine_dim: usize,
    volume: BigRational,
    // integer hull of the vertices scaled by `denom`
    hull: IntHull,
    denom: BigInt,
}

impl PartialEq for RationalPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for RationalPolytope {}

impl RationalPolytope {
    fn from_int_hull(dim: usize, hull: IntHull, denom: BigInt) -> Self {
        let vertices = hull
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| BigRational::new(c.clone(), denom.clone()))
                    .collect()
            })
            .collect();
        let volume = if hull.affine_dim == dim {
            let fact: BigInt = (1..=dim as u64).map(BigInt::from).product();
            BigRational::new(
                hull.simplex_volume_sum.clone(),
                fact * num_traits::pow(denom.clone(), dim),
            )
        } else {
            BigRational::zero()
        };
        RationalPolytope {
            dim,
            vertices,
            affine_dim: hull.affine_dim,
            volume,
            hull,
            denom,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points, lexicographically sorted.
    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    /// True when every vertex has integer coordinates.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|c| c.is_integer())
    }

    /// Exact Euclidean `n`-volume; zero unless full-dimensional.
    pub fn volume(&self) -> &BigRational {
        &self.volume
    }

    /// Lattice vertices as exponent vectors, if the polytope is a lattice
    /// polytope in the nonnegative orthant.
    pub fn lattice_vertices(&self) -> Option<Vec<ExponentVector>> {
        self.vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| {
                        if c.is_integer() {
                            c.to_integer().to_u32()
                        } else {
                            None
                        }
                    })
                    .collect::<Option<Vec<u32>>>()
                    .map(ExponentVector)
            })
            .collect()
    }

    /// Exact membership test for a rational point.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        // scale x by a common denominator `t`, and the hull to match
        let t = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let xs: Vec<BigInt> = x
            .iter()
            .map(|c| (c * BigRational::from_integer(&t * &self.denom)).to_integer())
            .collect();
        let scaled = self.scale_hull(&t);
        scaled.contains(&xs)
    }

    fn scale_hull(&self, t: &BigInt) -> IntHull {
        if t.is_one() {
            return self.hull.clone();
        }
        let mut h = self.hull.clone();
        h.base.iter_mut().for_each(|v| *v *= t);
        h.facets.iter_mut().for_each(|f| f.offset *= t);
        h
    }

    /// Formats a point in the canonical `(a,b/c,...)` form.
    pub fn format_point(p: &[BigRational]) -> String {
        let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for RationalPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| Self::format_point(v))
            .collect();
        write!(f, "conv{{{}}}", parts.join(", "))
    }
}

/// Convex hull of a nonempty set of rational points in dimension `dim`.
pub fn convex_hull(points: &[Vec<BigRational>], dim: usize) -> Result<RationalPolytope> {
    if dim == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if points.is_empty() {
        return Err(Error::Empty("point set"));
    }
    if let Some(p) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: p.len(),
        });
    }
    let denom = points
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|c| (c * BigRational::from_integer(denom.clone())).to_integer())
                .collect()
        })
        .collect();
    Ok(RationalPolytope::from_int_hull(
        dim,
        hull::hull(&scaled),
        denom,
    ))
}

/// Hull of the pairwise vertex sums.
pub fn minkowski_sum(p: &RationalPolytope, q: &RationalPolytope) -> Result<RationalPolytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            found: q.dim,
        });
    }
    let mut sums = Vec::with_capacity(p.vertices.len() * q.vertices.len());
    for a in &p.vertices {
        for b in &q.vertices {
            sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
        }
    }
    convex_hull(&sums, p.dim)
}

/// `m * P` for a positive integer `m`.
pub fn dilate(p: &RationalPolytope, m: u32) -> Result<RationalPolytope> {
    if m == 0 {
        return Err(Error::ZeroDilation);
    }
    let f = BigRational::from_integer(BigInt::from(m));
    let pts: Vec<Vec<BigRational>> = p
        .vertices
        .iter()
        .map(|v| v.iter().map(|c| c * &f).collect())
        .collect();
    convex_hull(&pts, p.dim)
}

/// `m * conv(A)`.
pub fn dilate_support(a: &Support, m: u32) -> Result<RationalPolytope> {
    dilate(&a.hull(), m)
}

pub fn volume(p: &RationalPolytope) -> BigRational {
    p.volume.clone()
}

/// All integer points of a polytope lying in the nonnegative orthant.
pub fn lattice_points(p: &RationalPolytope) -> Result<Vec<ExponentVector>> {
    if let Some(v) = p
        .vertices
        .iter()
        .find(|v| v.iter().any(|c| c.is_negative()))
    {
        return Err(Error::NegativeCoordinate(RationalPolytope::format_point(v)));
    }
    let mut lo = vec![BigInt::zero(); p.dim];
    let mut hi = vec![BigInt::zero(); p.dim];
    for j in 0..p.dim {
        lo[j] = p
            .vertices
            .iter()
            .map(|v| v[j].ceil().to_integer())
            .min()
            .unwrap();
        hi[j] = p
            .vertices
            .iter()
            .map(|v| v[j].floor().to_integer())
            .max()
            .unwrap();
        if lo[j] > hi[j] {
            return Ok(Vec::new());
        }
    }
    let to_u32 = |b: &BigInt| {
        b.to_u32()
            .ok_or_else(|| Error::OutOfRange(format!("coordinate {b} exceeds u32")))
    };
    let lo: Vec<u32> = lo.iter().map(to_u32).collect::<Result<_>>()?;
    let hi: Vec<u32> = hi.iter().map(to_u32).collect::<Result<_>>()?;

    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let x: Vec<BigInt> = cur.iter().map(|&c| BigInt::from(c) * &p.denom).collect();
        if p.hull.contains(&x) {
            out.push(ExponentVector(cur.clone()));
        }
        // odometer, last coordinate fastest
        let mut j = p.dim;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            if cur[j] < hi[j] {
                cur[j] += 1;
                cur[(j + 1)..p.dim].copy_from_slice(&lo[(j + 1)..p.dim]);
                break;
            }
        }
    }
}

/// Convenience conversion of integer points into rational coordinates.
pub fn rational_points(points: impl IntoIterator<Item = ExponentVector>) -> Vec<Vec<BigRational>> {
    points.into_iter().map(|p| p.to_rational()).collect()
}
