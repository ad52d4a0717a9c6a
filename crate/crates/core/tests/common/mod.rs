#![allow(dead_code)]

use nssbound::polytope::{ExponentVector, Support};
use proptest::prelude::*;

pub fn support_strategy(
    dim: usize,
    max_points: usize,
    max_coord: u32,
) -> impl Strategy<Value = Support> {
    prop::collection::vec(prop::collection::vec(0..=max_coord, dim), 1..=max_points)
        .prop_map(move |pts| Support::new(dim, pts.into_iter().map(ExponentVector::new)).unwrap())
}

pub fn tuple_strategy(
    dim: usize,
    max_points: usize,
    max_coord: u32,
) -> impl Strategy<Value = Vec<Support>> {
    prop::collection::vec(support_strategy(dim, max_points, max_coord), dim)
}

pub fn pointwise_sum(a: &Support, b: &Support) -> Support {
    let pts = a.points().flat_map(|p| b.points().map(move |q| p.add(q)));
    Support::new(a.dim(), pts).unwrap()
}

pub fn coords(a: &Support) -> Vec<(i64, i64)> {
    a.points()
        .map(|p| (p.coords()[0] as i64, p.coords()[1] as i64))
        .collect()
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
pub fn hull_2d(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Twice the area of the convex hull (shoelace).
pub fn double_area_2d(points: &[(i64, i64)]) -> i64 {
    let h = hull_2d(points);
    if h.len() < 3 {
        return 0;
    }
    (0..h.len())
        .map(|i| {
            let (a, b) = (h[i], h[(i + 1) % h.len()]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum::<i64>()
        .abs()
}

/// `MV(P, Q) = Vol(P + Q) - Vol(P) - Vol(Q)` in the plane.
pub fn mixed_volume_2d(a: &Support, b: &Support) -> i64 {
    let sum = pointwise_sum(a, b);
    (double_area_2d(&coords(&sum)) - double_area_2d(&coords(a)) - double_area_2d(&coords(b))) / 2
}

fn on_segment(p: (i64, i64), a: (i64, i64), b: (i64, i64)) -> bool {
    cross(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

/// Caratheodory: `p` lies in the hull iff it lies in a triangle, segment or point of the set.
pub fn in_hull_2d(p: (i64, i64), pts: &[(i64, i64)]) -> bool {
    for (i, &a) in pts.iter().enumerate() {
        if a == p {
            return true;
        }
        for (j, &b) in pts.iter().enumerate().skip(i + 1) {
            if on_segment(p, a, b) {
                return true;
            }
            for &c in &pts[j + 1..] {
                let (d1, d2, d3) = (cross(a, b, p), cross(b, c, p), cross(c, a, p));
                let neg = d1 < 0 || d2 < 0 || d3 < 0;
                let pos = d1 > 0 || d2 > 0 || d3 > 0;
                if cross(a, b, c) != 0 && !(neg && pos) {
                    return true;
                }
            }
        }
    }
    false
}
