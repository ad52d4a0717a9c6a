//! Earlier degree-based and polytope-based bounds, for comparison.
//!
//! The generic forms (Kollár, Jelonek) are evaluated for every system. The
//! Sombra and Krick-Pardo-Sombra forms depend on volume data that only has a
//! closed form for a few structured families, so they are reported only when
//! the supports match one of those families.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::SystemSpec;
use crate::polytope::{self, ExponentVector, Support};

/// Quantity a comparator bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Caps {
    ProductDegree,
    CofactorDegree,
    NoetherExponent,
}

impl Caps {
    pub fn label(self) -> &'static str {
        match self {
            Caps::ProductDegree => "deg(g_i f_i)",
            Caps::CofactorDegree => "deg(g_i)",
            Caps::NoetherExponent => "noether_exponent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparator {
    pub value: BigInt,
    pub valid: bool,
    pub caps: Caps,
    pub note: String,
}

fn cmp(value: BigInt, valid: bool, caps: Caps, note: &str) -> Comparator {
    Comparator {
        value,
        valid,
        caps,
        note: note.to_string(),
    }
}

fn pow(base: u64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), e)
}

/// Comparator bounds keyed by name.
pub fn classical_bounds(spec: &SystemSpec) -> BTreeMap<String, Comparator> {
    let n = spec.dim();
    let s = spec.len();
    let d = spec.max_degree();
    let k = n.min(s);
    let mut out = BTreeMap::new();

    out.insert(
        "kollar_nss".into(),
        cmp(
            pow(d, k),
            d >= 3,
            Caps::ProductDegree,
            "d^min(n,s); Kollár's degree bound, stated for polynomials of degree >= 3",
        ),
    );
    let jelonek = if s <= n {
        pow(d, s)
    } else {
        BigInt::from(2) * pow(d, n) - BigInt::one()
    };
    out.insert(
        "jelonek_nss".into(),
        cmp(
            jelonek,
            true,
            Caps::ProductDegree,
            "d^s if s <= n, else 2 d^n - 1; Jelonek's degree bound",
        ),
    );
    out.insert(
        "kollar_noether".into(),
        cmp(
            pow(d, k),
            true,
            Caps::NoetherExponent,
            "d^min(n,s); Kollár's Noether-exponent bound",
        ),
    );
    let mut degs = spec.degrees().to_vec();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let prod: BigInt = degs.iter().take(k).map(|&x| BigInt::from(x)).product();
    out.insert(
        "jelonek_noether".into(),
        cmp(
            prod,
            true,
            Caps::NoetherExponent,
            "product of the min(n,s) largest degrees; Jelonek's Noether-exponent bound",
        ),
    );

    if let Some(delta) = diagonal_family(spec) {
        let nd = n as u64 * delta as u64;
        let m2 = pow((n + 1).min(s) as u64, 2);
        out.insert(
            "sombra_nss".into(),
            cmp(
                &m2 * pow(nd, 2),
                true,
                Caps::ProductDegree,
                "min(n+1,s)^2 (n delta)^2; Sombra's sparse bound on the diagonal family",
            ),
        );
        out.insert(
            "kps_nss".into(),
            cmp(
                BigInt::from(2) * pow(n as u64, 4) * pow(delta as u64, 2),
                true,
                Caps::CofactorDegree,
                "2 n^4 delta^2; Krick-Pardo-Sombra bound on the diagonal family",
            ),
        );
        out.insert(
            "sombra_noether".into(),
            cmp(
                m2 * BigInt::from(nd),
                true,
                Caps::NoetherExponent,
                "min(n+1,s)^2 n delta; Sombra's Noether bound on the diagonal family",
            ),
        );
    } else if let Some(dd) = axis_family(spec) {
        out.insert(
            "sombra_nss".into(),
            cmp(
                BigInt::from(2) * pow(dd as u64, n),
                true,
                Caps::ProductDegree,
                "2 d^n; Sombra's sparse bound on the axis family",
            ),
        );
        out.insert(
            "kps_nss".into(),
            cmp(
                BigInt::from(2) * pow(n as u64, 2) * pow(dd as u64, n),
                true,
                Caps::CofactorDegree,
                "2 n^2 d^n; Krick-Pardo-Sombra bound on the axis family",
            ),
        );
    } else if let Some((big_d, scales)) = scaled_diagonal_family(spec) {
        let dmax = *scales.iter().max().unwrap() as u64;
        out.insert(
            "sombra_noether".into(),
            cmp(
                pow(n as u64, 3) * BigInt::from(big_d as u64) * pow(dmax, n),
                true,
                Caps::NoetherExponent,
                "n^3 D D_n^n; Sombra's Noether bound on the scaled diagonal family",
            ),
        );
    }
    out
}

fn diagonal(n: usize, k: u32) -> ExponentVector {
    ExponentVector::new(vec![k; n])
}

/// `Delta_n u {k (1,...,1) : k = 1..delta}`.
fn diagonal_set(n: usize, delta: u32) -> Support {
    let simplex = polytope::standard_simplex(n).expect("n >= 1");
    let diag = Support::new(n, (1..=delta).map(|k| diagonal(n, k))).expect("nonempty");
    simplex.union(&diag).expect("same dimension")
}

/// `delta` when every support lies in the diagonal set, each reaching degree `n delta`.
fn diagonal_family(spec: &SystemSpec) -> Option<u32> {
    let n = spec.dim();
    if n < 2 || spec.len() < 2 {
        return None;
    }
    let union = spec.union_support();
    let delta = union
        .points()
        .filter(|p| p.coords().iter().all(|&c| c == p.coords()[0]) && p.coords()[0] > 0)
        .map(|p| p.coords()[0])
        .max()?;
    if delta < 2 || !union.is_subset(&diagonal_set(n, delta)) {
        return None;
    }
    let top = diagonal(n, delta);
    let nd = n as u64 * delta as u64;
    let ok = spec
        .supports()
        .iter()
        .zip(spec.degrees())
        .all(|(s, &deg)| s.contains(&top) && deg == nd);
    ok.then_some(delta)
}

/// `d` when `s = n + 1`, the first `n` supports are `Delta_n u {2e_1, ..., d e_1}`
/// and the last has hull `d Delta_n`.
fn axis_family(spec: &SystemSpec) -> Option<u32> {
    let n = spec.dim();
    if spec.len() != n + 1 {
        return None;
    }
    let last = spec.supports().last()?;
    let d = u32::try_from(polytope::degree(last)).ok()?;
    if d < 2 {
        return None;
    }
    let simplex = polytope::standard_simplex(n).ok()?;
    if last.hull() != simplex.scale(d).hull() {
        return None;
    }
    let axis = Support::new(
        n,
        (2..=d).map(|k| {
            let mut v = vec![0; n];
            v[0] = k;
            ExponentVector::new(v)
        }),
    )
    .ok()?
    .union(&simplex)
    .ok()?;
    spec.supports()[..n].iter().all(|s| *s == axis).then_some(d)
}

/// `(D, [D_1..D_n])` when `s = n` and `conv(A_i) = D_i conv(Delta_n u {k 1 : k <= D})`.
fn scaled_diagonal_family(spec: &SystemSpec) -> Option<(u32, Vec<u32>)> {
    let n = spec.dim();
    if n < 2 || spec.len() != n {
        return None;
    }
    let mut big_d = None;
    let mut scales = Vec::with_capacity(n);
    for (s, &deg) in spec.supports().iter().zip(spec.degrees()) {
        let verts = s.hull().lattice_vertices()?;
        let di = verts
            .iter()
            .filter(|v| v.coords()[1..].iter().all(|&c| c == 0))
            .map(|v| v.coords()[0])
            .max()?;
        let top = verts.iter().map(|v| v.coords()[0]).max()?;
        if di == 0 || top % di != 0 {
            return None;
        }
        let dd = top / di;
        if *big_d.get_or_insert(dd) != dd {
            return None;
        }
        let model = diagonal_set(n, dd).scale(di).hull();
        if s.hull() != model || deg != n as u64 * dd as u64 * di as u64 {
            return None;
        }
        scales.push(di);
    }
    Some((big_d?, scales))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_family_bullets() {
        // n = 2, delta = 3, s = 2: nd = 6
        let a = diagonal_set(2, 3);
        let spec = SystemSpec::new(2, vec![a.clone(), a]).unwrap();
        let c = classical_bounds(&spec);
        assert_eq!(c["kollar_nss"].value, BigInt::from(36));
        assert_eq!(c["jelonek_nss"].value, BigInt::from(36));
        assert_eq!(c["sombra_nss"].value, BigInt::from(4 * 36));
        assert_eq!(c["kps_nss"].value, BigInt::from(2 * 16 * 9));
        assert_eq!(c["sombra_noether"].value, BigInt::from(4 * 6));
        assert_eq!(c["jelonek_noether"].value, BigInt::from(36));
    }

    #[test]
    fn axis_family_bullets() {
        let d = 3;
        let simplex = polytope::standard_simplex(2).unwrap();
        let axis = simplex
            .union(&Support::from_rows(2, &[vec![2, 0], vec![3, 0]]).unwrap())
            .unwrap();
        let spec = SystemSpec::new(2, vec![axis.clone(), axis, simplex.scale(d)]).unwrap();
        let c = classical_bounds(&spec);
        assert_eq!(c["jelonek_nss"].value, BigInt::from(2 * 9 - 1));
        assert_eq!(c["kollar_nss"].value, BigInt::from(9));
        assert!(c["kollar_nss"].valid);
        assert_eq!(c["sombra_nss"].value, BigInt::from(18));
        assert_eq!(c["kps_nss"].value, BigInt::from(2 * 4 * 9));
    }

    #[test]
    fn scaled_family_bullets() {
        // n = 2, D = 2, D_1 = 1, D_2 = 3
        let a = diagonal_set(2, 2);
        let spec = SystemSpec::new(2, vec![a.clone(), a.scale(3)]).unwrap();
        let c = classical_bounds(&spec);
        assert_eq!(c["sombra_noether"].value, BigInt::from(8 * 2 * 9));
        // (prod D_i) n^n D^n = 3 * 4 * 4
        assert_eq!(c["jelonek_noether"].value, BigInt::from(48));
    }

    #[test]
    fn generic_system_has_no_family_entries() {
        let s = Support::from_rows(2, &[vec![0, 0], vec![2, 1]]).unwrap();
        let spec = SystemSpec::new(2, vec![s.clone(), s]).unwrap();
        let c = classical_bounds(&spec);
        assert!(!c.contains_key("kps_nss"));
        assert!(!c.contains_key("sombra_nss"));
        assert!(c["kollar_nss"].valid);
    }
}
