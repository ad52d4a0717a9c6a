mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use nssbound::bounds::{
    applicable_nss_cap, lifted_mixed_volume, mixed_noether_bound, mixed_nss_bound,
    mixed_nss_bound_many, padded_mixed_volume, unmixed_nss_bound, SystemSpec,
};
use nssbound::certificate::{
    certificate_search, minimal_certificate_degree, verify_certificate, SearchMode,
    SparsePolynomial,
};
use nssbound::mixed_volume::{mixed_volume, mixed_volume_oracle, normalized_volume, SupportTuple};
use nssbound::polytope::{standard_simplex, ExponentVector, Support};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<String, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(format!("{t:.2?}"))
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn diagonal_family(n: usize, delta: u32) -> Support {
    let mut pts: Vec<ExponentVector> = standard_simplex(n).unwrap().points().cloned().collect();
    pts.extend((1..=delta).map(|k| ExponentVector::new(vec![k; n])));
    Support::new(n, pts).unwrap()
}

fn axis_family(n: usize, d: u32) -> Support {
    let mut pts: Vec<ExponentVector> = standard_simplex(n).unwrap().points().cloned().collect();
    for k in 2..=d {
        let mut v = vec![0; n];
        v[0] = k;
        pts.push(ExponentVector::new(v));
    }
    Support::new(n, pts).unwrap()
}

fn random_support(rng: &mut ChaCha8Rng, n: usize, max_points: usize, max_coord: u32) -> Support {
    let k = rng.random_range(1..=max_points);
    let pts = (0..k)
        .map(|_| ExponentVector::new((0..n).map(|_| rng.random_range(0..=max_coord)).collect()));
    Support::new(n, pts).unwrap()
}

fn mv(n: usize, entries: Vec<Support>) -> BigInt {
    mixed_volume(&SupportTuple::new(n, entries).unwrap()).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for n in [2usize, 3] {
        for delta in [2u32, 3, 4] {
            let a = diagonal_family(n, delta);
            let nd = n as u64 * delta as u64;
            let vol = normalized_volume(&a.union(&standard_simplex(n).unwrap()).unwrap());
            ensure(vol == big(nd), || {
                format!("n={n} delta={delta}: n!Vol = {vol}, expected {nd}")
            })?;
            let b = unmixed_nss_bound(&a, nd)
                .map_err(|e| e.to_string())?
                .degree_bound;
            ensure(b == big(nd * nd), || {
                format!("n={n} delta={delta}: bound {b}, expected {}", nd * nd)
            })?;
        }
    }
    within(start, Duration::from_secs(5)).map(|t| format!("6/6 grid points exact ({t})"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    for n in [2usize, 3] {
        for d in [2u32, 3, 4] {
            let mut supports = vec![axis_family(n, d); n];
            supports.push(standard_simplex(n).unwrap().scale(d));
            let spec = SystemSpec::new(n, supports).unwrap();
            let r = mixed_nss_bound(&spec).map_err(|e| e.to_string())?;
            let d = d as u64;
            let mut expected_mj = vec![big(d * d); n];
            expected_mj.push(big(d));
            ensure(r.m == big(d * d), || format!("n={n} d={d}: M = {}", r.m))?;
            ensure(r.m_j == expected_mj, || {
                format!("n={n} d={d}: M_j = {:?}", r.m_j)
            })?;
            ensure(r.value == big(d * d * d), || {
                format!("n={n} d={d}: N = {}", r.value)
            })?;
        }
    }
    within(start, Duration::from_secs(30))
        .map(|t| format!("6/6 grid points: M = d^2, M_j, N = d^3 ({t})"))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let family = |n: usize, big_d: u32, ds: &[u32]| -> SystemSpec {
        let a = diagonal_family(n, big_d);
        SystemSpec::new(n, ds.iter().map(|&k| a.scale(k)).collect()).unwrap()
    };
    let cases: [(u32, &[u32], u64, u64); 2] = [(2, &[1, 3], 12, 144), (3, &[1, 1], 6, 36)];
    for (big_d, ds, want_mv, want_bound) in cases {
        let spec = family(2, big_d, ds);
        let got = mv(2, spec.supports().to_vec());
        ensure(got == big(want_mv), || {
            format!("D={big_d} D_i={ds:?}: MV = {got}, expected {want_mv}")
        })?;
        let b = mixed_noether_bound(&spec).map_err(|e| e.to_string())?.value;
        ensure(b == big(want_bound), || {
            format!("D={big_d} D_i={ds:?}: bound {b}, expected {want_bound}")
        })?;
        // n^2 D^2 D_n prod D_i
        let n = 2u64;
        let closed = n
            * n
            * (big_d as u64).pow(2)
            * *ds.last().unwrap() as u64
            * ds.iter().map(|&x| x as u64).product::<u64>();
        if ds.iter().all(|&x| x == 1) {
            ensure(b == big(closed), || {
                format!("closed form {closed} differs from {b}")
            })?;
        }
    }
    within(start, Duration::from_secs(5))
        .map(|t| format!("MV 12 / bound 144 and MV 6 / bound 36 ({t})"))
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut passed = 0;
    for i in 0..25 {
        let n = rng.random_range(2..=3usize);
        let s = rng.random_range(1..=n);
        let supports: Vec<Support> = (0..s).map(|_| random_support(&mut rng, n, 6, 4)).collect();
        let refs: Vec<&Support> = supports.iter().collect();
        let lifted = lifted_mixed_volume(n, &refs).map_err(|e| e.to_string())?;
        let direct = padded_mixed_volume(n, &refs).map_err(|e| e.to_string())?;
        ensure(lifted == direct, || {
            format!("instance {i}: lifted {lifted} vs {direct}")
        })?;
        passed += 1;
    }
    Ok(format!("{passed}/25 lifted MV equals MV"))
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut passed = 0;
    for i in 0..30 {
        let n = rng.random_range(1..=4usize);
        let entries: Vec<Support> = (0..n).map(|_| random_support(&mut rng, n, 8, 5)).collect();
        let t = SupportTuple::new(n, entries).unwrap();
        let a = mixed_volume(&t).map_err(|e| e.to_string())?;
        let b = mixed_volume_oracle(&t, i).map_err(|e| e.to_string())?;
        ensure(a == b, || {
            format!("tuple {i} (n={n}): inclusion-exclusion {a}, oracle {b}")
        })?;
        passed += 1;
    }
    for n in 1..=5usize {
        for d in 1..=3u32 {
            let s = standard_simplex(n).unwrap().scale(d);
            let got = mixed_volume(&SupportTuple::from_groups(n, &[(&s, n)]).unwrap()).unwrap();
            ensure(got == BigInt::from(d).pow(n as u32), || {
                format!("MV((dDelta_{n})^{n}) = {got} for d={d}")
            })?;
        }
    }
    Ok(format!(
        "{passed}/30 oracle agreement; simplex dilates 15/15"
    ))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let tuple = |rng: &mut ChaCha8Rng| {
        let n = rng.random_range(1..=3usize);
        let t: Vec<Support> = (0..n).map(|_| random_support(rng, n, 5, 3)).collect();
        (n, t)
    };
    let instances = 20;
    for i in 0..instances {
        let (n, t) = tuple(&mut rng);
        let base = mv(n, t.clone());

        let mut sym = t.clone();
        sym.reverse();
        ensure(mv(n, sym) == base, || format!("symmetry, instance {i}"))?;

        let m = rng.random_range(2..=3u32);
        let mut scaled = t.clone();
        scaled[0] = t[0].scale(m);
        ensure(mv(n, scaled) == BigInt::from(m) * &base, || {
            format!("scaling, instance {i}")
        })?;

        let moved: Vec<Support> = t
            .iter()
            .map(|a| {
                a.translate(&ExponentVector::new(
                    (0..n).map(|_| rng.random_range(0..4)).collect(),
                ))
            })
            .collect();
        ensure(mv(n, moved) == base, || {
            format!("translation, instance {i}")
        })?;

        let mut bigger = t.clone();
        bigger[0] = t[0].union(&random_support(&mut rng, n, 2, 3)).unwrap();
        ensure(mv(n, bigger) >= base, || {
            format!("monotonicity, instance {i}")
        })?;

        let b = random_support(&mut rng, n, 4, 2);
        let sum = Support::new(
            n,
            t[0].points()
                .flat_map(|p| b.points().map(move |q| p.add(q))),
        )
        .unwrap();
        let (mut with_sum, mut with_b) = (t.clone(), t.clone());
        with_sum[0] = sum;
        with_b[0] = b;
        ensure(mv(n, with_sum) == &base + mv(n, with_b), || {
            format!("multilinearity, instance {i}")
        })?;
    }
    Ok(format!("{instances} instances each for symmetry, scaling, translation, monotonicity, multilinearity"))
}

fn poly(n: usize, terms: &[(&[u32], i64)]) -> SparsePolynomial {
    SparsePolynomial::from_ints(n, terms).unwrap()
}

fn corpus() -> Vec<(&'static str, Vec<SparsePolynomial>)> {
    vec![
        (
            "x, x - 1",
            vec![poly(1, &[(&[1], 1)]), poly(1, &[(&[1], 1), (&[0], -1)])],
        ),
        (
            "x1, 1 - x1 x2",
            vec![
                poly(2, &[(&[1, 0], 1)]),
                poly(2, &[(&[0, 0], 1), (&[1, 1], -1)]),
            ],
        ),
        (
            "axis family n=2 d=2, system a",
            vec![
                poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 2), (&[2, 0], 1)]),
                poly(
                    2,
                    &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], 1), (&[2, 0], 3)],
                ),
                poly(
                    2,
                    &[
                        (&[0, 0], 1),
                        (&[1, 0], 1),
                        (&[2, 0], 1),
                        (&[1, 1], 1),
                        (&[0, 2], 1),
                    ],
                ),
            ],
        ),
        (
            "axis family n=2 d=2, system b",
            vec![
                poly(2, &[(&[0, 0], -1), (&[0, 1], 1), (&[2, 0], 1)]),
                poly(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[2, 0], 2)]),
                poly(2, &[(&[0, 0], 3), (&[0, 2], 1), (&[1, 1], -1)]),
            ],
        ),
        (
            "x^2 - 1, x - 2",
            vec![
                poly(1, &[(&[2], 1), (&[0], -1)]),
                poly(1, &[(&[1], 1), (&[0], -2)]),
            ],
        ),
        (
            "x1 x2 - 1, x1",
            vec![
                poly(2, &[(&[1, 1], 1), (&[0, 0], -1)]),
                poly(2, &[(&[1, 0], 1)]),
            ],
        ),
        (
            "x1 - 1, x2 - 1, x1 + x2",
            vec![
                poly(2, &[(&[1, 0], 1), (&[0, 0], -1)]),
                poly(2, &[(&[0, 1], 1), (&[0, 0], -1)]),
                poly(2, &[(&[1, 0], 1), (&[0, 1], 1)]),
            ],
        ),
        (
            "diagonal family n=2 delta=2",
            vec![
                poly(2, &[(&[0, 0], 1), (&[1, 1], 1), (&[2, 2], 1)]),
                poly(2, &[(&[1, 0], 1), (&[0, 1], -1), (&[2, 2], 2)]),
                poly(2, &[(&[0, 0], -2), (&[1, 0], 1), (&[1, 1], 3)]),
            ],
        ),
        (
            "x, x - 1, x - 2, x^2 + 1 (s > n + 1)",
            vec![
                poly(1, &[(&[1], 1)]),
                poly(1, &[(&[1], 1), (&[0], -1)]),
                poly(1, &[(&[1], 1), (&[0], -2)]),
                poly(1, &[(&[2], 1), (&[0], 1)]),
            ],
        ),
        (
            "x1 - 1, x2 - x1, x3 - x2, x3",
            vec![
                poly(3, &[(&[1, 0, 0], 1), (&[0, 0, 0], -1)]),
                poly(3, &[(&[0, 1, 0], 1), (&[1, 0, 0], -1)]),
                poly(3, &[(&[0, 0, 1], 1), (&[0, 1, 0], -1)]),
                poly(3, &[(&[0, 0, 1], 1)]),
            ],
        ),
        (
            "x1^2 + x2^2 - 1, x1 - 2, x2 - 5",
            vec![
                poly(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]),
                poly(2, &[(&[1, 0], 1), (&[0, 0], -2)]),
                poly(2, &[(&[0, 1], 1), (&[0, 0], -5)]),
            ],
        ),
        ("3, x", vec![poly(1, &[(&[0], 3)]), poly(1, &[(&[1], 1)])]),
    ]
}

fn spec_of(fs: &[SparsePolynomial]) -> SystemSpec {
    let n = fs[0].dim();
    SystemSpec::new(n, fs.iter().map(|f| f.support().unwrap()).collect()).unwrap()
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let systems = corpus();
    let mut summary = Vec::new();
    for (name, fs) in &systems {
        let spec = spec_of(fs);
        let cap = applicable_nss_cap(&spec).map_err(|e| e.to_string())?;
        let cap_u = u64::try_from(&cap.cap).map_err(|e| e.to_string())?;
        let found = certificate_search(fs, &SearchMode::TotalDegree, cap_u)
            .map_err(|e| format!("{name}: {e}"))?;
        let cert = found
            .certificate()
            .ok_or_else(|| format!("{name}: no certificate at the bound {cap_u}"))?;
        ensure(verify_certificate(fs, cert).unwrap(), || {
            format!("{name}: certificate does not verify")
        })?;
        let minimal = minimal_certificate_degree(fs, cap_u)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{name}: minimal search found nothing"))?;
        ensure(minimal.cap_used <= cap_u, || {
            format!("{name}: minimal {} > bound {cap_u}", minimal.cap_used)
        })?;
        if spec.len() > spec.dim() + 1 {
            // the subset form caps deg(g_i)
            let many = mixed_nss_bound_many(&spec)
                .map_err(|e| e.to_string())?
                .value;
            let k = minimal_certificate_degree(fs, cap_u)
                .unwrap()
                .unwrap()
                .max_cofactor_degree();
            ensure(BigInt::from(k) <= many, || {
                format!("{name}: deg g_i = {k} above {many}")
            })?;
        }
        summary.push(format!("{}<={}", minimal.cap_used, cap_u));
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{}/{} systems certified; minimal<=bound: {} ({t})",
        systems.len(),
        systems.len(),
        summary.join(" ")
    ))
}

fn criterion_8() -> Check {
    let fs = vec![poly(1, &[(&[1], 1)]), poly(1, &[(&[1], 1)])];
    let cap = applicable_nss_cap(&spec_of(&fs)).unwrap().cap;
    let cap = u64::try_from(&cap).unwrap();
    for c in 0..=cap {
        let out =
            certificate_search(&fs, &SearchMode::TotalDegree, c).map_err(|e| e.to_string())?;
        ensure(out.certificate().is_none(), || {
            format!("unexpected certificate at cap {c}")
        })?;
    }
    let (stdout, code) = common::run_documented(common::DOCUMENTED.last().unwrap());
    ensure(code == 3, || format!("CLI exit code {code}"))?;
    let v: Value = serde_json::from_str(&stdout).map_err(|e| e.to_string())?;
    ensure(v["ideal_is_proper"] == true, || {
        "CLI did not report a proper ideal".into()
    })?;
    Ok(format!("infeasible at caps 0..={cap}; CLI exit 3"))
}

fn criterion_9() -> Check {
    let mut n = 0;
    for case in common::DOCUMENTED {
        let (stdout, code) = common::run_documented(case);
        ensure(code == case.3, || {
            format!("{}: exit {code}, expected {}", case.0, case.3)
        })?;
        ensure(stdout == common::golden(case.0), || {
            format!("{}: output differs from golden file", case.0)
        })?;
        n += 1;
    }
    let value = |name: &str| -> Value {
        let case = common::DOCUMENTED.iter().find(|c| c.0 == name).unwrap();
        serde_json::from_str(&common::run_documented(case).0).unwrap()
    };
    ensure(value("mv_simplex2") == 1, || "mv on two Delta_2".into())?;
    ensure(value("mv_scaled_diagonal") == 12, || {
        "mv on the scaled diagonal file".into()
    })?;
    ensure(value("mv_scaled_diagonal_oracle") == 12, || {
        "mv --oracle".into()
    })?;
    ensure(value("nss_axis_family")["mixed_nss"] == 27, || {
        "bounds nss".into()
    })?;
    ensure(value("nss_unmixed_diagonal_family")["bound"] == 36, || {
        "bounds nss --unmixed".into()
    })?;
    ensure(value("noether_scaled_diagonal")["bound"] == 144, || {
        "bounds noether".into()
    })?;
    ensure(
        value("cert_telescoping_minimal")["minimal_cap"] == 1,
        || "certificate --minimal".into(),
    )?;
    let cof = value("cert_monomial_cap2")["certificate"]["cofactors"].clone();
    ensure(
        cof == serde_json::json!([[{"coeff": "1", "exp": [0, 1]}], [{"coeff": "1", "exp": [0, 0]}]]),
        || format!("certificate --cap 2 gave {cof}"),
    )?;
    Ok(format!(
        "{n}/{n} documented invocations byte-identical with expected exit codes"
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Check);
    let criteria: [Criterion; 9] = [
        ("diagonal family grid", criterion_1),
        ("axis family grid", criterion_2),
        ("scaled diagonal instances", criterion_3),
        ("lifting identity", criterion_4),
        ("mixed volume cross-validation", criterion_5),
        ("mixed volume axioms", criterion_6),
        ("certificate soundness and bound compliance", criterion_7),
        ("negative control", criterion_8),
        ("CLI contract", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
