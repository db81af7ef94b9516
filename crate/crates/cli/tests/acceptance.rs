//! Acceptance criteria 1-12, one PASS/FAIL line each.
//!
//! Lines go straight to the process stdout so that they appear in the test
//! log without `--nocapture`.

use std::fs;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use ratcurve_cli::{cache, golden, table};
use ratcurve_core::{
    dimension_gate, jfunction_onepoint, ConstraintTuple, CuspRoute, Engine, ExactScalar,
    LinearClass, MergeCoefficient, PlanarLemma, TrrPair, WdvvPivot,
};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome>);

fn int(v: i64) -> ExactScalar {
    ExactScalar::from(v)
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn core<T>(r: ratcurve_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn golden_table(id: u32, spot: &[(u32, &[u32], &str)]) -> Outcome {
    let t = golden::table(id).ok_or("no such table")?;
    let engine = Engine::new();
    let entries = core(table::compute(&engine, t))?;
    if let Some(m) = table::first_mismatch(t, &entries) {
        return Err(format!(
            "d={} {}: computed {}, expected {}",
            m.d, m.mu, m.computed, m.expected
        ));
    }
    for &(d, mu, want) in spot {
        let e = entries
            .iter()
            .find(|e| e.cell.d == d && e.cell.mu == mu)
            .ok_or_else(|| format!("no cell d={d} {}", golden::format_mu(mu)))?;
        ensure(e.result.count.to_string() == want, || {
            format!("d={d}: {}", e.result.count)
        })?;
    }
    let counts: Vec<String> = entries.iter().map(|e| e.result.count.to_string()).collect();
    Ok(format!(
        "all {} entries exact: {}",
        entries.len(),
        counts.join(",")
    ))
}

/// Multisets of codimensions in `[2, n]` whose excesses `a - 1` sum to `target`.
fn codim_sets(n: u32, target: u32, max_len: usize) -> Vec<Vec<u32>> {
    fn go(left: u32, top: u32, cur: &mut Vec<u32>, max_len: usize, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for a in (2..=top.min(left + 1)).rev() {
            cur.push(a);
            go(left - (a - 1), a, cur, max_len, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(target, n, &mut Vec::new(), max_len, &mut out);
    out
}

fn distinct_triples(codims: &[u32]) -> Vec<WdvvPivot> {
    let mut out = Vec::new();
    for i in 0..codims.len() {
        for j in 0..codims.len() {
            for k in 0..codims.len() {
                if i == j || j == k || i == k {
                    continue;
                }
                let p = WdvvPivot {
                    a: codims[i],
                    b: codims[j],
                    c: codims[k],
                };
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn c1_plane_counts() -> Outcome {
    let e = Engine::new();
    let got: Vec<String> = (1..=4)
        .map(|d| e.nd_plane(d).map(|v| v.to_string()))
        .collect::<Result<_, _>>()
        .map_err(|x| x.to_string())?;
    ensure(got == ["1", "1", "12", "620"], || got.join(","))?;
    Ok(format!("n_d = {}", got.join(",")))
}

fn c7_classical() -> Outcome {
    let e = Engine::new();
    for d in 1..=3 {
        ensure(core(e.triple_point_count_p2(d))?.count.is_zero(), || {
            format!("table 1 d={d}")
        })?;
        ensure(core(e.tacnode_count_p2(d))?.count.is_zero(), || {
            format!("table 2 d={d}")
        })?;
    }
    for (p, q) in [(6, 1), (5, 3), (4, 5)] {
        ensure(
            core(e.triple_point_count_p3(4, p, q))?.count.is_zero(),
            || format!("table 3 ({p},{q})"),
        )?;
        ensure(core(e.tacnode_count_p3(4, p, q))?.count.is_zero(), || {
            format!("table 4 ({p},{q})")
        })?;
    }
    let t3 = core(e.triple_point_count_p3(4, 3, 7))?.count;
    let t1 = core(e.triple_point_count_p2(4))?.count;
    ensure(t3 == t1 && t1 == int(60), || format!("triple {t3} vs {t1}"))?;
    let t4 = core(e.tacnode_count_p3(4, 3, 7))?.count;
    let t2 = core(e.tacnode_count_p2(4))?.count;
    ensure(t4 == t2 && t2 == int(1296), || {
        format!("tacnode {t4} vs {t2}")
    })?;
    let mu = core(ConstraintTuple::from_counts(4, 3, 0, 4))?;
    let cusp = core(e.cusp_count(4, 3, &mu, CuspRoute::A))?.count;
    let planar = core(e.planar_node_lemmas(PlanarLemma::Cusp, 3))?;
    let direct = core(e.cusp_count(2, 3, &ConstraintTuple::new(vec![2; 7]), CuspRoute::A))?.count;
    ensure(cusp == int(24) && planar == cusp && direct == cusp, || {
        format!("cusp {cusp}, {planar}, {direct}")
    })?;
    Ok("low-degree vanishing, planar specialization 60 and 1296, cuspidal cubics 24".into())
}

fn c8_properties() -> Outcome {
    let e = Engine::new();
    // associativity with every distinct pivot
    let mut pivots = 0;
    let mut instances = Vec::new();
    for n in 2..=4u32 {
        for d in 1..=3u32 {
            for codims in codim_sets(n, d * (n + 1) + n - 3, 12) {
                if codims.len() < 3 {
                    continue;
                }
                let value = core(e.primary_invariant(n, d, &codims))?;
                for p in distinct_triples(&codims) {
                    let v = core(e.primary_with_pivot(n, d, &codims, p))?;
                    ensure(v == value, || {
                        format!("pivot {p:?} on P^{n} d={d} {codims:?}: {v} vs {value}")
                    })?;
                    pivots += 1;
                }
                instances.push((n, d, codims));
            }
        }
    }
    ensure(pivots >= 100, || format!("only {pivots} pivot checks"))?;

    // the gate is exact: shifting any one codimension breaks it and kills the number
    let mut gated = 0;
    for (n, d, codims) in &instances {
        let ins: Vec<(u32, u32)> = codims.iter().map(|&a| (0, a)).collect();
        ensure(dimension_gate(*n, *d, &ins) == 0, || {
            format!("gate on {codims:?}")
        })?;
        let mut off = codims.clone();
        off[0] -= 1;
        let ins: Vec<(u32, u32)> = off.iter().map(|&a| (0, a)).collect();
        ensure(dimension_gate(*n, *d, &ins) != 0, || "gate".into())?;
        ensure(core(e.primary_invariant(*n, *d, &off))?.is_zero(), || {
            format!("off-gate {off:?}")
        })?;
        gated += 1;
    }

    // string, divisor and dilaton, with the left side evaluated through the
    // recursion relation rather than the shortcut being tested
    let mut identities = 0;
    for n in 2..=3u32 {
        for d in 1..=2u32 {
            for c in 0..=n {
                for rest in codim_sets(n, 3, 3).into_iter().chain([vec![n, n]]) {
                    let load: u32 = rest.iter().sum::<u32>() + c;
                    let m = rest.len() as u32 + 2;
                    let dim = d * (n + 1) + n - 3 + m;
                    let Some(j) = dim.checked_sub(load) else {
                        continue;
                    };
                    if j == 0 || rest.len() < 2 {
                        continue;
                    }
                    let pair = TrrPair {
                        a: rest[0],
                        b: rest[1],
                    };
                    // string: <tau_j(H^c) 1 R> = <tau_{j-1}(H^c) R>
                    let mut with_one = rest.clone();
                    with_one.push(0);
                    let lhs = core(e.descendant_with_pair(n, d, (j, c), &with_one, pair))?;
                    let rhs = core(e.descendant_invariant(n, d, (j - 1, c), &rest))?;
                    ensure(lhs == rhs, || {
                        format!("string P^{n} d={d} j={j} c={c} {rest:?}")
                    })?;
                    // divisor: <tau_j'(H^c) H R> = d<tau_j'(H^c) R> + <tau_{j'-1}(H^{c+1}) R>
                    if j >= 2 && c < n {
                        let jd = j - 1;
                        let mut with_h = rest.clone();
                        with_h.push(1);
                        let lhs = core(e.descendant_with_pair(n, d, (jd, c), &with_h, pair))?;
                        let rhs = int(d as i64)
                            * core(e.descendant_invariant(n, d, (jd, c), &rest))?
                            + core(e.descendant_invariant(n, d, (jd - 1, c + 1), &rest))?;
                        ensure(lhs == rhs, || {
                            format!("divisor P^{n} d={d} j={jd} c={c} {rest:?}")
                        })?;
                    }
                    identities += 1;
                }
            }
        }
    }
    // dilaton: <tau_1(1) R> = (|R| - 2) <R>
    for (n, d, codims) in instances.iter().filter(|(n, d, _)| *n <= 3 && *d <= 2) {
        let pair = TrrPair {
            a: codims[0],
            b: codims[1],
        };
        let lhs = core(e.descendant_with_pair(*n, *d, (1, 0), codims, pair))?;
        let rhs = int(codims.len() as i64 - 2) * core(e.primary_invariant(*n, *d, codims))?;
        ensure(lhs == rhs, || format!("dilaton P^{n} d={d} {codims:?}"))?;
        identities += 1;
    }

    // every one-point descendant against the series
    let mut series = 0;
    for n in 1..=4u32 {
        for d in 1..=3u32 {
            for c in 0..=n {
                let Some(j) = ((n + 1) * d + n).checked_sub(2 + c) else {
                    continue;
                };
                let got = core(e.descendant_invariant(n, d, (j, c), &[]))?;
                let want = jfunction_onepoint(n, d, j, c);
                ensure(got == want, || {
                    format!("series n={n} d={d} j={j} c={c}: {got} vs {want}")
                })?;
                series += 1;
            }
        }
    }

    let pts = |k| ConstraintTuple::new(vec![2; k]);
    let oracles = [
        (core(e.descendant_invariant(2, 1, (1, 2), &[]))?, 1),
        (core(e.descendant_invariant(2, 1, (2, 1), &[]))?, -3),
        (core(e.descendant_invariant(2, 1, (3, 0), &[]))?, 6),
        (core(e.modified_descendant(2, 1, 0, 1, 0, &pts(2)))?, -2),
        (core(e.modified_descendant(2, 1, 0, 2, 0, &pts(1)))?, 0),
    ];
    for (got, want) in &oracles {
        ensure(*got == int(*want), || format!("oracle {got} vs {want}"))?;
    }
    Ok(format!(
        "{pivots} pivot checks on {} instances, {gated} gate checks, {identities} string/divisor/dilaton, {series} series, 5 oracles",
        instances.len()
    ))
}

fn c9_routes() -> Outcome {
    let e = Engine::new();
    let mut compared = 0;
    let t5 = golden::table(5).unwrap();
    let mut queries: Vec<(u32, u32, ConstraintTuple)> = Vec::new();
    for c in t5.cells {
        queries.push((
            4,
            c.d,
            core(ConstraintTuple::from_counts(4, c.mu[0], c.mu[1], c.mu[2]))?,
        ));
    }
    for d in 1..=5u32 {
        queries.push((2, d, ConstraintTuple::new(vec![2; 3 * d as usize - 2])));
    }
    for (n, d, mu) in &queries {
        let a = core(e.cusp_count(*n, *d, mu, CuspRoute::A))?;
        let b = core(e.cusp_count(*n, *d, mu, CuspRoute::B))?;
        ensure(a == b, || {
            format!("P^{n} d={d}: A {} vs B {}", a.count, b.count)
        })?;
        compared += 1;
    }
    // hyperplane constraints are what pin the merge coefficient
    let mu = ConstraintTuple::new(vec![4, 4, 4, 2, 2, 2, 2, 1, 1, 1]);
    let a = core(e.cusp_raw_route_a(4, 3, &mu))?;
    let b = core(e.cusp_raw_route_b(4, 3, &mu, MergeCoefficient::ComponentFactorial))?;
    ensure(a == int(648) && b == a, || {
        format!("calibration {a} vs {b}")
    })?;
    for d in 1..=6u32 {
        let direct = core(e.cusp_count(
            2,
            d,
            &ConstraintTuple::new(vec![2; 3 * d as usize - 2]),
            CuspRoute::A,
        ))?
        .count;
        let agg = core(e.planar_aggregates(d))?;
        let closed = int(3) * &agg.a + int(3) * &agg.b + int(2) * &agg.c;
        ensure(direct == closed, || {
            format!("P^2 d={d}: {direct} vs 3A+3B+2C = {closed}")
        })?;
    }
    Ok(format!(
        "A = B on {compared} queries, calibration 648, 3A+3B+2C for d <= 6"
    ))
}

fn c10_cancellations() -> Outcome {
    let e = Engine::new();
    for (p, q) in [(2, 1), (1, 3), (0, 5)] {
        let mu = core(ConstraintTuple::from_counts(3, p, q, 0))?;
        let parts = [
            ("S2", e.level1_s2(2, &mu)),
            ("V2^(1)", e.level1_v2_1(2, &mu)),
            ("V2^(1,1) with a", e.level1_v2_11(LinearClass::A, 2, &mu)),
            (
                "V2^(1,1) with eta",
                e.level1_v2_11(LinearClass::Eta, 2, &mu),
            ),
        ];
        for (what, v) in parts {
            let v = core(v)?;
            ensure(v.is_zero(), || format!("{what} ({p},{q}) = {v}"))?;
        }
    }
    Ok("all four vanish at d=2 for (2,1), (1,3), (0,5)".into())
}

fn c11_integrality() -> Outcome {
    let e = Engine::new();
    let mut checked = 0;
    let mut check = |r: ratcurve_core::Result<ratcurve_core::CountResult>,
                     what: String|
     -> Result<(), String> {
        let r = r.map_err(|x| format!("{what}: {x}"))?;
        ensure(r.count.is_integer() && !r.count.is_negative(), || {
            format!("{what}: {}", r.count)
        })?;
        checked += 1;
        Ok(())
    };
    for d in 1..=8 {
        check(e.triple_point_count_p2(d), format!("P^2 triple d={d}"))?;
        check(e.tacnode_count_p2(d), format!("P^2 tacnode d={d}"))?;
    }
    for d in 1..=6u32 {
        check(
            e.cusp_count(
                2,
                d,
                &ConstraintTuple::new(vec![2; 3 * d as usize - 2]),
                CuspRoute::A,
            ),
            format!("P^2 cusp d={d}"),
        )?;
    }
    for d in 1..=5u32 {
        for p in 0..=(4 * d - 3) / 2 {
            let q = 4 * d - 3 - 2 * p;
            check(
                e.triple_point_count_p3(d, p, q),
                format!("P^3 triple d={d} ({p},{q})"),
            )?;
            check(
                e.tacnode_count_p3(d, p, q),
                format!("P^3 tacnode d={d} ({p},{q})"),
            )?;
        }
    }
    for d in 1..=4u32 {
        for p in 0..=(4 * d - 2) / 2 {
            let mu = core(ConstraintTuple::from_counts(3, p, 4 * d - 2 - 2 * p, 0))?;
            check(
                e.cusp_count(3, d, &mu, CuspRoute::A),
                format!("P^3 cusp d={d} p={p}"),
            )?;
        }
    }
    for d in 1..=4u32 {
        for p in 0..=(5 * d - 2) / 3 {
            for q in 0..=(5 * d - 2 - 3 * p) / 2 {
                let r = 5 * d - 2 - 3 * p - 2 * q;
                let mu = core(ConstraintTuple::from_counts(4, p, q, r))?;
                check(
                    e.cusp_count(4, d, &mu, CuspRoute::A),
                    format!("P^4 cusp d={d} ({p},{q},{r})"),
                )?;
            }
        }
    }
    Ok(format!("{checked} counts are non-negative integers"))
}

fn c12_cache() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("table3.cache");
    let run = || -> Result<(serde_json::Value, Vec<u8>), String> {
        let o = Command::new(env!("CARGO_BIN_EXE_ratcurve"))
            .args([
                "--cache",
                path.to_str().unwrap(),
                "table",
                "--id",
                "3",
                "--format",
                "json",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.success(), || {
            String::from_utf8_lossy(&o.stderr).into_owned()
        })?;
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
        Ok((v, fs::read(&path).map_err(|e| e.to_string())?))
    };
    let (cold, cold_file) = run()?;
    let (warm, warm_file) = run()?;
    let evals = |v: &serde_json::Value| {
        v["timing"]["evaluations"]
            .as_str()
            .unwrap_or("")
            .parse::<u64>()
            .unwrap_or(0)
    };
    ensure(
        cold["cache"]["status"] == "cold" && warm["cache"]["status"] == "warm",
        || "cache not used".into(),
    )?;
    ensure(cold["entries"] == warm["entries"], || {
        "warm values differ".into()
    })?;
    ensure(evals(&warm) < evals(&cold), || {
        format!("evaluations {} then {}", evals(&cold), evals(&warm))
    })?;
    ensure(cold_file == warm_file, || {
        "cache file changed on a warm run".into()
    })?;
    let engine = Engine::new();
    engine.preload(cache::load(&path).map_err(|e| e.to_string())?);
    let again = dir.path().join("again.cache");
    cache::save(&engine, &again).map_err(|e| e.to_string())?;
    ensure(
        fs::read(&again).map_err(|e| e.to_string())? == cold_file,
        || "save/load/save differs".into(),
    )?;
    Ok(format!(
        "{} entries, evaluations {} cold / {} warm, file byte-stable",
        cold["cache"]["stored"].as_str().unwrap_or("?"),
        evals(&cold),
        evals(&warm)
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "plane rational curves",
            Duration::from_secs(1),
            Box::new(c1_plane_counts),
        ),
        (
            2,
            "table 1, triple points in P^2",
            Duration::from_secs(60),
            Box::new(|| golden_table(1, &[])),
        ),
        (
            3,
            "table 2, tacnodes in P^2",
            Duration::from_secs(60),
            Box::new(|| golden_table(2, &[])),
        ),
        (
            4,
            "table 3, triple points in P^3",
            Duration::from_secs(1800),
            Box::new(|| {
                golden_table(
                    3,
                    &[
                        (4, &[3, 7], "60"),
                        (4, &[2, 9], "1280"),
                        (4, &[1, 11], "19640"),
                        (5, &[8, 1], "8"),
                        (6, &[10, 1], "4680"),
                    ],
                )
            }),
        ),
        (
            5,
            "table 4, tacnodes in P^3",
            Duration::from_secs(1800),
            Box::new(|| {
                golden_table(
                    4,
                    &[
                        (4, &[2, 9], "27648"),
                        (4, &[1, 11], "426672"),
                        (5, &[6, 5], "111840"),
                    ],
                )
            }),
        ),
        (
            6,
            "table 5, cusps in P^4",
            Duration::from_secs(1800),
            Box::new(|| {
                golden_table(
                    5,
                    &[
                        (3, &[3, 0, 4], "24"),
                        (3, &[2, 1, 5], "240"),
                        (4, &[4, 1, 4], "1680"),
                        (5, &[7, 1, 0], "120"),
                    ],
                )
            }),
        ),
        (
            7,
            "classical checks",
            Duration::from_secs(1800),
            Box::new(c7_classical),
        ),
        (
            8,
            "property suite",
            Duration::from_secs(1800),
            Box::new(c8_properties),
        ),
        (
            9,
            "cross-route consistency",
            Duration::from_secs(1800),
            Box::new(c9_routes),
        ),
        (
            10,
            "structural cancellations",
            Duration::from_secs(1800),
            Box::new(c10_cancellations),
        ),
        (
            11,
            "integrality",
            Duration::from_secs(1800),
            Box::new(c11_integrality),
        ),
        (
            12,
            "cache round trip on table 3",
            Duration::from_secs(1800),
            Box::new(c12_cache),
        ),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (id, name, limit, check) in criteria {
        let started = Instant::now();
        let outcome = check();
        let took = started.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail}; took {took:?}, limit {limit:?}")),
            other => other,
        };
        let line = match &outcome {
            Ok(detail) => format!(
                "criterion {id:>2} PASS {name}: {detail} [{:.2}s]",
                took.as_secs_f64()
            ),
            Err(why) => format!(
                "criterion {id:>2} FAIL {name}: {why} [{:.2}s]",
                took.as_secs_f64()
            ),
        };
        writeln!(out, "{line}").unwrap();
        if outcome.is_err() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
