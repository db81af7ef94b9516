//! Built-in consistency checks.

use ratcurve_core::{
    jfunction_onepoint, ConstraintTuple, CuspRoute, Engine, ExactScalar, LinearClass, PlanarLemma,
};

use crate::golden::TABLES;
use crate::table::{compute, first_mismatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub failure: Option<String>,
}

type Check = (String, Box<dyn Fn(&Engine) -> Result<(), String>>);

fn expect(got: ratcurve_core::Result<ExactScalar>, want: i64) -> Result<(), String> {
    match got {
        Ok(v) if v == ExactScalar::from(want) => Ok(()),
        Ok(v) => Err(format!("got {v}, expected {want}")),
        Err(e) => Err(e.to_string()),
    }
}

fn value_check(
    name: &str,
    want: i64,
    f: impl Fn(&Engine) -> ratcurve_core::Result<ExactScalar> + 'static,
) -> Check {
    (name.to_string(), Box::new(move |e| expect(f(e), want)))
}

/// Both values must equal `want`.
fn pair_check(
    name: &str,
    want: i64,
    f: impl Fn(&Engine) -> ratcurve_core::Result<(ExactScalar, ExactScalar)> + 'static,
) -> Check {
    let check = move |e: &Engine| {
        let (x, y) = f(e).map_err(|err| err.to_string())?;
        expect(Ok(x), want)?;
        expect(Ok(y), want)
    };
    (name.to_string(), Box::new(check))
}

fn points(n: u32, k: usize) -> ConstraintTuple {
    ConstraintTuple::new(vec![n; k])
}

fn quick_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for (d, want) in [(1, 1), (2, 1), (3, 12), (4, 620)] {
        checks.push(value_check(
            &format!("plane rational curves, d={d}"),
            want,
            move |e| e.nd_plane(d),
        ));
    }
    checks.push(value_check("<tau_1(H^2)>_1 on P^2", 1, |e| {
        e.descendant_invariant(2, 1, (1, 2), &[])
    }));
    checks.push(value_check("<tau_2(H)>_1 on P^2", -3, |e| {
        e.descendant_invariant(2, 1, (2, 1), &[])
    }));
    checks.push(value_check("<tau_3(1)>_1 on P^2", 6, |e| {
        e.descendant_invariant(2, 1, (3, 0), &[])
    }));
    checks.push(value_check(
        "modified psi, lines through 2 points",
        -2,
        |e| e.modified_descendant(2, 1, 0, 1, 0, &points(2, 2)),
    ));
    checks.push(value_check(
        "modified psi squared, lines through 1 point",
        0,
        |e| e.modified_descendant(2, 1, 0, 2, 0, &points(2, 1)),
    ));
    checks.push(value_check("planar cuspidal cubics", 24, |e| {
        e.cusp_count(2, 3, &points(2, 7), CuspRoute::A)
            .map(|r| r.count)
    }));
    checks.push(value_check("lines through 2 points of P^3", 1, |e| {
        e.primary_invariant(3, 1, &[3, 3])
    }));
    checks.push(value_check("lines meeting 4 lines of P^3", 2, |e| {
        e.primary_invariant(3, 1, &[2; 4])
    }));
    checks.push((
        "one-point descendants agree with the series".to_string(),
        Box::new(|e: &Engine| {
            for n in 1..=3u32 {
                for d in 1..=2u32 {
                    for c in 0..=n {
                        let Some(j) = ((n + 1) * d + n).checked_sub(2 + c) else {
                            continue;
                        };
                        let got = e
                            .descendant_invariant(n, d, (j, c), &[])
                            .map_err(|x| x.to_string())?;
                        let want = jfunction_onepoint(n, d, j, c);
                        if got != want {
                            return Err(format!("n={n} d={d} j={j} c={c}: {got} vs {want}"));
                        }
                    }
                }
            }
            Ok(())
        }),
    ));
    let cancellations: [(u32, u32, u32); 4] = [(1, 0, 1), (2, 2, 1), (2, 1, 3), (2, 0, 5)];
    for (d, p, q) in cancellations {
        checks.push((
            format!("level-1 cancellations in P^3, d={d} ({p},{q})"),
            Box::new(move |e: &Engine| {
                let mu = ConstraintTuple::from_counts(3, p, q, 0).map_err(|x| x.to_string())?;
                let parts = [
                    ("S2", e.level1_s2(d, &mu)),
                    ("V2^(1)", e.level1_v2_1(d, &mu)),
                    ("V2^(1,1) a", e.level1_v2_11(LinearClass::A, d, &mu)),
                    ("V2^(1,1) eta", e.level1_v2_11(LinearClass::Eta, d, &mu)),
                ];
                for (what, v) in parts {
                    expect(v, 0).map_err(|m| format!("{what}: {m}"))?;
                }
                Ok(())
            }),
        ));
    }
    checks
}

fn full_checks() -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for t in &TABLES {
        checks.push((
            format!("table {} matches", t.id),
            Box::new(move |e: &Engine| {
                let entries = compute(e, t).map_err(|x| x.to_string())?;
                match first_mismatch(t, &entries) {
                    None => Ok(()),
                    Some(m) => Err(format!(
                        "d={} {}: computed {}, expected {}",
                        m.d, m.mu, m.computed, m.expected
                    )),
                }
            }),
        ));
    }
    checks.push(pair_check(
        "P^3 (3,7) triple points equal planar quartics",
        60,
        |e| {
            Ok((
                e.triple_point_count_p3(4, 3, 7)?.count,
                e.triple_point_count_p2(4)?.count,
            ))
        },
    ));
    checks.push(pair_check(
        "P^3 (3,7) tacnodes equal planar quartics",
        1296,
        |e| {
            Ok((
                e.tacnode_count_p3(4, 3, 7)?.count,
                e.tacnode_count_p2(4)?.count,
            ))
        },
    ));
    checks.push(pair_check(
        "P^4 (3,0,4) cubic cusps equal planar cuspidal cubics",
        24,
        |e| {
            let mu = ConstraintTuple::from_counts(4, 3, 0, 4)?;
            Ok((
                e.cusp_count(4, 3, &mu, CuspRoute::A)?.count,
                e.planar_node_lemmas(PlanarLemma::Cusp, 3)?,
            ))
        },
    ));
    checks.push((
        "cusp routes A and B agree".to_string(),
        Box::new(|e: &Engine| {
            let mut queries: Vec<(u32, u32, ConstraintTuple)> = (1..=5)
                .map(|d| (2, d, points(2, 3 * d as usize - 2)))
                .collect();
            for c in TABLES[4].cells {
                let mu = ConstraintTuple::from_counts(4, c.mu[0], c.mu[1], c.mu[2])
                    .map_err(|x| x.to_string())?;
                queries.push((4, c.d, mu));
            }
            for (n, d, mu) in queries {
                let a = e
                    .cusp_count(n, d, &mu, CuspRoute::A)
                    .map_err(|x| x.to_string())?;
                let b = e
                    .cusp_count(n, d, &mu, CuspRoute::B)
                    .map_err(|x| x.to_string())?;
                if a != b {
                    return Err(format!("P^{n} d={d}: {} vs {}", a.count, b.count));
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "planar cusp count equals 3A+3B+2C".to_string(),
        Box::new(|e: &Engine| {
            for d in 1..=6u32 {
                let direct = e.cusp_count(2, d, &points(2, 3 * d as usize - 2), CuspRoute::A);
                let lemma = e
                    .planar_node_lemmas(PlanarLemma::Cusp, d)
                    .map_err(|x| x.to_string())?;
                let direct = direct.map_err(|x| x.to_string())?.count;
                if direct != lemma {
                    return Err(format!("d={d}: {direct} vs {lemma}"));
                }
            }
            Ok(())
        }),
    ));
    checks
}

pub fn run(engine: &Engine, level: Level) -> Vec<CheckOutcome> {
    let mut checks = quick_checks();
    if level == Level::Full {
        checks.extend(full_checks());
    }
    checks
        .into_iter()
        .map(|(name, f)| CheckOutcome {
            name,
            failure: f(engine).err(),
        })
        .collect()
}
