//! Filling the published tables and comparing them with the golden values.

use ratcurve_core::{ConstraintTuple, CountQuery, CountResult, Engine, ExactScalar, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::golden::{format_mu, GoldenCell, GoldenTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub cell: GoldenCell,
    pub result: CountResult,
}

/// The first cell whose computed count differs from the golden value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub table: u32,
    pub d: u32,
    pub mu: String,
    pub computed: String,
    pub expected: String,
}

pub fn query_for(table: &GoldenTable, cell: &GoldenCell) -> Result<CountQuery> {
    let mu = match cell.mu {
        [] => ConstraintTuple::new(vec![table.n; (3 * cell.d).saturating_sub(2) as usize]),
        [p, q] => ConstraintTuple::from_counts(table.n, *p, *q, 0)?,
        [p, q, r] => ConstraintTuple::from_counts(table.n, *p, *q, *r)?,
        _ => unreachable!("golden cells carry at most three counts"),
    };
    Ok(CountQuery {
        singularity: table.singularity,
        n: table.n,
        d: cell.d,
        mu,
    })
}

/// Evaluates every cell, fanning out over a shared engine. The entries come
/// back in table order.
pub fn compute(engine: &Engine, table: &GoldenTable) -> Result<Vec<TableEntry>> {
    table
        .cells
        .par_iter()
        .map(|cell| {
            let result = engine.singular_count(&query_for(table, cell)?)?;
            Ok(TableEntry {
                cell: *cell,
                result,
            })
        })
        .collect()
}

pub fn first_mismatch(table: &GoldenTable, entries: &[TableEntry]) -> Option<Mismatch> {
    table.cells.iter().zip(entries).find_map(|(golden, e)| {
        let expected: ExactScalar = golden.count.parse().ok()?;
        (e.result.count != expected).then(|| Mismatch {
            table: table.id,
            d: golden.d,
            mu: format_mu(golden.mu),
            computed: e.result.count.to_string(),
            expected: golden.count.to_string(),
        })
    })
}

pub fn render_text(table: &GoldenTable, entries: &[TableEntry]) -> String {
    let mut out = format!("table {}: {}\n", table.id, table.title);
    if table.n == 2 {
        let ds: Vec<String> = entries.iter().map(|e| e.cell.d.to_string()).collect();
        let counts: Vec<String> = entries.iter().map(|e| e.result.count.to_string()).collect();
        out += &format!("d: {}\ncount: {}\n", ds.join(","), counts.join(","));
    } else {
        for e in entries {
            out += &format!(
                "d={} {},{}\n",
                e.cell.d,
                format_mu(e.cell.mu),
                e.result.count
            );
        }
    }
    out
}

/// One row per cell. Constraint counts stay grouped as `(p,q)`, unquoted,
/// so that a row reads `4,(1,11),426672`.
pub fn render_csv(table: &GoldenTable, entries: &[TableEntry]) -> String {
    let mut out = match table.n {
        2 => "d,count,raw,divisor\n".to_string(),
        3 => "d,(p,q),count,raw,divisor\n".to_string(),
        _ => "d,(p,q,r),count,raw,divisor\n".to_string(),
    };
    for e in entries {
        let r = &e.result;
        if table.n == 2 {
            out += &format!("{},{},{},{}\n", e.cell.d, r.count, r.raw, r.divisor);
        } else {
            out += &format!(
                "{},{},{},{},{}\n",
                e.cell.d,
                format_mu(e.cell.mu),
                r.count,
                r.raw,
                r.divisor
            );
        }
    }
    out
}

#[derive(Serialize)]
pub struct JsonEntry {
    pub d: String,
    pub mu: Vec<String>,
    pub raw: String,
    pub divisor: String,
    pub count: String,
    pub expected: String,
}

pub fn json_entries(entries: &[TableEntry]) -> Vec<JsonEntry> {
    entries
        .iter()
        .map(|e| JsonEntry {
            d: e.cell.d.to_string(),
            mu: e.cell.mu.iter().map(u32::to_string).collect(),
            raw: e.result.raw.to_string(),
            divisor: e.result.divisor.to_string(),
            count: e.result.count.to_string(),
            expected: e.cell.count.to_string(),
        })
        .collect()
}
