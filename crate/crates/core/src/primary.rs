//! Primary genus-0 invariants of `P^n` through the associativity recursion.

use crate::engine::{
    counts_from, sorted_from, sub_multisets, total, weight, with, without, Counts, Engine,
};
use crate::error::{out_of_range, Result};
use crate::exact::{ExactScalar, InvariantKey};

/// Expected dimension minus total insertion degree. Each insertion is a pair
/// `(j, a)` standing for `tau_j(H^a)`; the invariant vanishes unless this is 0.
pub fn dimension_gate(n: u32, d: u32, insertions: &[(u32, u32)]) -> i64 {
    let m = insertions.len() as i64;
    let load: i64 = insertions.iter().map(|&(j, a)| (j + a) as i64).sum();
    d as i64 * (n as i64 + 1) + n as i64 - 3 + m - load
}

pub(crate) fn gate(n: u32, d: u32, points: u32, load: u32) -> bool {
    d as i64 * (n as i64 + 1) + n as i64 - 3 + points as i64 == load as i64
}

/// Three insertions chosen as `H^a`, `H^b`, `H^c` for one associativity step;
/// the frame is `(H^{a-1}, H | H^b, H^c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WdvvPivot {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

pub(crate) fn check_codims(n: u32, codims: &[u32]) -> Result<()> {
    if n < 1 {
        return Err(out_of_range("ambient dimension must be at least 1"));
    }
    if let Some(&a) = codims.iter().find(|&&a| a > n) {
        return Err(out_of_range(format!("codimension {a} exceeds n = {n}")));
    }
    Ok(())
}

impl Engine {
    /// `<H^{a_1} ... H^{a_m}>_d` on `P^n`.
    pub fn primary_invariant(&self, n: u32, d: u32, codims: &[u32]) -> Result<ExactScalar> {
        check_codims(n, codims)?;
        Ok(self.primary(n, d, &counts_from(n, codims)))
    }

    /// Number of rational plane curves of degree `d` through `3d - 1` points.
    pub fn nd_plane(&self, d: u32) -> Result<ExactScalar> {
        if d < 1 {
            return Err(out_of_range("degree must be at least 1"));
        }
        self.primary_invariant(2, d, &vec![2; 3 * d as usize - 1])
    }

    /// Evaluates one associativity step with a caller-chosen pivot instead of
    /// the default. Lower terms use the default recursion.
    pub fn primary_with_pivot(
        &self,
        n: u32,
        d: u32,
        codims: &[u32],
        pivot: WdvvPivot,
    ) -> Result<ExactScalar> {
        check_codims(n, codims)?;
        let counts = counts_from(n, codims);
        let mut rest = counts.clone();
        for x in [pivot.a, pivot.b, pivot.c] {
            if x > n || rest[x as usize] == 0 {
                return Err(out_of_range(format!(
                    "pivot codimension {x} is not an insertion"
                )));
            }
            rest[x as usize] -= 1;
        }
        if pivot.a < 1 || d < 1 {
            return Err(out_of_range("pivot needs a >= 1 and d >= 1"));
        }
        if !gate(n, d, total(&counts), weight(&counts)) {
            return Ok(ExactScalar::zero());
        }
        Ok(self.wdvv(n, d, &counts, pivot))
    }

    pub(crate) fn primary(&self, n: u32, d: u32, counts: &Counts) -> ExactScalar {
        let m = total(counts);
        if !gate(n, d, m, weight(counts)) {
            return ExactScalar::zero();
        }
        if d == 0 {
            return if m == 3 {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            };
        }
        if counts[0] > 0 {
            return ExactScalar::zero();
        }
        if m == 0 {
            // only <>_1 on P^1 passes the gate
            return ExactScalar::one();
        }
        if counts[1] > 0 {
            return ExactScalar::from(d as i64) * self.primary(n, d, &without(counts, 1));
        }
        if m == 2 {
            // the gate forces d = 1 and two points
            return ExactScalar::one();
        }
        let key = InvariantKey::new(n, d, None, &sorted_from(counts));
        if let Some(v) = self.level0_get(&key) {
            return v;
        }
        let v = self.wdvv(n, d, counts, default_pivot(counts));
        self.level0_put(key, v.clone());
        v
    }

    /// Solves the associativity relation on the frame `(H^{a-1}, H | H^b, H^c)`
    /// for the term with full degree and the full insertion set.
    fn wdvv(&self, n: u32, d: u32, counts: &Counts, p: WdvvPivot) -> ExactScalar {
        let mut rest = without(counts, p.a);
        rest = without(&rest, p.b);
        rest = without(&rest, p.c);
        let (x1, x2, x3, x4) = (p.a - 1, 1, p.b, p.c);
        let subs = sub_multisets(&rest);

        // sum over splittings of <y1 y2 S H^e>_{d1} <H^{n-e} y3 y4 S'>_{d2}
        let side = |y1: u32, y2: u32, y3: u32, y4: u32, skip_target: bool| {
            let mut acc = ExactScalar::zero();
            for d1 in 0..=d {
                let d2 = d - d1;
                for (s, s_rest, ways) in &subs {
                    // the first factor's gate fixes e
                    let e = d1 as i64 * (n as i64 + 1) + n as i64 + total(s) as i64
                        - (y1 + y2 + weight(s)) as i64;
                    if e < 0 || e > n as i64 {
                        continue;
                    }
                    let e = e as u32;
                    if skip_target && d1 == 0 && total(s) == 0 && e == n - p.a {
                        continue;
                    }
                    let left = with(&with(&with(s, y1), y2), e);
                    let f1 = self.primary(n, d1, &left);
                    if f1.is_zero() {
                        continue;
                    }
                    let right = with(&with(&with(s_rest, y3), y4), n - e);
                    let f2 = self.primary(n, d2, &right);
                    if f2.is_zero() {
                        continue;
                    }
                    acc += ExactScalar::from(ways.clone()) * f1 * f2;
                }
            }
            acc
        };
        let lhs_rest = side(x1, x2, x3, x4, true);
        let rhs = side(x1, x3, x2, x4, false);
        rhs - lhs_rest
    }
}

/// Smallest codimension, largest among the rest, smallest among what remains.
fn default_pivot(counts: &Counts) -> WdvvPivot {
    let sorted = sorted_from(counts);
    let a = sorted[0];
    let c = sorted[sorted.len() - 1];
    let b = sorted[1];
    WdvvPivot { a, b, c }
}
