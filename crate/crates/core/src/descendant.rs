//! Invariants with one descendant insertion `tau_j(H^c)`, reduced to
//! primaries by string, dilaton, divisor and topological recursion.

use crate::engine::{
    counts_from, sorted_from, sub_multisets, total, weight, with, without, Counts, Engine,
};
use crate::error::{out_of_range, Result};
use crate::exact::{binomial, ExactScalar, InvariantKey};
use crate::primary::{check_codims, gate};

/// The two companion insertions `A`, `B` used by one recursion step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrrPair {
    pub a: u32,
    pub b: u32,
}

impl Engine {
    /// `<tau_j(H^c) H^{a_1} ... H^{a_m}>_d` on `P^n`.
    pub fn descendant_invariant(
        &self,
        n: u32,
        d: u32,
        (j, c): (u32, u32),
        codims: &[u32],
    ) -> Result<ExactScalar> {
        check_codims(n, codims)?;
        check_codims(n, &[c])?;
        Ok(self.descendant(n, d, j, c, &counts_from(n, codims)))
    }

    /// Evaluates the top step through the recursion relation with a chosen
    /// companion pair, skipping the string/dilaton/divisor shortcuts.
    pub fn descendant_with_pair(
        &self,
        n: u32,
        d: u32,
        (j, c): (u32, u32),
        codims: &[u32],
        pair: TrrPair,
    ) -> Result<ExactScalar> {
        check_codims(n, codims)?;
        check_codims(n, &[c])?;
        if j < 1 {
            return Err(out_of_range("the recursion step needs j >= 1"));
        }
        let counts = counts_from(n, codims);
        let mut rest = counts.clone();
        for x in [pair.a, pair.b] {
            if x > n || rest[x as usize] == 0 {
                return Err(out_of_range(format!(
                    "companion codimension {x} is not an insertion"
                )));
            }
            rest[x as usize] -= 1;
        }
        if !gate(n, d, total(&counts) + 1, weight(&counts) + j + c) {
            return Ok(ExactScalar::zero());
        }
        Ok(self.trr(n, d, j, c, &counts, pair))
    }

    pub(crate) fn descendant(
        &self,
        n: u32,
        d: u32,
        j: u32,
        c: u32,
        counts: &Counts,
    ) -> ExactScalar {
        let m = total(counts);
        if !gate(n, d, m + 1, weight(counts) + j + c) {
            return ExactScalar::zero();
        }
        if j == 0 {
            return self.primary(n, d, &with(counts, c));
        }
        if d == 0 {
            // M_{0,m+1} x P^n; the gate then forces j = m - 2, where psi^j = 1
            return if c + weight(counts) == n {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            };
        }
        let key = InvariantKey::new(n, d, Some((j, c)), &sorted_from(counts));
        if let Some(v) = self.level0_get(&key) {
            return v;
        }
        let v = self.reduce_descendant(n, d, j, c, counts, m);
        self.level0_put(key, v.clone());
        v
    }

    fn reduce_descendant(
        &self,
        n: u32,
        d: u32,
        j: u32,
        c: u32,
        counts: &Counts,
        m: u32,
    ) -> ExactScalar {
        if counts[0] > 0 {
            return self.descendant(n, d, j - 1, c, &without(counts, 0));
        }
        if c == 0 && j == 1 {
            return ExactScalar::from(m as i64 - 2) * self.primary(n, d, counts);
        }
        if m > 2 && counts[1] > 0 {
            let rest = without(counts, 1);
            let mut v = ExactScalar::from(d as i64) * self.descendant(n, d, j, c, &rest);
            if c < n {
                v += self.descendant(n, d, j - 1, c + 1, &rest);
            }
            return v;
        }
        if m >= 2 {
            return self.trr(n, d, j, c, counts, default_pair(counts));
        }
        // adjoin a divisor and solve the divisor equation backwards
        let mut v = self.descendant(n, d, j, c, &with(counts, 1));
        if c < n {
            v -= self.descendant(n, d, j - 1, c + 1, counts);
        }
        v / ExactScalar::from(d as i64)
    }

    /// `<tau_j(H^c) A B R>_d = sum <tau_{j-1}(H^c) S H^e>_{d1} <H^{n-e} A B S'>_{d2}`.
    fn trr(&self, n: u32, d: u32, j: u32, c: u32, counts: &Counts, pair: TrrPair) -> ExactScalar {
        let rest = without(&without(counts, pair.a), pair.b);
        let mut acc = ExactScalar::zero();
        for d1 in 0..=d {
            let d2 = d - d1;
            for (s, s_rest, ways) in sub_multisets(&rest) {
                // first factor's gate fixes e
                let e = d1 as i64 * (n as i64 + 1) + n as i64 - 1 + total(&s) as i64
                    - (j - 1 + c + weight(&s)) as i64;
                if e < 0 || e > n as i64 {
                    continue;
                }
                let e = e as u32;
                let f1 = self.descendant(n, d1, j - 1, c, &with(&s, e));
                if f1.is_zero() {
                    continue;
                }
                let right = with(&with(&with(&s_rest, pair.a), pair.b), n - e);
                let f2 = self.primary(n, d2, &right);
                if f2.is_zero() {
                    continue;
                }
                acc += ExactScalar::from(ways) * f1 * f2;
            }
        }
        acc
    }

    /// Coefficient of `H^{n-c} hbar^{-j-2}` in the degree-`d` term
    /// `1 / prod_{m=1..d} (H + m hbar)^{n+1}`, with `H^{n+1} = 0`.
    pub fn jfunction_onepoint(&self, n: u32, d: u32, j: u32, c: u32) -> ExactScalar {
        jfunction_onepoint(n, d, j, c)
    }
}

/// Free-standing form of [`Engine::jfunction_onepoint`]; it needs no memo.
pub fn jfunction_onepoint(n: u32, d: u32, j: u32, c: u32) -> ExactScalar {
    if d == 0 || c > n {
        return ExactScalar::zero();
    }
    // the degree-d term is homogeneous of degree -(n+1)d in (H, hbar)
    if (n - c) as i64 - j as i64 - 2 != -((n as i64 + 1) * d as i64) {
        return ExactScalar::zero();
    }
    // prod_m m^{-(n+1)} (1 + x/m)^{-(n+1)}, truncated at x^n
    let deg = n as usize;
    let mut series = vec![ExactScalar::zero(); deg + 1];
    series[0] = ExactScalar::one();
    for mm in 1..=d as i64 {
        let mut factor = vec![ExactScalar::zero(); deg + 1];
        for (k, f) in factor.iter_mut().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let coeff = binomial(n as i64 + k as i64, k as i64) * ExactScalar::from(sign);
            let scale = ExactScalar::ratio(1, num_bigint::BigInt::from(mm).pow(k as u32 + n + 1));
            *f = coeff * scale;
        }
        let mut next = vec![ExactScalar::zero(); deg + 1];
        for (i, a) in series.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in factor.iter().enumerate().take(deg + 1 - i) {
                next[i + k] += a * b;
            }
        }
        series = next;
    }
    series[(n - c) as usize].clone()
}

/// The two largest codimensions.
fn default_pair(counts: &Counts) -> TrrPair {
    let sorted = sorted_from(counts);
    let len = sorted.len();
    TrrPair {
        a: sorted[len - 1],
        b: sorted[len - 2],
    }
}
