//! Intersection numbers on spaces of `k`-tuples of rational curves sharing a
//! node, assembled from one-component numbers by splitting the small diagonal.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::engine::{counts_from, sub_multisets, total, weight, Counts, Engine, ModifiedKey};
use crate::error::{out_of_range, Error, Result};
use crate::exact::{
    binomial_int, constraint_distributions, factorial, positive_compositions, ConstraintTuple,
    ExactScalar, Separation,
};
use crate::primary::gate;

/// Which cotangent class the node generators use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PsiFlavor {
    /// Pulled back from the space with the constraint points forgotten.
    Modified,
    /// The plain cotangent class at the node.
    Ordinary,
}

/// The class `a^l * eta_{m_1} * eta_{m_2} * ...` at the shared node, where
/// `eta_m` is the complete homogeneous polynomial of degree `m` in the node
/// psi-classes of the components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeClassSpec {
    pub l: u32,
    pub generators: Vec<u32>,
    pub flavor: PsiFlavor,
}

impl NodeClassSpec {
    pub fn modified(l: u32, generators: &[u32]) -> Self {
        NodeClassSpec {
            l,
            generators: generators.to_vec(),
            flavor: PsiFlavor::Modified,
        }
    }

    pub fn ordinary(l: u32, generators: &[u32]) -> Self {
        NodeClassSpec {
            l,
            generators: generators.to_vec(),
            flavor: PsiFlavor::Ordinary,
        }
    }

    /// Total psi-degree.
    pub fn psi_degree(&self) -> u32 {
        self.generators.iter().sum()
    }
}

/// Unordered `k`-tuples of degree-positive rational curves of total degree
/// `d` sharing one point, through the constraints `mu`. With `merged_m > 0`,
/// that many constraints are moved onto the shared point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticomponentSpace {
    pub n: u32,
    pub d: u32,
    pub k: u32,
    pub mu: ConstraintTuple,
    pub merged_m: u32,
    /// Two constraints that must lie on different components.
    pub filter: Option<Separation>,
}

impl MulticomponentSpace {
    pub fn new(n: u32, d: u32, k: u32, mu: ConstraintTuple) -> Self {
        MulticomponentSpace {
            n,
            d,
            k,
            mu,
            merged_m: 0,
            filter: None,
        }
    }

    pub fn with_merged(mut self, m: u32) -> Self {
        self.merged_m = m;
        self
    }

    pub fn with_filter(mut self, filter: Separation) -> Self {
        self.filter = Some(filter);
        self
    }
}

/// `(A_d, B_d, C_d, Delta_d)` for plane curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarAggregates {
    pub a: ExactScalar,
    pub b: ExactScalar,
    pub c: ExactScalar,
    pub delta: ExactScalar,
}

/// Künneth components `(c_1..c_k)` of the small diagonal of `(P^n)^k`
/// times `H^l`: every tuple in `[0,n]^k` with sum `n(k-1) + l`.
pub fn diagonal_weights(n: u32, k: u32, l: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let target = n * (k - 1) + l;
    let mut cur = Vec::with_capacity(k as usize);
    fill_weights(n, k as usize, target, &mut cur, &mut out);
    out
}

fn fill_weights(n: u32, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let slots = (k - cur.len()) as u32;
    if slots == 1 {
        if left <= n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    for c in 0..=n.min(left) {
        if left - c > n * (slots - 1) {
            continue;
        }
        cur.push(c);
        fill_weights(n, k, left - c, cur, out);
        cur.pop();
    }
}

/// Monomial expansion of the psi-part of `spec` in `k` node classes, as
/// `(exponents, coefficient)` sorted by exponent tuple.
pub fn symmetric_expand(spec: &NodeClassSpec, k: u32) -> Vec<(Vec<u32>, BigInt)> {
    let mut acc: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    acc.insert(vec![0; k as usize], BigInt::one());
    for &m in &spec.generators {
        let h = weak_compositions(m, k);
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in &acc {
            for t in &h {
                let key: Vec<u32> = e.iter().zip(t).map(|(x, y)| x + y).collect();
                *next.entry(key).or_insert_with(BigInt::zero) += c;
            }
        }
        acc = next;
    }
    acc.into_iter().collect()
}

/// Ways to split a count vector over `k` labelled blocks, with the number of
/// labelled assignments each split stands for.
fn grouped_distributions(counts: &Counts, k: u32) -> Vec<(Vec<Counts>, BigInt)> {
    let len = counts.len();
    let mut out = vec![(vec![vec![0u32; len]; k as usize], BigInt::one())];
    for (a, &m) in counts.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let splits = weak_compositions(m, k);
        let mut next = Vec::with_capacity(out.len() * splits.len());
        for (blocks, w) in &out {
            for split in &splits {
                let mut b = blocks.clone();
                let mut ways = w.clone();
                let mut left = m as i64;
                for (i, &s) in split.iter().enumerate() {
                    b[i][a] += s;
                    ways *= binomial_int(left, s as i64);
                    left -= s as i64;
                }
                next.push((b, ways));
            }
        }
        out = next;
    }
    out
}

fn weak_compositions(m: u32, k: u32) -> Vec<Vec<u32>> {
    positive_compositions(m + k, k)
        .into_iter()
        .map(|t| t.into_iter().map(|x| x - 1).collect())
        .collect()
}

impl Engine {
    /// `<psi^j psibar^b H^c at the special point; one H^codim per constraint>_d`.
    pub fn modified_descendant(
        &self,
        n: u32,
        d: u32,
        j: u32,
        b: u32,
        c: u32,
        mu: &ConstraintTuple,
    ) -> Result<ExactScalar> {
        if n < 1 || d < 1 || c > n {
            return Err(out_of_range(format!(
                "modified descendant needs n >= 1, d >= 1, c <= n (got n={n}, d={d}, c={c})"
            )));
        }
        mu.check_range(n)?;
        Ok(self.modified(n, d, j, b, c, &counts_from(n, mu.codims())))
    }

    pub(crate) fn modified(
        &self,
        n: u32,
        d: u32,
        j: u32,
        b: u32,
        c: u32,
        counts: &Counts,
    ) -> ExactScalar {
        if b == 0 {
            return self.descendant(n, d, j, c, counts);
        }
        if d == 0 || !gate(n, d, total(counts) + 1, weight(counts) + j + b + c) {
            return ExactScalar::zero();
        }
        let key = ModifiedKey {
            n,
            d,
            j,
            b,
            c,
            counts: counts.clone(),
        };
        if let Some(v) = self.modified_get(&key) {
            return v;
        }
        // psibar = psi minus the divisors where constraints bubble off with the
        // special point; psi^j on that bubble forces exactly j+1 of them
        let mut v = self.modified(n, d, j + 1, b - 1, c, counts);
        for (s, rest, ways) in sub_multisets(counts) {
            if total(&s) != j + 1 {
                continue;
            }
            let merged = c + weight(&s);
            if merged > n {
                continue;
            }
            let t = self.modified(n, d, 0, b - 1, merged, &rest);
            if !t.is_zero() {
                v -= ExactScalar::from(ways) * t;
            }
        }
        self.modified_put(key, v.clone());
        v
    }

    fn factor(
        &self,
        flavor: PsiFlavor,
        n: u32,
        d: u32,
        b: u32,
        c: u32,
        counts: &Counts,
    ) -> ExactScalar {
        match flavor {
            PsiFlavor::Modified => self.modified(n, d, 0, b, c, counts),
            PsiFlavor::Ordinary => self.descendant(n, d, b, c, counts),
        }
    }

    /// `<a^l eta..., V_k(mu)>` (or `V_{k,m}` when constraints are merged onto
    /// the node).
    pub fn vbar_number(
        &self,
        space: &MulticomponentSpace,
        spec: &NodeClassSpec,
    ) -> Result<ExactScalar> {
        let n = space.n;
        validate_space(space)?;
        let counts = counts_from(n, space.mu.codims());
        if space.d < space.k {
            return Ok(ExactScalar::zero());
        }
        if space.merged_m > 0 {
            let mut acc = ExactScalar::zero();
            for (s, rest, ways) in sub_multisets(&counts) {
                if total(&s) != space.merged_m {
                    continue;
                }
                let t = self.vbar_grouped(space, &rest, None, spec.l + weight(&s), spec);
                acc += ExactScalar::from(ways) * t;
            }
            return Ok(acc);
        }
        let mut free = counts;
        let separated = space.filter.map(|sep| {
            let p = space.mu.codims()[sep.first];
            let q = space.mu.codims()[sep.second];
            free[p as usize] -= 1;
            free[q as usize] -= 1;
            (p, q)
        });
        Ok(self.vbar_grouped(space, &free, separated, spec.l, spec))
    }

    fn vbar_grouped(
        &self,
        space: &MulticomponentSpace,
        free: &Counts,
        separated: Option<(u32, u32)>,
        node_power: u32,
        spec: &NodeClassSpec,
    ) -> ExactScalar {
        let (n, d, k) = (space.n, space.d, space.k);
        let weights = diagonal_weights(n, k, node_power);
        if weights.is_empty() {
            return ExactScalar::zero();
        }
        let monomials = symmetric_expand(spec, k);
        let mut dists = grouped_distributions(free, k);
        if let Some((p, q)) = separated {
            let mut with_pair = Vec::new();
            for (blocks, w) in &dists {
                for i in 0..k as usize {
                    for j in 0..k as usize {
                        if i == j {
                            continue;
                        }
                        let mut b = blocks.clone();
                        b[i][p as usize] += 1;
                        b[j][q as usize] += 1;
                        with_pair.push((b, w.clone()));
                    }
                }
            }
            dists = with_pair;
        }
        let mut acc = ExactScalar::zero();
        for comp in positive_compositions(d, k) {
            for (blocks, ways) in &dists {
                // b_i + c_i each block must absorb to pass its dimension gate
                let need: Vec<i64> = (0..k as usize)
                    .map(|i| {
                        (n as i64 + 1) * comp[i] as i64 + n as i64 - 2 + total(&blocks[i]) as i64
                            - weight(&blocks[i]) as i64
                    })
                    .collect();
                let mut part = ExactScalar::zero();
                for cw in &weights {
                    for (bexp, coef) in &monomials {
                        if (0..k as usize).any(|i| (cw[i] + bexp[i]) as i64 != need[i]) {
                            continue;
                        }
                        let mut prod = ExactScalar::from(coef.clone());
                        for i in 0..k as usize {
                            let f =
                                self.factor(spec.flavor, n, comp[i], bexp[i], cw[i], &blocks[i]);
                            if f.is_zero() {
                                prod = ExactScalar::zero();
                                break;
                            }
                            prod *= f;
                        }
                        part += prod;
                    }
                }
                if !part.is_zero() {
                    acc += ExactScalar::from(ways.clone()) * part;
                }
            }
        }
        acc / ExactScalar::from(factorial(k))
    }

    /// Same number as [`Engine::vbar_number`], summed over labelled
    /// constraint assignments one by one. Exponential; for cross-checks.
    pub fn vbar_number_exhaustive(
        &self,
        space: &MulticomponentSpace,
        spec: &NodeClassSpec,
    ) -> Result<ExactScalar> {
        let n = space.n;
        validate_space(space)?;
        if space.d < space.k {
            return Ok(ExactScalar::zero());
        }
        let codims = space.mu.codims();
        let mut acc = ExactScalar::zero();
        for merged in index_subsets(codims.len(), space.merged_m as usize) {
            let node_power = spec.l + merged.iter().map(|&i| codims[i]).sum::<u32>();
            let kept: Vec<usize> = (0..codims.len()).filter(|i| !merged.contains(i)).collect();
            let sub = ConstraintTuple::new(kept.iter().map(|&i| codims[i]).collect::<Vec<_>>());
            let filter = space.filter.map(|sep| Separation {
                first: kept
                    .iter()
                    .position(|&i| i == sep.first)
                    .unwrap_or(usize::MAX),
                second: kept
                    .iter()
                    .position(|&i| i == sep.second)
                    .unwrap_or(usize::MAX),
            });
            let assignments = constraint_distributions(&sub, space.k, filter)?;
            let weights = diagonal_weights(n, space.k, node_power);
            let monomials = symmetric_expand(spec, space.k);
            for comp in positive_compositions(space.d, space.k) {
                for assign in &assignments {
                    let mut blocks = vec![vec![0u32; n as usize + 1]; space.k as usize];
                    for (e, &blk) in assign.iter().enumerate() {
                        blocks[blk as usize][sub.codims()[e] as usize] += 1;
                    }
                    for cw in &weights {
                        for (bexp, coef) in &monomials {
                            let mut prod = ExactScalar::from(coef.clone());
                            for i in 0..space.k as usize {
                                prod *= self.factor(
                                    spec.flavor,
                                    n,
                                    comp[i],
                                    bexp[i],
                                    cw[i],
                                    &blocks[i],
                                );
                            }
                            acc += prod;
                        }
                    }
                }
            }
        }
        Ok(acc / ExactScalar::from(factorial(space.k)))
    }

    pub fn planar_aggregates(&self, d: u32) -> Result<PlanarAggregates> {
        if d < 1 {
            return Err(out_of_range("degree must be at least 1"));
        }
        let nd = self.nd_plane(d)?;
        let mut b_sum = ExactScalar::zero();
        let mut delta = ExactScalar::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let base = crate::exact::binomial(3 * d as i64 - 2, 3 * d1 as i64 - 1)
                * self.nd_plane(d1)?
                * self.nd_plane(d2)?;
            let (x, y) = (d1 as i64, d2 as i64);
            b_sum += &base * ExactScalar::from(x * x * y * y);
            delta += base * ExactScalar::from(x * y);
        }
        let dd = ExactScalar::from(d as i64);
        let b = -(&nd / &dd) + b_sum / (ExactScalar::from(2) * dd);
        let delta = delta / ExactScalar::from(2);
        Ok(PlanarAggregates {
            a: nd,
            b,
            c: -delta.clone(),
            delta,
        })
    }
}

fn validate_space(space: &MulticomponentSpace) -> Result<()> {
    if space.n < 1 || space.k < 1 {
        return Err(out_of_range("need n >= 1 and k >= 1"));
    }
    space.mu.check_range(space.n)?;
    if let Some(sep) = space.filter {
        for index in [sep.first, sep.second] {
            if index >= space.mu.len() {
                return Err(Error::FilterAbsent {
                    index,
                    len: space.mu.len(),
                });
            }
        }
        if sep.first == sep.second {
            return Err(out_of_range(
                "a separation filter needs two distinct elements",
            ));
        }
        if space.merged_m > 0 {
            return Err(out_of_range(
                "a separation filter cannot be combined with merged constraints",
            ));
        }
    }
    if space.merged_m as usize > space.mu.len() {
        return Err(out_of_range(
            "cannot merge more constraints than the tuple holds",
        ));
    }
    Ok(())
}

/// Index subsets of `0..len` with `size` elements, in lexicographic order.
fn index_subsets(len: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn go(start: usize, len: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, size, cur, out);
            cur.pop();
        }
    }
    go(0, len, size, &mut cur, &mut out);
    out
}
