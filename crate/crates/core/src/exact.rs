//! Exact scalars, combinatorial enumerators and canonical memo keys.
//!
//! Nothing in the engine touches floating point. [`ExactScalar`] is a thin
//! newtype over an arbitrary-precision rational, always in lowest terms.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{out_of_range, Error, Result};

/// Arbitrary-precision rational number kept in lowest terms with a positive
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactScalar(BigRational);

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactScalar(BigRational::one())
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        ExactScalar(BigRational::from_integer(v.into()))
    }

    /// `num / den`; panics when `den` is zero.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        ExactScalar(BigRational::new(num.into(), den.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The integer value, when the scalar is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.0.is_integer().then(|| self.0.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|v| v.to_i64())
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::from_int(v)
    }
}

impl From<BigInt> for ExactScalar {
    fn from(v: BigInt) -> Self {
        ExactScalar(BigRational::from_integer(v))
    }
}

impl From<BigRational> for ExactScalar {
    fn from(v: BigRational) -> Self {
        ExactScalar(v)
    }
}

/// Decimal integer, or `p/q` in lowest terms.
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || out_of_range(format!("not an exact scalar: {s:?}"));
        let parse_int = |t: &str| -> Result<BigInt> {
            if t.is_empty() || t.trim() != t {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(ExactScalar::from_int(parse_int(s)?)),
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() || q.is_negative() {
                    return Err(bad());
                }
                Ok(ExactScalar(BigRational::new(parse_int(p)?, q)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar(self.0.$method(&rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'b ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-&self.0)
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &'a ExactScalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: ExactScalar) {
        self.0 -= rhs.0;
    }
}

impl<'a> SubAssign<&'a ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &'a ExactScalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign for ExactScalar {
    fn mul_assign(&mut self, rhs: ExactScalar) {
        self.0 *= rhs.0;
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> ExactScalar {
    ExactScalar::from(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// All ordered `k`-tuples of positive integers summing to `d`, in
/// lexicographic order.
pub fn positive_compositions(d: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k == 0 || d < k {
        return out;
    }
    let mut cur = Vec::with_capacity(k as usize);
    fn rec(left: u32, slots: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=left - (slots - 1) {
            cur.push(first);
            rec(left - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(d, k, &mut cur, &mut out);
    out
}

/// A tuple of general-position linear constraints in `P^n`, recorded by
/// codimension.
///
/// Equality and hashing only see the multiset of codimensions. The order of
/// elements is kept so that a [`Separation`] filter can refer to individual
/// constraints by index.
#[derive(Clone, Debug)]
pub struct ConstraintTuple {
    codims: Vec<u32>,
}

impl ConstraintTuple {
    pub fn new(codims: impl Into<Vec<u32>>) -> Self {
        ConstraintTuple {
            codims: codims.into(),
        }
    }

    /// `points` codim-`n`, `lines` codim-`n-1` and `planes` codim-`n-2`
    /// subspaces of `P^n`.
    pub fn from_counts(n: u32, points: u32, lines: u32, planes: u32) -> Result<Self> {
        if (lines > 0 && n < 2) || (planes > 0 && n < 3) {
            return Err(out_of_range(format!(
                "P^{n} has no proper linear subspaces of the requested dimension"
            )));
        }
        let mut codims = Vec::new();
        codims.extend(std::iter::repeat_n(n, points as usize));
        codims.extend(std::iter::repeat_n(n.saturating_sub(1), lines as usize));
        codims.extend(std::iter::repeat_n(n.saturating_sub(2), planes as usize));
        Ok(ConstraintTuple { codims })
    }

    pub fn empty() -> Self {
        ConstraintTuple { codims: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.codims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codims.is_empty()
    }

    pub fn codims(&self) -> &[u32] {
        &self.codims
    }

    pub fn sorted_codims(&self) -> Vec<u32> {
        let mut v = self.codims.clone();
        v.sort_unstable();
        v
    }

    pub fn total_codim(&self) -> u32 {
        self.codims.iter().sum()
    }

    /// Number of constraints of the given codimension.
    pub fn count_of(&self, codim: u32) -> u32 {
        self.codims.iter().filter(|&&c| c == codim).count() as u32
    }

    /// Appends a generic `r`-dimensional linear subspace of `P^n`, i.e. a
    /// constraint of codimension `n - r`.
    pub fn append(&self, n: u32, r: u32) -> Result<Self> {
        if r >= n {
            return Err(out_of_range(format!(
                "H^{r} is not a proper subspace of P^{n}"
            )));
        }
        let mut codims = self.codims.clone();
        codims.push(n - r);
        Ok(ConstraintTuple { codims })
    }

    /// Codimension of the generic intersection of the selected elements. A
    /// value greater than `n` means the intersection is empty in `P^n`.
    pub fn merge(&self, subset: &[usize]) -> Result<u32> {
        subset
            .iter()
            .map(|&i| {
                self.codims.get(i).copied().ok_or(Error::FilterAbsent {
                    index: i,
                    len: self.codims.len(),
                })
            })
            .sum()
    }

    pub(crate) fn check_range(&self, n: u32) -> Result<()> {
        match self.codims.iter().find(|&&c| c == 0 || c > n) {
            Some(c) => Err(out_of_range(format!(
                "constraint codimension {c} is not in [1, {n}]"
            ))),
            None => Ok(()),
        }
    }
}

impl PartialEq for ConstraintTuple {
    fn eq(&self, other: &Self) -> bool {
        self.sorted_codims() == other.sorted_codims()
    }
}

impl Eq for ConstraintTuple {}

impl std::hash::Hash for ConstraintTuple {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sorted_codims().hash(state);
    }
}

/// Two constraint elements, by index, that must land on different components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Separation {
    pub first: usize,
    pub second: usize,
}

/// Every assignment of the elements of `mu` to `k` labelled blocks, as a
/// vector mapping element index to block index. Blocks may be empty. With a
/// separation filter, assignments that put the two named elements in the
/// same block are dropped.
pub fn constraint_distributions(
    mu: &ConstraintTuple,
    k: u32,
    filter: Option<Separation>,
) -> Result<Vec<Vec<u32>>> {
    if k == 0 {
        return Err(out_of_range("need at least one block"));
    }
    if let Some(sep) = filter {
        for index in [sep.first, sep.second] {
            if index >= mu.len() {
                return Err(Error::FilterAbsent {
                    index,
                    len: mu.len(),
                });
            }
        }
        if sep.first == sep.second {
            return Err(out_of_range(
                "a separation filter needs two distinct elements",
            ));
        }
    }
    let n = mu.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let keep = match filter {
            Some(sep) => cur[sep.first] != cur[sep.second],
            None => true,
        };
        if keep {
            out.push(cur.clone());
        }
        // odometer increment, last element fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < k {
                break;
            }
            cur[pos] = 0;
        }
    }
}

/// Canonical identity of a one-component invariant
/// `<tau_j(H^c) * prod tau_0(H^a_i)>_d` on `P^n`, with at most one
/// descendant insertion.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvariantKey {
    pub n: u32,
    pub d: u32,
    pub descendant: Option<(u32, u32)>,
    primaries: Vec<u32>,
}

impl InvariantKey {
    pub fn new(n: u32, d: u32, descendant: Option<(u32, u32)>, primaries: &[u32]) -> Self {
        let mut primaries = primaries.to_vec();
        primaries.sort_unstable();
        InvariantKey {
            n,
            d,
            descendant,
            primaries,
        }
    }

    pub fn primaries(&self) -> &[u32] {
        &self.primaries
    }
}

/// `P<n>|d<d>|psi<j>@<c>|a1,a2,...`, with `-` in the descendant slot when
/// there is none.
impl fmt::Display for InvariantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}|d{}|", self.n, self.d)?;
        match self.descendant {
            Some((j, c)) => write!(f, "psi{j}@{c}|")?,
            None => write!(f, "-|")?,
        }
        let parts: Vec<String> = self.primaries.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for InvariantKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || out_of_range(format!("malformed invariant key {s:?}"));
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        let mut parts = s.split('|');
        let (Some(p), Some(d), Some(desc), Some(ins), None) = (
            parts.next(),
            parts.next(),
            parts.next(),
            parts.next(),
            parts.next(),
        ) else {
            return Err(bad());
        };
        let n = num(p.strip_prefix('P').ok_or_else(bad)?)?;
        let d = num(d.strip_prefix('d').ok_or_else(bad)?)?;
        let descendant = if desc == "-" {
            None
        } else {
            let rest = desc.strip_prefix("psi").ok_or_else(bad)?;
            let (j, c) = rest.split_once('@').ok_or_else(bad)?;
            Some((num(j)?, num(c)?))
        };
        let primaries = if ins.is_empty() {
            Vec::new()
        } else {
            ins.split(',').map(num).collect::<Result<Vec<_>>>()?
        };
        let key = InvariantKey::new(n, d, descendant, &primaries);
        // reject non-canonical spellings so that keys round-trip byte for byte
        if key.to_string() != s {
            return Err(bad());
        }
        Ok(key)
    }
}
