//! Counts of one-component rational curves with a cusp, a triple point or a
//! tacnode, and the level-1 numbers they are assembled from.

use std::fmt;

use crate::engine::Engine;
use crate::error::{out_of_range, Error, Result};
use crate::exact::{binomial, factorial, ConstraintTuple, ExactScalar, Separation};
use crate::node::{MulticomponentSpace, NodeClassSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Singularity {
    Cusp,
    TriplePoint,
    Tacnode,
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Singularity::Cusp => "cusp",
            Singularity::TriplePoint => "triple",
            Singularity::Tacnode => "tacnode",
        })
    }
}

/// A singular-curve count request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountQuery {
    pub singularity: Singularity,
    pub n: u32,
    pub d: u32,
    pub mu: ConstraintTuple,
}

/// Raw intersection number, the symmetry factor it overcounts by, and the
/// resulting number of curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub raw: ExactScalar,
    pub divisor: u32,
    pub count: ExactScalar,
}

impl CountResult {
    fn new(what: impl Into<String>, raw: ExactScalar, divisor: u32) -> Result<Self> {
        let count = &raw / ExactScalar::from(divisor as i64);
        if !count.is_integer() || count.is_negative() {
            return Err(Error::NotACount {
                what: what.into(),
                raw: raw.to_string(),
                divisor,
            });
        }
        Ok(CountResult {
            raw,
            divisor,
            count,
        })
    }
}

/// How the cuspidal count is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CuspRoute {
    /// Modified node classes on `V_k(mu)`.
    A,
    /// Ordinary node classes on `V_{k,m}(mu)`, with constraints merged onto
    /// the node, using [`MergeCoefficient::ComponentFactorial`].
    B,
}

/// Factorial factor in the coefficient `(-1)^{k+m-1} k^m * f(k,m)` of the
/// merged-constraint expansion of the cuspidal count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MergeCoefficient {
    /// `f = (k-1)!` for every `m`.
    ComponentFactorial,
    /// `f = (m-1)!` for `m >= 1` and `(k-1)!` for `m = 0`.
    MergedFactorial,
}

impl MergeCoefficient {
    pub fn coefficient(self, k: u32, m: u32) -> ExactScalar {
        let f = match self {
            MergeCoefficient::ComponentFactorial => factorial(k - 1),
            MergeCoefficient::MergedFactorial if m == 0 => factorial(k - 1),
            MergeCoefficient::MergedFactorial => factorial(m - 1),
        };
        let sign = if (k + m - 1).is_multiple_of(2) { 1 } else { -1 };
        ExactScalar::from(f) * ExactScalar::from(sign * (k as i64).pow(m))
    }
}

/// Classes evaluated on the closure of one-component nodal curves in `P^3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeFamilyClass {
    /// `|V_1^(1)(mu)|`, needs `2p+q = 4d-1`.
    Count,
    /// `<a, V_1^(1)(mu)>`, needs `2p+q = 4d-2`.
    A,
    /// `<a^2, V_1^(1)(mu)>`, needs `2p+q = 4d-3`.
    A2,
    /// `<a eta_1, V_1^(1)(mu)>`, needs `2p+q = 4d-3`.
    AEta,
    /// `<eta_1^2, V_1^(1)(mu)>`, needs `2p+q = 4d-3`.
    Eta2,
}

/// Degree-one node class: `a` or `eta_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinearClass {
    A,
    Eta,
}

/// Closed forms for plane curves through `3d-2` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlanarLemma {
    /// `<a, V^(1)> = (2d-3)A - B`.
    NodeOnLine,
    /// `<eta, V^(1)> = A + dB - Delta`.
    NodeEta,
    /// `|S_1| = 3A + 3B + 2C`.
    Cusp,
}

/// One term `coef * a^l * eta_{g_1} eta_{g_2} ...`.
type Term<'a> = (i64, u32, &'a [u32]);

const P3: u32 = 3;
const POINT: u32 = 0;
const LINE: u32 = 1;
const PLANE: u32 = 2;

fn int(v: i64) -> ExactScalar {
    ExactScalar::from(v)
}

impl Engine {
    /// Dispatches a query to the matching formula. Cusps use route A.
    pub fn singular_count(&self, q: &CountQuery) -> Result<CountResult> {
        match (q.singularity, q.n) {
            (Singularity::Cusp, _) => self.cusp_count(q.n, q.d, &q.mu, CuspRoute::A),
            (Singularity::TriplePoint, 2) => {
                self.check_planar_points(q)?;
                self.triple_point_count_p2(q.d)
            }
            (Singularity::Tacnode, 2) => {
                self.check_planar_points(q)?;
                self.tacnode_count_p2(q.d)
            }
            (Singularity::TriplePoint, 3) => {
                let (p, l) = p3_counts(&q.mu)?;
                self.triple_point_count_p3(q.d, p, l)
            }
            (Singularity::Tacnode, 3) => {
                let (p, l) = p3_counts(&q.mu)?;
                self.tacnode_count_p3(q.d, p, l)
            }
            (s, n) => Err(out_of_range(format!(
                "{s} counts are available in P^2 and P^3, not P^{n}"
            ))),
        }
    }

    fn check_planar_points(&self, q: &CountQuery) -> Result<()> {
        if q.d < 1 {
            return Err(out_of_range("degree must be at least 1"));
        }
        let want = 3 * q.d - 2;
        if q.mu.len() as u32 != want || q.mu.count_of(2) != want {
            return Err(Error::Balance {
                required: format!("{want} points (3d-2) in P^2"),
                actual: format!(
                    "{} constraints of codimensions {:?}",
                    q.mu.len(),
                    q.mu.sorted_codims()
                ),
            });
        }
        Ok(())
    }

    /// Rational cuspidal degree-`d` curves in `P^n` through `mu`.
    pub fn cusp_count(
        &self,
        n: u32,
        d: u32,
        mu: &ConstraintTuple,
        route: CuspRoute,
    ) -> Result<CountResult> {
        let raw = match route {
            CuspRoute::A => self.cusp_raw_route_a(n, d, mu)?,
            CuspRoute::B => {
                self.cusp_raw_route_b(n, d, mu, MergeCoefficient::ComponentFactorial)?
            }
        };
        CountResult::new(format!("cusp count in P^{n}, d={d}"), raw, 1)
    }

    fn check_cusp_input(&self, n: u32, d: u32, mu: &ConstraintTuple) -> Result<()> {
        if n < 2 || d < 1 {
            return Err(out_of_range("cusp counts need n >= 2 and d >= 1"));
        }
        mu.check_range(n)?;
        let want = d as i64 * (n as i64 + 1) - 2 + mu.len() as i64;
        if mu.total_codim() as i64 != want {
            return Err(Error::Balance {
                required: format!("sum of codimensions = d(n+1)-2+N = {want}"),
                actual: format!("{}", mu.total_codim()),
            });
        }
        Ok(())
    }

    /// `sum_k (-1)^{k-1}(k-1)! sum_l C(n+1,l) <a^l eta_{n+2-2k-l}, V_k(mu)>`.
    pub fn cusp_raw_route_a(&self, n: u32, d: u32, mu: &ConstraintTuple) -> Result<ExactScalar> {
        self.check_cusp_input(n, d, mu)?;
        let mut acc = ExactScalar::zero();
        for k in 1..=(n + 2) / 2 {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let space = MulticomponentSpace::new(n, d, k, mu.clone());
            let top = n + 2 - 2 * k;
            let mut inner = ExactScalar::zero();
            for l in 0..=top {
                let gens = psi_generator(top - l);
                let v = self.vbar_number(&space, &NodeClassSpec::modified(l, &gens))?;
                inner += binomial(n as i64 + 1, l as i64) * v;
            }
            acc += ExactScalar::from(factorial(k - 1)) * int(sign) * inner;
        }
        Ok(acc)
    }

    /// The same count over `V_{k,m}` spaces with ordinary node classes.
    pub fn cusp_raw_route_b(
        &self,
        n: u32,
        d: u32,
        mu: &ConstraintTuple,
        convention: MergeCoefficient,
    ) -> Result<ExactScalar> {
        self.check_cusp_input(n, d, mu)?;
        let mut acc = ExactScalar::zero();
        for k in 1..=(n + 2) / 2 {
            for m in 0..=(n + 2 - 2 * k).min(mu.len() as u32) {
                let space = MulticomponentSpace::new(n, d, k, mu.clone()).with_merged(m);
                let top = n + 2 - 2 * k - m;
                let mut inner = ExactScalar::zero();
                for l in 0..=top {
                    let gens = psi_generator(top - l);
                    let v = self.vbar_number(&space, &NodeClassSpec::ordinary(l, &gens))?;
                    inner += binomial(n as i64 + 1, l as i64) * v;
                }
                acc += convention.coefficient(k, m) * inner;
            }
        }
        Ok(acc)
    }

    /// Sum of `coef * <a^l eta..., V_k(mu)>` with modified node classes in `P^3`.
    fn bracket(&self, d: u32, k: u32, mu: &ConstraintTuple, terms: &[Term]) -> Result<ExactScalar> {
        self.bracket_in(MulticomponentSpace::new(P3, d, k, mu.clone()), terms)
    }

    fn bracket_in(&self, space: MulticomponentSpace, terms: &[Term]) -> Result<ExactScalar> {
        let mut acc = ExactScalar::zero();
        for &(coef, l, gens) in terms {
            if coef == 0 {
                continue;
            }
            acc += int(coef) * self.vbar_number(&space, &NodeClassSpec::modified(l, gens))?;
        }
        Ok(acc)
    }

    /// `|V_k(mu)|`.
    fn plain(&self, d: u32, k: u32, mu: &ConstraintTuple) -> Result<ExactScalar> {
        self.bracket(d, k, mu, &[(1, 0, &[])])
    }

    /// `<., V_2(mu + {H^1 : H^2})>`: a line and a plane on different components.
    fn bracket_split(&self, d: u32, mu: &ConstraintTuple, terms: &[Term]) -> Result<ExactScalar> {
        let extended = mu.append(P3, LINE)?.append(P3, PLANE)?;
        let sep = Separation {
            first: mu.len(),
            second: mu.len() + 1,
        };
        self.bracket_in(
            MulticomponentSpace::new(P3, d, 2, extended).with_filter(sep),
            terms,
        )
    }

    /// Evaluations on the closure of one-component nodal curves in `P^3`
    /// with the node at the marked point.
    pub fn level1_v1_family(
        &self,
        class: NodeFamilyClass,
        d: u32,
        mu: &ConstraintTuple,
    ) -> Result<ExactScalar> {
        let offset = match class {
            NodeFamilyClass::Count => 1,
            NodeFamilyClass::A => 2,
            _ => 3,
        };
        check_p3_balance(d, mu, offset)?;
        let di = d as i64;
        let plus_point = || mu.append(P3, POINT);
        let plus_line = || mu.append(P3, LINE);
        match class {
            NodeFamilyClass::Count => Ok(self.bracket(
                d,
                1,
                mu,
                &[(2 * di - 6, 2, &[]), (-4, 1, &[1]), (-1, 0, &[1, 1])],
            )? + self.plain(d, 2, mu)?),
            NodeFamilyClass::A => Ok(self.bracket(
                d,
                1,
                mu,
                &[(2 * di - 6, 3, &[]), (-4, 2, &[1]), (-1, 1, &[1, 1])],
            )? + self.bracket(d, 1, &plus_line()?, &[(1, 2, &[])])?
                + self.bracket(d, 2, mu, &[(1, 1, &[])])?),
            NodeFamilyClass::A2 => Ok(int(2)
                * self.bracket(d, 1, &plus_line()?, &[(1, 3, &[])])?
                - self.bracket(d, 1, mu, &[(4, 3, &[1]), (1, 2, &[1, 1])])?
                + self.bracket(d, 2, mu, &[(1, 2, &[])])?),
            NodeFamilyClass::AEta => Ok(self.bracket(d, 1, &plus_point()?, &[(1, 1, &[1])])?
                + self.bracket(d, 1, &plus_line()?, &[(1, 2, &[1])])?
                + self.bracket(d, 1, mu, &[(di, 3, &[1])])?
                - self.bracket(d, 2, mu, &[(4, 2, &[]), (1, 1, &[1])])?),
            NodeFamilyClass::Eta2 => Ok(self.bracket(d, 1, &plus_point()?, &[(1, 0, &[1, 1])])?
                + self.bracket(d, 1, &plus_line()?, &[(1, 1, &[1, 1])])?
                + self.bracket(d, 1, mu, &[(4, 3, &[1]), (di, 2, &[1, 1])])?
                - self.plain(d, 3, mu)?),
        }
    }

    /// `|V_2^(1)(mu)|`: a nodal component with a second component through the node.
    pub fn level1_v2_1(&self, d: u32, mu: &ConstraintTuple) -> Result<ExactScalar> {
        check_p3_balance(d, mu, 3)?;
        let di = d as i64;
        Ok(self.plain(d, 2, &mu.append(P3, POINT)?)?
            + self.bracket(d, 2, &mu.append(P3, LINE)?, &[(1, 1, &[])])?
            + int(3) * self.plain(d, 3, mu)?
            - self.bracket(
                d,
                2,
                mu,
                &[
                    (12 - di, 2, &[]),
                    (4, 1, &[1]),
                    (2, 0, &[2]),
                    (-1, 0, &[1, 1]),
                ],
            )?)
    }

    /// `|S_2(mu)|`: two components tangent at their common point.
    pub fn level1_s2(&self, d: u32, mu: &ConstraintTuple) -> Result<ExactScalar> {
        check_p3_balance(d, mu, 3)?;
        Ok(
            self.bracket(d, 2, mu, &[(6, 2, &[]), (4, 1, &[1]), (1, 0, &[2])])?
                - int(3) * self.plain(d, 3, mu)?,
        )
    }

    /// `<a, V_2^(1,1)(mu)>` or `<eta_1, V_2^(1,1)(mu)>`: two components
    /// meeting twice, with the class at one of the two nodes.
    pub fn level1_v2_11(
        &self,
        class: LinearClass,
        d: u32,
        mu: &ConstraintTuple,
    ) -> Result<ExactScalar> {
        check_p3_balance(d, mu, 3)?;
        let half = match class {
            LinearClass::A => {
                self.bracket_split(d, mu, &[(1, 1, &[])])?
                    - self.bracket(d, 2, mu, &[(4, 2, &[]), (1, 1, &[1])])?
            }
            LinearClass::Eta => {
                self.bracket_split(d, mu, &[(1, 0, &[1])])?
                    + self.plain(d, 2, &mu.append(P3, POINT)?)?
                    + self.bracket(d, 2, &mu.append(P3, LINE)?, &[(1, 1, &[])])?
                    + self.bracket(d, 2, mu, &[(d as i64, 2, &[])])?
                    - int(3) * self.plain(d, 3, mu)?
            }
        };
        Ok(int(2) * half)
    }

    /// `<a, S_1(mu)>` or `<eta_1, S_1(mu)>` on the closure of cuspidal curves.
    pub fn level1_s1_class(
        &self,
        class: LinearClass,
        d: u32,
        mu: &ConstraintTuple,
    ) -> Result<ExactScalar> {
        check_p3_balance(d, mu, 3)?;
        match class {
            LinearClass::A => Ok(self.bracket(
                d,
                1,
                mu,
                &[(6, 3, &[1]), (4, 2, &[1, 1]), (1, 1, &[1, 1, 1])],
            )? - self.bracket(d, 2, mu, &[(4, 2, &[]), (1, 1, &[1])])?),
            LinearClass::Eta => Ok(self.bracket(
                d,
                1,
                mu,
                &[
                    (4, 3, &[1]),
                    (6, 2, &[1, 1]),
                    (4, 1, &[1, 1, 1]),
                    (1, 0, &[1, 1, 1, 1]),
                ],
            )? - self.plain(d, 3, mu)?),
        }
    }

    /// Triple-pointed rational curves in `P^3` through `p` points and `q` lines.
    pub fn triple_point_count_p3(&self, d: u32, p: u32, q: u32) -> Result<CountResult> {
        let mu = ConstraintTuple::from_counts(P3, p, q, 0)?;
        check_p3_balance(d, &mu, 3)?;
        let di = d as i64;
        use NodeFamilyClass as F;
        let raw = self.level1_v1_family(F::Count, d, &mu.append(P3, POINT)?)?
            + self.level1_v1_family(F::A, d, &mu.append(P3, LINE)?)?
            + int(16) * self.level1_s1_class(LinearClass::A, d, &mu)?
            + int(8) * self.level1_s1_class(LinearClass::Eta, d, &mu)?
            + int(2) * self.level1_v2_1(d, &mu)?
            - int(12 - di) * self.level1_v1_family(F::A2, d, &mu)?
            - int(8) * self.level1_v1_family(F::AEta, d, &mu)?
            - int(2) * self.level1_v1_family(F::Eta2, d, &mu)?
            - int(2) * self.level1_s2(d, &mu)?;
        CountResult::new(
            format!("triple points in P^3, d={d}, (p,q)=({p},{q})"),
            raw,
            6,
        )
    }

    /// Tacnodal rational curves in `P^3` through `p` points and `q` lines.
    pub fn tacnode_count_p3(&self, d: u32, p: u32, q: u32) -> Result<CountResult> {
        let mu = ConstraintTuple::from_counts(P3, p, q, 0)?;
        check_p3_balance(d, &mu, 3)?;
        use NodeFamilyClass as F;
        let raw = int(6) * self.level1_v1_family(F::A2, d, &mu)?
            + self.level1_v1_family(F::Eta2, d, &mu)?
            + int(4) * self.level1_v2_11(LinearClass::A, d, &mu)?
            + ExactScalar::ratio(1, 2) * self.level1_v2_11(LinearClass::Eta, d, &mu)?
            + int(7) * self.level1_s2(d, &mu)?
            - int(20) * self.level1_s1_class(LinearClass::A, d, &mu)?
            - int(19) * self.level1_s1_class(LinearClass::Eta, d, &mu)?
            - int(2) * self.level1_v2_1(d, &mu)?;
        CountResult::new(format!("tacnodes in P^3, d={d}, (p,q)=({p},{q})"), raw, 2)
    }

    /// Triple-pointed plane curves through `3d-2` points.
    pub fn triple_point_count_p2(&self, d: u32) -> Result<CountResult> {
        let agg = self.planar_aggregates(d)?;
        let di = d as i64;
        let raw =
            int(3 * (di * di - 6 * di + 10)) * agg.a - int(3 * (di - 6)) * agg.b + int(6) * agg.c;
        CountResult::new(format!("triple points in P^2, d={d}"), raw, 6)
    }

    /// Plane curves of degree `d` through `3d-1` points, each counted once
    /// per node: `C(d-1,2) n_d`.
    pub fn nodal_choices_p2(&self, d: u32) -> Result<ExactScalar> {
        Ok(binomial(d as i64 - 1, 2) * self.nd_plane(d)?)
    }

    /// Tacnodal plane curves through `3d-2` points.
    pub fn tacnode_count_p2(&self, d: u32) -> Result<CountResult> {
        let agg = self.planar_aggregates(d)?;
        let di = d as i64;
        let raw = int(2 * (3 * di - 11)) * agg.a + int(2 * (di - 9)) * agg.b - int(8) * agg.c;
        CountResult::new(format!("tacnodes in P^2, d={d}"), raw, 2)
    }

    /// Plane curves through `3d-2` points with an ordered pair of distinct
    /// nodes at one point of the normalization: `2A + 2dB + 2C`.
    pub fn node_pairs_p2(&self, d: u32) -> Result<ExactScalar> {
        let agg = self.planar_aggregates(d)?;
        Ok(int(2) * agg.a + int(2 * d as i64) * agg.b + int(2) * agg.c)
    }

    pub fn planar_node_lemmas(&self, part: PlanarLemma, d: u32) -> Result<ExactScalar> {
        let agg = self.planar_aggregates(d)?;
        let di = d as i64;
        Ok(match part {
            PlanarLemma::NodeOnLine => int(2 * di - 3) * agg.a - agg.b,
            PlanarLemma::NodeEta => agg.a + int(di) * agg.b - agg.delta,
            PlanarLemma::Cusp => int(3) * agg.a + int(3) * agg.b + int(2) * agg.c,
        })
    }
}

/// `eta_{top}` as a generator list; `eta_0 = 1`.
fn psi_generator(top: u32) -> Vec<u32> {
    if top == 0 {
        Vec::new()
    } else {
        vec![top]
    }
}

/// Points and lines of a `P^3` tuple; anything else is rejected.
fn p3_counts(mu: &ConstraintTuple) -> Result<(u32, u32)> {
    let p = mu.count_of(3);
    let q = mu.count_of(2);
    if (p + q) as usize != mu.len() {
        return Err(out_of_range("P^3 formulas take points and lines only"));
    }
    Ok((p, q))
}

/// `2p + q = 4d - offset` for a tuple of points and lines in `P^3`.
fn check_p3_balance(d: u32, mu: &ConstraintTuple, offset: i64) -> Result<()> {
    let (p, q) = p3_counts(mu)?;
    let want = 4 * d as i64 - offset;
    let got = 2 * p as i64 + q as i64;
    if got != want {
        return Err(Error::Balance {
            required: format!("2p+q = 4d-{offset} = {want}"),
            actual: format!("2p+q = {got} (p={p}, q={q})"),
        });
    }
    Ok(())
}
