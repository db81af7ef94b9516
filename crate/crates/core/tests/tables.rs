//! Published low-degree counts and the classical consistency checks.

use ratcurve_core::*;

fn int(v: i64) -> ExactScalar {
    ExactScalar::from(v)
}

fn dec(s: &str) -> ExactScalar {
    s.parse().unwrap()
}

const TABLE1: [&str; 8] = [
    "0",
    "0",
    "0",
    "60",
    "56400",
    "49177440",
    "56784765120",
    "91466185097280",
];
const TABLE2: [&str; 8] = [
    "0",
    "0",
    "0",
    "1296",
    "499680",
    "271751040",
    "227509931520",
    "287190836432640",
];
const P3_CELLS: [(u32, u32, u32); 10] = [
    (4, 6, 1),
    (4, 5, 3),
    (4, 4, 5),
    (4, 3, 7),
    (4, 2, 9),
    (4, 1, 11),
    (5, 8, 1),
    (5, 7, 3),
    (5, 6, 5),
    (6, 10, 1),
];
const TABLE3: [i64; 10] = [0, 0, 0, 60, 1280, 19640, 8, 264, 4360, 4680];
const TABLE4: [i64; 10] = [0, 0, 0, 1296, 27648, 426672, 960, 9792, 111840, 112320];
const TABLE5: [(u32, u32, u32, u32, i64); 9] = [
    (3, 4, 0, 1, 0),
    (3, 3, 1, 2, 0),
    (3, 3, 0, 4, 24),
    (3, 2, 1, 5, 240),
    (4, 6, 0, 0, 0),
    (4, 5, 1, 1, 0),
    (4, 5, 0, 3, 0),
    (4, 4, 1, 4, 1680),
    (5, 7, 1, 0, 120),
];

#[test]
fn plane_rational_curves() {
    let e = Engine::new();
    for (d, n) in [(1, 1), (2, 1), (3, 12), (4, 620)] {
        assert_eq!(e.nd_plane(d).unwrap(), int(n));
    }
}

#[test]
fn table1_triple_points_in_plane() {
    let e = Engine::new();
    for (i, want) in TABLE1.iter().enumerate() {
        let r = e.triple_point_count_p2(i as u32 + 1).unwrap();
        assert_eq!(r.divisor, 6);
        assert_eq!(r.count, dec(want), "d = {}", i + 1);
    }
}

#[test]
fn table2_tacnodes_in_plane() {
    let e = Engine::new();
    for (i, want) in TABLE2.iter().enumerate() {
        let r = e.tacnode_count_p2(i as u32 + 1).unwrap();
        assert_eq!(r.divisor, 2);
        assert_eq!(r.count, dec(want), "d = {}", i + 1);
    }
}

#[test]
fn table3_triple_points_in_space() {
    let e = Engine::new();
    for (&(d, p, q), &want) in P3_CELLS.iter().zip(&TABLE3) {
        assert_eq!(
            e.triple_point_count_p3(d, p, q).unwrap().count,
            int(want),
            "d={d} ({p},{q})"
        );
    }
}

#[test]
fn table4_tacnodes_in_space() {
    let e = Engine::new();
    for (&(d, p, q), &want) in P3_CELLS.iter().zip(&TABLE4) {
        assert_eq!(
            e.tacnode_count_p3(d, p, q).unwrap().count,
            int(want),
            "d={d} ({p},{q})"
        );
    }
}

#[test]
fn table5_cusps_in_p4_by_both_routes() {
    let e = Engine::new();
    for (d, p, q, r, want) in TABLE5 {
        let mu = ConstraintTuple::from_counts(4, p, q, r).unwrap();
        let a = e.cusp_count(4, d, &mu, CuspRoute::A).unwrap();
        let b = e.cusp_count(4, d, &mu, CuspRoute::B).unwrap();
        assert_eq!(a.count, int(want), "d={d} ({p},{q},{r})");
        assert_eq!(b, a, "d={d} ({p},{q},{r})");
    }
}

#[test]
fn classical_checks() {
    let e = Engine::new();
    for d in 1..=3 {
        assert!(e.triple_point_count_p2(d).unwrap().count.is_zero());
        assert!(e.tacnode_count_p2(d).unwrap().count.is_zero());
    }
    for (p, q) in [(6, 1), (5, 3), (4, 5)] {
        assert!(e.triple_point_count_p3(4, p, q).unwrap().count.is_zero());
        assert!(e.tacnode_count_p3(4, p, q).unwrap().count.is_zero());
    }
    // a quartic through points and lines on a plane stays planar
    assert_eq!(
        e.triple_point_count_p3(4, 3, 7).unwrap(),
        e.triple_point_count_p2(4).unwrap()
    );
    assert_eq!(
        e.tacnode_count_p3(4, 3, 7).unwrap(),
        e.tacnode_count_p2(4).unwrap()
    );
    let cubic = ConstraintTuple::from_counts(4, 3, 0, 4).unwrap();
    assert_eq!(
        e.cusp_count(4, 3, &cubic, CuspRoute::A).unwrap().count,
        int(24)
    );
    assert_eq!(e.planar_node_lemmas(PlanarLemma::Cusp, 3).unwrap(), int(24));
}

#[test]
fn cusp_routes_agree_in_plane_and_match_closed_form() {
    let e = Engine::new();
    for d in 1..=6u32 {
        let mu = ConstraintTuple::new(vec![2; 3 * d as usize - 2]);
        let a = e.cusp_count(2, d, &mu, CuspRoute::A).unwrap();
        assert_eq!(
            a.count,
            e.planar_node_lemmas(PlanarLemma::Cusp, d).unwrap(),
            "d={d}"
        );
        if d <= 5 {
            assert_eq!(e.cusp_count(2, d, &mu, CuspRoute::B).unwrap(), a, "d={d}");
        }
    }
}

#[test]
fn merge_coefficient_calibration() {
    let e = Engine::new();
    // three hyperplanes: each multiplies the count by d = 3
    let mu = ConstraintTuple::new(vec![4, 4, 4, 2, 2, 2, 2, 1, 1, 1]);
    let a = e.cusp_raw_route_a(4, 3, &mu).unwrap();
    assert_eq!(a, int(24 * 27));
    assert_eq!(
        e.cusp_raw_route_b(4, 3, &mu, MergeCoefficient::ComponentFactorial)
            .unwrap(),
        a
    );
    assert_ne!(
        e.cusp_raw_route_b(4, 3, &mu, MergeCoefficient::MergedFactorial)
            .unwrap(),
        a
    );
    // without hyperplanes the two readings cannot be told apart
    let plain = ConstraintTuple::from_counts(4, 2, 1, 5).unwrap();
    assert_eq!(
        e.cusp_raw_route_b(4, 3, &plain, MergeCoefficient::MergedFactorial)
            .unwrap(),
        int(240)
    );
}

#[test]
fn degree_two_cancellations_in_space() {
    let e = Engine::new();
    for (p, q) in [(2, 1), (1, 3), (0, 5)] {
        let mu = ConstraintTuple::from_counts(3, p, q, 0).unwrap();
        assert!(e.level1_s2(2, &mu).unwrap().is_zero(), "S2 ({p},{q})");
        assert!(e.level1_v2_1(2, &mu).unwrap().is_zero(), "V2^(1) ({p},{q})");
        assert!(e.level1_v2_11(LinearClass::A, 2, &mu).unwrap().is_zero());
        assert!(e.level1_v2_11(LinearClass::Eta, 2, &mu).unwrap().is_zero());
    }
}

#[test]
fn low_degree_level_one_values_vanish() {
    let e = Engine::new();
    // lines and conics have no nodes
    for (p, q) in [(1, 1), (0, 3)] {
        let mu = ConstraintTuple::from_counts(3, p, q, 0).unwrap();
        assert!(e
            .level1_v1_family(NodeFamilyClass::Count, 1, &mu)
            .unwrap()
            .is_zero());
    }
    for (p, q) in [(3, 1), (2, 3), (0, 7)] {
        let mu = ConstraintTuple::from_counts(3, p, q, 0).unwrap();
        assert!(e
            .level1_v1_family(NodeFamilyClass::Count, 2, &mu)
            .unwrap()
            .is_zero());
    }
    let one_line = ConstraintTuple::from_counts(3, 0, 1, 0).unwrap();
    assert!(e
        .level1_s1_class(LinearClass::A, 1, &one_line)
        .unwrap()
        .is_zero());
    assert!(e
        .level1_s1_class(LinearClass::Eta, 1, &one_line)
        .unwrap()
        .is_zero());
    assert!(e
        .level1_v2_11(LinearClass::A, 1, &one_line)
        .unwrap()
        .is_zero());
    assert!(e.level1_v2_1(1, &one_line).unwrap().is_zero());
    assert!(e.level1_s2(1, &one_line).unwrap().is_zero());
}

#[test]
fn node_family_balance_is_enforced() {
    let e = Engine::new();
    let mu = ConstraintTuple::from_counts(3, 3, 7, 0).unwrap();
    assert!(e.level1_v1_family(NodeFamilyClass::A2, 4, &mu).is_ok());
    assert!(matches!(
        e.level1_v1_family(NodeFamilyClass::Count, 4, &mu),
        Err(Error::Balance { .. })
    ));
    let planes = ConstraintTuple::new(vec![3, 1]);
    assert!(matches!(e.level1_s2(1, &planes), Err(Error::OutOfRange(_))));
}

#[test]
fn counts_are_integral_across_supported_queries() {
    let e = Engine::new();
    for d in 1..=8 {
        e.triple_point_count_p2(d).unwrap();
        e.tacnode_count_p2(d).unwrap();
    }
    for d in 1..=5u32 {
        for p in 0..=(4 * d - 3) / 2 {
            let q = 4 * d - 3 - 2 * p;
            let t = e.triple_point_count_p3(d, p, q).unwrap();
            let c = e.tacnode_count_p3(d, p, q).unwrap();
            assert!(t.count.is_integer() && !t.count.is_negative());
            assert!(c.count.is_integer() && !c.count.is_negative());
        }
    }
    for d in 1..=4u32 {
        for p in 0..=(5 * d - 2) / 3 {
            for q in 0..=(5 * d - 2 - 3 * p) / 2 {
                let r = 5 * d - 2 - 3 * p - 2 * q;
                let mu = ConstraintTuple::from_counts(4, p, q, r).unwrap();
                let c = e.cusp_count(4, d, &mu, CuspRoute::A).unwrap();
                assert!(c.count.is_integer() && !c.count.is_negative());
            }
        }
    }
    for d in 1..=4u32 {
        for p in 0..=(4 * d - 2) / 2 {
            let q = 4 * d - 2 - 2 * p;
            let mu = ConstraintTuple::from_counts(3, p, q, 0).unwrap();
            e.cusp_count(3, d, &mu, CuspRoute::A).unwrap();
        }
    }
}
