//! Published counts, embedded verbatim as decimal strings.

use ratcurve_core::Singularity;

/// One table cell. `mu` holds the constraint counts (points, lines, planes)
/// and is empty for plane curves through `3d - 2` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoldenCell {
    pub d: u32,
    pub mu: &'static [u32],
    pub count: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub id: u32,
    pub title: &'static str,
    pub singularity: Singularity,
    pub n: u32,
    pub cells: &'static [GoldenCell],
}

const fn cell(d: u32, mu: &'static [u32], count: &'static str) -> GoldenCell {
    GoldenCell { d, mu, count }
}

const P2_TRIPLE: [GoldenCell; 8] = [
    cell(1, &[], "0"),
    cell(2, &[], "0"),
    cell(3, &[], "0"),
    cell(4, &[], "60"),
    cell(5, &[], "56400"),
    cell(6, &[], "49177440"),
    cell(7, &[], "56784765120"),
    cell(8, &[], "91466185097280"),
];

const P2_TACNODE: [GoldenCell; 8] = [
    cell(1, &[], "0"),
    cell(2, &[], "0"),
    cell(3, &[], "0"),
    cell(4, &[], "1296"),
    cell(5, &[], "499680"),
    cell(6, &[], "271751040"),
    cell(7, &[], "227509931520"),
    cell(8, &[], "287190836432640"),
];

const P3_TRIPLE: [GoldenCell; 10] = [
    cell(4, &[6, 1], "0"),
    cell(4, &[5, 3], "0"),
    cell(4, &[4, 5], "0"),
    cell(4, &[3, 7], "60"),
    cell(4, &[2, 9], "1280"),
    cell(4, &[1, 11], "19640"),
    cell(5, &[8, 1], "8"),
    cell(5, &[7, 3], "264"),
    cell(5, &[6, 5], "4360"),
    cell(6, &[10, 1], "4680"),
];

const P3_TACNODE: [GoldenCell; 10] = [
    cell(4, &[6, 1], "0"),
    cell(4, &[5, 3], "0"),
    cell(4, &[4, 5], "0"),
    cell(4, &[3, 7], "1296"),
    cell(4, &[2, 9], "27648"),
    cell(4, &[1, 11], "426672"),
    cell(5, &[8, 1], "960"),
    cell(5, &[7, 3], "9792"),
    cell(5, &[6, 5], "111840"),
    cell(6, &[10, 1], "112320"),
];

const P4_CUSP: [GoldenCell; 9] = [
    cell(3, &[4, 0, 1], "0"),
    cell(3, &[3, 1, 2], "0"),
    cell(3, &[3, 0, 4], "24"),
    cell(3, &[2, 1, 5], "240"),
    cell(4, &[6, 0, 0], "0"),
    cell(4, &[5, 1, 1], "0"),
    cell(4, &[5, 0, 3], "0"),
    cell(4, &[4, 1, 4], "1680"),
    cell(5, &[7, 1, 0], "120"),
];

pub const TABLES: [GoldenTable; 5] = [
    GoldenTable {
        id: 1,
        title: "rational triple-pointed curves in P^2 through 3d-2 points",
        singularity: Singularity::TriplePoint,
        n: 2,
        cells: &P2_TRIPLE,
    },
    GoldenTable {
        id: 2,
        title: "rational tacnodal curves in P^2 through 3d-2 points",
        singularity: Singularity::Tacnode,
        n: 2,
        cells: &P2_TACNODE,
    },
    GoldenTable {
        id: 3,
        title: "rational triple-pointed curves in P^3 through p points and q lines",
        singularity: Singularity::TriplePoint,
        n: 3,
        cells: &P3_TRIPLE,
    },
    GoldenTable {
        id: 4,
        title: "rational tacnodal curves in P^3 through p points and q lines",
        singularity: Singularity::Tacnode,
        n: 3,
        cells: &P3_TACNODE,
    },
    GoldenTable {
        id: 5,
        title: "rational cuspidal curves in P^4 through p points, q lines and r planes",
        singularity: Singularity::Cusp,
        n: 4,
        cells: &P4_CUSP,
    },
];

pub fn table(id: u32) -> Option<&'static GoldenTable> {
    TABLES.iter().find(|t| t.id == id)
}

/// `(p,q)` or `(p,q,r)`; empty for plane tables.
pub fn format_mu(mu: &[u32]) -> String {
    let parts: Vec<String> = mu.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_cells_are_balanced() {
        for t in &TABLES {
            for c in t.cells {
                match t.n {
                    2 => assert!(c.mu.is_empty()),
                    3 => assert_eq!(2 * c.mu[0] + c.mu[1], 4 * c.d - 3),
                    _ => assert_eq!(3 * c.mu[0] + 2 * c.mu[1] + c.mu[2], 5 * c.d - 2),
                }
                assert!(c.count.bytes().all(|b| b.is_ascii_digit()));
            }
        }
        assert_eq!(format_mu(&[1, 11]), "(1,11)");
        assert!(table(6).is_none());
    }
}
