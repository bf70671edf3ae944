//! Bundled reference data: the published invariants of restricted root
//! systems in the exceptional types, the published adjacency graph for one
//! `E₆` nilpotent, and a small set of externally sourced labelled diagrams.
//!
//! Nodes are 1-based Bourbaki labels here (as a human would type them);
//! every consumer converts to 0-based indices.

use serde::Serialize;

use crate::rootsys::CartanType;

/// One row of a restricted-root-system table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// Levi type of `L_J` in the usual notation (`1` for the torus).
    pub levi: &'static str,
    /// A representative subset `J` (1-based Bourbaki labels).
    pub j: &'static [usize],
    pub hyperplanes: usize,
    pub chambers: u64,
    pub restricted_weyl_order: u128,
    pub levi_class_size: usize,
    pub coxeter_h: i64,
    pub exponents: &'static [i64],
}

const fn row(
    levi: &'static str,
    j: &'static [usize],
    a: usize,
    c: u64,
    w: u128,
    k: usize,
    h: i64,
    exponents: &'static [i64],
) -> TableRow {
    TableRow { levi, j, hyperplanes: a, chambers: c, restricted_weyl_order: w, levi_class_size: k, coxeter_h: h, exponents }
}

pub const G2_TABLE: &[TableRow] = &[
    row("1", &[], 6, 12, 12, 1, 6, &[1, 5]),
    row("A1", &[2], 1, 2, 2, 1, 4, &[1]),
    row("~A1", &[1], 1, 2, 2, 1, 3, &[1]),
    row("G2", &[1, 2], 0, 1, 1, 1, 1, &[]),
];

pub const F4_TABLE: &[TableRow] = &[
    row("1", &[], 24, 1152, 1152, 1, 12, &[1, 5, 7, 11]),
    row("A1", &[1], 13, 96, 48, 2, 9, &[1, 5, 7]),
    row("~A1", &[4], 13, 96, 48, 2, 8, &[1, 5, 7]),
    row("A2", &[1, 2], 6, 12, 12, 1, 7, &[1, 5]),
    row("~A2", &[3, 4], 6, 12, 12, 1, 6, &[1, 5]),
    row("A1+~A1", &[1, 3], 6, 12, 4, 3, 6, &[1, 5]),
    row("B2", &[2, 3], 4, 8, 8, 1, 5, &[1, 3]),
    row("A2+~A1", &[1, 2, 4], 1, 2, 2, 1, 5, &[1]),
    row("~A2+A1", &[1, 3, 4], 1, 2, 2, 1, 4, &[1]),
    row("C3", &[2, 3, 4], 1, 2, 2, 1, 3, &[1]),
    row("B3", &[1, 2, 3], 1, 2, 2, 1, 3, &[1]),
    row("F4", &[1, 2, 3, 4], 0, 1, 1, 1, 1, &[]),
];

pub const E6_TABLE: &[TableRow] = &[
    row("1", &[], 36, 51840, 51840, 1, 12, &[1, 4, 5, 7, 8, 11]),
    row("A1", &[1], 25, 4320, 720, 6, 9, &[1, 4, 5, 7, 8]),
    row("2A1", &[1, 2], 17, 480, 48, 10, 8, &[1, 4, 5, 7]),
    row("A2", &[1, 3], 15, 360, 72, 5, 7, &[1, 4, 5, 5]),
    row("A2+A1", &[1, 3, 5], 10, 60, 6, 10, 6, &[1, 4, 5]),
    row("3A1", &[1, 2, 6], 10, 60, 12, 5, 6, &[1, 4, 5]),
    row("A3", &[1, 3, 4], 8, 40, 8, 5, 5, &[1, 3, 4]),
    row("2A2", &[1, 3, 5, 6], 6, 12, 12, 1, 6, &[1, 5]),
    row("A2+2A1", &[1, 2, 3, 5], 5, 10, 2, 5, 5, &[1, 4]),
    row("A3+A1", &[1, 3, 4, 6], 4, 8, 2, 4, 4, &[1, 3]),
    row("A4", &[1, 3, 4, 5], 4, 8, 2, 4, 4, &[1, 3]),
    row("D4", &[2, 3, 4, 5], 3, 6, 6, 1, 3, &[1, 2]),
    row("2A2+A1", &[1, 2, 3, 5, 6], 1, 2, 2, 1, 4, &[1]),
    row("A4+A1", &[1, 2, 3, 4, 6], 1, 2, 1, 2, 3, &[1]),
    row("A5", &[1, 3, 4, 5, 6], 1, 2, 2, 1, 3, &[1]),
    row("D5", &[1, 2, 3, 4, 5], 1, 2, 1, 2, 2, &[1]),
    row("E6", &[1, 2, 3, 4, 5, 6], 0, 1, 1, 1, 1, &[]),
];

pub const E7_TABLE: &[TableRow] = &[
    row("1", &[], 63, 2903040, 2903040, 1, 18, &[1, 5, 7, 9, 11, 13, 17]),
    row("A1", &[1], 46, 161280, 23040, 7, 14, &[1, 5, 7, 9, 11, 13]),
    row("2A1", &[1, 2], 33, 11520, 768, 15, 12, &[1, 5, 7, 9, 11]),
    row("A2", &[1, 3], 30, 8640, 1440, 6, 11, &[1, 5, 7, 8, 9]),
    row("(3A1)''", &[2, 5, 7], 24, 1152, 1152, 1, 12, &[1, 5, 7, 11]),
    row("(3A1)'", &[2, 3, 5], 22, 960, 96, 10, 10, &[1, 5, 7, 9]),
    row("A2+A1", &[1, 3, 5], 21, 864, 48, 18, 9, &[1, 5, 7, 8]),
    row("A3", &[1, 3, 4], 18, 576, 96, 6, 8, &[1, 5, 5, 7]),
    row("4A1", &[2, 3, 5, 7], 13, 96, 48, 2, 9, &[1, 5, 7]),
    row("A2+2A1", &[1, 3, 5, 7], 13, 96, 8, 12, 8, &[1, 5, 7]),
    row("2A2", &[1, 3, 5, 6], 13, 96, 24, 4, 8, &[1, 5, 7]),
    row("(A3+A1)''", &[2, 4, 5, 7], 13, 96, 48, 2, 8, &[1, 5, 7]),
    row("(A3+A1)'", &[1, 3, 4, 6], 11, 72, 8, 9, 7, &[1, 5, 5]),
    row("A4", &[1, 3, 4, 5], 10, 60, 12, 5, 6, &[1, 4, 5]),
    row("D4", &[2, 3, 4, 5], 9, 48, 48, 1, 6, &[1, 3, 5]),
    row("A2+3A1", &[1, 2, 3, 5, 7], 6, 12, 12, 1, 7, &[1, 5]),
    row("2A2+A1", &[1, 2, 3, 5, 6], 6, 12, 4, 3, 6, &[1, 5]),
    row("A3+2A1", &[1, 2, 4, 5, 7], 6, 12, 4, 3, 6, &[1, 5]),
    row("A3+A2", &[1, 3, 4, 6, 7], 6, 12, 4, 3, 6, &[1, 5]),
    row("(A5)''", &[2, 4, 5, 6, 7], 6, 12, 12, 1, 6, &[1, 5]),
    row("A4+A1", &[1, 3, 4, 5, 7], 5, 10, 2, 5, 5, &[1, 4]),
    row("D4+A1", &[2, 3, 4, 5, 7], 4, 8, 8, 1, 5, &[1, 3]),
    row("(A5)'", &[1, 3, 4, 5, 6], 4, 8, 4, 2, 4, &[1, 3]),
    row("D5", &[1, 2, 3, 4, 5], 4, 8, 4, 2, 4, &[1, 3]),
    row("A3+A2+A1", &[1, 2, 3, 5, 6, 7], 1, 2, 2, 1, 5, &[1]),
    row("A4+A2", &[1, 2, 3, 4, 6, 7], 1, 2, 2, 1, 4, &[1]),
    row("A5+A1", &[1, 2, 4, 5, 6, 7], 1, 2, 2, 1, 4, &[1]),
    row("D5+A1", &[1, 2, 3, 4, 5, 7], 1, 2, 2, 1, 3, &[1]),
    row("A6", &[1, 3, 4, 5, 6, 7], 1, 2, 2, 1, 3, &[1]),
    row("D6", &[2, 3, 4, 5, 6, 7], 1, 2, 2, 1, 3, &[1]),
    row("E6", &[1, 2, 3, 4, 5, 6], 1, 2, 2, 1, 2, &[1]),
    row("E7", &[1, 2, 3, 4, 5, 6, 7], 0, 1, 1, 1, 1, &[]),
];

pub const E8_TABLE: &[TableRow] = &[
    row("1", &[], 120, 696729600, 696729600, 1, 30, &[1, 7, 11, 13, 17, 19, 23, 29]),
    row("A1", &[1], 91, 23224320, 2903040, 8, 24, &[1, 7, 11, 13, 17, 19, 23]),
    row("2A1", &[1, 2], 68, 967680, 46080, 21, 20, &[1, 7, 11, 13, 17, 19]),
    row("A2", &[1, 3], 63, 725760, 103680, 7, 19, &[1, 7, 11, 13, 14, 17]),
    row("3A1", &[1, 2, 5], 49, 48384, 2304, 21, 18, &[1, 7, 11, 13, 17]),
    row("A2+A1", &[1, 3, 5], 46, 40320, 1440, 28, 16, &[1, 7, 11, 13, 14]),
    row("A3", &[1, 3, 4], 41, 26880, 3840, 7, 15, &[1, 7, 9, 11, 13]),
    row("4A1", &[2, 3, 5, 7], 32, 2688, 384, 7, 15, &[1, 7, 11, 13]),
    row("A2+2A1", &[1, 3, 5, 7], 32, 2688, 96, 28, 14, &[1, 7, 11, 13]),
    row("2A2", &[1, 3, 5, 6], 30, 2304, 288, 8, 13, &[1, 7, 11, 11]),
    row("A3+A1", &[1, 3, 4, 6], 28, 1920, 96, 20, 12, &[1, 7, 9, 11]),
    row("A4", &[1, 3, 4, 5], 25, 1440, 240, 6, 11, &[1, 7, 8, 9]),
    row("D4", &[2, 3, 4, 5], 24, 1152, 1152, 1, 12, &[1, 5, 7, 11]),
    row("A2+3A1", &[1, 3, 2, 5, 7], 19, 192, 24, 8, 12, &[1, 7, 11]),
    row("2A2+A1", &[1, 3, 5, 6, 8], 19, 192, 24, 8, 12, &[1, 7, 11]),
    row("A3+2A1", &[1, 3, 4, 6, 8], 17, 160, 16, 10, 11, &[1, 7, 9]),
    row("A3+A2", &[1, 3, 4, 6, 7], 17, 160, 16, 10, 10, &[1, 7, 9]),
    row("A4+A1", &[1, 3, 4, 5, 7], 16, 144, 12, 12, 9, &[1, 7, 8]),
    row("D4+A1", &[2, 3, 4, 5, 7], 13, 96, 48, 2, 9, &[1, 5, 7]),
    row("A5", &[1, 3, 4, 5, 6], 13, 96, 24, 4, 8, &[1, 5, 7]),
    row("D5", &[1, 2, 3, 4, 5], 13, 96, 48, 2, 8, &[1, 5, 7]),
    row("2A2+2A1", &[1, 3, 5, 6, 2, 8], 8, 16, 8, 2, 10, &[1, 7]),
    row("A3+A2+A1", &[1, 2, 3, 5, 6, 7], 8, 16, 4, 4, 9, &[1, 7]),
    row("A4+2A1", &[1, 2, 3, 4, 6, 8], 8, 16, 4, 4, 8, &[1, 7]),
    row("2A3", &[1, 3, 4, 6, 7, 8], 8, 16, 8, 2, 8, &[1, 7]),
    row("A4+A2", &[1, 3, 4, 2, 6, 7], 4, 8, 4, 16, 8, &[1, 7]),
    row("A5+A1", &[1, 3, 4, 5, 6, 8], 6, 12, 4, 3, 7, &[1, 5]),
    row("D4+A2", &[2, 3, 4, 5, 7, 8], 6, 12, 12, 1, 7, &[1, 5]),
    row("A6", &[1, 3, 4, 5, 6, 7], 6, 12, 4, 3, 6, &[1, 5]),
    row("D5+A1", &[1, 2, 3, 4, 5, 7], 6, 12, 4, 3, 6, &[1, 5]),
    row("E6", &[1, 2, 3, 4, 5, 6], 6, 12, 12, 1, 6, &[1, 5]),
    row("D6", &[2, 3, 4, 5, 6, 7], 4, 8, 8, 1, 5, &[1, 3]),
    row("A4+A2+A1", &[1, 2, 3, 5, 6, 7, 8], 1, 2, 2, 1, 7, &[1]),
    row("A4+A3", &[1, 2, 3, 4, 6, 7, 8], 1, 2, 2, 1, 6, &[1]),
    row("A6+A1", &[1, 2, 4, 5, 6, 7, 8], 1, 2, 2, 1, 5, &[1]),
    row("D5+A2", &[1, 2, 3, 4, 5, 7, 8], 1, 2, 2, 1, 5, &[1]),
    row("E6+A1", &[1, 2, 3, 4, 5, 6, 8], 1, 2, 2, 1, 4, &[1]),
    row("A7", &[1, 3, 4, 5, 6, 7, 8], 1, 2, 2, 1, 4, &[1]),
    row("D7", &[2, 3, 4, 5, 6, 7, 8], 1, 2, 2, 1, 3, &[1]),
    row("E7", &[1, 2, 3, 4, 5, 6, 7], 1, 2, 2, 1, 3, &[1]),
    row("E8", &[1, 2, 3, 4, 5, 6, 7, 8], 0, 1, 1, 1, 1, &[]),
];

/// The published table for an exceptional type, if any.
pub fn table(kind: CartanType, rank: usize) -> Option<&'static [TableRow]> {
    match (kind, rank) {
        (CartanType::G, 2) => Some(G2_TABLE),
        (CartanType::F, 4) => Some(F4_TABLE),
        (CartanType::E, 6) => Some(E6_TABLE),
        (CartanType::E, 7) => Some(E7_TABLE),
        (CartanType::E, 8) => Some(E8_TABLE),
        _ => None,
    }
}

/// A named nilpotent orbit given by a Levi subset and the labels of a
/// distinguished diagram on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedNilpotent {
    pub kind: CartanType,
    pub rank: usize,
    pub name: &'static str,
    /// 1-based Bourbaki labels.
    pub j: &'static [usize],
    /// Labels on `J`, in the order of `j`.
    pub labels: &'static [i64],
    /// Whether the labels come from an external classification rather than
    /// being the principal (all-2) diagram of the Levi.
    pub external: bool,
}

/// Bundled named nilpotents. Principal-in-Levi entries (all labels 2) need no
/// outside data; entries marked `external` use distinguished diagrams from
/// the standard classification of distinguished orbits.
pub const NAMED_NILPOTENTS: &[NamedNilpotent] = &[
    NamedNilpotent { kind: CartanType::G, rank: 2, name: "A1", j: &[2], labels: &[2], external: false },
    NamedNilpotent { kind: CartanType::G, rank: 2, name: "~A1", j: &[1], labels: &[2], external: false },
    NamedNilpotent { kind: CartanType::G, rank: 2, name: "G2(a1)", j: &[1, 2], labels: &[0, 2], external: true },
    NamedNilpotent { kind: CartanType::G, rank: 2, name: "G2", j: &[1, 2], labels: &[2, 2], external: false },
    NamedNilpotent { kind: CartanType::F, rank: 4, name: "A1", j: &[1], labels: &[2], external: false },
    NamedNilpotent { kind: CartanType::F, rank: 4, name: "~A1", j: &[4], labels: &[2], external: false },
    NamedNilpotent { kind: CartanType::F, rank: 4, name: "A1+~A1", j: &[1, 3], labels: &[2, 2], external: false },
    NamedNilpotent { kind: CartanType::F, rank: 4, name: "B2", j: &[2, 3], labels: &[2, 2], external: false },
    NamedNilpotent { kind: CartanType::F, rank: 4, name: "F4(a3)", j: &[1, 2, 3, 4], labels: &[0, 2, 0, 0], external: true },
    NamedNilpotent { kind: CartanType::F, rank: 4, name: "F4", j: &[1, 2, 3, 4], labels: &[2, 2, 2, 2], external: false },
    NamedNilpotent { kind: CartanType::E, rank: 6, name: "A1", j: &[2], labels: &[2], external: false },
    NamedNilpotent { kind: CartanType::E, rank: 6, name: "A2", j: &[1, 3], labels: &[2, 2], external: false },
    NamedNilpotent { kind: CartanType::E, rank: 6, name: "A3", j: &[1, 3, 4], labels: &[2, 2, 2], external: false },
    NamedNilpotent { kind: CartanType::E, rank: 6, name: "D4", j: &[2, 3, 4, 5], labels: &[2, 2, 2, 2], external: false },
    NamedNilpotent { kind: CartanType::E, rank: 6, name: "D4(a1)", j: &[2, 3, 4, 5], labels: &[2, 2, 0, 2], external: true },
    NamedNilpotent { kind: CartanType::E, rank: 6, name: "D5(a1)", j: &[1, 2, 3, 4, 5], labels: &[2, 2, 2, 0, 2], external: true },
    NamedNilpotent { kind: CartanType::E, rank: 6, name: "E6(a1)", j: &[1, 2, 3, 4, 5, 6], labels: &[2, 2, 2, 0, 2, 2], external: true },
    NamedNilpotent { kind: CartanType::E, rank: 7, name: "A3+A2", j: &[1, 3, 4, 6, 7], labels: &[2, 2, 2, 2, 2], external: false },
];

/// Looks up a bundled named nilpotent.
pub fn named_nilpotent(kind: CartanType, rank: usize, name: &str) -> Option<&'static NamedNilpotent> {
    NAMED_NILPOTENTS.iter().find(|n| n.kind == kind && n.rank == rank && n.name == name)
}

/// One published adjacency graph: node characteristics in display notation
/// (`abcde/f` for `E₆` means labels on nodes 1,3,4,5,6 then node 2) and the
/// Dynkin node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyFixture {
    pub kind: CartanType,
    pub rank: usize,
    pub name: &'static str,
    pub j: &'static [usize],
    pub labels: &'static [i64],
    pub nodes: &'static [&'static str],
    pub edges: &'static [(usize, usize)],
    pub dynkin: usize,
}

pub const ADJACENCY_FIXTURES: &[AdjacencyFixture] = &[
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 6,
        name: "2A1",
        j: &[1, 6],
        labels: &[2, 2],
        nodes: &["00002/0", "10001/0", "20000/0"],
        edges: &[(0, 1), (1, 2)],
        dynkin: 1,
    },
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 6,
        name: "A2+2A1",
        j: &[1, 2, 3, 5],
        labels: &[2, 2, 2, 2],
        nodes: &["00020/0", "01010/0", "02000/0"],
        edges: &[(0, 1), (1, 2)],
        dynkin: 1,
    },
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 6,
        name: "A3",
        j: &[1, 3, 4],
        labels: &[2, 2, 2],
        nodes: &["00022/0", "00012/1", "00002/2", "10001/2", "20000/2", "21000/1", "22000/0"],
        edges: &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)],
        dynkin: 3,
    },
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 6,
        name: "A3+A1",
        j: &[1, 3, 4, 6],
        labels: &[2, 2, 2, 2],
        nodes: &["10102/0", "10011/1", "01010/1", "11001/1", "20101/0"],
        edges: &[(0, 1), (1, 2), (2, 3), (3, 4)],
        dynkin: 2,
    },
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 6,
        name: "D4(a1)",
        j: &[2, 3, 4, 5],
        labels: &[2, 2, 0, 2],
        nodes: &["02002/0", "11011/0", "20020/0", "01101/0", "10110/0", "00200/0"],
        edges: &[(0, 1), (1, 2), (3, 4), (0, 3), (3, 5), (2, 4), (4, 5), (1, 4), (1, 3)],
        dynkin: 5,
    },
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 6,
        name: "D5(a1)",
        j: &[1, 2, 3, 4, 5],
        labels: &[2, 2, 2, 0, 2],
        nodes: &["02002/2", "11011/2", "20020/2"],
        edges: &[(0, 1), (1, 2)],
        dynkin: 1,
    },
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 6,
        name: "D5",
        j: &[1, 2, 3, 4, 5],
        labels: &[2, 2, 2, 2, 2],
        // The end nodes carry branch label 0: with label 2 the grading would
        // have dim g_0 + dim g_1 = 8, short of dim g_e = 10.
        nodes: &[
            "20222/0", "11122/1", "02022/2", "11112/2", "20202/2", "21111/2", "22020/2", "22111/1", "22202/0",
        ],
        edges: &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8)],
        dynkin: 4,
    },
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 7,
        name: "E6(a1)",
        j: &[1, 2, 3, 4, 5, 6],
        labels: &[2, 2, 2, 0, 2, 2],
        // The fourth node carries branch label 1: label 0 would give
        // dim g_0 + dim g_1 = 18 instead of dim g_e = 15.
        nodes: &["020022/2", "110112/2", "200202/2", "201111/1", "202020/0"],
        edges: &[(0, 1), (1, 2), (2, 3), (3, 4)],
        dynkin: 4,
    },
    AdjacencyFixture {
        kind: CartanType::E,
        rank: 7,
        name: "A4+A1",
        j: &[1, 3, 4, 5, 7],
        labels: &[2, 2, 2, 2, 2],
        nodes: &["101010/0", "100101/1", "000202/0", "010102/0", "020002/0"],
        edges: &[(0, 1), (2, 3), (3, 4)],
        dynkin: 0,
    },
];

/// Looks up a bundled adjacency graph.
pub fn adjacency_fixture(kind: CartanType, rank: usize, name: &str) -> Option<&'static AdjacencyFixture> {
    ADJACENCY_FIXTURES.iter().find(|f| f.kind == kind && f.rank == rank && f.name == name)
}

/// Orbits in exceptional types whose component group `Z_e` is non-trivial,
/// with its order (2 for `S₂`, 6 for `S₃`). Every other orbit has trivial
/// `Z_e`.
pub const NONTRIVIAL_COMPONENT_GROUPS: &[(CartanType, usize, &str, u128)] = &[
    (CartanType::F, 4, "~A1", 2),
    (CartanType::F, 4, "A2", 2),
    (CartanType::F, 4, "B2", 2),
    (CartanType::E, 6, "A2", 2),
    (CartanType::E, 6, "D4(a1)", 6),
    (CartanType::E, 7, "A2", 2),
    (CartanType::E, 7, "A2+A1", 2),
    (CartanType::E, 7, "D4(a1)+A1", 2),
    (CartanType::E, 7, "A3+A2", 2),
    (CartanType::E, 7, "A4", 2),
    (CartanType::E, 7, "A4+A1", 2),
    (CartanType::E, 7, "D5(a1)", 2),
    (CartanType::E, 7, "E6(a1)", 2),
    (CartanType::E, 7, "D4(a1)", 6),
    (CartanType::E, 8, "A2", 2),
    (CartanType::E, 8, "A2+A1", 2),
    (CartanType::E, 8, "2A2", 2),
    (CartanType::E, 8, "A3+A2", 2),
    (CartanType::E, 8, "A4", 2),
    (CartanType::E, 8, "D4(a1)+A2", 2),
    (CartanType::E, 8, "A4+A1", 2),
    (CartanType::E, 8, "D5(a1)", 2),
    (CartanType::E, 8, "A4+2A1", 2),
    (CartanType::E, 8, "D4+A2", 2),
    (CartanType::E, 8, "D6(a2)", 2),
    (CartanType::E, 8, "D6(a1)", 2),
    (CartanType::E, 8, "E6(a1)", 2),
    (CartanType::E, 8, "D5+A2", 2),
    (CartanType::E, 8, "D7(a2)", 2),
    (CartanType::E, 8, "E6(a1)+A1", 2),
    (CartanType::E, 8, "D7(a1)", 2),
    (CartanType::E, 8, "D4(a1)", 6),
    (CartanType::E, 8, "D4(a1)+A1", 6),
];

/// Expected `|Z_e|` for an exceptional orbit.
pub fn component_group_order(kind: CartanType, rank: usize, name: &str) -> u128 {
    NONTRIVIAL_COMPONENT_GROUPS
        .iter()
        .find(|(k, r, n, _)| *k == kind && *r == rank && *n == name)
        .map_or(1, |e| e.3)
}
