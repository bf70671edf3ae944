//! Classical Lie algebras via Dynkin pyramids.
//!
//! For `sl_n`, `sp_2n` and `so_N` a nilpotent orbit is given by a partition.
//! The Dynkin pyramid of the partition yields explicit matrices `e` and `h`,
//! a coordinate system `p = (p_1,…,p_m)` on `E_e` (one coordinate per
//! non-skew row of the upper half plane), the roots `Φ_e` with their
//! `d`-values in closed form, and the restricted Weyl group `W_e` as signed
//! permutations. Shifting the rows of the pyramid by `p` realises the
//! grading `Γ(p)`, whose characteristic is read off by sorting columns.
//!
//! The good-grading polytope is built on top of
//! [`GoodGradingPolytope`](crate::grading::GoodGradingPolytope), so integral
//! points, `W_e`-classes and adjacency graphs come from the general
//! machinery; [`classical_oracle`] checks goodness directly from the
//! matrices.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{int_rank, q, qi, to_i64, ExactError, QMatrix, QVector, Rational};
use crate::grading::{
    we_orbits, AdjacencyGraph, Characteristic, GoodGradingPolytope, GradingError, NilpotentDatum, OrbitClass,
};
use crate::restrict::Budget;
use crate::rootsys::{graded_ad_ranks, CartanType, GoodnessReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PyramidError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("point has {got} coordinates, expected {expected}")]
    WrongDimension { expected: usize, got: usize },
    #[error("point does not satisfy the relation Σ λ_i p_i = 0")]
    NotOnHyperplane,
    #[error("point lies outside the good grading polytope")]
    OutsidePolytope,
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The classical families handled by pyramids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassicalType {
    Sl,
    Sp,
    So,
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassicalType::Sl => "sl",
            ClassicalType::Sp => "sp",
            ClassicalType::So => "so",
        })
    }
}

impl FromStr for ClassicalType {
    type Err = PyramidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sl" | "a" => Ok(ClassicalType::Sl),
            "sp" | "c" => Ok(ClassicalType::Sp),
            "so" => Ok(ClassicalType::So),
            _ => Err(PyramidError::InvalidPartition(format!("unknown classical type {s:?} (use sl, sp or so)"))),
        }
    }
}

/// A partition `λ₁ ≥ λ₂ ≥ … > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    /// Sorts the parts decreasingly and drops zeros.
    pub fn new(parts: &[usize]) -> Result<Self, PyramidError> {
        let mut v: Vec<usize> = parts.iter().copied().filter(|&x| x > 0).collect();
        if v.is_empty() {
            return Err(PyramidError::InvalidPartition("no non-zero parts".into()));
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(v))
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.0.iter().filter(|&&x| x == part).count()
    }

    /// Distinct parts in decreasing order with their multiplicities.
    pub fn distinct(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((p, m)) if *p == x => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Checks the parity condition for the given family.
    pub fn validate(&self, kind: ClassicalType) -> Result<(), PyramidError> {
        for (part, mult) in self.distinct() {
            match kind {
                ClassicalType::Sp if part % 2 == 1 && mult % 2 == 1 => {
                    return Err(PyramidError::InvalidPartition(format!(
                        "symplectic partitions need every odd part with even multiplicity; part {part} appears {mult} times"
                    )))
                }
                ClassicalType::So if part % 2 == 0 && mult % 2 == 1 => {
                    return Err(PyramidError::InvalidPartition(format!(
                        "orthogonal partitions need every even part with even multiplicity; part {part} appears {mult} times"
                    )))
                }
                _ => {}
            }
        }
        if kind == ClassicalType::Sp && self.total() % 2 == 1 {
            return Err(PyramidError::InvalidPartition("symplectic partitions have even total".into()));
        }
        Ok(())
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=max.min(n)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for Partition {
    type Err = PyramidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<usize> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| PyramidError::InvalidPartition(format!("bad part {t:?}"))))
            .collect::<Result<_, _>>()?;
        Partition::new(&parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// One box of a pyramid: its label and the coordinates of its midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PyramidBox {
    pub label: i32,
    pub row: i32,
    pub col: i32,
}

/// A Dynkin pyramid. Boxes are stored in label order `1,…,n` for `sl` and
/// `1,…,n, 0, −n,…,−1` for `sp`/`so` (the same order as the basis of the
/// natural module).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pyramid {
    pub kind: ClassicalType,
    pub partition: Partition,
    pub boxes: Vec<PyramidBox>,
    /// Non-skew rows `r₁ < … < r_m` in the upper half plane.
    pub rows: Vec<i32>,
    /// Number of boxes in each row of `rows`.
    pub lambda_bar: Vec<usize>,
    /// Skew rows in the closed upper half plane (row 0 included when skew).
    pub skew_rows: Vec<i32>,
}

/// Builds the Dynkin pyramid of the given shape with the canonical
/// numbering: rows of the upper half plane from the bottom up, boxes left to
/// right (only the boxes right of the axis in row 0), negative labels in the
/// centrally symmetric boxes, and label 0 for the central box when `N` is odd.
pub fn build_pyramid(kind: ClassicalType, partition: &Partition) -> Result<Pyramid, PyramidError> {
    partition.validate(kind)?;
    match kind {
        ClassicalType::Sl => Ok(sl_pyramid(partition)),
        ClassicalType::Sp | ClassicalType::So => Ok(symmetric_pyramid(kind, partition)),
    }
}

fn centered(len: usize) -> Vec<i32> {
    let l = len as i32;
    (0..l).map(|k| 1 - l + 2 * k).collect()
}

fn sl_pyramid(partition: &Partition) -> Pyramid {
    let mut boxes = Vec::new();
    let mut label = 1;
    let mut rows = Vec::new();
    for (i, &part) in partition.0.iter().enumerate() {
        let row = 2 * i as i32 + 1;
        rows.push(row);
        for col in centered(part) {
            boxes.push(PyramidBox { label, row, col });
            label += 1;
        }
    }
    Pyramid {
        kind: ClassicalType::Sl,
        partition: partition.clone(),
        boxes,
        rows,
        lambda_bar: partition.0.clone(),
        skew_rows: vec![],
    }
}

/// Upper-half-plane rows before numbering: `(row, columns, skew)`. For row
/// 0 only the columns right of the axis are listed.
fn symmetric_rows(kind: ClassicalType, partition: &Partition) -> (Vec<(i32, Vec<i32>, bool)>, bool) {
    let mut mult: BTreeMap<usize, usize> = partition.distinct().into_iter().collect();
    let mut out = Vec::new();
    let mut central = false;
    let largest = partition.0[0];
    let mut next;
    let mut partner: BTreeMap<usize, usize> = BTreeMap::new();
    match kind {
        ClassicalType::Sp => {
            let zeroth = mult[&largest] % 2 == 1;
            next = if zeroth { 0 } else { 1 };
        }
        _ => {
            if partition.total() % 2 == 1 {
                let a0 = partition.0.iter().copied().find(|&a| a % 2 == 1 && mult[&a] % 2 == 1).unwrap();
                out.push((0, centered(a0).into_iter().filter(|&c| c > 0).collect(), true));
                central = true;
                *mult.get_mut(&a0).unwrap() -= 1;
                next = 2;
            } else {
                next = 1;
            }
            let odd: Vec<usize> = mult.iter().rev().filter(|(a, m)| *a % 2 == 1 && *m % 2 == 1).map(|(a, _)| *a).collect();
            for pair in odd.chunks(2) {
                partner.insert(pair[0], pair[1]);
            }
        }
    }
    let distinct: Vec<usize> = mult.keys().rev().copied().collect();
    for a in distinct {
        let ai = a as i32;
        if kind == ClassicalType::Sp && mult[&a] % 2 == 1 {
            let cols: Vec<i32> = (0..ai / 2).map(|k| 1 + 2 * k).collect();
            out.push((next, cols, true));
            next += 2;
            *mult.get_mut(&a).unwrap() -= 1;
        }
        if let Some(&b) = partner.get(&a) {
            let bi = b as i32;
            let cols: Vec<i32> = (0..(ai + bi) / 2).map(|k| 1 - bi + 2 * k).collect();
            out.push((next, cols, true));
            next += 2;
            *mult.get_mut(&a).unwrap() -= 1;
            *mult.get_mut(&b).unwrap() -= 1;
        }
        for _ in 0..mult[&a] / 2 {
            out.push((next, centered(a), false));
            next += 2;
        }
        mult.insert(a, 0);
    }
    (out, central)
}

fn symmetric_pyramid(kind: ClassicalType, partition: &Partition) -> Pyramid {
    let (upper, central) = symmetric_rows(kind, partition);
    let mut positive = Vec::new();
    let mut label = 1;
    let mut rows = Vec::new();
    let mut lambda_bar = Vec::new();
    let mut skew_rows = Vec::new();
    for (row, cols, skew) in &upper {
        if *skew {
            skew_rows.push(*row);
        } else {
            rows.push(*row);
            lambda_bar.push(cols.len());
        }
        for &col in cols {
            positive.push(PyramidBox { label, row: *row, col });
            label += 1;
        }
    }
    let mut boxes = positive.clone();
    if central {
        boxes.push(PyramidBox { label: 0, row: 0, col: 0 });
    }
    boxes.extend(positive.iter().rev().map(|b| PyramidBox { label: -b.label, row: -b.row, col: -b.col }));
    Pyramid { kind, partition: partition.clone(), boxes, rows, lambda_bar, skew_rows }
}

impl Pyramid {
    /// Dimension `N` of the natural module.
    pub fn size(&self) -> usize {
        self.boxes.len()
    }

    /// Number of coordinates `m` (non-skew upper rows).
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    /// Matrix index of a label: `1..n` for `sl`; the order
    /// `1,…,n,0,−n,…,−1` for `sp`/`so`.
    pub fn index(&self, label: i32) -> usize {
        self.boxes.iter().position(|b| b.label == label).expect("label in pyramid")
    }

    /// `σ_{i,j}`: the coefficient of `e_{i,j}` in the fixed Chevalley basis.
    pub fn sigma(&self, i: i32, j: i32) -> i64 {
        match self.kind {
            ClassicalType::Sl => 1,
            ClassicalType::Sp => {
                if i < 0 && j < 0 {
                    -1
                } else {
                    1
                }
            }
            ClassicalType::So => match (i.signum(), j.signum()) {
                (1, 1) => 1,
                (-1, -1) => -1,
                (1, -1) => {
                    if i < -j {
                        1
                    } else {
                        -1
                    }
                }
                (-1, 1) => {
                    if -i > j {
                        1
                    } else {
                        -1
                    }
                }
                (1, 0) => 2,
                (0, -1) => -1,
                (0, 1) => 1,
                (-1, 0) => -2,
                _ => 0,
            },
        }
    }

    /// The pairs `(i, j)` of boxes contributing to `e`: horizontal
    /// neighbours, plus the bridges across skew rows.
    pub fn e_pairs(&self) -> Vec<(i32, i32)> {
        let mut out = Vec::new();
        for a in &self.boxes {
            for b in &self.boxes {
                let same_row = a.row == b.row && a.col == b.col + 2;
                let bridge = a.row > 0
                    && a.row == -b.row
                    && self.skew_rows.contains(&a.row)
                    && match self.kind {
                        ClassicalType::Sp => a.col == 1 && b.col == -1,
                        ClassicalType::So => (a.col == 2 && b.col == 0) || (a.col == 0 && b.col == -2),
                        ClassicalType::Sl => false,
                    };
                if same_row || bridge {
                    out.push((a.label, b.label));
                }
            }
        }
        out
    }

    /// `e = Σ σ_{i,j} e_{i,j}` as labelled entries `(i, j, σ_{i,j})`, sorted
    /// by decreasing `i` then decreasing `j`.
    pub fn e_entries(&self) -> Vec<(i32, i32, i64)> {
        let mut v: Vec<(i32, i32, i64)> = self.e_pairs().into_iter().map(|(i, j)| (i, j, self.sigma(i, j))).collect();
        v.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        v
    }

    /// Dense `N × N` matrix of `e` in the basis order of [`Pyramid::index`].
    pub fn e_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        let mut m = vec![vec![0i64; n]; n];
        for (i, j, s) in self.e_entries() {
            m[self.index(i)][self.index(j)] = s;
        }
        m
    }

    /// Diagonal of `h = Σ col(i) e_{i,i}`.
    pub fn h_diagonal(&self) -> Vec<i64> {
        self.boxes.iter().map(|b| b.col as i64).collect()
    }

    /// Gram matrix of the invariant form on the natural module (`None` for `sl`).
    pub fn form(&self) -> Option<Vec<Vec<i64>>> {
        let n = self.size();
        let mut g = vec![vec![0i64; n]; n];
        match self.kind {
            ClassicalType::Sl => return None,
            ClassicalType::Sp => {
                for b in self.boxes.iter().filter(|b| b.label > 0) {
                    g[self.index(b.label)][self.index(-b.label)] = 1;
                    g[self.index(-b.label)][self.index(b.label)] = -1;
                }
            }
            ClassicalType::So => {
                for b in self.boxes.iter().filter(|b| b.label > 0) {
                    g[self.index(b.label)][self.index(-b.label)] = 1;
                    g[self.index(-b.label)][self.index(b.label)] = 1;
                }
                if self.boxes.iter().any(|b| b.label == 0) {
                    g[self.index(0)][self.index(0)] = 2;
                }
            }
        }
        Some(g)
    }

    /// Renders `e` as a sum of signed matrix units, e.g. `e_{2,1}-e_{-1,-2}`.
    pub fn format_e(&self) -> String {
        let mut s = String::new();
        for (k, (i, j, c)) in self.e_entries().into_iter().enumerate() {
            let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            s.push_str(&format!("{sign}{mag}e_{{{i},{j}}}"));
        }
        s
    }

    /// Text picture: one line per row (top first), each box shown by its label.
    pub fn render(&self) -> String {
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = self.boxes.iter().map(|b| b.row).collect();
            r.sort_unstable();
            r.dedup();
            r.reverse();
            r
        };
        let minc = self.boxes.iter().map(|b| b.col).min().unwrap_or(0);
        let maxc = self.boxes.iter().map(|b| b.col).max().unwrap_or(0);
        let mut out = String::new();
        for r in rows {
            let mut line = String::new();
            for c in minc..=maxc {
                match self.boxes.iter().find(|b| b.row == r && b.col == c) {
                    Some(b) => line.push_str(&format!("{:>4}", b.label)),
                    None => line.push_str("  "),
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// The shift of a box's row under `p`: `p_i` on row `r_i`, `−p_i` on
    /// row `−r_i`, and 0 on skew rows.
    pub fn row_shift(&self, row: i32, p: &[Rational]) -> Rational {
        match self.rows.iter().position(|&r| r == row.abs()) {
            Some(i) if self.kind == ClassicalType::Sl || row > 0 => p[i].clone(),
            Some(i) => -p[i].clone(),
            None => Rational::zero(),
        }
    }

    /// The shifted pyramid `π(p)`: column of every box (in box order).
    pub fn shift(&self, p: &[Rational]) -> ShiftedPyramid {
        let cols = self.boxes.iter().map(|b| qi(b.col as i64) + self.row_shift(b.row, p)).collect();
        ShiftedPyramid { boxes: self.boxes.clone(), cols }
    }
}

/// Parses a sum of signed matrix units such as `e_{2,1}-2e_{-1,0}` into
/// sorted entries `(i, j, coefficient)`.
pub fn parse_matrix_units(s: &str) -> Result<Vec<(i32, i32, i64)>, PyramidError> {
    let bad = || PyramidError::InvalidPartition(format!("cannot parse matrix {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (sign, r) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let e_pos = r.find("e_{").ok_or_else(bad)?;
        let mag: i64 = if e_pos == 0 { 1 } else { r[..e_pos].parse().map_err(|_| bad())? };
        let close = r.find('}').ok_or_else(bad)?;
        let inner = &r[e_pos + 3..close];
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        out.push((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?, sign * mag));
        rest = &r[close + 1..];
    }
    out.sort_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
    Ok(out)
}

/// A pyramid whose rows have been slid horizontally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedPyramid {
    pub boxes: Vec<PyramidBox>,
    #[serde(serialize_with = "crate::cli::ser_q_vec")]
    pub cols: Vec<Rational>,
}

impl ShiftedPyramid {
    pub fn col(&self, label: i32) -> &Rational {
        &self.cols[self.boxes.iter().position(|b| b.label == label).unwrap()]
    }
}

/// Matrix multiplication of small dense integer matrices.
fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let x = a[i][k];
            if x != 0 {
                for j in 0..m {
                    out[i][j] += x * bk[j];
                }
            }
        }
    }
    out
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(e: &[Vec<i64>]) -> Vec<usize> {
    let n = e.len();
    let mut ranks = vec![n];
    let mut pw = e.to_vec();
    while *ranks.last().unwrap() > 0 && ranks.len() <= n + 1 {
        ranks.push(int_rank(&pw));
        pw = mat_mul(&pw, e);
    }
    // blocks of size >= k: r_{k-1} - r_k
    let ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..ge.len() {
        let exactly = ge[k] - ge.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, exactly));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// A root of `Φ_e⁺` as a functional on `p`, with its `d`-value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalRoot {
    pub name: String,
    /// Coefficients of `ε_1,…,ε_m`.
    pub functional: Vec<i64>,
    pub d: i64,
}

/// A signed permutation of `ε_1,…,ε_m`: `ε_k ↦ sign·ε_{|image|-1}`, stored
/// as `±(index+1)`.
pub type SignedPerm = Vec<i32>;

/// Everything the pyramid determines about one classical nilpotent.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalNilpotent {
    pub kind: ClassicalType,
    pub partition: Partition,
    pub pyramid: Pyramid,
    /// `e` as labelled entries.
    pub e: Vec<(i32, i32, i64)>,
    pub h: Vec<i64>,
    pub lambda_bar: Vec<usize>,
    /// Multiplicity of each value among `λ̄`.
    pub lambda_bar_multiplicity: BTreeMap<usize, usize>,
    pub roots: Vec<ClassicalRoot>,
    /// The polytope in integer coordinates `y` (see [`Self::coords_to_p`]).
    pub polytope: GoodGradingPolytope,
    /// `p = P y`; the identity for `sp`/`so`, differences for `sl`.
    #[serde(skip)]
    pub coords_to_p: QMatrix,
    #[serde(skip)]
    pub p_to_coords: QMatrix,
    /// Generators of `W_e` as signed permutations of the `ε_i`.
    pub we_generators: Vec<SignedPerm>,
}

fn name_of(f: &[i64]) -> String {
    let mut s = String::new();
    for (k, &c) in f.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
        s.push_str(&format!("{sign}{mag}ε{}", k + 1));
    }
    s
}

impl ClassicalNilpotent {
    pub fn new(kind: ClassicalType, partition: &Partition) -> Result<Self, PyramidError> {
        let pyramid = build_pyramid(kind, partition)?;
        let m = pyramid.m();
        let lb = pyramid.lambda_bar.clone();
        let mut lbm: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in &lb {
            *lbm.entry(x).or_insert(0) += 1;
        }
        let skew = !pyramid.skew_rows.is_empty();
        let odd_mult_parts: Vec<usize> =
            partition.distinct().into_iter().filter(|(_, k)| k % 2 == 1).map(|(a, _)| a).collect();
        let diff = |a: usize, b: usize| (a as i64 - b as i64).abs();
        let mut roots = Vec::new();
        let unit = |k: usize, c: i64| {
            let mut v = vec![0i64; m];
            v[k] = c;
            v
        };
        for i in 0..m {
            for j in i + 1..m {
                let d = 1 + diff(lb[i], lb[j]);
                let mut minus = unit(i, 1);
                minus[j] = -1;
                roots.push(ClassicalRoot { name: name_of(&minus), functional: minus, d });
                if kind != ClassicalType::Sl {
                    let mut plus = unit(i, 1);
                    plus[j] = 1;
                    roots.push(ClassicalRoot { name: name_of(&plus), functional: plus, d });
                }
            }
        }
        if kind != ClassicalType::Sl {
            for k in 0..m {
                let long = match kind {
                    ClassicalType::Sp => Some(if lb[k] % 2 == 1 { 1 } else { 3 }),
                    _ if lb[k] == 1 => None,
                    _ => Some(if lb[k] % 2 == 0 { 1 } else { 3 }),
                };
                if let Some(d) = long {
                    let f = unit(k, 2);
                    roots.push(ClassicalRoot { name: name_of(&f), functional: f, d });
                }
                if skew {
                    let d = 1 + odd_mult_parts.iter().map(|&t| diff(lb[k], t)).min().unwrap();
                    let f = unit(k, 1);
                    roots.push(ClassicalRoot { name: name_of(&f), functional: f, d });
                }
            }
        }
        // Coordinates.
        let (coords_to_p, p_to_coords) = if kind == ClassicalType::Sl {
            sl_coordinates(&lb)?
        } else {
            (QMatrix::identity(m), QMatrix::identity(m))
        };
        let dim = coords_to_p.cols();
        let functionals: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| {
                let f = QVector::from_i64(&r.functional);
                (0..dim)
                    .map(|c| {
                        let v = (0..m).fold(Rational::zero(), |acc, k| acc + &f.0[k] * coords_to_p.get(k, c));
                        to_i64(&v).expect("integral functional")
                    })
                    .collect()
            })
            .collect();
        let bounds = roots.iter().map(|r| qi(r.d)).collect();
        let polytope = GoodGradingPolytope::new(dim, functionals, bounds)?;
        // W_e generators.
        let mut gens: Vec<SignedPerm> = Vec::new();
        let id: SignedPerm = (1..=m as i32).collect();
        for k in 0..m.saturating_sub(1) {
            if lb[k] == lb[k + 1] {
                let mut g = id.clone();
                g.swap(k, k + 1);
                gens.push(g);
            }
        }
        if kind != ClassicalType::Sl {
            let restricted = kind == ClassicalType::So && !skew;
            let mut odd_idx = Vec::new();
            for k in 0..m {
                if restricted && lb[k] % 2 == 1 {
                    odd_idx.push(k);
                } else {
                    let mut g = id.clone();
                    g[k] = -g[k];
                    gens.push(g);
                }
            }
            for w in odd_idx.windows(2) {
                let mut g = id.clone();
                g[w[0]] = -g[w[0]];
                g[w[1]] = -g[w[1]];
                gens.push(g);
            }
        }
        Ok(ClassicalNilpotent {
            kind,
            partition: partition.clone(),
            e: pyramid.e_entries(),
            h: pyramid.h_diagonal(),
            pyramid,
            lambda_bar: lb,
            lambda_bar_multiplicity: lbm,
            roots,
            polytope,
            coords_to_p,
            p_to_coords,
            we_generators: gens,
        })
    }

    /// Number of coordinates `m` of a point `p`.
    pub fn m(&self) -> usize {
        self.pyramid.m()
    }

    /// Cartan type and rank of the ambient algebra.
    pub fn cartan_type(&self) -> (CartanType, usize) {
        let n = self.pyramid.size();
        match self.kind {
            ClassicalType::Sl => (CartanType::A, n - 1),
            ClassicalType::Sp => (CartanType::C, n / 2),
            ClassicalType::So if n % 2 == 1 => (CartanType::B, n / 2),
            ClassicalType::So => (CartanType::D, n / 2),
        }
    }

    /// Converts `p = (p_1,…,p_m)` to polytope coordinates.
    pub fn to_coords(&self, p: &[Rational]) -> Result<Vec<Rational>, PyramidError> {
        if p.len() != self.m() {
            return Err(PyramidError::WrongDimension { expected: self.m(), got: p.len() });
        }
        if self.kind == ClassicalType::Sl {
            let s = p.iter().zip(&self.lambda_bar).fold(Rational::zero(), |acc, (x, &l)| acc + x * qi(l as i64));
            if !s.is_zero() {
                return Err(PyramidError::NotOnHyperplane);
            }
        }
        Ok(self.p_to_coords.mul_vec(&QVector::new(p.to_vec()))?.0)
    }

    /// Converts polytope coordinates back to `p`.
    pub fn from_coords(&self, y: &[Rational]) -> Vec<Rational> {
        self.coords_to_p.mul_vec(&QVector::new(y.to_vec())).expect("dimensions match").0
    }

    pub fn contains(&self, p: &[Rational]) -> Result<bool, PyramidError> {
        Ok(self.polytope.contains(&self.to_coords(p)?))
    }

    /// `W_e` generators as integer matrices on polytope coordinates.
    pub fn we_coordinate_generators(&self) -> Vec<Vec<Vec<i64>>> {
        self.we_generators
            .iter()
            .map(|g| {
                let t = signed_perm_matrix(g);
                let m = self.p_to_coords.mul(&t).and_then(|x| x.mul(&self.coords_to_p)).expect("dimensions");
                (0..m.rows())
                    .map(|r| (0..m.cols()).map(|c| to_i64(m.get(r, c)).expect("integral action")).collect())
                    .collect()
            })
            .collect()
    }

    /// All elements of `W_e`.
    pub fn we_elements(&self) -> Vec<SignedPerm> {
        signed_perm_closure(&self.we_generators, self.m())
    }

    /// `|Z_e| = |W_e| / |W_e^∘|`, computed as the stabiliser of the positive
    /// roots of `Φ_e^∘ = {α : d(α) = 1}`.
    pub fn component_group_order(&self) -> (usize, usize, usize) {
        let circ: HashSet<Vec<i64>> = self.roots.iter().filter(|r| r.d == 1).map(|r| r.functional.clone()).collect();
        let all = self.we_elements();
        let z = all.iter().filter(|w| circ.iter().all(|f| circ.contains(&apply_signed(w, f)))).count();
        let refl: Vec<SignedPerm> = circ.iter().map(|f| reflection_signed(f)).collect();
        let circ_order = signed_perm_closure(&refl, self.m()).len();
        (all.len(), circ_order, z)
    }

    /// Characteristic of `Γ(p)` by sorting the columns of `π(p)`.
    pub fn characteristic(&self, p: &[Rational]) -> Result<Characteristic, PyramidError> {
        if !self.contains(p)? {
            return Err(PyramidError::OutsidePolytope);
        }
        Ok(self.characteristic_unchecked(p))
    }

    /// Characteristic without the membership check.
    pub fn characteristic_unchecked(&self, p: &[Rational]) -> Characteristic {
        let shifted = self.pyramid.shift(p);
        let two = qi(2);
        match self.kind {
            ClassicalType::Sl => {
                let mut v = shifted.cols.clone();
                v.sort_by(|a, b| b.cmp(a));
                Characteristic(v.windows(2).map(|w| &w[0] - &w[1]).collect())
            }
            _ => {
                let pos: Vec<Rational> =
                    shifted.boxes.iter().zip(&shifted.cols).filter(|(b, _)| b.label > 0).map(|(_, c)| c.clone()).collect();
                let n = pos.len();
                let negatives = pos.iter().filter(|c| c.is_negative()).count();
                let mut v: Vec<Rational> = pos.iter().map(|c| c.abs()).collect();
                v.sort_by(|a, b| b.cmp(a));
                let even_so = self.kind == ClassicalType::So && self.pyramid.size() % 2 == 0;
                if even_so && negatives % 2 == 1 && n > 0 && !v[n - 1].is_zero() {
                    v[n - 1] = -v[n - 1].clone();
                }
                let mut c: Vec<Rational> = v.windows(2).map(|w| &w[0] - &w[1]).collect();
                if n > 0 {
                    c.push(match self.kind {
                        ClassicalType::Sp => &two * &v[n - 1],
                        _ if even_so => {
                            if n >= 2 {
                                &v[n - 2] + &v[n - 1]
                            } else {
                                &two * &v[0]
                            }
                        }
                        _ => v[n - 1].clone(),
                    });
                }
                Characteristic(c)
            }
        }
    }

    /// The nilpotent of `sl_n` with this partition as a principal-in-Levi
    /// datum for the general machinery: `J` is a union of consecutive node
    /// blocks of sizes `λ_i − 1`.
    pub fn type_a_datum(&self) -> Option<NilpotentDatum> {
        if self.kind != ClassicalType::Sl {
            return None;
        }
        let n = self.pyramid.size();
        let mut j = Vec::new();
        let mut start = 0;
        for &part in &self.partition.0 {
            j.extend(start..start + part - 1);
            start += part;
        }
        NilpotentDatum::principal(n - 1, &j).ok()
    }
}

/// `p = P y` and `y = Q p` for `sl`: `y_k = p_k − p_{k+1}`, and `p` is
/// recovered using `Σ λ_i p_i = 0`.
fn sl_coordinates(lb: &[usize]) -> Result<(QMatrix, QMatrix), PyramidError> {
    let m = lb.len();
    if m <= 1 {
        return Ok((QMatrix::zeros(m, 0), QMatrix::zeros(0, m)));
    }
    let n: i64 = lb.iter().map(|&x| x as i64).sum();
    let mut qm = QMatrix::zeros(m - 1, m);
    for k in 0..m - 1 {
        qm.set(k, k, qi(1));
        qm.set(k, k + 1, qi(-1));
    }
    // p_i = p_m + Σ_{k>=i} y_k, p_m = -(1/n) Σ_i λ_i Σ_{k>=i} y_k.
    let mut pm = QMatrix::zeros(m, m - 1);
    let mut last = vec![Rational::zero(); m - 1];
    for (i, &l) in lb.iter().enumerate() {
        for (k, x) in last.iter_mut().enumerate() {
            if k >= i {
                *x -= q(l as i64, n);
            }
        }
    }
    for i in 0..m {
        for k in 0..m - 1 {
            let v = if k >= i { qi(1) } else { Rational::zero() } + &last[k];
            pm.set(i, k, v);
        }
    }
    Ok((pm, qm))
}

fn signed_perm_matrix(g: &[i32]) -> QMatrix {
    let m = g.len();
    let mut t = QMatrix::zeros(m, m);
    for (k, &img) in g.iter().enumerate() {
        t.set(img.unsigned_abs() as usize - 1, k, qi(img.signum() as i64));
    }
    t
}

fn apply_signed(g: &[i32], f: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; f.len()];
    for (k, &img) in g.iter().enumerate() {
        out[img.unsigned_abs() as usize - 1] += img.signum() as i64 * f[k];
    }
    out
}

fn compose_signed(a: &[i32], b: &[i32]) -> SignedPerm {
    b.iter().map(|&x| x.signum() * a[x.unsigned_abs() as usize - 1]).collect()
}

/// Reflection in a root of the form `ε_i ± ε_j` (equal weights), `2ε_k` or
/// `ε_k`, as a signed permutation.
fn reflection_signed(f: &[i64]) -> SignedPerm {
    let mut g: SignedPerm = (1..=f.len() as i32).collect();
    let nz: Vec<usize> = (0..f.len()).filter(|&k| f[k] != 0).collect();
    match nz.as_slice() {
        [k] => g[*k] = -g[*k],
        [i, j] => {
            let s = if f[*i] * f[*j] > 0 { -1 } else { 1 };
            g[*i] = s * (*j as i32 + 1);
            g[*j] = s * (*i as i32 + 1);
        }
        _ => {}
    }
    g
}

fn signed_perm_closure(gens: &[SignedPerm], m: usize) -> Vec<SignedPerm> {
    let id: SignedPerm = (1..=m as i32).collect();
    let mut seen: HashSet<SignedPerm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose_signed(s, &g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    let mut v: Vec<SignedPerm> = seen.into_iter().collect();
    v.sort();
    v
}

/// A basis of the classical Lie algebra: each element as sparse matrix
/// entries (by label), with the labels whose columns give its degree.
fn lie_basis(pyr: &Pyramid) -> Vec<(Vec<(i32, i32, i64)>, Option<(i32, i32)>)> {
    let labels: Vec<i32> = pyr.boxes.iter().map(|b| b.label).collect();
    let mut out = Vec::new();
    match pyr.kind {
        ClassicalType::Sl => {
            for &i in &labels {
                for &j in &labels {
                    if i != j {
                        out.push((vec![(i, j, 1)], Some((i, j))));
                    }
                }
            }
            for w in labels.windows(2) {
                out.push((vec![(w[0], w[0], 1), (w[1], w[1], -1)], None));
            }
        }
        kind => {
            let n = labels.iter().filter(|&&l| l > 0).count() as i32;
            let sp = kind == ClassicalType::Sp;
            for i in 1..=n {
                for j in 1..=n {
                    let el = vec![(i, j, 1), (-j, -i, -1)];
                    out.push((el, if i == j { None } else { Some((i, j)) }));
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    if sp {
                        out.push((vec![(i, -j, 1), (j, -i, 1)], Some((i, -j))));
                        out.push((vec![(-i, j, 1), (-j, i, 1)], Some((-i, j))));
                    } else {
                        out.push((vec![(i, -j, 1), (j, -i, -1)], Some((i, -j))));
                        out.push((vec![(-j, i, 1), (-i, j, -1)], Some((-j, i))));
                    }
                }
            }
            if sp {
                for k in 1..=n {
                    out.push((vec![(k, -k, 1)], Some((k, -k))));
                    out.push((vec![(-k, k, 1)], Some((-k, k))));
                }
            } else if labels.contains(&0) {
                for k in 1..=n {
                    out.push((vec![(k, 0, 2), (0, -k, -1)], Some((k, 0))));
                    out.push((vec![(0, k, 1), (-k, 0, -2)], Some((0, k))));
                }
            }
        }
    }
    out
}

/// Direct good-grading test for `Γ(p)`: the classical Lie algebra is graded
/// by `deg e_{i,j} = col(i) − col(j)` on `π(p)` and the ranks of `ad e`
/// between graded pieces are computed exactly in matrix coordinates.
pub fn classical_oracle(cn: &ClassicalNilpotent, p: &[Rational]) -> Result<GoodnessReport, PyramidError> {
    if p.len() != cn.m() {
        return Err(PyramidError::WrongDimension { expected: cn.m(), got: p.len() });
    }
    let pyr = &cn.pyramid;
    let shifted = pyr.shift(p);
    let n = pyr.size();
    let e = pyr.e_matrix();
    let basis = lie_basis(pyr);
    let mut degrees = Vec::with_capacity(basis.len());
    let mut images = Vec::with_capacity(basis.len());
    for (el, key) in &basis {
        degrees.push(match key {
            Some((i, j)) => shifted.col(*i) - shifted.col(*j),
            None => Rational::zero(),
        });
        let mut x = vec![vec![0i64; n]; n];
        for &(i, j, c) in el {
            x[pyr.index(i)][pyr.index(j)] += c;
        }
        let ex = mat_mul(&e, &x);
        let xe = mat_mul(&x, &e);
        let mut img = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let v = ex[r][c] - xe[r][c];
                if v != 0 {
                    img.push((r * n + c, v));
                }
            }
        }
        images.push(img);
    }
    Ok(graded_ad_ranks(&degrees, &images))
}

/// Integral good gradings for a classical nilpotent.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalAnalysis {
    pub nilpotent: ClassicalNilpotent,
    /// Integral points as `p = (p_1,…,p_m)`.
    #[serde(serialize_with = "crate::cli::ser_q_vec_vec")]
    pub integral_points: Vec<Vec<Rational>>,
    pub characteristics: Vec<Characteristic>,
    /// `W_e`-classes (indices into `integral_points`).
    pub classes: Vec<OrbitClass>,
    pub graph: AdjacencyGraph,
    pub we_order: usize,
    pub circ_weyl_order: usize,
    pub z_order: usize,
}

impl ClassicalAnalysis {
    pub fn compute(kind: ClassicalType, partition: &Partition, budget: Budget) -> Result<Self, PyramidError> {
        let cn = ClassicalNilpotent::new(kind, partition)?;
        let ys = cn.polytope.integral_points(budget)?;
        let gens = cn.we_coordinate_generators();
        let coord_classes = we_orbits(&ys, &gens);
        let graph = AdjacencyGraph::build(&ys, &coord_classes, &cn.polytope.functionals, |y| {
            cn.characteristic_unchecked(&cn.from_coords(y))
        });
        let integral_points: Vec<Vec<Rational>> = ys.iter().map(|y| cn.from_coords(y)).collect();
        let characteristics = integral_points.iter().map(|p| cn.characteristic_unchecked(p)).collect();
        let classes = coord_classes
            .into_iter()
            .map(|c| OrbitClass { representative: cn.from_coords(&c.representative), members: c.members })
            .collect();
        let mut graph = graph;
        for node in &mut graph.nodes {
            node.representative = cn.from_coords(&node.representative);
        }
        let (we_order, circ_weyl_order, z_order) = cn.component_group_order();
        Ok(ClassicalAnalysis {
            nilpotent: cn,
            integral_points,
            characteristics,
            classes,
            graph,
            we_order,
            circ_weyl_order,
            z_order,
        })
    }
}

/// Expected `|Z_e|` for a classical partition: a power of two determined by
/// the parts.
pub fn expected_component_group_order(kind: ClassicalType, partition: &Partition) -> usize {
    let d = partition.distinct();
    let k = match kind {
        ClassicalType::Sl => 0,
        ClassicalType::Sp => d.iter().filter(|(a, m)| a % 2 == 0 && m % 2 == 0).count(),
        ClassicalType::So => {
            if d.iter().any(|(_, m)| m % 2 == 1) {
                d.iter().filter(|(a, m)| a % 2 == 1 && m % 2 == 0).count()
            } else {
                d.iter().filter(|(a, _)| a % 2 == 1).count().saturating_sub(1)
            }
        }
    };
    1 << k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn sl_332_pyramid_and_e() {
        let pyr = build_pyramid(ClassicalType::Sl, &part("3,3,2")).unwrap();
        assert_eq!(pyr.rows, vec![1, 3, 5]);
        assert_eq!(pyr.format_e(), "e_{8,7}+e_{6,5}+e_{5,4}+e_{3,2}+e_{2,1}");
    }

    #[test]
    fn sp_4211_e() {
        let pyr = build_pyramid(ClassicalType::Sp, &part("4,2,1,1")).unwrap();
        assert_eq!(pyr.format_e(), "e_{3,-3}+e_{2,1}+e_{1,-1}-e_{-1,-2}");
    }

    #[test]
    fn so_531_e() {
        let pyr = build_pyramid(ClassicalType::So, &part("5,3,1")).unwrap();
        let want = parse_matrix_units("e_{4,3}-e_{4,-3}+e_{3,-4}-e_{-3,-4}+e_{2,1}+2e_{1,0}-e_{0,-1}-e_{-1,-2}").unwrap();
        assert_eq!(pyr.e_entries(), want);
    }

    #[test]
    fn jordan_types() {
        for (kind, s) in [(ClassicalType::So, "7,7,7,3"), (ClassicalType::So, "6,6,5"), (ClassicalType::Sp, "4,3,3,2,2")] {
            let pyr = build_pyramid(kind, &part(s)).unwrap();
            assert_eq!(jordan_type(&pyr.e_matrix()), part(s).0, "{kind} {s}");
        }
    }

    #[test]
    fn invalid_partitions() {
        assert!(build_pyramid(ClassicalType::Sp, &part("3,1")).is_err());
        assert!(build_pyramid(ClassicalType::So, &part("2,1")).is_err());
    }

    #[test]
    fn partitions_of_six() {
        assert_eq!(Partition::all(6).len(), 11);
    }
}
