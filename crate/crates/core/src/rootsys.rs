//! Irreducible root systems of types A–G.
//!
//! Roots are integer vectors in simple-root coordinates with Bourbaki node
//! numbering. The W-invariant inner product is the Gram matrix obtained from
//! the smallest integral symmetrization of the Cartan matrix, so every
//! inner product between roots is an integer.
//!
//! Besides the root data the module builds Chevalley structure constants
//! (signs fixed by extraspecial pairs) and the graded rank computation used
//! to test the good-grading condition directly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{int_rank, qi, QVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("invalid Cartan type {kind}{rank}")]
    InvalidType { kind: String, rank: usize },
    #[error("unsupported nilpotent representative: {0}")]
    Unsupported(String),
}

/// Cartan–Killing type letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(RootSystemError::InvalidType { kind: other.to_string(), rank: 0 }),
        }
    }
}

/// Parses labels such as `"E7"`, `"g2"` or `"A3"` into a type and rank.
pub fn parse_type(s: &str) -> Result<(CartanType, usize), RootSystemError> {
    let s = s.trim();
    let bad = || RootSystemError::InvalidType { kind: s.to_string(), rank: 0 };
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(bad)?;
    let kind: CartanType = letter.to_string().parse().map_err(|_| bad())?;
    let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
    Ok((kind, rank))
}

/// A Weyl group element, stored as the permutation it induces on the
/// indexed root set together with a word in the simple reflections.
///
/// `word` lists reflections in the order they are applied, i.e. the element
/// is `s_{word[k-1]} ⋯ s_{word[0]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub perm: Vec<u32>,
}

impl WeylElement {
    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Image of the root with index `r`.
    pub fn apply(&self, r: usize) -> usize {
        self.perm[r] as usize
    }
}

/// A finite crystallographic root system with Bourbaki numbering.
#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: CartanType,
    rank: usize,
    gram: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    npos: usize,
    index: HashMap<Vec<i64>, usize>,
    refl: Vec<Vec<u32>>,
    highest: usize,
}

fn gram_matrix(kind: CartanType, n: usize) -> Result<Vec<Vec<i64>>, RootSystemError> {
    let invalid = || RootSystemError::InvalidType { kind: kind.to_string(), rank: n };
    let valid = match kind {
        CartanType::A => n >= 1,
        CartanType::B | CartanType::C => n >= 2,
        CartanType::D => n >= 3,
        CartanType::E => (6..=8).contains(&n),
        CartanType::F => n == 4,
        CartanType::G => n == 2,
    };
    if !valid || n > 16 {
        return Err(invalid());
    }
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match kind {
        CartanType::A => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n.saturating_sub(1) {
                link(&mut g, i, i + 1, -1);
            }
        }
        CartanType::B => {
            for i in 0..n {
                g[i][i] = 2;
            }
            g[n - 1][n - 1] = 1;
            for i in 0..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        CartanType::C => {
            for i in 0..n {
                g[i][i] = 2;
            }
            g[n - 1][n - 1] = 4;
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 2, n - 1, -2);
        }
        CartanType::D => {
            for i in 0..n {
                g[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -1);
            }
            link(&mut g, n - 3, n - 1, -1);
        }
        CartanType::E => {
            for i in 0..n {
                g[i][i] = 2;
            }
            // Chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        CartanType::F => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        CartanType::G => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
    }
    Ok(g)
}

impl RootSystem {
    /// Builds the root system of the given type and rank.
    pub fn build(kind: CartanType, rank: usize) -> Result<Self, RootSystemError> {
        let gram = gram_matrix(kind, rank)?;
        let n = rank;
        let cartan: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect()).collect();

        // Positive roots by increasing height using root strings.
        let mut pos: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
        let mut known: HashMap<Vec<i64>, usize> = pos.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let mut k = 0;
        while k < pos.len() {
            let beta = pos[k].clone();
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) {
                        known.insert(up.clone(), pos.len());
                        pos.push(up);
                    }
                }
            }
            k += 1;
        }
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<i64>>()));
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let refl: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .map(|r| {
                        let pairing: i64 = (0..n).map(|j| r[j] * cartan[j][i]).sum();
                        let mut img = r.clone();
                        img[i] -= pairing;
                        index[&img] as u32
                    })
                    .collect()
            })
            .collect();
        let highest = npos - 1;
        Ok(RootSystem { kind, rank, gram, cartan, roots, npos, index, refl, highest })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Label such as `"E7"`.
    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Cartan integers `⟨α_i, α_j^∨⟩ = 2(α_i, α_j)/(α_j, α_j)`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots: positive roots first (by height), then their negatives in
    /// the same order.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    /// Index of `-root(i)`.
    pub fn negate(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    pub fn index_of(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of the simple root `α_i` (0-based `i`).
    pub fn simple(&self, i: usize) -> usize {
        self.index[&unit(self.rank, i)]
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.roots[self.highest]
    }

    /// Coefficients `c_i` of the highest root.
    pub fn highest_coefficients(&self) -> Vec<i64> {
        self.roots[self.highest].clone()
    }

    /// Table `reflection_table()[i][r]` = index of `s_i(root r)`.
    pub fn reflection_table(&self) -> &[Vec<u32>] {
        &self.refl
    }

    /// `(a, b)` for coefficient vectors in simple-root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// `⟨a, b^∨⟩ = 2(a, b)/(b, b)`.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        2 * self.inner(a, b) / self.inner(b, b)
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.kind {
            CartanType::A => fact(n + 1),
            CartanType::B | CartanType::C => (1u128 << n) * fact(n),
            CartanType::D => (1u128 << (n - 1)) * fact(n),
            CartanType::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            CartanType::F => 1152,
            CartanType::G => 12,
        }
    }

    /// Applies a word of simple reflections (in application order) to a root index.
    pub fn apply_word(&self, word: &[usize], r: usize) -> usize {
        word.iter().fold(r, |acc, &k| self.refl[k][acc] as usize)
    }

    /// The Weyl element given by a word of simple reflections.
    pub fn element(&self, word: &[usize]) -> WeylElement {
        let perm = (0..self.roots.len()).map(|r| self.apply_word(word, r) as u32).collect();
        WeylElement { word: word.to_vec(), perm }
    }

    /// Moves a vector in simple-root coordinates to the closed dominant
    /// chamber by repeatedly reflecting in the leftmost simple root `α_i`
    /// with `(v, α_i) < 0`. Returns the dominant vector and the element `w`
    /// with `w·v = v_dom`.
    pub fn dominant_rep(&self, v: &QVector) -> (QVector, WeylElement) {
        let n = self.rank;
        let mut v = v.clone();
        let mut word = Vec::new();
        loop {
            let pairings: Vec<Rational> =
                (0..n).map(|i| (0..n).fold(Rational::zero(), |acc, j| acc + &v.0[j] * qi(self.gram[j][i]))).collect();
            let Some(i) = pairings.iter().position(|x| x.is_negative()) else {
                break;
            };
            let c = &pairings[i] * qi(2) / qi(self.gram[i][i]);
            v.0[i] = &v.0[i] - c;
            word.push(i);
        }
        let w = self.element(&word);
        (v, w)
    }

    /// Dominant representative of a grading given by its values on the simple
    /// roots (`labels[i] = α_i(c)`), reflecting at the leftmost negative label.
    /// Returns the dominant labels and the word used.
    pub fn dominant_labels(&self, labels: &[Rational]) -> (Vec<Rational>, Vec<usize>) {
        let n = self.rank;
        let mut c = labels.to_vec();
        let mut word = Vec::new();
        while let Some(k) = c.iter().position(|x| x.is_negative()) {
            let ck = c[k].clone();
            for l in 0..n {
                if self.cartan[l][k] != 0 {
                    c[l] = &c[l] - qi(self.cartan[l][k]) * &ck;
                }
            }
            word.push(k);
        }
        (c, word)
    }

    /// Simple-root coordinates of the coroot `β^∨` in the basis of simple
    /// coroots: `β^∨ = Σ_j β_j (α_j, α_j)/(β, β) α_j^∨`.
    pub fn coroot_coefficients(&self, beta: &[i64]) -> Vec<i64> {
        let bb = self.inner(beta, beta);
        (0..self.rank).map(|j| beta[j] * self.gram[j][j] / bb).collect()
    }

    /// Chevalley structure constants for this root system.
    pub fn chevalley(&self) -> ChevalleyBasisData {
        ChevalleyBasisData::new(self)
    }
}

/// Height of a root (or any vector) in simple-root coordinates.
pub fn height(alpha: &[i64]) -> i64 {
    alpha.iter().sum()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Structure constants `N_{α,β}` of a Chevalley basis, with
/// `[e_α, e_β] = N_{α,β} e_{α+β}`, `[e_α, e_{-α}] = h_α` and
/// `[h, e_β] = β(h) e_β`.
#[derive(Debug, Clone)]
pub struct ChevalleyBasisData {
    nroots: usize,
    n: Vec<i32>,
    sum: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl ChevalleyBasisData {
    fn new(rs: &RootSystem) -> Self {
        let m = rs.num_roots();
        let npos = rs.num_positive();
        let mut sum = vec![NONE; m * m];
        for a in 0..m {
            for b in 0..m {
                let s: Vec<i64> = rs.root(a).iter().zip(rs.root(b)).map(|(x, y)| x + y).collect();
                if let Some(c) = rs.index_of(&s) {
                    sum[a * m + b] = c as u32;
                }
            }
        }
        let mut data = ChevalleyBasisData { nroots: m, n: vec![0; m * m], sum };
        let len = |r: usize| rs.inner(rs.root(r), rs.root(r));
        // p = largest integer with s - p r a root.
        let p_of = |r: usize, s: usize| {
            let mut p = 0;
            let mut cur: Vec<i64> = rs.root(s).to_vec();
            loop {
                for (c, x) in cur.iter_mut().zip(rs.root(r)) {
                    *c -= x;
                }
                if rs.index_of(&cur).is_some() {
                    p += 1;
                } else {
                    return p;
                }
            }
        };
        // Positive roots are sorted by height, so each xi only needs
        // constants attached to positive roots of smaller height.
        for xi in 0..npos {
            if height(rs.root(xi)) < 2 {
                continue;
            }
            let alpha1 = (0..rs.rank())
                .map(|i| rs.simple(i))
                .find(|&a| data.sum_of(xi, rs.negate(a)).is_some_and(|d| rs.is_positive(d)))
                .expect("non-simple positive root has a simple predecessor");
            let beta1 = data.sum_of(xi, rs.negate(alpha1)).unwrap();
            let n1 = (p_of(alpha1, beta1) + 1) as i32;
            data.set(alpha1, beta1, n1);
            data.set(beta1, alpha1, -n1);
            let xx = len(xi);
            for a in 0..npos {
                let Some(b) = data.sum_of(xi, rs.negate(a)) else { continue };
                if !rs.is_positive(b) || a == alpha1 || a == beta1 || a > b {
                    continue;
                }
                // Four-root relation for (a, b, -alpha1, -beta1).
                let mut acc = Rational::zero();
                if let Some(g) = data.sum_of(b, rs.negate(alpha1)) {
                    let t = qi(data.get(rs, b, rs.negate(alpha1)) as i64)
                        * qi(data.get(rs, a, rs.negate(beta1)) as i64)
                        / qi(len(g));
                    acc += t;
                }
                if let Some(g) = data.sum_of(a, rs.negate(alpha1)) {
                    let t = qi(data.get(rs, rs.negate(alpha1), a) as i64)
                        * qi(data.get(rs, b, rs.negate(beta1)) as i64)
                        / qi(len(g));
                    acc += t;
                }
                // N_{a,b} N_{-a1,-b1}/(xi,xi) + acc = 0 with N_{-a1,-b1} = -n1.
                let val = acc * qi(xx) / qi(n1 as i64);
                let v = crate::exact::to_i64(&val).expect("structure constant is an integer") as i32;
                data.set(a, b, v);
                data.set(b, a, -v);
            }
        }
        data
    }

    fn set(&mut self, a: usize, b: usize, v: i32) {
        self.n[a * self.nroots + b] = v;
    }

    fn sum_of(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sum[a * self.nroots + b];
        (s != NONE).then_some(s as usize)
    }

    /// `N_{r,s}` for arbitrary roots (0 when `r + s` is not a root).
    pub fn get(&self, rs: &RootSystem, r: usize, s: usize) -> i32 {
        let Some(sum) = self.sum_of(r, s) else { return 0 };
        let len = |x: usize| rs.inner(rs.root(x), rs.root(x));
        match (rs.is_positive(r), rs.is_positive(s)) {
            (true, true) => self.n[r * self.nroots + s],
            (false, false) => -self.get(rs, rs.negate(r), rs.negate(s)),
            (false, true) => -self.get(rs, s, r),
            (true, false) => {
                // r + s + t = 0 with t = -(r + s).
                let t = rs.negate(sum);
                if rs.is_positive(sum) {
                    // N_{r,s}/(t,t) = N_{s,t}/(r,r), with s,t negative.
                    let v = -self.get(rs, rs.negate(s), rs.negate(t)) as i64 * len(t) / len(r);
                    v as i32
                } else {
                    // N_{r,s}/(t,t) = N_{t,r}/(s,s), with t,r positive.
                    let v = self.get(rs, t, r) as i64 * len(t) / len(s);
                    v as i32
                }
            }
        }
    }

    /// Index of `r + s` when it is a root.
    pub fn root_sum(&self, r: usize, s: usize) -> Option<usize> {
        self.sum_of(r, s)
    }
}

/// A Lie algebra element or basis vector in the Chevalley basis:
/// indices `0..rank` are the simple coroots `h_i`, index `rank + r` is `e_r`.
#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    pub rs: RootSystem,
    pub constants: ChevalleyBasisData,
}

impl ChevalleyAlgebra {
    pub fn new(rs: &RootSystem) -> Self {
        ChevalleyAlgebra { rs: rs.clone(), constants: rs.chevalley() }
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.rs.num_roots()
    }

    /// `[x, y]` for basis vectors, as a sparse combination of basis vectors.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let rs = &self.rs;
        let n = rs.rank();
        match (x < n, y < n) {
            (true, true) => vec![],
            (true, false) => {
                let b = y - n;
                // [h_i, e_b] = <b, α_i^∨> e_b
                let v: i64 = (0..n).map(|j| rs.root(b)[j] * rs.cartan()[j][x]).sum();
                if v == 0 {
                    vec![]
                } else {
                    vec![(y, v)]
                }
            }
            (false, true) => self.bracket_basis(y, x).into_iter().map(|(k, v)| (k, -v)).collect(),
            (false, false) => {
                let (a, b) = (x - n, y - n);
                if rs.negate(a) == b {
                    rs.coroot_coefficients(rs.root(a))
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .collect()
                } else if let Some(s) = self.constants.root_sum(a, b) {
                    vec![(n + s, self.constants.get(rs, a, b) as i64)]
                } else {
                    vec![]
                }
            }
        }
    }

    /// `[x, y]` for sparse elements.
    pub fn bracket(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(i, a) in x {
            for &(j, b) in y {
                for (k, c) in self.bracket_basis(i, j) {
                    *acc.entry(k).or_insert(0) += a * b * c;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| *v != 0).collect()
    }

    /// Sparse element `Σ_{j∈J} e_{α_j}`: the principal nilpotent of the Levi
    /// subalgebra attached to `J`.
    pub fn principal_in_levi(&self, j: &[usize]) -> Vec<(usize, i64)> {
        j.iter().map(|&k| (self.rs.rank() + self.rs.simple(k), 1)).collect()
    }

    /// Runs the graded rank check for `ad e` where each root vector `e_β`
    /// has degree `degree(β)` and the Cartan subalgebra has degree 0.
    pub fn ad_rank_oracle(
        &self,
        e: &[(usize, i64)],
        degree: impl Fn(&[i64]) -> Rational,
    ) -> Result<GoodnessReport, RootSystemError> {
        let n = self.rs.rank();
        let degs: Vec<Rational> = (0..self.dim())
            .map(|k| if k < n { Rational::zero() } else { degree(self.rs.root(k - n)) })
            .collect();
        for &(k, _) in e {
            if k < n || degs[k] != qi(2) {
                return Err(RootSystemError::Unsupported("e must be a sum of root vectors of degree 2".into()));
            }
        }
        let images: Vec<Vec<(usize, i64)>> = (0..self.dim()).map(|k| self.bracket(e, &[(k, 1)])).collect();
        Ok(graded_ad_ranks(&degs, &images))
    }
}

/// Rank of `ad e : g_j → g_{j+2}` in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRank {
    #[serde(serialize_with = "crate::cli::ser_q")]
    pub degree: Rational,
    pub dim: usize,
    pub dim_target: usize,
    pub rank: usize,
}

/// Result of the direct good-grading test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodnessReport {
    pub degrees: Vec<DegreeRank>,
    /// `ad e` injective in every degree `j <= -1` and surjective in every degree `j >= -1`.
    pub good: bool,
    /// `dim g_e`.
    pub centralizer_dim: usize,
    /// `Σ_{-1 <= j < 1} dim g_j`.
    pub low_degree_dim: usize,
}

/// Exact ranks of a degree-2 map given per basis vector.
///
/// `degrees[k]` is the degree of basis vector `k` and `images[k]` the image
/// of that vector under `ad e`, as a sparse integer vector in any coordinate
/// system in which the ambient algebra embeds injectively.
pub fn graded_ad_ranks(degrees: &[Rational], images: &[Vec<(usize, i64)>]) -> GoodnessReport {
    let mut by_degree: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for (k, d) in degrees.iter().enumerate() {
        by_degree.entry(d.clone()).or_default().push(k);
    }
    let two = qi(2);
    let mut all: Vec<Rational> = by_degree.keys().cloned().collect();
    all.extend(by_degree.keys().map(|d| d - &two));
    all.sort();
    all.dedup();
    let minus_one = qi(-1);
    let mut out = Vec::new();
    let mut good = true;
    let mut centralizer_dim = 0;
    for d in all {
        let src = by_degree.get(&d).cloned().unwrap_or_default();
        let dim_target = by_degree.get(&(&d + &two)).map_or(0, Vec::len);
        let rank = sparse_rank(src.iter().map(|&k| &images[k]));
        if d <= minus_one && rank != src.len() {
            good = false;
        }
        if d >= minus_one && rank != dim_target {
            good = false;
        }
        centralizer_dim += src.len() - rank;
        out.push(DegreeRank { degree: d, dim: src.len(), dim_target, rank });
    }
    let low_degree_dim = by_degree.iter().filter(|(d, _)| **d >= minus_one && **d < qi(1)).map(|(_, v)| v.len()).sum();
    GoodnessReport { degrees: out, good, centralizer_dim, low_degree_dim }
}

fn sparse_rank<'a>(vectors: impl Iterator<Item = &'a Vec<(usize, i64)>>) -> usize {
    let vecs: Vec<&Vec<(usize, i64)>> = vectors.collect();
    let mut cols: Vec<usize> = vecs.iter().flat_map(|v| v.iter().map(|(k, _)| *k)).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.is_empty() {
        return 0;
    }
    let pos: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let rows: Vec<Vec<i64>> = vecs
        .iter()
        .map(|v| {
            let mut r = vec![0; cols.len()];
            for &(k, x) in v.iter() {
                r[pos[&k]] += x;
            }
            r
        })
        .collect();
    int_rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let cases = [
            (CartanType::A, 1, 2),
            (CartanType::A, 4, 20),
            (CartanType::B, 3, 18),
            (CartanType::C, 4, 32),
            (CartanType::D, 5, 40),
            (CartanType::E, 6, 72),
            (CartanType::E, 7, 126),
            (CartanType::E, 8, 240),
            (CartanType::F, 4, 48),
            (CartanType::G, 2, 12),
        ];
        for (k, n, count) in cases {
            assert_eq!(RootSystem::build(k, n).unwrap().num_roots(), count, "{k}{n}");
        }
    }

    #[test]
    fn highest_roots() {
        let g2 = RootSystem::build(CartanType::G, 2).unwrap();
        assert_eq!(g2.highest_root(), &[3, 2]);
        assert_eq!(height(g2.highest_root()), 5);
        let a2 = RootSystem::build(CartanType::A, 2).unwrap();
        assert_eq!(height(a2.highest_root()), 2);
        let e7 = RootSystem::build(CartanType::E, 7).unwrap();
        assert_eq!(e7.highest_root(), &[2, 2, 3, 4, 3, 2, 1]);
        let f4 = RootSystem::build(CartanType::F, 4).unwrap();
        assert_eq!(f4.highest_root(), &[2, 3, 4, 2]);
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::build(CartanType::E, 5).is_err());
        assert!(RootSystem::build(CartanType::G, 3).is_err());
        assert!(RootSystem::build(CartanType::B, 1).is_err());
        assert!(parse_type("X3").is_err());
        assert_eq!(parse_type("e7").unwrap(), (CartanType::E, 7));
    }

    #[test]
    fn dominant_rep_of_negative_simple_root() {
        let a1 = RootSystem::build(CartanType::A, 1).unwrap();
        let (v, w) = a1.dominant_rep(&QVector::from_i64(&[-1]));
        assert_eq!(v, QVector::from_i64(&[1]));
        assert_eq!(w.word, vec![0]);
        let (v, w) = a1.dominant_rep(&QVector::from_i64(&[1]));
        assert_eq!(v, QVector::from_i64(&[1]));
        assert!(w.is_identity());
    }

    fn jacobi_holds(rs: &RootSystem) {
        let alg = ChevalleyAlgebra::new(rs);
        let d = alg.dim();
        let add = |a: &mut BTreeMap<usize, i64>, v: Vec<(usize, i64)>| {
            for (k, x) in v {
                *a.entry(k).or_insert(0) += x;
            }
        };
        for x in 0..d {
            for y in 0..d {
                let xy = alg.bracket_basis(x, y);
                for z in 0..d {
                    let mut acc = BTreeMap::new();
                    add(&mut acc, alg.bracket(&xy, &[(z, 1)]));
                    let yz = alg.bracket_basis(y, z);
                    add(&mut acc, alg.bracket(&yz, &[(x, 1)]));
                    let zx = alg.bracket_basis(z, x);
                    add(&mut acc, alg.bracket(&zx, &[(y, 1)]));
                    assert!(acc.values().all(|v| *v == 0), "{}: Jacobi fails at {x},{y},{z}", rs.name());
                }
            }
        }
    }

    #[test]
    fn chevalley_constants_satisfy_jacobi() {
        for (k, n) in [
            (CartanType::A, 3),
            (CartanType::B, 3),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::G, 2),
            (CartanType::F, 4),
        ] {
            jacobi_holds(&RootSystem::build(k, n).unwrap());
        }
    }

    #[test]
    fn chevalley_magnitudes_are_string_lengths() {
        for (k, n) in [(CartanType::G, 2), (CartanType::F, 4), (CartanType::E, 6)] {
            let rs = RootSystem::build(k, n).unwrap();
            let c = rs.chevalley();
            for r in 0..rs.num_roots() {
                for s in 0..rs.num_roots() {
                    if c.root_sum(r, s).is_none() {
                        continue;
                    }
                    let mut p = 0;
                    let mut cur = rs.root(s).to_vec();
                    loop {
                        for (a, b) in cur.iter_mut().zip(rs.root(r)) {
                            *a -= b;
                        }
                        if rs.index_of(&cur).is_none() {
                            break;
                        }
                        p += 1;
                    }
                    assert_eq!(c.get(&rs, r, s).abs(), p + 1);
                    assert_eq!(c.get(&rs, r, s), -c.get(&rs, s, r));
                }
            }
        }
    }

    #[test]
    fn dynkin_grading_of_principal_in_levi_is_good() {
        let rs = RootSystem::build(CartanType::A, 2).unwrap();
        let alg = ChevalleyAlgebra::new(&rs);
        // Principal nilpotent: every simple root has degree 2.
        let e = alg.principal_in_levi(&[0, 1]);
        let rep = alg.ad_rank_oracle(&e, |b| qi(2 * height(b))).unwrap();
        assert!(rep.good);
        assert_eq!(rep.centralizer_dim, 2);
        assert_eq!(rep.centralizer_dim, rep.low_degree_dim);
    }
}
