//! Restricted root systems.
//!
//! For a subset `J` of the simple roots, every root `β = Σ b_k α_k` outside
//! the Levi subsystem `Φ_J` restricts to a nonzero element of `E^J`, the
//! orthogonal complement of `span(Δ_J)`. The restriction only depends on the
//! coefficients `b_i` for `i ∉ J`, so a restricted root is stored as that
//! integer vector (`β_I`). Points of `E^J` are written in *functional
//! coordinates*: a point `p` is the vector `(α_i(p))_{i∈I}`, and then
//! `β(p) = β_I · p`. The inner product on `E^J` in the basis `{α_i^J}` is the
//! Schur complement of the Gram matrix.
//!
//! The module enumerates bases (equivalently chambers) by wall-crossing,
//! computes the restricted Weyl group `W^J` as the stabiliser of `Δ_J`
//! (via a set orbit and Schreier generators), and lists the Levi-conjugacy
//! class `𝒦_J` of `J`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{dot, qi, solve_linear, QMatrix, QVector, Rational};
use crate::rootsys::RootSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RestrictError {
    #[error("enumeration budget exceeded while computing {what} (partial count {partial})")]
    BudgetExceeded { what: String, partial: u128 },
    #[error("point is not regular: it lies on the hyperplane of a restricted root")]
    NonRegular,
    #[error("invalid node subset: {0}")]
    InvalidSubset(String),
}

/// Explicit enumeration budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Maximum number of BFS states (orbit elements, chambers, group elements).
    pub states: usize,
}

impl Budget {
    /// The smaller of this budget and `states`.
    pub fn capped(self, states: usize) -> Budget {
        Budget { states: self.states.min(states) }
    }
}

/// States spent on the `W`-orbit of `Δ_J` before computing `W^J` from
/// chamber lifts instead. Both give the same group; the lifts are much
/// cheaper once the orbit is large.
pub const ORBIT_ATTEMPT_STATES: usize = 2_000_000;

impl Default for Budget {
    fn default() -> Self {
        Budget { states: 10_000_000 }
    }
}

const NONE: u16 = u16::MAX;

/// The restricted root system `Φ^J`.
#[derive(Debug, Clone)]
pub struct RestrictedRootSystem {
    rs: RootSystem,
    j: Vec<usize>,
    i: Vec<usize>,
    roots: Vec<Vec<i64>>,
    npos: usize,
    index: HashMap<Vec<i64>, usize>,
    fibers: Vec<Vec<usize>>,
    restriction: Vec<Option<usize>>,
    schur: QMatrix,
    diff: Vec<u16>,
}

/// A base of `Φ^J`, as indices into [`RestrictedRootSystem::roots`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RestrictedBase(pub Vec<usize>);

/// A chamber of the restricted arrangement: the set of standard-positive
/// restricted roots that stay positive on it, and its base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// Bit `k` is set iff standard-positive root `k` is positive on the chamber.
    pub signs: u128,
    pub base: RestrictedBase,
}

impl RestrictedRootSystem {
    /// Restriction of `rs` to the orthogonal complement of `span{α_j : j ∈ J}`
    /// (0-based node indices).
    pub fn new(rs: &RootSystem, j: &[usize]) -> Result<Self, RestrictError> {
        let n = rs.rank();
        let mut jset: Vec<usize> = j.to_vec();
        jset.sort_unstable();
        jset.dedup();
        if jset.iter().any(|&x| x >= n) {
            return Err(RestrictError::InvalidSubset(format!("{j:?} not within 0..{n}")));
        }
        let iset: Vec<usize> = (0..n).filter(|k| !jset.contains(k)).collect();
        let m = iset.len();

        let mut distinct: BTreeSet<Vec<i64>> = BTreeSet::new();
        for r in rs.roots() {
            let v: Vec<i64> = iset.iter().map(|&k| r[k]).collect();
            if v.iter().any(|&x| x != 0) {
                distinct.insert(v);
            }
        }
        let mut pos: Vec<Vec<i64>> = distinct.iter().filter(|v| v.iter().all(|&x| x >= 0)).cloned().collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<i64>>()));
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
        let mut fibers = vec![Vec::new(); roots.len()];
        let mut restriction = vec![None; rs.num_roots()];
        for (ri, r) in rs.roots().iter().enumerate() {
            let v: Vec<i64> = iset.iter().map(|&k| r[k]).collect();
            if let Some(&k) = index.get(&v) {
                fibers[k].push(ri);
                restriction[ri] = Some(k);
            }
        }

        // Schur complement S = G_II - G_IJ G_JJ^{-1} G_JI.
        let g = rs.gram();
        let sub = |rows: &[usize], cols: &[usize]| {
            let data: Vec<Vec<Rational>> = rows.iter().map(|&a| cols.iter().map(|&b| qi(g[a][b])).collect()).collect();
            if rows.is_empty() || cols.is_empty() {
                QMatrix::zeros(rows.len(), cols.len())
            } else {
                QMatrix::from_rows(&data).expect("rectangular")
            }
        };
        let gii = sub(&iset, &iset);
        let schur = if jset.is_empty() || m == 0 {
            gii
        } else {
            let gij = sub(&iset, &jset);
            let gjj_inv = sub(&jset, &jset).inverse().expect("Gram matrix of a subsystem is invertible");
            let corr = gij.mul(&gjj_inv).and_then(|x| x.mul(&gij.transpose())).expect("shapes agree");
            let mut s = QMatrix::zeros(m, m);
            for a in 0..m {
                for b in 0..m {
                    s.set(a, b, gii.get(a, b) - corr.get(a, b));
                }
            }
            s
        };

        let total = roots.len();
        let mut diff = vec![NONE; total * total];
        for a in 0..total {
            for b in 0..total {
                let d: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x - y).collect();
                if let Some(&k) = index.get(&d) {
                    diff[a * total + b] = k as u16;
                }
            }
        }
        Ok(RestrictedRootSystem { rs: rs.clone(), j: jset, i: iset, roots, npos, index, fibers, restriction, schur, diff })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// The subset `J` (sorted, 0-based).
    pub fn j(&self) -> &[usize] {
        &self.j
    }

    /// The complement `I` of `J` (sorted, 0-based); coordinates of `E^J`.
    pub fn i(&self) -> &[usize] {
        &self.i
    }

    /// Dimension of `E^J`.
    pub fn dim(&self) -> usize {
        self.i.len()
    }

    /// All restricted roots as `β_I` vectors: the standard-positive ones
    /// first (sorted by height), then their negatives in the same order.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn negate(&self, k: usize) -> usize {
        if k < self.npos {
            k + self.npos
        } else {
            k - self.npos
        }
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Roots of `Φ` restricting to restricted root `k`.
    pub fn fiber(&self, k: usize) -> &[usize] {
        &self.fibers[k]
    }

    /// Restricted root of the `Φ`-root with index `r`, or `None` for `r ∈ Φ_J`.
    pub fn restriction_of(&self, r: usize) -> Option<usize> {
        self.restriction[r]
    }

    /// Index of `a - b` when it is a restricted root.
    pub fn difference(&self, a: usize, b: usize) -> Option<usize> {
        let d = self.diff[a * self.roots.len() + b];
        (d != NONE).then_some(d as usize)
    }

    /// Gram matrix of `{α_i^J : i ∈ I}`.
    pub fn schur_gram(&self) -> &QMatrix {
        &self.schur
    }

    /// Inner product of two vectors of `E^J` given in the basis `{α_i^J}`.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let m = self.dim();
        let mut s = Rational::zero();
        for x in 0..m {
            if a[x] == 0 {
                continue;
            }
            for y in 0..m {
                if b[y] != 0 {
                    s += self.schur.get(x, y) * qi(a[x] * b[y]);
                }
            }
        }
        s
    }

    /// Value `β(p)` of restricted root `k` at a point in functional coordinates.
    pub fn eval(&self, k: usize, p: &[Rational]) -> Rational {
        self.roots[k].iter().zip(p).fold(Rational::zero(), |acc, (&b, x)| acc + qi(b) * x)
    }

    /// The standard base `{α_i^J : i ∈ I}`.
    pub fn standard_base(&self) -> RestrictedBase {
        RestrictedBase(
            (0..self.dim())
                .map(|i| {
                    let mut v = vec![0; self.dim()];
                    v[i] = 1;
                    self.index[&v]
                })
                .collect(),
        )
    }

    /// Restriction `θ^J` of the highest root.
    pub fn restricted_highest_root(&self) -> Vec<i64> {
        let c = self.rs.highest_coefficients();
        self.i.iter().map(|&k| c[k]).collect()
    }

    /// Indecomposable elements of a positive set (given as a membership mask
    /// over all restricted roots).
    fn indecomposables(&self, positive: &[bool]) -> Vec<usize> {
        let total = self.roots.len();
        (0..total)
            .filter(|&b| positive[b])
            .filter(|&b| {
                !(0..total).any(|g| positive[g] && self.difference(b, g).is_some_and(|d| positive[d]))
            })
            .collect()
    }

    /// Base of `Φ^J` determined by a regular point `γ` (functional
    /// coordinates): the indecomposable elements of `{β : β(γ) > 0}`.
    pub fn base_from_regular(&self, gamma: &[Rational]) -> Result<RestrictedBase, RestrictError> {
        let vals: Vec<Rational> = (0..self.roots.len()).map(|k| self.eval(k, gamma)).collect();
        if vals.iter().any(Zero::is_zero) {
            return Err(RestrictError::NonRegular);
        }
        let positive: Vec<bool> = vals.iter().map(Signed::is_positive).collect();
        let mut b = self.indecomposables(&positive);
        b.sort_unstable();
        Ok(RestrictedBase(b))
    }

    /// Expresses restricted root `k` in a base; returns the coefficient vector
    /// if it exists over ℚ.
    pub fn coordinates_in_base(&self, base: &RestrictedBase, k: usize) -> Option<Vec<Rational>> {
        let m = self.dim();
        if base.0.len() != m {
            return None;
        }
        let cols: Vec<Vec<Rational>> =
            (0..m).map(|row| base.0.iter().map(|&b| qi(self.roots[b][row])).collect()).collect();
        let a = QMatrix::from_rows(&cols).ok()?;
        solve_linear(&a, &QVector::from_i64(&self.roots[k])).ok().map(|v| v.0)
    }

    /// Whether `base` is a base: every restricted root is an all-nonnegative
    /// or all-nonpositive integer combination of it (checked exhaustively).
    pub fn is_base(&self, base: &RestrictedBase) -> bool {
        (0..self.roots.len()).all(|k| match self.coordinates_in_base(base, k) {
            None => false,
            Some(c) => {
                c.iter().all(|x| x.is_integer())
                    && (c.iter().all(|x| !x.is_negative()) || c.iter().all(|x| !x.is_positive()))
            }
        })
    }

    /// Restricted Cartan matrix `2(β_i, β_j)/(β_j, β_j)` of a base.
    pub fn restricted_cartan(&self, base: &RestrictedBase) -> QMatrix {
        let b = &base.0;
        let m = b.len();
        let mut out = QMatrix::zeros(m, m);
        for x in 0..m {
            for y in 0..m {
                let num = self.inner(&self.roots[b[x]], &self.roots[b[y]]) * qi(2);
                out.set(x, y, num / self.inner(&self.roots[b[y]], &self.roots[b[y]]));
            }
        }
        out
    }

    /// An interior point of the chamber of `base`: the point where every base
    /// element takes the value 1.
    pub fn interior_point(&self, base: &RestrictedBase) -> QVector {
        let rows: Vec<Vec<Rational>> = base.0.iter().map(|&b| self.roots[b].iter().map(|&x| qi(x)).collect()).collect();
        let a = QMatrix::from_rows(&rows).expect("rectangular");
        solve_linear(&a, &QVector::new(vec![Rational::one(); self.dim()])).expect("a base is a basis of E^J")
    }

    fn positive_mask(&self, signs: u128) -> Vec<bool> {
        let mut v = vec![false; self.roots.len()];
        for k in 0..self.npos {
            let on = signs >> k & 1 == 1;
            v[k] = on;
            v[k + self.npos] = !on;
        }
        v
    }

    /// Sign mask of a positive set given as a membership vector.
    pub fn signs_of(&self, positive: &[bool]) -> u128 {
        (0..self.npos).filter(|&k| positive[k]).fold(0u128, |m, k| m | 1u128 << k)
    }

    /// Enumerates all chambers of the restricted arrangement by wall-crossing
    /// from the standard chamber. Every chamber is simplicial with walls given
    /// by its base; crossing the wall of `β` flips the positive multiples of `β`.
    pub fn all_chambers(&self, budget: Budget) -> Result<Vec<Chamber>, RestrictError> {
        if self.npos > 128 {
            return Err(RestrictError::BudgetExceeded { what: "chambers (too many hyperplanes)".into(), partial: 0 });
        }
        let full: u128 = if self.npos == 128 { u128::MAX } else { (1u128 << self.npos) - 1 };
        // Positive multiples of each restricted root.
        let multiples: Vec<Vec<usize>> = (0..self.roots.len())
            .map(|b| {
                (0..self.roots.len())
                    .filter(|&c| {
                        let (vb, vc) = (&self.roots[b], &self.roots[c]);
                        let kb = vb.iter().position(|&x| x != 0).unwrap();
                        vc[kb] % vb[kb] == 0
                            && vc[kb] / vb[kb] > 0
                            && vb.iter().zip(vc).all(|(x, y)| y * vb[kb] == x * vc[kb])
                    })
                    .collect()
            })
            .collect();
        let start = Chamber { signs: full, base: self.standard_base() };
        let mut seen: HashMap<u128, usize> = HashMap::new();
        seen.insert(full, 0);
        let mut out = vec![start];
        let mut queue = VecDeque::from([0usize]);
        while let Some(ci) = queue.pop_front() {
            let c = out[ci].clone();
            for &b in &c.base.0 {
                let mut signs = c.signs;
                for &mlt in &multiples[b] {
                    let k = if mlt < self.npos { mlt } else { mlt - self.npos };
                    signs ^= 1u128 << k;
                }
                if seen.contains_key(&signs) {
                    continue;
                }
                if out.len() >= budget.states {
                    return Err(RestrictError::BudgetExceeded { what: "chambers".into(), partial: out.len() as u128 });
                }
                let mask = self.positive_mask(signs);
                let mut base = self.indecomposables(&mask);
                base.sort_unstable();
                seen.insert(signs, out.len());
                queue.push_back(out.len());
                out.push(Chamber { signs, base: RestrictedBase(base) });
            }
        }
        out.sort_by_key(|c| c.signs);
        Ok(out)
    }

    /// All bases of `Φ^J` (one per chamber).
    pub fn all_bases(&self, budget: Budget) -> Result<Vec<RestrictedBase>, RestrictError> {
        Ok(self.all_chambers(budget)?.into_iter().map(|c| c.base).collect())
    }

    /// Image of a chamber under a permutation of restricted roots.
    pub fn permute_chamber(&self, perm: &[u16], signs: u128) -> u128 {
        let mask = self.positive_mask(signs);
        let mut img = vec![false; self.roots.len()];
        for (k, &on) in mask.iter().enumerate() {
            if on {
                img[perm[k] as usize] = true;
            }
        }
        self.signs_of(&img)
    }

    /// Permutation of the restricted roots induced by an integer matrix `M`
    /// acting on `β_I` vectors, if `M` preserves `Φ^J`.
    pub fn permutation_of_matrix(&self, m: &[Vec<i64>]) -> Option<Vec<u16>> {
        self.roots
            .iter()
            .map(|v| {
                let img: Vec<i64> = m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
                self.index.get(&img).map(|&k| k as u16)
            })
            .collect()
    }

    /// Matrix `M` with `(wβ)_I = M β_I`, recovered from a permutation of `Φ^J`.
    pub fn matrix_of_permutation(&self, perm: &[u16]) -> Vec<Vec<i64>> {
        let base = self.standard_base();
        let m = self.dim();
        let mut out = vec![vec![0; m]; m];
        for (col, &b) in base.0.iter().enumerate() {
            let img = &self.roots[perm[b] as usize];
            for row in 0..m {
                out[row][col] = img[row];
            }
        }
        out
    }

    /// Restricted matrix of a Weyl group element given as a word, provided the
    /// element maps `Δ_J` into `±Δ_J`-span (columns are `(w α_i)_I`).
    fn restricted_matrix_of_word(&self, word: &[usize]) -> Vec<Vec<i64>> {
        let m = self.dim();
        let mut out = vec![vec![0; m]; m];
        for (col, &i) in self.i.iter().enumerate() {
            let img = self.rs.apply_word(word, self.rs.simple(i));
            let v = self.rs.root(img);
            for (row, &k) in self.i.iter().enumerate() {
                out[row][col] = v[k];
            }
        }
        out
    }

    /// Checks the closure property: for distinct `α, β ∈ Φ^J` with
    /// `(α, β) > 0`, the difference `α − β` is again in `Φ^J`.
    pub fn check_difference_closure(&self) -> bool {
        let t = self.roots.len();
        (0..t).all(|a| {
            (0..t).all(|b| a == b || !self.inner(&self.roots[a], &self.roots[b]).is_positive() || self.difference(a, b).is_some())
        })
    }

    /// Checks that proportional restricted roots are integer multiples of a
    /// common restricted root.
    pub fn check_proportional_multiples(&self) -> bool {
        let t = self.roots.len();
        for a in 0..t {
            for b in 0..t {
                let (va, vb) = (&self.roots[a], &self.roots[b]);
                let proportional = (0..va.len()).all(|x| (0..va.len()).all(|y| va[x] * vb[y] == va[y] * vb[x]));
                if !proportional {
                    continue;
                }
                let ga = va.iter().fold(0i64, |acc, &x| crate::exact::gcd_i64(acc, x));
                let d: Vec<i64> = va.iter().map(|x| x / ga).collect();
                let k = d.iter().position(|&x| x != 0).unwrap();
                let (ma, mb) = (va[k] / d[k], vb[k] / d[k]);
                let g = crate::exact::gcd_i64(ma, mb);
                let ok = (1..=g).filter(|t| g % t == 0).any(|t| {
                    let gamma: Vec<i64> = d.iter().map(|x| x * t).collect();
                    self.index.contains_key(&gamma)
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Checks that each restricted root `α` lifts to a root `α + α′` with
    /// `α′ ∈ span(Δ_J)` and `(α′, α_j) ≥ 0` for all `j ∈ J`, i.e. some fiber
    /// element is `J`-dominant.
    pub fn check_dominant_lift(&self) -> bool {
        (0..self.roots.len()).all(|k| {
            self.fibers[k].iter().any(|&r| {
                let root = self.rs.root(r);
                // (α′, α_j) = (β, α_j) - (β restricted, α_j) and the restricted part
                // is orthogonal to α_j, so it suffices to test (β, α_j) ≥ 0.
                self.j.iter().all(|&j| {
                    let mut e = vec![0; self.rs.rank()];
                    e[j] = 1;
                    self.rs.inner(root, &e) >= 0
                })
            })
        })
    }
}

/// The restricted Weyl group `W^J`: elements of `W` stabilising `Δ_J` as a
/// set, acting on `E^J`.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictedWeylGroup {
    /// Generators as integer matrices `M` with `(wβ)_I = M β_I`.
    pub generators: Vec<Vec<Vec<i64>>>,
    /// The same generators as permutations of the restricted roots.
    #[serde(skip)]
    pub generator_perms: Vec<Vec<u16>>,
    /// All elements as permutations of `Φ^J`, when enumerated.
    #[serde(skip)]
    pub elements: Option<Vec<Vec<u16>>>,
    pub order: u128,
    /// Size of the `W`-orbit of `Δ_J` (so `order = |W| / orbit_size`), when computed.
    pub orbit_size: Option<u128>,
    /// How the group was obtained.
    pub method: String,
}

impl RestrictedWeylGroup {
    /// Matrices of all enumerated elements.
    pub fn element_matrices(&self, rrs: &RestrictedRootSystem) -> Option<Vec<Vec<Vec<i64>>>> {
        self.elements.as_ref().map(|els| els.iter().map(|p| rrs.matrix_of_permutation(p)).collect())
    }
}

fn pack(mut set: Vec<u32>) -> u64 {
    set.sort_unstable();
    set.iter().fold(0u64, |acc, &r| acc << 8 | (r as u64 + 1))
}

fn unpack(mut key: u64) -> Vec<u32> {
    let mut out = Vec::new();
    while key != 0 {
        out.push((key & 0xff) as u32 - 1);
        key >>= 8;
    }
    out.reverse();
    out
}

/// Breadth-first orbit of the set `Δ_J` under the simple reflections, with
/// parent pointers for Schreier generators.
struct SetOrbit {
    states: Vec<u64>,
    parent: Vec<(u32, u8)>,
    index: HashMap<u64, u32>,
}

impl SetOrbit {
    fn new(rs: &RootSystem, j: &[usize], budget: Budget) -> Result<Self, RestrictError> {
        let start = pack(j.iter().map(|&k| rs.simple(k) as u32).collect());
        let refl = rs.reflection_table();
        let mut states = vec![start];
        let mut parent = vec![(u32::MAX, 0u8)];
        let mut index = HashMap::from([(start, 0u32)]);
        let mut head = 0;
        while head < states.len() {
            let cur = unpack(states[head]);
            for (k, table) in refl.iter().enumerate() {
                let img = pack(cur.iter().map(|&r| table[r as usize]).collect());
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(img) {
                    if states.len() >= budget.states {
                        return Err(RestrictError::BudgetExceeded {
                            what: "W-orbit of the simple roots in J".into(),
                            partial: states.len() as u128,
                        });
                    }
                    e.insert(states.len() as u32);
                    states.push(img);
                    parent.push((head as u32, k as u8));
                }
            }
            head += 1;
        }
        Ok(SetOrbit { states, parent, index })
    }

    /// Word (in application order) of a transversal element mapping the start
    /// set to state `s`.
    fn word_to(&self, mut s: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while self.parent[s].0 != u32::MAX {
            w.push(self.parent[s].1 as usize);
            s = self.parent[s].0 as usize;
        }
        w.reverse();
        w
    }
}

fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    // (a ∘ b)(r) = a(b(r))
    b.iter().map(|&x| a[x as usize]).collect()
}

fn closure(gens: &[Vec<u16>], n: usize, cap: usize) -> Option<Vec<Vec<u16>>> {
    let id: Vec<u16> = (0..n as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        for g in gens {
            let nx = compose(g, &cur);
            if seen.insert(nx.clone()) {
                if out.len() >= cap {
                    return None;
                }
                out.push(nx);
            }
        }
        head += 1;
    }
    out.sort();
    Some(out)
}

/// Computes `W^J` from the `W`-orbit of the set `Δ_J`: the order is
/// `|W| / |orbit|`, and Schreier generators of the stabiliser are added
/// until the generated group reaches that order.
pub fn restricted_weyl(rrs: &RestrictedRootSystem, budget: Budget) -> Result<RestrictedWeylGroup, RestrictError> {
    let rs = rrs.root_system();
    let nres = rrs.len();
    if rrs.dim() == 0 {
        return Ok(RestrictedWeylGroup {
            generators: vec![],
            generator_perms: vec![],
            elements: Some(vec![vec![]]),
            order: 1,
            orbit_size: Some(rs.weyl_order()),
            method: "trivial (E^J = 0)".into(),
        });
    }
    let orbit = SetOrbit::new(rs, rrs.j(), budget)?;
    let orbit_size = orbit.states.len() as u128;
    let order = rs.weyl_order() / orbit_size;
    let cap = budget.states / nres.max(1);
    let enumerate = order as usize <= cap;
    let mut gens: Vec<Vec<u16>> = Vec::new();
    let mut mats: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut group: Option<Vec<Vec<u16>>> = Some(closure(&gens, nres, cap).expect("trivial group"));
    let mut group_set: HashSet<Vec<u16>> = group.iter().flatten().cloned().collect();
    if rrs.j().is_empty() {
        // Stabiliser of the empty set is all of W, generated by simple reflections.
        for k in 0..rs.rank() {
            let m = rrs.restricted_matrix_of_word(&[k]);
            gens.push(rrs.permutation_of_matrix(&m).expect("W preserves Φ"));
            mats.push(m);
        }
        group = if enumerate { closure(&gens, nres, cap) } else { None };
    } else {
        'outer: for s in 0..orbit.states.len() {
            if group.as_ref().is_some_and(|g| g.len() as u128 == order) {
                break;
            }
            let cur = unpack(orbit.states[s]);
            for k in 0..rs.rank() {
                let img = pack(cur.iter().map(|&r| rs.reflection_table()[k][r as usize]).collect());
                let t = orbit.index[&img] as usize;
                if orbit.parent[t] == (s as u32, k as u8) {
                    continue;
                }
                // Schreier generator: t_{img}^{-1} s_k t_s.
                let mut word = orbit.word_to(s);
                word.push(k);
                let mut back = orbit.word_to(t);
                back.reverse();
                word.extend(back);
                let m = rrs.restricted_matrix_of_word(&word);
                let perm = rrs.permutation_of_matrix(&m).expect("stabiliser preserves Φ^J");
                if group_set.contains(&perm) {
                    continue;
                }
                gens.push(perm);
                mats.push(m);
                if !enumerate {
                    if gens.len() >= 16 {
                        break 'outer;
                    }
                    continue;
                }
                let g = closure(&gens, nres, cap).expect("order within cap");
                group_set = g.iter().cloned().collect();
                group = Some(g);
                if group.as_ref().unwrap().len() as u128 == order {
                    break 'outer;
                }
            }
        }
        if !enumerate {
            group = None;
        }
    }
    if let Some(g) = &group {
        assert_eq!(g.len() as u128, order, "Schreier generators must generate the stabiliser");
    }
    Ok(RestrictedWeylGroup {
        generators: mats,
        generator_perms: gens,
        elements: group,
        order,
        orbit_size: Some(orbit_size),
        method: "set orbit of Δ_J with Schreier generators".into(),
    })
}

/// A member `K` of the Levi class `𝒦_J` with a word `w` (application order)
/// such that `w·Δ_K = Δ_J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviConjugate {
    pub k: Vec<usize>,
    pub word: Vec<usize>,
}

/// Word (application order) of the longest element of the parabolic
/// subgroup `W_L`.
pub fn longest_element_word(rs: &RootSystem, l: &[usize]) -> Vec<usize> {
    let n = rs.rank();
    let mut z: Vec<i64> = (0..n).map(|k| i64::from(l.contains(&k))).collect();
    let mut word = Vec::new();
    while let Some(&k) = l.iter().find(|&&k| z[k] > 0) {
        let zk = z[k];
        for m in 0..n {
            z[m] -= rs.cartan()[m][k] * zk;
        }
        word.push(k);
    }
    word
}

fn simple_indices_of(rs: &RootSystem, roots: &[usize]) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for &r in roots {
        let v = rs.root(r);
        if v.iter().filter(|&&x| x != 0).count() != 1 || v.iter().any(|&x| x < 0 || x > 1) {
            return None;
        }
        out.push(v.iter().position(|&x| x == 1).unwrap());
    }
    out.sort_unstable();
    Some(out)
}

/// `𝒦_J` by closure under elementary conjugations
/// `K ↦ −w_0^{K∪{α}}(Δ_K)` for `α ∉ K`.
pub fn levi_class(rs: &RootSystem, j: &[usize], budget: Budget) -> Result<Vec<LeviConjugate>, RestrictError> {
    let mut start: Vec<usize> = j.to_vec();
    start.sort_unstable();
    start.dedup();
    // Words here map Δ_J to Δ_K; they are inverted at the end.
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = vec![(start.clone(), vec![])];
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start]);
    let mut head = 0;
    while head < found.len() {
        let (k, w) = found[head].clone();
        let w0k = longest_element_word(rs, &k);
        for a in (0..rs.rank()).filter(|a| !k.contains(a)) {
            let mut l = k.clone();
            l.push(a);
            l.sort_unstable();
            let w0l = longest_element_word(rs, &l);
            let mut step = w0k.clone();
            step.extend(&w0l);
            let imgs: Vec<usize> = k.iter().map(|&x| rs.apply_word(&step, rs.simple(x))).collect();
            let k2 = simple_indices_of(rs, &imgs).expect("-w_0^L permutes Δ_L");
            if seen.insert(k2.clone()) {
                if found.len() >= budget.states {
                    return Err(RestrictError::BudgetExceeded { what: "Levi class".into(), partial: found.len() as u128 });
                }
                let mut w2 = w.clone();
                w2.extend(step);
                found.push((k2, w2));
            }
        }
        head += 1;
    }
    let mut out: Vec<LeviConjugate> = found
        .into_iter()
        .map(|(k, w)| LeviConjugate { k, word: w.into_iter().rev().collect() })
        .collect();
    out.sort_by(|a, b| a.k.cmp(&b.k));
    Ok(out)
}

/// `𝒦_J` by scanning the whole `W`-orbit of `Δ_J` for sets of simple roots.
pub fn levi_class_bruteforce(rs: &RootSystem, j: &[usize], budget: Budget) -> Result<Vec<LeviConjugate>, RestrictError> {
    let mut jj: Vec<usize> = j.to_vec();
    jj.sort_unstable();
    jj.dedup();
    let orbit = SetOrbit::new(rs, &jj, budget)?;
    let mut out = Vec::new();
    for s in 0..orbit.states.len() {
        let set: Vec<usize> = unpack(orbit.states[s]).into_iter().map(|r| r as usize).collect();
        if let Some(k) = simple_indices_of(rs, &set) {
            // word_to maps Δ_J to Δ_K; invert it.
            let w: Vec<usize> = orbit.word_to(s).into_iter().rev().collect();
            out.push(LeviConjugate { k, word: w });
        }
    }
    out.sort_by(|a, b| a.k.cmp(&b.k));
    Ok(out)
}

/// Data obtained by lifting each chamber of `Φ^J` to a chamber of `Φ` whose
/// base contains `Δ_J`.
#[derive(Debug, Clone)]
pub struct ChamberLift {
    /// For each chamber (in the order given), the subset `K` with `u^{-1}Δ_J = Δ_K`
    /// where `u·Δ` is the lifted base.
    pub k_of_chamber: Vec<Vec<usize>>,
    /// Permutations of `Φ^J` induced by the lifts `u` of chambers with `K = J`.
    pub stabilizer: Vec<Vec<u16>>,
}

/// Lifts chambers of the restricted arrangement to chambers of `Φ`. This
/// gives `𝒦_J` and `W^J` without orbit enumeration in `W`.
pub fn lift_chambers(rrs: &RestrictedRootSystem, chambers: &[Chamber]) -> ChamberLift {
    let rs = rrs.root_system();
    let n = rs.rank();
    let mut k_of = Vec::new();
    let mut stab = Vec::new();
    for ch in chambers {
        let x = rrs.interior_point(&ch.base);
        // Lexicographic labels (main, tie) with tie = 1 on J.
        let mut main: Vec<Rational> = vec![Rational::zero(); n];
        let mut tie: Vec<i64> = vec![0; n];
        for (pos, &i) in rrs.i().iter().enumerate() {
            main[i] = x.0[pos].clone();
        }
        for &j in rrs.j() {
            tie[j] = 1;
        }
        let mut word = Vec::new();
        loop {
            let neg = (0..n).find(|&k| main[k].is_negative() || (main[k].is_zero() && tie[k] < 0));
            let Some(k) = neg else { break };
            let (mk, tk) = (main[k].clone(), tie[k]);
            for l in 0..n {
                let a = rs.cartan()[l][k];
                if a != 0 {
                    main[l] = &main[l] - qi(a) * &mk;
                    tie[l] -= a * tk;
                }
            }
            word.push(k);
        }
        // w = word maps the lifted chamber to the fundamental one; K = w(Δ_J).
        let imgs: Vec<usize> = rrs.j().iter().map(|&j| rs.apply_word(&word, rs.simple(j))).collect();
        let k = simple_indices_of(rs, &imgs).expect("lifted base contains Δ_J");
        if k == rrs.j() && rrs.dim() > 0 {
            let inv: Vec<usize> = word.iter().rev().copied().collect();
            let m = rrs.restricted_matrix_of_word(&inv);
            stab.push(rrs.permutation_of_matrix(&m).expect("stabiliser preserves Φ^J"));
        }
        k_of.push(k);
    }
    stab.sort();
    ChamberLift { k_of_chamber: k_of, stabilizer: stab }
}

/// `W^J` from chamber lifts (used when the orbit of `Δ_J` exceeds the budget).
pub fn restricted_weyl_from_chambers(rrs: &RestrictedRootSystem, chambers: &[Chamber]) -> RestrictedWeylGroup {
    let lift = lift_chambers(rrs, chambers);
    let elements = if rrs.dim() == 0 { vec![vec![]] } else { lift.stabilizer };
    let gens: Vec<Vec<u16>> = elements.clone();
    RestrictedWeylGroup {
        generators: gens.iter().map(|p| rrs.matrix_of_permutation(p)).collect(),
        generator_perms: gens,
        order: elements.len() as u128,
        elements: Some(elements),
        orbit_size: None,
        method: "chamber lifts".into(),
    }
}

/// Sum of highest-root coefficients outside `K`: the height of the
/// restriction of `θ` in the standard base of `Φ^K`.
pub fn restricted_highest_height(rs: &RootSystem, k: &[usize]) -> i64 {
    let c = rs.highest_coefficients();
    (0..rs.rank()).filter(|i| !k.contains(i)).map(|i| c[i]).sum()
}

/// Value `Σ b_k β_k` of coefficient vector `coeffs` against a point.
pub fn pair(v: &[i64], p: &[Rational]) -> Rational {
    let q: Vec<Rational> = v.iter().map(|&x| qi(x)).collect();
    dot(&q, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::rootsys::CartanType;

    fn e7_a3a2() -> RestrictedRootSystem {
        let rs = RootSystem::build(CartanType::E, 7).unwrap();
        RestrictedRootSystem::new(&rs, &[0, 2, 4, 5, 6]).unwrap()
    }

    #[test]
    fn e7_positive_restricted_roots() {
        let r = e7_a3a2();
        let pos: Vec<Vec<i64>> = r.roots()[..r.num_positive()].to_vec();
        assert_eq!(pos, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 3], vec![2, 4]]);
        assert_eq!(r.len(), 14);
        assert_eq!(r.restricted_highest_root(), vec![2, 4]);
    }

    #[test]
    fn e7_restricted_cartan_matrix() {
        let r = e7_a3a2();
        let c = r.restricted_cartan(&r.standard_base());
        assert_eq!(c, QMatrix::from_rows(&[vec![qi(2), q(-24, 7)], vec![qi(-1), qi(2)]]).unwrap());
    }

    #[test]
    fn trivial_subsets() {
        let rs = RootSystem::build(CartanType::G, 2).unwrap();
        let r = RestrictedRootSystem::new(&rs, &[]).unwrap();
        assert_eq!(r.len(), 12);
        assert_eq!(r.restricted_cartan(&r.standard_base()), QMatrix::from_i64_rows(rs.cartan()).unwrap());
        let full = RestrictedRootSystem::new(&rs, &[0, 1]).unwrap();
        assert!(full.is_empty());
    }

    #[test]
    fn chambers_and_bases() {
        let a2 = RootSystem::build(CartanType::A, 2).unwrap();
        let r = RestrictedRootSystem::new(&a2, &[]).unwrap();
        assert_eq!(r.all_bases(Budget::default()).unwrap().len(), 6);
        let b = r.base_from_regular(&[qi(1), qi(1)]).unwrap();
        assert_eq!(b, r.standard_base());
        assert_eq!(r.base_from_regular(&[qi(2), qi(-1)]).unwrap().0.len(), 2);
        assert_eq!(r.base_from_regular(&[qi(1), qi(0)]), Err(RestrictError::NonRegular));
        let e = e7_a3a2();
        let bases = e.all_bases(Budget::default()).unwrap();
        assert_eq!(bases.len(), 12);
        assert!(bases.iter().all(|b| e.is_base(b)));
    }

    #[test]
    fn nonstandard_base_across_a_wall() {
        let e = e7_a3a2();
        // Point with α1 + 3α2 > 0 and α2 < 0 but near the α2 wall.
        let b = e.base_from_regular(&[qi(10), qi(-1)]).unwrap();
        let vs: BTreeSet<Vec<i64>> = b.0.iter().map(|&k| e.root(k).to_vec()).collect();
        assert_eq!(vs, BTreeSet::from([vec![1, 3], vec![0, -1]]));
    }

    #[test]
    fn restricted_weyl_orders() {
        let e = e7_a3a2();
        let w = restricted_weyl(&e, Budget::default()).unwrap();
        assert_eq!(w.order, 4);
        assert_eq!(w.orbit_size, Some(725_760));
        let f4 = RootSystem::build(CartanType::F, 4).unwrap();
        let r = RestrictedRootSystem::new(&f4, &[]).unwrap();
        assert_eq!(restricted_weyl(&r, Budget::default()).unwrap().order, 1152);
    }

    #[test]
    fn levi_classes() {
        let rs = RootSystem::build(CartanType::E, 7).unwrap();
        let k = levi_class(&rs, &[0, 2, 4, 5, 6], Budget::default()).unwrap();
        assert_eq!(k.len(), 3);
        for c in &k {
            let imgs: Vec<usize> = c.k.iter().map(|&x| rs.apply_word(&c.word, rs.simple(x))).collect();
            assert_eq!(simple_indices_of(&rs, &imgs).unwrap(), vec![0, 2, 4, 5, 6]);
        }
        let g2 = RootSystem::build(CartanType::G, 2).unwrap();
        assert_eq!(levi_class(&g2, &[0], Budget::default()).unwrap().len(), 1);
        assert_eq!(levi_class(&g2, &[1], Budget::default()).unwrap().len(), 1);
        assert_eq!(levi_class(&g2, &[], Budget::default()).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let rs = RootSystem::build(CartanType::E, 7).unwrap();
        let r = RestrictedRootSystem::new(&rs, &[0, 2, 4, 5, 6]).unwrap();
        let err = restricted_weyl(&r, Budget { states: 1000 }).unwrap_err();
        assert!(matches!(err, RestrictError::BudgetExceeded { partial: 1000, .. }));
    }
}
