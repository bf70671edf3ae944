//! Good gradings for a nilpotent element `e` given as a distinguished
//! labelled diagram on a Levi subset `J`.
//!
//! Pipeline: the semisimple element `h` of an sl₂-triple through `e`
//! ([`solve_h`]), sl₂-multiplicities `m(α,i)` of the weight spaces of the
//! torus `𝔱_e` ([`sl2_multiplicities`]), the open polytope of good gradings
//! `|α(p)| < d(α)` ([`GoodGradingPolytope`]), its integral points, their
//! characteristics and conjugacy classes under `W_e`, the adjacency graph
//! of integral good gradings, and the decomposition `W_e = Z_e ⋉ W_e^∘`.
//!
//! Points `p ∈ E_e` are written in functional coordinates `p_i = α_i(p)` for
//! `i ∉ J`, so a restricted root `β` takes the value `β·p` at `p`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{
    ceil_q, dual_lattice_basis, feasible, floor_q, fmt_q, q, qi, solve_linear, to_i64, ExactError, LinearSystem,
    QMatrix, QVector, Rational,
};
use crate::restrict::{restricted_weyl, Budget, RestrictError, RestrictedRootSystem, RestrictedWeylGroup};
use crate::rootsys::{CartanType, ChevalleyAlgebra, GoodnessReport, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("invalid nilpotent datum: {0}")]
    InvalidDatum(String),
    #[error("weight {0} is not an integer; the labels do not define an sl2-triple")]
    NotIntegral(String),
    #[error("the character of weight space {0:?} is not a sum of sl2 characters")]
    NegativeMultiplicity(Vec<i64>),
    #[error("point lies outside the good grading polytope")]
    OutsidePolytope,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration budget exceeded while computing {what} (partial count {partial})")]
    BudgetExceeded { what: String, partial: u128 },
    #[error(transparent)]
    Restrict(#[from] RestrictError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A nilpotent element given by a Levi subset `J` (0-based) and the labels
/// `α_j(h) ∈ {0, 2}` of a distinguished nilpotent of `[𝔩_J, 𝔩_J]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotentDatum {
    pub j: Vec<usize>,
    pub labels: Vec<i64>,
    pub name: Option<String>,
}

impl NilpotentDatum {
    /// Validates and normalises (sorts `J` together with its labels).
    pub fn new(rank: usize, j: &[usize], labels: &[i64]) -> Result<Self, GradingError> {
        if j.len() != labels.len() {
            return Err(GradingError::InvalidDatum(format!("{} nodes but {} labels", j.len(), labels.len())));
        }
        let mut pairs: Vec<(usize, i64)> = j.iter().copied().zip(labels.iter().copied()).collect();
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(GradingError::InvalidDatum(format!("node {} repeated", w[0].0 + 1)));
            }
        }
        for &(n, l) in &pairs {
            if n >= rank {
                return Err(GradingError::InvalidDatum(format!("node {} out of range", n + 1)));
            }
            if l != 0 && l != 2 {
                return Err(GradingError::InvalidDatum(format!("label {l} on node {} is not 0 or 2", n + 1)));
            }
        }
        Ok(NilpotentDatum { j: pairs.iter().map(|p| p.0).collect(), labels: pairs.iter().map(|p| p.1).collect(), name: None })
    }

    /// The principal nilpotent of the Levi subalgebra: every label is 2.
    pub fn principal(rank: usize, j: &[usize]) -> Result<Self, GradingError> {
        Self::new(rank, j, &vec![2; j.len()])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn is_principal(&self) -> bool {
        self.labels.iter().all(|&l| l == 2)
    }
}

/// The values `α_i(h)` for all simple roots, where `h ∈ span{α_j^∨ : j ∈ J}`
/// has `α_j(h) = ℓ_j` on `J`.
pub fn solve_h(rs: &RootSystem, datum: &NilpotentDatum) -> Result<Vec<Rational>, GradingError> {
    let n = rs.rank();
    let j = &datum.j;
    if j.is_empty() {
        return Ok(vec![Rational::zero(); n]);
    }
    let a: Vec<Vec<i64>> = j.iter().map(|&r| j.iter().map(|&c| rs.cartan()[r][c]).collect()).collect();
    let x = solve_linear(&QMatrix::from_i64_rows(&a)?, &QVector::from_i64(&datum.labels))?;
    Ok((0..n)
        .map(|i| j.iter().zip(&x.0).fold(Rational::zero(), |acc, (&k, xk)| acc + qi(rs.cartan()[i][k]) * xk))
        .collect())
}

/// sl₂-multiplicities of the `𝔱_e`-weight spaces of `𝔤`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Decomposition {
    /// `α_i(h)` for every simple root.
    pub h_labels: Vec<i64>,
    /// For each restricted root (indexed as in the restricted root system),
    /// the pairs `(i, m(α,i))` with `m > 0`, ascending in `i`.
    pub multiplicities: Vec<Vec<(i64, usize)>>,
    /// The same for the zero weight space (Levi subalgebra `𝔩`).
    pub zero_weight: Vec<(i64, usize)>,
    /// `d(α) = 1 + min{i : m(α,i) ≠ 0}` per restricted root.
    pub d: Vec<i64>,
    /// Restricted roots with `m(α,0) ≠ 0`: the root system `Φ_e^∘` of the
    /// reductive centraliser.
    pub circ: Vec<usize>,
}

impl Sl2Decomposition {
    /// `i` repeated `m(α,i)` times, ascending: the form in which
    /// multiplicities are usually tabulated.
    pub fn sequence(&self, k: usize) -> Vec<i64> {
        self.multiplicities[k].iter().flat_map(|&(i, m)| std::iter::repeat_n(i, m)).collect()
    }

    /// `Σ m(α,i)(i+1)` over all weights including zero: equals `dim 𝔤`.
    pub fn total_dim(&self) -> usize {
        let f = |v: &Vec<(i64, usize)>| v.iter().map(|&(i, m)| m * (i as usize + 1)).sum::<usize>();
        self.multiplicities.iter().map(f).sum::<usize>() + f(&self.zero_weight)
    }

    /// `dim 𝔤_e = Σ m(α,i)` over all weights.
    pub fn centralizer_dim(&self) -> usize {
        let f = |v: &Vec<(i64, usize)>| v.iter().map(|&(_, m)| m).sum::<usize>();
        self.multiplicities.iter().map(f).sum::<usize>() + f(&self.zero_weight)
    }
}

/// Decomposes a character `Σ x^w` (weights with multiplicity) into
/// irreducible sl₂ characters; returns `(i, m)` pairs ascending.
pub fn peel_sl2(weights: &[i64]) -> Option<Vec<(i64, usize)>> {
    let mut count: BTreeMap<i64, i64> = BTreeMap::new();
    for &w in weights {
        *count.entry(w).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    loop {
        count.retain(|_, c| *c != 0);
        let Some((&top, &m)) = count.iter().next_back() else { break };
        if top < 0 || m < 0 {
            return None;
        }
        let mut w = top;
        while w >= -top {
            *count.entry(w).or_insert(0) -= m;
            w -= 2;
        }
        out.push((top, m as usize));
    }
    out.reverse();
    Some(out)
}

/// Computes `m(α,i)` by collecting, for each restricted root `α`, the
/// weights `β(h)` of all roots `β` restricting to `α`, and peeling off sl₂
/// characters from the top.
pub fn sl2_multiplicities(rrs: &RestrictedRootSystem, h_labels: &[Rational]) -> Result<Sl2Decomposition, GradingError> {
    let rs = rrs.root_system();
    let h: Vec<i64> = h_labels
        .iter()
        .map(|x| to_i64(x).ok_or_else(|| GradingError::NotIntegral(fmt_q(x))))
        .collect::<Result<_, _>>()?;
    let weight = |r: usize| -> i64 { rs.root(r).iter().zip(&h).map(|(a, b)| a * b).sum() };
    let mut multiplicities = Vec::with_capacity(rrs.len());
    let mut d = Vec::with_capacity(rrs.len());
    let mut circ = Vec::new();
    for k in 0..rrs.len() {
        let ws: Vec<i64> = rrs.fiber(k).iter().map(|&r| weight(r)).collect();
        let m = peel_sl2(&ws).ok_or_else(|| GradingError::NegativeMultiplicity(rrs.root(k).to_vec()))?;
        d.push(1 + m[0].0);
        if m[0].0 == 0 {
            circ.push(k);
        }
        multiplicities.push(m);
    }
    let mut zero: Vec<i64> = (0..rs.num_roots()).filter(|&r| rrs.restriction_of(r).is_none()).map(weight).collect();
    zero.extend(std::iter::repeat_n(0, rs.rank()));
    let zero_weight = peel_sl2(&zero).ok_or_else(|| GradingError::NegativeMultiplicity(vec![0; rrs.dim()]))?;
    Ok(Sl2Decomposition { h_labels: h, multiplicities, zero_weight, d, circ })
}

/// An open polytope `{y : |f(y)| < b_f}` in coordinates `y ∈ ℚ^dim`, given by
/// integer functionals `f`, together with the lattice of points at which
/// every functional is an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodGradingPolytope {
    pub dim: usize,
    /// One functional per positive root of `Φ_e`.
    pub functionals: Vec<Vec<i64>>,
    /// Strict bound for each functional, `d(α)`.
    #[serde(serialize_with = "crate::cli::ser_q_vec")]
    pub bounds: Vec<Rational>,
    /// Irredundant description: primitive functionals with bounds, after
    /// merging proportional functionals and discarding implied constraints.
    pub facets: Vec<Facet>,
    /// Columns form a basis of `{y : f(y) ∈ ℤ for all f}`.
    #[serde(skip)]
    pub lattice: QMatrix,
}

/// A two-sided constraint `|f(y)| < bound` with `f` primitive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub functional: Vec<i64>,
    #[serde(serialize_with = "crate::cli::ser_q")]
    pub bound: Rational,
}

fn eval_i(f: &[i64], y: &[Rational]) -> Rational {
    f.iter().zip(y).fold(Rational::zero(), |acc, (&a, b)| acc + qi(a) * b)
}

fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0, |acc, &x| crate::exact::gcd_i64(acc, x))
}

impl GoodGradingPolytope {
    /// Builds the polytope, its irredundant facets and the integrality lattice.
    pub fn new(dim: usize, functionals: Vec<Vec<i64>>, bounds: Vec<Rational>) -> Result<Self, GradingError> {
        assert_eq!(functionals.len(), bounds.len());
        // Merge proportional functionals: keep the tightest bound per direction.
        let mut merged: Vec<Facet> = Vec::new();
        for (f, b) in functionals.iter().zip(&bounds) {
            let g = gcd_vec(f);
            if g == 0 {
                continue;
            }
            let s = if f.iter().find(|x| **x != 0).unwrap() < &0 { -g } else { g };
            let prim: Vec<i64> = f.iter().map(|x| x / s).collect();
            let nb = b / qi(s.abs());
            match merged.iter_mut().find(|m| m.functional == prim) {
                Some(m) => {
                    if nb < m.bound {
                        m.bound = nb;
                    }
                }
                None => merged.push(Facet { functional: prim, bound: nb }),
            }
        }
        // Greedy redundancy removal: a constraint is dropped when the others
        // together with its non-strict negation are infeasible.
        let mut keep: Vec<bool> = vec![true; merged.len()];
        for k in 0..merged.len() {
            let mut redundant = true;
            for sign in [1i64, -1] {
                let mut sys = LinearSystem::new(dim);
                for (l, m) in merged.iter().enumerate() {
                    if l != k && keep[l] {
                        let a = QVector::from_i64(&m.functional);
                        sys.push_strict(a.clone(), m.bound.clone())?;
                        sys.push_strict(a.scale(&qi(-1)), m.bound.clone())?;
                    }
                }
                let a: Vec<i64> = merged[k].functional.iter().map(|x| -sign * x).collect();
                sys.push_nonstrict(QVector::from_i64(&a), -merged[k].bound.clone())?;
                if feasible(&sys).is_feasible() {
                    redundant = false;
                    break;
                }
            }
            if redundant {
                keep[k] = false;
            }
        }
        let facets: Vec<Facet> = merged.into_iter().zip(keep).filter(|(_, k)| *k).map(|(f, _)| f).collect();
        let lattice = if dim == 0 {
            QMatrix::zeros(0, 0)
        } else if functionals.is_empty() {
            QMatrix::identity(dim)
        } else {
            dual_lattice_basis(&QMatrix::from_i64_rows(&functionals)?)?
        };
        Ok(GoodGradingPolytope { dim, functionals, bounds, facets, lattice })
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.functionals.iter().zip(&self.bounds).all(|(f, b)| eval_i(f, y).abs() < *b)
    }

    pub fn is_integral(&self, y: &[Rational]) -> bool {
        self.functionals.iter().all(|f| eval_i(f, y).is_integer())
    }

    /// Values of all functionals at `y`.
    pub fn values(&self, y: &[Rational]) -> Vec<Rational> {
        self.functionals.iter().map(|f| eval_i(f, y)).collect()
    }

    /// Bounds `|z_k| <= B_k` for lattice coordinates `z` (with `y = L z`) of
    /// points inside the polytope.
    fn lattice_box(&self) -> Result<Vec<BigInt>, GradingError> {
        let n = self.dim;
        // Pick `n` independent functionals.
        if self.functionals.is_empty() {
            return Err(GradingError::Unsupported("polytope is unbounded".into()));
        }
        let f = QMatrix::from_i64_rows(&self.functionals)?;
        let (_, pivots) = f.transpose().rref();
        let rows: Vec<Vec<i64>> = pivots.iter().map(|&p| self.functionals[p].clone()).collect();
        let fs = QMatrix::from_i64_rows(&rows)?;
        if fs.rows() != n {
            return Err(GradingError::Unsupported("polytope is unbounded".into()));
        }
        let h = self.lattice.inverse()?; // z = H y
        let c = h.mul(&fs.inverse()?)?; // H = C F_S
        Ok((0..n)
            .map(|k| {
                let s = (0..n).fold(Rational::zero(), |acc, l| acc + c.get(k, l).abs() * &self.bounds[pivots[l]]);
                floor_q(&s)
            })
            .collect())
    }

    /// All points of the integrality lattice strictly inside the polytope,
    /// sorted.
    pub fn integral_points(&self, budget: Budget) -> Result<Vec<Vec<Rational>>, GradingError> {
        if self.dim == 0 {
            return Ok(vec![vec![]]);
        }
        let bx = self.lattice_box()?;
        let mut total: u128 = 1;
        for b in &bx {
            total = total.saturating_mul((BigInt::from(2) * b + 1u32).to_u128().unwrap_or(u128::MAX));
        }
        if total > budget.states as u128 {
            return Err(GradingError::BudgetExceeded { what: "integral point search box".into(), partial: total });
        }
        let bx: Vec<i64> = bx.iter().map(|b| b.to_i64().unwrap()).collect();
        let mut out = Vec::new();
        let mut z: Vec<i64> = bx.iter().map(|b| -b).collect();
        loop {
            let zq = QVector::from_i64(&z);
            let y = self.lattice.mul_vec(&zq)?.0;
            if self.contains(&y) {
                out.push(y);
            }
            // Odometer increment.
            let mut k = 0;
            loop {
                if k == z.len() {
                    out.sort();
                    return Ok(out);
                }
                if z[k] < bx[k] {
                    z[k] += 1;
                    break;
                }
                z[k] = -bx[k];
                k += 1;
            }
        }
    }

    /// Deterministic rational sample points inside and around the polytope:
    /// every point of the half-lattice in a box slightly larger than the
    /// polytope's, plus `random` seeded random rationals.
    pub fn sample_points(&self, seed: u64, random: usize, max_grid: usize) -> Result<Vec<Vec<Rational>>, GradingError> {
        if self.dim == 0 {
            return Ok(vec![vec![]]);
        }
        let bx: Vec<i64> = self.lattice_box()?.iter().map(|b| b.to_i64().unwrap() + 1).collect();
        let mut out = Vec::new();
        let half = q(1, 2);
        let mut z: Vec<i64> = bx.iter().map(|b| -2 * b).collect();
        'grid: loop {
            if out.len() >= max_grid {
                break;
            }
            let zq = QVector::new(z.iter().map(|&x| qi(x) * &half).collect());
            out.push(self.lattice.mul_vec(&zq)?.0);
            let mut k = 0;
            loop {
                if k == z.len() {
                    break 'grid;
                }
                if z[k] < 2 * bx[k] {
                    z[k] += 1;
                    break;
                }
                z[k] = -2 * bx[k];
                k += 1;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..random {
            let zq: Vec<Rational> = bx
                .iter()
                .map(|&b| {
                    let den: i64 = rng.random_range(1..=12);
                    let num: i64 = rng.random_range(-b * den..=b * den);
                    q(num, den)
                })
                .collect();
            out.push(self.lattice.mul_vec(&QVector::new(zq))?.0);
        }
        Ok(out)
    }

    /// Whether `Γ(y)` and `Γ(y′)` are adjacent: for every functional `f`,
    /// `f(y)⁻ <= f(y′) <= f(y)⁺` where `x⁻`/`x⁺` are the nearest integers
    /// strictly below/above `x`. Reflexive by construction.
    pub fn adjacent(&self, y: &[Rational], y2: &[Rational]) -> Result<bool, GradingError> {
        if !self.contains(y) || !self.contains(y2) {
            return Err(GradingError::OutsidePolytope);
        }
        Ok(alcove_adjacent(&self.functionals, y, y2))
    }
}

/// The alcove-closure test behind [`GoodGradingPolytope::adjacent`], without
/// the membership check.
pub fn alcove_adjacent(functionals: &[Vec<i64>], y: &[Rational], y2: &[Rational]) -> bool {
    functionals.iter().all(|f| {
        let x = eval_i(f, y);
        let x2 = eval_i(f, y2);
        let lo = if x.is_integer() { x.to_integer() - 1 } else { floor_q(&x) };
        let hi = if x.is_integer() { x.to_integer() + 1 } else { ceil_q(&x) };
        Rational::from_integer(lo) <= x2 && x2 <= Rational::from_integer(hi)
    })
}

/// The polytope of good gradings for a restricted root system and sl₂ data:
/// coordinates are `p_i = α_i(p)` for `i ∉ J` and the functionals are the
/// positive restricted roots.
pub fn restricted_polytope(rrs: &RestrictedRootSystem, dec: &Sl2Decomposition) -> Result<GoodGradingPolytope, GradingError> {
    let np = rrs.num_positive();
    GoodGradingPolytope::new(rrs.dim(), rrs.roots()[..np].to_vec(), dec.d[..np].iter().map(|&x| qi(x)).collect())
}

/// A characteristic: labels `c_i = α_i(c)` of the dominant representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Characteristic(#[serde(serialize_with = "crate::cli::ser_q_vec")] pub Vec<Rational>);

impl Characteristic {
    /// Whether every label lies in `[0, 2]`.
    pub fn is_good_range(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative() && *c <= qi(2))
    }

    /// Compact display in Dynkin-diagram order: digits run along the main
    /// chain and, for type `E`, the branch node follows a slash
    /// (`10001/2`). Non-digit labels are comma separated.
    pub fn display(&self, kind: CartanType) -> String {
        let order = display_order(kind, self.0.len());
        let digits = self.0.iter().all(|c| c.is_integer() && !c.is_negative() && *c < qi(10));
        let sep = if digits { "" } else { "," };
        let part = |idx: &[usize]| idx.iter().map(|&i| fmt_label(&self.0[i])).collect::<Vec<_>>().join(sep);
        if kind == CartanType::E {
            format!("{}/{}", part(&order[..order.len() - 1]), part(&order[order.len() - 1..]))
        } else {
            part(&order)
        }
    }

    /// Comma-separated labels in display order (branch node after `/` for `E`).
    pub fn display_commas(&self, kind: CartanType) -> String {
        let order = display_order(kind, self.0.len());
        let part = |idx: &[usize]| idx.iter().map(|&i| fmt_label(&self.0[i])).collect::<Vec<_>>().join(",");
        if kind == CartanType::E {
            format!("{}/{}", part(&order[..order.len() - 1]), part(&order[order.len() - 1..]))
        } else {
            part(&order)
        }
    }
}

fn fmt_label(x: &Rational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Node order used when printing diagrams: for `E_n` the chain `1,3,4,…,n`
/// followed by the branch node `2`; otherwise `1,…,n` (0-based).
pub fn display_order(kind: CartanType, rank: usize) -> Vec<usize> {
    if kind == CartanType::E {
        let mut v = vec![0];
        v.extend(2..rank);
        v.push(1);
        v
    } else {
        (0..rank).collect()
    }
}

/// The characteristic of `Γ(p)`: the dominant form of the labels
/// `α_i(h + p)`.
pub fn characteristic(
    rrs: &RestrictedRootSystem,
    h_labels: &[Rational],
    poly: &GoodGradingPolytope,
    p: &[Rational],
) -> Result<Characteristic, GradingError> {
    if !poly.contains(p) {
        return Err(GradingError::OutsidePolytope);
    }
    Ok(grading_characteristic(rrs, h_labels, p))
}

/// Dominant labels of `h + p` without a membership check.
pub fn grading_characteristic(rrs: &RestrictedRootSystem, h_labels: &[Rational], p: &[Rational]) -> Characteristic {
    let mut c = h_labels.to_vec();
    for (pos, &i) in rrs.i().iter().enumerate() {
        c[i] = &c[i] + &p[pos];
    }
    Characteristic(rrs.root_system().dominant_labels(&c).0)
}

/// Matrices acting on point coordinates such that the group they generate
/// is the action of `W_e` on `E_e`. A generator `M` with `(wβ)_I = Mβ_I`
/// acts on functional coordinates by `M^{-T}`; the group generated by the
/// transposes `M^T` is the same set of maps.
pub fn point_action_generators(weyl: &RestrictedWeylGroup) -> Vec<Vec<Vec<i64>>> {
    weyl.generators
        .iter()
        .map(|m| {
            let n = m.len();
            (0..n).map(|r| (0..n).map(|c| m[c][r]).collect()).collect()
        })
        .collect()
}

fn apply_int(m: &[Vec<i64>], y: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| eval_i(row, y)).collect()
}

/// A `W_e`-orbit of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    /// Lexicographically smallest member.
    #[serde(serialize_with = "crate::cli::ser_q_vec")]
    pub representative: Vec<Rational>,
    /// Indices into the input point list.
    pub members: Vec<usize>,
}

/// Partitions `points` into orbits of the group generated by `generators`.
/// Classes are ordered by representative.
pub fn we_orbits(points: &[Vec<Rational>], generators: &[Vec<Vec<i64>>]) -> Vec<OrbitClass> {
    let index: HashMap<&Vec<Rational>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut seen = vec![false; points.len()];
    let mut classes = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        let mut orbit: HashSet<Vec<Rational>> = HashSet::new();
        let mut queue = VecDeque::from([points[start].clone()]);
        orbit.insert(points[start].clone());
        while let Some(y) = queue.pop_front() {
            for g in generators {
                let z = apply_int(g, &y);
                if orbit.insert(z.clone()) {
                    queue.push_back(z);
                }
            }
        }
        let mut members: Vec<usize> = orbit.iter().filter_map(|y| index.get(y).copied()).collect();
        members.sort_unstable();
        for &m in &members {
            seen[m] = true;
        }
        let representative = orbit.into_iter().min().unwrap();
        classes.push(OrbitClass { representative, members });
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    classes
}

/// One node of an adjacency graph: a `W_e`-class of integral good gradings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphNode {
    #[serde(serialize_with = "crate::cli::ser_q_vec")]
    pub representative: Vec<Rational>,
    pub characteristic: Characteristic,
    pub class_size: usize,
    /// The Dynkin grading `p = 0`.
    pub dynkin: bool,
}

/// The adjacency graph of integral good gradings up to `W_e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyGraph {
    pub nodes: Vec<GraphNode>,
    /// Undirected edges `(a, b)` with `a < b`; no self-loops.
    pub edges: Vec<(usize, usize)>,
}

impl AdjacencyGraph {
    /// Builds the graph from all integral points, their classes and a
    /// characteristic function.
    pub fn build(
        points: &[Vec<Rational>],
        classes: &[OrbitClass],
        functionals: &[Vec<i64>],
        charac: impl Fn(&[Rational]) -> Characteristic,
    ) -> Self {
        let nodes: Vec<GraphNode> = classes
            .iter()
            .map(|c| GraphNode {
                characteristic: charac(&c.representative),
                dynkin: c.representative.iter().all(|x| x.is_zero()),
                class_size: c.members.len(),
                representative: c.representative.clone(),
            })
            .collect();
        let mut edges = Vec::new();
        for a in 0..classes.len() {
            for b in a + 1..classes.len() {
                let rep = &classes[a].representative;
                if classes[b].members.iter().any(|&m| alcove_adjacent(functionals, rep, &points[m])) {
                    edges.push((a, b));
                }
            }
        }
        AdjacencyGraph { nodes, edges }
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Node labels and edges as sets of display strings, for comparison
    /// independent of node order.
    pub fn canonical(&self, kind: CartanType) -> (Vec<String>, Vec<(String, String)>) {
        let names: Vec<String> = self.nodes.iter().map(|n| n.characteristic.display(kind)).collect();
        let mut sorted = names.clone();
        sorted.sort();
        let mut edges: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (names[a].clone(), names[b].clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        edges.sort();
        (sorted, edges)
    }
}

/// `W_e = Z_e ⋉ W_e^∘` data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentData {
    /// Simple roots `Δ_e^∘` of `Φ_e^∘` (restricted root indices).
    pub simple_circ: Vec<usize>,
    pub circ_weyl_order: u128,
    pub z_order: u128,
    pub we_order: u128,
}

fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    b.iter().map(|&x| a[x as usize]).collect()
}

/// Closes a set of permutations under composition.
pub fn perm_group_closure(gens: &[Vec<u16>], n: usize, budget: Budget) -> Result<Vec<Vec<u16>>, GradingError> {
    let id: Vec<u16> = (0..n as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(s, &g);
            if seen.insert(h.clone()) {
                if seen.len() > budget.states {
                    return Err(GradingError::BudgetExceeded { what: "permutation group".into(), partial: seen.len() as u128 });
                }
                queue.push_back(h);
            }
        }
    }
    let mut v: Vec<Vec<u16>> = seen.into_iter().collect();
    v.sort();
    Ok(v)
}

/// Reflection of `E_e` in the restricted root `α`, as the matrix `M` with
/// `(s_α β)_I = M β_I`.
pub fn restricted_reflection(rrs: &RestrictedRootSystem, alpha: &[i64]) -> Result<Vec<Vec<i64>>, GradingError> {
    let n = rrs.dim();
    let aa = rrs.inner(alpha, alpha);
    let mut m = vec![vec![0i64; n]; n];
    for c in 0..n {
        let mut e = vec![0i64; n];
        e[c] = 1;
        let coef = qi(2) * rrs.inner(&e, alpha) / &aa;
        for r in 0..n {
            let v = qi(e[r]) - &coef * qi(alpha[r]);
            m[r][c] = to_i64(&v).ok_or_else(|| GradingError::NotIntegral(fmt_q(&v)))?;
        }
    }
    Ok(m)
}

/// Computes `Δ_e^∘`, `|W_e^∘|` and `|Z_e|` where `Z_e` is the stabiliser in
/// `W_e` of the positive system `Φ_e^∘ ∩ Φ^J_+`.
pub fn component_data(
    rrs: &RestrictedRootSystem,
    dec: &Sl2Decomposition,
    we_elements: &[Vec<u16>],
    budget: Budget,
) -> Result<ComponentData, GradingError> {
    let np = rrs.num_positive();
    let pos_circ: Vec<usize> = dec.circ.iter().copied().filter(|&k| k < np).collect();
    let mut sums: HashSet<usize> = HashSet::new();
    for &a in &pos_circ {
        for &b in &pos_circ {
            let s: Vec<i64> = rrs.root(a).iter().zip(rrs.root(b)).map(|(x, y)| x + y).collect();
            if let Some(k) = rrs.index_of(&s) {
                sums.insert(k);
            }
        }
    }
    let simple_circ: Vec<usize> = pos_circ.iter().copied().filter(|k| !sums.contains(k)).collect();
    let gens: Vec<Vec<u16>> = simple_circ
        .iter()
        .map(|&k| {
            let m = restricted_reflection(rrs, rrs.root(k))?;
            rrs.permutation_of_matrix(&m)
                .ok_or_else(|| GradingError::Unsupported("reflection does not preserve the restricted roots".into()))
        })
        .collect::<Result<_, _>>()?;
    let circ_weyl_order = perm_group_closure(&gens, rrs.len(), budget)?.len() as u128;
    let pos_set: HashSet<usize> = pos_circ.iter().copied().collect();
    let z_order = we_elements
        .iter()
        .filter(|w| pos_circ.iter().all(|&k| pos_set.contains(&(w[k] as usize))))
        .count() as u128;
    Ok(ComponentData { simple_circ, circ_weyl_order, z_order, we_order: we_elements.len() as u128 })
}

/// The direct good-grading test for `Γ(p)` when `e` is the principal
/// nilpotent of the Levi subalgebra: each root vector `e_β` has degree
/// `β(h) + β(p)`.
pub fn oracle_check(
    alg: &ChevalleyAlgebra,
    rrs: &RestrictedRootSystem,
    datum: &NilpotentDatum,
    h_labels: &[Rational],
    p: &[Rational],
) -> Result<GoodnessReport, GradingError> {
    if !datum.is_principal() {
        return Err(GradingError::Unsupported("the direct test needs a principal-in-Levi nilpotent".into()));
    }
    let mut c = h_labels.to_vec();
    for (pos, &i) in rrs.i().iter().enumerate() {
        c[i] = &c[i] + &p[pos];
    }
    let e = alg.principal_in_levi(&datum.j);
    alg.ad_rank_oracle(&e, |beta| beta.iter().zip(&c).fold(Rational::zero(), |acc, (&b, x)| acc + qi(b) * x))
        .map_err(|e| GradingError::Unsupported(e.to_string()))
}

/// Everything computed for one nilpotent element.
#[derive(Debug, Clone, Serialize)]
pub struct GradingAnalysis {
    #[serde(skip)]
    pub rrs: RestrictedRootSystem,
    pub datum: NilpotentDatum,
    /// `α_i(h)` for all simple roots.
    #[serde(serialize_with = "crate::cli::ser_q_vec")]
    pub h_labels: Vec<Rational>,
    pub decomposition: Sl2Decomposition,
    pub polytope: GoodGradingPolytope,
    pub weyl: RestrictedWeylGroup,
    /// All `W_e` elements as permutations of the restricted roots.
    #[serde(skip)]
    pub we_elements: Vec<Vec<u16>>,
    pub components: ComponentData,
    #[serde(serialize_with = "crate::cli::ser_q_vec_vec")]
    pub integral_points: Vec<Vec<Rational>>,
    pub classes: Vec<OrbitClass>,
    pub graph: AdjacencyGraph,
    pub provenance: Vec<String>,
}

impl GradingAnalysis {
    pub fn compute(rs: &RootSystem, datum: &NilpotentDatum, budget: Budget) -> Result<Self, GradingError> {
        let rrs = RestrictedRootSystem::new(rs, &datum.j)?;
        let h_labels = solve_h(rs, datum)?;
        let decomposition = sl2_multiplicities(&rrs, &h_labels)?;
        let polytope = restricted_polytope(&rrs, &decomposition)?;
        let mut provenance = Vec::new();
        let weyl = match restricted_weyl(&rrs, budget.capped(crate::restrict::ORBIT_ATTEMPT_STATES)) {
            Ok(w) => w,
            Err(RestrictError::BudgetExceeded { .. }) => {
                provenance.push("W_e from chamber lifts (orbit over budget)".into());
                let chambers = rrs.all_chambers(budget)?;
                crate::restrict::restricted_weyl_from_chambers(&rrs, &chambers)
            }
            Err(e) => return Err(e.into()),
        };
        let we_elements = match &weyl.elements {
            Some(e) => e.clone(),
            None => perm_group_closure(&weyl.generator_perms, rrs.len(), budget)?,
        };
        let components = component_data(&rrs, &decomposition, &we_elements, budget)?;
        let integral_points = polytope.integral_points(budget)?;
        let gens = point_action_generators(&weyl);
        let classes = we_orbits(&integral_points, &gens);
        let graph = AdjacencyGraph::build(&integral_points, &classes, &polytope.functionals, |p| {
            grading_characteristic(&rrs, &h_labels, p)
        });
        Ok(GradingAnalysis {
            rrs,
            datum: datum.clone(),
            h_labels,
            decomposition,
            polytope,
            weyl,
            we_elements,
            components,
            integral_points,
            classes,
            graph,
            provenance,
        })
    }

    pub fn characteristic_of(&self, p: &[Rational]) -> Result<Characteristic, GradingError> {
        characteristic(&self.rrs, &self.h_labels, &self.polytope, p)
    }

    /// Checks that every generator of `W_e` preserves `d`, i.e. maps the
    /// polytope to itself.
    pub fn check_we_invariance(&self) -> bool {
        let np = self.rrs.num_positive();
        self.weyl.generator_perms.iter().all(|g| {
            (0..self.rrs.len()).all(|k| {
                let img = g[k] as usize;
                let d = |x: usize| self.decomposition.d[x];
                let _ = np;
                d(img) == d(k) && self.decomposition.multiplicities[img] == self.decomposition.multiplicities[k]
            })
        })
    }
}
