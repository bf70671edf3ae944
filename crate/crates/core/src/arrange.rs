//! Statistics of the restricted hyperplane arrangement `𝒜^J`.
//!
//! The intersection lattice is built level by level; a flat is stored as
//! the set of hyperplanes containing it (a bitset), which is canonical. The
//! Möbius function follows from `μ(X) = −Σ_{Y ⊊ X} μ(Y)`, giving the
//! characteristic polynomial `χ(t) = Σ_X μ(X) t^{dim X}`, whose roots are
//! the exponents of the (free) arrangement.

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::restrict::{
    levi_class, levi_class_bruteforce, lift_chambers, restricted_highest_height, restricted_weyl,
    restricted_weyl_from_chambers, Budget, LeviConjugate, RestrictError, RestrictedBase, RestrictedRootSystem,
};
use crate::rootsys::RootSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangeError {
    #[error(transparent)]
    Restrict(#[from] RestrictError),
    #[error("characteristic polynomial {0:?} does not split over the integers")]
    NonSplitting(Vec<i64>),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("too many hyperplanes ({0}) for the bitset flat representation")]
    TooManyHyperplanes(usize),
}

/// A central arrangement of linear hyperplanes, each given by a primitive
/// integer normal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Arrangement {
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| crate::exact::gcd_i64(acc, x));
    let k = v.iter().position(|&x| x != 0).expect("nonzero normal");
    let s = if v[k] < 0 { -g } else { g };
    v.iter().map(|x| x / s).collect()
}

impl Arrangement {
    /// Builds an arrangement from normals, dropping duplicates up to scaling.
    pub fn new(dim: usize, normals: &[Vec<i64>]) -> Self {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for v in normals {
            assert_eq!(v.len(), dim, "normal has wrong dimension");
            let p = primitive(v);
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
        Arrangement { dim, normals: out }
    }

    /// The restriction arrangement `𝒜^J`: hyperplanes orthogonal to the
    /// restricted roots.
    pub fn restricted(rrs: &RestrictedRootSystem) -> Self {
        Arrangement::new(rrs.dim(), &rrs.roots()[..rrs.num_positive()])
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// Characteristic polynomial, coefficients indexed by degree.
    pub fn char_poly(&self, budget: Budget) -> Result<Vec<i64>, ArrangeError> {
        let n = self.normals.len();
        if n > 128 {
            return Err(ArrangeError::TooManyHyperplanes(n));
        }
        // Flat: (hyperplane bitset, echelon basis of the normal span).
        let mut levels: Vec<Vec<(u128, Vec<Vec<i128>>)>> = vec![vec![(0, vec![])]];
        let mut total = 1usize;
        loop {
            let prev = levels.last().unwrap();
            let mut next: Vec<(u128, Vec<Vec<i128>>)> = Vec::new();
            let mut seen: HashSet<u128> = HashSet::new();
            for (bits, basis) in prev {
                for h in 0..n {
                    if bits >> h & 1 == 1 {
                        continue;
                    }
                    let mut nb = basis.clone();
                    let Some(row) = reduce(&nb, &self.normals[h]) else { continue };
                    nb.push(row);
                    let mut nbits = 0u128;
                    for (k, v) in self.normals.iter().enumerate() {
                        if bits >> k & 1 == 1 || k == h || reduce(&nb, v).is_none() {
                            nbits |= 1u128 << k;
                        }
                    }
                    if seen.insert(nbits) {
                        total += 1;
                        if total > budget.states {
                            return Err(RestrictError::BudgetExceeded {
                                what: "intersection lattice".into(),
                                partial: total as u128,
                            }
                            .into());
                        }
                        next.push((nbits, nb));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        // Möbius function from the bottom element (the whole space).
        let mut mu: Vec<Vec<i64>> = vec![vec![1]];
        for r in 1..levels.len() {
            let mut level_mu = Vec::with_capacity(levels[r].len());
            for (bits, _) in &levels[r] {
                let mut s = 0i64;
                for (lower, lmu) in levels[..r].iter().zip(&mu) {
                    for ((lb, _), m) in lower.iter().zip(lmu) {
                        if lb & !bits == 0 {
                            s += m;
                        }
                    }
                }
                level_mu.push(-s);
            }
            mu.push(level_mu);
        }
        let mut coeffs = vec![0i64; self.dim + 1];
        for (r, lmu) in mu.iter().enumerate() {
            coeffs[self.dim - r] += lmu.iter().sum::<i64>();
        }
        Ok(coeffs)
    }
}

/// Reduces `v` against an integer echelon basis; returns the reduced row if
/// `v` is outside the span, `None` if inside.
fn reduce(basis: &[Vec<i128>], v: &[i64]) -> Option<Vec<i128>> {
    let mut r: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for b in basis {
        let p = b.iter().position(|&x| x != 0).unwrap();
        if r[p] != 0 {
            let (bp, rp) = (b[p], r[p]);
            for (x, y) in r.iter_mut().zip(b) {
                *x = *x * bp - rp * y;
            }
            let g = r.iter().fold(0i128, |acc, &x| gcd(acc, x));
            if g > 1 {
                r.iter_mut().for_each(|x| *x /= g);
            }
        }
    }
    if r.iter().all(|&x| x == 0) {
        return None;
    }
    // Keep the basis in echelon form: pivot positions must be distinct, and
    // later rows must have zeros at earlier pivots (ensured above).
    Some(r)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Evaluates a polynomial (coefficients by degree) at an integer.
pub fn eval_poly(coeffs: &[i64], t: i64) -> i64 {
    coeffs.iter().rev().fold(0i64, |acc, &c| acc * t + c)
}

/// Exponents: the roots of a characteristic polynomial that splits over ℤ
/// into linear factors `(t − b_i)`, sorted ascending.
pub fn exponents(coeffs: &[i64]) -> Result<Vec<i64>, ArrangeError> {
    let mut p: Vec<i64> = coeffs.to_vec();
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 {
        // Candidate roots divide the constant term (or are 0).
        let c0 = p[0];
        let cand = if c0 == 0 {
            Some(0)
        } else {
            (1..=c0.abs()).flat_map(|d| [d, -d]).find(|&d| c0 % d == 0 && eval_poly(&p, d) == 0)
        };
        let Some(b) = cand else {
            return Err(ArrangeError::NonSplitting(coeffs.to_vec()));
        };
        // Synthetic division by (t − b).
        let deg = p.len() - 1;
        let mut q = vec![0i64; deg];
        let mut carry = 0i64;
        for k in (0..=deg).rev() {
            let v = p[k] + carry;
            if k == 0 {
                debug_assert_eq!(v, 0);
            } else {
                q[k - 1] = v;
                carry = v * b;
            }
        }
        p = q;
        roots.push(b);
    }
    if p[0] != 1 {
        return Err(ArrangeError::NonSplitting(coeffs.to_vec()));
    }
    roots.sort_unstable();
    Ok(roots)
}

/// Number of chambers from the characteristic polynomial: `|χ(−1)|`.
pub fn zaslavsky_count(coeffs: &[i64]) -> u64 {
    eval_poly(coeffs, -1).unsigned_abs()
}

/// The Coxeter-number analogue `h^J` together with an achieving `K ∈ 𝒦_J`
/// and the corresponding base of `Φ^J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoxeterNumber {
    pub h: i64,
    /// Achieving member of `𝒦_J` (0-based nodes).
    pub k: Vec<usize>,
    /// Base `{(w_K α_i)^J : i ∉ K}` of `Φ^J` in which the restricted highest
    /// root has height `h − 1`.
    pub base: RestrictedBase,
    /// Whether the achieving base is the standard one.
    pub standard: bool,
}

/// `h^J = min{ht(θ^K) + 1 : K ∈ 𝒦_J}` where `ht(θ^K)` is the height of the
/// restricted highest root in the standard base of `Φ^K`.
pub fn coxeter_h(rrs: &RestrictedRootSystem, levi: &[LeviConjugate]) -> CoxeterNumber {
    let rs = rrs.root_system();
    let best = levi
        .iter()
        .min_by_key(|c| (restricted_highest_height(rs, &c.k), c.k != rrs.j(), c.k.clone()))
        .expect("𝒦_J contains J");
    let h = restricted_highest_height(rs, &best.k) + 1;
    let mut base: Vec<usize> = (0..rs.rank())
        .filter(|i| !best.k.contains(i))
        .map(|i| {
            let img = rs.apply_word(&best.word, rs.simple(i));
            rrs.restriction_of(img).expect("image of a simple root outside K restricts to a nonzero root")
        })
        .collect();
    base.sort_unstable();
    let base = RestrictedBase(base);
    let standard = {
        let mut s = rrs.standard_base().0;
        s.sort_unstable();
        s == base.0
    };
    CoxeterNumber { h, k: best.k.clone(), base, standard }
}

/// Checks Sommers' criterion: every `1 <= p < h^J` prime to all highest-root
/// coefficients must be an exponent. Returns the list of tested `p`.
pub fn sommers_check(rs: &RootSystem, h: i64, exps: &[i64]) -> Result<Vec<i64>, ArrangeError> {
    let c = rs.highest_coefficients();
    let tested: Vec<i64> = (1..h).filter(|&p| c.iter().all(|&ci| crate::exact::gcd_i64(p, ci) == 1)).collect();
    for &p in &tested {
        if !exps.contains(&p) {
            return Err(ArrangeError::TheoremViolation(format!(
                "{p} is prime to all highest-root coefficients and < h^J = {h}, but is not an exponent {exps:?}"
            )));
        }
    }
    Ok(tested)
}

/// The numerical invariants of `Φ^J` reported in the tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrangementStats {
    pub hyperplanes: usize,
    pub chambers: u64,
    pub restricted_weyl_order: u128,
    pub levi_class_size: usize,
    pub coxeter_h: i64,
    pub exponents: Vec<i64>,
    pub char_poly: Vec<i64>,
    pub coxeter: CoxeterNumber,
    pub levi_class: Vec<Vec<usize>>,
    pub sommers_tested: Vec<i64>,
    /// Fallbacks used while computing the statistics.
    pub provenance: Vec<String>,
}

/// Computes all table invariants of `Φ^J`, checking the standard identities
/// along the way.
pub fn arrangement_stats(rs: &RootSystem, j: &[usize], budget: Budget) -> Result<ArrangementStats, ArrangeError> {
    let rrs = RestrictedRootSystem::new(rs, j)?;
    let arr = Arrangement::restricted(&rrs);
    let mut provenance = Vec::new();
    let chambers = rrs.all_chambers(budget)?;
    let cp = arr.char_poly(budget)?;
    let exps = exponents(&cp)?;
    let levi = match levi_class(rs, j, budget) {
        Ok(l) => l,
        Err(_) => {
            provenance.push("Levi class from W-orbit scan".into());
            levi_class_bruteforce(rs, j, budget)?
        }
    };
    let weyl = match restricted_weyl(&rrs, budget.capped(crate::restrict::ORBIT_ATTEMPT_STATES)) {
        Ok(w) => w,
        Err(RestrictError::BudgetExceeded { .. }) => {
            provenance.push("restricted Weyl group from chamber lifts (orbit over budget)".into());
            restricted_weyl_from_chambers(&rrs, &chambers)
        }
        Err(e) => return Err(e.into()),
    };
    let cox = coxeter_h(&rrs, &levi);
    let tested = sommers_check(rs, cox.h, &exps)?;
    let stats = ArrangementStats {
        hyperplanes: arr.len(),
        chambers: chambers.len() as u64,
        restricted_weyl_order: weyl.order,
        levi_class_size: levi.len(),
        coxeter_h: cox.h,
        exponents: exps,
        char_poly: cp,
        coxeter: cox,
        levi_class: levi.iter().map(|c| c.k.clone()).collect(),
        sommers_tested: tested,
        provenance,
    };
    check_identities(&stats)?;
    Ok(stats)
}

/// The counting identities every arrangement `𝒜^J` must satisfy.
pub fn check_identities(s: &ArrangementStats) -> Result<(), ArrangeError> {
    let sum: i64 = s.exponents.iter().sum();
    if sum as usize != s.hyperplanes {
        return Err(ArrangeError::TheoremViolation(format!("Σ b_i = {sum} but |𝒜^J| = {}", s.hyperplanes)));
    }
    let prod: i64 = s.exponents.iter().map(|b| 1 + b).product();
    if prod as u64 != s.chambers {
        return Err(ArrangeError::TheoremViolation(format!("Π(1 + b_i) = {prod} but |𝒞^J| = {}", s.chambers)));
    }
    if s.levi_class_size as u128 * s.restricted_weyl_order != s.chambers as u128 {
        return Err(ArrangeError::TheoremViolation(format!(
            "|𝒦_J|·|W^J| = {}·{} but |𝒞^J| = {}",
            s.levi_class_size, s.restricted_weyl_order, s.chambers
        )));
    }
    if zaslavsky_count(&s.char_poly) != s.chambers {
        return Err(ArrangeError::TheoremViolation("|χ(−1)| differs from the chamber count".into()));
    }
    Ok(())
}

/// Partition of chambers into orbits of a group given by permutations of
/// `Φ^J`; returns the orbit sizes.
pub fn chamber_orbits(rrs: &RestrictedRootSystem, chambers: &[u128], group: &[Vec<u16>]) -> Vec<usize> {
    let mut seen: HashMap<u128, usize> = HashMap::new();
    let mut sizes = Vec::new();
    for &c in chambers {
        if seen.contains_key(&c) {
            continue;
        }
        let orbit: HashSet<u128> = group.iter().map(|g| rrs.permute_chamber(g, c)).collect();
        for &o in &orbit {
            seen.insert(o, sizes.len());
        }
        sizes.push(orbit.len());
    }
    sizes
}

/// Members `K` of `𝒦_J` obtained from chamber lifts, for cross-checking.
pub fn levi_class_from_chambers(rrs: &RestrictedRootSystem, budget: Budget) -> Result<Vec<Vec<usize>>, ArrangeError> {
    let chambers = rrs.all_chambers(budget)?;
    let lift = lift_chambers(rrs, &chambers);
    let mut ks = lift.k_of_chamber;
    ks.sort();
    ks.dedup();
    Ok(ks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    #[test]
    fn boolean_arrangement_exponents() {
        let a = Arrangement::new(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let cp = a.char_poly(Budget::default()).unwrap();
        assert_eq!(exponents(&cp).unwrap(), vec![1, 1, 1]);
        assert_eq!(zaslavsky_count(&cp), 8);
    }

    #[test]
    fn single_hyperplane() {
        let a = Arrangement::new(4, &[vec![1, 2, 0, 0]]);
        assert_eq!(zaslavsky_count(&a.char_poly(Budget::default()).unwrap()), 2);
    }

    #[test]
    fn non_splitting_is_reported() {
        // t^2 + 1
        assert!(matches!(exponents(&[1, 0, 1]), Err(ArrangeError::NonSplitting(_))));
    }

    #[test]
    fn g2_full_row() {
        let rs = RootSystem::build(CartanType::G, 2).unwrap();
        let s = arrangement_stats(&rs, &[], Budget::default()).unwrap();
        assert_eq!((s.hyperplanes, s.chambers, s.restricted_weyl_order), (6, 12, 12));
        assert_eq!((s.levi_class_size, s.coxeter_h), (1, 6));
        assert_eq!(s.exponents, vec![1, 5]);
        assert_eq!(s.sommers_tested, vec![1, 5]);
        let s = arrangement_stats(&rs, &[0, 1], Budget::default()).unwrap();
        assert_eq!((s.hyperplanes, s.chambers, s.coxeter_h), (0, 1, 1));
        assert!(s.exponents.is_empty());
    }

    #[test]
    fn e7_a3_plus_a2() {
        let rs = RootSystem::build(CartanType::E, 7).unwrap();
        let s = arrangement_stats(&rs, &[0, 2, 4, 5, 6], Budget::default()).unwrap();
        assert_eq!((s.hyperplanes, s.chambers, s.restricted_weyl_order, s.levi_class_size), (6, 12, 4, 3));
        assert_eq!(s.coxeter_h, 6);
        assert!(!s.coxeter.standard);
        assert_eq!(s.exponents, vec![1, 5]);
    }
}
