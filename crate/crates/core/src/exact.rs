//! Exact rational arithmetic and linear algebra.
//!
//! Everything downstream (labels, coordinates, inner products, polytope
//! bounds) is computed over `Rational`, an arbitrary-precision reduced
//! fraction. There is no floating point anywhere in this module.
//!
//! Besides the dense [`QVector`] / [`QMatrix`] types the module provides
//! - [`solve_linear`]: unique solutions of square or overdetermined systems,
//! - [`feasible`]: exact feasibility of mixed strict / non-strict / equality
//!   systems (a two-phase simplex with Bland's rule, hence deterministic),
//! - [`lattice_hnf`] and [`dual_lattice_basis`]: Hermite normal forms and the
//!   lattice `{p : F p ∈ ℤ^k}` cut out by integrality of functionals,
//! - [`int_rank`]: a fast exact rank for small integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Errors raised by the exact linear-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("linear system is underdetermined (rank {rank} < {unknowns} unknowns)")]
    Underdetermined { rank: usize, unknowns: usize },
    #[error("matrix entry {0} is not an integer")]
    NotInteger(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Builds the rational `n/d`. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n`.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as the exact fraction string `"num/den"`.
pub fn fmt_q(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"a/b"`, `"a"` or `"-a/b"` into a rational.
pub fn parse_q(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Largest integer `<= x`.
pub fn floor_q(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Smallest integer `>= x`.
pub fn ceil_q(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

/// Dense rational vector with a fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(pub Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        QVector(vec![Rational::zero(); n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        QVector(v.iter().map(|&x| qi(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    fn check(&self, other: &QVector) -> Result<(), ExactError> {
        if self.dim() != other.dim() {
            return Err(ExactError::ShapeMismatch {
                expected: format!("vector of length {}", self.dim()),
                found: format!("vector of length {}", other.dim()),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &QVector) -> Result<Rational, ExactError> {
        self.check(other)?;
        Ok(dot(&self.0, &other.0))
    }

    pub fn add(&self, other: &QVector) -> Result<QVector, ExactError> {
        self.check(other)?;
        Ok(QVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &QVector) -> Result<QVector, ExactError> {
        self.check(other)?;
        Ok(QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Plain dot product of two equally long slices.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::ShapeMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    /// An empty row list yields a `0 x cols` matrix only through [`QMatrix::zeros`].
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ExactError::ShapeMismatch {
                    expected: format!("row of length {cols}"),
                    found: format!("row of length {}", r.len()),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(QMatrix { rows: rows.len(), cols, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        let r: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        QMatrix::from_rows(&r)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &QVector) -> Result<QVector, ExactError> {
        if v.dim() != self.cols {
            return Err(ExactError::ShapeMismatch {
                expected: format!("vector of length {}", self.cols),
                found: format!("vector of length {}", v.dim()),
            });
        }
        Ok(QVector((0..self.rows).map(|i| dot(self.row(i), &v.0)).collect()))
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::ShapeMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", other.rows),
            });
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn determinant(&self) -> Result<Rational, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::ShapeMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<QMatrix, ExactError> {
        let n = self.rows;
        if n != self.cols {
            return Err(ExactError::ShapeMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", self.rows, self.cols),
            });
        }
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ExactError::Underdetermined { rank: pivots.iter().filter(|&&c| c < n).count(), unknowns: n });
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Solves `A x = b` exactly.
///
/// Returns the unique solution when `rank(A)` equals the number of unknowns
/// and the system is consistent; `NoSolution` if inconsistent and
/// `Underdetermined` if consistent with a positive-dimensional solution set.
pub fn solve_linear(a: &QMatrix, b: &QVector) -> Result<QVector, ExactError> {
    if a.rows() != b.dim() {
        return Err(ExactError::ShapeMismatch {
            expected: format!("right-hand side of length {}", a.rows()),
            found: format!("length {}", b.dim()),
        });
    }
    let n = a.cols();
    let mut aug = QMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b.0[i].clone());
    }
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&n) {
        return Err(ExactError::NoSolution);
    }
    if pivots.len() < n {
        return Err(ExactError::Underdetermined { rank: pivots.len(), unknowns: n });
    }
    Ok(QVector((0..n).map(|i| r.get(i, n).clone()).collect()))
}

/// A system of rational linear constraints in a fixed ambient dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    dim: usize,
    /// `a · x < b`
    pub strict: Vec<(QVector, Rational)>,
    /// `a · x <= b`
    pub nonstrict: Vec<(QVector, Rational)>,
    /// `a · x = b`
    pub equalities: Vec<(QVector, Rational)>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem { dim, ..Default::default() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, a: &QVector) -> Result<(), ExactError> {
        if a.dim() != self.dim {
            return Err(ExactError::ShapeMismatch {
                expected: format!("constraint of dimension {}", self.dim),
                found: format!("dimension {}", a.dim()),
            });
        }
        Ok(())
    }

    pub fn push_strict(&mut self, a: QVector, b: Rational) -> Result<(), ExactError> {
        self.check(&a)?;
        self.strict.push((a, b));
        Ok(())
    }

    pub fn push_nonstrict(&mut self, a: QVector, b: Rational) -> Result<(), ExactError> {
        self.check(&a)?;
        self.nonstrict.push((a, b));
        Ok(())
    }

    pub fn push_equality(&mut self, a: QVector, b: Rational) -> Result<(), ExactError> {
        self.check(&a)?;
        self.equalities.push((a, b));
        Ok(())
    }

    /// Whether `x` satisfies every constraint.
    pub fn satisfied_by(&self, x: &QVector) -> bool {
        self.strict.iter().all(|(a, b)| &dot(&a.0, &x.0) < b)
            && self.nonstrict.iter().all(|(a, b)| &dot(&a.0, &x.0) <= b)
            && self.equalities.iter().all(|(a, b)| &dot(&a.0, &x.0) == b)
    }
}

/// Outcome of a feasibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every constraint (strict ones strictly).
    Witness(QVector),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Witness(_))
    }
}

/// Decides exactly whether a mixed strict / non-strict / equality system has
/// a solution, returning a witness if it does.
///
/// Strict constraints `a·x < b` are handled by maximising a common slack `t`
/// (capped at 1) subject to `a·x + t <= b`; the system is feasible iff the
/// optimum is positive. The simplex uses Bland's rule, so the witness is a
/// deterministic function of the input.
pub fn feasible(sys: &LinearSystem) -> Feasibility {
    let n = sys.dim;
    let has_strict = !sys.strict.is_empty();
    // Variables: u (n), v (n) with x = u - v, then t if needed, then slacks.
    let nx = 2 * n + usize::from(has_strict);
    let t_col = 2 * n;
    let n_ineq = sys.strict.len() + sys.nonstrict.len() + usize::from(has_strict);
    let n_rows = n_ineq + sys.equalities.len();
    let n_vars = nx + n_ineq;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n_rows);
    let mut rhs: Vec<Rational> = Vec::with_capacity(n_rows);
    let mut slack = nx;
    let mut push = |a: &QVector, b: &Rational, t_coef: bool, has_slack: bool| {
        let mut row = vec![Rational::zero(); n_vars];
        for j in 0..n {
            row[j] = a.0[j].clone();
            row[n + j] = -a.0[j].clone();
        }
        if t_coef {
            row[t_col] = Rational::one();
        }
        if has_slack {
            row[slack] = Rational::one();
            slack += 1;
        }
        rows.push(row);
        rhs.push(b.clone());
    };
    for (a, b) in &sys.strict {
        push(a, b, true, true);
    }
    for (a, b) in &sys.nonstrict {
        push(a, b, false, true);
    }
    if has_strict {
        // t <= 1 keeps the slack objective bounded.
        rows.push({
            let mut row = vec![Rational::zero(); n_vars];
            row[t_col] = Rational::one();
            row[slack] = Rational::one();
            row
        });
        rhs.push(Rational::one());
    }
    for (a, b) in &sys.equalities {
        let mut row = vec![Rational::zero(); n_vars];
        for j in 0..n {
            row[j] = a.0[j].clone();
            row[n + j] = -a.0[j].clone();
        }
        rows.push(row);
        rhs.push(b.clone());
    }
    let mut objective = vec![Rational::zero(); n_vars];
    if has_strict {
        objective[t_col] = Rational::one();
    }
    match simplex_max(rows, rhs, &objective) {
        None => Feasibility::Infeasible,
        Some((value, x)) => {
            if has_strict && !value.is_positive() {
                return Feasibility::Infeasible;
            }
            let w = QVector((0..n).map(|j| &x[j] - &x[n + j]).collect());
            debug_assert!(sys.satisfied_by(&w));
            Feasibility::Witness(w)
        }
    }
}

/// Maximises `c · x` subject to `A x = b`, `x >= 0`. Returns `None` when
/// infeasible. The objective must be bounded on the feasible set (callers in
/// this crate guarantee this).
fn simplex_max(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>, c: &[Rational]) -> Option<(Rational, Vec<Rational>)> {
    let m = a.len();
    let n = c.len();
    for i in 0..m {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for v in a[i].iter_mut() {
                *v = -v.clone();
            }
        }
    }
    // Tableau with artificial variables n..n+m; last column is the rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&a[i]);
            row[n + i] = Rational::one();
            row[width - 1] = b[i].clone();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: maximise -(sum of artificials).
    let mut z = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            z[j] -= &row[j];
        }
        z[width - 1] -= &row[width - 1];
    }
    run_simplex(&mut t, &mut z, &mut basis, n + m);
    if z[width - 1].is_negative() {
        return None;
    }
    // Drive remaining artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < t.len() {
        if basis[i] >= n {
            match (0..n).find(|&j| !t[i][j].is_zero()) {
                Some(j) => pivot(&mut t, &mut z, &mut basis, i, j),
                None => {
                    t.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Phase 2 on the original columns.
    for row in t.iter_mut() {
        row.drain(n..n + m);
    }
    let width = n + 1;
    let mut z = vec![Rational::zero(); width];
    for j in 0..n {
        z[j] = -c[j].clone();
    }
    for (r, &bv) in basis.iter().enumerate() {
        if !z[bv].is_zero() {
            let f = z[bv].clone();
            for j in 0..width {
                let v = &z[j] - &f * &t[r][j];
                z[j] = v;
            }
        }
    }
    run_simplex(&mut t, &mut z, &mut basis, n);
    let mut x = vec![Rational::zero(); n];
    for (r, &bv) in basis.iter().enumerate() {
        x[bv] = t[r][width - 1].clone();
    }
    Some((z[width - 1].clone(), x))
}

fn run_simplex(t: &mut [Vec<Rational>], z: &mut [Rational], basis: &mut [usize], n_cols: usize) {
    let rhs = z.len() - 1;
    loop {
        // Bland's rule: smallest improving column, smallest-index leaving variable on ties.
        let Some(col) = (0..n_cols).find(|&j| z[j].is_negative()) else {
            return;
        };
        let mut best: Option<(Rational, usize)> = None;
        for (r, row) in t.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, bi)) => ratio < *br || (ratio == *br && basis[r] < basis[*bi]),
                };
                if better {
                    best = Some((ratio, r));
                }
            }
        }
        let Some((_, row)) = best else {
            // Unbounded; callers only pose bounded problems.
            return;
        };
        pivot(t, z, basis, row, col);
    }
}

fn pivot(t: &mut [Vec<Rational>], z: &mut [Rational], basis: &mut [usize], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for v in t[r].iter_mut() {
        *v = &*v * &inv;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r && !row[c].is_zero() {
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v = &*v - &f * p;
                }
            }
        }
    }
    if !z[c].is_zero() {
        let f = z[c].clone();
        for (v, p) in z.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v = &*v - &f * p;
            }
        }
    }
    basis[r] = c;
}

/// Row-style Hermite normal form of the integer row span of `m`.
///
/// The result has one row per basis vector of the row lattice, is upper
/// triangular in echelon form with positive pivots, and every entry above a
/// pivot lies in `[0, pivot)`.
pub fn lattice_hnf(m: &QMatrix) -> Result<QMatrix, ExactError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut r = Vec::with_capacity(m.cols());
        for x in m.row(i) {
            if !x.is_integer() {
                return Err(ExactError::NotInteger(x.to_string()));
            }
            r.push(x.to_integer());
        }
        rows.push(r);
    }
    let h = hnf_int(rows, m.cols());
    let data: Vec<Rational> = h.iter().flatten().map(|x| Rational::from_integer(x.clone())).collect();
    QMatrix::new(h.len(), m.cols(), data)
}

fn hnf_int(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut pivot_cols = Vec::new();
    for c in 0..cols {
        // Euclid on column c among the remaining rows.
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()).then(a.cmp(&b)));
            let p = nz[0];
            let pr = rows[p].clone();
            for &i in &nz[1..] {
                let f = rows[i][c].div_floor(&pr[c]);
                for j in 0..cols {
                    let v = &rows[i][j] - &f * &pr[j];
                    rows[i][j] = v;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            let mut r = rows.remove(i);
            if r[c].is_negative() {
                r.iter_mut().for_each(|x| *x = -x.clone());
            }
            out.push(r);
            pivot_cols.push(c);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // Reduce entries above pivots into [0, pivot).
    for k in 0..out.len() {
        let c = pivot_cols[k];
        let pr = out[k].clone();
        for i in 0..k {
            let f = out[i][c].div_floor(&pr[c]);
            if !f.is_zero() {
                for j in 0..cols {
                    let v = &out[i][j] - &f * &pr[j];
                    out[i][j] = v;
                }
            }
        }
    }
    out
}

/// Basis (as matrix columns) of the lattice `{p ∈ ℚ^n : F p ∈ ℤ^k}` where
/// the rows of `F` are rational functionals spanning the dual space.
///
/// The row ℤ-span of `F` is put in Hermite normal form `B`; the lattice is
/// then `B^{-1} ℤ^n`.
pub fn dual_lattice_basis(f: &QMatrix) -> Result<QMatrix, ExactError> {
    let n = f.cols();
    let mut den = BigInt::one();
    for i in 0..f.rows() {
        for x in f.row(i) {
            den = den.lcm(x.denom());
        }
    }
    let scale = Rational::from_integer(den.clone());
    let scaled: Vec<Rational> = (0..f.rows()).flat_map(|i| f.row(i).iter().map(|x| x * &scale).collect::<Vec<_>>()).collect();
    let h = lattice_hnf(&QMatrix::new(f.rows(), n, scaled)?)?;
    if h.rows() != n {
        return Err(ExactError::Underdetermined { rank: h.rows(), unknowns: n });
    }
    let inv_scale = scale.recip();
    let b = QMatrix::new(n, n, h.data.iter().map(|x| x * &inv_scale).collect())?;
    b.inverse()
}

/// Exact rank of a small integer matrix.
///
/// Uses fraction-free elimination in `i128` with row-content reduction and
/// falls back to big rationals if an intermediate value would overflow.
pub fn int_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match int_rank_i128(&mut m) {
        Some(r) => r,
        None => {
            let q: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
            QMatrix::from_rows(&q).map(|m| m.rank()).unwrap_or(0)
        }
    }
}

fn int_rank_i128(m: &mut [Vec<i128>]) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).min_by_key(|&i| if m[i][c] == 0 { i128::MAX } else { m[i][c].abs() }).filter(|&i| m[i][c] != 0)
        else {
            continue;
        };
        m.swap(rank, p);
        let pr = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let g = gcd_i128(pr[c], row[c]);
            let (a, b) = (pr[c] / g, row[c] / g);
            let mut content = 0i128;
            for j in c..cols {
                let v = row[j].checked_mul(a)?.checked_sub(pr[j].checked_mul(b)?)?;
                row[j] = v;
                content = gcd_i128(content, v);
            }
            if content > 1 {
                for x in row.iter_mut().skip(c) {
                    *x /= content;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Greatest common divisor of two `i64` values (non-negative result).
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_i128(a as i128, b as i128) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_identity_zero() {
        let x = solve_linear(&QMatrix::identity(3), &QVector::zeros(3)).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn solve_reports_inconsistency_and_rank_deficiency() {
        let a = QMatrix::from_i64_rows(&[vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(solve_linear(&a, &QVector::from_i64(&[1, 3])), Err(ExactError::NoSolution));
        assert_eq!(
            solve_linear(&a, &QVector::from_i64(&[1, 2])),
            Err(ExactError::Underdetermined { rank: 1, unknowns: 2 })
        );
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = QMatrix::identity(2);
        assert!(matches!(a.mul_vec(&QVector::zeros(3)), Err(ExactError::ShapeMismatch { .. })));
        assert!(QVector::zeros(2).dot(&QVector::zeros(3)).is_err());
        assert!(QMatrix::from_i64_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn feasibility_one_dimensional() {
        let mut s = LinearSystem::new(1);
        s.push_strict(QVector::from_i64(&[1]), qi(1)).unwrap();
        s.push_strict(QVector::from_i64(&[-1]), qi(1)).unwrap();
        assert_eq!(feasible(&s), Feasibility::Witness(QVector::from_i64(&[0])));

        let mut s = LinearSystem::new(1);
        s.push_strict(QVector::from_i64(&[1]), qi(0)).unwrap();
        s.push_strict(QVector::from_i64(&[-1]), qi(0)).unwrap();
        assert_eq!(feasible(&s), Feasibility::Infeasible);

        // Closed version of the same system is feasible at the single point 0.
        let mut s = LinearSystem::new(1);
        s.push_nonstrict(QVector::from_i64(&[1]), qi(0)).unwrap();
        s.push_nonstrict(QVector::from_i64(&[-1]), qi(0)).unwrap();
        assert!(feasible(&s).is_feasible());
    }

    #[test]
    fn feasibility_with_equalities() {
        let mut s = LinearSystem::new(2);
        s.push_equality(QVector::from_i64(&[1, 1]), qi(3)).unwrap();
        s.push_strict(QVector::from_i64(&[1, 0]), qi(1)).unwrap();
        s.push_strict(QVector::from_i64(&[0, 1]), qi(3)).unwrap();
        match feasible(&s) {
            Feasibility::Witness(w) => assert!(s.satisfied_by(&w)),
            Feasibility::Infeasible => panic!("expected feasible"),
        }
        s.push_strict(QVector::from_i64(&[0, 1]), qi(2)).unwrap();
        assert_eq!(feasible(&s), Feasibility::Infeasible);
    }

    #[test]
    fn hnf_examples() {
        let id = QMatrix::identity(2);
        assert_eq!(lattice_hnf(&id).unwrap(), id);
        let d = QMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(lattice_hnf(&d).unwrap(), d);
        let m = QMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let h = lattice_hnf(&m).unwrap();
        assert_eq!(h.determinant().unwrap().abs(), qi(2));
        assert_eq!(h, QMatrix::from_i64_rows(&[vec![1, 0], vec![0, 2]]).unwrap());
    }

    #[test]
    fn dual_lattice_of_type_c_functionals() {
        // p1 ± p2 and 2 p_k integral allows half-integer points.
        let f = QMatrix::from_i64_rows(&[vec![1, 1], vec![1, -1], vec![2, 0], vec![0, 2]]).unwrap();
        let l = dual_lattice_basis(&f).unwrap();
        assert_eq!(l.determinant().unwrap().abs(), q(1, 2));
    }

    #[test]
    fn int_rank_matches_rational_rank() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(int_rank(&rows), 2);
        assert_eq!(QMatrix::from_i64_rows(&rows).unwrap().rank(), 2);
    }

    #[test]
    fn fraction_strings_round_trip() {
        let x = q(-24, 7);
        assert_eq!(fmt_q(&x), "-24/7");
        assert_eq!(parse_q("-24/7").unwrap(), x);
        assert_eq!(parse_q("5").unwrap(), qi(5));
        assert!(parse_q("1/0").is_err());
    }
}
