//! Exact rational linear algebra.
//!
//! Everything downstream (coboundaries, restriction maps, cohomology
//! coordinates, pairing matrices) is expressed through [`RationalMatrix`] and
//! [`SubspaceBasis`]. Elimination is fraction-free on integer-scaled rows and
//! only divides once, in the final normalization to reduced row echelon form.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};
use num::BigRational;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Dense rational column vector.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn unit_vector(len: usize, i: usize) -> Vector {
    let mut v = zero_vector(len);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vector(v: &[Rational], c: &Rational) -> Vector {
    v.iter().map(|x| x * c).collect()
}

/// How a complement of a subspace is selected among standard basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplementStrategy {
    /// Standard vectors at the non-pivot rows of the echelon form, pivots taken from the lowest index.
    Lex,
    /// Same, with pivots taken from the highest index.
    ReverseLex,
}

impl ComplementStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            ComplementStrategy::Lex => "lex",
            ComplementStrategy::ReverseLex => "reverse-lex",
        }
    }
}

impl std::str::FromStr for ComplementStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(ComplementStrategy::Lex),
            "reverse-lex" => Ok(ComplementStrategy::ReverseLex),
            other => Err(format!("unknown complement strategy `{other}`")),
        }
    }
}

/// Sparse rational matrix. Only nonzero entries are stored, iterated row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::one());
        }
        m
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[Vec<Rational>]) -> Self {
        assert_eq!(data.len(), rows, "row count mismatch");
        let mut m = Self::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "column count mismatch");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            data.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Self::from_dense(rows, cols, &dense)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        Self::from_columns(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if value.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), value);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, value: &Rational) {
        let current = self.get(i, j);
        self.set(i, j, current + value);
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![zero_vector(self.cols); self.rows];
        for (&(i, j), x) in &self.entries {
            out[i][j] = x.clone();
        }
        out
    }

    pub fn column(&self, j: usize) -> Vector {
        let mut v = zero_vector(self.rows);
        for (&(i, jj), x) in &self.entries {
            if jj == j {
                v[i] = x.clone();
            }
        }
        v
    }

    pub fn columns(&self) -> Vec<Vector> {
        let mut out = vec![zero_vector(self.rows); self.cols];
        for (&(i, j), x) in &self.entries {
            out[j][i] = x.clone();
        }
        out
    }

    pub fn row(&self, i: usize) -> Vector {
        let mut v = zero_vector(self.cols);
        for (&(_, j), x) in self.entries.range((i, 0)..(i + 1, 0)) {
            v[j] = x.clone();
        }
        v
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for (&(i, j), x) in &self.entries {
            m.entries.insert((j, i), x.clone());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut by_row: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (&(i, j), x) in &other.entries {
            by_row[i].push((j, x));
        }
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &by_row[k] {
                *acc.entry((i, j)).or_insert_with(Rational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        RationalMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = zero_vector(self.rows);
        for (&(i, j), x) in &self.entries {
            if !v[j].is_zero() {
                out[i] += x * &v[j];
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let mut m = self.clone();
        for (&(i, j), x) in &other.entries {
            m.add_at(i, j, x);
        }
        m
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        if c.is_zero() {
            return m;
        }
        for (&k, x) in &self.entries {
            m.entries.insert(k, x * c);
        }
        m
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    /// Columns `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = self.clone();
        m.cols += other.cols;
        for (&(i, j), x) in &other.entries {
            m.entries.insert((i, j + self.cols), x.clone());
        }
        m
    }

    /// Rows `[self ; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut m = self.clone();
        m.rows += other.rows;
        for (&(i, j), x) in &other.entries {
            m.entries.insert((i + self.rows, j), x.clone());
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for (new_j, &j) in cols.iter().enumerate() {
            for (i, x) in self.column(j).into_iter().enumerate() {
                m.set(i, new_j, x);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).0.len()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn determinant(&self) -> Option<Rational> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(Rational::one());
        }
        let (int_rows, scales) = integer_rows(self);
        let (echelon, pivots, swaps) = bareiss(int_rows, self.cols);
        if pivots.len() < self.rows {
            return Some(Rational::zero());
        }
        let det = echelon[self.rows - 1][self.cols - 1].clone();
        let mut value = Rational::from_integer(det);
        for s in scales {
            value /= Rational::from_integer(s);
        }
        if swaps % 2 == 1 {
            value = -value;
        }
        Some(value)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let (pivots, reduced, transform) = rref_with_transform(self);
        if pivots.len() != self.rows {
            return None;
        }
        debug_assert_eq!(reduced, Self::identity(self.rows));
        Some(transform)
    }
}

/// Scale every row by the lcm of its denominators so it becomes integral.
fn integer_rows(m: &RationalMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows);
    let mut scales = Vec::with_capacity(m.rows);
    let dense = m.to_dense();
    for row in dense {
        let mut lcm = BigInt::one();
        for x in &row {
            if !x.is_zero() {
                lcm = lcm.lcm(x.denom());
            }
        }
        let int_row: Vec<BigInt> = row
            .iter()
            .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        rows.push(int_row);
        scales.push(lcm);
    }
    (rows, scales)
}

/// Fraction-free forward elimination. Pivots are chosen column by column,
/// taking the lowest row index with a nonzero entry. Returns the echelon
/// rows, the pivot columns and the number of row swaps.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>, usize) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c..cols {
                let value = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { value } else { value / &prev };
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (a, pivots, swaps)
}

/// Reduced row echelon form together with the ascending pivot columns.
pub fn rref(m: &RationalMatrix) -> (Vec<usize>, RationalMatrix) {
    let (int_rows, _) = integer_rows(m);
    let (echelon, pivots, _) = bareiss(int_rows, m.cols);
    let mut rows: Vec<Vector> = echelon
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect();
    for (r, &c) in pivots.iter().enumerate().rev() {
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().take(r) {
            let factor = row[c].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
    }
    let mut reduced = RationalMatrix::zeros(m.rows, m.cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            reduced.set(i, j, x);
        }
    }
    (pivots, reduced)
}

/// Returns `(pivots, reduced, transform)` with `transform * m == reduced`
/// and `transform` invertible.
pub fn rref_with_transform(m: &RationalMatrix) -> (Vec<usize>, RationalMatrix, RationalMatrix) {
    let augmented = m.hstack(&RationalMatrix::identity(m.rows));
    let (pivots, reduced) = rref(&augmented);
    let left: Vec<usize> = (0..m.cols).collect();
    let right: Vec<usize> = (m.cols..m.cols + m.rows).collect();
    let pivots = pivots.into_iter().filter(|&c| c < m.cols).collect();
    (pivots, reduced.select_columns(&left), reduced.select_columns(&right))
}

/// Linearly independent vectors in canonical (reduced column echelon) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vector>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    /// Canonical basis of the span of `vectors`.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::empty(ambient_dim);
        }
        let m = RationalMatrix::from_rows(ambient_dim, vectors);
        let (pivots, reduced) = rref(&m);
        let vectors = (0..pivots.len()).map(|i| reduced.row(i)).collect();
        SubspaceBasis { ambient_dim, vectors, pivots }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// Rows holding the leading 1 of each basis vector, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn as_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient_dim, &self.vectors)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut residual = v.to_vec();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            let c = residual[p].clone();
            if !c.is_zero() {
                for (x, y) in residual.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        is_zero_vector(&residual)
    }
}

pub fn kernel_basis(m: &RationalMatrix) -> SubspaceBasis {
    let (pivots, reduced) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = unit_vector(m.cols, free);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -reduced.get(r, free);
        }
        vectors.push(v);
    }
    SubspaceBasis::span(m.cols, &vectors)
}

pub fn image_basis(m: &RationalMatrix) -> SubspaceBasis {
    SubspaceBasis::span(m.rows, &m.columns())
}

pub fn complement_basis(sub: &SubspaceBasis, strategy: ComplementStrategy) -> SubspaceBasis {
    let n = sub.ambient_dim;
    match strategy {
        ComplementStrategy::Lex => {
            let mut taken = vec![false; n];
            for &p in sub.pivots() {
                taken[p] = true;
            }
            let vectors: Vec<Vector> =
                (0..n).filter(|&i| !taken[i]).map(|i| unit_vector(n, i)).collect();
            SubspaceBasis::span(n, &vectors)
        }
        ComplementStrategy::ReverseLex => {
            let reversed: Vec<Vector> = sub
                .vectors()
                .iter()
                .map(|v| v.iter().rev().cloned().collect())
                .collect();
            let reversed = SubspaceBasis::span(n, &reversed);
            let mut taken = vec![false; n];
            for &p in reversed.pivots() {
                taken[n - 1 - p] = true;
            }
            let vectors: Vec<Vector> =
                (0..n).filter(|&i| !taken[i]).map(|i| unit_vector(n, i)).collect();
            SubspaceBasis::span(n, &vectors)
        }
    }
}

/// Precomputed elimination of a fixed matrix for repeated solves.
#[derive(Debug, Clone)]
pub struct LinearSolver {
    rows: usize,
    cols: usize,
    pivots: Vec<usize>,
    transform: RationalMatrix,
}

impl LinearSolver {
    pub fn new(m: &RationalMatrix) -> Self {
        let (pivots, _, transform) = rref_with_transform(m);
        LinearSolver { rows: m.rows, cols: m.cols, pivots, transform }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Some `x` with `m x = rhs`, free variables set to zero.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vector> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let c = self.transform.mul_vec(rhs);
        if c[self.pivots.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (r, &p) in self.pivots.iter().enumerate() {
            x[p] = c[r].clone();
        }
        Some(x)
    }
}

pub fn solve(m: &RationalMatrix, rhs: &[Rational]) -> Option<Vector> {
    LinearSolver::new(m).solve(rhs)
}

/// Solve `m X = rhs` column by column.
pub fn solve_matrix(m: &RationalMatrix, rhs: &RationalMatrix) -> Option<RationalMatrix> {
    let solver = LinearSolver::new(m);
    let cols: Option<Vec<Vector>> = rhs.columns().iter().map(|c| solver.solve(c)).collect();
    cols.map(|cols| RationalMatrix::from_columns(m.cols, &cols))
}

/// `"p/q"` with `q > 0`, the wire format for rationals.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn sign_of(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
