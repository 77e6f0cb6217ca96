//! Simplicial cochain complexes with the Alexander-Whitney cup product,
//! subcomplexes, cohomology with canonical representatives, induced maps and
//! connecting homomorphisms.
//!
//! Sign conventions: the coboundary on `C^r` is `d = -(-1)^r (boundary)^T`,
//! and the cup product carries the matching sign
//! `(a u b)(s) = (-1)^{pq} a(front_p s) b(back_q s)` so that the Leibniz rule
//! `d(a u b) = da u b + (-1)^p a u db` holds exactly.

use std::borrow::Cow;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{
    image_basis, is_zero_vector, kernel_basis, rat, zero_vector, LinearSolver, Rational,
    RationalMatrix, SubspaceBasis, Vector,
};
use crate::simplicial::{Chain, SimplicialComplex, SimplicialError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("differential in degree {0} has the wrong shape")]
    Shape(usize),
    #[error("d o d != 0 in degree {0}")]
    NotComplex(usize),
    #[error("map does not commute with the differentials in degree {0}")]
    NotCochainMap(usize),
    #[error("subspace in degree {0} is not closed under the differential")]
    NotClosed(usize),
    #[error("sequence is not exact in degree {degree}: {reason}")]
    NotExact { degree: usize, reason: String },
    #[error("degree mismatch: cochain of degree {cochain}, chain of degree {chain}")]
    DegreeMismatch { cochain: usize, chain: usize },
    #[error("vector in degree {0} is not a cocycle of the expected complex")]
    NotCocycle(usize),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// Finite cochain complex `C^0 -> C^1 -> ... ` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    d: Vec<RationalMatrix>,
    labels: Vec<Vec<String>>,
}

impl CochainComplex {
    /// `d[r]` maps degree `r` to degree `r + 1`; the last one has zero rows.
    pub fn new(
        dims: Vec<usize>,
        d: Vec<RationalMatrix>,
        labels: Vec<Vec<String>>,
    ) -> Result<Self, CochainError> {
        if d.len() != dims.len() || labels.len() != dims.len() {
            return Err(CochainError::Shape(dims.len()));
        }
        for r in 0..dims.len() {
            let target = dims.get(r + 1).copied().unwrap_or(0);
            if d[r].rows() != target || d[r].cols() != dims[r] || labels[r].len() != dims[r] {
                return Err(CochainError::Shape(r));
            }
            if r + 1 < dims.len() && !d[r + 1].mul(&d[r]).is_zero() {
                return Err(CochainError::NotComplex(r));
            }
        }
        Ok(CochainComplex { dims, d, labels })
    }

    pub fn zero() -> Self {
        CochainComplex { dims: Vec::new(), d: Vec::new(), labels: Vec::new() }
    }

    /// Number of stored degrees; every degree at or beyond it is zero.
    pub fn num_degrees(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, r: usize) -> usize {
        self.dims.get(r).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self, r: usize) -> &[String] {
        self.labels.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `d^r : C^r -> C^{r+1}`.
    pub fn differential(&self, r: usize) -> Cow<'_, RationalMatrix> {
        match self.d.get(r) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(RationalMatrix::zeros(0, 0)),
        }
    }

    /// `d^{r-1} : C^{r-1} -> C^r`, the zero map out of `0` when `r = 0`.
    pub fn incoming(&self, r: usize) -> Cow<'_, RationalMatrix> {
        if r == 0 {
            Cow::Owned(RationalMatrix::zeros(self.dim(0), 0))
        } else if r > self.dims.len() {
            Cow::Owned(RationalMatrix::zeros(0, 0))
        } else {
            self.differential(r - 1)
        }
    }

    pub fn apply_d(&self, r: usize, v: &[Rational]) -> Vector {
        self.differential(r).mul_vec(v)
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|r| self.dim(r) - self.differential(r).rank() - self.incoming(r).rank())
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(r, &n)| if r % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// Alexander-Whitney cup product on the cochains of a simplicial complex.
/// `tables[m][p][s] = (front, back)` gives, for the `s`-th `m`-simplex, the
/// indices of its front `p`-face and back `(m - p)`-face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupStructure {
    dims: Vec<usize>,
    tables: Vec<Vec<Vec<(usize, usize)>>>,
}

impl CupStructure {
    pub fn new(k: &SimplicialComplex) -> Self {
        let top = k.dimension().map_or(0, |d| d + 1);
        let dims = (0..top).map(|d| k.count(d)).collect();
        let tables = (0..top)
            .map(|m| {
                (0..=m)
                    .map(|p| {
                        k.simplices(m)
                            .iter()
                            .map(|s| {
                                let front = k.index_of(&s.front(p)).expect("front face");
                                let back = k.index_of(&s.back(p)).expect("back face");
                                (front, back)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        CupStructure { dims, tables }
    }

    pub fn dim(&self, r: usize) -> usize {
        self.dims.get(r).copied().unwrap_or(0)
    }

    /// Cup product of `a in C^p` and `b in C^q`.
    pub fn cup(&self, a: &[Rational], p: usize, b: &[Rational], q: usize) -> Vector {
        assert_eq!(a.len(), self.dim(p), "left factor has wrong length for degree {p}");
        assert_eq!(b.len(), self.dim(q), "right factor has wrong length for degree {q}");
        let m = p + q;
        let Some(table) = self.tables.get(m) else { return Vec::new() };
        let sign = if (p * q).is_multiple_of(2) { rat(1) } else { rat(-1) };
        table[p]
            .iter()
            .map(|&(f, bk)| {
                if a[f] == rat(0) || b[bk] == rat(0) {
                    rat(0)
                } else {
                    &sign * &a[f] * &b[bk]
                }
            })
            .collect()
    }

    /// Nonzero entries `(i, j, target, sign)` of the degree `(p, q)` table.
    pub fn table(&self, p: usize, q: usize) -> Vec<(usize, usize, usize, i8)> {
        let sign = if (p * q).is_multiple_of(2) { 1 } else { -1 };
        self.tables
            .get(p + q)
            .map(|t| t[p].iter().enumerate().map(|(s, &(f, b))| (f, b, s, sign)).collect())
            .unwrap_or_default()
    }
}

/// A homogeneous cochain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub coeffs: Vector,
}

impl Cochain {
    pub fn zero(degree: usize, len: usize) -> Self {
        Cochain { degree, coeffs: zero_vector(len) }
    }

    pub fn dual(degree: usize, len: usize, index: usize) -> Self {
        Cochain { degree, coeffs: crate::linalg::unit_vector(len, index) }
    }
}

/// Evaluate a cochain on a chain of the same degree.
pub fn integrate(phi: &Cochain, xi: &Chain) -> Result<Rational, CochainError> {
    if phi.degree != xi.degree || phi.coeffs.len() != xi.coeffs.len() {
        return Err(CochainError::DegreeMismatch { cochain: phi.degree, chain: xi.degree });
    }
    Ok(crate::linalg::dot(&phi.coeffs, &xi.coeffs))
}

/// Simplicial cochains of `k` with its cup product.
pub fn simplicial_cochains(k: &SimplicialComplex) -> (CochainComplex, CupStructure) {
    let top = k.dimension().map_or(0, |d| d + 1);
    let dims: Vec<usize> = (0..top).map(|d| k.count(d)).collect();
    let d: Vec<RationalMatrix> = (0..top)
        .map(|r| {
            if r + 1 < top {
                let sign = if r % 2 == 0 { rat(-1) } else { rat(1) };
                k.boundary_matrix(r + 1).transpose().scale(&sign)
            } else {
                RationalMatrix::zeros(0, dims[r])
            }
        })
        .collect();
    let labels = (0..top)
        .map(|r| k.simplices(r).iter().map(ToString::to_string).collect())
        .collect();
    let complex = CochainComplex::new(dims, d, labels).expect("simplicial coboundary squares to zero");
    (complex, CupStructure::new(k))
}

/// Restriction `C^r(K) -> C^r(A)` in every degree of `K`.
pub fn restriction_map(
    k: &SimplicialComplex,
    a: &SimplicialComplex,
) -> Result<Vec<RationalMatrix>, CochainError> {
    a.is_subcomplex_of(k)?;
    let top = k.dimension().map_or(0, |d| d + 1);
    Ok((0..top)
        .map(|r| {
            let mut m = RationalMatrix::zeros(a.count(r), k.count(r));
            for (i, s) in a.simplices(r).iter().enumerate() {
                m.set(i, k.index_of(s).expect("subcomplex"), rat(1));
            }
            m
        })
        .collect())
}

/// Per-degree linear maps between two complexes that commute with `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainMap {
    maps: Vec<RationalMatrix>,
}

impl CochainMap {
    pub fn new(
        source: &CochainComplex,
        target: &CochainComplex,
        maps: Vec<RationalMatrix>,
    ) -> Result<Self, CochainError> {
        let count = source.num_degrees().max(target.num_degrees());
        if maps.len() != count {
            return Err(CochainError::Shape(maps.len()));
        }
        for (r, f) in maps.iter().enumerate() {
            if f.rows() != target.dim(r) || f.cols() != source.dim(r) {
                return Err(CochainError::Shape(r));
            }
        }
        for r in 0..count {
            let up = maps.get(r + 1);
            let left = match up {
                Some(f1) => f1.mul(&pad(&source.differential(r), source.dim(r + 1), source.dim(r))),
                None => RationalMatrix::zeros(0, source.dim(r)),
            };
            let right = match up {
                Some(_) => pad(&target.differential(r), target.dim(r + 1), target.dim(r)).mul(&maps[r]),
                None => RationalMatrix::zeros(0, source.dim(r)),
            };
            if left != right {
                return Err(CochainError::NotCochainMap(r));
            }
        }
        Ok(CochainMap { maps })
    }

    pub fn identity(c: &CochainComplex) -> Self {
        CochainMap { maps: (0..c.num_degrees()).map(|r| RationalMatrix::identity(c.dim(r))).collect() }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Self {
        let count = source.num_degrees().max(target.num_degrees());
        CochainMap { maps: (0..count).map(|r| RationalMatrix::zeros(target.dim(r), source.dim(r))).collect() }
    }

    pub fn degree_map(&self, r: usize) -> Cow<'_, RationalMatrix> {
        match self.maps.get(r) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(RationalMatrix::zeros(0, 0)),
        }
    }

    pub fn maps(&self) -> &[RationalMatrix] {
        &self.maps
    }

    /// `other o self`.
    pub fn then(&self, other: &CochainMap) -> CochainMap {
        let count = self.maps.len().max(other.maps.len());
        let maps = (0..count)
            .map(|r| {
                let f = self.degree_map(r);
                let g = other.degree_map(r);
                if g.cols() == f.rows() {
                    g.mul(&f)
                } else {
                    RationalMatrix::zeros(g.rows(), f.cols())
                }
            })
            .collect();
        CochainMap { maps }
    }
}

/// Fix up the `0 x 0` placeholder of an out-of-range differential.
fn pad(m: &RationalMatrix, rows: usize, cols: usize) -> RationalMatrix {
    if m.rows() == rows && m.cols() == cols {
        m.clone()
    } else {
        RationalMatrix::zeros(rows, cols)
    }
}

/// A complex realized inside an ambient complex by per-degree bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubComplex {
    pub complex: CochainComplex,
    pub inclusion: CochainMap,
}

impl SubComplex {
    /// Subcomplex spanned by `bases`, one per degree of `ambient`.
    pub fn from_subspaces(
        ambient: &CochainComplex,
        bases: &[SubspaceBasis],
    ) -> Result<Self, CochainError> {
        let count = ambient.num_degrees();
        if bases.len() != count {
            return Err(CochainError::Shape(bases.len()));
        }
        let inclusions: Vec<RationalMatrix> = bases.iter().map(SubspaceBasis::as_matrix).collect();
        let mut d = Vec::with_capacity(count);
        for r in 0..count {
            if r + 1 < count {
                let image = ambient.differential(r).mul(&inclusions[r]);
                let dr = crate::linalg::solve_matrix(&inclusions[r + 1], &image)
                    .ok_or(CochainError::NotClosed(r))?;
                d.push(dr);
            } else {
                d.push(RationalMatrix::zeros(0, bases[r].dim()));
            }
        }
        let dims = bases.iter().map(SubspaceBasis::dim).collect();
        let labels = bases
            .iter()
            .enumerate()
            .map(|(r, b)| (0..b.dim()).map(|i| format!("b{r}.{i}")).collect())
            .collect();
        let complex = CochainComplex::new(dims, d, labels)?;
        let inclusion = CochainMap::new(&complex, ambient, inclusions)?;
        Ok(SubComplex { complex, inclusion })
    }
}

/// `C^*(K, A)`: dual cochains of the simplices of `K` outside `A`, included into `C^*(K)`.
pub fn relative_complex(
    k: &SimplicialComplex,
    a: &SimplicialComplex,
    ck: &CochainComplex,
) -> Result<SubComplex, CochainError> {
    a.is_subcomplex_of(k)?;
    let top = ck.num_degrees();
    let mut bases = Vec::with_capacity(top);
    let mut labels = Vec::with_capacity(top);
    for r in 0..top {
        let n = k.count(r);
        let outside: Vec<usize> =
            (0..n).filter(|&i| !a.contains(&k.simplices(r)[i])).collect();
        labels.push(outside.iter().map(|&i| k.simplices(r)[i].to_string()).collect::<Vec<_>>());
        bases.push(SubspaceBasis::span(
            n,
            &outside.iter().map(|&i| crate::linalg::unit_vector(n, i)).collect::<Vec<_>>(),
        ));
    }
    let mut sub = SubComplex::from_subspaces(ck, &bases)?;
    sub.complex.labels = labels;
    Ok(sub)
}

/// Cohomology in one degree with canonical cocycle representatives.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    pub degree: usize,
    pub representatives: Vec<Vector>,
    cochain_dim: usize,
    solver: LinearSolver,
}

impl CohomologyBasis {
    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn cochain_dim(&self) -> usize {
        self.cochain_dim
    }

    /// Coordinates of the class of `cocycle`; `None` if it is not a cocycle.
    pub fn coordinates(&self, cocycle: &[Rational]) -> Option<Vector> {
        let mut x = self.solver.solve(cocycle)?;
        x.truncate(self.representatives.len());
        Some(x)
    }

    /// True if `cocycle` represents the zero class.
    pub fn is_exact(&self, cocycle: &[Rational]) -> bool {
        self.coordinates(cocycle).is_some_and(|c| is_zero_vector(&c))
    }
}

pub fn cohomology(c: &CochainComplex, r: usize) -> CohomologyBasis {
    let n = c.dim(r);
    let cycles = if n == 0 {
        SubspaceBasis::empty(0)
    } else {
        kernel_basis(&pad(&c.differential(r), c.dim(r + 1), n))
    };
    let boundaries = if n == 0 { SubspaceBasis::empty(0) } else { image_basis(&c.incoming(r)) };
    // reduce cycles modulo the canonical boundary basis, then echelonize
    let reduced: Vec<Vector> = cycles
        .vectors()
        .iter()
        .map(|z| {
            let mut z = z.clone();
            for (b, &p) in boundaries.vectors().iter().zip(boundaries.pivots()) {
                let coeff = z[p].clone();
                if coeff != rat(0) {
                    for (x, y) in z.iter_mut().zip(b) {
                        if *y != rat(0) {
                            *x -= &coeff * y;
                        }
                    }
                }
            }
            z
        })
        .collect();
    let reps = SubspaceBasis::span(n, &reduced);
    debug_assert_eq!(reps.dim() + boundaries.dim(), cycles.dim());
    let mut columns = reps.vectors().to_vec();
    columns.extend(boundaries.vectors().iter().cloned());
    let solver = LinearSolver::new(&RationalMatrix::from_columns(n, &columns));
    CohomologyBasis { degree: r, representatives: reps.vectors().to_vec(), cochain_dim: n, solver }
}

pub fn cohomology_all(c: &CochainComplex) -> Vec<CohomologyBasis> {
    (0..c.num_degrees()).map(|r| cohomology(c, r)).collect()
}

/// Matrix of `H^r(f)` in the given cohomology bases.
pub fn induced_map(
    f: &CochainMap,
    source: &CohomologyBasis,
    target: &CohomologyBasis,
) -> Result<RationalMatrix, CochainError> {
    let r = source.degree;
    let fr = f.degree_map(r);
    let columns: Option<Vec<Vector>> = source
        .representatives
        .iter()
        .map(|rep| {
            let image = if fr.cols() == rep.len() { fr.mul_vec(rep) } else { zero_vector(target.cochain_dim) };
            target.coordinates(&image)
        })
        .collect();
    let columns = columns.ok_or(CochainError::NotCocycle(r))?;
    Ok(RationalMatrix::from_columns(target.dimension(), &columns))
}

/// `0 -> first -inj-> middle -surj-> third -> 0`, exact in every degree.
#[derive(Debug, Clone, Copy)]
pub struct ShortExactSequence<'a> {
    pub first: &'a CochainComplex,
    pub middle: &'a CochainComplex,
    pub third: &'a CochainComplex,
    pub inj: &'a CochainMap,
    pub surj: &'a CochainMap,
}

impl<'a> ShortExactSequence<'a> {
    pub fn new(
        first: &'a CochainComplex,
        middle: &'a CochainComplex,
        third: &'a CochainComplex,
        inj: &'a CochainMap,
        surj: &'a CochainMap,
    ) -> Result<Self, CochainError> {
        let count = first.num_degrees().max(middle.num_degrees()).max(third.num_degrees());
        for r in 0..count {
            let i = inj.degree_map(r);
            let s = surj.degree_map(r);
            let fail = |reason: &str| CochainError::NotExact { degree: r, reason: reason.into() };
            if first.dim(r) + third.dim(r) != middle.dim(r) {
                return Err(fail("dimensions do not add up"));
            }
            if first.dim(r) > 0 && i.rank() != first.dim(r) {
                return Err(fail("first map is not injective"));
            }
            if third.dim(r) > 0 && s.rank() != third.dim(r) {
                return Err(fail("second map is not surjective"));
            }
            if first.dim(r) > 0 && third.dim(r) > 0 && !s.mul(&i).is_zero() {
                return Err(fail("composite is not zero"));
            }
        }
        Ok(ShortExactSequence { first, middle, third, inj, surj })
    }

    /// Given a lift `v` of a cocycle of `third`, the cocycle `u` of `first` with `inj(u) = dv`.
    pub fn connecting_image(&self, r: usize, lift: &[Rational]) -> Result<Vector, CochainError> {
        let dv = self.middle.apply_d(r, lift);
        let inj = self.inj.degree_map(r + 1);
        if self.first.dim(r + 1) == 0 {
            return if is_zero_vector(&dv) {
                Ok(Vec::new())
            } else {
                Err(CochainError::NotCocycle(r))
            };
        }
        crate::linalg::solve(&inj, &dv).ok_or(CochainError::NotCocycle(r))
    }

    /// Some preimage of `w` under the surjection.
    pub fn lift(&self, r: usize, w: &[Rational]) -> Result<Vector, CochainError> {
        if self.middle.dim(r) == 0 {
            return Ok(Vec::new());
        }
        crate::linalg::solve(&self.surj.degree_map(r), w).ok_or(CochainError::NotExact {
            degree: r,
            reason: "cochain has no preimage".into(),
        })
    }
}

/// Matrix of `delta : H^r(third) -> H^{r+1}(first)`.
pub fn connecting_homomorphism(
    ses: &ShortExactSequence<'_>,
    third: &CohomologyBasis,
    first_next: &CohomologyBasis,
) -> Result<RationalMatrix, CochainError> {
    let r = third.degree;
    let mut columns = Vec::with_capacity(third.dimension());
    for w in &third.representatives {
        let v = ses.lift(r, w)?;
        let u = ses.connecting_image(r, &v)?;
        columns.push(first_next.coordinates(&u).ok_or(CochainError::NotCocycle(r + 1))?);
    }
    Ok(RationalMatrix::from_columns(first_next.dimension(), &columns))
}

/// All maps of the cohomology long exact sequence of a short exact sequence.
#[derive(Debug, Clone, Serialize)]
pub struct LongExactSequence {
    pub first_betti: Vec<usize>,
    pub middle_betti: Vec<usize>,
    pub third_betti: Vec<usize>,
    #[serde(skip)]
    pub inj: Vec<RationalMatrix>,
    #[serde(skip)]
    pub surj: Vec<RationalMatrix>,
    /// `connecting[r] : H^r(third) -> H^{r+1}(first)`.
    #[serde(skip)]
    pub connecting: Vec<RationalMatrix>,
    pub connecting_ranks: Vec<usize>,
}

pub fn long_exact_sequence(
    ses: &ShortExactSequence<'_>,
    h_first: &[CohomologyBasis],
    h_middle: &[CohomologyBasis],
    h_third: &[CohomologyBasis],
) -> Result<LongExactSequence, CochainError> {
    let count = h_first.len().max(h_middle.len()).max(h_third.len());
    let empty = |r: usize| CohomologyBasis {
        degree: r,
        representatives: Vec::new(),
        cochain_dim: 0,
        solver: LinearSolver::new(&RationalMatrix::zeros(0, 0)),
    };
    let get = |h: &[CohomologyBasis], r: usize| h.get(r).cloned().unwrap_or_else(|| empty(r));
    let mut inj = Vec::with_capacity(count);
    let mut surj = Vec::with_capacity(count);
    let mut connecting = Vec::with_capacity(count);
    for r in 0..count {
        inj.push(induced_map(ses.inj, &get(h_first, r), &get(h_middle, r))?);
        surj.push(induced_map(ses.surj, &get(h_middle, r), &get(h_third, r))?);
        connecting.push(connecting_homomorphism(ses, &get(h_third, r), &get(h_first, r + 1))?);
    }
    let dim = |h: &[CohomologyBasis], r: usize| h.get(r).map_or(0, CohomologyBasis::dimension);
    let rank = |m: &RationalMatrix| m.rank();
    for r in 0..count {
        let fail = |spot: &str| CochainError::NotExact { degree: r, reason: format!("long exact sequence fails at {spot}") };
        let delta_in = if r == 0 { 0 } else { rank(&connecting[r - 1]) };
        if delta_in + rank(&inj[r]) != dim(h_first, r) {
            return Err(fail("first term"));
        }
        if rank(&inj[r]) + rank(&surj[r]) != dim(h_middle, r) {
            return Err(fail("middle term"));
        }
        if rank(&surj[r]) + rank(&connecting[r]) != dim(h_third, r) {
            return Err(fail("third term"));
        }
        let zero_composite = |a: &RationalMatrix, b: &RationalMatrix| {
            a.cols() != b.rows() || a.mul(b).is_zero()
        };
        if !zero_composite(&surj[r], &inj[r]) || !zero_composite(&connecting[r], &surj[r]) {
            return Err(fail("composite"));
        }
        if r + 1 < count && !zero_composite(&inj[r + 1], &connecting[r]) {
            return Err(fail("composite"));
        }
    }
    let betti = |h: &[CohomologyBasis]| (0..count).map(|r| dim(h, r)).collect();
    Ok(LongExactSequence {
        first_betti: betti(h_first),
        middle_betti: betti(h_middle),
        third_betti: betti(h_third),
        connecting_ranks: connecting.iter().map(RationalMatrix::rank).collect(),
        inj,
        surj,
        connecting,
    })
}

/// Bilinear pairing `(a, b) -> <a u b, chain>` in fixed bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    pub degree: usize,
    pub left_dim: usize,
    pub right_dim: usize,
    pub entries: RationalMatrix,
    pub rank: usize,
}

impl PairingMatrix {
    /// Square of full rank; vacuously true at `0 x 0`.
    pub fn nondegenerate(&self) -> bool {
        self.left_dim == self.right_dim && self.rank == self.left_dim
    }

    pub fn neg(&self) -> Self {
        PairingMatrix { entries: self.entries.neg(), ..self.clone() }
    }
}

/// `P[i][j] = < left[i] u right[j], chain >`, with `left` in degree `p` of
/// the ambient cochains and `chain` of degree `p + q`.
pub fn evaluate_pairing(
    cup: &CupStructure,
    left: &[Vector],
    p: usize,
    right: &[Vector],
    q: usize,
    chain: &Chain,
) -> PairingMatrix {
    let mut entries = RationalMatrix::zeros(left.len(), right.len());
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            let product = cup.cup(a, p, b, q);
            if product.is_empty() {
                continue;
            }
            entries.set(i, j, crate::linalg::dot(&product, &chain.coeffs));
        }
    }
    let rank = entries.rank();
    PairingMatrix { degree: p, left_dim: left.len(), right_dim: right.len(), entries, rank }
}
