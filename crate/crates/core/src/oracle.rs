//! Independent Betti-number oracle: a chain-level truncation of the link
//! homology, the mapping cone of its composite into `M`, and the comparison
//! with the model.
//!
//! Nothing here touches cochains, cup products or cotruncations; the two
//! pipelines share only the decomposition.

use num::{BigInt, Integer, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{complement_basis, image_basis, kernel_basis, ComplementStrategy, RationalMatrix};
use crate::model::{model_betti, IntersectionModel};
use crate::pair::ManifoldPair;
use crate::simplicial::SimplicialComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("boundary in degree {0} has the wrong shape")]
    Shape(usize),
    #[error("boundary does not square to zero in degree {0}")]
    NotComplex(usize),
    #[error("map does not commute with the boundaries in degree {0}")]
    NotChainMap(usize),
    #[error("cutoff degree must be positive")]
    ZeroCutoff,
}

/// `C_0 <- C_1 <- ...`; `boundaries[r] : C_r -> C_{r-1}`, zero rows for `r = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<RationalMatrix>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<RationalMatrix>) -> Result<Self, OracleError> {
        if dims.len() != boundaries.len() {
            return Err(OracleError::Shape(dims.len()));
        }
        for (r, b) in boundaries.iter().enumerate() {
            let below = if r == 0 { 0 } else { dims[r - 1] };
            if b.rows() != below || b.cols() != dims[r] {
                return Err(OracleError::Shape(r));
            }
            if r > 0 && !boundaries[r - 1].mul(b).is_zero() {
                return Err(OracleError::NotComplex(r));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    pub fn dim(&self, r: usize) -> usize {
        self.dims.get(r).copied().unwrap_or(0)
    }

    pub fn num_degrees(&self) -> usize {
        self.dims.len()
    }

    /// `d_r : C_r -> C_{r-1}`, with the right shape in every degree.
    pub fn boundary(&self, r: usize) -> RationalMatrix {
        match self.boundaries.get(r) {
            Some(b) => b.clone(),
            None => RationalMatrix::zeros(if r == 0 { 0 } else { self.dim(r - 1) }, self.dim(r)),
        }
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|r| self.dims[r] - self.boundary(r).rank() - self.boundary(r + 1).rank())
            .collect()
    }
}

pub fn simplicial_chains(k: &SimplicialComplex) -> ChainComplex {
    let top = k.dimension().map_or(0, |d| d + 1);
    let dims: Vec<usize> = (0..top).map(|d| k.count(d)).collect();
    let boundaries = (0..top)
        .map(|r| if r == 0 { RationalMatrix::zeros(0, dims[0]) } else { k.boundary_matrix(r) })
        .collect();
    ChainComplex::new(dims, boundaries).expect("simplicial boundary squares to zero")
}

fn pad(m: RationalMatrix, rows: usize, cols: usize) -> RationalMatrix {
    if m.rows() == rows && m.cols() == cols { m } else { RationalMatrix::zeros(rows, cols) }
}

/// Rank of the map induced on `H_r` by a chain map with matrix `g`.
fn induced_rank(source: &ChainComplex, target: &ChainComplex, g: &RationalMatrix, r: usize) -> usize {
    if source.dim(r) == 0 || target.dim(r) == 0 {
        return 0;
    }
    let cycles = kernel_basis(&source.boundary(r));
    let boundaries = image_basis(&target.boundary(r + 1));
    let images: Vec<_> = cycles.vectors().iter().map(|z| g.mul_vec(z)).collect();
    let mut columns = images;
    columns.extend(boundaries.vectors().iter().cloned());
    RationalMatrix::from_columns(target.dim(r), &columns).rank() - boundaries.dim()
}

/// `L_{<k}`: `C_r(L)` below `k`, a complement of the cycles in degree `k`, zero above.
#[derive(Debug, Clone)]
pub struct ChainTruncation {
    pub k: usize,
    pub complex: ChainComplex,
    /// `map[r] : T_r -> C_r(L)`.
    pub map: Vec<RationalMatrix>,
}

pub fn chain_truncate(l: &SimplicialComplex, k: usize) -> Result<ChainTruncation, OracleError> {
    if k == 0 {
        return Err(OracleError::ZeroCutoff);
    }
    let chains = simplicial_chains(l);
    let top = chains.num_degrees().min(k + 1);
    let mut map = Vec::with_capacity(top);
    for r in 0..top {
        if r < k {
            map.push(RationalMatrix::identity(chains.dim(r)));
        } else {
            let cycles = kernel_basis(&chains.boundary(r));
            map.push(complement_basis(&cycles, ComplementStrategy::Lex).as_matrix());
        }
    }
    let dims: Vec<usize> = map.iter().map(RationalMatrix::cols).collect();
    let boundaries = (0..top)
        .map(|r| if r == 0 { RationalMatrix::zeros(0, dims[0]) } else { chains.boundary(r).mul(&map[r]) })
        .collect();
    Ok(ChainTruncation { k, complex: ChainComplex::new(dims, boundaries)?, map })
}

/// `cone(g)_r = S_{r-1} + T_r` with `d(x, m) = (-d x, g(x) + d m)`.
pub fn mapping_cone_of(
    source: &ChainComplex,
    target: &ChainComplex,
    g: &[RationalMatrix],
) -> Result<ChainComplex, OracleError> {
    for r in 0..source.num_degrees() {
        let gr = pad(g.get(r).cloned().unwrap_or_else(|| RationalMatrix::zeros(0, 0)), target.dim(r), source.dim(r));
        if r > 0 {
            let g_below = pad(g[r - 1].clone(), target.dim(r - 1), source.dim(r - 1));
            if target.boundary(r).mul(&gr) != g_below.mul(&source.boundary(r)) {
                return Err(OracleError::NotChainMap(r));
            }
        }
    }
    let top = (source.num_degrees() + 1).max(target.num_degrees());
    let cone_dim = |r: usize| (if r == 0 { 0 } else { source.dim(r - 1) }) + target.dim(r);
    let dims: Vec<usize> = (0..top).map(cone_dim).collect();
    let boundaries = (0..top)
        .map(|r| {
            let mut b = RationalMatrix::zeros(if r == 0 { 0 } else { dims[r - 1] }, dims[r]);
            if r == 0 {
                return b;
            }
            let s_in = source.dim(r - 1);
            let s_out = if r >= 2 { source.dim(r - 2) } else { 0 };
            if r >= 2 {
                for (i, j, x) in source.boundary(r - 1).entries() {
                    b.set(i, j, -x);
                }
            }
            let gr = pad(g.get(r - 1).cloned().unwrap_or_else(|| RationalMatrix::zeros(0, 0)), target.dim(r - 1), s_in);
            for (i, j, x) in gr.entries() {
                b.set(s_out + i, j, x.clone());
            }
            for (i, j, x) in target.boundary(r).entries() {
                b.set(s_out + i, s_in + j, x.clone());
            }
            b
        })
        .collect();
    ChainComplex::new(dims, boundaries)
}

/// The cone with the homology tables of its long exact sequence.
#[derive(Debug, Clone, Serialize)]
pub struct ConeComplex {
    #[serde(skip)]
    pub complex: ChainComplex,
    pub k: usize,
    pub truncation_betti: Vec<usize>,
    pub manifold_betti: Vec<usize>,
    /// Rank of `H_r(L_{<k}) -> H_r(M)`.
    pub induced_ranks: Vec<usize>,
    pub cone_betti: Vec<usize>,
    /// Torsion coefficients of `H_{k-1}(L; Z)`, where the integral Moore
    /// approximation and the rational truncation may disagree.
    pub link_torsion: Vec<String>,
}

impl ConeComplex {
    pub fn torsion_flagged(&self) -> bool {
        !self.link_torsion.is_empty()
    }

    /// `b_r(cone) = b_r(M) - rank g_r + b_{r-1}(T) - rank g_{r-1}` in every degree.
    pub fn les_consistent(&self) -> bool {
        let at = |v: &[usize], r: usize| v.get(r).copied().unwrap_or(0);
        (0..self.cone_betti.len()).all(|r| {
            let below = if r == 0 { 0 } else { at(&self.truncation_betti, r - 1) - at(&self.induced_ranks, r - 1) };
            let expected = at(&self.manifold_betti, r) - at(&self.induced_ranks, r) + below;
            self.cone_betti[r] == expected
        })
    }
}

/// Cone of `L_{<k} -> L -> M`.
pub fn mapping_cone(t: &ChainTruncation, pair: &ManifoldPair) -> Result<ConeComplex, OracleError> {
    let manifold = simplicial_chains(&pair.manifold.simplicial);
    let g: Vec<RationalMatrix> = (0..t.complex.num_degrees())
        .map(|r| pair.restriction.degree_map(r).transpose().mul(&t.map[r]))
        .collect();
    let complex = mapping_cone_of(&t.complex, &manifold, &g)?;
    let induced_ranks =
        (0..t.complex.num_degrees()).map(|r| induced_rank(&t.complex, &manifold, &g[r], r)).collect();
    Ok(ConeComplex {
        k: t.k,
        truncation_betti: t.complex.betti(),
        manifold_betti: manifold.betti(),
        induced_ranks,
        cone_betti: complex.betti(),
        link_torsion: torsion_coefficients(&pair.boundary.simplicial, t.k - 1)
            .iter()
            .map(BigInt::to_string)
            .collect(),
        complex,
    })
}

/// Invariant factors greater than one of `d_{r+1}` over the integers, i.e. the
/// torsion of `H_r(K; Z)`, in divisibility order.
pub fn torsion_coefficients(k: &SimplicialComplex, r: usize) -> Vec<BigInt> {
    let d = k.boundary_matrix(r + 1);
    let mut a: Vec<Vec<BigInt>> = d
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.to_integer()).collect())
        .collect();
    let mut diagonal = smith_diagonal(&mut a, d.rows(), d.cols());
    for i in 0..diagonal.len() {
        for j in i + 1..diagonal.len() {
            let (x, y) = (diagonal[i].clone(), diagonal[j].clone());
            diagonal[i] = x.gcd(&y);
            diagonal[j] = x.lcm(&y);
        }
    }
    diagonal.into_iter().filter(|x| *x > BigInt::from(1)).collect()
}

/// Nonzero diagonal entries (absolute values) of a diagonal form of `a`.
fn smith_diagonal(a: &mut [Vec<BigInt>], rows: usize, cols: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(p, q)| a[i][j].abs().cmp(&a[p][q].abs()));
            let Some((pi, pj)) = pivot else { return out };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                out.push(a[t][t].abs());
                break;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub model_betti: Vec<usize>,
    pub cone_betti: Vec<usize>,
    pub matches: bool,
}

pub fn compare(m: &IntersectionModel, c: &ConeComplex) -> OracleComparison {
    let model = model_betti(m);
    let len = model.len().max(c.cone_betti.len());
    let padded = |v: &[usize]| (0..len).map(|r| v.get(r).copied().unwrap_or(0)).collect::<Vec<_>>();
    let (model_betti, cone_betti) = (padded(&model), padded(&c.cone_betti));
    let matches = m.k == c.k && model_betti == cone_betti;
    OracleComparison { model_betti, cone_betti, matches }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn projective_plane_has_two_torsion() {
        let rp2 = SimplicialComplex::from_facets(&fixtures::mobius_cone().facets).unwrap();
        assert_eq!(torsion_coefficients(&rp2, 1), vec![BigInt::from(2)]);
        assert!(torsion_coefficients(&rp2, 0).is_empty());
        assert!(torsion_coefficients(&fixtures::torus7(), 1).is_empty());
    }

    #[test]
    fn truncation_examples() {
        let t = chain_truncate(&fixtures::triangle_boundary(), 1).unwrap();
        assert_eq!(t.complex.betti(), vec![1, 0]);
        let torus = fixtures::torus7();
        let t = chain_truncate(&torus, 2).unwrap();
        assert_eq!(t.complex.betti(), vec![1, 2, 0]);
        let t = chain_truncate(&torus, 3).unwrap();
        assert_eq!(t.complex.betti(), vec![1, 2, 1]);
        assert_eq!(chain_truncate(&torus, 0).unwrap_err(), OracleError::ZeroCutoff);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = simplicial_chains(&fixtures::torus7());
        let id: Vec<RationalMatrix> = (0..c.num_degrees()).map(|r| RationalMatrix::identity(c.dim(r))).collect();
        let cone = mapping_cone_of(&c, &c, &id).unwrap();
        assert!(cone.betti().iter().all(|&b| b == 0));
    }

    #[test]
    fn cone_torus_oracle() {
        let doc = fixtures::x2_cone_torus();
        let x = crate::simplicial::parse_complex(&doc).unwrap();
        let d = crate::simplicial::decompose(&x, doc.singular_vertex).unwrap();
        let pair = ManifoldPair::from_decomposition(&d).unwrap();
        let t = chain_truncate(&pair.boundary.simplicial, 2).unwrap();
        let cone = mapping_cone(&t, &pair).unwrap();
        assert_eq!(cone.cone_betti, vec![0, 0, 1, 0]);
        assert!(cone.les_consistent());
        let t = chain_truncate(&pair.boundary.simplicial, 1).unwrap();
        let cone = mapping_cone(&t, &pair).unwrap();
        assert_eq!(cone.cone_betti, vec![0, 1, 0, 0]);
        assert!(cone.les_consistent());
    }

    #[test]
    fn non_chain_map_rejected() {
        let c = simplicial_chains(&fixtures::triangle_boundary());
        let g = vec![RationalMatrix::identity(3), RationalMatrix::zeros(3, 3)];
        assert_eq!(mapping_cone_of(&c, &c, &g).unwrap_err(), OracleError::NotChainMap(1));
    }
}
