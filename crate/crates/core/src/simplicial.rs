//! Finite abstract simplicial complexes and the decomposition of a
//! pseudomanifold with one isolated singular vertex into its exterior `M`
//! and link `L`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rat, Rational, RationalMatrix, Vector};

pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("malformed input document: {0}")]
    Malformed(String),
    #[error("complex is not pure: facets of dimensions {0} and {1}")]
    NotPure(usize, usize),
    #[error("facet {0:?} repeats a vertex")]
    RepeatedVertex(Vec<VertexId>),
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(VertexId),
    #[error("singular vertex requires dimension n >= 2, got {0}")]
    DimensionTooLow(usize),
    #[error("not a pseudomanifold: {0}")]
    NotPseudomanifold(String),
    #[error("link of vertex {0} is disconnected ({1} components)")]
    LinkDisconnected(VertexId, usize),
    #[error("complex is not orientable: {0}")]
    NonOrientable(String),
    #[error("not a subcomplex: simplex {0} is missing from the ambient complex")]
    NotSubcomplex(Simplex),
}

/// A simplex given by its vertices in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Codimension one faces, `faces()[i]` omits the `i`-th vertex.
    pub fn faces(&self) -> Vec<Simplex> {
        if self.0.len() <= 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut f = self.0.clone();
                f.remove(i);
                Simplex(f)
            })
            .collect()
    }

    pub fn without(&self, v: VertexId) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: VertexId) -> Simplex {
        let mut vs = self.0.clone();
        vs.push(v);
        Simplex::new(vs)
    }

    /// Front face on the first `p + 1` vertices.
    pub fn front(&self, p: usize) -> Simplex {
        Simplex(self.0[..=p].to_vec())
    }

    /// Back face from vertex `p` onward.
    pub fn back(&self, p: usize) -> Simplex {
        Simplex(self.0[p..].to_vec())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A finite simplicial complex closed under faces. Simplices of each
/// dimension are kept in lexicographic order; that order is the basis order
/// of every chain and cochain space built on the complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { simplices: Vec::new(), index: Vec::new() }
    }

    /// Pure complex generated by `facets`, all of the same dimension.
    pub fn from_facets(facets: &[Vec<VertexId>]) -> Result<Self, SimplicialError> {
        let mut dim: Option<usize> = None;
        let mut simplices = Vec::with_capacity(facets.len());
        for f in facets {
            let s = Simplex::new(f.clone());
            if s.0.len() != f.len() {
                return Err(SimplicialError::RepeatedVertex(f.clone()));
            }
            if s.0.is_empty() {
                return Err(SimplicialError::Malformed("empty facet".into()));
            }
            match dim {
                None => dim = Some(s.dim()),
                Some(d) if d != s.dim() => return Err(SimplicialError::NotPure(d, s.dim())),
                Some(_) => {}
            }
            simplices.push(s);
        }
        Ok(Self::closure(simplices))
    }

    /// Smallest complex containing `generators`.
    pub fn closure(generators: impl IntoIterator<Item = Simplex>) -> Self {
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        let mut stack: Vec<Simplex> = generators.into_iter().collect();
        while let Some(s) = stack.pop() {
            let d = s.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            if by_dim[d].insert(s.clone()) {
                stack.extend(s.faces());
            }
        }
        let simplices: Vec<Vec<Simplex>> =
            by_dim.into_iter().map(|set| set.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        SimplicialComplex { simplices, index }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.simplices(0).iter().map(|s| s.0[0]).collect()
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn facets(&self) -> &[Simplex] {
        match self.dimension() {
            Some(d) => self.simplices(d),
            None => &[],
        }
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (d, level) in self.simplices.iter().enumerate() {
            let covered: HashSet<Simplex> =
                self.simplices(d + 1).iter().flat_map(Simplex::faces).collect();
            out.extend(level.iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim()).and_then(|m| m.get(s).copied())
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.contains(&Simplex(vec![v]))
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> Result<(), SimplicialError> {
        for level in &self.simplices {
            for s in level {
                if !other.contains(s) {
                    return Err(SimplicialError::NotSubcomplex(s.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, level)| if d % 2 == 0 { level.len() as i64 } else { -(level.len() as i64) })
            .sum()
    }

    /// Simplicial boundary `C_d -> C_{d-1}` with `sum_i (-1)^i face_i`.
    pub fn boundary_matrix(&self, d: usize) -> RationalMatrix {
        if d == 0 {
            return RationalMatrix::zeros(0, self.count(0));
        }
        let mut m = RationalMatrix::zeros(self.count(d - 1), self.count(d));
        for (j, s) in self.simplices(d).iter().enumerate() {
            for (i, face) in s.faces().into_iter().enumerate() {
                let row = self.index_of(&face).expect("complex closed under faces");
                m.set(row, j, rat(if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        m
    }

    /// Cofacet counts of every codimension one simplex.
    fn cofacet_counts(&self) -> BTreeMap<Simplex, usize> {
        let mut counts = BTreeMap::new();
        let Some(n) = self.dimension() else { return counts };
        if n == 0 {
            return counts;
        }
        for s in self.simplices(n - 1) {
            counts.insert(s.clone(), 0);
        }
        for f in self.facets() {
            for face in f.faces() {
                *counts.get_mut(&face).expect("face present") += 1;
            }
        }
        counts
    }

    /// Closure of the codimension one simplices lying in exactly one facet.
    pub fn boundary_complex(&self) -> SimplicialComplex {
        let free = self
            .cofacet_counts()
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(s, _)| s);
        SimplicialComplex::closure(free)
    }

    /// Every codimension one simplex lies in exactly two facets.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let counts = self.cofacet_counts();
        !counts.is_empty() && counts.values().all(|&c| c == 2)
    }

    /// Connected components of the 1-skeleton, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let verts = self.vertices();
        let mut parent: HashMap<VertexId, VertexId> = verts.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut HashMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let p = parent[&v];
            if p == v {
                return v;
            }
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
        for e in self.simplices(1) {
            let a = find(&mut parent, e.0[0]);
            let b = find(&mut parent, e.0[1]);
            if a != b {
                parent.insert(a.max(b), a.min(b));
            }
        }
        let mut groups: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for &v in &verts {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Complex generated by the maximal simplices containing `v`.
    pub fn closed_star(&self, v: VertexId) -> SimplicialComplex {
        SimplicialComplex::closure(self.maximal_simplices().into_iter().filter(|f| f.contains(v)))
    }

    /// Cone over `self` with a fresh apex.
    pub fn cone(&self, apex: VertexId) -> SimplicialComplex {
        assert!(!self.has_vertex(apex), "cone apex must be a new vertex");
        SimplicialComplex::closure(self.maximal_simplices().iter().map(|f| f.with(apex)))
    }

    /// Coherent facet signs relative to the ascending vertex order, or an
    /// error when no coherent choice exists. Each connected piece of the dual
    /// graph starts from its lexicographically smallest facet with sign `+1`.
    pub fn orient(&self) -> Result<Vec<i8>, SimplicialError> {
        let Some(n) = self.dimension() else { return Ok(Vec::new()) };
        let facets = self.facets();
        let mut incident: HashMap<Simplex, Vec<(usize, i8)>> = HashMap::new();
        if n > 0 {
            for (j, f) in facets.iter().enumerate() {
                for (i, face) in f.faces().into_iter().enumerate() {
                    incident.entry(face).or_default().push((j, if i % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        if let Some((face, inc)) = incident.iter().find(|(_, inc)| inc.len() > 2) {
            return Err(SimplicialError::NotPseudomanifold(format!(
                "face {face} lies in {} facets",
                inc.len()
            )));
        }
        let mut signs: Vec<i8> = vec![0; facets.len()];
        for start in 0..facets.len() {
            if signs[start] != 0 {
                continue;
            }
            signs[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(j) = queue.pop_front() {
                for (i, face) in facets[j].faces().into_iter().enumerate() {
                    let own = if i % 2 == 0 { 1 } else { -1 };
                    for &(other, coeff) in &incident[&face] {
                        if other == j {
                            continue;
                        }
                        // induced orientations on the shared face must cancel
                        let wanted = -signs[j] * own * coeff;
                        if signs[other] == 0 {
                            signs[other] = wanted;
                            queue.push_back(other);
                        } else if signs[other] != wanted {
                            return Err(SimplicialError::NonOrientable(format!(
                                "facets {} and {} disagree across {face}",
                                facets[j], facets[other]
                            )));
                        }
                    }
                }
            }
        }
        Ok(signs)
    }
}

/// `{ s : s + v in K, v not in s }`.
pub fn link_of_vertex(k: &SimplicialComplex, v: VertexId) -> Result<SimplicialComplex, SimplicialError> {
    if !k.has_vertex(v) {
        return Err(SimplicialError::UnknownVertex(v));
    }
    let generators: Vec<Simplex> = k
        .maximal_simplices()
        .iter()
        .filter(|f| f.contains(v) && f.0.len() > 1)
        .map(|f| f.without(v))
        .collect();
    Ok(SimplicialComplex::closure(generators))
}

/// The JSON input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub name: String,
    pub dimension: usize,
    pub facets: Vec<Vec<VertexId>>,
    pub singular_vertex: VertexId,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self, SimplicialError> {
        serde_json::from_str(text).map_err(|e| SimplicialError::Malformed(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("input document serializes")
    }
}

pub fn parse_complex(document: &InputDocument) -> Result<SimplicialComplex, SimplicialError> {
    if document.facets.is_empty() {
        return Err(SimplicialError::Malformed("no facets".into()));
    }
    let k = SimplicialComplex::from_facets(&document.facets)?;
    if k.dimension() != Some(document.dimension) {
        return Err(SimplicialError::Malformed(format!(
            "declared dimension {} but facets have dimension {}",
            document.dimension,
            k.dimension().unwrap_or(0)
        )));
    }
    Ok(k)
}

/// `X = M u cone(L)` with `L` the link of the singular vertex.
#[derive(Debug, Clone)]
pub struct PseudomanifoldDecomposition {
    pub x: SimplicialComplex,
    pub singular_vertex: VertexId,
    pub exterior: SimplicialComplex,
    pub link: SimplicialComplex,
    pub n: usize,
}

pub fn decompose(
    x: &SimplicialComplex,
    v: VertexId,
) -> Result<PseudomanifoldDecomposition, SimplicialError> {
    let n = x.dimension().ok_or_else(|| SimplicialError::Malformed("empty complex".into()))?;
    if n < 2 {
        return Err(SimplicialError::DimensionTooLow(n));
    }
    let link = link_of_vertex(x, v)?;
    let components = link.components().len();
    if components != 1 {
        return Err(SimplicialError::LinkDisconnected(v, components));
    }
    if link.dimension() != Some(n - 1) || !link.is_closed_pseudomanifold() {
        return Err(SimplicialError::NotPseudomanifold(format!(
            "link of vertex {v} is not a closed {}-pseudomanifold",
            n - 1
        )));
    }
    if !x.is_closed_pseudomanifold() {
        return Err(SimplicialError::NotPseudomanifold(format!(
            "some {}-simplex does not lie in exactly two {n}-simplices",
            n - 1
        )));
    }
    let exterior =
        SimplicialComplex::closure(x.facets().iter().filter(|f| !f.contains(v)).cloned());
    if exterior.dimension() != Some(n) {
        return Err(SimplicialError::NotPseudomanifold(
            "every facet contains the singular vertex".into(),
        ));
    }
    let star = x.closed_star(v);
    let overlap = SimplicialComplex::closure(
        (0..=n).flat_map(|d| exterior.simplices(d).iter().filter(|s| star.contains(s)).cloned()),
    );
    if overlap != link {
        return Err(SimplicialError::NotPseudomanifold(format!(
            "the closed star of {v} is not a cone neighbourhood: it meets the exterior beyond the link"
        )));
    }
    if exterior.boundary_complex() != link {
        return Err(SimplicialError::NotPseudomanifold("boundary of the exterior differs from the link".into()));
    }
    Ok(PseudomanifoldDecomposition { x: x.clone(), singular_vertex: v, exterior, link, n })
}

/// A chain with coefficients indexed by the `degree`-simplices of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coeffs: Vector,
}

impl Chain {
    pub fn boundary(&self, k: &SimplicialComplex) -> Chain {
        assert!(self.degree > 0, "boundary of a 0-chain");
        Chain { degree: self.degree - 1, coeffs: k.boundary_matrix(self.degree).mul_vec(&self.coeffs) }
    }

    pub fn neg(&self) -> Chain {
        Chain { degree: self.degree, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }

    /// Re-index onto a subcomplex; `None` if the support leaves it.
    pub fn restrict_to(&self, from: &SimplicialComplex, to: &SimplicialComplex) -> Option<Chain> {
        let mut coeffs = vec![Rational::from_integer(0.into()); to.count(self.degree)];
        for (s, c) in from.simplices(self.degree).iter().zip(&self.coeffs) {
            if num::Zero::is_zero(c) {
                continue;
            }
            coeffs[to.index_of(s)?] = c.clone();
        }
        Some(Chain { degree: self.degree, coeffs })
    }
}

/// Coherently signed sum of the top simplices of an oriented complex.
pub fn fundamental_cycle(k: &SimplicialComplex) -> Result<Chain, SimplicialError> {
    let n = k.dimension().ok_or_else(|| SimplicialError::Malformed("empty complex".into()))?;
    let signs = k.orient()?;
    Ok(Chain { degree: n, coeffs: signs.into_iter().map(|s| rat(s as i64)).collect() })
}

/// Fundamental chain of the exterior, `d mu` supported on the link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalChain {
    pub chain: Chain,
}

impl FundamentalChain {
    pub fn degree(&self) -> usize {
        self.chain.degree
    }

    pub fn neg(&self) -> Self {
        FundamentalChain { chain: self.chain.neg() }
    }
}

/// Fundamental chain of a compact oriented manifold `m` whose boundary is `boundary`.
pub fn fundamental_chain_of(
    m: &SimplicialComplex,
    boundary: &SimplicialComplex,
) -> Result<FundamentalChain, SimplicialError> {
    let chain = fundamental_cycle(m)?;
    if chain.degree == 0 {
        return Ok(FundamentalChain { chain });
    }
    let d = chain.boundary(m);
    if d.restrict_to(m, boundary).is_none() {
        return Err(SimplicialError::NotPseudomanifold(
            "boundary of the fundamental chain leaves the boundary complex".into(),
        ));
    }
    Ok(FundamentalChain { chain })
}

pub fn fundamental_chain(d: &PseudomanifoldDecomposition) -> Result<FundamentalChain, SimplicialError> {
    fundamental_chain_of(&d.exterior, &d.link)
}
