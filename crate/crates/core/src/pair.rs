//! Cochain data of a compact oriented manifold and its boundary, shared by
//! every model built over the same decomposition.

use crate::cochain::{
    cohomology_all, relative_complex, restriction_map, simplicial_cochains, CochainComplex,
    CochainMap, CohomologyBasis, CupStructure, ShortExactSequence, SubComplex,
};
use crate::linalg::rat;
use crate::simplicial::{
    fundamental_chain, fundamental_chain_of, Chain, FundamentalChain, PseudomanifoldDecomposition,
    SimplicialComplex,
};
use crate::Result;

/// A simplicial complex with its cochains, cup product and cohomology.
#[derive(Debug, Clone)]
pub struct CupComplex {
    pub simplicial: SimplicialComplex,
    pub cochains: CochainComplex,
    pub cup: CupStructure,
    pub cohomology: Vec<CohomologyBasis>,
}

impl CupComplex {
    pub fn new(k: SimplicialComplex) -> Self {
        let (cochains, cup) = simplicial_cochains(&k);
        let cohomology = cohomology_all(&cochains);
        CupComplex { simplicial: k, cochains, cup, cohomology }
    }

    pub fn betti(&self) -> Vec<usize> {
        self.cohomology.iter().map(CohomologyBasis::dimension).collect()
    }
}

/// `(M, dM)` with `i* : C(M) -> C(dM)`, `j* : C(M, dM) -> C(M)`, the
/// fundamental chain `mu` and the boundary cycle `lambda = (-1)^n d mu`.
#[derive(Debug, Clone)]
pub struct ManifoldPair {
    pub n: usize,
    pub manifold: CupComplex,
    pub boundary: CupComplex,
    pub restriction: CochainMap,
    pub relative: SubComplex,
    pub relative_cohomology: Vec<CohomologyBasis>,
    pub mu: FundamentalChain,
    pub lambda: Chain,
}

impl ManifoldPair {
    pub fn new(manifold: SimplicialComplex, boundary: SimplicialComplex) -> Result<Self> {
        let mu = fundamental_chain_of(&manifold, &boundary)?;
        Self::assemble(manifold, boundary, mu)
    }

    pub fn from_decomposition(d: &PseudomanifoldDecomposition) -> Result<Self> {
        let mu = fundamental_chain(d)?;
        Self::assemble(d.exterior.clone(), d.link.clone(), mu)
    }

    fn assemble(
        manifold: SimplicialComplex,
        boundary: SimplicialComplex,
        mu: FundamentalChain,
    ) -> Result<Self> {
        let n = mu.degree();
        let restriction_maps = restriction_map(&manifold, &boundary)?;
        let manifold = CupComplex::new(manifold);
        let boundary = CupComplex::new(boundary);
        let restriction =
            CochainMap::new(&manifold.cochains, &boundary.cochains, restriction_maps)?;
        let relative =
            relative_complex(&manifold.simplicial, &boundary.simplicial, &manifold.cochains)?;
        let relative_cohomology = cohomology_all(&relative.complex);
        let lambda = if n == 0 || boundary.simplicial.is_empty() {
            Chain { degree: n.saturating_sub(1), coeffs: Vec::new() }
        } else {
            let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
            let d = mu.chain.boundary(&manifold.simplicial);
            let on_boundary = d
                .restrict_to(&manifold.simplicial, &boundary.simplicial)
                .expect("fundamental chain has boundary on the boundary");
            Chain { degree: n - 1, coeffs: on_boundary.coeffs.iter().map(|c| c * &sign).collect() }
        };
        Ok(ManifoldPair {
            n,
            manifold,
            boundary,
            restriction,
            relative,
            relative_cohomology,
            mu,
            lambda,
        })
    }

    /// `0 -> C(M, dM) -> C(M) -> C(dM) -> 0`.
    pub fn pair_sequence(&self) -> Result<ShortExactSequence<'_>> {
        Ok(ShortExactSequence::new(
            &self.relative.complex,
            &self.manifold.cochains,
            &self.boundary.cochains,
            &self.relative.inclusion,
            &self.restriction,
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::long_exact_sequence;
    use crate::fixtures;

    #[test]
    fn solid_torus_pair() {
        let m = fixtures::solid_torus();
        let pair = ManifoldPair::new(m.clone(), m.boundary_complex()).unwrap();
        assert_eq!(pair.n, 3);
        assert_eq!(pair.manifold.betti(), vec![1, 1, 0, 0]);
        assert_eq!(pair.boundary.betti(), vec![1, 2, 1]);
        let rel: Vec<usize> = pair.relative_cohomology.iter().map(|h| h.dimension()).collect();
        assert_eq!(rel, vec![0, 0, 1, 1]);
        let ses = pair.pair_sequence().unwrap();
        let les = long_exact_sequence(
            &ses,
            &pair.relative_cohomology,
            &pair.manifold.cohomology,
            &pair.boundary.cohomology,
        )
        .unwrap();
        assert_eq!(les.connecting_ranks, vec![0, 1, 1, 0]);
    }

    #[test]
    fn lambda_is_a_fundamental_cycle_of_the_boundary() {
        let m = fixtures::solid_torus();
        let pair = ManifoldPair::new(m.clone(), m.boundary_complex()).unwrap();
        let l = &pair.boundary.simplicial;
        assert!(pair.lambda.coeffs.iter().all(|c| c == &rat(1) || c == &rat(-1)));
        assert!(crate::linalg::is_zero_vector(&pair.lambda.boundary(l).coeffs));
    }
}
