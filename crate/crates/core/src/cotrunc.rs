//! Truncation `tau_{<k}` and standard cotruncation `tau_{>=k}^D` of a cochain
//! complex, the quotient `C / tau_{>=k}`, product vanishing and the
//! truncated duality pairing on a closed oriented complex.

use thiserror::Error;

use crate::cochain::{
    cohomology_all, evaluate_pairing, CochainComplex, CochainError, CochainMap, CohomologyBasis,
    CupStructure, PairingMatrix, SubComplex,
};
use crate::linalg::{
    complement_basis, image_basis, rat, ComplementStrategy, RationalMatrix,
    SubspaceBasis, Vector,
};
use crate::pair::CupComplex;
use crate::simplicial::Chain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CotruncError {
    #[error("cutoff degree must be positive")]
    ZeroCutoff,
    #[error("cutoffs k = {k}, l = {l} must be positive with k + l = {expected}")]
    Window { k: usize, l: usize, expected: usize },
    #[error("product vanishing needs k + l > r + s, got k = {k}, l = {l}, r = {r}, s = {s}")]
    OutsideWindow { k: usize, l: usize, r: usize, s: usize },
    #[error("evaluation chain is not closed")]
    NotClosed,
    #[error("quotient is not isomorphic to the truncation in degree {0}")]
    QuotientMismatch(usize),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// `tau_{<k} C`: `C^r` for `r < k`, `im d^{k-1}` in degree `k`, zero above.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub k: usize,
    pub sub: SubComplex,
}

impl Truncation {
    pub fn complex(&self) -> &CochainComplex {
        &self.sub.complex
    }

    pub fn inclusion(&self) -> &CochainMap {
        &self.sub.inclusion
    }
}

pub fn truncate_below(c: &CochainComplex, k: usize) -> Result<Truncation, CotruncError> {
    if k == 0 {
        return Err(CotruncError::ZeroCutoff);
    }
    let bases: Vec<SubspaceBasis> = (0..c.num_degrees())
        .map(|r| match r.cmp(&k) {
            std::cmp::Ordering::Less => SubspaceBasis::full(c.dim(r)),
            std::cmp::Ordering::Equal => image_basis(&c.incoming(r)),
            std::cmp::Ordering::Greater => SubspaceBasis::empty(c.dim(r)),
        })
        .collect();
    Ok(Truncation { k, sub: SubComplex::from_subspaces(c, &bases)? })
}

/// `tau_{>=k}^D C`: zero below `k`, a complement `D` of `im d^{k-1}` in degree `k`,
/// `C^r` above.
#[derive(Debug, Clone)]
pub struct StandardCotruncation {
    pub k: usize,
    pub strategy: ComplementStrategy,
    /// Canonical basis of `im d^{k-1}`.
    pub image: SubspaceBasis,
    /// The chosen complement `D`.
    pub complement: SubspaceBasis,
    pub sub: SubComplex,
}

impl StandardCotruncation {
    pub fn complex(&self) -> &CochainComplex {
        &self.sub.complex
    }

    pub fn inclusion(&self) -> &CochainMap {
        &self.sub.inclusion
    }

    /// Basis vectors of `tau_{>=k}^r`, as cochains of the ambient complex.
    pub fn ambient_basis(&self, r: usize) -> Vec<Vector> {
        self.sub.inclusion.degree_map(r).columns()
    }
}

pub fn cotruncate(
    c: &CochainComplex,
    k: usize,
    strategy: ComplementStrategy,
) -> Result<StandardCotruncation, CotruncError> {
    if k == 0 {
        return Err(CotruncError::ZeroCutoff);
    }
    let image = image_basis(&c.incoming(k));
    let image = if image.ambient_dim() == c.dim(k) { image } else { SubspaceBasis::empty(c.dim(k)) };
    let complement = complement_basis(&image, strategy);
    let bases: Vec<SubspaceBasis> = (0..c.num_degrees())
        .map(|r| match r.cmp(&k) {
            std::cmp::Ordering::Less => SubspaceBasis::empty(c.dim(r)),
            std::cmp::Ordering::Equal => complement.clone(),
            std::cmp::Ordering::Greater => SubspaceBasis::full(c.dim(r)),
        })
        .collect();
    let sub = SubComplex::from_subspaces(c, &bases)?;
    Ok(StandardCotruncation { k, strategy, image, complement, sub })
}

/// `C / tau_{>=k}` in the basis of the `tau_{<k}` summand, with the projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub k: usize,
    pub complex: CochainComplex,
    pub projection: CochainMap,
    /// Lift of quotient coordinates back to `C`, through `tau_{<k}`.
    lifts: Vec<RationalMatrix>,
}

impl Quotient {
    pub fn lift(&self, r: usize, v: &[crate::linalg::Rational]) -> Vector {
        self.lifts[r].mul_vec(v)
    }
}

pub fn quotient_by_cotruncation(
    c: &CochainComplex,
    ct: &StandardCotruncation,
) -> Result<Quotient, CotruncError> {
    let k = ct.k;
    let count = c.num_degrees();
    let dims: Vec<usize> = (0..count)
        .map(|r| match r.cmp(&k) {
            std::cmp::Ordering::Less => c.dim(r),
            std::cmp::Ordering::Equal => ct.image.dim(),
            std::cmp::Ordering::Greater => 0,
        })
        .collect();
    let mut projection = Vec::with_capacity(count);
    let mut lifts = Vec::with_capacity(count);
    for r in 0..count {
        match r.cmp(&k) {
            std::cmp::Ordering::Less => {
                projection.push(RationalMatrix::identity(c.dim(r)));
                lifts.push(RationalMatrix::identity(c.dim(r)));
            }
            std::cmp::Ordering::Equal => {
                // coordinates along im d^{k-1} in the splitting C^k = im + D
                let mut columns = ct.image.vectors().to_vec();
                columns.extend(ct.complement.vectors().iter().cloned());
                let splitting = RationalMatrix::from_columns(c.dim(r), &columns);
                let inverse = splitting.inverse().expect("image and complement split C^k");
                let keep: Vec<Vector> = (0..ct.image.dim()).map(|i| inverse.row(i)).collect();
                projection.push(RationalMatrix::from_rows(c.dim(r), &keep));
                lifts.push(ct.image.as_matrix());
            }
            std::cmp::Ordering::Greater => {
                projection.push(RationalMatrix::zeros(0, c.dim(r)));
                lifts.push(RationalMatrix::zeros(c.dim(r), 0));
            }
        }
    }
    let d: Vec<RationalMatrix> = (0..count)
        .map(|r| {
            let target = dims.get(r + 1).copied().unwrap_or(0);
            if r + 1 < count && target > 0 {
                projection[r + 1].mul(&c.differential(r)).mul(&lifts[r])
            } else {
                RationalMatrix::zeros(target, dims[r])
            }
        })
        .collect();
    let labels = dims
        .iter()
        .enumerate()
        .map(|(r, &n)| (0..n).map(|i| format!("q{r}.{i}")).collect())
        .collect();
    let complex = CochainComplex::new(dims, d, labels)?;
    let projection = CochainMap::new(c, &complex, projection)?;

    // tau_{<k} -> C -> C / tau_{>=k} must be an isomorphism of complexes
    let truncation = truncate_below(c, k)?;
    for r in 0..count {
        let composite = projection.degree_map(r).mul(&truncation.inclusion().degree_map(r));
        let n = complex.dim(r);
        if composite.rows() != n || composite.cols() != n || composite.rank() != n {
            return Err(CotruncError::QuotientMismatch(r));
        }
    }
    Ok(Quotient { k, complex, projection, lifts })
}

/// True iff every product of a basis cochain of `tau_{>=k}^r` with one of
/// `tau_{>=l}^s` vanishes.
pub fn check_product_vanishing(
    cup: &CupStructure,
    ct_k: &StandardCotruncation,
    ct_l: &StandardCotruncation,
    r: usize,
    s: usize,
) -> Result<bool, CotruncError> {
    let (k, l) = (ct_k.k, ct_l.k);
    if k + l <= r + s {
        return Err(CotruncError::OutsideWindow { k, l, r, s });
    }
    let left = ct_k.ambient_basis(r);
    let right = ct_l.ambient_basis(s);
    for a in &left {
        for b in &right {
            if cup.cup(a, r, b, s).iter().any(|x| x != &rat(0)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per-degree pairing `H^r(C / tau_{>=k}) x H^{c-r}(tau_{>=l}) -> Q`.
#[derive(Debug, Clone)]
pub struct TruncatedDuality {
    pub k: usize,
    pub l: usize,
    pub quotient: Quotient,
    pub quotient_cohomology: Vec<CohomologyBasis>,
    pub cotruncation: StandardCotruncation,
    pub cotruncation_cohomology: Vec<CohomologyBasis>,
    pub pairings: Vec<PairingMatrix>,
}

impl TruncatedDuality {
    pub fn nondegenerate(&self) -> bool {
        self.pairings.iter().all(PairingMatrix::nondegenerate)
    }
}

fn check_cycle(link: &CupComplex, lambda: &Chain) -> Result<usize, CotruncError> {
    let c = lambda.degree;
    if lambda.coeffs.len() != link.simplicial.count(c) {
        return Err(CotruncError::NotClosed);
    }
    if c > 0 && lambda.boundary(&link.simplicial).coeffs.iter().any(|x| x != &rat(0)) {
        return Err(CotruncError::NotClosed);
    }
    Ok(c)
}

/// Representatives of `H^r(C / tau_{>=k})` lifted to cochains of `C`.
pub(crate) fn quotient_representatives(q: &Quotient, h: &CohomologyBasis) -> Vec<Vector> {
    h.representatives.iter().map(|v| q.lift(h.degree, v)).collect()
}

/// Representatives of `H^r(tau_{>=l})` included into `C`.
pub(crate) fn cotruncation_representatives(ct: &StandardCotruncation, h: &CohomologyBasis) -> Vec<Vector> {
    let incl = ct.inclusion().degree_map(h.degree);
    h.representatives.iter().map(|v| incl.mul_vec(v)).collect()
}

/// `([pi a], [b]) -> <a u b, lambda>` with `k + l = dim L + 1`.
pub fn truncated_duality(
    link: &CupComplex,
    k: usize,
    l: usize,
    lambda: &Chain,
    strategy: ComplementStrategy,
) -> Result<TruncatedDuality, CotruncError> {
    let c = check_cycle(link, lambda)?;
    if k == 0 || l == 0 || k + l != c + 1 {
        return Err(CotruncError::Window { k, l, expected: c + 1 });
    }
    let ct_k = cotruncate(&link.cochains, k, strategy)?;
    let quotient = quotient_by_cotruncation(&link.cochains, &ct_k)?;
    let quotient_cohomology = cohomology_all(&quotient.complex);
    let cotruncation = cotruncate(&link.cochains, l, strategy)?;
    let cotruncation_cohomology = cohomology_all(cotruncation.complex());
    let pairings = (0..=c)
        .map(|r| {
            let left = quotient_representatives(&quotient, &quotient_cohomology[r]);
            let right = cotruncation_representatives(&cotruncation, &cotruncation_cohomology[c - r]);
            evaluate_pairing(&link.cup, &left, r, &right, c - r, lambda)
        })
        .collect();
    Ok(TruncatedDuality {
        k,
        l,
        quotient,
        quotient_cohomology,
        cotruncation,
        cotruncation_cohomology,
        pairings,
    })
}

/// Pairing of `H^r(tau_{<k})` with `H^{c-r}(tau_{>=l})` through `C`.
pub fn truncation_pairing(
    link: &CupComplex,
    k: usize,
    l: usize,
    r: usize,
    lambda: &Chain,
    strategy: ComplementStrategy,
) -> Result<PairingMatrix, CotruncError> {
    let c = check_cycle(link, lambda)?;
    if r > c {
        return Err(CotruncError::Window { k, l, expected: c + 1 });
    }
    let t = truncate_below(&link.cochains, k)?;
    let ct = cotruncate(&link.cochains, l, strategy)?;
    let h_left = crate::cochain::cohomology(t.complex(), r);
    let h_right = crate::cochain::cohomology(ct.complex(), c - r);
    let incl = t.inclusion().degree_map(r);
    let left: Vec<Vector> = h_left.representatives.iter().map(|v| incl.mul_vec(v)).collect();
    let right = cotruncation_representatives(&ct, &h_right);
    Ok(evaluate_pairing(&link.cup, &left, r, &right, c - r, lambda))
}

/// Image of `H(theta) : H^r(tau_{>=k}) -> H^r(C)` as a canonical subspace.
pub fn cohomology_image(
    c: &CochainComplex,
    ct: &StandardCotruncation,
    r: usize,
) -> Result<SubspaceBasis, CotruncError> {
    let source = crate::cochain::cohomology(ct.complex(), r);
    let target = crate::cochain::cohomology(c, r);
    let m = crate::cochain::induced_map(ct.inclusion(), &source, &target)?;
    Ok(image_basis(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{cohomology, simplicial_cochains};
    use crate::fixtures;
    use crate::linalg::{add_vectors, unit_vector};
    use crate::simplicial::fundamental_cycle;

    fn torus() -> CochainComplex {
        simplicial_cochains(&fixtures::torus7()).0
    }

    fn circle() -> CochainComplex {
        simplicial_cochains(&fixtures::triangle_boundary()).0
    }

    #[test]
    fn truncation_examples() {
        let t = truncate_below(&torus(), 2).unwrap();
        assert_eq!(t.complex().betti(), vec![1, 2, 0]);
        let t = truncate_below(&circle(), 1).unwrap();
        assert_eq!(t.complex().betti(), vec![1, 0]);
        let c = torus();
        let t = truncate_below(&c, 4).unwrap();
        assert_eq!(t.complex().dims(), c.dims());
        for r in 0..3 {
            assert_eq!(t.inclusion().degree_map(r).into_owned(), RationalMatrix::identity(c.dim(r)));
        }
        assert_eq!(truncate_below(&c, 0).unwrap_err(), CotruncError::ZeroCutoff);
    }

    #[test]
    fn truncation_induces_isomorphisms_below_cutoff() {
        let c = torus();
        for k in 1..=3 {
            let t = truncate_below(&c, k).unwrap();
            for r in 0..3 {
                let h = cohomology(t.complex(), r);
                if r < k {
                    let m = crate::cochain::induced_map(t.inclusion(), &h, &cohomology(&c, r)).unwrap();
                    assert_eq!(m.rank(), c.betti()[r]);
                    assert_eq!(m.rows(), m.cols());
                } else {
                    assert_eq!(h.dimension(), 0);
                }
            }
        }
    }

    #[test]
    fn cotruncation_examples() {
        let c = torus();
        let ct = cotruncate(&c, 2, ComplementStrategy::Lex).unwrap();
        assert_eq!(ct.complex().betti(), vec![0, 0, 1]);
        let ct = cotruncate(&c, 1, ComplementStrategy::Lex).unwrap();
        assert_eq!(ct.complex().betti(), vec![0, 2, 1]);
        assert_eq!(ct.complement.dim() + ct.image.dim(), c.dim(1));

        // a complex concentrated in degree >= k keeps all of C^k
        let zero = RationalMatrix::zeros(2, 0);
        let shifted = CochainComplex::new(
            vec![0, 2],
            vec![zero, RationalMatrix::zeros(0, 2)],
            vec![vec![], vec!["a".into(), "b".into()]],
        )
        .unwrap();
        let ct = cotruncate(&shifted, 1, ComplementStrategy::ReverseLex).unwrap();
        assert_eq!(ct.complement, SubspaceBasis::full(2));
    }

    #[test]
    fn quotient_examples() {
        let c = torus();
        let ct = cotruncate(&c, 2, ComplementStrategy::Lex).unwrap();
        let q = quotient_by_cotruncation(&c, &ct).unwrap();
        assert_eq!(q.complex.betti(), vec![1, 2, 0]);
        let s = circle();
        let ct = cotruncate(&s, 1, ComplementStrategy::Lex).unwrap();
        assert_eq!(quotient_by_cotruncation(&s, &ct).unwrap().complex.betti(), vec![1, 0]);
        // beyond the top degree the cotruncation vanishes and nothing is divided out
        let ct = cotruncate(&c, 5, ComplementStrategy::Lex).unwrap();
        let q = quotient_by_cotruncation(&c, &ct).unwrap();
        assert_eq!(q.complex.dims(), c.dims());
    }

    #[test]
    fn betti_numbers_split() {
        let c = torus();
        for k in 1..=3 {
            for strategy in [ComplementStrategy::Lex, ComplementStrategy::ReverseLex] {
                let below = truncate_below(&c, k).unwrap().complex().betti();
                let above = cotruncate(&c, k, strategy).unwrap().complex().betti();
                let sum: Vec<usize> = below.iter().zip(&above).map(|(a, b)| a + b).collect();
                assert_eq!(sum, c.betti());
            }
        }
    }

    #[test]
    fn strategies_agree_on_cohomology_images() {
        let c = torus();
        for k in 1..=2 {
            let lex = cotruncate(&c, k, ComplementStrategy::Lex).unwrap();
            let rev = cotruncate(&c, k, ComplementStrategy::ReverseLex).unwrap();
            assert_eq!(lex.complex().betti(), rev.complex().betti());
            for r in k..3 {
                assert_eq!(cohomology_image(&c, &lex, r).unwrap(), cohomology_image(&c, &rev, r).unwrap());
            }
        }
    }

    #[test]
    fn product_vanishing_examples() {
        let k = fixtures::torus7();
        let (c, cup) = simplicial_cochains(&k);
        let ct2 = cotruncate(&c, 2, ComplementStrategy::Lex).unwrap();
        let ct1 = cotruncate(&c, 1, ComplementStrategy::Lex).unwrap();
        assert!(check_product_vanishing(&cup, &ct2, &ct2, 2, 1).unwrap());
        assert!(check_product_vanishing(&cup, &ct2, &ct1, 1, 1).unwrap());
        assert!(check_product_vanishing(&cup, &ct2, &ct1, 2, 0).unwrap());
        assert_eq!(
            check_product_vanishing(&cup, &ct1, &ct1, 1, 1).unwrap_err(),
            CotruncError::OutsideWindow { k: 1, l: 1, r: 1, s: 1 }
        );
    }

    #[test]
    fn truncated_duality_on_circle() {
        let link = CupComplex::new(fixtures::triangle_boundary());
        let lambda = fundamental_cycle(&link.simplicial).unwrap();
        let td = truncated_duality(&link, 1, 1, &lambda, ComplementStrategy::Lex).unwrap();
        assert_eq!((td.pairings[0].left_dim, td.pairings[0].right_dim), (1, 1));
        assert_eq!(td.pairings[0].rank, 1);
        assert_eq!((td.pairings[1].left_dim, td.pairings[1].right_dim), (0, 0));
        assert!(td.nondegenerate());
    }

    #[test]
    fn truncated_duality_on_torus() {
        let link = CupComplex::new(fixtures::torus7());
        let lambda = fundamental_cycle(&link.simplicial).unwrap();
        let td = truncated_duality(&link, 2, 1, &lambda, ComplementStrategy::Lex).unwrap();
        assert!(td.nondegenerate());
        assert_eq!(td.pairings[0].left_dim, 1);
        let det = td.pairings[1].entries.determinant().unwrap();
        assert_ne!(det, rat(0));
        assert_eq!(
            truncated_duality(&link, 3, 0, &lambda, ComplementStrategy::Lex).unwrap_err(),
            CotruncError::Window { k: 3, l: 0, expected: 3 }
        );
        let open = Chain { degree: 2, coeffs: unit_vector(14, 0) };
        assert_eq!(
            truncated_duality(&link, 2, 1, &open, ComplementStrategy::Lex).unwrap_err(),
            CotruncError::NotClosed
        );
    }

    #[test]
    fn truncated_pairing_is_well_defined() {
        let link = CupComplex::new(fixtures::torus7());
        let lambda = fundamental_cycle(&link.simplicial).unwrap();
        let c = &link.cochains;
        for (k, l) in [(1, 2), (2, 1)] {
            let td = truncated_duality(&link, k, l, &lambda, ComplementStrategy::Lex).unwrap();
            let ct_k = cotruncate(c, k, ComplementStrategy::Lex).unwrap();
            for r in 0..3 {
                let s = 2 - r;
                let mut left = quotient_representatives(&td.quotient, &td.quotient_cohomology[r]);
                let mut right = cotruncation_representatives(&td.cotruncation, &td.cotruncation_cohomology[s]);
                for (i, a) in left.iter_mut().enumerate() {
                    if r > 0 {
                        let eta = unit_vector(c.dim(r - 1), i % c.dim(r - 1));
                        *a = add_vectors(a, &c.apply_d(r - 1, &eta));
                    }
                    for extra in ct_k.ambient_basis(r) {
                        *a = add_vectors(a, &extra);
                    }
                }
                if s > 0 {
                    let omegas = td.cotruncation.ambient_basis(s - 1);
                    for (j, b) in right.iter_mut().enumerate() {
                        if let Some(omega) = omegas.get(j % omegas.len().max(1)) {
                            *b = add_vectors(b, &c.apply_d(s - 1, omega));
                        }
                    }
                }
                let perturbed = evaluate_pairing(&link.cup, &left, r, &right, s, &lambda);
                assert_eq!(perturbed.entries, td.pairings[r].entries, "k={k} r={r}");
            }
        }
    }
}
