//! Duality pairings and the ladder of long exact sequences relating them.
//!
//! A pairing `H^a x H^b -> Q` is stored as `P[i][j] = <left_i, right_j>`. Its
//! adjoint `H^a -> (H^b)^dual` is `P^T` on coordinate vectors, and the dual
//! of a map with matrix `F` is `F^T`.

use rand::Rng;
use thiserror::Error;

use crate::cochain::{
    connecting_homomorphism, evaluate_pairing, induced_map, CochainError, CohomologyBasis,
    PairingMatrix,
};
use crate::cotrunc::{cotruncation_representatives, quotient_representatives};
use crate::linalg::{add_vectors, dot, rat, zero_vector, Rational, RationalMatrix, Vector};
use crate::model::{IntersectionModel, ModelError};
use crate::pair::{CupComplex, ManifoldPair};
use crate::simplicial::{Chain, FundamentalChain};
use crate::ErrorCode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("perversities {p} and {q} are not complementary")]
    NotComplementary { p: String, q: String },
    #[error("models are built over different decompositions")]
    Mismatch,
    #[error("fundamental chain is invalid: {0}")]
    InvalidChain(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

impl DualityError {
    pub fn code(&self) -> ErrorCode {
        match self {
            DualityError::NotComplementary { .. } => ErrorCode::NotComplementary,
            DualityError::InvalidChain(_) => ErrorCode::NotPseudomanifold,
            DualityError::Model(e) => e.code(),
            DualityError::Mismatch | DualityError::Cochain(_) => ErrorCode::InternalExactness,
        }
    }
}

/// Per-degree pairings with Betti tables of both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub pairings: Vec<PairingMatrix>,
    pub left_betti: Vec<usize>,
    pub right_betti: Vec<usize>,
}

impl DualityReport {
    pub fn pass(&self) -> bool {
        self.pairings.iter().all(PairingMatrix::nondegenerate)
    }
}

fn check_mu(pair: &ManifoldPair, mu: &FundamentalChain) -> Result<(), DualityError> {
    let m = &pair.manifold.simplicial;
    if mu.degree() != pair.n || mu.chain.coeffs.len() != m.count(pair.n) {
        return Err(DualityError::InvalidChain("wrong degree or support".into()));
    }
    if pair.n > 0 && mu.chain.boundary(m).restrict_to(m, &pair.boundary.simplicial).is_none() {
        return Err(DualityError::InvalidChain("boundary leaves the boundary complex".into()));
    }
    Ok(())
}

fn betti(h: &[CohomologyBasis]) -> Vec<usize> {
    h.iter().map(CohomologyBasis::dimension).collect()
}

fn relative_representatives(pair: &ManifoldPair, r: usize) -> Vec<Vector> {
    let j = pair.relative.inclusion.degree_map(r);
    pair.relative_cohomology[r].representatives.iter().map(|v| j.mul_vec(v)).collect()
}

/// `([a], [b]) -> <a u j*(b), mu>` on `H^r(M) x H^{n-r}(M, dM)`.
pub fn lefschetz_pairing(pair: &ManifoldPair, mu: &FundamentalChain) -> Result<DualityReport, DualityError> {
    check_mu(pair, mu)?;
    let n = pair.n;
    let pairings = (0..=n)
        .map(|r| {
            let left = &pair.manifold.cohomology[r].representatives;
            let right = relative_representatives(pair, n - r);
            evaluate_pairing(&pair.manifold.cup, left, r, &right, n - r, &mu.chain)
        })
        .collect();
    Ok(DualityReport {
        pairings,
        left_betti: pair.manifold.betti(),
        right_betti: betti(&pair.relative_cohomology),
    })
}

fn check_models(mp: &IntersectionModel, mq: &IntersectionModel) -> Result<(), DualityError> {
    if !std::sync::Arc::ptr_eq(&mp.pair, &mq.pair)
        && (mp.pair.n != mq.pair.n || mp.pair.manifold.simplicial != mq.pair.manifold.simplicial)
    {
        return Err(DualityError::Mismatch);
    }
    if !mp.perversity.is_complementary_to(&mq.perversity) {
        return Err(DualityError::NotComplementary {
            p: mp.perversity.to_string(),
            q: mq.perversity.to_string(),
        });
    }
    Ok(())
}

fn main_matrix(
    mp: &IntersectionModel,
    mu: &Chain,
    r: usize,
    left: &[Vector],
    right: &[Vector],
) -> PairingMatrix {
    evaluate_pairing(&mp.pair.manifold.cup, left, r, right, mp.pair.n - r, mu)
}

/// `([a], [b]) -> <iota_p(a) u iota_q(b), mu>` on `H^r(AI_p) x H^{n-r}(AI_q)`.
pub fn main_pairing(
    mp: &IntersectionModel,
    mq: &IntersectionModel,
    mu: &FundamentalChain,
) -> Result<DualityReport, DualityError> {
    check_models(mp, mq)?;
    check_mu(&mp.pair, mu)?;
    let n = mp.pair.n;
    let pairings = (0..=n)
        .map(|r| {
            let left = mp.ambient_representatives(r);
            let right = mq.ambient_representatives(n - r);
            main_matrix(mp, &mu.chain, r, &left, &right)
        })
        .collect();
    Ok(DualityReport {
        pairings,
        left_betti: crate::model::model_betti(mp),
        right_betti: crate::model::model_betti(mq),
    })
}

/// Random sparse vector with entries in `-3..=3`.
pub fn random_sparse<R: Rng>(rng: &mut R, len: usize) -> Vector {
    (0..len)
        .map(|_| if rng.gen_bool(0.3) { rat(rng.gen_range(-3..=3)) } else { rat(0) })
        .collect()
}

/// Representatives of `H^r` of a model shifted by a random coboundary of the model.
fn perturbed_representatives<R: Rng>(m: &IntersectionModel, r: usize, rng: &mut R) -> Vec<Vector> {
    let incl = m.iota().degree_map(r);
    let c = m.complex();
    m.cohomology[r]
        .representatives
        .iter()
        .map(|v| {
            let shifted = if r == 0 || c.dim(r - 1) == 0 {
                v.clone()
            } else {
                add_vectors(v, &c.apply_d(r - 1, &random_sparse(rng, c.dim(r - 1))))
            };
            incl.mul_vec(&shifted)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeResult {
    pub trials: usize,
    pub unstable_trials: usize,
}

impl ProbeResult {
    pub fn stable(&self) -> bool {
        self.unstable_trials == 0
    }
}

/// Re-evaluate the main pairing after random coboundary perturbations on both sides.
pub fn well_definedness_probe<R: Rng>(
    mp: &IntersectionModel,
    mq: &IntersectionModel,
    mu: &FundamentalChain,
    trials: usize,
    rng: &mut R,
) -> Result<ProbeResult, DualityError> {
    let reference = main_pairing(mp, mq, mu)?;
    let n = mp.pair.n;
    let mut unstable_trials = 0;
    for _ in 0..trials {
        let stable = (0..=n).all(|r| {
            let left = perturbed_representatives(mp, r, rng);
            let right = perturbed_representatives(mq, n - r, rng);
            main_matrix(mp, &mu.chain, r, &left, &right).entries == reference.pairings[r].entries
        });
        if !stable {
            unstable_trials += 1;
        }
    }
    Ok(ProbeResult { trials, unstable_trials })
}

/// Truncated pairing `H^r(Q_p) x H^{n-1-r}(tau_{>=l} C(L))` evaluated on `lambda`.
fn boundary_pairing(mp: &IntersectionModel, mq: &IntersectionModel, r: usize, lambda: &Chain) -> PairingMatrix {
    let c = mp.pair.n - 1;
    if r > c {
        return empty_pairing(r);
    }
    let left = quotient_representatives(&mp.quotient, &mp.quotient_cohomology[r]);
    let right = cotruncation_representatives(&mq.cotruncation, &mq.cotruncation_cohomology[c - r]);
    evaluate_pairing(&mp.pair.boundary.cup, &left, r, &right, c - r, lambda)
}

fn empty_pairing(degree: usize) -> PairingMatrix {
    PairingMatrix { degree, left_dim: 0, right_dim: 0, entries: RationalMatrix::zeros(0, 0), rank: 0 }
}

fn empty_basis(degree: usize) -> CohomologyBasis {
    crate::cochain::cohomology(&crate::cochain::CochainComplex::zero(), degree)
}

fn basis(h: &[CohomologyBasis], r: usize) -> CohomologyBasis {
    h.get(r).cloned().unwrap_or_else(|| empty_basis(r))
}

/// Verdict of one square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareVerdict {
    pub commutes: bool,
    /// Global sign `+1` or `-1` relating the two composites.
    pub sign: i8,
}

fn compare(lhs: &RationalMatrix, rhs: &RationalMatrix, allow_sign: bool) -> SquareVerdict {
    if lhs == rhs {
        SquareVerdict { commutes: true, sign: 1 }
    } else if allow_sign && *lhs == rhs.neg() {
        SquareVerdict { commutes: true, sign: -1 }
    } else {
        SquareVerdict { commutes: false, sign: 0 }
    }
}

/// The three squares of the ladder at degree `r` and the five-lemma consequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderRecord {
    pub degree: usize,
    pub top: SquareVerdict,
    pub middle: SquareVerdict,
    pub bottom: SquareVerdict,
    /// The outer pairings are all nondegenerate.
    pub outer_nondegenerate: bool,
    /// The middle pairing is nondegenerate.
    pub middle_nondegenerate: bool,
}

impl LadderRecord {
    pub fn pass(&self) -> bool {
        self.top.commutes && self.middle.commutes && self.bottom.commutes
    }

    /// Commuting squares with invertible outer maps force an invertible middle map.
    pub fn five_lemma_consistent(&self) -> bool {
        !(self.pass() && self.outer_nondegenerate) || self.middle_nondegenerate
    }
}

fn lefschetz_at(pair: &ManifoldPair, mu: &Chain, r: usize) -> PairingMatrix {
    let n = pair.n;
    if r > n {
        return empty_pairing(r);
    }
    let left = &pair.manifold.cohomology[r].representatives;
    let right = relative_representatives(pair, n - r);
    evaluate_pairing(&pair.manifold.cup, left, r, &right, n - r, mu)
}

/// Check the squares between the model sequences of `mp` and the duals of those of `mq`.
pub fn ladder_check(
    mp: &IntersectionModel,
    mq: &IntersectionModel,
    mu: &FundamentalChain,
    r: usize,
) -> Result<LadderRecord, DualityError> {
    check_models(mp, mq)?;
    check_mu(&mp.pair, mu)?;
    let pair = &mp.pair;
    let n = pair.n;
    if r > n {
        return Err(DualityError::InvalidChain(format!("degree {r} exceeds {n}")));
    }
    let s = n - r;
    let lambda = boundary_cycle(pair, mu);

    let main = {
        let left = mp.ambient_representatives(r);
        let right = mq.ambient_representatives(s);
        main_matrix(mp, &mu.chain, r, &left, &right)
    };
    let lf = lefschetz_at(pair, &mu.chain, r);
    let lf_before = if r == 0 { empty_pairing(0) } else { lefschetz_at(pair, &mu.chain, r - 1) };
    let t_before = if r == 0 { empty_pairing(0) } else { boundary_pairing(mp, mq, r - 1, &lambda) };
    let t_at = boundary_pairing(mp, mq, r, &lambda);

    let iota_kappa = mp.iota_kappa()?;
    let eta_rho = mq.eta_rho()?;

    // top square: H^{r-1}(Q_p) -> H^r(AI_p) against (H^{s}(tau_l))^dual -> (H^s(AI_q))^dual
    let top = if r == 0 {
        SquareVerdict { commutes: true, sign: 1 }
    } else {
        let delta = connecting_homomorphism(
            &iota_kappa,
            &basis(&mp.quotient_cohomology, r - 1),
            &basis(&mp.cohomology, r),
        )?;
        let rho = induced_map(&mq.rho, &basis(&mq.cohomology, s), &basis(&mq.cotruncation_cohomology, s))?;
        compare(&rho.transpose().mul(&t_before.entries.transpose()), &main.entries.transpose().mul(&delta), false)
    };

    // middle square: H^r(AI_p) -> H^r(M) against (H^s(AI_q))^dual -> (H^s(M, dM))^dual
    let middle = {
        let iota = induced_map(mp.iota(), &basis(&mp.cohomology, r), &basis(&pair.manifold.cohomology, r))?;
        let eta = induced_map(&mq.eta, &basis(&pair.relative_cohomology, s), &basis(&mq.cohomology, s))?;
        compare(&lf.entries.transpose().mul(&iota), &eta.transpose().mul(&main.entries.transpose()), false)
    };

    // bottom square: H^r(M) -> H^r(Q_p) against (H^s(M, dM))^dual -> (H^{s-1}(tau_l))^dual
    let bottom = {
        let kappa = induced_map(&mp.kappa, &basis(&pair.manifold.cohomology, r), &basis(&mp.quotient_cohomology, r))?;
        let lhs = t_at.entries.transpose().mul(&kappa);
        if s == 0 {
            SquareVerdict { commutes: lhs.is_zero(), sign: 1 }
        } else {
            let delta = connecting_homomorphism(
                &eta_rho,
                &basis(&mq.cotruncation_cohomology, s - 1),
                &basis(&pair.relative_cohomology, s),
            )?;
            compare(&lhs, &delta.transpose().mul(&lf.entries.transpose()), true)
        }
    };

    let outer_nondegenerate = [&lf_before, &t_before, &lf, &t_at].iter().all(|p| p.nondegenerate());
    Ok(LadderRecord {
        degree: r,
        top,
        middle,
        bottom,
        outer_nondegenerate,
        middle_nondegenerate: main.nondegenerate(),
    })
}

/// `(-1)^n d mu`, as a cycle on the boundary.
pub fn boundary_cycle(pair: &ManifoldPair, mu: &FundamentalChain) -> Chain {
    let n = pair.n;
    let m = &pair.manifold.simplicial;
    let l = &pair.boundary.simplicial;
    let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
    match mu.chain.boundary(m).restrict_to(m, l) {
        Some(c) => Chain { degree: c.degree, coeffs: c.coeffs.iter().map(|x| x * &sign).collect() },
        None => Chain { degree: n - 1, coeffs: zero_vector(l.count(n - 1)) },
    }
}

/// `<i*(a) u i*(b), d mu>` for cochains `a`, `b` of `M`.
pub fn boundary_integral(pair: &ManifoldPair, mu: &FundamentalChain, a: &[Rational], p: usize, b: &[Rational], q: usize) -> Rational {
    let res_a = pair.restriction.degree_map(p).mul_vec(a);
    let res_b = pair.restriction.degree_map(q).mul_vec(b);
    let product = pair.boundary.cup.cup(&res_a, p, &res_b, q);
    let m = &pair.manifold.simplicial;
    let d = mu.chain.boundary(m).restrict_to(m, &pair.boundary.simplicial).expect("valid fundamental chain");
    if product.is_empty() {
        return rat(0);
    }
    crate::linalg::dot(&product, &d.coeffs)
}

/// Random checks of `<d x, xi> = (-1)^{r+1} <x, boundary xi>`; returns the number of failures.
pub fn stokes_trials<R: Rng>(k: &CupComplex, trials: usize, rng: &mut R) -> usize {
    let top = match k.simplicial.dimension() {
        Some(t) if t > 0 => t,
        _ => return 0,
    };
    let mut failures = 0;
    for _ in 0..trials {
        let r = rng.gen_range(0..top);
        let x = random_sparse(rng, k.simplicial.count(r));
        let xi = random_sparse(rng, k.simplicial.count(r + 1));
        let lhs = dot(&k.cochains.apply_d(r, &x), &xi);
        let rhs = dot(&x, &k.simplicial.boundary_matrix(r + 1).mul_vec(&xi));
        let rhs = if r % 2 == 0 { -rhs } else { rhs };
        if lhs != rhs {
            failures += 1;
        }
    }
    failures
}

/// Random checks that `<i*(eta) u i*(beta), d mu>` vanishes for model cochains `eta`
/// and closed `beta` of complementary models in total degree `n - 1`.
pub fn boundary_vanishing_trials<R: Rng>(
    mp: &IntersectionModel,
    mq: &IntersectionModel,
    mu: &FundamentalChain,
    trials: usize,
    rng: &mut R,
) -> usize {
    let n = mp.pair.n;
    let mut failures = 0;
    for _ in 0..trials {
        let a = rng.gen_range(0..n);
        let b = n - 1 - a;
        let eta = mp.iota().degree_map(a).mul_vec(&random_sparse(rng, mp.complex().dim(a)));
        let mut beta = zero_vector(mq.pair.manifold.cochains.dim(b));
        for v in perturbed_representatives(mq, b, rng) {
            let c = rat(rng.gen_range(-3..=3));
            beta = add_vectors(&beta, &v.iter().map(|x| x * &c).collect::<Vec<_>>());
        }
        if boundary_integral(&mp.pair, mu, &eta, a, &beta, b) != rat(0) {
            failures += 1;
        }
    }
    failures
}
