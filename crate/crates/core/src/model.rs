//! Perversities and the fiber-product model of intersection-space cohomology.
//!
//! Over a decomposition `X = M u cone(L)` and a cutoff `k`, the model in degree
//! `r` is the subspace of `C^r(M)` of cochains whose restriction to `L` lies in
//! the cotruncation `tau_{>=k} C^r(L)`. It sits in two short exact sequences
//!
//! ```text
//! 0 -> C(M, L) --eta--> AI --rho--> tau_{>=k} C(L) -> 0
//! 0 -> AI --iota--> C(M) --kappa--> C(L) / tau_{>=k} C(L) -> 0
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochain::{
    cohomology_all, long_exact_sequence, CochainComplex, CochainError, CochainMap, CohomologyBasis,
    LongExactSequence, ShortExactSequence, SubComplex,
};
use crate::cotrunc::{cotruncate, quotient_by_cotruncation, CotruncError, Quotient, StandardCotruncation};
use crate::linalg::{kernel_basis, solve_matrix, ComplementStrategy, RationalMatrix};
use crate::pair::ManifoldPair;
use crate::ErrorCode;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PerversityError {
    #[error("perversity needs at least the value at codimension 2")]
    Empty,
    #[error("perversity must vanish at codimension 2, got {0}")]
    NonzeroAtTwo(i64),
    #[error("perversity decreases at codimension {0}")]
    Decreasing(usize),
    #[error("perversity jumps by more than one at codimension {0}")]
    Jump(usize),
    #[error("unknown perversity `{0}`")]
    Unknown(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Perversity(#[from] PerversityError),
    #[error("perversity is defined up to codimension {defined}, singularity has codimension {n}")]
    Domain { n: usize, defined: usize },
    #[error("model construction failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Cotrunc(#[from] CotruncError),
}

impl ModelError {
    pub fn code(&self) -> ErrorCode {
        match self {
            ModelError::Perversity(_) | ModelError::Domain { .. } => ErrorCode::BadPerversity,
            _ => ErrorCode::InternalExactness,
        }
    }
}

/// Values `p(s)` for codimensions `s = 2..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Perversity(Vec<i64>);

impl Perversity {
    pub fn new(values: Vec<i64>) -> Result<Self, PerversityError> {
        let Some(&first) = values.first() else { return Err(PerversityError::Empty) };
        if first != 0 {
            return Err(PerversityError::NonzeroAtTwo(first));
        }
        for (i, w) in values.windows(2).enumerate() {
            let s = i + 3;
            if w[1] < w[0] {
                return Err(PerversityError::Decreasing(s));
            }
            if w[1] > w[0] + 1 {
                return Err(PerversityError::Jump(s));
            }
        }
        Ok(Perversity(values))
    }

    fn from_fn(n: usize, f: impl Fn(i64) -> i64) -> Self {
        Perversity((2..=n as i64).map(f).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| 0)
    }

    pub fn top(n: usize) -> Self {
        Self::from_fn(n, |s| s - 2)
    }

    pub fn lower_middle(n: usize) -> Self {
        Self::from_fn(n, |s| (s - 2).div_euclid(2))
    }

    pub fn upper_middle(n: usize) -> Self {
        Self::from_fn(n, |s| (s - 1).div_euclid(2))
    }

    /// Every perversity defined on codimensions `2..=n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let mut out = vec![vec![0i64]];
        for _ in 3..=n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    let last = *v.last().expect("nonempty");
                    [last, last + 1].map(|next| {
                        let mut w = v.clone();
                        w.push(next);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(Perversity).collect()
    }

    /// Resolve `zero`, `top`, `lower-middle`, `upper-middle` or a comma list.
    pub fn parse(spec: &str, n: usize) -> Result<Self, PerversityError> {
        match spec.trim() {
            "zero" => Ok(Self::zero(n)),
            "top" => Ok(Self::top(n)),
            "lower-middle" => Ok(Self::lower_middle(n)),
            "upper-middle" => Ok(Self::upper_middle(n)),
            list => {
                let values: Result<Vec<i64>, _> = list
                    .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
                    .split(',')
                    .map(|v| v.trim().parse::<i64>())
                    .collect();
                Self::new(values.map_err(|_| PerversityError::Unknown(spec.to_string()))?)
            }
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// Largest codimension with a stored value.
    pub fn max_codim(&self) -> usize {
        self.0.len() + 1
    }

    pub fn at(&self, s: usize) -> Option<i64> {
        s.checked_sub(2).and_then(|i| self.0.get(i)).copied()
    }

    /// `q(s) = s - 2 - p(s)`.
    pub fn complementary(&self) -> Perversity {
        Perversity(self.0.iter().enumerate().map(|(i, p)| i as i64 - p).collect())
    }

    pub fn is_complementary_to(&self, other: &Perversity) -> bool {
        self.0.len() == other.0.len() && self.complementary() == *other
    }

    /// `k = n - 1 - p(n)`.
    pub fn cutoff_degree(&self, n: usize) -> Result<usize, ModelError> {
        let p = self.at(n).ok_or(ModelError::Domain { n, defined: self.max_codim() })?;
        let k = n as i64 - 1 - p;
        debug_assert!(k > 0);
        Ok(k as usize)
    }
}

impl TryFrom<Vec<i64>> for Perversity {
    type Error = PerversityError;

    fn try_from(values: Vec<i64>) -> Result<Self, Self::Error> {
        Perversity::new(values)
    }
}

impl From<Perversity> for Vec<i64> {
    fn from(p: Perversity) -> Self {
        p.0
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", values.join(","))
    }
}

/// Which short exact sequence of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelSequence {
    EtaRho,
    IotaKappa,
}

impl FromStr for ModelSequence {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ses-eta-rho" | "eta-rho" => Ok(ModelSequence::EtaRho),
            "ses-iota-kappa" | "iota-kappa" => Ok(ModelSequence::IotaKappa),
            other => Err(format!("unknown sequence `{other}`")),
        }
    }
}

/// The model with its structure maps.
#[derive(Debug, Clone)]
pub struct IntersectionModel {
    pub perversity: Perversity,
    pub k: usize,
    pub strategy: ComplementStrategy,
    pub pair: Arc<ManifoldPair>,
    pub cotruncation: StandardCotruncation,
    pub cotruncation_cohomology: Vec<CohomologyBasis>,
    pub quotient: Quotient,
    pub quotient_cohomology: Vec<CohomologyBasis>,
    /// The model as a subcomplex of `C(M)`; its inclusion is `iota`.
    pub sub: SubComplex,
    pub rho: CochainMap,
    pub eta: CochainMap,
    pub kappa: CochainMap,
    pub cohomology: Vec<CohomologyBasis>,
}

impl IntersectionModel {
    pub fn complex(&self) -> &CochainComplex {
        &self.sub.complex
    }

    pub fn iota(&self) -> &CochainMap {
        &self.sub.inclusion
    }

    /// Representatives of `H^r` of the model as cochains on `M`.
    pub fn ambient_representatives(&self, r: usize) -> Vec<crate::linalg::Vector> {
        let incl = self.iota().degree_map(r);
        self.cohomology
            .get(r)
            .map(|h| h.representatives.iter().map(|v| incl.mul_vec(v)).collect())
            .unwrap_or_default()
    }

    pub fn eta_rho(&self) -> Result<ShortExactSequence<'_>, ModelError> {
        Ok(ShortExactSequence::new(
            &self.pair.relative.complex,
            self.complex(),
            self.cotruncation.complex(),
            &self.eta,
            &self.rho,
        )?)
    }

    pub fn iota_kappa(&self) -> Result<ShortExactSequence<'_>, ModelError> {
        Ok(ShortExactSequence::new(
            self.complex(),
            &self.pair.manifold.cochains,
            &self.quotient.complex,
            self.iota(),
            &self.kappa,
        )?)
    }
}

fn internal(what: &str, r: usize) -> ModelError {
    ModelError::Internal(format!("{what} in degree {r}"))
}

pub fn build_model(
    pair: Arc<ManifoldPair>,
    perversity: &Perversity,
    strategy: ComplementStrategy,
) -> Result<IntersectionModel, ModelError> {
    let n = pair.n;
    let k = perversity.cutoff_degree(n)?;
    let cm = &pair.manifold.cochains;
    let cl = &pair.boundary.cochains;
    let cotruncation = cotruncate(cl, k, strategy)?;
    let quotient = quotient_by_cotruncation(cl, &cotruncation)?;
    let count = cm.num_degrees();

    let restriction = |r: usize| pair.restriction.degree_map(r).into_owned();
    let theta = |r: usize| {
        let m = cotruncation.inclusion().degree_map(r).into_owned();
        if r < cl.num_degrees() { m } else { RationalMatrix::zeros(0, 0) }
    };

    // i*(w) lies in the image of theta iff it is killed by the annihilator of that image
    let mut bases = Vec::with_capacity(count);
    for r in 0..count {
        let t = theta(r);
        let annihilator = kernel_basis(&t.transpose());
        let conditions = RationalMatrix::from_rows(cl.dim(r), annihilator.vectors());
        bases.push(kernel_basis(&conditions.mul(&restriction(r))));
    }
    let sub = SubComplex::from_subspaces(cm, &bases)?;
    let iota = &sub.inclusion;

    let mut rho = Vec::with_capacity(count);
    let mut eta = Vec::with_capacity(count);
    for r in 0..count {
        let iota_r = iota.degree_map(r);
        let restricted = restriction(r).mul(&iota_r);
        let t = theta(r);
        rho.push(solve_matrix(&t, &restricted).ok_or_else(|| internal("restriction leaves the cotruncation", r))?);
        let j = pair.relative.inclusion.degree_map(r);
        eta.push(solve_matrix(&iota_r, &j).ok_or_else(|| internal("relative cochains leave the model", r))?);
    }
    let rho = CochainMap::new(&sub.complex, cotruncation.complex(), rho)?;
    let eta = CochainMap::new(&pair.relative.complex, &sub.complex, eta)?;
    let kappa = pair.restriction.then(&quotient.projection);

    for r in 0..count {
        let lhs = restriction(r).mul(&iota.degree_map(r));
        let rhs = theta(r).mul(&rho.degree_map(r));
        if lhs != rhs {
            return Err(internal("fiber square does not commute", r));
        }
        let kernel = kernel_basis(&restriction(r)).dim();
        if sub.complex.dim(r) != kernel + cotruncation.complex().dim(r) {
            return Err(internal("fiber product has the wrong dimension", r));
        }
    }

    let cotruncation_cohomology = cohomology_all(cotruncation.complex());
    let quotient_cohomology = cohomology_all(&quotient.complex);
    let cohomology = cohomology_all(&sub.complex);
    let model = IntersectionModel {
        perversity: perversity.clone(),
        k,
        strategy,
        pair,
        cotruncation,
        cotruncation_cohomology,
        quotient,
        quotient_cohomology,
        sub,
        rho,
        eta,
        kappa,
        cohomology,
    };
    model.eta_rho()?;
    model.iota_kappa()?;
    Ok(model)
}

pub fn model_betti(m: &IntersectionModel) -> Vec<usize> {
    m.cohomology.iter().map(CohomologyBasis::dimension).collect()
}

pub fn model_les(m: &IntersectionModel, which: ModelSequence) -> Result<LongExactSequence, ModelError> {
    let les = match which {
        ModelSequence::EtaRho => long_exact_sequence(
            &m.eta_rho()?,
            &m.pair.relative_cohomology,
            &m.cohomology,
            &m.cotruncation_cohomology,
        ),
        ModelSequence::IotaKappa => long_exact_sequence(
            &m.iota_kappa()?,
            &m.cohomology,
            &m.pair.manifold.cohomology,
            &m.quotient_cohomology,
        ),
    };
    Ok(les?)
}
