mod common;

use std::sync::Arc;

use ispace_core::duality::{
    boundary_integral, boundary_vanishing_trials, ladder_check, lefschetz_pairing, main_pairing,
};
use ispace_core::fixtures;
use ispace_core::linalg::{kernel_basis, rat, unit_vector, RationalMatrix};
use ispace_core::model::{build_model, model_betti, IntersectionModel, Perversity};
use ispace_core::oracle::{chain_truncate, compare, mapping_cone, simplicial_chains};
use ispace_core::pair::ManifoldPair;
use ispace_core::simplicial::SimplicialComplex;
use ispace_core::ComplementStrategy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Case {
    name: String,
    pair: Arc<ManifoldPair>,
    p: IntersectionModel,
    q: IntersectionModel,
}

fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for (name, pair) in common::valid_pairs() {
        for p in Perversity::all(pair.n) {
            let mp = build_model(pair.clone(), &p, ComplementStrategy::Lex).unwrap();
            let mq = build_model(pair.clone(), &p.complementary(), ComplementStrategy::Lex).unwrap();
            out.push(Case { name: format!("{name} {p}"), pair: pair.clone(), p: mp, q: mq });
        }
    }
    out
}

#[test]
fn model_is_the_fiber_product() {
    for case in cases() {
        for m in [&case.p, &case.q] {
            for r in 0..=case.pair.n {
                let restrict = case.pair.restriction.degree_map(r);
                let lhs = restrict.mul(&m.iota().degree_map(r));
                let rhs = m.cotruncation.inclusion().degree_map(r).mul(&m.rho.degree_map(r));
                assert_eq!(lhs, rhs, "{} degree {r}", case.name);
                let expected = kernel_basis(&restrict).dim() + m.cotruncation.complex().dim(r);
                assert_eq!(m.complex().dim(r), expected, "{} degree {r}", case.name);
            }
        }
    }
}

#[test]
fn models_are_reduced_symmetric_and_choice_free() {
    for case in cases() {
        let n = case.pair.n;
        let (bp, bq) = (model_betti(&case.p), model_betti(&case.q));
        assert_eq!(bp[0], 0, "{}", case.name);
        for r in 0..=n {
            assert_eq!(bp[r], bq[n - r], "{} degree {r}", case.name);
        }
        let rev = build_model(case.pair.clone(), &case.p.perversity, ComplementStrategy::ReverseLex).unwrap();
        assert_eq!(model_betti(&rev), bp, "{}", case.name);
    }
}

#[test]
fn oracle_agrees_with_every_model() {
    for case in cases() {
        for m in [&case.p, &case.q] {
            let t = chain_truncate(&case.pair.boundary.simplicial, m.k).unwrap();
            let cone = mapping_cone(&t, &case.pair).unwrap();
            assert!(cone.les_consistent(), "{}", case.name);
            let verdict = compare(m, &cone);
            assert!(verdict.matches, "{} {verdict:?}", case.name);
        }
    }
}

#[test]
fn main_pairing_is_nondegenerate_and_orientation_covariant() {
    for case in cases() {
        let mu = &case.pair.mu;
        let report = main_pairing(&case.p, &case.q, mu).unwrap();
        assert!(report.pass(), "{}", case.name);
        let flipped = main_pairing(&case.p, &case.q, &mu.neg()).unwrap();
        for (a, b) in report.pairings.iter().zip(&flipped.pairings) {
            assert_eq!(a.entries.neg(), b.entries, "{}", case.name);
            assert_eq!(a.nondegenerate(), b.nondegenerate());
        }
    }
}

#[test]
fn ladder_is_five_lemma_consistent() {
    for case in cases() {
        for r in 0..=case.pair.n {
            let rec = ladder_check(&case.p, &case.q, &case.pair.mu, r).unwrap();
            assert!(rec.pass(), "{} degree {r} {rec:?}", case.name);
            assert!(rec.five_lemma_consistent(), "{} degree {r}", case.name);
        }
    }
}

#[test]
fn products_of_model_classes_vanish_on_the_boundary() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for case in cases() {
        let n = case.pair.n;
        let mu = &case.pair.mu;
        for a in 0..n {
            let b = n - 1 - a;
            let dim = case.p.complex().dim(a);
            let incl = case.p.iota().degree_map(a);
            for i in 0..dim {
                let eta = incl.mul_vec(&unit_vector(dim, i));
                for beta in case.q.ambient_representatives(b) {
                    assert_eq!(boundary_integral(&case.pair, mu, &eta, a, &beta, b), rat(0), "{}", case.name);
                }
            }
        }
        assert_eq!(boundary_vanishing_trials(&case.p, &case.q, mu, 200, &mut rng), 0, "{}", case.name);
    }
}

#[test]
fn torus_intersection_form_is_unimodular() {
    let pair = ManifoldPair::new(fixtures::torus7(), SimplicialComplex::empty()).unwrap();
    let report = lefschetz_pairing(&pair, &pair.mu).unwrap();
    assert!(report.pass());
    let det = report.pairings[1].entries.determinant().unwrap();
    assert!(det == rat(1) || det == rat(-1), "det = {det}");
}

#[test]
fn chain_truncation_keeps_homology_below_the_cutoff() {
    let mut links: Vec<(String, SimplicialComplex)> =
        common::valid_pairs().into_iter().map(|(n, p)| (n, p.boundary.simplicial.clone())).collect();
    links.push(("torus7".into(), fixtures::torus7()));
    for (name, l) in links {
        let chains = simplicial_chains(&l);
        let betti = chains.betti();
        for k in 1..=l.dimension().unwrap() + 1 {
            let t = chain_truncate(&l, k).unwrap();
            let tb = t.complex.betti();
            for (r, &b) in betti.iter().enumerate() {
                let here = tb.get(r).copied().unwrap_or(0);
                if r >= k {
                    assert_eq!(here, 0, "{name} k={k} r={r}");
                    continue;
                }
                assert_eq!(here, b, "{name} k={k} r={r}");
                let cycles = kernel_basis(&t.complex.boundary(r)).as_matrix();
                let boundaries = chains.boundary(r + 1);
                let image = t.map[r].mul(&cycles);
                let rank = RationalMatrix::hstack(&image, &boundaries).rank() - boundaries.rank();
                assert_eq!(rank, b, "{name} k={k} r={r}");
            }
        }
    }
}
