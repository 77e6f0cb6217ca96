mod common;

use ispace_core::cochain::{cohomology, integrate, simplicial_cochains, Cochain};
use ispace_core::fixtures;
use ispace_core::linalg::{add_vectors, rat, scale_vector, Vector};
use ispace_core::simplicial::{fundamental_chain, link_of_vertex, Chain, Simplex, SimplicialComplex};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sparse(rng: &mut ChaCha8Rng, len: usize) -> Vector {
    (0..len).map(|_| if rng.gen_bool(0.3) { rat(rng.gen_range(-3..=3)) } else { rat(0) }).collect()
}

fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    let simplex = proptest::collection::btree_set(0u32..7, 1..=3);
    proptest::collection::vec(simplex, 1..6).prop_map(|sets| {
        SimplicialComplex::closure(sets.into_iter().map(|s| Simplex::new(s.into_iter().collect())))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn link_of_cone_apex_is_base(k in small_complex()) {
        let cone = k.cone(100);
        prop_assert_eq!(link_of_vertex(&cone, 100).unwrap(), k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cup_is_leibniz_and_associative(seed in any::<u64>(), p in 0usize..2, q in 0usize..2) {
        let k = fixtures::torus7();
        let (c, cup) = simplicial_cochains(&k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_sparse(&mut rng, c.dim(p));
        let b = random_sparse(&mut rng, c.dim(q));
        let lhs = c.apply_d(p + q, &cup.cup(&a, p, &b, q));
        let sign = if p % 2 == 0 { rat(1) } else { rat(-1) };
        let rhs = add_vectors(
            &cup.cup(&c.apply_d(p, &a), p + 1, &b, q),
            &scale_vector(&cup.cup(&a, p, &c.apply_d(q, &b), q + 1), &sign),
        );
        prop_assert_eq!(lhs, rhs);
        if p + q < 2 {
            let e = random_sparse(&mut rng, c.dim(0));
            let left = cup.cup(&cup.cup(&a, p, &b, q), p + q, &e, 0);
            let right = cup.cup(&a, p, &cup.cup(&b, q, &e, 0), q);
            prop_assert_eq!(left, right);
        }
    }
}

#[test]
fn fundamental_chains_are_relative_cycles() {
    for doc in fixtures::valid_documents() {
        let d = common::decomposition(&doc);
        let mu = fundamental_chain(&d).unwrap();
        let boundary = mu.chain.boundary(&d.exterior);
        assert!(boundary.boundary(&d.exterior).coeffs.iter().all(|x| *x == rat(0)), "{}", doc.name);
        assert!(boundary.restrict_to(&d.exterior, &d.link).is_some(), "{}", doc.name);
    }
}

#[test]
fn link_betti_numbers_satisfy_poincare_duality() {
    for (name, pair) in common::valid_pairs() {
        let b = pair.boundary.betti();
        let c = pair.n - 1;
        assert_eq!(b.len(), c + 1, "{name}");
        for r in 0..=c {
            assert_eq!(b[r], b[c - r], "{name} degree {r}");
        }
    }
}

#[test]
fn stokes_on_random_cochains() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (name, k) in common::bundled_complexes() {
        let top = k.simplicial.dimension().unwrap();
        let mut failures = 0;
        for _ in 0..1000 {
            let r = rng.gen_range(0..top);
            let x = Cochain { degree: r, coeffs: random_sparse(&mut rng, k.simplicial.count(r)) };
            let xi = Chain { degree: r + 1, coeffs: random_sparse(&mut rng, k.simplicial.count(r + 1)) };
            let dx = Cochain { degree: r + 1, coeffs: k.cochains.apply_d(r, &x.coeffs) };
            let lhs = integrate(&dx, &xi).unwrap();
            let rhs = integrate(&x, &xi.boundary(&k.simplicial)).unwrap();
            let rhs = if r % 2 == 0 { -rhs } else { rhs };
            if lhs != rhs {
                failures += 1;
            }
        }
        assert_eq!(failures, 0, "{name}");
    }
}

#[test]
fn differentials_square_to_zero() {
    for (name, k) in common::bundled_complexes() {
        let c = &k.cochains;
        for r in 0..c.num_degrees().saturating_sub(2) {
            assert!(c.differential(r + 1).mul(&c.differential(r)).is_zero(), "{name} degree {r}");
        }
    }
}

#[test]
fn cup_is_graded_commutative_in_cohomology() {
    for (name, k) in common::bundled_complexes() {
        let c = &k.cochains;
        let top = c.num_degrees() - 1;
        for p in 0..=top {
            for q in 0..=top - p {
                let target = cohomology(c, p + q);
                for a in &k.cohomology[p].representatives {
                    for b in &k.cohomology[q].representatives {
                        let sign = if (p * q) % 2 == 0 { rat(-1) } else { rat(1) };
                        let defect = add_vectors(&k.cup.cup(a, p, b, q), &scale_vector(&k.cup.cup(b, q, a, p), &sign));
                        assert!(target.is_exact(&defect), "{name} degrees {p}, {q}");
                    }
                }
            }
        }
    }
}

#[test]
fn euler_characteristic_matches_betti_numbers() {
    for (name, k) in common::bundled_complexes() {
        let alternating: i64 = k
            .betti()
            .iter()
            .enumerate()
            .map(|(r, &b)| if r % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        assert_eq!(k.cochains.euler_characteristic(), alternating, "{name}");
        assert_eq!(k.simplicial.euler_characteristic(), alternating, "{name}");
    }
}
