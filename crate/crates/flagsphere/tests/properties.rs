//! Property tests for the structural identities the rest of the tower
//! leans on: link algebra, f-vector bookkeeping, gamma round trips and the
//! move identities, over randomly generated flag complexes.

use proptest::prelude::*;

use flagsphere::canon::is_isomorphic;
use flagsphere::cm::{certify_sphere, SphereStatus};
use flagsphere::complex::{Face, Graph, SimplicialComplex, VertexId};
use flagsphere::homology::{reduced_betti, FieldSpec};
use flagsphere::moves::edge_subdivide;
use flagsphere::vectors::{dehn_sommerville_check, gamma_vector, h_polynomial, Polynomial};

/// Random graph on n vertices as an edge-presence vector; its clique complex
/// is a random flag complex.
fn flag_complex_strategy(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (3..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(prop::bool::weighted(0.55), pairs))
        })
        .prop_map(|(n, present)| {
            let mut graph = Graph::new();
            for v in 0..n as u32 {
                graph.add_vertex(VertexId(v));
            }
            let mut idx = 0;
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if present[idx] {
                        graph.add_edge(VertexId(a), VertexId(b));
                    }
                    idx += 1;
                }
            }
            SimplicialComplex::clique_complex(&graph)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clique_complexes_are_flag(k in flag_complex_strategy(7)) {
        prop_assert!(k.is_flag());
    }

    #[test]
    fn flag_complex_rebuilds_from_its_skeleton(k in flag_complex_strategy(7)) {
        prop_assert_eq!(SimplicialComplex::clique_complex(&k.one_skeleton()), k);
    }

    #[test]
    fn link_of_link_is_link_of_union(k in flag_complex_strategy(7)) {
        for edge in k.edges() {
            let p = edge.vertices()[0];
            let q = edge.vertices()[1];
            let nested = k
                .link(&Face::single(p))
                .unwrap()
                .link(&Face::single(q))
                .unwrap();
            let direct = k.link(&edge).unwrap();
            prop_assert_eq!(nested, direct);
        }
    }

    #[test]
    fn f_vector_splits_over_antistar_and_link(k in flag_complex_strategy(7)) {
        let f = k.f_vector().unwrap();
        for v in k.vertices().collect::<Vec<_>>() {
            // skip complexes that vanish entirely without v
            if k.vertex_count() == 1 {
                continue;
            }
            let ast = k.antistar(v).unwrap();
            let lk = k.link(&Face::single(v)).unwrap();
            let rebuilt = &ast.f_vector().unwrap() + &lk.f_vector().unwrap().shift_up(1);
            prop_assert_eq!(&f, &rebuilt);
        }
    }

    #[test]
    fn f_vector_of_join_is_product(a in flag_complex_strategy(5), b in flag_complex_strategy(5)) {
        let (joined, _) = a.join(&b);
        let product = &a.f_vector().unwrap() * &b.f_vector().unwrap();
        prop_assert_eq!(joined.f_vector().unwrap(), product);
    }

    #[test]
    fn enumerate_faces_matches_f_vector(k in flag_complex_strategy(7)) {
        let f = k.f_vector().unwrap();
        let dim = k.dimension().unwrap();
        for card in 0..=(dim + 1) as usize {
            let count = k.faces_with_cardinality(card).len();
            prop_assert_eq!(f.coeff(card), count.into());
        }
    }

    #[test]
    fn gamma_round_trip(entries in proptest::collection::vec(-9i64..=9, 1..=4)) {
        let mut entries = entries;
        entries[0] = 1;
        let d = 2 * (entries.len() - 1) + 1;
        let gamma = Polynomial::from_coeffs(entries.clone());
        // expand sum gamma_j x^j (1+x)^(d-2j) and extract it back
        let mut h = Polynomial::zero();
        for (j, g) in entries.iter().enumerate() {
            let term = Polynomial::from_coeffs(vec![*g]);
            let term = &term * &Polynomial::one_plus_x_pow(d - 2 * j);
            h = &h + &term.shift_up(j);
        }
        let extracted = gamma_vector(&h, d).unwrap();
        prop_assert_eq!(Polynomial::from_coeffs(extracted.entries().to_vec()), gamma);
    }

    #[test]
    fn suspension_multiplies_h_by_one_plus_x(k in flag_complex_strategy(6)) {
        let susp = k.suspension();
        let expected = &h_polynomial(&k).unwrap() * &Polynomial::one_plus_x_pow(1);
        prop_assert_eq!(h_polynomial(&susp).unwrap(), expected);
    }

    #[test]
    fn cones_are_acyclic(k in flag_complex_strategy(6)) {
        let cone = k.cone();
        prop_assert!(reduced_betti(&cone, FieldSpec::gf2()).unwrap().all_zero());
        prop_assert!(reduced_betti(&cone, FieldSpec::rationals()).unwrap().all_zero());
    }

    #[test]
    fn euler_characteristic_agrees_with_rational_betti(k in flag_complex_strategy(6)) {
        let betti = reduced_betti(&k, FieldSpec::rationals()).unwrap();
        let chi = k.euler_characteristic().unwrap();
        prop_assert_eq!(betti.euler_sum(), chi - 1);
    }

    #[test]
    fn subdivision_keeps_flagness_and_shifts_h(k in flag_complex_strategy(6)) {
        let edges = k.edges();
        if let Some(edge) = edges.first() {
            let sub = edge_subdivide(&k, edge, k.fresh_vertex()).unwrap();
            prop_assert!(sub.is_flag());
            prop_assert_eq!(sub.vertex_count(), k.vertex_count() + 1);
            if k.is_pure() {
                let diff = &h_polynomial(&sub).unwrap() - &h_polynomial(&k).unwrap();
                let expected = h_polynomial(&k.link(edge).unwrap()).unwrap().shift_up(1);
                prop_assert_eq!(diff, expected);
            }
        }
    }

    #[test]
    fn link_of_subdivision_commutes(k in flag_complex_strategy(7)) {
        // lk_{K_e'}(e) = (lk_K(e))_{e'} whenever e and e' are disjoint and
        // e is an edge of lk_K(e')
        let edges = k.edges();
        let fresh = k.fresh_vertex();
        for e_prime in &edges {
            let link_of_eprime = k.link(e_prime).unwrap();
            for e in link_of_eprime.edges() {
                let subdivided = edge_subdivide(&k, e_prime, fresh).unwrap();
                let left = subdivided.link(&e).unwrap();
                let right =
                    edge_subdivide(&k.link(&e).unwrap(), e_prime, fresh).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn every_catalog_sphere_satisfies_dehn_sommerville() {
    for entry in flagsphere::catalog::catalog() {
        assert!(
            dehn_sommerville_check(&entry.complex).unwrap(),
            "{}",
            entry.name
        );
        assert_ne!(
            certify_sphere(&entry.complex, Some(&entry.provenance)),
            SphereStatus::Unknown,
            "{}",
            entry.name
        );
    }
}

#[test]
fn suspension_preserves_isomorphism_class_of_crosspolys() {
    let c3 = SimplicialComplex::cross_polytope_boundary(3).unwrap();
    let c5 = SimplicialComplex::cross_polytope_boundary(5).unwrap();
    assert!(is_isomorphic(&c3.suspension_iterated(2), &c5));
}
