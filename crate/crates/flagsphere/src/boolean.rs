//! Boolean decomposition search: given a symmetric h with nonnegative gamma,
//! find a seed complex S whose face counts are the gamma entries, so that
//! Γ = { F ∪ G : F ∈ S, G ⊆ [d - 2|F|] } has f-vector equal to h.
//!
//! The seed search is a small f-vector-constrained backtracking over face
//! lattices; every returned seed is re-verified by brute-force enumeration
//! of Γ's faces.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, VertexId};
use crate::vectors::{gamma_vector, h_polynomial, GammaVector, Polynomial, VectorsError};

#[derive(Debug, Error)]
pub enum BooleanError {
    #[error(transparent)]
    Vectors(#[from] VectorsError),
    #[error(transparent)]
    Complex(#[from] crate::complex::ComplexError),
}

/// Auxiliary seed vertices use labels from this offset; Boolean coordinate
/// vertices use 0..d. The two blocks never collide at catalog scale.
pub const SEED_LABEL_BASE: u32 = 1000;

/// A seed S together with the ambient Boolean parameter d. The largest face
/// of S has at most d/2 vertices.
#[derive(Clone, Debug, Serialize)]
pub struct BooleanSeed {
    pub seed: SimplicialComplex,
    pub d: usize,
}

impl BooleanSeed {
    /// Expand to Γ = { F ∪ G : F ∈ S, G ⊆ [d - 2|F|] } as an explicit face
    /// set on disjoint labels (seed vertices above SEED_LABEL_BASE, Boolean
    /// coordinates 0..d).
    pub fn expand(&self) -> Vec<Face> {
        let mut faces = BTreeSet::new();
        for f in self.seed.all_faces() {
            let budget = self.d - 2 * f.cardinality();
            // all subsets of the first `budget` Boolean coordinates
            for mask in 0u32..(1 << budget) {
                let mut verts: Vec<u32> = f.vertices().iter().map(|v| v.0).collect();
                for b in 0..budget {
                    if (mask >> b) & 1 == 1 {
                        verts.push(b as u32);
                    }
                }
                faces.insert(Face::new(verts).expect("disjoint labels"));
            }
        }
        faces.into_iter().collect()
    }

    /// f-polynomial of Γ by brute-force enumeration.
    pub fn expanded_f_polynomial(&self) -> Polynomial {
        let faces = self.expand();
        let max_card = faces.iter().map(Face::cardinality).max().unwrap_or(0);
        let mut counts = vec![BigInt::from(0); max_card + 1];
        for f in &faces {
            counts[f.cardinality()] += 1;
        }
        Polynomial::from_coeffs(counts)
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum SearchOutcome {
    /// Seed found; Γ re-verified against the input by enumeration.
    Found { seed: BooleanSeed, verified: bool },
    /// Some gamma entry is negative: no seed can exist.
    Impossible {
        gamma_index: usize,
        #[serde(serialize_with = "crate::vectors::serialize_bigint")]
        gamma_value: BigInt,
    },
    /// Budget exhausted or no complex with the required face counts exists
    /// within the vertex cap; inconclusive.
    NotFound { reason: String },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&BooleanSeed> {
        match self {
            SearchOutcome::Found { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SeedBudget {
    /// Cap on auxiliary vertices considered.
    pub max_vertices: usize,
    /// Cap on backtracking states.
    pub max_states: usize,
}

impl Default for SeedBudget {
    fn default() -> Self {
        SeedBudget {
            max_vertices: 12,
            max_states: 2_000_000,
        }
    }
}

/// Search for a Boolean decomposition seed for a symmetric polynomial h with
/// ambient parameter d.
pub fn boolean_gamma_search(
    h: &Polynomial,
    d: usize,
    budget: &SeedBudget,
) -> Result<SearchOutcome, BooleanError> {
    let gamma = gamma_vector(h, d)?;
    if let Some((j, g)) = gamma.first_negative() {
        return Ok(SearchOutcome::Impossible {
            gamma_index: j,
            gamma_value: g,
        });
    }
    let targets: Vec<usize> = match gamma
        .entries()
        .iter()
        .map(|g| g.to_usize())
        .collect::<Option<Vec<_>>>()
    {
        Some(t) => t,
        None => {
            return Ok(SearchOutcome::NotFound {
                reason: "gamma entries exceed the search scale".to_string(),
            })
        }
    };
    // entry 0 counts the empty face and must be 1 for any nonvoid seed
    if targets.first() != Some(&1) {
        return Ok(SearchOutcome::NotFound {
            reason: format!("gamma_0 = {}, seeds require gamma_0 = 1", targets[0]),
        });
    }
    let n = targets.get(1).copied().unwrap_or(0);
    if n > budget.max_vertices {
        return Ok(SearchOutcome::NotFound {
            reason: format!(
                "seed needs {n} vertices, above the cap {}",
                budget.max_vertices
            ),
        });
    }
    let mut states = 0usize;
    match search_seed(&targets, n, budget, &mut states) {
        Some(faces) => {
            let seed =
                SimplicialComplex::from_facets(if faces.is_empty() { vec![Face::empty()] } else { faces })
                    .expect("seed faces are valid");
            let candidate = BooleanSeed { seed, d };
            let verified = candidate.expanded_f_polynomial() == *h;
            Ok(SearchOutcome::Found {
                seed: candidate,
                verified,
            })
        }
        None => Ok(SearchOutcome::NotFound {
            reason: if states >= budget.max_states {
                format!("budget exhausted after {states} states")
            } else {
                "no complex with the required face counts exists on that vertex set".to_string()
            },
        }),
    }
}

/// Level-by-level backtracking: choose gamma_j faces of cardinality j among
/// the candidates whose boundaries are already chosen. Returns the chosen
/// faces of every positive cardinality (maximal or not; the complex
/// constructor maximalizes).
fn search_seed(
    targets: &[usize],
    n: usize,
    budget: &SeedBudget,
    states: &mut usize,
) -> Option<Vec<Face>> {
    let vertices: Vec<Face> = (0..n as u32)
        .map(|i| Face::single(VertexId(SEED_LABEL_BASE + i)))
        .collect();
    let mut chosen: Vec<Vec<Face>> = vec![vertices.clone()];
    if targets.len() == 1 || targets[1] == 0 {
        return if targets.iter().skip(1).all(|&t| t == 0) {
            Some(Vec::new())
        } else {
            None
        };
    }
    choose_level(targets, 2, &mut chosen, budget, states).then(|| {
        chosen
            .iter()
            .flat_map(|level| level.iter().cloned())
            .collect()
    })
}

fn choose_level(
    targets: &[usize],
    card: usize,
    chosen: &mut Vec<Vec<Face>>,
    budget: &SeedBudget,
    states: &mut usize,
) -> bool {
    if card > targets.len() {
        return true;
    }
    let want = targets.get(card).copied().unwrap_or(0);
    // candidates: unions of a chosen (card-1)-face with one more vertex,
    // all of whose (card-1)-subsets are chosen
    let prev: &Vec<Face> = &chosen[card - 2];
    let prev_set: BTreeSet<&Face> = prev.iter().collect();
    let mut candidates: BTreeSet<Face> = BTreeSet::new();
    for f in prev {
        for v in chosen[0].iter() {
            if f.contains(v.vertices()[0]) {
                continue;
            }
            let candidate = f.union(v);
            if candidate
                .subsets_of_cardinality(card - 1)
                .iter()
                .all(|s| prev_set.contains(s))
            {
                candidates.insert(candidate);
            }
        }
    }
    let candidates: Vec<Face> = candidates.into_iter().collect();
    if candidates.len() < want {
        return false;
    }
    // choose `want` of them, in lexicographic order, then recurse
    let mut pick: Vec<usize> = (0..want).collect();
    loop {
        *states += 1;
        if *states > budget.max_states {
            return false;
        }
        let level: Vec<Face> = pick.iter().map(|&i| candidates[i].clone()).collect();
        chosen.push(level);
        if choose_level(targets, card + 1, chosen, budget, states) {
            return true;
        }
        chosen.pop();
        // next combination of indices
        if want == 0 {
            return false;
        }
        let mut i = want;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if pick[i] != i + candidates.len() - want {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..want {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Per-edge entry of the local/global audit.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeChart {
    pub edge: Face,
    pub h_link: Polynomial,
    pub gamma: Option<GammaVector>,
    pub outcome: SearchOutcome,
    /// Number of non-Boolean (seed) vertices in this chart: gamma_1 of the link.
    #[serde(serialize_with = "crate::vectors::serialize_bigint")]
    pub non_boolean_count: BigInt,
}

/// Intersection data for a pair of edges whose union is a face.
#[derive(Clone, Debug, Serialize)]
pub struct ChartOverlap {
    pub edge_a: Face,
    pub edge_b: Face,
    pub union_cardinality: usize,
    pub intersection_dimension: Option<i64>,
    /// dim(lk(e1) ∩ lk(e2)) equals dim lk(e1 ∪ e2) (checked, flag complexes).
    pub link_identity_ok: bool,
    /// |gamma_1(lk e1) - gamma_1(lk e2)|: vertices whose Boolean status
    /// differs between the two charts, counted without any identification.
    #[serde(serialize_with = "crate::vectors::serialize_bigint")]
    pub status_difference: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalGlobalAudit {
    pub charts: Vec<EdgeChart>,
    pub overlaps: Vec<ChartOverlap>,
    pub charts_with_seed: usize,
    pub charts_without_seed: usize,
    /// Largest per-pair status difference observed (recorded, never asserted).
    #[serde(serialize_with = "crate::vectors::serialize_bigint")]
    pub max_status_difference: BigInt,
    /// Pairs of overlapping charts with differing non-Boolean counts.
    pub conflicting_pairs: usize,
}

/// Run the Boolean seed search on every edge link and collect the numeric
/// overlap data. Charts are compared only through counts and intersection
/// dimensions; no vertex identification between charts is attempted.
pub fn local_global_audit(
    complex: &SimplicialComplex,
    budget: &SeedBudget,
) -> Result<LocalGlobalAudit, BooleanError> {
    let d = usize::try_from(complex.dimension().unwrap_or(-1) + 1).expect("nonvoid");
    let mut charts = Vec::new();
    for edge in complex.edges() {
        let link = complex.link(&edge)?;
        let h_link = h_polynomial(&link)?;
        let link_d = d - 2;
        let gamma = gamma_vector(&h_link, link_d).ok();
        let outcome = boolean_gamma_search(&h_link, link_d, budget)?;
        let non_boolean_count = h_link.coeff(1) - BigInt::from(link_d);
        charts.push(EdgeChart {
            edge,
            h_link,
            gamma,
            outcome,
            non_boolean_count,
        });
    }
    let mut overlaps = Vec::new();
    for i in 0..charts.len() {
        for j in i + 1..charts.len() {
            let union = charts[i].edge.union(&charts[j].edge);
            if union.cardinality() <= 2 || !complex.contains_face(&union) {
                continue;
            }
            let lk_i = complex.link(&charts[i].edge)?;
            let lk_j = complex.link(&charts[j].edge)?;
            let inter = lk_i.intersection(&lk_j);
            let lk_union = complex.link(&union)?;
            let link_identity_ok = inter.dimension() == lk_union.dimension();
            let status_difference =
                (&charts[i].non_boolean_count - &charts[j].non_boolean_count).abs();
            overlaps.push(ChartOverlap {
                edge_a: charts[i].edge.clone(),
                edge_b: charts[j].edge.clone(),
                union_cardinality: union.cardinality(),
                intersection_dimension: inter.dimension(),
                link_identity_ok,
                status_difference,
            });
        }
    }
    let charts_with_seed = charts
        .iter()
        .filter(|c| matches!(c.outcome, SearchOutcome::Found { .. }))
        .count();
    let max_status_difference = overlaps
        .iter()
        .map(|o| o.status_difference.clone())
        .max()
        .unwrap_or_else(|| BigInt::from(0));
    let conflicting_pairs = overlaps
        .iter()
        .filter(|o| o.status_difference != BigInt::from(0))
        .count();
    Ok(LocalGlobalAudit {
        charts_without_seed: charts.len() - charts_with_seed,
        charts_with_seed,
        charts,
        overlaps,
        max_status_difference,
        conflicting_pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.to_vec())
    }

    fn search(h: &Polynomial, d: usize) -> SearchOutcome {
        boolean_gamma_search(h, d, &SeedBudget::default()).unwrap()
    }

    #[test]
    fn octahedron_seed_is_empty_complex() {
        // h = (1+x)^3, gamma = (1, 0): S = {∅}, Γ = full Boolean 2^[3]
        match search(&Polynomial::one_plus_x_pow(3), 3) {
            SearchOutcome::Found { seed, verified } => {
                assert!(verified);
                assert!(seed.seed.is_empty_complex());
                assert_eq!(seed.expand().len(), 8);
            }
            other => panic!("expected seed, got {other:?}"),
        }
    }

    #[test]
    fn pentagon_seed_is_one_point() {
        // h = 1 + 3x + x^2, gamma = (1, 1): S = {∅, {s}}
        match search(&poly(&[1, 3, 1]), 2) {
            SearchOutcome::Found { seed, verified } => {
                assert!(verified);
                assert_eq!(seed.seed.vertex_count(), 1);
                assert_eq!(seed.expanded_f_polynomial(), poly(&[1, 3, 1]));
            }
            other => panic!("expected seed, got {other:?}"),
        }
    }

    #[test]
    fn hexagon_seed_is_two_points() {
        // h = 1 + 4x + x^2, gamma = (1, 2): S = {∅, {s1}, {s2}}
        match search(&poly(&[1, 4, 1]), 2) {
            SearchOutcome::Found { seed, verified } => {
                assert!(verified);
                assert_eq!(seed.seed.vertex_count(), 2);
                assert_eq!(seed.seed.dimension(), Some(0));
            }
            other => panic!("expected seed, got {other:?}"),
        }
    }

    #[test]
    fn negative_gamma_is_impossible() {
        // h = 1 + x + x^2 with d = 2: gamma_1 = -1
        match search(&poly(&[1, 1, 1]), 2) {
            SearchOutcome::Impossible {
                gamma_index,
                gamma_value,
            } => {
                assert_eq!(gamma_index, 1);
                assert_eq!(gamma_value, BigInt::from(-1));
            }
            other => panic!("expected impossible, got {other:?}"),
        }
    }

    #[test]
    fn seed_with_an_edge() {
        // gamma = (1, 2, 1): S = two vertices and the edge between them
        let gamma_target = poly(&[1, 2, 1]);
        let h = {
            // build h = sum gamma_j x^j (1+x)^(d-2j) for d = 4
            let g0 = Polynomial::one_plus_x_pow(4);
            let g1 = Polynomial::one_plus_x_pow(2).shift_up(1);
            let g1 = &g1 + &g1;
            let g2 = Polynomial::one().shift_up(2);
            &(&g0 + &g1) + &g2
        };
        let _ = gamma_target;
        match search(&h, 4) {
            SearchOutcome::Found { seed, verified } => {
                assert!(verified);
                assert_eq!(seed.seed.vertex_count(), 2);
                assert_eq!(seed.seed.edges().len(), 1);
            }
            other => panic!("expected seed, got {other:?}"),
        }
    }

    #[test]
    fn unrealizable_face_counts_not_found() {
        // gamma = (1, 1, 1): one vertex cannot carry an edge
        let h = {
            let g0 = Polynomial::one_plus_x_pow(4);
            let g1 = Polynomial::one_plus_x_pow(2).shift_up(1);
            let g2 = Polynomial::one().shift_up(2);
            &(&g0 + &g1) + &g2
        };
        match search(&h, 4) {
            SearchOutcome::NotFound { .. } => {}
            other => panic!("expected not-found, got {other:?}"),
        }
    }

    #[test]
    fn audit_octahedron_has_no_conflicts() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let audit = local_global_audit(&octa, &SeedBudget::default()).unwrap();
        assert_eq!(audit.charts.len(), 12);
        assert_eq!(audit.charts_with_seed, 12);
        assert_eq!(audit.conflicting_pairs, 0);
        assert_eq!(audit.max_status_difference, BigInt::from(0));
        for chart in &audit.charts {
            let seed = chart.outcome.found().expect("octahedron links have seeds");
            assert!(seed.seed.is_empty_complex());
        }
        assert!(audit.overlaps.iter().all(|o| o.link_identity_ok));
    }

    #[test]
    fn audit_pentagon_trivial_seeds() {
        let pent = SimplicialComplex::cycle_complex(5).unwrap();
        let audit = local_global_audit(&pent, &SeedBudget::default()).unwrap();
        assert_eq!(audit.charts.len(), 5);
        assert_eq!(audit.charts_with_seed, 5);
        // 1-sphere: edge links are {∅}; no overlapping pairs exist
        assert!(audit.overlaps.is_empty());
    }

    #[test]
    fn audit_subdivided_octahedron() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let e = octa.edges()[0].clone();
        let sub = crate::moves::edge_subdivide(&octa, &e, octa.fresh_vertex()).unwrap();
        let audit = local_global_audit(&sub, &SeedBudget::default()).unwrap();
        assert_eq!(audit.charts.len(), sub.edges().len());
        assert_eq!(audit.charts_with_seed, audit.charts.len());
        assert!(audit.overlaps.iter().all(|o| o.link_identity_ok));
    }
}
