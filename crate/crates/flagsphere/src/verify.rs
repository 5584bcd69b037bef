//! Named verification suites over the bounded catalog. The CLI `verify`
//! command and the acceptance tests run these; each check carries enough
//! detail to dump a counterexample on failure.
//!
//! Everything here is bounded evidence on desk-scale complexes: catalog
//! spheres up to double suspensions of crosspoly-5 and cycle-12. Nothing is
//! sampled beyond what the seeds say, and nothing is asserted beyond the
//! catalog.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::boolean::{boolean_gamma_search, SearchOutcome, SeedBudget};
use crate::canon::is_isomorphic;
use crate::catalog::{catalog, CatalogSphere};
use crate::cm::{is_cohen_macaulay, is_doubly_cm};
use crate::homology::FieldSpec;
use crate::complex::{Face, SimplicialComplex};
use crate::decomposition::{
    disjoint_edge_union_faces, iterated_gamma_decomposition, summarize, DecompOptions,
    EdgeStrategy,
};
use crate::moves::{edge_subdivide, random_flag_walk, MoveKind};
use crate::rng::SplitMix64;
use crate::vectors::{binomial, gamma_vector, h_polynomial, poly_ge, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    SubdivisionIdentity,
    NetCount,
    LowerBound,
    CrossPolytopeBound,
    Decomposition,
    BooleanSearch,
    CmCertification,
    SuspensionGamma,
}

impl Suite {
    pub fn all() -> [Suite; 8] {
        [
            Suite::SubdivisionIdentity,
            Suite::NetCount,
            Suite::LowerBound,
            Suite::CrossPolytopeBound,
            Suite::Decomposition,
            Suite::BooleanSearch,
            Suite::CmCertification,
            Suite::SuspensionGamma,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::SubdivisionIdentity => "subdivision-identity",
            Suite::NetCount => "net-count",
            Suite::LowerBound => "lower-bound",
            Suite::CrossPolytopeBound => "cross-polytope-bound",
            Suite::Decomposition => "decomposition",
            Suite::BooleanSearch => "boolean-search",
            Suite::CmCertification => "cm-certification",
            Suite::SuspensionGamma => "suspension-gamma",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Suite::all().into_iter().find(|s| s.name() == name)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub samples: usize,
    pub walks: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 200,
            walks: 50,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub details: serde_json::Value,
}

impl Check {
    fn of(label: impl Into<String>, passed: bool, details: serde_json::Value) -> Self {
        Check {
            label: label.into(),
            passed,
            details,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    let start = Instant::now();
    let checks = match suite {
        Suite::SubdivisionIdentity => subdivision_identity(opts),
        Suite::NetCount => net_count(opts),
        Suite::LowerBound => lower_bound(),
        Suite::CrossPolytopeBound => cross_polytope_bound(),
        Suite::Decomposition => decomposition_suite(),
        Suite::BooleanSearch => boolean_search_suite(),
        Suite::CmCertification => cm_certification(),
        Suite::SuspensionGamma => suspension_gamma(),
    };
    SuiteReport {
        suite: suite.name().to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn run_all(opts: &SuiteOptions) -> Vec<SuiteReport> {
    Suite::all().into_iter().map(|s| run_suite(s, opts)).collect()
}

fn spheres_of_dim_between(floor: i64, cap: i64) -> Vec<CatalogSphere> {
    catalog()
        .into_iter()
        .filter(|e| e.complex.dimension().is_some_and(|d| d >= floor && d <= cap))
        .collect()
}

/// h(subdivided) - h(K) = x h(lk(K, e)) over seeded samples drawn from
/// catalog spheres of dimension <= 3 and short random walks off them.
fn subdivision_identity(opts: &SuiteOptions) -> Vec<Check> {
    let pool = spheres_of_dim_between(1, 3);
    let mut rng = SplitMix64::new(opts.seed);
    let mut failures = Vec::new();
    for i in 0..opts.samples {
        let entry = &pool[rng.next_below(pool.len())];
        let walk_len = rng.next_below(4);
        let complex = if walk_len == 0 {
            entry.complex.clone()
        } else {
            match random_flag_walk(&entry.complex, walk_len, rng.next_u64()) {
                Ok(seq) => seq.end().expect("walk moves are valid"),
                Err(_) => entry.complex.clone(),
            }
        };
        let edges = complex.edges();
        let edge = edges[rng.next_below(edges.len())].clone();
        let sub = edge_subdivide(&complex, &edge, complex.fresh_vertex()).expect("valid move");
        let lhs = &h_polynomial(&sub).unwrap() - &h_polynomial(&complex).unwrap();
        let rhs = h_polynomial(&complex.link(&edge).unwrap()).unwrap().shift_up(1);
        if lhs != rhs {
            failures.push(json!({
                "sample": i,
                "origin": entry.name,
                "complex": complex,
                "edge": edge,
                "difference": lhs,
                "x_h_link": rhs,
            }));
        }
    }
    vec![Check::of(
        format!("subdivision identity on {} seeded samples", opts.samples),
        failures.is_empty(),
        json!({ "failures": failures }),
    )]
}

/// Along seeded random walks from crosspoly-d (d <= 4): net subdivisions =
/// change in f_0 = change in h_1 at every prefix.
fn net_count(opts: &SuiteOptions) -> Vec<Check> {
    let mut rng = SplitMix64::new(opts.seed);
    let mut failures = Vec::new();
    for w in 0..opts.walks {
        let d = 2 + (w % 3); // crosspoly-2..4; d = 1 has no edges
        let start = SimplicialComplex::cross_polytope_boundary(d).unwrap();
        let steps = 1 + rng.next_below(20);
        let walk = match random_flag_walk(&start, steps, rng.next_u64()) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let intermediates = walk.intermediates().expect("valid walk");
        let h_start = h_polynomial(&start).unwrap();
        let f0_start = start.vertex_count() as i64;
        let mut net = 0i64;
        for (i, mv) in walk.moves.iter().enumerate() {
            net += match mv.kind {
                MoveKind::Subdivide => 1,
                MoveKind::Contract => -1,
            };
            let here = &intermediates[i + 1];
            let delta_f0 = here.vertex_count() as i64 - f0_start;
            let delta_h1 = h_polynomial(here).unwrap().coeff(1) - h_start.coeff(1);
            if BigInt::from(net) != BigInt::from(delta_f0) || BigInt::from(net) != delta_h1 {
                failures.push(json!({
                    "walk": w,
                    "prefix": i + 1,
                    "net": net,
                    "delta_f0": delta_f0,
                    "delta_h1": delta_h1.to_string(),
                }));
            }
        }
    }
    vec![Check::of(
        format!("net-count law along {} seeded walks", opts.walks),
        failures.is_empty(),
        json!({ "failures": failures }),
    )]
}

/// Coefficientwise nonnegativity of h(K) - (1+x)^|F| h(lk(K, F)) for every
/// face F that is a disjoint union of edges, over the whole catalog.
fn lower_bound() -> Vec<Check> {
    let mut checks = Vec::new();
    for entry in catalog() {
        let h = h_polynomial(&entry.complex).unwrap();
        let mut faces_checked = 0usize;
        let mut failure = None;
        for face in disjoint_edge_union_faces(&entry.complex) {
            let link = entry.complex.link(&face).unwrap();
            let approx =
                &Polynomial::one_plus_x_pow(face.cardinality()) * &h_polynomial(&link).unwrap();
            let remainder = &h - &approx;
            faces_checked += 1;
            if !remainder.is_nonnegative() {
                failure = Some(json!({
                    "face": face,
                    "remainder": remainder,
                }));
                break;
            }
        }
        checks.push(Check::of(
            format!("{}: remainders over {} edge-union faces", entry.name, faces_checked),
            failure.is_none(),
            failure.unwrap_or(json!({})),
        ));
    }
    checks
}

/// h_i >= C(d, i) on the catalog; equality exactly for the cross-polytope
/// class, strict somewhere for everything else; gamma_1 >= 0 throughout.
fn cross_polytope_bound() -> Vec<Check> {
    let mut checks = Vec::new();
    for entry in catalog() {
        let complex = &entry.complex;
        let d = (complex.dimension().unwrap() + 1) as usize;
        let h = h_polynomial(complex).unwrap();
        let bound = Polynomial::one_plus_x_pow(d);
        let holds = poly_ge(&h, &bound);
        let equality = h == bound;
        let gamma_1_ok = h.coeff(1) >= BigInt::from(d);
        let is_crosspoly_class = d >= 1
            && is_isomorphic(
                complex,
                &SimplicialComplex::cross_polytope_boundary(d).unwrap(),
            );
        let class_consistent = equality == is_crosspoly_class;
        checks.push(Check::of(
            format!("{}: h_i >= C({d},i)", entry.name),
            holds && gamma_1_ok && class_consistent,
            json!({
                "h": h,
                "binomials": bound,
                "equality": equality,
                "crosspoly_class": is_crosspoly_class,
            }),
        ));
    }
    checks
}

/// Exact reconstruction, depth bound, bracket nonnegativity, term counts and
/// collected gamma for three edge strategies over the catalog.
fn decomposition_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    for entry in catalog() {
        for strategy in [
            EdgeStrategy::LargestLinkH,
            EdgeStrategy::SmallestLinkH,
            EdgeStrategy::FirstEdge,
        ] {
            let tree = match iterated_gamma_decomposition(
                &entry.complex,
                DecompOptions {
                    strategy,
                    ..DecompOptions::default()
                },
            ) {
                Ok(t) => t,
                Err(e) => {
                    checks.push(Check::of(
                        format!("{} [{strategy:?}]", entry.name),
                        false,
                        json!({ "error": e.to_string() }),
                    ));
                    continue;
                }
            };
            let summary = summarize(&tree).unwrap();
            let ok = summary.reconstruction_ok
                && summary.max_depth <= summary.depth_bound
                && summary.all_brackets_nonnegative
                && summary.all_term_counts_ok
                && summary.gamma_matches;
            checks.push(Check::of(
                format!("{} [{strategy:?}]", entry.name),
                ok,
                serde_json::to_value(&summary).unwrap(),
            ));
        }
    }
    checks
}

fn boolean_search_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    let budget = SeedBudget::default();

    let named: [(&str, Polynomial, usize, usize); 3] = [
        ("octahedron", Polynomial::one_plus_x_pow(3), 3, 0),
        ("pentagon", Polynomial::from_coeffs(vec![1, 3, 1]), 2, 1),
        ("hexagon", Polynomial::from_coeffs(vec![1, 4, 1]), 2, 2),
    ];
    for (name, h, d, expected_vertices) in named {
        let outcome = boolean_gamma_search(&h, d, &budget).unwrap();
        let ok = match &outcome {
            SearchOutcome::Found { seed, verified } => {
                *verified && seed.seed.vertex_count() == expected_vertices
            }
            _ => false,
        };
        checks.push(Check::of(
            format!("{name}: seed with {expected_vertices} auxiliary vertices"),
            ok,
            serde_json::to_value(&outcome).unwrap(),
        ));
    }

    for d in 1..=5 {
        let k = SimplicialComplex::cross_polytope_boundary(d).unwrap();
        let h = h_polynomial(&k).unwrap();
        let outcome = boolean_gamma_search(&h, d, &budget).unwrap();
        let ok = matches!(
            &outcome,
            SearchOutcome::Found { seed, verified: true } if seed.seed.is_empty_complex()
        );
        checks.push(Check::of(
            format!("crosspoly-{d}: trivial seed"),
            ok,
            serde_json::to_value(&outcome).unwrap(),
        ));
    }

    let impossible = boolean_gamma_search(&Polynomial::from_coeffs(vec![1, 1, 1]), 2, &budget)
        .unwrap();
    checks.push(Check::of(
        "h = 1 + x + x^2, d = 2: impossible (gamma_1 = -1)",
        matches!(
            impossible,
            SearchOutcome::Impossible { gamma_index: 1, .. }
        ),
        serde_json::to_value(&impossible).unwrap(),
    ));
    checks
}

fn cm_certification() -> Vec<Check> {
    let gf2 = FieldSpec::gf2();
    let mut checks = Vec::new();

    for d in 1..=4 {
        let k = SimplicialComplex::cross_polytope_boundary(d).unwrap();
        let report = is_doubly_cm(&k, gf2).unwrap();
        checks.push(Check::of(
            format!("crosspoly-{d} doubly CM over GF(2)"),
            report.is_doubly_cm,
            serde_json::to_value(&report).unwrap(),
        ));
    }

    let bowtie = SimplicialComplex::from_facets(
        [[0u32, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]]
            .iter()
            .map(|e| Face::new(e.to_vec()).unwrap())
            .collect(),
    )
    .unwrap();
    let cm = is_cohen_macaulay(&bowtie, gf2).unwrap();
    let doubly = is_doubly_cm(&bowtie, gf2).unwrap();
    checks.push(Check::of(
        "bowtie: CM but not doubly CM",
        cm.is_cm && !doubly.is_doubly_cm,
        json!({ "cm": cm, "doubly": doubly }),
    ));

    let two_edges = SimplicialComplex::from_facets(vec![
        Face::new(vec![0u32, 1]).unwrap(),
        Face::new(vec![2u32, 3]).unwrap(),
    ])
    .unwrap();
    let report = is_cohen_macaulay(&two_edges, gf2).unwrap();
    checks.push(Check::of(
        "two disjoint edges: not CM",
        !report.is_cm,
        serde_json::to_value(&report).unwrap(),
    ));

    // catalog sweep at small scale: every certified sphere is doubly CM
    for entry in catalog().into_iter().filter(|e| e.complex.vertex_count() <= 9) {
        let report = is_doubly_cm(&entry.complex, gf2).unwrap();
        checks.push(Check::of(
            format!("{} doubly CM over GF(2)", entry.name),
            report.is_doubly_cm,
            serde_json::to_value(&report).unwrap(),
        ));
    }
    checks
}

/// gamma(susp^2 K) = gamma(K) entrywise on the whole catalog.
fn suspension_gamma() -> Vec<Check> {
    let mut checks = Vec::new();
    for entry in catalog() {
        let d = (entry.complex.dimension().unwrap() + 1) as usize;
        let h = h_polynomial(&entry.complex).unwrap();
        let susp2 = entry.complex.suspension_iterated(2);
        let h2 = h_polynomial(&susp2).unwrap();
        let ok = match (gamma_vector(&h, d), gamma_vector(&h2, d + 2)) {
            (Ok(g), Ok(g2)) => (0..=d / 2 + 1).all(|j| {
                g.entry(j) == g2.entry(j)
            }),
            _ => false,
        };
        checks.push(Check::of(
            format!("{}: gamma invariant under double suspension", entry.name),
            ok,
            json!({ "h": h, "h_susp2": h2 }),
        ));
    }
    checks
}

/// Sanity anchor used by tests: C(d, i) column of the bound table.
pub fn binomial_row(d: usize) -> Vec<BigInt> {
    (0..=d).map(|i| binomial(d, i)).collect()
}
