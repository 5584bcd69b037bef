//! Double-suspension remainders and the iterated decomposition of
//! h-polynomials of flag spheres.
//!
//! The basic split is h(T) = (1+x)^2 h(lk_T(q)) + x * (signed sum), where the
//! signed sum attributes the remainder to edge links along a move path
//! between T and the double suspension of lk_T(q). Each move contributes one
//! term: h changes by exactly x * h(link at the moved edge). Iterating over
//! links of growing disjoint-edge collections yields a recursion tree whose
//! leaves reconstruct h exactly and whose x-powers collect the gamma vector.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::canon::is_isomorphic;
use crate::complex::{ComplexError, Face, SimplicialComplex, VertexId};
use crate::moves::{contract_raw, edge_subdivide, MoveError, MoveKind, MoveSequence};
use crate::search::{find_move_path, Budget};
use crate::vectors::{
    binomial, gamma_vector, h_polynomial, poly_ge, GammaVector, Polynomial, VectorsError,
};

#[derive(Debug, Error)]
pub enum DecompError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Vectors(#[from] VectorsError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("path endpoints mismatch: {0}")]
    PathMismatch(String),
}

/// Hypothesis status supplied by the caller for inequality assertions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    CertifiedSphere,
    CertifiedDoublyCm,
    Unverified,
}

impl Hypothesis {
    pub fn certified(&self) -> bool {
        !matches!(self, Hypothesis::Unverified)
    }
}

/// Remainder of the double-suspension approximation over a face F:
/// h(K) - (1+x)^|F| h(lk(K, F)).
#[derive(Clone, Debug, Serialize)]
pub struct RemainderReport {
    pub base: Face,
    pub power: usize,
    pub h_complex: Polynomial,
    pub h_link: Polynomial,
    pub approx: Polynomial,
    pub remainder: Polynomial,
    pub nonnegative: bool,
    /// dim of the deletion K \ F equals dim K.
    pub antistar_dimension_ok: bool,
    /// Nonnegativity is asserted (not merely reported) under this hypothesis.
    pub asserted: bool,
}

pub fn double_susp_remainder(
    complex: &SimplicialComplex,
    face: &Face,
    hypothesis: Hypothesis,
) -> Result<RemainderReport, DecompError> {
    let link = complex.link(face)?;
    let h_complex = h_polynomial(complex)?;
    let h_link = h_polynomial(&link)?;
    let power = face.cardinality();
    let approx = &Polynomial::one_plus_x_pow(power) * &h_link;
    let remainder = &h_complex - &approx;
    let antistar_dimension_ok = if face.is_empty() {
        true
    } else {
        complex.deletion(face)?.dimension() == complex.dimension()
    };
    let nonnegative = remainder.is_nonnegative();
    Ok(RemainderReport {
        base: face.clone(),
        power,
        h_complex,
        h_link,
        approx,
        remainder,
        nonnegative,
        antistar_dimension_ok,
        asserted: hypothesis.certified() && antistar_dimension_ok,
    })
}

/// Faces that are disjoint unions of edges: every face of even cardinality
/// >= 2 qualifies (any perfect pairing of its vertices consists of edges).
pub fn disjoint_edge_union_faces(complex: &SimplicialComplex) -> Vec<Face> {
    let Some(dim) = complex.dimension() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut card = 2usize;
    while card as i64 <= dim + 1 {
        out.extend(complex.faces_with_cardinality(card));
        card += 2;
    }
    out
}

/// Check h_i(K) >= C(d, i) for all i; equivalently gamma_1 >= 0 at i = 1.
#[derive(Clone, Debug, Serialize)]
pub struct CrossPolytopeBoundReport {
    pub d: usize,
    pub h: Polynomial,
    pub holds: bool,
    pub equality: bool,
    #[serde(serialize_with = "crate::vectors::serialize_bigint")]
    pub gamma_1: BigInt,
    pub asserted: bool,
}

pub fn cross_polytope_bound_check(
    complex: &SimplicialComplex,
    hypothesis: Hypothesis,
) -> Result<CrossPolytopeBoundReport, DecompError> {
    let h = h_polynomial(complex)?;
    let d = usize::try_from(complex.dimension().unwrap_or(-1) + 1).expect("nonvoid");
    let bound = Polynomial::one_plus_x_pow(d);
    let holds = poly_ge(&h, &bound);
    let equality = h == bound;
    let gamma_1 = h.coeff(1) - BigInt::from(d);
    Ok(CrossPolytopeBoundReport {
        d,
        h,
        holds,
        equality,
        gamma_1,
        asserted: hypothesis.certified(),
    })
}

/// One attributed term of a remainder expansion.
#[derive(Clone, Debug, Serialize)]
pub struct SignedTerm {
    pub sign: i8,
    pub edge: Face,
    pub h_link: Polynomial,
}

/// Expansion of h(K) - (1+x)^2 h(lk(K, e)) along a move path running from
/// the double suspension of the link to K.
#[derive(Clone, Debug, Serialize)]
pub struct PathExpansion {
    pub terms: Vec<SignedTerm>,
    pub signed_sum: Polynomial,
    pub positive_count: usize,
    pub negative_count: usize,
    /// x * signed_sum equals the double-suspension remainder exactly.
    pub consistent: bool,
}

/// Attribute the remainder over the edge e to the moves of `path`, which must
/// run from susp^2(lk(K, e)) (up to isomorphism) to a complex isomorphic to K.
/// Each subdivision contributes +h(link at its edge), each contraction
/// -h(link at its edge), links taken in the complex the move applies to.
pub fn path_remainder_expansion(
    complex: &SimplicialComplex,
    edge: &Face,
    path: &MoveSequence,
) -> Result<PathExpansion, DecompError> {
    let link = complex.link(edge)?;
    let double_susp = link.suspension_iterated(2);
    if !is_isomorphic(&path.start, &double_susp) {
        return Err(DecompError::PathMismatch(format!(
            "path starts at {} but susp^2 of the link is {}",
            path.start, double_susp
        )));
    }
    let intermediates = path.intermediates()?;
    let end = intermediates.last().unwrap();
    if !is_isomorphic(end, complex) {
        return Err(DecompError::PathMismatch(
            "path endpoint is not isomorphic to the complex".to_string(),
        ));
    }
    let mut terms = Vec::with_capacity(path.moves.len());
    for (i, mv) in path.moves.iter().enumerate() {
        let pre = &intermediates[i];
        let link_at = pre.link(&mv.edge)?;
        let sign = match mv.kind {
            MoveKind::Subdivide => 1,
            MoveKind::Contract => -1,
        };
        terms.push(SignedTerm {
            sign,
            edge: mv.edge.clone(),
            h_link: h_polynomial(&link_at)?,
        });
    }
    let mut signed_sum = Polynomial::zero();
    for t in &terms {
        if t.sign > 0 {
            signed_sum = &signed_sum + &t.h_link;
        } else {
            signed_sum = &signed_sum - &t.h_link;
        }
    }
    let h_k = h_polynomial(complex)?;
    let remainder = &h_k - &(&Polynomial::one_plus_x_pow(2) * &h_polynomial(&link)?);
    let consistent = signed_sum.shift_up(1) == remainder;
    let positive_count = terms.iter().filter(|t| t.sign > 0).count();
    let negative_count = terms.len() - positive_count;
    Ok(PathExpansion {
        terms,
        signed_sum,
        positive_count,
        negative_count,
        consistent,
    })
}

/// Edge selection rule for the decomposition recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeStrategy {
    /// Lexicographically largest link h-vector, ties by smallest labels.
    LargestLinkH,
    /// Lexicographically smallest link h-vector, ties by smallest labels.
    SmallestLinkH,
    /// First edge in label order.
    FirstEdge,
}

impl EdgeStrategy {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "max-link-h" | "largest-link-h" => Some(EdgeStrategy::LargestLinkH),
            "min-link-h" | "smallest-link-h" => Some(EdgeStrategy::SmallestLinkH),
            "first-edge" | "lex" => Some(EdgeStrategy::FirstEdge),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecompOptions {
    pub strategy: EdgeStrategy,
    pub path_budget: Budget,
}

impl Default for DecompOptions {
    fn default() -> Self {
        DecompOptions {
            strategy: EdgeStrategy::LargestLinkH,
            // remainder paths are mostly contraction ladders; allow depth
            // well past the default move-search budget
            path_budget: Budget {
                max_depth: 24,
                max_states: 60_000,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeafReason {
    /// The link has no edges left to split over (dimension < 1).
    NoEdges,
    /// Recursion depth reached floor(d / 2).
    DepthCap,
}

#[derive(Clone, Debug, Serialize)]
pub enum Remainder {
    /// Per-move attribution via a found path.
    Attributed {
        terms: Vec<DecompNode>,
        bracket: Polynomial,
        bracket_nonnegative: bool,
        positive_terms: usize,
        negative_terms: usize,
    },
    /// Path budget exhausted: the raw remainder polynomial, divided by x.
    /// Reconstruction stays exact, only the attribution is missing.
    Raw { remainder_div_x: Polynomial },
}

#[derive(Clone, Debug, Serialize)]
pub enum Expansion {
    Leaf { reason: LeafReason },
    Expanded {
        chosen_edge: Face,
        suspension: Box<DecompNode>,
        remainder: Remainder,
    },
}

/// Node of the decomposition tree. The node contributes
/// sign * x^r (1+x)^s * h(lk(complex, base_face)) when unexpanded; expanding
/// replaces that with the suspension child plus remainder terms.
#[derive(Clone, Debug, Serialize)]
pub struct DecompNode {
    pub sign: i8,
    pub m: usize,
    pub r: usize,
    pub s: usize,
    pub complex_id: usize,
    /// m disjoint edges of the node's complex.
    pub base_face: Face,
    pub link_h: Polynomial,
    pub expansion: Expansion,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompTree {
    pub d: usize,
    pub h_root: Polynomial,
    pub complexes: Vec<SimplicialComplex>,
    pub root: DecompNode,
}

struct BuildCtx {
    complexes: Vec<SimplicialComplex>,
    ids: HashMap<SimplicialComplex, usize>,
    h_cache: HashMap<SimplicialComplex, Polynomial>,
    options: DecompOptions,
    depth_cap: usize,
}

impl BuildCtx {
    fn intern(&mut self, k: &SimplicialComplex) -> usize {
        if let Some(&id) = self.ids.get(k) {
            return id;
        }
        let id = self.complexes.len();
        self.complexes.push(k.clone());
        self.ids.insert(k.clone(), id);
        id
    }

    fn h(&mut self, k: &SimplicialComplex) -> Result<Polynomial, DecompError> {
        if let Some(h) = self.h_cache.get(k) {
            return Ok(h.clone());
        }
        let h = h_polynomial(k)?;
        self.h_cache.insert(k.clone(), h.clone());
        Ok(h)
    }

    fn choose_edge(&mut self, t: &SimplicialComplex) -> Result<Option<Face>, DecompError> {
        let edges = t.edges();
        if edges.is_empty() {
            return Ok(None);
        }
        match self.options.strategy {
            EdgeStrategy::FirstEdge => Ok(Some(edges[0].clone())),
            EdgeStrategy::LargestLinkH | EdgeStrategy::SmallestLinkH => {
                let largest = self.options.strategy == EdgeStrategy::LargestLinkH;
                let mut best: Option<(Vec<BigInt>, Face)> = None;
                for e in edges {
                    let h = self.h(&t.link(&e)?)?;
                    let key = h.coeffs().to_vec();
                    let better = match &best {
                        None => true,
                        Some((bk, be)) => {
                            if largest {
                                key > *bk || (key == *bk && e < *be)
                            } else {
                                key < *bk || (key == *bk && e < *be)
                            }
                        }
                    };
                    if better {
                        best = Some((key, e));
                    }
                }
                Ok(best.map(|(_, e)| e))
            }
        }
    }
}

/// Decompose the h-polynomial of a flag sphere into iterated double
/// suspensions of edge links plus attributed remainders. The caller is
/// responsible for certifying the sphere hypothesis; the tree itself records
/// everything needed to audit reconstruction and nonnegativity.
pub fn iterated_gamma_decomposition(
    complex: &SimplicialComplex,
    options: DecompOptions,
) -> Result<DecompTree, DecompError> {
    let h_root = h_polynomial(complex)?;
    let d = usize::try_from(complex.dimension().unwrap_or(-1) + 1).expect("nonvoid input");
    let mut ctx = BuildCtx {
        complexes: Vec::new(),
        ids: HashMap::new(),
        h_cache: HashMap::new(),
        options,
        depth_cap: d / 2,
    };
    let root_id = ctx.intern(complex);
    let root = expand_node(&mut ctx, 1, 0, 0, root_id, Face::empty())?;
    Ok(DecompTree {
        d,
        h_root,
        complexes: ctx.complexes,
        root,
    })
}

fn expand_node(
    ctx: &mut BuildCtx,
    sign: i8,
    r: usize,
    s: usize,
    complex_id: usize,
    base_face: Face,
) -> Result<DecompNode, DecompError> {
    let ambient = ctx.complexes[complex_id].clone();
    let t = ambient.link(&base_face)?;
    let link_h = ctx.h(&t)?;
    let m = r + s / 2;
    let mut node = DecompNode {
        sign,
        m,
        r,
        s,
        complex_id,
        base_face: base_face.clone(),
        link_h,
        expansion: Expansion::Leaf {
            reason: LeafReason::NoEdges,
        },
    };
    if m >= ctx.depth_cap {
        node.expansion = Expansion::Leaf {
            reason: LeafReason::DepthCap,
        };
        return Ok(node);
    }
    let Some(q) = ctx.choose_edge(&t)? else {
        return Ok(node);
    };

    let suspension = expand_node(ctx, sign, r, s + 2, complex_id, base_face.union(&q))?;

    let q_link = t.link(&q)?;
    let target = q_link.suspension_iterated(2);
    let remainder = match find_move_path(&t, &target, &ctx.options.path_budget) {
        Ok(found) => {
            let terms = lift_and_expand(ctx, sign, r, s, complex_id, &base_face, &found.sequence)?;
            let mut bracket = Polynomial::zero();
            let mut positive_terms = 0;
            let mut negative_terms = 0;
            for term in &terms {
                // bracket signs are relative to this node, not the root
                let local_sign = term.sign * sign;
                if local_sign > 0 {
                    positive_terms += 1;
                    bracket = &bracket + &term.link_h;
                } else {
                    negative_terms += 1;
                    bracket = &bracket - &term.link_h;
                }
            }
            let bracket_nonnegative = bracket.is_nonnegative();
            Remainder::Attributed {
                terms,
                bracket,
                bracket_nonnegative,
                positive_terms,
                negative_terms,
            }
        }
        Err(_) => {
            let t_h = ctx.h(&t)?;
            let approx = &Polynomial::one_plus_x_pow(2) * &ctx.h(&q_link)?;
            let diff = &t_h - &approx;
            debug_assert!(diff.coeff(0).is_zero());
            let remainder_div_x = Polynomial::from_coeffs(
                diff.coeffs().iter().skip(1).cloned().collect::<Vec<_>>(),
            );
            Remainder::Raw { remainder_div_x }
        }
    };
    node.expansion = Expansion::Expanded {
        chosen_edge: q,
        suspension: Box::new(suspension),
        remainder,
    };
    Ok(node)
}

/// Replay a link-level move path on the ambient complex, producing one
/// remainder node per move. The path runs from the link T = lk(ambient, E)
/// toward susp^2 of a smaller link; each move at an edge g of the current
/// link lifts to the same move on the ambient complex, and contributes the
/// term over the face E ∪ g. Subdivisions enter negatively and contractions
/// positively: the path leaves the node's complex, so signs flip relative to
/// a path arriving at it.
fn lift_and_expand(
    ctx: &mut BuildCtx,
    sign: i8,
    r: usize,
    s: usize,
    complex_id: usize,
    base_face: &Face,
    path: &MoveSequence,
) -> Result<Vec<DecompNode>, DecompError> {
    let mut ambient = ctx.complexes[complex_id].clone();
    // rename map from link-level labels to ambient labels (fresh vertices of
    // the link-level path may collide with ambient labels)
    let mut rename: HashMap<VertexId, VertexId> = HashMap::new();
    let mut terms = Vec::with_capacity(path.moves.len());
    for mv in &path.moves {
        let edge_in_ambient = Face::new(
            mv.edge
                .vertices()
                .iter()
                .map(|v| rename.get(v).copied().unwrap_or(*v).0)
                .collect::<Vec<_>>(),
        )
        .expect("renamed edge stays a valid face");
        let ambient_id = ctx.intern(&ambient);
        let term_face = base_face.union(&edge_in_ambient);
        let term_sign = match mv.kind {
            MoveKind::Subdivide => -sign,
            MoveKind::Contract => sign,
        };
        terms.push(expand_node(ctx, term_sign, r + 1, s, ambient_id, term_face)?);

        ambient = match mv.kind {
            MoveKind::Subdivide => {
                let fresh = ambient.fresh_vertex();
                rename.insert(mv.vertex, fresh);
                edge_subdivide(&ambient, &edge_in_ambient, fresh)?
            }
            MoveKind::Contract => {
                let survivor = rename.get(&mv.vertex).copied().unwrap_or(mv.vertex);
                contract_raw(&ambient, &edge_in_ambient, survivor)?
            }
        };
        debug_assert!(
            ambient.contains_face(base_face),
            "lifted moves keep the base face"
        );
    }
    Ok(terms)
}

/// Sum the tree back together: expanded nodes contribute through children,
/// leaves contribute sign * x^r (1+x)^s * stored polynomial, raw remainders
/// contribute sign * x^(r+1) (1+x)^s * stored polynomial.
pub fn reconstruct_h(tree: &DecompTree) -> Polynomial {
    node_value(&tree.root)
}

fn node_value(node: &DecompNode) -> Polynomial {
    match &node.expansion {
        Expansion::Leaf { .. } => scaled(node.sign, node.r, node.s, &node.link_h),
        Expansion::Expanded {
            suspension,
            remainder,
            ..
        } => {
            let mut acc = node_value(suspension);
            match remainder {
                Remainder::Attributed { terms, .. } => {
                    for t in terms {
                        acc = &acc + &node_value(t);
                    }
                }
                Remainder::Raw { remainder_div_x } => {
                    acc = &acc + &scaled(node.sign, node.r + 1, node.s, remainder_div_x);
                }
            }
            acc
        }
    }
}

fn scaled(sign: i8, r: usize, s: usize, p: &Polynomial) -> Polynomial {
    let signed = if sign < 0 {
        &Polynomial::zero() - p
    } else {
        p.clone()
    };
    (&signed * &Polynomial::one_plus_x_pow(s)).shift_up(r)
}

/// Gamma entries collected from the unexpanded contributions of the tree.
pub fn collected_gamma(tree: &DecompTree) -> Result<Vec<BigInt>, DecompError> {
    let mut out = vec![BigInt::zero(); tree.d / 2 + 1];
    collect_node(&tree.root, tree.d, &mut out)?;
    Ok(out)
}

fn collect_node(node: &DecompNode, d: usize, out: &mut [BigInt]) -> Result<(), DecompError> {
    match &node.expansion {
        Expansion::Leaf { .. } => {
            // ambient parameter of the node's link: d = s + D + 2r
            let link_d = d - node.s - 2 * node.r;
            let gamma = gamma_vector(&node.link_h, link_d)?;
            for (i, g) in gamma.entries().iter().enumerate() {
                let idx = node.r + i;
                if node.sign > 0 {
                    out[idx] += g;
                } else {
                    out[idx] -= g;
                }
            }
        }
        Expansion::Expanded {
            suspension,
            remainder,
            ..
        } => {
            collect_node(suspension, d, out)?;
            match remainder {
                Remainder::Attributed { terms, .. } => {
                    for t in terms {
                        collect_node(t, d, out)?;
                    }
                }
                Remainder::Raw { remainder_div_x } => {
                    let raw_d = d - node.s - 2 * (node.r + 1);
                    let gamma = gamma_vector(remainder_div_x, raw_d)?;
                    for (i, g) in gamma.entries().iter().enumerate() {
                        let idx = node.r + 1 + i;
                        if node.sign > 0 {
                            out[idx] += g;
                        } else {
                            out[idx] -= g;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompSummary {
    pub d: usize,
    pub reconstruction_ok: bool,
    pub max_depth: usize,
    pub depth_bound: usize,
    pub attributed_nodes: usize,
    pub raw_nodes: usize,
    pub all_brackets_nonnegative: bool,
    pub all_term_counts_ok: bool,
    pub collected_gamma: Polynomial,
    pub gamma: GammaVector,
    pub gamma_matches: bool,
}

pub fn summarize(tree: &DecompTree) -> Result<DecompSummary, DecompError> {
    let reconstruction_ok = reconstruct_h(tree) == tree.h_root;
    let mut max_depth = 0;
    let mut raw_nodes = 0;
    let mut attributed_nodes = 0;
    let mut all_brackets_nonnegative = true;
    let mut all_term_counts_ok = true;
    visit(&tree.root, &mut |n| {
        max_depth = max_depth.max(n.m);
        if let Expansion::Expanded { remainder, .. } = &n.expansion {
            match remainder {
                Remainder::Attributed {
                    bracket_nonnegative,
                    positive_terms,
                    negative_terms,
                    ..
                } => {
                    attributed_nodes += 1;
                    all_brackets_nonnegative &= bracket_nonnegative;
                    all_term_counts_ok &= positive_terms >= negative_terms;
                }
                Remainder::Raw { .. } => raw_nodes += 1,
            }
        }
    });
    let collected = collected_gamma(tree)?;
    let gamma = gamma_vector(&tree.h_root, tree.d)?;
    let gamma_matches = collected
        .iter()
        .enumerate()
        .all(|(j, g)| *g == gamma.entry(j));
    Ok(DecompSummary {
        d: tree.d,
        reconstruction_ok,
        max_depth,
        depth_bound: tree.d / 2,
        attributed_nodes,
        raw_nodes,
        all_brackets_nonnegative,
        all_term_counts_ok,
        collected_gamma: Polynomial::from_coeffs(collected),
        gamma,
        gamma_matches,
    })
}

fn visit<'a>(node: &'a DecompNode, f: &mut impl FnMut(&'a DecompNode)) {
    f(node);
    if let Expansion::Expanded {
        suspension,
        remainder,
        ..
    } = &node.expansion
    {
        visit(suspension, f);
        if let Remainder::Attributed { terms, .. } = remainder {
            for t in terms {
                visit(t, f);
            }
        }
    }
}

/// Binomial lower bound column: C(d, i) for the report tables.
pub fn binomial_column(d: usize) -> Vec<BigInt> {
    (0..=d).map(|i| binomial(d, i)).collect()
}
